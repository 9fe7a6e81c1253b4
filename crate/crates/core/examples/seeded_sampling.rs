// Sample measurement outcomes with seeded runs and compare the histogram to
// the enumerated distribution.

use catport::{CatState, Protocol, ProtocolSpec};
use std::collections::BTreeMap;

pub fn run_example() -> catport::Result<()> {
    let cat = CatState::random(2, 3, 3)?;
    let protocol = Protocol::new(ProtocolSpec::hybrid(2, 3, 3)?)?;
    let runs = 2000;
    let mut hist: BTreeMap<String, u32> = BTreeMap::new();
    for seed in 0..runs {
        let r = protocol.run(&cat, seed)?;
        assert!(r.fidelity.unwrap() > 1.0 - 1e-10);
        *hist.entry(r.label.to_string()).or_default() += 1;
    }
    for r in protocol.enumerate(&cat)?.iter().filter(|r| r.is_possible()) {
        let seen = hist.get(&r.label.to_string()).copied().unwrap_or(0);
        println!(
            "{:<24} expected {:.4}  observed {:.4}",
            r.label.to_string(),
            r.probability,
            seen as f64 / runs as f64
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> catport::Result<()> {
    run_example()
}
