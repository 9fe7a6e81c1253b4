// The GHZ-basis protocol for a qutrit pair: only the nine `n = 0` outcomes
// occur, and each branch carries a k-dependent phase pattern on the cat
// coefficients that Bob's correction removes.

use catport::{BasisLabel, CatState, GhzLabel, Protocol, ProtocolSpec};

pub fn run_example() -> catport::Result<()> {
    let cat = CatState::random(3, 2, 7)?;
    let records = Protocol::new(ProtocolSpec::ghz(3, 2)?)?.enumerate(&cat)?;
    let a = cat.coeffs();
    println!(
        "{} outcomes, {} possible",
        records.len(),
        records.iter().filter(|r| r.is_possible()).count()
    );
    for r in records.iter().filter(|r| r.is_possible()) {
        let BasisLabel::Ghz(GhzLabel { m, .. }) = r.label else {
            continue;
        };
        let pre = r
            .bob_pre
            .as_ref()
            .expect("possible outcomes carry a branch");
        // relative phase of each coefficient in Bob's branch, in units of 2π/3
        let phases: Vec<String> = (0..3)
            .map(|l| {
                let s = (l + m) % 3;
                let ratio = pre.amps()[4 * s] / a[l];
                let turns = (ratio.arg() / std::f64::consts::TAU * 3.0)
                    .round()
                    .rem_euclid(3.0)
                    + 0.0;
                format!("{turns}")
            })
            .collect();
        println!(
            "  {}  p={:.6}  phases(α,β,γ)=[{}]·2π/3  fidelity={:.12}",
            r.label,
            r.probability,
            phases.join(","),
            r.fidelity.unwrap()
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> catport::Result<()> {
    run_example()
}
