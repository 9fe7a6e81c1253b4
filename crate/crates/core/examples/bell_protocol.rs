// Teleport a two-particle qutrit cat with π-basis plus Bell-basis
// measurements and show every outcome Alice can report.

use catport::{CatState, Protocol, ProtocolSpec};

pub fn run_example() -> catport::Result<()> {
    let cat = CatState::random(3, 2, 42)?;
    println!("cat coefficients:");
    for (l, a) in cat.coeffs().iter().enumerate() {
        println!("  |{l}{l}>  {:+.6} {:+.6}i", a.re, a.im);
    }

    let protocol = Protocol::new(ProtocolSpec::bell(3, 2)?)?;
    let records = protocol.enumerate(&cat)?;
    println!(
        "\n{:<22} {:>10} {:>6} {:>6} {:>12}",
        "outcome", "p", "shift", "phase", "fidelity"
    );
    for r in &records {
        println!(
            "{:<22} {:>10.6} {:>6} {:>6} {:>12.10}",
            r.label.to_string(),
            r.probability,
            r.correction.shift,
            r.correction.phase_exponent,
            r.fidelity.unwrap_or(0.0)
        );
    }
    let total: f64 = records.iter().map(|r| r.probability).sum();
    println!(
        "\n{} outcomes, total probability {total:.12}",
        records.len()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> catport::Result<()> {
    run_example()
}
