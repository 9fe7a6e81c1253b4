// Before Alice measures, Bob's qudits are maximally mixed over the cat
// sector no matter which cat is being sent.

use catport::verify::bob_channel_marginal;
use catport::{compose_joint_state, CatState, ProtocolSpec};

pub fn run_example() -> catport::Result<()> {
    let (d, m) = (3, 2);
    let expected = bob_channel_marginal(d, m)?;
    let spec = ProtocolSpec::bell(d, m)?;
    for seed in 0..5 {
        let cat = CatState::random(d, m, seed)?;
        let joint = compose_joint_state(&cat, &spec)?;
        let rho = joint.partial_trace_keep(&[m + 1, m + 2])?;
        println!(
            "seed {seed}: max |rho_B - I_cat/d| = {:.2e}",
            rho.max_abs_diff(&expected)?
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> catport::Result<()> {
    run_example()
}
