// The GHZ-basis protocol on an M-particle cat behaves exactly like
// single-particle teleportation of a d-level state.

use catport::{barred_equivalence_check, CatState};

pub fn run_example() -> catport::Result<()> {
    println!(
        "{:>3} {:>3} {:>14} {:>14}",
        "d", "M", "max dp", "max dstate"
    );
    for (d, m) in [(2, 2), (2, 3), (3, 2), (3, 3), (5, 2)] {
        let cat = CatState::random(d, m, 1)?;
        let r = barred_equivalence_check(&cat)?;
        println!(
            "{d:>3} {m:>3} {:>14.3e} {:>14.3e}",
            r.max_prob_delta, r.max_state_delta
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> catport::Result<()> {
    run_example()
}
