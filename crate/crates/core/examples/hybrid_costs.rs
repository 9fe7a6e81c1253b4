// Classical cost versus measurement collectivity across the protocol
// family, with the analytic counts cross-checked by enumeration.

use catport::analysis::{cost_table, enumerated_nonzero_count, tradeoff_residual};
use catport::ProtocolSpec;

pub fn run_example() -> catport::Result<()> {
    println!(
        "{:<8} {:>2} {:>2} {:>2} {:>9} {:>8} {:>6} {:>10}",
        "kind", "d", "M", "k", "outcomes", "bits", "arity", "enumerated"
    );
    for row in cost_table([2, 3], [3], true)? {
        let spec = ProtocolSpec::new(row.protocol, row.d, row.m, row.k)?;
        let counted = enumerated_nonzero_count(&spec, 0)?;
        assert!(tradeoff_residual(&row).abs() < 1e-12);
        println!(
            "{:<8} {:>2} {:>2} {:>2} {:>9} {:>8.4} {:>6} {:>10}",
            row.protocol.to_string(),
            row.d,
            row.m,
            row.k.map(|k| k.to_string()).unwrap_or_default(),
            row.nonzero_outcome_count,
            row.classical_bits,
            row.collective_measurement_arity,
            counted
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> catport::Result<()> {
    run_example()
}
