// Build each measurement family and certify it is an orthonormal basis.

use catport::{build_basis, verify_orthonormal_complete, BasisFamily};

pub fn run_example() -> catport::Result<()> {
    let families = [
        BasisFamily::Bell,
        BasisFamily::Pi,
        BasisFamily::Ghz,
        BasisFamily::BellProtocolJoint,
        BasisFamily::GhzProtocolJoint,
        BasisFamily::Barred,
    ];
    for d in 2..=4 {
        for family in families {
            let basis = build_basis(family, d, 3)?;
            let r = verify_orthonormal_complete(&basis);
            println!(
                "d={d} {:<18} states={:<4} gram={:.1e} completeness={:.1e}",
                format!("{family:?}"),
                basis.len(),
                r.max_gram_error,
                r.max_completeness_error
            );
        }
        let completed = build_basis(BasisFamily::Barred, d, 3)?.completed()?;
        let r = verify_orthonormal_complete(&completed);
        println!(
            "d={d} Barred+complement   states={:<4} gram={:.1e} completeness={:.1e}",
            completed.len(),
            r.max_gram_error,
            r.max_completeness_error
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> catport::Result<()> {
    run_example()
}
