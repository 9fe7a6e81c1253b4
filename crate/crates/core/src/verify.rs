//! Invariant suites run by `qt verify`.

use crate::analysis::{cost_of, enumerated_nonzero_count, tradeoff_residual};
use crate::bases::{build_basis, verify_orthonormal_complete, BasisFamily};
use crate::cat::CatState;
use crate::error::Result;
use crate::protocols::{
    barred_equivalence_check, measurement_family, Protocol, ProtocolKind, ProtocolSpec,
};
use crate::register::RegisterShape;
use num_complex::Complex64;
use serde::Serialize;

pub const PROBABILITY_SUM_TOL: f64 = 1e-10;
pub const FIDELITY_TOL: f64 = 1e-10;
pub const SELECTION_TOL: f64 = 1e-12;
pub const UNIFORMITY_TOL: f64 = 1e-10;
pub const BASIS_TOL: f64 = 1e-12;
pub const NO_SIGNALING_TOL: f64 = 1e-12;
pub const PHASE_INVARIANCE_TOL: f64 = 1e-12;
pub const EQUIVALENCE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Serialize)]
pub struct SuiteResult {
    pub name: &'static str,
    pub passed: bool,
    pub checks: usize,
    /// Worst observed deviation, in the suite's own units.
    pub worst: f64,
    pub tolerance: f64,
    pub failures: Vec<String>,
}

struct Suite {
    name: &'static str,
    tolerance: f64,
    checks: usize,
    worst: f64,
    failures: Vec<String>,
}

impl Suite {
    fn new(name: &'static str, tolerance: f64) -> Self {
        Self {
            name,
            tolerance,
            checks: 0,
            worst: 0.0,
            failures: Vec::new(),
        }
    }

    /// Record a deviation that must stay strictly below the tolerance.
    fn check(&mut self, deviation: f64, what: impl FnOnce() -> String) {
        self.checks += 1;
        if deviation.is_nan() {
            self.worst = f64::NAN;
        } else {
            self.worst = self.worst.max(deviation);
        }
        if (deviation.is_nan() || deviation >= self.tolerance) && self.failures.len() < 20 {
            self.failures
                .push(format!("{} (deviation {deviation:e})", what()));
        }
    }

    fn finish(self) -> SuiteResult {
        SuiteResult {
            name: self.name,
            passed: self.failures.is_empty(),
            checks: self.checks,
            worst: self.worst,
            tolerance: self.tolerance,
            failures: self.failures,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub d: usize,
    pub m: usize,
    pub seeds: u64,
    pub passed: bool,
    pub suites: Vec<SuiteResult>,
}

impl VerifyReport {
    pub fn failures(&self) -> Vec<String> {
        self.suites
            .iter()
            .flat_map(|s| s.failures.iter().map(move |f| format!("{}: {f}", s.name)))
            .collect()
    }
}

/// Run every invariant suite for one `(d, M)` over cats seeded `0..seeds`.
pub fn run_suites(
    dim: usize,
    particles: usize,
    seeds: u64,
    max_dim: usize,
) -> Result<VerifyReport> {
    let specs: Vec<ProtocolSpec> = ProtocolSpec::all_for(dim, particles)?
        .into_iter()
        .map(|s| s.with_max_dim(max_dim))
        .collect();
    let protocols = specs
        .iter()
        .map(|s| Protocol::new(*s))
        .collect::<Result<Vec<_>>>()?;
    let cats = (0..seeds)
        .map(|s| CatState::random(dim, particles, s))
        .collect::<Result<Vec<_>>>()?;

    let mut bases = Suite::new("bases_orthonormal_complete", BASIS_TOL);
    for family in [
        BasisFamily::Bell,
        BasisFamily::Pi,
        BasisFamily::Ghz,
        BasisFamily::BellProtocolJoint,
    ] {
        let r = verify_orthonormal_complete(&build_basis(family, dim, particles)?);
        bases.check(r.max_gram_error.max(r.max_completeness_error), || {
            format!("{family:?}")
        });
    }
    if particles >= 2 {
        let r = verify_orthonormal_complete(&build_basis(
            BasisFamily::GhzProtocolJoint,
            dim,
            particles,
        )?);
        bases.check(r.max_gram_error.max(r.max_completeness_error), || {
            "GhzProtocolJoint".into()
        });
    }
    let r = verify_orthonormal_complete(&build_basis(BasisFamily::Barred, dim, particles)?);
    bases.check(r.max_gram_error, || "Barred (Gram)".into());
    for spec in &specs {
        let r = verify_orthonormal_complete(&measurement_family(spec)?);
        bases.check(r.max_gram_error.max(r.max_completeness_error), || {
            format!("{spec}")
        });
    }

    let mut completeness = Suite::new("probability_completeness", PROBABILITY_SUM_TOL);
    let mut teleport = Suite::new("perfect_teleportation", FIDELITY_TOL);
    let mut selection = Suite::new("ghz_selection_rule", SELECTION_TOL);
    let mut uniform = Suite::new("uniform_outcomes", UNIFORMITY_TOL);
    let mut unitary = Suite::new("correction_unitarity", 0.5);
    let mut phase = Suite::new("global_phase_invariance", PHASE_INVARIANCE_TOL);
    let mut signaling = Suite::new("no_signaling", NO_SIGNALING_TOL);
    let mut equivalence = Suite::new("barred_equivalence", EQUIVALENCE_TOL);
    let mut cost = Suite::new("cost_cross_check", 0.5);
    let mut tradeoff = Suite::new("cost_tradeoff_law", 1e-12);

    for (spec, protocol) in specs.iter().zip(&protocols) {
        let row = cost_of(spec);
        let expected_p = 1.0 / row.nonzero_outcome_count as f64;
        for (seed, cat) in cats.iter().enumerate() {
            let records = protocol.enumerate(cat)?;
            let sum: f64 = records.iter().map(|r| r.probability).sum();
            completeness.check((sum - 1.0).abs(), || format!("{spec} seed {seed}"));
            for r in &records {
                if r.is_possible() {
                    let f = r.fidelity.unwrap_or(0.0);
                    teleport.check(1.0 - f, || format!("{spec} seed {seed} {}", r.label));
                    uniform.check((r.probability - expected_p).abs(), || {
                        format!("{spec} seed {seed} {}", r.label)
                    });
                }
                let must_vanish = match (&r.label, spec.kind) {
                    (crate::bases::BasisLabel::Ghz(g), ProtocolKind::GhzBasis) => g.n != 0,
                    (l, ProtocolKind::GhzBasis | ProtocolKind::Barred | ProtocolKind::Hybrid) => {
                        l.is_complement()
                    }
                    _ => false,
                };
                if must_vanish {
                    selection.check(r.probability, || format!("{spec} seed {seed} {}", r.label));
                }
            }
            if seed == 0 {
                for r in &records {
                    let ok = r.operator.adjoint().compose(&r.operator)?.is_identity();
                    unitary.check(if ok { 0.0 } else { 1.0 }, || format!("{spec} {}", r.label));
                }
            }
            let rotated = protocol.enumerate(&cat.with_global_phase(0.7 + seed as f64))?;
            for (a, b) in records.iter().zip(&rotated) {
                let df = (a.fidelity.unwrap_or(0.0) - b.fidelity.unwrap_or(0.0)).abs();
                phase.check((a.probability - b.probability).abs().max(df), || {
                    format!("{spec} seed {seed} {}", a.label)
                });
            }
        }
        let counted = enumerated_nonzero_count(spec, 0)?;
        cost.check(
            if counted as u128 == row.nonzero_outcome_count {
                0.0
            } else {
                1.0
            },
            || {
                format!(
                    "{spec}: analytic {} vs enumerated {counted}",
                    row.nonzero_outcome_count
                )
            },
        );
        tradeoff.check(tradeoff_residual(&row).abs(), || format!("{spec}"));
    }

    let bob_rho = bob_channel_marginal(dim, particles)?;
    for (seed, cat) in cats.iter().enumerate() {
        let joint = protocols[0].compose(cat)?;
        let bob: Vec<usize> = (particles + 1..=2 * particles).collect();
        let rho = joint.partial_trace_keep(&bob)?;
        signaling.check(rho.max_abs_diff(&bob_rho)?, || format!("seed {seed}"));
        let eq = barred_equivalence_check(cat)?;
        equivalence.check(eq.max_prob_delta.max(eq.max_state_delta), || {
            format!("seed {seed}")
        });
    }

    let suites: Vec<SuiteResult> = [
        bases,
        completeness,
        teleport,
        selection,
        uniform,
        unitary,
        phase,
        signaling,
        equivalence,
        cost,
        tradeoff,
    ]
    .into_iter()
    .map(Suite::finish)
    .collect();
    let passed = suites.iter().all(|s| s.passed);
    Ok(VerifyReport {
        d: dim,
        m: particles,
        seeds,
        passed,
        suites,
    })
}

/// `(1/d) Σ_i |i…i⟩⟨i…i|` on `particles` qudits.
pub fn bob_channel_marginal(dim: usize, particles: usize) -> Result<crate::density::DensityMatrix> {
    let shape = RegisterShape::new(dim, particles)?;
    let n = shape.total();
    let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..dim {
        let idx = shape.digits_to_index(&vec![i; particles])?;
        entries[idx * n + idx] = Complex64::new(1.0 / dim as f64, 0.0);
    }
    crate::density::DensityMatrix::from_entries(shape, entries)
}
