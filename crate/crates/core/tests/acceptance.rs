//! Acceptance criteria. Runs as a plain binary so every criterion prints one
//! PASS/FAIL line; exits nonzero if any criterion fails.

use catport::analysis::{cost_of, enumerated_nonzero_count, tradeoff_residual};
use catport::bases::{bell_state, pi_state, BellLabel, PiLabel};
use catport::{
    barred_equivalence_check, build_basis, measurement_family, verify_orthonormal_complete,
    BasisFamily, BasisLabel, CatState, GhzLabel, Protocol, ProtocolKind, ProtocolSpec,
};
use num_complex::Complex64;
use std::time::{Duration, Instant};

const GOLDEN_TOL: f64 = 1e-15;
const BRANCH_TOL: f64 = 1e-12;
const PROB_TOL: f64 = 1e-10;
const FIDELITY_TOL: f64 = 1e-10;
const SELECTION_TOL: f64 = 1e-12;
const EQUIVALENCE_TOL: f64 = 1e-10;
const BASIS_TOL: f64 = 1e-12;
const TRADEOFF_TOL: f64 = 1e-12;
const SWEEP_BUDGET: Duration = Duration::from_secs(60);
const SWEEP_SEEDS: u64 = 20;
const SAMPLE_RUNS: u64 = 10_000;
const SAMPLE_SIGMAS: f64 = 5.0;

const S3: f64 = 0.577_350_269_189_625_8;

fn w3(power: u32) -> Complex64 {
    match power % 3 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(-0.5, 0.866_025_403_784_438_6),
        _ => Complex64::new(-0.5, -0.866_025_403_784_438_6),
    }
}

fn grid() -> Vec<(usize, usize)> {
    let mut g: Vec<(usize, usize)> = [2, 3, 5].iter().flat_map(|&d| [(d, 2), (d, 3)]).collect();
    g.extend([(2, 4), (3, 4)]);
    g
}

type Outcome = Result<String, String>;

fn criterion_1_golden_bases() -> Outcome {
    let mut worst = 0.0f64;
    for n in 0..3 {
        for m in 0..3 {
            let s = bell_state(3, BellLabel { n, m }).unwrap();
            for j in 0..3 {
                // |Ψ_nm⟩ carries ω^{jn}/√3 on |j, j+m⟩
                let expected = w3((j * n) as u32) * S3;
                let idx = 3 * j + (j + m) % 3;
                worst = worst.max((s.amps()[idx] - expected).norm());
            }
            let support = s.amps().iter().filter(|a| a.norm() > 0.0).count();
            if support != 3 {
                return Err(format!("Ψ_{n}{m} has {support} nonzero amplitudes"));
            }
        }
    }
    let rows = [[0, 0, 0], [0, 1, 2], [0, 2, 1]];
    for (alpha, row) in rows.iter().enumerate() {
        let s = pi_state(3, PiLabel { alpha }).unwrap();
        for (beta, &p) in row.iter().enumerate() {
            worst = worst.max((s.amps()[beta] - w3(p) * S3).norm());
        }
    }
    if worst < GOLDEN_TOL {
        Ok(format!("max deviation {worst:e}"))
    } else {
        Err(format!("max deviation {worst:e} >= {GOLDEN_TOL:e}"))
    }
}

fn criterion_2_nine_branches() -> Outcome {
    let start = Instant::now();
    let cat = CatState::random(3, 2, 77).unwrap();
    let a = cat.coeffs();
    let records = Protocol::new(ProtocolSpec::ghz(3, 2).unwrap())
        .unwrap()
        .enumerate(&cat)
        .unwrap();
    let pattern = [[0, 0, 0], [0, 2, 1], [0, 1, 2]];
    let mut live = Vec::new();
    let mut worst_state = 0.0f64;
    let mut worst_p = 0.0f64;
    for r in records.iter().filter(|r| r.is_possible()) {
        let BasisLabel::Ghz(GhzLabel { n, m, k }) = r.label else {
            return Err(format!("unexpected label {}", r.label));
        };
        if n != 0 {
            return Err(format!(
                "outcome {} with n != 0 has probability {}",
                r.label, r.probability
            ));
        }
        live.push((m, k));
        worst_p = worst_p.max((r.probability - 1.0 / 9.0).abs());
        let pre = r.bob_pre.as_ref().unwrap();
        for l in 0..3 {
            let s = (l + m) % 3;
            worst_state = worst_state.max((pre.amps()[4 * s] - w3(pattern[k][l]) * a[l]).norm());
        }
    }
    live.sort_unstable();
    let all: Vec<(usize, usize)> = (0..3).flat_map(|m| (0..3).map(move |k| (m, k))).collect();
    let elapsed = start.elapsed();
    if live != all {
        return Err(format!("nonzero labels {live:?}"));
    }
    if worst_state >= BRANCH_TOL || worst_p >= PROB_TOL || elapsed >= Duration::from_secs(1) {
        return Err(format!(
            "state {worst_state:e}, probability {worst_p:e}, {elapsed:?}"
        ));
    }
    Ok(format!(
        "9 branches, state dev {worst_state:e}, prob dev {worst_p:e}, {elapsed:?}"
    ))
}

fn criterion_3_perfect_teleportation() -> Outcome {
    let start = Instant::now();
    let mut runs = 0usize;
    let mut worst_f = 0.0f64;
    let mut worst_sum = 0.0f64;
    for (d, m) in grid() {
        for spec in ProtocolSpec::all_for(d, m).unwrap() {
            let protocol = Protocol::new(spec).unwrap();
            for seed in 0..SWEEP_SEEDS {
                let cat = CatState::random(d, m, seed).unwrap();
                let records = protocol.enumerate(&cat).unwrap();
                let sum: f64 = records.iter().map(|r| r.probability).sum();
                worst_sum = worst_sum.max((sum - 1.0).abs());
                for r in records.iter().filter(|r| r.is_possible()) {
                    worst_f = worst_f.max(1.0 - r.fidelity.unwrap());
                }
                runs += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    let detail =
        format!("{runs} runs, 1-F max {worst_f:e}, |Σp-1| max {worst_sum:e}, {elapsed:.1?}");
    if worst_f <= FIDELITY_TOL && worst_sum < PROB_TOL && elapsed < SWEEP_BUDGET {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn criterion_4_selection_rule() -> Outcome {
    let mut worst = 0.0f64;
    let mut checked = 0usize;
    for (d, m) in grid() {
        for spec in [
            ProtocolSpec::ghz(d, m).unwrap(),
            ProtocolSpec::barred(d, m).unwrap(),
        ] {
            let protocol = Protocol::new(spec).unwrap();
            for seed in 0..SWEEP_SEEDS {
                let cat = CatState::random(d, m, seed).unwrap();
                for r in protocol.enumerate(&cat).unwrap() {
                    let forbidden = match &r.label {
                        BasisLabel::Ghz(g) => g.n != 0,
                        l => l.is_complement(),
                    };
                    if forbidden {
                        worst = worst.max(r.probability);
                        checked += 1;
                    }
                }
            }
        }
    }
    let detail = format!("{checked} forbidden outcomes, max probability {worst:e}");
    if worst < SELECTION_TOL && checked > 0 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn criterion_5_barred_equivalence() -> Outcome {
    let mut worst_p = 0.0f64;
    let mut worst_s = 0.0f64;
    for (d, m) in grid() {
        for seed in 0..SWEEP_SEEDS {
            let cat = CatState::random(d, m, seed).unwrap();
            let r = barred_equivalence_check(&cat).map_err(|e| e.to_string())?;
            worst_p = worst_p.max(r.max_prob_delta);
            worst_s = worst_s.max(r.max_state_delta);
        }
    }
    let detail = format!("max prob delta {worst_p:e}, max state delta {worst_s:e}");
    if worst_p < EQUIVALENCE_TOL && worst_s < EQUIVALENCE_TOL {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn criterion_6_cost_hierarchy() -> Outcome {
    let mut rows = 0usize;
    for (d, m) in grid() {
        let l = (d as f64).log2();
        for spec in ProtocolSpec::all_for(d, m).unwrap() {
            let row = cost_of(&spec);
            let expected_bits = match spec.kind {
                ProtocolKind::GhzBasis | ProtocolKind::Barred => 2.0 * l,
                ProtocolKind::BellBasis => (m + 1) as f64 * l,
                ProtocolKind::Hybrid => spec.hybrid_k.unwrap() as f64 * l,
            };
            if row.classical_bits != expected_bits {
                return Err(format!(
                    "{spec}: {} bits, expected {expected_bits}",
                    row.classical_bits
                ));
            }
            let counted = enumerated_nonzero_count(&spec, 1).unwrap() as u128;
            if counted != row.nonzero_outcome_count {
                return Err(format!(
                    "{spec}: enumerated {counted}, analytic {}",
                    row.nonzero_outcome_count
                ));
            }
            // integer form of the trade-off law, then the float form
            let dits = (counted as f64).log(d as f64).round() as usize;
            if dits + row.collective_measurement_arity - 2 != m + 1 {
                return Err(format!("{spec}: trade-off law fails in dits"));
            }
            let residual = tradeoff_residual(&row).abs();
            if residual >= TRADEOFF_TOL {
                return Err(format!("{spec}: trade-off residual {residual:e}"));
            }
            rows += 1;
        }
    }
    Ok(format!("{rows} protocol rows consistent"))
}

fn criterion_7_sampling() -> Outcome {
    let cat = CatState::random(3, 2, 5).unwrap();
    let protocol = Protocol::new(ProtocolSpec::ghz(3, 2).unwrap()).unwrap();
    let mut counts = std::collections::BTreeMap::new();
    for seed in 0..SAMPLE_RUNS {
        let r = protocol.run(&cat, seed).unwrap();
        *counts.entry(r.label.to_string()).or_insert(0u64) += 1;
    }
    let p = 1.0 / 9.0;
    let n = SAMPLE_RUNS as f64;
    let se = (p * (1.0 - p) / n).sqrt();
    if counts.len() != 9 {
        return Err(format!("{} distinct outcomes sampled", counts.len()));
    }
    let worst = counts
        .values()
        .map(|&c| ((c as f64 / n - p) / se).abs())
        .fold(0.0, f64::max);
    let detail = format!("max |z| = {worst:.2} over 9 outcomes");
    if worst < SAMPLE_SIGMAS {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn criterion_8_orthonormality() -> Outcome {
    let mut worst = 0.0f64;
    let mut count = 0usize;
    for d in 2..=5 {
        let mut check = |what: String, gram: f64, complete: Option<f64>| -> Outcome {
            let e = gram.max(complete.unwrap_or(0.0));
            worst = worst.max(e);
            count += 1;
            if e < BASIS_TOL {
                Ok(String::new())
            } else {
                Err(format!("{what}: error {e:e}"))
            }
        };
        for family in [BasisFamily::Bell, BasisFamily::Pi, BasisFamily::Ghz] {
            let r = verify_orthonormal_complete(&build_basis(family, d, 1).unwrap());
            check(
                format!("{family:?} d={d}"),
                r.max_gram_error,
                Some(r.max_completeness_error),
            )?;
        }
        for m in 1..=3 {
            let r = verify_orthonormal_complete(
                &build_basis(BasisFamily::BellProtocolJoint, d, m).unwrap(),
            );
            check(
                format!("BellProtocolJoint d={d} M={m}"),
                r.max_gram_error,
                Some(r.max_completeness_error),
            )?;
            if m >= 2 {
                let r = verify_orthonormal_complete(
                    &build_basis(BasisFamily::GhzProtocolJoint, d, m).unwrap(),
                );
                check(
                    format!("GhzProtocolJoint d={d} M={m}"),
                    r.max_gram_error,
                    Some(r.max_completeness_error),
                )?;
            }
            // the barred family alone is orthonormal but spans only its sector
            let barred = build_basis(BasisFamily::Barred, d, m).unwrap();
            let r = verify_orthonormal_complete(&barred);
            check(format!("Barred d={d} M={m}"), r.max_gram_error, None)?;
            let r = verify_orthonormal_complete(&barred.completed().unwrap());
            check(
                format!("Barred+complement d={d} M={m}"),
                r.max_gram_error,
                Some(r.max_completeness_error),
            )?;
            for spec in ProtocolSpec::all_for(d, m).unwrap() {
                let r = verify_orthonormal_complete(&measurement_family(&spec).unwrap());
                check(
                    format!("{spec}"),
                    r.max_gram_error,
                    Some(r.max_completeness_error),
                )?;
            }
        }
    }
    Ok(format!("{count} bases, max error {worst:e}"))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 8] = [
        ("1 golden bases", criterion_1_golden_bases),
        ("2 nine-branch decomposition", criterion_2_nine_branches),
        (
            "3 perfect teleportation sweep",
            criterion_3_perfect_teleportation,
        ),
        ("4 GHZ selection rule", criterion_4_selection_rule),
        ("5 barred equivalence", criterion_5_barred_equivalence),
        ("6 cost hierarchy", criterion_6_cost_hierarchy),
        ("7 sampling statistics", criterion_7_sampling),
        ("8 orthonormality/completeness", criterion_8_orthonormality),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {name}: {detail}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all acceptance criteria passed");
}
