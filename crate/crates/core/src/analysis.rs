//! Classical communication cost of the protocol family.
//!
//! Alice only has to transmit which outcome occurred, so the cost of a
//! protocol is `log₂` of the number of outcomes with nonzero probability.

use crate::cat::CatState;
use crate::error::Result;
use crate::protocols::{Protocol, ProtocolKind, ProtocolSpec};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CostRow {
    pub protocol: ProtocolKind,
    pub d: usize,
    pub m: usize,
    pub k: Option<usize>,
    pub nonzero_outcome_count: u128,
    pub total_outcome_count: u128,
    /// `log₂(nonzero_outcome_count)`.
    pub classical_bits: f64,
    /// Whole bits needed to encode one outcome index.
    pub classical_bits_ceil: u32,
    pub collective_measurement_arity: usize,
}

/// Analytic cost of a protocol; never builds a state.
pub fn cost_of(spec: &ProtocolSpec) -> CostRow {
    let d = spec.dim as u128;
    let dits = spec.outcome_dits();
    let nonzero = d.pow(dits as u32);
    CostRow {
        protocol: spec.kind,
        d: spec.dim,
        m: spec.particles,
        k: spec.hybrid_k,
        nonzero_outcome_count: nonzero,
        total_outcome_count: d.pow(spec.particles as u32 + 1),
        classical_bits: dits as f64 * (spec.dim as f64).log2(),
        classical_bits_ceil: ceil_log2(nonzero),
        collective_measurement_arity: spec.collective_arity(),
    }
}

fn ceil_log2(n: u128) -> u32 {
    if n <= 1 {
        0
    } else {
        128 - (n - 1).leading_zeros()
    }
}

/// Count enumerated outcomes with nonzero probability for a random cat.
pub fn enumerated_nonzero_count(spec: &ProtocolSpec, seed: u64) -> Result<usize> {
    let protocol = Protocol::new(*spec)?;
    let cat = CatState::random(spec.dim, spec.particles, seed)?;
    Ok(protocol
        .enumerate(&cat)?
        .iter()
        .filter(|r| r.is_possible())
        .count())
}

/// Rows ordered by `(d, M, kind, k)`. Without hybrids each `(d, M)` gets
/// bell, ghz (for `M ≥ 2`) and barred rows.
pub fn cost_table(
    dims: impl IntoIterator<Item = usize>,
    particles: impl IntoIterator<Item = usize> + Clone,
    include_hybrids: bool,
) -> Result<Vec<CostRow>> {
    let mut rows = Vec::new();
    for d in dims {
        for m in particles.clone() {
            for spec in ProtocolSpec::all_for(d, m)? {
                if spec.kind == ProtocolKind::Hybrid && !include_hybrids {
                    continue;
                }
                rows.push(cost_of(&spec));
            }
        }
    }
    Ok(rows)
}

/// `bits + log₂d·(arity − 2) − (M+1)·log₂d`; zero for every protocol.
pub fn tradeoff_residual(row: &CostRow) -> f64 {
    let l = (row.d as f64).log2();
    row.classical_bits + l * (row.collective_measurement_arity as f64 - 2.0)
        - (row.m as f64 + 1.0) * l
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ghz_cost_is_two_dits() {
        let row = cost_of(&ProtocolSpec::ghz(3, 5).unwrap());
        assert_eq!(row.nonzero_outcome_count, 9);
        assert_eq!(row.total_outcome_count, 729);
        assert!((row.classical_bits - 2.0 * 3f64.log2()).abs() < 1e-15);
        assert!((row.classical_bits - 3.1699).abs() < 1e-4);
        assert_eq!(row.classical_bits_ceil, 4);
        assert_eq!(row.collective_measurement_arity, 6);
    }

    #[test]
    fn bell_cost_is_m_plus_one_dits() {
        let row = cost_of(&ProtocolSpec::bell(2, 3).unwrap());
        assert_eq!(row.nonzero_outcome_count, 16);
        assert_eq!(row.classical_bits, 4.0);
        assert_eq!(row.classical_bits_ceil, 4);
        assert_eq!(row.collective_measurement_arity, 2);
    }

    #[test]
    fn hybrid_boundaries() {
        for (d, m) in [(2, 3), (3, 4), (5, 2)] {
            let low = cost_of(&ProtocolSpec::hybrid(d, m, 2).unwrap());
            let ghz = cost_of(&ProtocolSpec::barred(d, m).unwrap());
            assert_eq!(low.classical_bits, ghz.classical_bits);
            assert_eq!(
                low.collective_measurement_arity,
                ghz.collective_measurement_arity
            );
            let high = cost_of(&ProtocolSpec::hybrid(d, m, m + 1).unwrap());
            let bell = cost_of(&ProtocolSpec::bell(d, m).unwrap());
            assert_eq!(high.classical_bits, bell.classical_bits);
            assert_eq!(
                high.collective_measurement_arity,
                bell.collective_measurement_arity
            );
        }
    }

    #[test]
    fn hybrid_table_is_monotone() {
        let rows: Vec<CostRow> = cost_table([2], [4], true)
            .unwrap()
            .into_iter()
            .filter(|r| r.protocol == ProtocolKind::Hybrid)
            .collect();
        let bits: Vec<f64> = rows.iter().map(|r| r.classical_bits).collect();
        let arity: Vec<usize> = rows
            .iter()
            .map(|r| r.collective_measurement_arity)
            .collect();
        assert_eq!(bits, vec![2.0, 3.0, 4.0, 5.0]);
        assert_eq!(arity, vec![5, 4, 3, 2]);
    }

    #[test]
    fn qutrit_hybrid_rows() {
        let rows = cost_table([3], [2, 3], true).unwrap();
        let l = 3f64.log2();
        for m in [2usize, 3] {
            let bits: Vec<f64> = rows
                .iter()
                .filter(|r| r.m == m && r.protocol == ProtocolKind::Hybrid)
                .map(|r| r.classical_bits)
                .collect();
            let expected: Vec<f64> = (2..=m + 1).map(|k| k as f64 * l).collect();
            assert_eq!(bits, expected);
        }
    }

    #[test]
    fn single_row_table_matches_cost_of() {
        let rows = cost_table([3], [1], false).unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0], cost_of(&ProtocolSpec::bell(3, 1).unwrap()));
    }

    #[test]
    fn tradeoff_law() {
        for row in cost_table(2..=5, 1..=5, true).unwrap() {
            assert!(tradeoff_residual(&row).abs() < 1e-12, "{row:?}");
            assert!(row.nonzero_outcome_count <= row.total_outcome_count);
        }
    }

    #[test]
    fn analytic_counts_match_enumeration() {
        for spec in ProtocolSpec::all_for(3, 2).unwrap() {
            let row = cost_of(&spec);
            for seed in 0..2 {
                let n = enumerated_nonzero_count(&spec, seed).unwrap();
                assert_eq!(n as u128, row.nonzero_outcome_count, "{spec}");
            }
        }
    }

    #[test]
    fn ceil_log2_values() {
        assert_eq!(ceil_log2(1), 0);
        assert_eq!(ceil_log2(2), 1);
        assert_eq!(ceil_log2(9), 4);
        assert_eq!(ceil_log2(16), 4);
        assert_eq!(ceil_log2(17), 5);
    }
}
