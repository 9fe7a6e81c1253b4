//! File formats: cat-state input files and JSON/CSV reports.

use crate::analysis::{cost_of, CostRow};
use crate::cat::CatState;
use crate::error::{Error, Result};
use crate::protocols::{CorrectionParams, OutcomeRecord, ProtocolSpec};
use crate::state::PureState;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::path::Path;

/// Normalization slack accepted when loading a cat file.
pub const LOAD_NORM_TOL: f64 = 1e-9;

/// `{"d": 3, "m": 2, "coeffs": [[re, im], ...]}`
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CatFile {
    pub d: usize,
    pub m: usize,
    pub coeffs: Vec<[f64; 2]>,
}

impl CatFile {
    pub fn from_cat(cat: &CatState) -> Self {
        Self {
            d: cat.dim(),
            m: cat.particles(),
            coeffs: pairs(cat.coeffs()),
        }
    }

    pub fn into_cat(self) -> Result<CatState> {
        if self.coeffs.len() != self.d {
            return Err(Error::Shape(format!(
                "{} coefficients for d={}",
                self.coeffs.len(),
                self.d
            )));
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|[re, im]| Complex64::new(*re, *im))
            .collect();
        CatState::renormalized(self.d, self.m, coeffs, LOAD_NORM_TOL)
    }
}

pub fn load_cat(path: &Path) -> Result<CatState> {
    let text = std::fs::read_to_string(path)?;
    let file: CatFile = serde_json::from_str(&text)?;
    file.into_cat()
}

pub fn pairs(amps: &[Complex64]) -> Vec<[f64; 2]> {
    amps.iter().map(|a| [a.re, a.im]).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct RecordJson {
    pub label: String,
    pub probability: f64,
    pub fidelity: Option<f64>,
    pub classical_bits: f64,
    pub correction: CorrectionParams,
    pub bob_pre: Option<Vec<[f64; 2]>>,
    pub bob_post: Option<Vec<[f64; 2]>>,
}

impl RecordJson {
    pub fn new(record: &OutcomeRecord, classical_bits: f64) -> Self {
        let amps = |s: &Option<PureState>| s.as_ref().map(|s| pairs(s.amps()));
        Self {
            label: record.label.to_string(),
            probability: record.probability,
            fidelity: record.fidelity,
            classical_bits,
            correction: record.correction,
            bob_pre: amps(&record.bob_pre),
            bob_post: amps(&record.bob_post),
        }
    }
}

/// Full record of a run or an enumeration.
#[derive(Debug, Clone, Serialize)]
pub struct ProtocolReport {
    pub protocol: String,
    pub d: usize,
    pub m: usize,
    pub k: Option<usize>,
    pub seed: Option<u64>,
    pub cat: Vec<[f64; 2]>,
    pub classical_bits: f64,
    pub nonzero_outcomes: usize,
    pub probability_sum: f64,
    pub records: Vec<RecordJson>,
}

impl ProtocolReport {
    pub fn new(
        spec: &ProtocolSpec,
        cat: &CatState,
        seed: Option<u64>,
        records: &[OutcomeRecord],
        all_records: &[OutcomeRecord],
    ) -> Self {
        let classical_bits = cost_of(spec).classical_bits;
        Self {
            protocol: spec.kind.to_string(),
            d: spec.dim,
            m: spec.particles,
            k: spec.hybrid_k,
            seed,
            cat: pairs(cat.coeffs()),
            classical_bits,
            nonzero_outcomes: all_records.iter().filter(|r| r.is_possible()).count(),
            probability_sum: all_records.iter().map(|r| r.probability).sum(),
            records: records
                .iter()
                .map(|r| RecordJson::new(r, classical_bits))
                .collect(),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    /// One line per record: label, probability, fidelity, classical_bits.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["label", "probability", "fidelity", "classical_bits"])?;
        for r in &self.records {
            w.write_record([
                r.label.clone(),
                r.probability.to_string(),
                r.fidelity.map(|f| f.to_string()).unwrap_or_default(),
                r.classical_bits.to_string(),
            ])?;
        }
        csv_string(w)
    }
}

pub fn cost_rows_json(rows: &[CostRow]) -> Result<String> {
    Ok(serde_json::to_string_pretty(rows)? + "\n")
}

pub fn cost_rows_csv(rows: &[CostRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "protocol",
        "d",
        "m",
        "k",
        "nonzero_outcomes",
        "total_outcomes",
        "classical_bits",
        "classical_bits_ceil",
        "collective_arity",
    ])?;
    for r in rows {
        w.write_record([
            r.protocol.to_string(),
            r.d.to_string(),
            r.m.to_string(),
            r.k.map(|k| k.to_string()).unwrap_or_default(),
            r.nonzero_outcome_count.to_string(),
            r.total_outcome_count.to_string(),
            r.classical_bits.to_string(),
            r.classical_bits_ceil.to_string(),
            r.collective_measurement_arity.to_string(),
        ])?;
    }
    csv_string(w)
}

pub(crate) fn csv_string(w: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    String::from_utf8(bytes).map_err(|e| Error::Argument(e.to_string()))
}
