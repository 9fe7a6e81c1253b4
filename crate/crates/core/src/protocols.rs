//! Teleportation protocols for cat-like states.
//!
//! Alice holds the `M` cat particles and the first qudit of the channel
//! `(1/√d) Σ_i |i…i⟩` on `M+1` qudits; Bob holds the remaining `M` channel
//! qudits. Every protocol is a single complete projective measurement on
//! Alice's `M+1` qudits followed by a monomial correction on Bob's register.
//!
//! Register layout of the joint state (0-based): cat on `0..M`, Alice's
//! channel qudit at `M`, Bob on `M+1..2M+1`.

use crate::bases::{self, BasisFamily, BasisLabel, MeasurementBasis};
use crate::cat::CatState;
use crate::error::{Error, Result};
use crate::operator::MonomialOperator;
use crate::register::{RegisterShape, DEFAULT_MAX_DIM};
use crate::state::PureState;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

/// Outcomes with probability at or below this are treated as impossible.
pub const PROBABILITY_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProtocolKind {
    /// π on particles `1..M-1`, Bell on (particle `M`, channel qudit).
    #[serde(rename = "bell")]
    BellBasis,
    /// Three-slot GHZ collective measurement on all of Alice's qudits.
    #[serde(rename = "ghz")]
    GhzBasis,
    /// Barred Bell family on all of Alice's qudits, completed.
    Barred,
    /// π on particles `1..k-2`, completed barred family on the rest.
    Hybrid,
}

impl ProtocolKind {
    pub fn name(&self) -> &'static str {
        match self {
            ProtocolKind::BellBasis => "bell",
            ProtocolKind::GhzBasis => "ghz",
            ProtocolKind::Barred => "barred",
            ProtocolKind::Hybrid => "hybrid",
        }
    }
}

impl fmt::Display for ProtocolKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ProtocolKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bell" => Ok(ProtocolKind::BellBasis),
            "ghz" => Ok(ProtocolKind::GhzBasis),
            "barred" => Ok(ProtocolKind::Barred),
            "hybrid" => Ok(ProtocolKind::Hybrid),
            other => Err(Error::Argument(format!("unknown protocol {other:?}"))),
        }
    }
}

/// Protocol choice for a `particles`-qudit cat of local dimension `dim`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ProtocolSpec {
    pub kind: ProtocolKind,
    pub dim: usize,
    pub particles: usize,
    pub hybrid_k: Option<usize>,
    /// Cap on the amplitude count of the joint `(2M+1)`-qudit register.
    pub max_dim: usize,
}

impl ProtocolSpec {
    pub fn new(
        kind: ProtocolKind,
        dim: usize,
        particles: usize,
        hybrid_k: Option<usize>,
    ) -> Result<Self> {
        let spec = Self {
            kind,
            dim,
            particles,
            hybrid_k,
            max_dim: DEFAULT_MAX_DIM,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn bell(dim: usize, particles: usize) -> Result<Self> {
        Self::new(ProtocolKind::BellBasis, dim, particles, None)
    }

    pub fn ghz(dim: usize, particles: usize) -> Result<Self> {
        Self::new(ProtocolKind::GhzBasis, dim, particles, None)
    }

    pub fn barred(dim: usize, particles: usize) -> Result<Self> {
        Self::new(ProtocolKind::Barred, dim, particles, None)
    }

    pub fn hybrid(dim: usize, particles: usize, k: usize) -> Result<Self> {
        Self::new(ProtocolKind::Hybrid, dim, particles, Some(k))
    }

    pub fn with_max_dim(self, max_dim: usize) -> Self {
        Self { max_dim, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim < 2 {
            return Err(Error::Argument(format!(
                "local dimension must be >= 2, got {}",
                self.dim
            )));
        }
        if self.particles == 0 {
            return Err(Error::Argument(
                "the cat needs at least one particle".into(),
            ));
        }
        match (self.kind, self.hybrid_k) {
            (ProtocolKind::Hybrid, None) => {
                Err(Error::Argument("hybrid protocol requires k".into()))
            }
            (ProtocolKind::Hybrid, Some(k)) if !(2..=self.particles + 1).contains(&k) => Err(
                Error::Argument(format!("hybrid k={k} outside [2, {}]", self.particles + 1)),
            ),
            (ProtocolKind::Hybrid, Some(_)) => Ok(()),
            (_, Some(_)) => Err(Error::Argument(
                "k is only meaningful for the hybrid protocol".into(),
            )),
            (ProtocolKind::GhzBasis, None) if self.particles < 2 => Err(Error::Argument(
                "the GHZ protocol needs a cat of at least two particles".into(),
            )),
            _ => Ok(()),
        }
    }

    /// Every valid spec for `(dim, particles)`: bell, ghz (when `M ≥ 2`),
    /// barred, then hybrids in increasing `k`.
    pub fn all_for(dim: usize, particles: usize) -> Result<Vec<Self>> {
        let mut specs = vec![Self::bell(dim, particles)?];
        if particles >= 2 {
            specs.push(Self::ghz(dim, particles)?);
        }
        specs.push(Self::barred(dim, particles)?);
        for k in 2..=particles + 1 {
            specs.push(Self::hybrid(dim, particles, k)?);
        }
        Ok(specs)
    }

    /// `log_d` of the number of outcomes that can occur.
    pub fn outcome_dits(&self) -> usize {
        match self.kind {
            ProtocolKind::BellBasis => self.particles + 1,
            ProtocolKind::GhzBasis | ProtocolKind::Barred => 2,
            ProtocolKind::Hybrid => self.hybrid_k.unwrap_or(2),
        }
    }

    /// Number of particles measured jointly by the largest collective
    /// measurement.
    pub fn collective_arity(&self) -> usize {
        match self.kind {
            ProtocolKind::BellBasis => 2,
            ProtocolKind::GhzBasis | ProtocolKind::Barred => self.particles + 1,
            ProtocolKind::Hybrid => self.particles + 3 - self.hybrid_k.unwrap_or(2),
        }
    }
}

impl fmt::Display for ProtocolSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(d={}, M={}", self.kind, self.dim, self.particles)?;
        if let Some(k) = self.hybrid_k {
            write!(f, ", k={k}")?;
        }
        f.write_str(")")
    }
}

/// Bob's correction `Σ_j ω^{j·phase_exponent} |j…j⟩⟨(j+shift)…(j+shift)|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CorrectionParams {
    pub shift: usize,
    pub phase_exponent: usize,
}

impl CorrectionParams {
    pub const IDENTITY: Self = Self {
        shift: 0,
        phase_exponent: 0,
    };

    pub fn operator(&self, bob: RegisterShape) -> Result<MonomialOperator> {
        MonomialOperator::cat_correction(bob, self.shift, self.phase_exponent)
    }
}

/// One measurement outcome and what Bob ends up with after correcting it.
#[derive(Debug, Clone)]
pub struct OutcomeRecord {
    pub label: BasisLabel,
    pub probability: f64,
    pub correction: CorrectionParams,
    pub operator: MonomialOperator,
    /// Normalized branch state; `None` for outcomes that cannot occur.
    pub bob_pre: Option<PureState>,
    pub bob_post: Option<PureState>,
    /// `|⟨cat|bob_post⟩|²`.
    pub fidelity: Option<f64>,
}

impl OutcomeRecord {
    pub fn is_possible(&self) -> bool {
        self.probability > PROBABILITY_FLOOR
    }
}

/// A protocol with its measurement family built once, reusable across cats.
#[derive(Debug, Clone)]
pub struct Protocol {
    spec: ProtocolSpec,
    bob: RegisterShape,
    family: MeasurementBasis,
    sparse: Vec<Vec<(usize, Complex64)>>,
    index: HashMap<BasisLabel, usize>,
}

impl Protocol {
    pub fn new(spec: ProtocolSpec) -> Result<Self> {
        spec.validate()?;
        // fail on the joint register size before building any basis
        RegisterShape::with_cap(spec.dim, 2 * spec.particles + 1, spec.max_dim)?;
        let bob = RegisterShape::new(spec.dim, spec.particles)?;
        let family = measurement_family(&spec)?;
        let sparse = family
            .entries()
            .iter()
            .map(|(_, s)| {
                s.amps()
                    .iter()
                    .enumerate()
                    .filter(|(_, a)| **a != Complex64::new(0.0, 0.0))
                    .map(|(i, a)| (i, *a))
                    .collect()
            })
            .collect();
        let index = family
            .labels()
            .cloned()
            .enumerate()
            .map(|(i, l)| (l, i))
            .collect();
        Ok(Self {
            spec,
            bob,
            family,
            sparse,
            index,
        })
    }

    pub fn spec(&self) -> &ProtocolSpec {
        &self.spec
    }

    pub fn family(&self) -> &MeasurementBasis {
        &self.family
    }

    pub fn bob_shape(&self) -> RegisterShape {
        self.bob
    }

    fn check_cat(&self, cat: &CatState) -> Result<()> {
        if cat.dim() != self.spec.dim || cat.particles() != self.spec.particles {
            return Err(Error::Argument(format!(
                "cat (d={}, M={}) does not match {}",
                cat.dim(),
                cat.particles(),
                self.spec
            )));
        }
        Ok(())
    }

    /// `|cat⟩ ⊗ (1/√d) Σ_i |i…i⟩` with the channel on `M+1` qudits.
    pub fn compose(&self, cat: &CatState) -> Result<PureState> {
        self.check_cat(cat)?;
        joint_state(cat, &self.spec)
    }

    fn params_for(&self, label: &BasisLabel) -> CorrectionParams {
        let d = self.spec.dim;
        let collective = match label {
            BasisLabel::Product(parts) => parts.last(),
            other => Some(other),
        };
        let (phase, shift) = match collective {
            Some(BasisLabel::Bell(b)) | Some(BasisLabel::Barred(b)) => (b.n, b.m),
            Some(BasisLabel::Ghz(g)) => (g.n + g.k, g.m),
            _ => return CorrectionParams::IDENTITY,
        };
        CorrectionParams {
            shift: shift % d,
            phase_exponent: (phase + label.pi_sum()) % d,
        }
    }

    /// Correction Bob applies after outcome `label`. Outcomes in the
    /// completion never occur and get the identity.
    pub fn correction_for(&self, label: &BasisLabel) -> Result<MonomialOperator> {
        if !self.index.contains_key(label) {
            return Err(Error::Argument(format!(
                "{label} is not an outcome of {}",
                self.spec
            )));
        }
        self.params_for(label).operator(self.bob)
    }

    /// One record per basis element, in basis order.
    pub fn enumerate(&self, cat: &CatState) -> Result<Vec<OutcomeRecord>> {
        let joint = self.compose(cat)?;
        let target = cat.to_pure_state()?;
        let bob_total = self.bob.total();
        let amps = joint.amps();
        let alice_rows = amps.len() / bob_total;
        let row_used: Vec<bool> = (0..alice_rows)
            .map(|a| {
                amps[a * bob_total..(a + 1) * bob_total]
                    .iter()
                    .any(|x| x.norm_sqr() > 0.0)
            })
            .collect();

        self.family
            .entries()
            .par_iter()
            .zip(self.sparse.par_iter())
            .map(|((label, _), support)| {
                let mut branch = vec![Complex64::new(0.0, 0.0); bob_total];
                for &(a, v) in support {
                    if !row_used[a] {
                        continue;
                    }
                    let w = v.conj();
                    for (b, x) in branch
                        .iter_mut()
                        .zip(&amps[a * bob_total..(a + 1) * bob_total])
                    {
                        *b += w * x;
                    }
                }
                let branch = PureState::unnormalized(self.bob, branch)?;
                let probability = branch.norm_sqr();
                let correction = self.params_for(label);
                let operator = correction.operator(self.bob)?;
                let (bob_pre, bob_post, fidelity) = if probability > PROBABILITY_FLOOR {
                    let pre = branch.normalize()?;
                    let post = operator.apply(&pre)?;
                    let f = target.fidelity(&post)?;
                    (Some(pre), Some(post), Some(f))
                } else {
                    (None, None, None)
                };
                Ok(OutcomeRecord {
                    label: label.clone(),
                    probability,
                    correction,
                    operator,
                    bob_pre,
                    bob_post,
                    fidelity,
                })
            })
            .collect()
    }

    /// Sample one outcome by inverse CDF over basis order.
    pub fn run(&self, cat: &CatState, seed: u64) -> Result<OutcomeRecord> {
        let records = self.enumerate(cat)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Ok(sample(&records, &mut rng).clone())
    }
}

/// Draw one possible record from `records` with the given generator.
pub fn sample<'a, R: Rng + ?Sized>(records: &'a [OutcomeRecord], rng: &mut R) -> &'a OutcomeRecord {
    let possible: Vec<&OutcomeRecord> = records.iter().filter(|r| r.is_possible()).collect();
    let total: f64 = possible.iter().map(|r| r.probability).sum();
    let target = rng.random::<f64>() * total;
    let mut acc = 0.0;
    for r in &possible {
        acc += r.probability;
        if target < acc {
            return r;
        }
    }
    possible
        .last()
        .expect("a normalized joint state has a possible outcome")
}

/// The complete orthonormal family Alice measures in.
pub fn measurement_family(spec: &ProtocolSpec) -> Result<MeasurementBasis> {
    spec.validate()?;
    let (d, m) = (spec.dim, spec.particles);
    match spec.kind {
        ProtocolKind::BellBasis => bases::build_basis(BasisFamily::BellProtocolJoint, d, m),
        ProtocolKind::GhzBasis => bases::build_basis(BasisFamily::GhzProtocolJoint, d, m),
        ProtocolKind::Barred => bases::build_basis(BasisFamily::Barred, d, m)?.completed(),
        ProtocolKind::Hybrid => {
            let k = spec.hybrid_k.expect("validated");
            let collective = bases::build_basis(BasisFamily::Barred, d, m + 2 - k)?.completed()?;
            bases::with_pi_prefix(d, k - 2, collective)
        }
    }
}

pub fn compose_joint_state(cat: &CatState, spec: &ProtocolSpec) -> Result<PureState> {
    spec.validate()?;
    if cat.dim() != spec.dim || cat.particles() != spec.particles {
        return Err(Error::Argument(format!("cat does not match {spec}")));
    }
    joint_state(cat, spec)
}

fn joint_state(cat: &CatState, spec: &ProtocolSpec) -> Result<PureState> {
    let d = spec.dim;
    let uniform = vec![Complex64::new((d as f64).sqrt().recip(), 0.0); d];
    let channel = CatState::new(d, spec.particles + 1, uniform)?;
    cat.to_pure_state_with_cap(spec.max_dim)?
        .tensor_with_cap(&channel.to_pure_state_with_cap(spec.max_dim)?, spec.max_dim)
}

pub fn correction_for(spec: &ProtocolSpec, label: &BasisLabel) -> Result<MonomialOperator> {
    Protocol::new(*spec)?.correction_for(label)
}

pub fn enumerate_outcomes(cat: &CatState, spec: &ProtocolSpec) -> Result<Vec<OutcomeRecord>> {
    Protocol::new(*spec)?.enumerate(cat)
}

pub fn run_protocol(cat: &CatState, spec: &ProtocolSpec, seed: u64) -> Result<OutcomeRecord> {
    Protocol::new(*spec)?.run(cat, seed)
}

/// Apply the record's correction to its branch state.
pub fn apply_correction(record: &OutcomeRecord) -> Result<PureState> {
    let pre = record
        .bob_pre
        .as_ref()
        .ok_or_else(|| Error::Argument(format!("outcome {} has probability zero", record.label)))?;
    record.operator.apply(pre)
}

/// Largest discrepancies between two protocols under a label bijection.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EquivalenceReport {
    pub max_prob_delta: f64,
    pub max_state_delta: f64,
}

/// Compare the GHZ protocol on an `M`-particle cat with single-particle
/// teleportation of the same coefficients, mapping GHZ outcome `(0, m, k)`
/// to Bell outcome `(k, m)` and Bob's `|l⟩` to `|l…l⟩`. Branch states are
/// compared before and after correction.
pub fn barred_equivalence_check(cat: &CatState) -> Result<EquivalenceReport> {
    let (d, m) = (cat.dim(), cat.particles());
    let single_cat = cat.with_particles(1)?;
    let single = Protocol::new(ProtocolSpec::bell(d, 1)?)?.enumerate(&single_cat)?;
    if m == 1 {
        return compare_records(&single, &single, |l| Some(l.clone()), |s| Ok(s.clone()));
    }
    let ghz = Protocol::new(ProtocolSpec::ghz(d, m)?)?.enumerate(cat)?;
    let bob = RegisterShape::new(d, m)?;
    let embed = |s: &PureState| -> Result<PureState> {
        let mut amps = vec![Complex64::new(0.0, 0.0); bob.total()];
        for (l, a) in s.amps().iter().enumerate() {
            amps[bob.index_of(std::iter::repeat_n(l, m))] = *a;
        }
        PureState::new(bob, amps)
    };
    let to_single = |l: &BasisLabel| match l {
        BasisLabel::Ghz(g) if g.n == 0 => {
            Some(BasisLabel::Bell(bases::BellLabel { n: g.k, m: g.m }))
        }
        _ => None,
    };
    compare_records(&ghz, &single, to_single, embed)
}

fn compare_records(
    many: &[OutcomeRecord],
    single: &[OutcomeRecord],
    to_single: impl Fn(&BasisLabel) -> Option<BasisLabel>,
    embed: impl Fn(&PureState) -> Result<PureState>,
) -> Result<EquivalenceReport> {
    let by_label: HashMap<&BasisLabel, &OutcomeRecord> =
        single.iter().map(|r| (&r.label, r)).collect();
    let mut matched = 0usize;
    let mut max_prob_delta = 0.0f64;
    let mut max_state_delta = 0.0f64;
    for r in many {
        let partner = to_single(&r.label).and_then(|l| by_label.get(&l).copied());
        let Some(s) = partner else {
            max_prob_delta = max_prob_delta.max(r.probability);
            continue;
        };
        matched += 1;
        max_prob_delta = max_prob_delta.max((r.probability - s.probability).abs());
        for (a, b) in [(&r.bob_pre, &s.bob_pre), (&r.bob_post, &s.bob_post)] {
            match (a, b) {
                (Some(a), Some(b)) => {
                    max_state_delta = max_state_delta.max(a.max_abs_diff(&embed(b)?)?);
                }
                (None, None) => {}
                _ => max_state_delta = f64::INFINITY,
            }
        }
    }
    if matched != single.len() {
        return Err(Error::Argument(format!(
            "label bijection covered {matched} of {} single-particle outcomes",
            single.len()
        )));
    }
    Ok(EquivalenceReport {
        max_prob_delta,
        max_state_delta,
    })
}
