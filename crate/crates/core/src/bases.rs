//! Measurement bases: generalized Bell, Fourier (π), three-slot GHZ and the
//! barred family, plus the joint product families Alice measures in.

use crate::error::{Error, Result};
use crate::phase::omega;
use crate::register::{RegisterShape, DEFAULT_MAX_DIM};
use crate::state::PureState;
use num_complex::Complex64;
use std::fmt;

/// Bell-type label: phase index `n`, shift index `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BellLabel {
    pub n: usize,
    pub m: usize,
}

impl BellLabel {
    pub fn new(dim: usize, n: usize, m: usize) -> Result<Self> {
        check_range(dim, &[n, m])?;
        Ok(Self { n, m })
    }
}

/// Fourier-basis label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PiLabel {
    pub alpha: usize,
}

impl PiLabel {
    pub fn new(dim: usize, alpha: usize) -> Result<Self> {
        check_range(dim, &[alpha])?;
        Ok(Self { alpha })
    }
}

/// Three-slot GHZ label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GhzLabel {
    pub n: usize,
    pub m: usize,
    pub k: usize,
}

impl GhzLabel {
    pub fn new(dim: usize, n: usize, m: usize, k: usize) -> Result<Self> {
        check_range(dim, &[n, m, k])?;
        Ok(Self { n, m, k })
    }
}

fn check_range(dim: usize, values: &[usize]) -> Result<()> {
    match values.iter().find(|&&v| v >= dim) {
        Some(v) => Err(Error::Range(format!("label index {v} not in [0, {dim})"))),
        None => Ok(()),
    }
}

/// Outcome label of a measurement.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BasisLabel {
    Bell(BellLabel),
    Pi(PiLabel),
    Ghz(GhzLabel),
    Barred(BellLabel),
    /// Completion vector outside the family's sector; the payload is the
    /// computational index it was grown from.
    Complement(usize),
    /// Tensor-product label, factors in qudit order.
    Product(Vec<BasisLabel>),
}

impl BasisLabel {
    pub fn is_complement(&self) -> bool {
        match self {
            BasisLabel::Complement(_) => true,
            BasisLabel::Product(parts) => parts.iter().any(BasisLabel::is_complement),
            _ => false,
        }
    }

    /// Sum of all π indices in the label.
    pub fn pi_sum(&self) -> usize {
        match self {
            BasisLabel::Pi(p) => p.alpha,
            BasisLabel::Product(parts) => parts.iter().map(BasisLabel::pi_sum).sum(),
            _ => 0,
        }
    }

    /// Ordering key: complement flag first, then `(n, m, k)` of the
    /// collective factor, then the π indices in qudit order.
    fn sort_key(&self) -> (bool, Vec<usize>, Vec<usize>) {
        let mut primary = Vec::new();
        let mut alphas = Vec::new();
        self.collect_key(&mut primary, &mut alphas);
        (self.is_complement(), primary, alphas)
    }

    fn collect_key(&self, primary: &mut Vec<usize>, alphas: &mut Vec<usize>) {
        match self {
            BasisLabel::Bell(b) | BasisLabel::Barred(b) => primary.extend([b.n, b.m]),
            BasisLabel::Ghz(g) => primary.extend([g.n, g.m, g.k]),
            BasisLabel::Pi(p) => alphas.push(p.alpha),
            BasisLabel::Complement(i) => primary.push(*i),
            BasisLabel::Product(parts) => {
                for p in parts {
                    p.collect_key(primary, alphas);
                }
            }
        }
    }
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisLabel::Bell(b) => write!(f, "bell({},{})", b.n, b.m),
            BasisLabel::Pi(p) => write!(f, "pi({})", p.alpha),
            BasisLabel::Ghz(g) => write!(f, "ghz({},{},{})", g.n, g.m, g.k),
            BasisLabel::Barred(b) => write!(f, "barred({},{})", b.n, b.m),
            BasisLabel::Complement(i) => write!(f, "complement({i})"),
            BasisLabel::Product(parts) => {
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str("*")?;
                    }
                    write!(f, "{p}")?;
                }
                Ok(())
            }
        }
    }
}

/// `Σ_j ω^{jn} |j, j+m⟩ / √d`.
pub fn bell_state(dim: usize, label: BellLabel) -> Result<PureState> {
    barred_bell_state(dim, 1, label)
}

/// `Σ_β ω^{αβ} |β⟩ / √d`.
pub fn pi_state(dim: usize, label: PiLabel) -> Result<PureState> {
    check_range(dim, &[label.alpha])?;
    let shape = RegisterShape::new(dim, 1)?;
    let s = (dim as f64).sqrt().recip();
    let amps = (0..dim)
        .map(|beta| omega((label.alpha * beta) as i64, dim) * s)
        .collect();
    PureState::new(shape, amps)
}

/// `Σ_j ω^{j(n+k)} |j, j+n, j+m⟩ / √d`.
pub fn ghz_state(dim: usize, label: GhzLabel) -> Result<PureState> {
    ghz_barred_state(dim, 1, label)
}

/// The three-slot GHZ state with its middle slot repeated `middle` times:
/// `Σ_j ω^{j(n+k)} |j⟩|(j+n)…(j+n)⟩|j+m⟩ / √d`.
pub fn ghz_barred_state(dim: usize, middle: usize, label: GhzLabel) -> Result<PureState> {
    check_range(dim, &[label.n, label.m, label.k])?;
    let shape = RegisterShape::new(dim, middle + 2)?;
    let mut amps = vec![Complex64::new(0.0, 0.0); shape.total()];
    let s = (dim as f64).sqrt().recip();
    for j in 0..dim {
        let digits = std::iter::once(j)
            .chain(std::iter::repeat_n((j + label.n) % dim, middle))
            .chain(std::iter::once((j + label.m) % dim));
        amps[shape.index_of(digits)] = omega((j * (label.n + label.k)) as i64, dim) * s;
    }
    PureState::new(shape, amps)
}

/// `Σ_j ω^{jn} |j…j⟩|j+m⟩ / √d` with `j` repeated `particles` times.
pub fn barred_bell_state(dim: usize, particles: usize, label: BellLabel) -> Result<PureState> {
    check_range(dim, &[label.n, label.m])?;
    if particles == 0 {
        return Err(Error::Argument(
            "barred states need at least one particle".into(),
        ));
    }
    let shape = RegisterShape::new(dim, particles + 1)?;
    let mut amps = vec![Complex64::new(0.0, 0.0); shape.total()];
    let s = (dim as f64).sqrt().recip();
    for j in 0..dim {
        let digits = std::iter::repeat_n(j, particles).chain(std::iter::once((j + label.m) % dim));
        amps[shape.index_of(digits)] = omega((j * label.n) as i64, dim) * s;
    }
    PureState::new(shape, amps)
}

/// Which family [`build_basis`] constructs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisFamily {
    /// `d²` two-qudit Bell states.
    Bell,
    /// `d` single-qudit Fourier states.
    Pi,
    /// `d³` three-qudit GHZ states.
    Ghz,
    /// π on qudits `1..M-1`, Bell on `(M, M+1)`.
    BellProtocolJoint,
    /// Three-slot GHZ with the middle slot repeated over `M-1` qudits,
    /// completed to the full `(M+1)`-qudit space.
    GhzProtocolJoint,
    /// `d²` barred Bell states on `M+1` qudits. Not complete for `M > 1`.
    Barred,
}

/// An ordered list of labelled states on a common register.
#[derive(Debug, Clone)]
pub struct MeasurementBasis {
    shape: RegisterShape,
    entries: Vec<(BasisLabel, PureState)>,
}

impl MeasurementBasis {
    pub fn new(shape: RegisterShape, entries: Vec<(BasisLabel, PureState)>) -> Result<Self> {
        if let Some((label, _)) = entries.iter().find(|(_, s)| s.shape() != shape) {
            return Err(Error::Shape(format!(
                "basis state {label} has the wrong shape"
            )));
        }
        Ok(Self { shape, entries })
    }

    pub fn shape(&self) -> RegisterShape {
        self.shape
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(BasisLabel, PureState)] {
        &self.entries
    }

    pub fn labels(&self) -> impl Iterator<Item = &BasisLabel> {
        self.entries.iter().map(|(l, _)| l)
    }

    pub fn position(&self, label: &BasisLabel) -> Option<usize> {
        self.entries.iter().position(|(l, _)| l == label)
    }

    fn sorted(mut self) -> Self {
        self.entries.sort_by_cached_key(|(l, _)| l.sort_key());
        self
    }

    /// `self ⊗ other`, labels combined into flattened [`BasisLabel::Product`]s
    /// and re-sorted.
    pub fn tensor(&self, other: &MeasurementBasis) -> Result<Self> {
        let mut entries = Vec::with_capacity(self.len() * other.len());
        for (la, sa) in &self.entries {
            for (lb, sb) in &other.entries {
                entries.push((product_label(la, lb), sa.tensor(sb)?));
            }
        }
        let shape = RegisterShape::with_cap(
            self.shape.dim(),
            self.shape.qudits() + other.shape.qudits(),
            DEFAULT_MAX_DIM,
        )?;
        Ok(Self::new(shape, entries)?.sorted())
    }

    /// Extend to a complete orthonormal basis with computational kets.
    ///
    /// Kets outside the family's support are orthogonal to the family and are
    /// appended as-is. Kets inside the support are Gram–Schmidt reduced
    /// against the family, and only when the family does not already span it.
    /// Complement vectors are labelled by their seed ket and follow the family
    /// in lexicographic order.
    pub fn completed(&self) -> Result<Self> {
        let total = self.shape.total();
        let mut in_support = vec![false; total];
        for (_, s) in &self.entries {
            for (i, a) in s.amps().iter().enumerate() {
                if *a != Complex64::new(0.0, 0.0) {
                    in_support[i] = true;
                }
            }
        }
        let support = in_support.iter().filter(|&&b| b).count();
        let mut entries = self.entries.clone();
        let mut grown: Vec<PureState> = Vec::new();
        for (i, &inside) in in_support.iter().enumerate() {
            let digits = self.shape.index_to_digits(i)?;
            let ket = PureState::basis(self.shape, &digits)?;
            if !inside {
                entries.push((BasisLabel::Complement(i), ket));
                continue;
            }
            if self.entries.len() + grown.len() >= support {
                continue;
            }
            let mut residual = ket.into_amps();
            for s in self.entries.iter().map(|(_, s)| s).chain(grown.iter()) {
                let overlap: Complex64 = s
                    .amps()
                    .iter()
                    .zip(&residual)
                    .map(|(a, b)| a.conj() * b)
                    .sum();
                for (r, a) in residual.iter_mut().zip(s.amps()) {
                    *r -= overlap * a;
                }
            }
            let v = PureState::unnormalized(self.shape, residual)?;
            if v.norm() > 1e-8 {
                let v = v.normalize()?;
                grown.push(v.clone());
                entries.push((BasisLabel::Complement(i), v));
            }
        }
        Ok(Self::new(self.shape, entries)?.sorted())
    }
}

fn product_label(a: &BasisLabel, b: &BasisLabel) -> BasisLabel {
    let mut parts = Vec::new();
    for l in [a, b] {
        match l {
            BasisLabel::Product(p) => parts.extend(p.iter().cloned()),
            other => parts.push(other.clone()),
        }
    }
    BasisLabel::Product(parts)
}

fn bell_family(dim: usize, particles: usize, barred: bool) -> Result<MeasurementBasis> {
    let mut entries = Vec::with_capacity(dim * dim);
    for n in 0..dim {
        for m in 0..dim {
            let l = BellLabel { n, m };
            let label = if barred {
                BasisLabel::Barred(l)
            } else {
                BasisLabel::Bell(l)
            };
            entries.push((label, barred_bell_state(dim, particles, l)?));
        }
    }
    MeasurementBasis::new(RegisterShape::new(dim, particles + 1)?, entries)
        .map(MeasurementBasis::sorted)
}

fn pi_family(dim: usize) -> Result<MeasurementBasis> {
    let entries = (0..dim)
        .map(|alpha| {
            let l = PiLabel { alpha };
            Ok((BasisLabel::Pi(l), pi_state(dim, l)?))
        })
        .collect::<Result<Vec<_>>>()?;
    MeasurementBasis::new(RegisterShape::new(dim, 1)?, entries)
}

fn ghz_family(dim: usize, middle: usize) -> Result<MeasurementBasis> {
    let mut entries = Vec::with_capacity(dim * dim * dim);
    for n in 0..dim {
        for m in 0..dim {
            for k in 0..dim {
                let l = GhzLabel { n, m, k };
                entries.push((BasisLabel::Ghz(l), ghz_barred_state(dim, middle, l)?));
            }
        }
    }
    MeasurementBasis::new(RegisterShape::new(dim, middle + 2)?, entries)
        .map(MeasurementBasis::sorted)
}

/// `π^{⊗count}`, or `None` when `count` is zero.
pub(crate) fn pi_power(dim: usize, count: usize) -> Result<Option<MeasurementBasis>> {
    let mut acc: Option<MeasurementBasis> = None;
    for _ in 0..count {
        let pi = pi_family(dim)?;
        acc = Some(match acc {
            None => pi,
            Some(b) => b.tensor(&pi)?,
        });
    }
    Ok(acc)
}

/// `π^{⊗count} ⊗ rest`, skipping the product when `count` is zero.
pub(crate) fn with_pi_prefix(
    dim: usize,
    count: usize,
    rest: MeasurementBasis,
) -> Result<MeasurementBasis> {
    match pi_power(dim, count)? {
        None => Ok(rest),
        Some(p) => p.tensor(&rest),
    }
}

/// Construct one of the measurement families. `particles` is the cat size
/// `M` for the joint and barred families and ignored otherwise.
pub fn build_basis(family: BasisFamily, dim: usize, particles: usize) -> Result<MeasurementBasis> {
    if dim < 2 {
        return Err(Error::Argument(format!(
            "local dimension must be >= 2, got {dim}"
        )));
    }
    match family {
        BasisFamily::Bell => bell_family(dim, 1, false),
        BasisFamily::Pi => pi_family(dim),
        BasisFamily::Ghz => ghz_family(dim, 1),
        BasisFamily::BellProtocolJoint => {
            if particles == 0 {
                return Err(Error::Argument("joint Bell family needs M >= 1".into()));
            }
            with_pi_prefix(dim, particles - 1, bell_family(dim, 1, false)?)
        }
        BasisFamily::GhzProtocolJoint => {
            if particles < 2 {
                return Err(Error::Argument(format!(
                    "GHZ collective measurement needs M >= 2, got {particles}"
                )));
            }
            ghz_family(dim, particles - 1)?.completed()
        }
        BasisFamily::Barred => {
            if particles == 0 {
                return Err(Error::Argument("barred family needs M >= 1".into()));
            }
            bell_family(dim, particles, true)
        }
    }
}

/// Gram and completeness residuals of a basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrthonormalityReport {
    /// `max |⟨vᵢ|vⱼ⟩ − δᵢⱼ|`.
    pub max_gram_error: f64,
    /// `max |(Σ|v⟩⟨v| − I)ᵢⱼ|`.
    pub max_completeness_error: f64,
}

impl OrthonormalityReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.max_gram_error < tol && self.max_completeness_error < tol
    }
}

pub fn verify_orthonormal_complete(basis: &MeasurementBasis) -> OrthonormalityReport {
    let n = basis.shape().total();
    let count = basis.len();
    let zero = Complex64::new(0.0, 0.0);
    let supports: Vec<Vec<(usize, Complex64)>> = basis
        .entries()
        .iter()
        .map(|(_, s)| {
            s.amps()
                .iter()
                .copied()
                .enumerate()
                .filter(|(_, a)| *a != zero)
                .collect()
        })
        .collect();

    // Both sums run over shared coordinates only.
    let mut by_coordinate: Vec<Vec<(usize, Complex64)>> = vec![Vec::new(); n];
    for (v, support) in supports.iter().enumerate() {
        for &(r, a) in support {
            by_coordinate[r].push((v, a));
        }
    }
    let mut gram = vec![zero; count * count];
    for column in &by_coordinate {
        for &(i, a) in column {
            for &(j, b) in column {
                gram[i * count + j] += a.conj() * b;
            }
        }
    }
    let mut projector = vec![zero; n * n];
    for support in &supports {
        for &(r, a) in support {
            for &(c, b) in support {
                projector[r * n + c] += a * b.conj();
            }
        }
    }
    let max_deviation = |m: &[Complex64], dim: usize| {
        m.iter()
            .enumerate()
            .map(|(idx, x)| {
                let delta = if idx / dim == idx % dim { 1.0 } else { 0.0 };
                (x - delta).norm()
            })
            .fold(0.0, f64::max)
    };
    OrthonormalityReport {
        max_gram_error: max_deviation(&gram, count),
        max_completeness_error: max_deviation(&projector, n),
    }
}
