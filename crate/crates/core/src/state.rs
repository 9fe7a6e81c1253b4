//! Dense pure states over a qudit register.

use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::register::RegisterShape;
use num_complex::Complex64;

/// Tolerance for the unit-norm invariant of normalized states.
pub const NORM_TOL: f64 = 1e-12;

/// Dense amplitude vector in big-endian basis order.
///
/// States built through [`PureState::new`] are checked to have unit norm.
/// Subnormalized intermediates (projected branches, for instance) must be
/// created through [`PureState::unnormalized`] and carry that flag.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    shape: RegisterShape,
    amps: Vec<Complex64>,
    normalized: bool,
}

impl PureState {
    pub fn new(shape: RegisterShape, amps: Vec<Complex64>) -> Result<Self> {
        let state = Self::unnormalized(shape, amps)?;
        let norm = state.norm();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::Normalization { norm });
        }
        Ok(Self {
            normalized: true,
            ..state
        })
    }

    pub fn unnormalized(shape: RegisterShape, amps: Vec<Complex64>) -> Result<Self> {
        if amps.len() != shape.total() {
            return Err(Error::Shape(format!(
                "{} amplitudes for a register of {}",
                amps.len(),
                shape.total()
            )));
        }
        Ok(Self {
            shape,
            amps,
            normalized: false,
        })
    }

    /// Computational basis ket `|q₁…qₙ⟩`.
    pub fn basis(shape: RegisterShape, digits: &[usize]) -> Result<Self> {
        let index = shape.digits_to_index(digits)?;
        let mut amps = vec![Complex64::new(0.0, 0.0); shape.total()];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(Self {
            shape,
            amps,
            normalized: true,
        })
    }

    #[inline]
    pub fn shape(&self) -> RegisterShape {
        self.shape
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.shape.dim()
    }

    #[inline]
    pub fn qudits(&self) -> usize {
        self.shape.qudits()
    }

    #[inline]
    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn into_amps(self) -> Vec<Complex64> {
        self.amps
    }

    #[inline]
    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn amplitude(&self, digits: &[usize]) -> Result<Complex64> {
        Ok(self.amps[self.shape.digits_to_index(digits)?])
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Rescale to unit norm. Fails on the zero vector.
    pub fn normalize(&self) -> Result<Self> {
        let norm = self.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::Normalization { norm });
        }
        let amps = self.amps.iter().map(|a| a / norm).collect();
        Ok(Self {
            shape: self.shape,
            amps,
            normalized: true,
        })
    }

    /// Multiply every amplitude by `factor`; the result is flagged normalized
    /// only when `factor` has unit modulus and `self` was normalized.
    pub fn scale(&self, factor: Complex64) -> Self {
        let amps = self.amps.iter().map(|a| a * factor).collect();
        let normalized = self.normalized && (factor.norm() - 1.0).abs() <= NORM_TOL;
        Self {
            shape: self.shape,
            amps,
            normalized,
        }
    }

    /// `⟨self|other⟩`, conjugate-linear in `self`.
    pub fn inner(&self, other: &PureState) -> Result<Complex64> {
        if self.shape != other.shape {
            return Err(Error::Shape(format!(
                "{:?} vs {:?}",
                self.shape, other.shape
            )));
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// `|⟨self|other⟩|²`.
    pub fn fidelity(&self, other: &PureState) -> Result<f64> {
        Ok(self.inner(other)?.norm_sqr())
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &PureState) -> Result<f64> {
        if self.shape != other.shape {
            return Err(Error::Shape(format!(
                "{:?} vs {:?}",
                self.shape, other.shape
            )));
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// `self ⊗ other`; the digits of `self` come first.
    pub fn tensor(&self, other: &PureState) -> Result<Self> {
        self.tensor_with_cap(other, crate::register::DEFAULT_MAX_DIM)
    }

    pub fn tensor_with_cap(&self, other: &PureState, cap: usize) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::Shape(format!(
                "cannot tensor d={} with d={}",
                self.dim(),
                other.dim()
            )));
        }
        let shape = RegisterShape::with_cap(self.dim(), self.qudits() + other.qudits(), cap)?;
        let mut amps = Vec::with_capacity(shape.total());
        for a in &self.amps {
            amps.extend(other.amps.iter().map(|b| a * b));
        }
        Ok(Self {
            shape,
            amps,
            normalized: self.normalized && other.normalized,
        })
    }

    /// Reduced density matrix on `keep` (0-based qudit positions, any order;
    /// the result is laid out in ascending qudit order).
    pub fn partial_trace_keep(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let n = self.qudits();
        if keep.is_empty() {
            return Err(Error::Argument("keep set must be nonempty".into()));
        }
        let mut kept = keep.to_vec();
        kept.sort_unstable();
        kept.dedup();
        if kept.len() != keep.len() {
            return Err(Error::Argument(format!(
                "duplicate qudits in keep set {keep:?}"
            )));
        }
        if let Some(&bad) = kept.iter().find(|&&q| q >= n) {
            return Err(Error::Argument(format!(
                "qudit {bad} not in a {n}-qudit register"
            )));
        }
        let traced: Vec<usize> = (0..n).filter(|q| !kept.contains(q)).collect();
        let d = self.dim();
        let kept_shape = RegisterShape::with_cap(d, kept.len(), usize::MAX)?;
        let kept_total = kept_shape.total();
        let traced_total = d.pow(traced.len() as u32);

        // Regroup amplitudes into a kept × traced matrix, then ρ = A·A†.
        let mut grouped = vec![Complex64::new(0.0, 0.0); kept_total * traced_total];
        let mut digits = vec![0; n];
        for (i, a) in self.amps.iter().enumerate() {
            self.shape.write_digits(i, &mut digits);
            let row = self.shape.index_of(kept.iter().map(|&q| digits[q]));
            let col = self.shape.index_of(traced.iter().map(|&q| digits[q]));
            grouped[row * traced_total + col] = *a;
        }
        let mut rho = vec![Complex64::new(0.0, 0.0); kept_total * kept_total];
        for r in 0..kept_total {
            let row_r = &grouped[r * traced_total..(r + 1) * traced_total];
            for c in r..kept_total {
                let row_c = &grouped[c * traced_total..(c + 1) * traced_total];
                let v: Complex64 = row_r.iter().zip(row_c).map(|(x, y)| x * y.conj()).sum();
                rho[r * kept_total + c] = v;
                rho[c * kept_total + r] = v.conj();
            }
        }
        DensityMatrix::from_entries(kept_shape, rho)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn ket(d: usize, digits: &[usize]) -> PureState {
        PureState::basis(RegisterShape::new(d, digits.len()).unwrap(), digits).unwrap()
    }

    #[test]
    fn tensor_of_basis_kets() {
        let s = ket(2, &[0]).tensor(&ket(2, &[1])).unwrap();
        assert_eq!(s, ket(2, &[0, 1]));
    }

    #[test]
    fn tensor_of_superposition() {
        let h = 0.5f64.sqrt();
        let plus = PureState::new(
            RegisterShape::new(2, 1).unwrap(),
            vec![c(h, 0.0), c(h, 0.0)],
        )
        .unwrap();
        let s = plus.tensor(&ket(2, &[0])).unwrap();
        assert_eq!(s.amps(), &[c(h, 0.0), c(0.0, 0.0), c(h, 0.0), c(0.0, 0.0)]);
        assert!(s.is_normalized());
    }

    #[test]
    fn tensor_rejects_mixed_dimensions() {
        assert!(matches!(
            ket(2, &[0]).tensor(&ket(3, &[0])),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn inner_products() {
        assert_eq!(ket(2, &[0]).inner(&ket(2, &[1])).unwrap(), c(0.0, 0.0));
        assert_eq!(
            ket(3, &[2, 1]).inner(&ket(3, &[2, 1])).unwrap(),
            c(1.0, 0.0)
        );
        assert!(ket(3, &[0]).inner(&ket(3, &[0, 0])).is_err());
    }

    #[test]
    fn inner_is_conjugate_linear_on_the_left() {
        let shape = RegisterShape::new(2, 1).unwrap();
        let a = PureState::unnormalized(shape, vec![c(0.0, 1.0), c(0.0, 0.0)]).unwrap();
        let b = ket(2, &[0]);
        assert_eq!(a.inner(&b).unwrap(), c(0.0, -1.0));
        assert_eq!(b.inner(&a).unwrap(), c(0.0, 1.0));
    }

    #[test]
    fn new_enforces_normalization() {
        let shape = RegisterShape::new(2, 1).unwrap();
        assert!(matches!(
            PureState::new(shape, vec![c(1.0, 0.0), c(1.0, 0.0)]),
            Err(Error::Normalization { .. })
        ));
        let raw = PureState::unnormalized(shape, vec![c(3.0, 0.0), c(0.0, 4.0)]).unwrap();
        assert!(!raw.is_normalized());
        let n = raw.normalize().unwrap();
        assert!(n.is_normalized());
        assert!((n.amps()[1].im - 0.8).abs() < 1e-15);
        let zero = PureState::unnormalized(shape, vec![c(0.0, 0.0); 2]).unwrap();
        assert!(zero.normalize().is_err());
    }

    #[test]
    fn partial_trace_of_product_state() {
        let rho = ket(2, &[0, 0]).partial_trace_keep(&[0]).unwrap();
        assert_eq!(
            rho.entries(),
            &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]
        );
    }

    #[test]
    fn partial_trace_of_bell_pair() {
        let h = 0.5f64.sqrt();
        let shape = RegisterShape::new(2, 2).unwrap();
        let bell =
            PureState::new(shape, vec![c(h, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(h, 0.0)]).unwrap();
        let rho = bell.partial_trace_keep(&[1]).unwrap();
        let expected = [c(0.5, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.5, 0.0)];
        for (a, b) in rho.entries().iter().zip(&expected) {
            assert!((a - b).norm() < 1e-15);
        }
    }

    #[test]
    fn partial_trace_argument_errors() {
        let s = ket(2, &[0, 1]);
        assert!(matches!(s.partial_trace_keep(&[]), Err(Error::Argument(_))));
        assert!(matches!(
            s.partial_trace_keep(&[2]),
            Err(Error::Argument(_))
        ));
        assert!(matches!(
            s.partial_trace_keep(&[0, 0]),
            Err(Error::Argument(_))
        ));
    }

    fn arb_state(dim: usize, qudits: u32) -> impl Strategy<Value = PureState> {
        let total = dim.pow(qudits);
        proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), total).prop_filter_map(
            "nonzero vector",
            move |pairs| {
                let shape = RegisterShape::new(dim, qudits as usize).unwrap();
                let amps = pairs.into_iter().map(|(r, i)| c(r, i)).collect();
                PureState::unnormalized(shape, amps)
                    .unwrap()
                    .normalize()
                    .ok()
            },
        )
    }

    proptest! {
        #[test]
        fn tensor_is_associative(a in arb_state(3, 1), b in arb_state(3, 2), c3 in arb_state(3, 1)) {
            let left = a.tensor(&b).unwrap().tensor(&c3).unwrap();
            let right = a.tensor(&b.tensor(&c3).unwrap()).unwrap();
            prop_assert!(left.max_abs_diff(&right).unwrap() < 1e-15);
        }

        // Products of short dyadic rationals are exact, so here the two
        // groupings must agree bit for bit.
        #[test]
        fn tensor_is_exactly_associative_on_dyadic_amplitudes(
            a in proptest::collection::vec((-8i32..8, -8i32..8), 2),
            b in proptest::collection::vec((-8i32..8, -8i32..8), 4),
            c3 in proptest::collection::vec((-8i32..8, -8i32..8), 2),
        ) {
            let mk = |v: &[(i32, i32)], q: usize| {
                let amps = v.iter().map(|&(r, i)| c(r as f64 / 8.0, i as f64 / 8.0)).collect();
                PureState::unnormalized(RegisterShape::new(2, q).unwrap(), amps).unwrap()
            };
            let (a, b, c3) = (mk(&a, 1), mk(&b, 2), mk(&c3, 1));
            let left = a.tensor(&b).unwrap().tensor(&c3).unwrap();
            let right = a.tensor(&b.tensor(&c3).unwrap()).unwrap();
            prop_assert_eq!(left.amps(), right.amps());
        }

        #[test]
        fn inner_with_basis_ket_reads_amplitude(s in arb_state(2, 3), idx in 0usize..8) {
            let digits = s.shape().index_to_digits(idx).unwrap();
            let e = PureState::basis(s.shape(), &digits).unwrap();
            prop_assert_eq!(e.inner(&s).unwrap(), s.amps()[idx]);
        }

        #[test]
        fn reduced_states_are_valid(s in arb_state(2, 4), mask in 1u8..15) {
            let keep: Vec<usize> = (0..4).filter(|q| mask & (1 << q) != 0).collect();
            let rho = s.partial_trace_keep(&keep).unwrap();
            prop_assert!((rho.trace().re - 1.0).abs() < 1e-12);
            prop_assert!(rho.trace().im.abs() < 1e-12);
            prop_assert!(rho.hermiticity_error() < 1e-12);
        }
    }
}
