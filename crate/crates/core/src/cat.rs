//! Cat-like states `Σ_l α_l |l l … l⟩`.

use crate::error::{Error, Result};
use crate::register::{RegisterShape, DEFAULT_MAX_DIM};
use crate::state::{PureState, NORM_TOL};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

/// The unknown state to teleport: `particles` qudits of dimension `dim` that
/// all share one computational value, with amplitude `coeffs[l]` on `|l…l⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct CatState {
    dim: usize,
    particles: usize,
    coeffs: Vec<Complex64>,
}

impl CatState {
    pub fn new(dim: usize, particles: usize, coeffs: Vec<Complex64>) -> Result<Self> {
        if dim < 2 {
            return Err(Error::Argument(format!(
                "local dimension must be >= 2, got {dim}"
            )));
        }
        if particles == 0 {
            return Err(Error::Argument(
                "a cat state needs at least one particle".into(),
            ));
        }
        if coeffs.len() != dim {
            return Err(Error::Shape(format!(
                "{} coefficients for d={dim}",
                coeffs.len()
            )));
        }
        let norm = coeffs.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::Normalization { norm });
        }
        Ok(Self {
            dim,
            particles,
            coeffs,
        })
    }

    /// Accepts coefficients whose norm is within `tol` of one and rescales
    /// them to unit norm.
    pub fn renormalized(
        dim: usize,
        particles: usize,
        coeffs: Vec<Complex64>,
        tol: f64,
    ) -> Result<Self> {
        let norm = coeffs.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if !norm.is_finite() || (norm - 1.0).abs() > tol {
            return Err(Error::Normalization { norm });
        }
        let coeffs = coeffs.into_iter().map(|a| a / norm).collect();
        Self::new(dim, particles, coeffs)
    }

    /// Independent complex Gaussian coefficients, normalized. Deterministic in
    /// `seed`.
    pub fn random(dim: usize, particles: usize, seed: u64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let raw: Vec<Complex64> = (0..dim)
            .map(|_| {
                let re: f64 = StandardNormal.sample(&mut rng);
                let im: f64 = StandardNormal.sample(&mut rng);
                Complex64::new(re, im)
            })
            .collect();
        let norm = raw.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        Self::new(dim, particles, raw.into_iter().map(|a| a / norm).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn particles(&self) -> usize {
        self.particles
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Same coefficients on a different number of particles.
    pub fn with_particles(&self, particles: usize) -> Result<Self> {
        Self::new(self.dim, particles, self.coeffs.clone())
    }

    /// Multiply every coefficient by `exp(iθ)`.
    pub fn with_global_phase(&self, theta: f64) -> Self {
        let f = Complex64::from_polar(1.0, theta);
        Self {
            coeffs: self.coeffs.iter().map(|a| a * f).collect(),
            ..self.clone()
        }
    }

    pub fn to_pure_state(&self) -> Result<PureState> {
        self.to_pure_state_with_cap(DEFAULT_MAX_DIM)
    }

    pub fn to_pure_state_with_cap(&self, cap: usize) -> Result<PureState> {
        let shape = RegisterShape::with_cap(self.dim, self.particles, cap)?;
        let mut amps = vec![Complex64::new(0.0, 0.0); shape.total()];
        for (l, a) in self.coeffs.iter().enumerate() {
            amps[shape.index_of(std::iter::repeat_n(l, self.particles))] = *a;
        }
        PureState::new(shape, amps)
    }
}
