//! Reduced density matrices.

use crate::error::{Error, Result};
use crate::register::RegisterShape;
use nalgebra::DMatrix;
use num_complex::Complex64;

const HERMITIAN_TOL: f64 = 1e-12;
const TRACE_TOL: f64 = 1e-12;
const EIGEN_TOL: f64 = 1e-10;

/// Row-major `total × total` density matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    shape: RegisterShape,
    entries: Vec<Complex64>,
}

impl DensityMatrix {
    /// Validates hermiticity, unit trace and positive semidefiniteness.
    pub fn from_entries(shape: RegisterShape, entries: Vec<Complex64>) -> Result<Self> {
        let n = shape.total();
        if entries.len() != n * n {
            return Err(Error::Shape(format!(
                "{} entries for a {n}x{n} matrix",
                entries.len()
            )));
        }
        let rho = Self { shape, entries };
        let herm = rho.hermiticity_error();
        if herm > HERMITIAN_TOL {
            return Err(Error::Argument(format!(
                "matrix is not Hermitian (error {herm:e})"
            )));
        }
        let tr = rho.trace();
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(Error::Argument(format!("trace {tr} is not 1")));
        }
        let low = rho.min_eigenvalue();
        if low < -EIGEN_TOL {
            return Err(Error::Argument(format!("negative eigenvalue {low:e}")));
        }
        Ok(rho)
    }

    pub fn shape(&self) -> RegisterShape {
        self.shape
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.shape.total() + col]
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.shape.total()).map(|i| self.get(i, i)).sum()
    }

    /// `max |ρᵢⱼ − conj(ρⱼᵢ)|`.
    pub fn hermiticity_error(&self) -> f64 {
        let n = self.shape.total();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }

    pub fn min_eigenvalue(&self) -> f64 {
        let n = self.shape.total();
        let m = DMatrix::from_row_slice(n, n, &self.entries);
        m.symmetric_eigenvalues()
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &DensityMatrix) -> Result<f64> {
        if self.shape != other.shape {
            return Err(Error::Shape(format!(
                "{:?} vs {:?}",
                self.shape, other.shape
            )));
        }
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }
}
