//! Monomial (permutation × root-of-unity phase) operators, which cover the
//! generalized Pauli shift and clock operators and every correction unitary.

use crate::error::{Error, Result};
use crate::phase::omega;
use crate::register::RegisterShape;
use crate::state::PureState;
use num_complex::Complex64;

/// `U|s⟩ = ω^{phase[s]} |target[s]⟩` for every computational string `s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialOperator {
    shape: RegisterShape,
    target: Vec<usize>,
    phase: Vec<usize>,
}

impl MonomialOperator {
    /// Fails unless `target` is a permutation of the basis indices.
    pub fn new(shape: RegisterShape, target: Vec<usize>, phase: Vec<usize>) -> Result<Self> {
        let n = shape.total();
        if target.len() != n || phase.len() != n {
            return Err(Error::Shape(format!(
                "operator tables must have {n} entries"
            )));
        }
        let mut seen = vec![false; n];
        for &t in &target {
            if t >= n || std::mem::replace(&mut seen[t], true) {
                return Err(Error::Argument("digit map is not a bijection".into()));
            }
        }
        let d = shape.dim();
        let phase = phase.into_iter().map(|p| p % d).collect();
        Ok(Self {
            shape,
            target,
            phase,
        })
    }

    pub fn identity(shape: RegisterShape) -> Self {
        let n = shape.total();
        Self {
            shape,
            target: (0..n).collect(),
            phase: vec![0; n],
        }
    }

    /// `X^power` on qudit `qudit`: `|q⟩ ↦ |q + power mod d⟩`.
    pub fn shift(shape: RegisterShape, qudit: usize, power: usize) -> Result<Self> {
        Self::check_qudit(shape, qudit)?;
        Self::from_digit_rule(shape, |digits| {
            digits[qudit] = (digits[qudit] + power) % shape.dim();
            0
        })
    }

    /// `Z^power` on qudit `qudit`: `|q⟩ ↦ ω^{q·power} |q⟩`.
    pub fn clock(shape: RegisterShape, qudit: usize, power: usize) -> Result<Self> {
        Self::check_qudit(shape, qudit)?;
        Self::from_digit_rule(shape, |digits| digits[qudit] * power)
    }

    /// Correction `Σ_j ω^{j·phase_exponent} |j…j⟩⟨(j+shift)…(j+shift)|`
    /// extended to the whole register as `(Z^{phase_exponent} ⊗ I…)·(X^{-shift})^{⊗n}`.
    pub fn cat_correction(
        shape: RegisterShape,
        shift: usize,
        phase_exponent: usize,
    ) -> Result<Self> {
        let d = shape.dim();
        let back = (d - shift % d) % d;
        Self::from_digit_rule(shape, |digits| {
            for q in digits.iter_mut() {
                *q = (*q + back) % d;
            }
            digits[0] * phase_exponent
        })
    }

    fn check_qudit(shape: RegisterShape, qudit: usize) -> Result<()> {
        if qudit >= shape.qudits() {
            return Err(Error::Range(format!(
                "qudit {qudit} not in a {}-qudit register",
                shape.qudits()
            )));
        }
        Ok(())
    }

    /// Builds the tables from a rule that rewrites the digits of `s` into
    /// those of `target[s]` and returns the phase exponent.
    fn from_digit_rule(
        shape: RegisterShape,
        mut rule: impl FnMut(&mut [usize]) -> usize,
    ) -> Result<Self> {
        let n = shape.total();
        let mut digits = vec![0; shape.qudits()];
        let mut target = Vec::with_capacity(n);
        let mut phase = Vec::with_capacity(n);
        for s in 0..n {
            shape.write_digits(s, &mut digits);
            phase.push(rule(&mut digits));
            target.push(shape.index_of(digits.iter().copied()));
        }
        Self::new(shape, target, phase)
    }

    pub fn shape(&self) -> RegisterShape {
        self.shape
    }

    /// `self · other` (apply `other` first).
    pub fn compose(&self, other: &MonomialOperator) -> Result<Self> {
        if self.shape != other.shape {
            return Err(Error::Shape("operators act on different registers".into()));
        }
        let target = other.target.iter().map(|&t| self.target[t]).collect();
        let phase = other
            .target
            .iter()
            .zip(&other.phase)
            .map(|(&t, &p)| p + self.phase[t])
            .collect();
        Self::new(self.shape, target, phase)
    }

    pub fn adjoint(&self) -> Self {
        let n = self.shape.total();
        let d = self.shape.dim();
        let mut target = vec![0; n];
        let mut phase = vec![0; n];
        for s in 0..n {
            target[self.target[s]] = s;
            phase[self.target[s]] = (d - self.phase[s]) % d;
        }
        Self {
            shape: self.shape,
            target,
            phase,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.target.iter().enumerate().all(|(i, &t)| i == t) && self.phase.iter().all(|&p| p == 0)
    }

    pub fn apply(&self, state: &PureState) -> Result<PureState> {
        if state.shape() != self.shape {
            return Err(Error::Shape(format!(
                "{:?} vs {:?}",
                state.shape(),
                self.shape
            )));
        }
        let d = self.shape.dim();
        let mut out = vec![Complex64::new(0.0, 0.0); self.shape.total()];
        for (s, a) in state.amps().iter().enumerate() {
            out[self.target[s]] = omega(self.phase[s] as i64, d) * a;
        }
        if state.is_normalized() {
            PureState::new(self.shape, out)
        } else {
            PureState::unnormalized(self.shape, out)
        }
    }

    /// Dense row-major matrix.
    pub fn to_dense(&self) -> Vec<Complex64> {
        let n = self.shape.total();
        let d = self.shape.dim();
        let mut m = vec![Complex64::new(0.0, 0.0); n * n];
        for s in 0..n {
            m[self.target[s] * n + s] = omega(self.phase[s] as i64, d);
        }
        m
    }
}
