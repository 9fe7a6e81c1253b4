//! Register shapes and big-endian mixed-radix indexing.

use crate::error::{Error, Result};
use serde::Serialize;

/// Default upper bound on the number of amplitudes in a dense register (2²²).
pub const DEFAULT_MAX_DIM: usize = 1 << 22;

/// `numQudits` qudits of local dimension `d`, laid out big-endian: qudit 0 is
/// the most significant digit of the flat basis index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct RegisterShape {
    dim: usize,
    qudits: usize,
    total: usize,
}

impl RegisterShape {
    pub fn new(dim: usize, qudits: usize) -> Result<Self> {
        Self::with_cap(dim, qudits, DEFAULT_MAX_DIM)
    }

    /// Like [`RegisterShape::new`] with an explicit cap on `d^numQudits`.
    pub fn with_cap(dim: usize, qudits: usize, cap: usize) -> Result<Self> {
        if dim < 2 {
            return Err(Error::Argument(format!(
                "local dimension must be >= 2, got {dim}"
            )));
        }
        if qudits == 0 {
            return Err(Error::Argument(
                "a register needs at least one qudit".into(),
            ));
        }
        let total = u32::try_from(qudits)
            .ok()
            .and_then(|q| dim.checked_pow(q))
            .filter(|&t| t <= cap)
            .ok_or_else(|| Error::Size {
                requested: format!("{dim}^{qudits}"),
                cap,
            })?;
        Ok(Self { dim, qudits, total })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn qudits(&self) -> usize {
        self.qudits
    }

    /// `d^numQudits`.
    #[inline]
    pub fn total(&self) -> usize {
        self.total
    }

    pub fn digits_to_index(&self, digits: &[usize]) -> Result<usize> {
        if digits.len() != self.qudits {
            return Err(Error::Shape(format!(
                "expected {} digits, got {}",
                self.qudits,
                digits.len()
            )));
        }
        digits.iter().try_fold(0usize, |acc, &q| {
            if q >= self.dim {
                Err(Error::Range(format!("digit {q} not in [0, {})", self.dim)))
            } else {
                Ok(acc * self.dim + q)
            }
        })
    }

    pub fn index_to_digits(&self, index: usize) -> Result<Vec<usize>> {
        if index >= self.total {
            return Err(Error::Range(format!(
                "index {index} not in [0, {})",
                self.total
            )));
        }
        let mut digits = vec![0; self.qudits];
        self.write_digits(index, &mut digits);
        Ok(digits)
    }

    /// Unchecked digit expansion into a caller-provided buffer.
    pub(crate) fn write_digits(&self, mut index: usize, out: &mut [usize]) {
        for slot in out.iter_mut().rev() {
            *slot = index % self.dim;
            index /= self.dim;
        }
    }

    /// Unchecked big-endian fold of digits.
    pub(crate) fn index_of(&self, digits: impl IntoIterator<Item = usize>) -> usize {
        digits.into_iter().fold(0, |acc, q| acc * self.dim + q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn digits_to_index_examples() {
        let s32 = RegisterShape::new(3, 2).unwrap();
        assert_eq!(s32.digits_to_index(&[0, 0]).unwrap(), 0);
        assert_eq!(s32.digits_to_index(&[2, 1]).unwrap(), 7);
        let s23 = RegisterShape::new(2, 3).unwrap();
        assert_eq!(s23.digits_to_index(&[1, 0, 1]).unwrap(), 5);
    }

    #[test]
    fn index_to_digits_examples() {
        let s32 = RegisterShape::new(3, 2).unwrap();
        assert_eq!(s32.index_to_digits(7).unwrap(), vec![2, 1]);
        assert_eq!(s32.index_to_digits(0).unwrap(), vec![0, 0]);
        let s51 = RegisterShape::new(5, 1).unwrap();
        assert_eq!(s51.index_to_digits(4).unwrap(), vec![4]);
    }

    #[test]
    fn out_of_range_inputs() {
        let s = RegisterShape::new(3, 2).unwrap();
        assert!(matches!(s.digits_to_index(&[3, 0]), Err(Error::Range(_))));
        assert!(matches!(s.digits_to_index(&[0]), Err(Error::Shape(_))));
        assert!(matches!(s.index_to_digits(9), Err(Error::Range(_))));
    }

    #[test]
    fn size_cap() {
        assert!(RegisterShape::new(2, 22).is_ok());
        assert!(RegisterShape::new(2, 23).unwrap_err().is_size());
        assert!(RegisterShape::with_cap(3, 3, 26).unwrap_err().is_size());
        assert!(RegisterShape::new(1000, 1000).unwrap_err().is_size());
        assert!(RegisterShape::new(1, 3).is_err());
        assert!(RegisterShape::new(3, 0).is_err());
    }

    proptest! {
        #[test]
        fn index_round_trip(dim in 2usize..7, qudits in 1usize..6, seed in any::<u64>()) {
            let s = RegisterShape::new(dim, qudits).unwrap();
            let i = (seed as usize) % s.total();
            let digits = s.index_to_digits(i).unwrap();
            prop_assert_eq!(s.digits_to_index(&digits).unwrap(), i);
        }
    }
}
