//! Roots of unity.
//!
//! Phases are always evaluated from the reduced exponent `x mod d`, so each
//! factor carries a single rounding step regardless of how large `x` grew.

use num_complex::Complex64;
use std::f64::consts::TAU;

/// `exp(2πi·x/d)` with `x` reduced modulo `d` first.
pub fn omega(exponent: i64, dim: usize) -> Complex64 {
    let d = dim as i64;
    let r = exponent.rem_euclid(d);
    if r == 0 {
        return Complex64::new(1.0, 0.0);
    }
    // Exact values at the quarter turns.
    if 4 * r == d {
        return Complex64::new(0.0, 1.0);
    }
    if 2 * r == d {
        return Complex64::new(-1.0, 0.0);
    }
    if 4 * r == 3 * d {
        return Complex64::new(0.0, -1.0);
    }
    Complex64::from_polar(1.0, TAU * r as f64 / d as f64)
}
