//! The special Lagrangian potential operator `F(X) = sum_i arctan(lambda_i(X))`.

use std::f64::consts::FRAC_PI_2;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::symmat::{eigenvalues, Spectrum, SymMatrix};

/// A phase value together with the dimension it refers to.
///
/// Values live in the closed interval `[-n pi/2, n pi/2]`; `F` itself only
/// reaches the endpoints in the limit.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
pub struct Phase {
    value: f64,
    n: usize,
}

/// Half-width `n pi/2` of the phase range, with a few ulps of slack for sums
/// of `n` saturated arctangents.
fn range_bound(n: usize) -> f64 {
    n as f64 * FRAC_PI_2 * (1.0 + 4.0 * f64::EPSILON)
}

impl Phase {
    pub fn new(value: f64, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("dimension must be at least 1".into()));
        }
        if !value.is_finite() || value.abs() > range_bound(n) {
            return Err(Error::InvalidInput(format!(
                "phase {value} outside [-{n}pi/2, {n}pi/2]"
            )));
        }
        Ok(Phase { value, n })
    }

    pub fn value(self) -> f64 {
        self.value
    }

    pub fn n(self) -> usize {
        self.n
    }
}

/// `sum_i arctan(lambda_i)`.
pub fn phase_of_spectrum(spectrum: &Spectrum) -> f64 {
    spectrum.values().iter().map(|l| l.atan()).sum()
}

/// `F(X)`.
pub fn operator(x: &SymMatrix) -> Result<Phase> {
    let spectrum = eigenvalues(x)?;
    Phase::new(phase_of_spectrum(&spectrum), x.n())
}

/// Raw `F(X)` value.
pub fn operator_value(x: &SymMatrix) -> Result<f64> {
    Ok(phase_of_spectrum(&eigenvalues(x)?))
}

/// `theta_k = (n - 2k) pi/2` for `0 <= k <= n`.
pub fn special_phase(n: usize, k: usize) -> Result<Phase> {
    if k > n {
        return Err(Error::IndexOutOfRange { index: k, max: n });
    }
    Phase::new(special_phase_value(n, k), n)
}

#[inline]
pub(crate) fn special_phase_value(n: usize, k: usize) -> f64 {
    (n as f64 - 2.0 * k as f64) * FRAC_PI_2
}

/// All special values `theta_0 > theta_1 > ... > theta_n`.
pub fn special_phases(n: usize) -> Vec<f64> {
    (0..=n).map(|k| special_phase_value(n, k)).collect()
}

/// True iff `[lo, hi]` lies inside `[theta_n, theta_0]` and contains none of
/// the values `theta_0, ..., theta_n`. Since the endpoints are themselves
/// special values, the interval must sit strictly between two consecutive
/// ones.
///
/// Mismatched dimensions or `lo > hi` yield `false`.
pub fn avoids_special_values(lo: Phase, hi: Phase, n: usize) -> bool {
    if lo.n != n || hi.n != n || lo.value > hi.value {
        return false;
    }
    let (lo, hi) = (lo.value, hi.value);
    let inside = special_phase_value(n, n) <= lo && hi <= special_phase_value(n, 0);
    inside && special_phases(n).iter().all(|&t| t < lo || t > hi)
}
