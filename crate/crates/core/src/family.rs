//! The counterexample family.
//!
//! For `0 <= k <= n` and an exponent `1 < p < 2`,
//!
//! ```text
//! v_k(x) = 1/4 - sum_{i<=k} |x_i| + sum_{i>k} |x_i|^p / 2
//! u_k(x) = -v_{n-k}(J x)
//! f_k(x) = -sum_{i<=k} c(x_i) + sum_{i>k} c(x_i),   c(t) = arctan(a_p |t|^(p-2))
//! ```
//!
//! with `a_p = p(p-1)/2` and `c(0) = pi/2`. `v_k` is a subsolution and `u_k`
//! a supersolution of `F(D^2 w) = f_k`, yet `v_k - u_k` is `1/2` at the origin
//! and non-positive on the boundary of the unit cube.
//!
//! Coordinates are zero-based in code: "`i <= k`" above means `i < k` here.

use std::f64::consts::FRAC_PI_2;
use std::ops::Deref;

use crate::error::{Error, Result};
use crate::slop::Phase;
use crate::symmat::SymMatrix;

pub const DEFAULT_EXPONENT: f64 = 1.5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Family {
    n: usize,
    k: usize,
    p: f64,
    coeff: f64,
}

impl Family {
    pub fn new(n: usize, k: usize, p: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("dimension must be at least 1".into()));
        }
        if k > n {
            return Err(Error::IndexOutOfRange { index: k, max: n });
        }
        if !(p > 1.0 && p < 2.0) {
            return Err(Error::InvalidInput(format!(
                "exponent p = {p} must lie strictly between 1 and 2"
            )));
        }
        Ok(Family {
            n,
            k,
            p,
            coeff: p * (p - 1.0) / 2.0,
        })
    }

    /// The `p = 3/2` family, with `a_p = 3/8`.
    pub fn standard(n: usize, k: usize) -> Result<Self> {
        Self::new(n, k, DEFAULT_EXPONENT)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    /// `a_p = p(p-1)/2`, the second derivative coefficient of `|t|^p / 2`.
    pub fn coeff(&self) -> f64 {
        self.coeff
    }

    /// The family with `k` replaced by `n - k`.
    pub fn mirror(&self) -> Family {
        Family {
            k: self.n - self.k,
            ..*self
        }
    }

    /// Coordinate `i` of `v` is in the non-smooth (`-|t|`) block.
    #[inline]
    pub fn is_kink_coordinate(&self, i: usize) -> bool {
        i < self.k
    }

    /// Contribution of coordinate `i` to `v - 1/4`.
    #[inline]
    pub fn v_term(&self, i: usize, t: f64) -> f64 {
        if i < self.k {
            -t.abs()
        } else {
            0.5 * t.abs().powf(self.p)
        }
    }

    /// Contribution of coordinate `i` to `u + 1/4`, from the expanded form
    /// `-u_k(x) = 1/4 - sum_{i>k} |x_i| + sum_{i<=k} |x_i|^p / 2`.
    #[inline]
    pub fn u_term(&self, i: usize, t: f64) -> f64 {
        if i < self.k {
            -0.5 * t.abs().powf(self.p)
        } else {
            t.abs()
        }
    }

    pub fn v(&self, x: &[f64]) -> f64 {
        self.check_dim(x);
        0.25 + x
            .iter()
            .enumerate()
            .map(|(i, &t)| self.v_term(i, t))
            .sum::<f64>()
    }

    /// `u_k(x) = -v_{n-k}(J x)`, evaluated literally.
    pub fn u(&self, x: &[f64]) -> f64 {
        self.check_dim(x);
        let jx: Vec<f64> = x.iter().rev().copied().collect();
        -self.mirror().v(&jx)
    }

    /// `c_p(t) = arctan(a_p |t|^(p-2))`, extended by `pi/2` at `t = 0`.
    #[inline]
    pub fn c(&self, t: f64) -> f64 {
        if t == 0.0 {
            FRAC_PI_2
        } else {
            (self.coeff * t.abs().powf(self.p - 2.0)).atan()
        }
    }

    /// The phase `f_k(x)`.
    pub fn f(&self, x: &[f64]) -> Phase {
        Phase::new(self.f_value(x), self.n).expect("f_k stays within the phase range")
    }

    /// The phase as a raw number. On-axis terms are accumulated as an integer
    /// count of `pi/2`, so `f_k(0) = (n - 2k) pi/2` bit for bit.
    pub fn f_value(&self, x: &[f64]) -> f64 {
        self.check_dim(x);
        let mut axis_count: i64 = 0;
        let mut sum = 0.0;
        for (i, &t) in x.iter().enumerate() {
            let sign = if i < self.k { -1 } else { 1 };
            if t == 0.0 {
                axis_count += sign;
            } else {
                sum += sign as f64 * self.c(t);
            }
        }
        axis_count as f64 * FRAC_PI_2 + sum
    }

    /// Hessian of `v` where it is smooth in the trailing block:
    /// `diag(0, ..., 0, a_p |x_{k+1}|^(p-2), ..., a_p |x_n|^(p-2))`.
    pub fn hessian_v_offaxis(&self, x: &[f64]) -> Result<SymMatrix> {
        self.check_dim(x);
        if let Some(axis) = (self.k..self.n).find(|&i| x[i] == 0.0) {
            return Err(Error::OffAxisRequired { axis });
        }
        let d: Vec<f64> = x
            .iter()
            .enumerate()
            .map(|(i, &t)| {
                if i < self.k {
                    0.0
                } else {
                    self.coeff * t.abs().powf(self.p - 2.0)
                }
            })
            .collect();
        Ok(SymMatrix::diag(&d))
    }

    /// `v_k(x) - u_k(x)`.
    pub fn diff(&self, x: &[f64]) -> f64 {
        self.v(x) - self.u(x)
    }

    #[inline]
    fn check_dim(&self, x: &[f64]) {
        assert_eq!(x.len(), self.n, "point dimension does not match family");
    }
}

/// A point of `R^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Point(Vec<f64>);

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidInput("non-finite coordinate".into()));
        }
        Ok(Point(coords))
    }

    pub fn origin(n: usize) -> Self {
        Point(vec![0.0; n])
    }

    /// `J x`: the coordinates in reverse order.
    pub fn reversed(&self) -> Point {
        Point(self.0.iter().rev().copied().collect())
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }
}

impl Deref for Point {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

/// The open unit cube `{ |x_i| < 1 }` and its closure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DomainBox {
    pub n: usize,
}

impl DomainBox {
    pub fn new(n: usize) -> Self {
        DomainBox { n }
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.n && x.iter().all(|t| t.abs() < 1.0)
    }

    pub fn contains_closure(&self, x: &[f64]) -> bool {
        x.len() == self.n && x.iter().all(|t| t.abs() <= 1.0)
    }

    pub fn on_boundary(&self, x: &[f64]) -> bool {
        self.contains_closure(x) && x.iter().any(|t| t.abs() == 1.0)
    }

    /// Coordinate `j` of a uniform `m`-point grid on `[-1, 1]`. The formula
    /// is exactly antisymmetric, hits `0` for odd `m`, and `+-1` at the ends.
    pub fn grid_coordinate(m: usize, j: usize) -> f64 {
        assert!(m >= 2 && j < m);
        (2.0 * j as f64 - (m - 1) as f64) / (m - 1) as f64
    }

    /// Number of points of the `m`-per-side tensor grid.
    pub fn grid_len(&self, m: usize) -> usize {
        m.pow(self.n as u32)
    }

    /// Point `index` of the tensor grid, last coordinate varying fastest.
    pub fn grid_point(&self, m: usize, index: usize) -> Vec<f64> {
        let mut x = vec![0.0; self.n];
        let mut rest = index;
        for slot in x.iter_mut().rev() {
            *slot = Self::grid_coordinate(m, rest % m);
            rest /= m;
        }
        x
    }

    pub fn grid(&self, m: usize) -> impl Iterator<Item = Vec<f64>> + '_ {
        (0..self.grid_len(m)).map(move |i| self.grid_point(m, i))
    }

    /// Grid points with at least one coordinate equal to `+-1`.
    pub fn boundary_grid(&self, m: usize) -> impl Iterator<Item = Vec<f64>> + '_ {
        self.grid(m).filter(move |x| self.on_boundary(x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::slop::special_phase;
    use std::f64::consts::PI;

    fn std2() -> Family {
        Family::standard(2, 1).unwrap()
    }

    #[test]
    fn construction_checks() {
        assert_eq!(Family::standard(3, 1).unwrap().coeff(), 0.375);
        assert!(Family::new(2, 3, 1.5).is_err());
        assert!(Family::new(2, 1, 1.0).is_err());
        assert!(Family::new(2, 1, 2.0).is_err());
        assert!(Family::new(2, 1, f64::NAN).is_err());
        assert!(Family::new(0, 0, 1.5).is_err());
        assert_eq!(std2().mirror().k(), 1);
        assert_eq!(Family::standard(3, 1).unwrap().mirror().k(), 2);
    }

    #[test]
    fn v_examples() {
        assert_eq!(std2().v(&[0.0, 0.0]), 0.25);
        assert_eq!(std2().v(&[1.0, 1.0]), -0.25);
        let fam = Family::standard(3, 0).unwrap();
        for x in DomainBox::new(3).grid(7) {
            assert!(fam.v(&x) >= 0.25);
        }
    }

    #[test]
    fn u_examples() {
        let fam = std2();
        assert_eq!(fam.u(&[0.0, 0.0]), -0.25);
        for x in DomainBox::new(2).grid(9) {
            let expected = -0.25 - 0.5 * x[0].abs().powf(1.5) + x[1].abs();
            assert!((fam.u(&x) - expected).abs() < 1e-15);
            assert_eq!(fam.u(&x), -fam.v(&[x[1], x[0]]));
        }
    }

    #[test]
    fn phase_examples() {
        for n in 1..=4 {
            for k in 0..=n {
                let fam = Family::standard(n, k).unwrap();
                assert_eq!(
                    fam.f(&vec![0.0; n]).value(),
                    special_phase(n, k).unwrap().value()
                );
            }
        }
        let fam = std2();
        for &x in &[0.01f64, 0.3, -0.7, 1.0] {
            let expected = -(0.375 * f64::powf(x.abs(), -0.5)).atan() + PI / 2.0;
            assert!((fam.f_value(&[x, 0.0]) - expected).abs() < 1e-15);
        }
        assert_eq!(fam.f_value(&[0.25, 0.25]), 0.0);
        assert_eq!(fam.f_value(&[0.25, -0.25]), 0.0);
    }

    #[test]
    fn c_examples() {
        let fam = std2();
        assert_eq!(fam.c(0.0), PI / 2.0);
        assert_eq!(fam.c(1.0), 0.375f64.atan());
        let mut prev = fam.c(1e-6);
        for i in 1..=200 {
            let t = i as f64 * 0.01;
            assert_eq!(fam.c(t), fam.c(-t));
            let now = fam.c(t);
            assert!(now < prev);
            prev = now;
        }
    }

    #[test]
    fn hessian_examples() {
        let fam = std2();
        let h = fam.hessian_v_offaxis(&[0.5, 0.25]).unwrap();
        assert_eq!(h, SymMatrix::diag(&[0.0, 0.75]));
        assert_eq!(
            fam.hessian_v_offaxis(&[0.5, 0.0]),
            Err(Error::OffAxisRequired { axis: 1 })
        );
        // only the trailing block needs to be off-axis
        assert!(fam.hessian_v_offaxis(&[0.0, 0.5]).is_ok());
        let full = Family::standard(3, 3).unwrap();
        assert_eq!(
            full.hessian_v_offaxis(&[0.2, -0.4, 0.9]).unwrap(),
            SymMatrix::zeros(3)
        );
    }

    #[test]
    fn diff_examples() {
        let fam = std2();
        assert_eq!(fam.diff(&[0.0, 0.0]), 0.5);
        assert_eq!(fam.diff(&[1.0, 0.0]), 0.0);
        assert_eq!(fam.diff(&[1.0, 1.0]), -0.5);
    }

    #[test]
    fn domain_and_grid() {
        let dom = DomainBox::new(2);
        assert!(dom.contains(&[0.99, -0.5]));
        assert!(!dom.contains(&[1.0, 0.0]));
        assert!(dom.on_boundary(&[1.0, 0.0]));
        assert!(!dom.on_boundary(&[1.2, 0.0]));
        assert_eq!(DomainBox::grid_coordinate(41, 20), 0.0);
        assert_eq!(DomainBox::grid_coordinate(41, 0), -1.0);
        assert_eq!(DomainBox::grid_coordinate(41, 40), 1.0);
        for j in 0..41 {
            assert_eq!(
                DomainBox::grid_coordinate(41, j),
                -DomainBox::grid_coordinate(41, 40 - j)
            );
        }
        assert_eq!(dom.grid(5).count(), 25);
        assert_eq!(dom.boundary_grid(5).count(), 16);
        assert_eq!(dom.grid_point(5, 7), vec![-0.5, 0.0]);
    }

    #[test]
    fn point_reversal() {
        let p = Point::new(vec![1.0, 2.0, 3.0]).unwrap();
        assert_eq!(&*p.reversed(), &[3.0, 2.0, 1.0]);
        assert!(Point::new(vec![f64::NAN]).is_err());
    }
}
