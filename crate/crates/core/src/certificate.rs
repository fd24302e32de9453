//! The shift gap behind the comparison criterion.
//!
//! Comparison holds for `F(D^2 w) = f` provided that, whenever
//! `F(X_j) -> theta` with `theta` in the range of `f`,
//! `liminf F(X_j + tau I) > theta` for every `tau > 0`. This module measures
//!
//! ```text
//! delta(theta, tau) = inf { F(X + tau I) - F(X) : F(X) = theta }
//! ```
//!
//! Both `F(X)` and `F(X + tau I)` depend only on the spectrum, so the
//! infimum runs over eigenvalue vectors `lambda` with
//! `sum_i arctan(lambda_i) = theta`. The set is unbounded; [`delta`]
//! restricts it to the box `[-cap, cap]^n`. Away from the special phase
//! values the minimum settles at finite eigenvalues as `cap` grows. At a
//! special value it decays to zero along eigenvalues escaping to `+-infinity`.
//! A cap-indexed sequence of minima is a numerical picture of that limit,
//! not a proof of it.

use crate::error::{Error, Result};
use crate::slop::{avoids_special_values, Phase};

/// Absolute tolerance of the bisection for the constrained eigenvalue.
pub const BISECTION_TOL: f64 = 1e-12;

const MAX_DIMENSION: usize = 3;
const REFINE_EVALS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaQuery {
    n: usize,
    theta: Phase,
    tau: f64,
    cap: f64,
    resolution: usize,
}

impl DeltaQuery {
    /// Validates the query. `resolution` is the number of scan points per
    /// free eigenvalue.
    pub fn new(theta: Phase, tau: f64, cap: f64, resolution: usize) -> Result<Self> {
        let n = theta.n();
        if n > MAX_DIMENSION {
            return Err(Error::UnsupportedDimension(n));
        }
        let half_range = n as f64 * std::f64::consts::FRAC_PI_2;
        if theta.value().abs() >= half_range {
            return Err(Error::InvalidInput(format!(
                "theta = {} must lie strictly inside (-{n}pi/2, {n}pi/2)",
                theta.value()
            )));
        }
        if !(tau > 0.0 && tau.is_finite()) {
            return Err(Error::InvalidInput(format!("tau = {tau} must be positive")));
        }
        if !(cap > 0.0 && cap.is_finite()) {
            return Err(Error::InvalidInput(format!("cap = {cap} must be positive")));
        }
        if resolution < 2 {
            return Err(Error::InvalidInput("resolution must be at least 2".into()));
        }
        // The most balanced feasible point has lambda_i = tan(theta / n).
        if cap <= (theta.value().abs() / n as f64).tan() {
            return Err(Error::Infeasible(format!(
                "no eigenvalues in [-{cap}, {cap}] reach phase {}",
                theta.value()
            )));
        }
        Ok(DeltaQuery {
            n,
            theta,
            tau,
            cap,
            resolution,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn theta(&self) -> Phase {
        self.theta
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn cap(&self) -> f64 {
        self.cap
    }

    pub fn resolution(&self) -> usize {
        self.resolution
    }

    pub fn with_cap(&self, cap: f64) -> Result<Self> {
        Self::new(self.theta, self.tau, cap, self.resolution)
    }
}

/// `arctan(lambda + tau) - arctan(lambda)`.
#[inline]
fn shift_gain(lambda: f64, tau: f64) -> f64 {
    (lambda + tau).atan() - lambda.atan()
}

/// Solves `arctan(lambda) = target` for `lambda` in `[-cap, cap]` by
/// bisection. Targets outside `arctan([-cap, cap])` by more than rounding
/// are infeasible.
fn solve_last(target: f64, cap: f64) -> Option<f64> {
    let edge = cap.atan();
    if target.abs() > edge + 4.0 * f64::EPSILON {
        return None;
    }
    let (mut lo, mut hi) = (-cap, cap);
    if target >= edge {
        return Some(cap);
    }
    if target <= -edge {
        return Some(-cap);
    }
    while hi - lo > BISECTION_TOL * hi.abs().max(lo.abs()).max(1.0) {
        let mid = 0.5 * (lo + hi);
        if mid.atan() < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

#[inline]
fn free_eigenvalue(angle: f64, cap: f64) -> f64 {
    angle.tan().clamp(-cap, cap)
}

struct Objective {
    n: usize,
    theta: f64,
    tau: f64,
    cap: f64,
}

impl Objective {
    /// Total shift gain with free eigenvalues `tan(angles)` and the last one
    /// solved from the constraint; `None` when infeasible.
    fn eval(&self, angles: &[f64]) -> Option<f64> {
        debug_assert_eq!(angles.len(), self.n - 1);
        let mut gain = 0.0;
        let mut used = 0.0;
        for &a in angles {
            let lambda = free_eigenvalue(a, self.cap);
            used += lambda.atan();
            gain += shift_gain(lambda, self.tau);
        }
        let last = solve_last(self.theta - used, self.cap)?;
        Some(gain + shift_gain(last, self.tau))
    }
}

fn angle_grid(cap: f64, resolution: usize) -> Vec<f64> {
    let edge = cap.atan();
    (0..resolution)
        .map(|i| -edge + 2.0 * edge * i as f64 / (resolution - 1) as f64)
        .collect()
}

/// Golden-section search for the minimum of `f` on `[a, b]`; infeasible
/// points count as `+inf`.
fn golden_section(f: impl Fn(f64) -> Option<f64>, mut a: f64, mut b: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let eval = |x: f64| f(x).unwrap_or(f64::INFINITY);
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = eval(x1);
    let mut f2 = eval(x2);
    for _ in 0..REFINE_EVALS {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = eval(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = eval(x2);
        }
        if (b - a).abs() < 1e-15 {
            break;
        }
    }
    if f1 <= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Minimum of `sum_i [arctan(lambda_i + tau) - arctan(lambda_i)]` over
/// `lambda in [-cap, cap]^n` with `sum_i arctan(lambda_i) = theta`.
///
/// The `n - 1` free eigenvalues are scanned on a grid uniform in
/// `arctan(lambda)` (`resolution` points each, endpoints included), the last
/// is solved from the constraint by bisection, and the best scan cell is
/// refined by golden-section search.
pub fn delta(q: &DeltaQuery) -> Result<f64> {
    let obj = Objective {
        n: q.n,
        theta: q.theta.value(),
        tau: q.tau,
        cap: q.cap,
    };
    let best = match q.n {
        1 => obj.eval(&[]),
        2 => Some(scan_2(&obj, q.resolution)),
        3 => Some(scan_3(&obj, q.resolution)),
        n => return Err(Error::UnsupportedDimension(n)),
    };
    match best {
        Some(v) if v.is_finite() => Ok(v.max(0.0)),
        _ => Err(Error::Infeasible(format!(
            "no scan point satisfies the phase constraint theta = {}",
            q.theta.value()
        ))),
    }
}

fn scan_2(obj: &Objective, resolution: usize) -> f64 {
    let grid = angle_grid(obj.cap, resolution);
    let values: Vec<f64> = grid
        .iter()
        .map(|&a| obj.eval(&[a]).unwrap_or(f64::INFINITY))
        .collect();
    let (i, &scan_min) = values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("non-empty grid");
    if !scan_min.is_finite() {
        return scan_min;
    }
    let lo = grid[i.saturating_sub(1)];
    let hi = grid[(i + 1).min(grid.len() - 1)];
    let (_, refined) = golden_section(|a| obj.eval(&[a]), lo, hi);
    scan_min.min(refined)
}

fn scan_3(obj: &Objective, resolution: usize) -> f64 {
    let grid = angle_grid(obj.cap, resolution);
    let mut best = (f64::INFINITY, 0, 0);
    for (i, &a) in grid.iter().enumerate() {
        for (j, &b) in grid.iter().enumerate() {
            if let Some(v) = obj.eval(&[a, b]) {
                if v < best.0 {
                    best = (v, i, j);
                }
            }
        }
    }
    let (scan_min, i, j) = best;
    if !scan_min.is_finite() {
        return scan_min;
    }
    // Alternating one-dimensional refinements inside the neighbouring cells.
    let last = grid.len() - 1;
    let (lo_a, hi_a) = (grid[i.saturating_sub(1)], grid[(i + 1).min(last)]);
    let (lo_b, hi_b) = (grid[j.saturating_sub(1)], grid[(j + 1).min(last)]);
    let (mut a, mut b) = (grid[i], grid[j]);
    let mut value = scan_min;
    for _ in 0..8 {
        let (na, va) = golden_section(|t| obj.eval(&[t, b]), lo_a, hi_a);
        if va < value {
            a = na;
            value = va;
        }
        let (nb, vb) = golden_section(|t| obj.eval(&[a, t]), lo_b, hi_b);
        if vb < value {
            b = nb;
            value = vb;
        }
    }
    value
}

/// True when the comparison argument applies to every continuous phase with
/// range in `[lo, hi]`, i.e. the range avoids all special values.
pub fn comparison_condition_holds(lo: Phase, hi: Phase, n: usize) -> bool {
    avoids_special_values(lo, hi, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::Family;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    fn query(n: usize, theta: f64, tau: f64, cap: f64, res: usize) -> DeltaQuery {
        DeltaQuery::new(Phase::new(theta, n).unwrap(), tau, cap, res).unwrap()
    }

    #[test]
    fn one_dimensional_delta_is_closed_form() {
        let d = delta(&query(1, 0.0, 1.0, 10.0, 2)).unwrap();
        assert!((d - FRAC_PI_4).abs() < 1e-12);
        for &theta in &[-1.2, -0.3, 0.4, 1.1] {
            let d = delta(&query(1, theta, 0.5, 100.0, 2)).unwrap();
            let expected = (theta.tan() + 0.5).atan() - theta;
            assert!((d - expected).abs() < 1e-11);
        }
    }

    #[test]
    fn special_value_decays_with_cap() {
        // lambda = (cap, -cap) gives about 2/cap^2.
        let d = delta(&query(2, 0.0, 1.0, 1e3, 2000)).unwrap();
        assert!(d <= 2e-3);
        let along_diagonal = shift_gain(1e3, 1.0) + shift_gain(-1e3, 1.0);
        assert!(d <= along_diagonal + 1e-15);
    }

    #[test]
    fn regular_value_is_bounded_away_from_zero() {
        let d = delta(&query(2, FRAC_PI_2, 1.0, 1e3, 2000)).unwrap();
        assert!(d >= 0.01);
        // minimiser lambda = (1, 1): 2 [arctan 2 - pi/4] = arctan(3/4)
        assert!((d - 0.75f64.atan()).abs() < 1e-12, "{d}");
    }

    #[test]
    fn three_dimensional_scan_matches_symmetric_point() {
        // For n = 3, theta = pi is regular; lambda_i = tan(pi/3) = sqrt(3) is
        // a feasible point and bounds delta from above.
        let d = delta(&query(3, std::f64::consts::PI, 1.0, 100.0, 200)).unwrap();
        let at_symmetric = 3.0 * shift_gain(3f64.sqrt(), 1.0);
        assert!(d <= at_symmetric + 1e-12);
        assert!((d - 0.518_158).abs() < 1e-5, "{d}");
    }

    #[test]
    fn query_validation() {
        let p = |v: f64, n| Phase::new(v, n).unwrap();
        assert!(matches!(
            DeltaQuery::new(p(0.0, 4), 1.0, 10.0, 10),
            Err(Error::UnsupportedDimension(4))
        ));
        assert!(matches!(
            DeltaQuery::new(p(1.5, 1), 1.0, 10.0, 10),
            Err(Error::Infeasible(_))
        ));
        assert!(DeltaQuery::new(p(0.0, 2), 0.0, 10.0, 10).is_err());
        assert!(DeltaQuery::new(p(0.0, 2), 1.0, -1.0, 10).is_err());
        assert!(DeltaQuery::new(p(0.0, 2), 1.0, 10.0, 1).is_err());
        assert!(DeltaQuery::new(p(std::f64::consts::PI, 2), 1.0, 10.0, 10).is_err());
    }

    #[test]
    fn bisection_hits_tolerance() {
        for &cap in &[1.0, 10.0, 1e4] {
            for &target in &[-1.0f64, -0.1, 0.0, 0.3, 0.7] {
                if target.abs() > f64::atan(cap) {
                    continue;
                }
                let l = solve_last(target, cap).unwrap();
                assert!((l - target.tan()).abs() <= 1e-12 * target.tan().abs().max(1.0) * 4.0);
            }
        }
        assert!(solve_last(1.5, 1.0).is_none());
    }

    #[test]
    fn comparison_condition_examples() {
        let p = |v: f64| Phase::new(v, 2).unwrap();
        assert!(comparison_condition_holds(p(0.2), p(0.9), 2));
        assert!(!comparison_condition_holds(p(-0.2), p(0.9), 2));
        for n in 1..=3 {
            for k in 0..=n {
                let fam = Family::standard(n, k).unwrap();
                let at_origin = fam.f(&vec![0.0; n]);
                assert!(!comparison_condition_holds(at_origin, at_origin, n));
            }
        }
    }
}
