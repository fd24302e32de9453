//! Viscosity sub/supersolution checks for the family.
//!
//! Two layers:
//!
//! * [`subsolution_certificate`] evaluates the lower bound on `F(D^2 phi)`
//!   that holds for *every* smooth `phi` touching `v_k` from above, and
//!   compares it with `f_k`. This encodes the proof and carries the burden.
//! * [`probe_subsolution`] and [`supersolution_by_symmetry`] sample concrete
//!   touching quadratics, confirm touching on a local point set, and test the
//!   viscosity inequality directly. They can only falsify.
//!
//! The eigenvalue bookkeeping behind the certificate is interlacing: if
//! `phi` touches `v` from above, its Hessian restricted to the coordinates in
//! which `v` is `C^2` dominates the Hessian of `v` there (Loewner order), so
//! the top eigenvalues of `D^2 phi` dominate the sorted diagonal of
//! `D^2 v` on that block. Each remaining eigenvalue contributes more than
//! `-pi/2`.

use std::f64::consts::FRAC_PI_2;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::family::Family;
use crate::slop::operator_value;
use crate::symmat::{conjugate, exchange_matrix, SymMatrix};

/// Slack on the viscosity inequalities, absorbing eigensolver rounding.
pub const MARGIN_SLACK: f64 = 1e-9;

/// Absolute slack when comparing a quadratic against the target on samples.
pub const TOUCH_TOL: f64 = 1e-13;

/// Neighbourhood radius on which touching is confirmed.
pub const DEFAULT_RADIUS: f64 = 1e-3;

const STEPS: [f64; 5] = [-1.0, -0.5, 0.0, 0.5, 1.0];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Above,
    Below,
}

/// `q(x) = value + g.(x - base) + (x - base)^T H (x - base) / 2`, claimed to
/// touch some target at `base` from `side`.
#[derive(Debug, Clone, PartialEq)]
pub struct TouchingQuadratic {
    base: Vec<f64>,
    value: f64,
    gradient: Vec<f64>,
    hessian: SymMatrix,
    side: Side,
}

impl TouchingQuadratic {
    pub fn new(
        base: Vec<f64>,
        value: f64,
        gradient: Vec<f64>,
        hessian: SymMatrix,
        side: Side,
    ) -> Self {
        assert_eq!(base.len(), gradient.len());
        assert_eq!(base.len(), hessian.n());
        TouchingQuadratic {
            base,
            value,
            gradient,
            hessian,
            side,
        }
    }

    pub fn base(&self) -> &[f64] {
        &self.base
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn gradient(&self) -> &[f64] {
        &self.gradient
    }

    pub fn hessian(&self) -> &SymMatrix {
        &self.hessian
    }

    pub fn side(&self) -> Side {
        self.side
    }

    /// `q(base + d) - q(base)`.
    pub fn increment(&self, d: &[f64]) -> f64 {
        let mut lin = 0.0;
        let mut quad = 0.0;
        for (i, &di) in d.iter().enumerate() {
            lin += self.gradient[i] * di;
            let row: f64 = d
                .iter()
                .enumerate()
                .map(|(j, &dj)| self.hessian.get(i, j) * dj)
                .sum();
            quad += di * row;
        }
        lin + 0.5 * quad
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        let d: Vec<f64> = x.iter().zip(&self.base).map(|(a, b)| a - b).collect();
        self.value + self.increment(&d)
    }

    /// Checks equality at `base` and one-sided domination on
    /// [`LocalSamples`] of the given radius.
    pub fn touches(&self, target: impl Fn(&[f64]) -> f64, radius: f64) -> bool {
        if (target(&self.base) - self.value).abs() > TOUCH_TOL {
            return false;
        }
        let samples = LocalSamples::new(self.base.len(), radius);
        let mut x = vec![0.0; self.base.len()];
        let ok = samples.offsets().all(|d| {
            for (xi, (b, di)) in x.iter_mut().zip(self.base.iter().zip(d)) {
                *xi = b + di;
            }
            self.dominates(self.increment(d), target(&x) - self.value)
        });
        ok
    }

    /// Same as [`touches`](Self::touches) for a separable target whose
    /// increments are tabulated in `table`. Assumes the values already agree
    /// at `base`.
    pub fn touches_separable(&self, table: &SeparableTable, samples: &LocalSamples) -> bool {
        self.domination_slack(table, samples) >= -TOUCH_TOL
    }

    /// Smallest one-sided gap between the quadratic and a separable target
    /// over the samples; negative where domination fails.
    pub fn domination_slack(&self, table: &SeparableTable, samples: &LocalSamples) -> f64 {
        samples
            .offsets()
            .zip(samples.step_indices())
            .map(|(d, steps)| self.slack(self.increment(d), table.increment(steps)))
            .fold(f64::INFINITY, f64::min)
    }

    #[inline]
    fn slack(&self, q_inc: f64, target_inc: f64) -> f64 {
        match self.side {
            Side::Above => q_inc - target_inc,
            Side::Below => target_inc - q_inc,
        }
    }

    #[inline]
    fn dominates(&self, q_inc: f64, target_inc: f64) -> bool {
        self.slack(q_inc, target_inc) >= -TOUCH_TOL
    }

    /// The quadratic `y -> -q(J y)`, based at `J base`, touching from the
    /// opposite side. Its Hessian is `-J H J`.
    pub fn mirrored(&self) -> TouchingQuadratic {
        let n = self.base.len();
        let rev = |v: &[f64]| -> Vec<f64> { v.iter().rev().map(|a| -a).collect() };
        let mut base: Vec<f64> = self.base.clone();
        base.reverse();
        TouchingQuadratic {
            base,
            value: -self.value,
            gradient: rev(&self.gradient),
            hessian: SymMatrix::from_fn(n, |i, j| -self.hessian.get(n - 1 - i, n - 1 - j)),
            side: match self.side {
                Side::Above => Side::Below,
                Side::Below => Side::Above,
            },
        }
    }
}

/// Sample offsets around a base point: five points per axis direction
/// (`-r, -r/2, 0, r/2, r`) and the `2^n` corners of the cube of half-width `r`.
/// The zero offset is implicit.
#[derive(Debug, Clone)]
pub struct LocalSamples {
    offsets: Vec<Vec<f64>>,
    steps: Vec<Vec<u8>>,
}

impl LocalSamples {
    pub fn new(n: usize, radius: f64) -> Self {
        let mut steps = Vec::new();
        for i in 0..n {
            for s in [0u8, 1, 3, 4] {
                let mut idx = vec![2u8; n];
                idx[i] = s;
                steps.push(idx);
            }
        }
        if n > 1 {
            for mask in 0..(1usize << n) {
                steps.push(
                    (0..n)
                        .map(|i| if mask >> i & 1 == 1 { 4 } else { 0 })
                        .collect(),
                );
            }
        }
        let offsets = steps
            .iter()
            .map(|idx| idx.iter().map(|&s| STEPS[s as usize] * radius).collect())
            .collect();
        LocalSamples { offsets, steps }
    }

    pub fn len(&self) -> usize {
        self.offsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.offsets.is_empty()
    }

    pub fn offsets(&self) -> impl Iterator<Item = &[f64]> {
        self.offsets.iter().map(Vec::as_slice)
    }

    fn step_indices(&self) -> impl Iterator<Item = &[u8]> {
        self.steps.iter().map(Vec::as_slice)
    }
}

/// Per-coordinate increments `term_i(x_i + s r) - term_i(x_i)` of a
/// separable function, for the five sample steps `s`.
#[derive(Debug, Clone)]
pub struct SeparableTable {
    rows: Vec<[f64; 5]>,
}

impl SeparableTable {
    pub fn new(x: &[f64], radius: f64, term: impl Fn(usize, f64) -> f64) -> Self {
        let rows = x
            .iter()
            .enumerate()
            .map(|(i, &t)| {
                let base = term(i, t);
                let mut row = [0.0; 5];
                for (slot, s) in row.iter_mut().zip(STEPS) {
                    *slot = term(i, t + s * radius) - base;
                }
                row
            })
            .collect();
        SeparableTable { rows }
    }

    fn increment(&self, steps: &[u8]) -> f64 {
        self.rows
            .iter()
            .zip(steps)
            .map(|(row, &s)| row[s as usize])
            .sum()
    }
}

/// Outcome of [`subsolution_certificate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Certificate {
    /// Certified lower bound on `F(D^2 phi)` minus `f_k(x*)`.
    Margin(f64),
    /// `x*_i = 0` for a smooth-block coordinate `i`: `|t|^p` with `p < 2`
    /// cannot be touched from above there, so the condition is vacuous.
    NoTouching { axis: usize },
}

impl Certificate {
    pub fn margin(self) -> Option<f64> {
        match self {
            Certificate::Margin(m) => Some(m),
            Certificate::NoTouching { .. } => None,
        }
    }
}

/// Certified bound `L(x*) - f_k(x*)` with
/// `L = sum_{i<=k, x_i=0} (-pi/2) + sum_{i<=k, x_i!=0} 0 + sum_{i>k} c(x_i)`.
///
/// Analytically this is `sum_{i<=k, x_i != 0} c(x_i) >= 0`.
pub fn subsolution_certificate(fam: &Family, x: &[f64]) -> Certificate {
    assert_eq!(x.len(), fam.n());
    if let Some(axis) = (fam.k()..fam.n()).find(|&i| x[i] == 0.0) {
        return Certificate::NoTouching { axis };
    }
    let mut axis_count: i64 = 0;
    let mut smooth = 0.0;
    for (i, &t) in x.iter().enumerate() {
        if fam.is_kink_coordinate(i) {
            if t == 0.0 {
                axis_count -= 1;
            }
        } else {
            smooth += fam.c(t);
        }
    }
    let bound = axis_count as f64 * FRAC_PI_2 + smooth;
    Certificate::Margin(bound - fam.f_value(x))
}

/// `sum_{i<=k, x_i != 0} c(x_i)`: the exact gap between the certified bound
/// and the phase, and also `F(D^2 v_k(x)) - f_k(x)` off the axes.
pub fn analytic_subsolution_gap(fam: &Family, x: &[f64]) -> f64 {
    x.iter()
        .take(fam.k())
        .filter(|&&t| t != 0.0)
        .map(|&t| fam.c(t))
        .sum()
}

/// A point `t != 0` where `|t|^p / 2 > slope t + curvature t^2 / 2`, which
/// shows that no quadratic touches `|t|^p / 2` from above at `t = 0`.
pub fn no_touching_witness(p: f64, slope: f64, curvature: f64) -> f64 {
    assert!(p > 1.0 && p < 2.0);
    // |t|^(p-2) > curvature once |t| < curvature^(1/(p-2))
    let magnitude = if curvature > 0.0 {
        (0.5 * curvature.powf(1.0 / (p - 2.0))).min(1.0)
    } else {
        1.0
    };
    if slope > 0.0 {
        -magnitude
    } else {
        magnitude
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub check: String,
    pub point: Vec<f64>,
    pub margin: f64,
}

/// Result of probing one point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationRecord {
    pub check: String,
    pub point: Vec<f64>,
    pub trials: usize,
    /// Sampled quadratics confirmed to touch.
    pub touching: usize,
    /// No test function can touch here; the inequality holds vacuously.
    pub vacuous: bool,
    pub min_margin: Option<f64>,
    /// Certified margin from the analytic bound, when one applies.
    pub certificate: Option<f64>,
    pub violations: Vec<Violation>,
}

impl VerificationRecord {
    fn empty(check: &str, x: &[f64], trials: usize) -> Self {
        VerificationRecord {
            check: check.to_string(),
            point: x.to_vec(),
            trials,
            touching: 0,
            vacuous: false,
            min_margin: None,
            certificate: None,
            violations: Vec::new(),
        }
    }

    fn observe(&mut self, check: &str, margin: f64) {
        self.min_margin = Some(self.min_margin.map_or(margin, |m| m.min(margin)));
        if margin < -MARGIN_SLACK {
            self.violations.push(Violation {
                check: check.to_string(),
                point: self.point.clone(),
                margin,
            });
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Term {
    /// `-|t|`
    Kink,
    /// `+|t|^p / 2`
    Power,
}

/// Samples `(gradient, Hessian)` of a quadratic touching
/// `sum_i term_i(x_i)` from above at `x`. Every `Power` coordinate must be
/// non-zero.
///
/// * `Power` coordinates: exact first and second derivatives, plus a
///   curvature surplus that covers the cubic Taylor remainder on the radius.
/// * `Kink` coordinates away from 0: the exact slope, non-negative curvature.
/// * `Kink` coordinates at 0: any slope in `(-1, 1)` and an arbitrary
///   (mostly negative definite) Hessian block.
/// * A random positive semidefinite matrix on top.
fn sample_upper_quadratic<R: Rng>(
    terms: &[Term],
    fam: &Family,
    x: &[f64],
    radius: f64,
    rng: &mut R,
) -> (Vec<f64>, SymMatrix) {
    let n = x.len();
    let p = fam.p();
    let mut gradient = vec![0.0; n];
    let mut hessian = SymMatrix::zeros(n);
    let mut kinks = Vec::new();
    for i in 0..n {
        let t = x[i];
        match (terms[i], t == 0.0) {
            (Term::Power, false) => {
                let a = t.abs();
                gradient[i] = 0.5 * p * a.powf(p - 1.0) * t.signum();
                let third = if a > radius {
                    0.5 * p * (p - 1.0) * (2.0 - p) * (a - radius).powf(p - 3.0)
                } else {
                    1.0 / radius
                };
                let mut curv = fam.coeff() * a.powf(p - 2.0) + third * radius;
                if rng.gen_bool(0.75) {
                    curv += 10f64.powf(rng.gen_range(-3.0..0.5));
                }
                hessian.set(i, i, curv);
            }
            (Term::Power, true) => unreachable!("no quadratic touches |t|^p at 0 from above"),
            (Term::Kink, false) => {
                gradient[i] = -t.signum();
                if rng.gen_bool(0.75) {
                    hessian.set(i, i, 10f64.powf(rng.gen_range(-3.0..1.0)));
                }
            }
            (Term::Kink, true) => {
                gradient[i] = rng.gen_range(-1.0..1.0);
                kinks.push(i);
            }
        }
    }
    if !kinks.is_empty() {
        let spread = 10f64.powf(rng.gen_range(-1.0..1.5));
        let shift = 10f64.powf(rng.gen_range(-1.0..2.5));
        for (a, &i) in kinks.iter().enumerate() {
            for &j in &kinks[a..] {
                let mut h = rng.gen_range(-spread..=spread);
                if i == j {
                    h -= shift;
                }
                hessian.set(i, j, h);
            }
        }
    }
    if rng.gen_bool(0.75) {
        let scale = 10f64.powf(rng.gen_range(-2.0..0.5));
        let b: Vec<f64> = (0..n * n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let psd = SymMatrix::from_fn(n, |i, j| {
            scale * (0..n).map(|c| b[i * n + c] * b[j * n + c]).sum::<f64>()
        });
        hessian = hessian.checked_add(&psd).expect("same dimension");
    }
    (gradient, hessian)
}

fn sub_terms(fam: &Family) -> Vec<Term> {
    (0..fam.n())
        .map(|i| {
            if fam.is_kink_coordinate(i) {
                Term::Kink
            } else {
                Term::Power
            }
        })
        .collect()
}

/// Randomized falsification of the subsolution inequality at `x`:
/// every sampled quadratic `phi` that touches `v_k` from above must satisfy
/// `F(D^2 phi) >= f_k(x) - 1e-9`.
pub fn probe_subsolution(
    fam: &Family,
    x: &[f64],
    trials: usize,
    radius: f64,
    seed: u64,
) -> VerificationRecord {
    let samples = LocalSamples::new(fam.n(), radius);
    probe_subsolution_with(fam, x, trials, radius, seed, &samples)
}

pub(crate) fn probe_subsolution_with(
    fam: &Family,
    x: &[f64],
    trials: usize,
    radius: f64,
    seed: u64,
    samples: &LocalSamples,
) -> VerificationRecord {
    const CHECK: &str = "probe_subsolution";
    let mut record = VerificationRecord::empty(CHECK, x, trials);
    let certificate = subsolution_certificate(fam, x);
    record.certificate = certificate.margin();
    if certificate.margin().is_none() {
        record.vacuous = true;
        return record;
    }
    if trials == 0 {
        return record;
    }
    let terms = sub_terms(fam);
    let value = fam.v(x);
    let phase = fam.f_value(x);
    let table = SeparableTable::new(x, radius, |i, t| fam.v_term(i, t));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let (gradient, hessian) = sample_upper_quadratic(&terms, fam, x, radius, &mut rng);
        let phi = TouchingQuadratic::new(x.to_vec(), value, gradient, hessian, Side::Above);
        if !phi.touches_separable(&table, samples) {
            continue;
        }
        record.touching += 1;
        let f_phi = operator_value(phi.hessian()).expect("finite quadratic");
        record.observe(CHECK, f_phi - phase);
    }
    record
}

/// Supersolution check for `u_k` at `x` through the reflection
/// `phi(y) = -psi(J y)`:
///
/// 1. sample quadratics `psi` touching `u_k` from below at `x`;
/// 2. confirm `phi` touches `v_{n-k}` from above at `J x`, with
///    `D^2 phi = -J D^2 psi J` exactly;
/// 3. confirm `F(D^2 psi) = -F(D^2 phi)` (oddness and rotation invariance)
///    and `F(D^2 psi) <= f_k(x) + 1e-9`.
///
/// The record's certificate is the subsolution certificate of `v_{n-k}` at
/// `J x`, which bounds `f_k(x) - F(D^2 psi)` from below.
pub fn supersolution_by_symmetry(
    fam: &Family,
    x: &[f64],
    trials: usize,
    radius: f64,
    seed: u64,
) -> VerificationRecord {
    let samples = LocalSamples::new(fam.n(), radius);
    supersolution_by_symmetry_with(fam, x, trials, radius, seed, &samples)
}

pub(crate) fn supersolution_by_symmetry_with(
    fam: &Family,
    x: &[f64],
    trials: usize,
    radius: f64,
    seed: u64,
    samples: &LocalSamples,
) -> VerificationRecord {
    const CHECK: &str = "supersolution_by_symmetry";
    let n = fam.n();
    let mut record = VerificationRecord::empty(CHECK, x, trials);
    let mirror = fam.mirror();
    let jx: Vec<f64> = x.iter().rev().copied().collect();
    let certificate = subsolution_certificate(&mirror, &jx);
    record.certificate = certificate.margin();
    // -u_k has a |t|^p/2 term in every coordinate i <= k; touching from below
    // at x_i = 0 is impossible there.
    if (0..fam.k()).any(|i| x[i] == 0.0) {
        record.vacuous = true;
        return record;
    }
    if trials == 0 {
        return record;
    }
    let terms: Vec<Term> = (0..n)
        .map(|i| {
            if fam.is_kink_coordinate(i) {
                Term::Power
            } else {
                Term::Kink
            }
        })
        .collect();
    let value = fam.u(x);
    let phase = fam.f_value(x);
    let j = exchange_matrix(n);
    let u_table = SeparableTable::new(x, radius, |i, t| fam.u_term(i, t));
    let v_table = SeparableTable::new(&jx, radius, |i, t| mirror.v_term(i, t));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let (g, h) = sample_upper_quadratic(&terms, fam, x, radius, &mut rng);
        let gradient = g.iter().map(|a| -a).collect();
        let psi = TouchingQuadratic::new(x.to_vec(), value, gradient, -h, Side::Below);
        if !psi.touches_separable(&u_table, samples) {
            continue;
        }
        record.touching += 1;

        let phi = psi.mirrored();
        let slack = phi.domination_slack(&v_table, samples);
        if slack < -TOUCH_TOL {
            record.observe("mirror_touching", slack.min(-MARGIN_SLACK * 2.0));
            continue;
        }
        let transported = conjugate(&-psi.hessian(), &j).expect("same dimension");
        if transported != *phi.hessian() {
            record.observe(
                "hessian_transport",
                -transported.max_abs_diff(phi.hessian()),
            );
        }
        let f_psi = operator_value(psi.hessian()).expect("finite quadratic");
        let f_phi = operator_value(phi.hessian()).expect("finite quadratic");
        let odd_defect = (f_psi + f_phi).abs();
        if odd_defect > MARGIN_SLACK {
            record.observe("oddness", -odd_defect);
        }
        record.observe(CHECK, phase - f_psi);
    }
    record
}

/// Derives an independent stream seed for sample `index` of a sweep.
pub fn point_seed(seed: u64, index: u64) -> u64 {
    // splitmix64 finalizer
    let mut z = seed ^ index.wrapping_add(1).wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}
