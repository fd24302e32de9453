//! Small dense symmetric matrices.
//!
//! Eigenvalues come from the cyclic Jacobi method, which is accurate to a few
//! ulps of the matrix norm at the sizes used here (n <= 16). Matrices are
//! stored as a packed upper triangle so symmetry holds by construction.

use std::fmt::Write as _;
use std::ops::Neg;

use rand::Rng;

use crate::error::{Error, Result};

/// Default slack for [`loewner_leq`].
pub const DEFAULT_LOEWNER_TOL: f64 = 1e-10;

/// Maximum number of Jacobi sweeps before giving up.
pub const MAX_SWEEPS: usize = 30;

/// Relative off-diagonal norm at which the Jacobi iteration stops.
pub const JACOBI_REL_TOL: f64 = 1e-13;

const ORTHOGONALITY_TOL: f64 = 1e-12;
const SYMMETRY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    n: usize,
    upper: Vec<f64>,
}

#[inline]
fn packed_index(n: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    // row i starts after sum_{r<i} (n - r) entries
    i * (2 * n - i + 1) / 2 + (j - i)
}

impl SymMatrix {
    pub fn zeros(n: usize) -> Self {
        assert!(n >= 1, "dimension must be at least 1");
        SymMatrix {
            n,
            upper: vec![0.0; n * (n + 1) / 2],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { 1.0 } else { 0.0 })
    }

    pub fn diag(d: &[f64]) -> Self {
        Self::from_fn(d.len(), |i, j| if i == j { d[i] } else { 0.0 })
    }

    /// Builds a matrix from `f(i, j)` evaluated on the upper triangle (`i <= j`).
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in i..n {
                let idx = packed_index(n, i, j);
                m.upper[idx] = f(i, j);
            }
        }
        m
    }

    /// Builds a matrix from full rows. Rows must be square, finite and
    /// symmetric to within 1e-12; the two triangles are averaged.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidInput("empty matrix".into()));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidInput(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            if let Some(j) = row.iter().position(|v| !v.is_finite()) {
                return Err(Error::InvalidInput(format!(
                    "non-finite entry at ({i}, {j})"
                )));
            }
        }
        for (i, row) in rows.iter().enumerate() {
            for j in i + 1..n {
                let skew = (row[j] - rows[j][i]).abs();
                if skew > SYMMETRY_TOL {
                    return Err(Error::InvalidInput(format!(
                        "asymmetric entry at ({i}, {j}): |a_ij - a_ji| = {skew:e}"
                    )));
                }
            }
        }
        Ok(Self::from_fn(n, |i, j| 0.5 * (rows[i][j] + rows[j][i])))
    }

    /// Parses a full square matrix from comma-separated rows.
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let row = line
                .split(',')
                .map(|s| {
                    s.trim().parse::<f64>().map_err(|e| {
                        Error::InvalidInput(format!("line {}: {s:?}: {e}", lineno + 1))
                    })
                })
                .collect::<Result<Vec<f64>>>()?;
            rows.push(row);
        }
        Self::from_rows(&rows)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for i in 0..self.n {
            for j in 0..self.n {
                if j > 0 {
                    out.push(',');
                }
                write!(out, "{}", self.get(i, j)).unwrap();
            }
            out.push('\n');
        }
        out
    }

    /// Outer product `v v^T`.
    pub fn outer(v: &[f64]) -> Self {
        Self::from_fn(v.len(), |i, j| v[i] * v[j])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.upper[packed_index(self.n, i, j)]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        let idx = packed_index(self.n, i, j);
        self.upper[idx] = value;
    }

    pub fn is_finite(&self) -> bool {
        self.upper.iter().all(|v| v.is_finite())
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                let a = self.get(i, j);
                s += a * a;
            }
        }
        s.sqrt()
    }

    /// `X + tau I`.
    pub fn shift(&self, tau: f64) -> Self {
        let mut m = self.clone();
        for i in 0..self.n {
            let idx = packed_index(self.n, i, i);
            m.upper[idx] += tau;
        }
        m
    }

    pub fn scale(&self, s: f64) -> Self {
        SymMatrix {
            n: self.n,
            upper: self.upper.iter().map(|a| a * s).collect(),
        }
    }

    pub fn checked_add(&self, other: &SymMatrix) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn checked_sub(&self, other: &SymMatrix) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &SymMatrix, f: impl Fn(f64, f64) -> f64) -> Result<Self> {
        check_dims(self.n, other.n)?;
        Ok(SymMatrix {
            n: self.n,
            upper: self
                .upper
                .iter()
                .zip(&other.upper)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    /// Full row-major copy.
    pub fn to_dense(&self) -> Vec<f64> {
        let n = self.n;
        let mut d = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                d[i * n + j] = self.get(i, j);
            }
        }
        d
    }

    /// Largest absolute entry difference.
    pub fn max_abs_diff(&self, other: &SymMatrix) -> f64 {
        assert_eq!(self.n, other.n);
        self.upper
            .iter()
            .zip(&other.upper)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// Random symmetric matrix with entries uniform in `[-scale, scale]`.
    pub fn random<R: Rng + ?Sized>(n: usize, scale: f64, rng: &mut R) -> Self {
        Self::from_fn(n, |_, _| rng.gen_range(-scale..=scale))
    }
}

impl Neg for &SymMatrix {
    type Output = SymMatrix;

    fn neg(self) -> SymMatrix {
        self.scale(-1.0)
    }
}

impl Neg for SymMatrix {
    type Output = SymMatrix;

    fn neg(self) -> SymMatrix {
        -&self
    }
}

fn check_dims(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

/// Eigenvalues sorted ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum(Vec<f64>);

impl Spectrum {
    /// Sorts `values` ascending.
    pub fn from_unsorted(mut values: Vec<f64>) -> Self {
        values.sort_by(f64::total_cmp);
        Spectrum(values)
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Smallest eigenvalue.
    pub fn min(&self) -> f64 {
        self.0[0]
    }

    /// Largest eigenvalue.
    pub fn max(&self) -> f64 {
        self.0[self.0.len() - 1]
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }
}

/// Dense orthogonal matrix, validated on construction.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthMatrix {
    n: usize,
    data: Vec<f64>,
}

impl OrthMatrix {
    /// Row-major `data`; fails unless `Q^T Q = I` to 1e-12.
    pub fn new(n: usize, data: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("dimension must be at least 1".into()));
        }
        check_dims(n * n, data.len())?;
        if data.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("non-finite entry".into()));
        }
        let q = OrthMatrix { n, data };
        let defect = q.orthogonality_defect();
        if defect > ORTHOGONALITY_TOL {
            return Err(Error::NotOrthogonal(defect));
        }
        Ok(q)
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            data[i * n + i] = 1.0;
        }
        OrthMatrix { n, data }
    }

    /// The reversal permutation: ones on the anti-diagonal.
    pub fn exchange(n: usize) -> Self {
        assert!(n >= 1, "dimension must be at least 1");
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            data[i * n + (n - 1 - i)] = 1.0;
        }
        OrthMatrix { n, data }
    }

    /// Rotation by `angle` in the `(p, q)` coordinate plane.
    pub fn givens(n: usize, p: usize, q: usize, angle: f64) -> Self {
        assert!(p < n && q < n && p != q);
        let mut g = Self::identity(n);
        let (s, c) = angle.sin_cos();
        g.data[p * n + p] = c;
        g.data[q * n + q] = c;
        g.data[p * n + q] = -s;
        g.data[q * n + p] = s;
        g
    }

    /// Product of Givens rotations over every coordinate pair, each with a
    /// random angle, followed by a random reflection of the first axis.
    pub fn random_givens<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut q = Self::identity(n);
        for p in 0..n {
            for r in p + 1..n {
                let angle = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
                q = q.compose(&Self::givens(n, p, r, angle));
            }
        }
        if rng.gen_bool(0.5) {
            for j in 0..n {
                q.data[j] = -q.data[j];
            }
        }
        q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    /// Row-major entries.
    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    /// Matrix product `self * other`.
    pub fn compose(&self, other: &OrthMatrix) -> Self {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == 0.0 {
                    continue;
                }
                for j in 0..n {
                    data[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        OrthMatrix { n, data }
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                data[j * n + i] = self.data[i * n + j];
            }
        }
        OrthMatrix { n, data }
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.n);
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.data[i * self.n + j] * x[j]).sum())
            .collect()
    }

    /// `max |Q^T Q - I|` over entries.
    pub fn orthogonality_defect(&self) -> f64 {
        let n = self.n;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let dot: f64 = (0..n)
                    .map(|k| self.data[k * n + i] * self.data[k * n + j])
                    .sum();
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).abs());
            }
        }
        worst
    }
}

/// The `n x n` exchange matrix `J`, `J_{i, n+1-i} = 1`.
pub fn exchange_matrix(n: usize) -> OrthMatrix {
    OrthMatrix::exchange(n)
}

/// Cyclic Jacobi on a dense row-major copy. Returns the rotated diagonal and,
/// when requested, the accumulated rotation (eigenvectors in columns).
fn jacobi(x: &SymMatrix, want_vectors: bool) -> Result<(Vec<f64>, Option<Vec<f64>>)> {
    if !x.is_finite() {
        return Err(Error::InvalidInput("matrix has non-finite entries".into()));
    }
    let n = x.n;
    let mut a = x.to_dense();
    let mut v = want_vectors.then(|| OrthMatrix::identity(n).data);
    let threshold = JACOBI_REL_TOL * x.frobenius_norm();

    let off_norm = |a: &[f64]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                s += a[i * n + j] * a[i * n + j];
            }
        }
        (2.0 * s).sqrt()
    };

    let mut sweeps = 0;
    loop {
        let off = off_norm(&a);
        if off <= threshold {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                off_norm: off,
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let arp = a[r * n + p];
                    let arq = a[r * n + q];
                    let new_rp = c * arp - s * arq;
                    let new_rq = s * arp + c * arq;
                    a[r * n + p] = new_rp;
                    a[p * n + r] = new_rp;
                    a[r * n + q] = new_rq;
                    a[q * n + r] = new_rq;
                }
                if let Some(v) = v.as_mut() {
                    for r in 0..n {
                        let vrp = v[r * n + p];
                        let vrq = v[r * n + q];
                        v[r * n + p] = c * vrp - s * vrq;
                        v[r * n + q] = s * vrp + c * vrq;
                    }
                }
            }
        }
    }
    let diag = (0..n).map(|i| a[i * n + i]).collect();
    Ok((diag, v))
}

/// All eigenvalues of `x`, ascending.
pub fn eigenvalues(x: &SymMatrix) -> Result<Spectrum> {
    let (diag, _) = jacobi(x, false)?;
    Ok(Spectrum::from_unsorted(diag))
}

/// Eigenvalues (ascending) with the matching orthonormal eigenvectors as the
/// columns of the returned matrix, so that `x = V diag(lambda) V^T`.
pub fn eigen_decomposition(x: &SymMatrix) -> Result<(Spectrum, OrthMatrix)> {
    let (diag, v) = jacobi(x, true)?;
    let v = v.expect("vectors requested");
    let n = x.n;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| diag[i].total_cmp(&diag[j]));
    let values = order.iter().map(|&i| diag[i]).collect();
    let mut data = vec![0.0; n * n];
    for (new_col, &old_col) in order.iter().enumerate() {
        for r in 0..n {
            data[r * n + new_col] = v[r * n + old_col];
        }
    }
    Ok((Spectrum(values), OrthMatrix { n, data }))
}

/// `Q X Q^T`, symmetrized.
pub fn conjugate(x: &SymMatrix, q: &OrthMatrix) -> Result<SymMatrix> {
    check_dims(x.n, q.n)?;
    let n = x.n;
    // tmp = Q X
    let mut tmp = vec![0.0; n * n];
    for i in 0..n {
        for k in 0..n {
            let qik = q.get(i, k);
            if qik == 0.0 {
                continue;
            }
            for j in 0..n {
                tmp[i * n + j] += qik * x.get(k, j);
            }
        }
    }
    // (Q X) Q^T
    let mut full = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            full[i * n + j] = (0..n).map(|k| tmp[i * n + k] * q.get(j, k)).sum();
        }
    }
    Ok(SymMatrix::from_fn(n, |i, j| {
        0.5 * (full[i * n + j] + full[j * n + i])
    }))
}

/// Loewner order test: `x <= y` iff `lambda_1(y - x) >= -tol`.
pub fn loewner_leq(x: &SymMatrix, y: &SymMatrix, tol: f64) -> Result<bool> {
    let gap = y.checked_sub(x)?;
    Ok(eigenvalues(&gap)?.min() >= -tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn dense_det(a: &[f64], n: usize) -> f64 {
        // Gaussian elimination with partial pivoting; test-only oracle.
        let mut m = a.to_vec();
        let mut det = 1.0;
        for c in 0..n {
            let p = (c..n)
                .max_by(|&i, &j| m[i * n + c].abs().total_cmp(&m[j * n + c].abs()))
                .unwrap();
            if m[p * n + c] == 0.0 {
                return 0.0;
            }
            if p != c {
                for j in 0..n {
                    m.swap(p * n + j, c * n + j);
                }
                det = -det;
            }
            det *= m[c * n + c];
            for r in c + 1..n {
                let f = m[r * n + c] / m[c * n + c];
                for j in c..n {
                    m[r * n + j] -= f * m[c * n + j];
                }
            }
        }
        det
    }

    #[test]
    fn packed_layout_is_a_bijection() {
        for n in 1..7 {
            let mut seen = vec![false; n * (n + 1) / 2];
            for i in 0..n {
                for j in i..n {
                    let idx = packed_index(n, i, j);
                    assert!(!seen[idx]);
                    seen[idx] = true;
                    assert_eq!(idx, packed_index(n, j, i));
                }
            }
            assert!(seen.iter().all(|&s| s));
        }
    }

    #[test]
    fn diagonal_eigenvalues() {
        let s = eigenvalues(&SymMatrix::diag(&[2.0, -1.0, 5.0])).unwrap();
        assert_eq!(s.values(), &[-1.0, 2.0, 5.0]);
    }

    #[test]
    fn exchange_two_by_two_eigenvalues() {
        let x = SymMatrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let s = eigenvalues(&x).unwrap();
        assert!((s.values()[0] + 1.0).abs() < 1e-15);
        assert!((s.values()[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn trace_and_determinant_of_random_four_by_four() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let x = SymMatrix::random(4, 3.0, &mut rng);
            let s = eigenvalues(&x).unwrap();
            let sum: f64 = s.values().iter().sum();
            let prod: f64 = s.values().iter().product();
            assert!((sum - x.trace()).abs() < 1e-9);
            assert!((prod - dense_det(&x.to_dense(), 4)).abs() < 1e-9);
        }
    }

    #[test]
    fn jacobi_meets_off_diagonal_threshold() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 1..=16 {
            let x = SymMatrix::random(n, 1.0, &mut rng);
            let (diag, v) = jacobi(&x, true).unwrap();
            let v = OrthMatrix {
                n,
                data: v.unwrap(),
            };
            // V^T X V should be diagonal with the returned entries.
            let rotated = conjugate(&x, &v.transpose()).unwrap();
            let mut off = 0.0;
            for (i, &d) in diag.iter().enumerate() {
                for j in 0..n {
                    if i != j {
                        off += rotated.get(i, j).powi(2);
                    }
                }
                assert!((rotated.get(i, i) - d).abs() < 1e-12);
            }
            assert!(off.sqrt() < 1e-12 * x.frobenius_norm().max(1.0), "n={n}");
        }
    }

    #[test]
    fn non_finite_input_is_rejected() {
        let mut x = SymMatrix::zeros(2);
        x.set(0, 1, f64::NAN);
        assert!(matches!(eigenvalues(&x), Err(Error::InvalidInput(_))));
        assert!(SymMatrix::from_rows(&[vec![f64::INFINITY]]).is_err());
    }

    #[test]
    fn zero_matrix_converges_immediately() {
        let s = eigenvalues(&SymMatrix::zeros(5)).unwrap();
        assert!(s.values().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn exchange_matrix_layout() {
        assert_eq!(exchange_matrix(1).as_slice(), &[1.0]);
        assert_eq!(exchange_matrix(2).as_slice(), &[0.0, 1.0, 1.0, 0.0]);
        for n in 1..10 {
            let j = exchange_matrix(n);
            for r in 0..n {
                for c in 0..n {
                    let expected = if c == n - 1 - r { 1.0 } else { 0.0 };
                    assert_eq!(j.get(r, c), expected);
                    assert_eq!(j.get(r, c), j.get(c, r));
                }
            }
            assert_eq!(j.compose(&j), OrthMatrix::identity(n));
            assert_eq!(j.orthogonality_defect(), 0.0);
        }
    }

    #[test]
    fn conjugation_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let x = SymMatrix::random(3, 2.0, &mut rng);
        assert_eq!(conjugate(&x, &OrthMatrix::identity(3)).unwrap(), x);

        let d = SymMatrix::diag(&[1.5, -4.0]);
        assert_eq!(
            conjugate(&d, &exchange_matrix(2)).unwrap(),
            SymMatrix::diag(&[-4.0, 1.5])
        );

        for n in 1..=6 {
            let x = SymMatrix::random(n, 2.0, &mut rng);
            let q = OrthMatrix::random_givens(n, &mut rng);
            let a = eigenvalues(&x).unwrap();
            let b = eigenvalues(&conjugate(&x, &q).unwrap()).unwrap();
            for (u, v) in a.values().iter().zip(b.values()) {
                assert!((u - v).abs() < 1e-9);
            }
        }
        assert!(matches!(
            conjugate(&x, &OrthMatrix::identity(2)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn loewner_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let x = SymMatrix::random(4, 1.0, &mut rng);
        assert!(loewner_leq(&x, &x, DEFAULT_LOEWNER_TOL).unwrap());
        assert!(loewner_leq(
            &SymMatrix::diag(&[0.0, 0.0]),
            &SymMatrix::diag(&[1.0, 2.0]),
            DEFAULT_LOEWNER_TOL
        )
        .unwrap());
        for _ in 0..20 {
            let v: Vec<f64> = (0..4).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let y = x.checked_add(&SymMatrix::outer(&v)).unwrap();
            assert!(loewner_leq(&x, &y, DEFAULT_LOEWNER_TOL).unwrap());
        }
        assert!(!loewner_leq(&SymMatrix::identity(2), &SymMatrix::zeros(2), 1e-10).unwrap());
        assert!(loewner_leq(&SymMatrix::zeros(2), &SymMatrix::zeros(3), 1e-10).is_err());
    }

    #[test]
    fn orthogonality_is_checked() {
        assert!(matches!(
            OrthMatrix::new(2, vec![1.0, 0.0, 0.0, 2.0]),
            Err(Error::NotOrthogonal(_))
        ));
        let g = OrthMatrix::givens(3, 0, 2, 0.3);
        assert!(OrthMatrix::new(3, g.as_slice().to_vec()).is_ok());
    }

    #[test]
    fn csv_round_trip_and_asymmetry() {
        let x = SymMatrix::from_csv("1, 2\n2, -3.5\n").unwrap();
        assert_eq!(x.get(0, 1), 2.0);
        assert_eq!(SymMatrix::from_csv(&x.to_csv()).unwrap(), x);
        assert!(SymMatrix::from_csv("1,2\n2.001,1").is_err());
        assert!(SymMatrix::from_csv("1,2,3\n2,1,0").is_err());
        assert!(SymMatrix::from_csv("1,x\nx,1").is_err());
    }
}
