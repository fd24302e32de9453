//! Monotone wide-stencil finite differences for `F(D^2 w) = f` on the square
//! `[-1, 1]^2` with Dirichlet data.
//!
//! In two dimensions the eigenvalues of a symmetric matrix are the minimum
//! and maximum of its Rayleigh quotient over unit directions. The scheme
//! replaces them by the extremes of centred second differences over a finite
//! set of lattice directions:
//!
//! ```text
//! F_h(w)(x) = arctan(min_e D_e w(x)) + arctan(max_e D_e w(x)),
//! D_e w(x)  = (w(x + h e) - 2 w(x) + w(x - h e)) / (h |e|)^2.
//! ```
//!
//! `F_h` is non-decreasing in every neighbour value and non-increasing in the
//! centre value, so the damped iteration `w <- w + rho (F_h(w) - f)` is
//! monotone for `rho <= h^2 / 4`. Directions that do not fit next to the
//! boundary are dropped in favour of the axis stencil.

use std::fmt::Write as _;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::family::{DomainBox, Family};

/// Consecutive residual increases tolerated before declaring divergence.
pub const DIVERGENCE_WINDOW: usize = 100;

/// Nodal values on a uniform `m x m` grid over `[-1, 1]^2`.
///
/// Node `(i, j)` sits at `(x_i, y_j)`; storage is row-major with rows indexed
/// by `j`.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid2D {
    m: usize,
    values: Vec<f64>,
}

impl Grid2D {
    /// Zero grid. `m` must be odd (so the origin is a node) and at least 5.
    pub fn new(m: usize) -> Result<Self> {
        if m < 5 || m.is_multiple_of(2) {
            return Err(Error::InvalidInput(format!(
                "grid size m = {m} must be odd and at least 5"
            )));
        }
        Ok(Grid2D {
            m,
            values: vec![0.0; m * m],
        })
    }

    pub fn from_fn(m: usize, mut f: impl FnMut(f64, f64) -> f64) -> Result<Self> {
        let mut g = Self::new(m)?;
        for j in 0..m {
            for i in 0..m {
                g.values[j * m + i] = f(g.coord(i), g.coord(j));
            }
        }
        if g.values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("non-finite grid value".into()));
        }
        Ok(g)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn h(&self) -> f64 {
        2.0 / (self.m - 1) as f64
    }

    pub fn coord(&self, i: usize) -> f64 {
        DomainBox::grid_coordinate(self.m, i)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[j * self.m + i]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.values[j * self.m + i] = v;
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn is_boundary(&self, i: usize, j: usize) -> bool {
        i == 0 || j == 0 || i == self.m - 1 || j == self.m - 1
    }

    /// Index of the centre node on each axis.
    pub fn center(&self) -> usize {
        (self.m - 1) / 2
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |a, v| a.max(v.abs()))
    }

    /// `max |self - other|`.
    pub fn max_abs_diff(&self, other: &Grid2D) -> f64 {
        assert_eq!(self.m, other.m);
        self.values
            .iter()
            .zip(&other.values)
            .fold(0.0, |a, (x, y)| a.max((x - y).abs()))
    }

    /// `max_nodes |self - exact|`.
    pub fn sup_error(&self, exact: impl Fn(f64, f64) -> f64) -> f64 {
        let mut worst = 0.0f64;
        for j in 0..self.m {
            for i in 0..self.m {
                worst = worst.max((self.get(i, j) - exact(self.coord(i), self.coord(j))).abs());
            }
        }
        worst
    }

    /// Writes `m` on the first line, then one line per row `j` with the
    /// values for `i = 0..m`, comma-separated.
    pub fn to_csv(&self) -> String {
        let mut out = format!("{}\n", self.m);
        for j in 0..self.m {
            for i in 0..self.m {
                if i > 0 {
                    out.push(',');
                }
                write!(out, "{:?}", self.get(i, j)).unwrap();
            }
            out.push('\n');
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::InvalidInput("empty grid file".into()))?;
        let m: usize = header
            .trim()
            .parse()
            .map_err(|e| Error::InvalidInput(format!("grid header {header:?}: {e}")))?;
        let mut grid = Self::new(m)?;
        let mut rows = 0;
        for (j, line) in lines.enumerate() {
            if j >= m {
                return Err(Error::InvalidInput("too many rows".into()));
            }
            let row: Vec<f64> = line
                .split(',')
                .map(|s| s.trim().parse::<f64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::InvalidInput(format!("row {j}: {e}")))?;
            if row.len() != m {
                return Err(Error::InvalidInput(format!(
                    "row {j} has {} values, expected {m}",
                    row.len()
                )));
            }
            grid.values[j * m..(j + 1) * m].copy_from_slice(&row);
            rows += 1;
        }
        if rows != m {
            return Err(Error::InvalidInput(format!(
                "expected {m} rows, found {rows}"
            )));
        }
        Ok(grid)
    }
}

/// Lattice directions for second differences.
#[derive(Debug, Clone, PartialEq)]
pub struct StencilSet {
    directions: Vec<(i32, i32)>,
    lengths_sq: Vec<f64>,
}

impl StencilSet {
    /// Requires the two axis directions and no pair of parallel directions.
    pub fn new(directions: Vec<(i32, i32)>) -> Result<Self> {
        if !directions.contains(&(1, 0)) || !directions.contains(&(0, 1)) {
            return Err(Error::InvalidInput(
                "stencil must contain (1, 0) and (0, 1)".into(),
            ));
        }
        for (a, &(x1, y1)) in directions.iter().enumerate() {
            for &(x2, y2) in &directions[a + 1..] {
                if x1 * y2 - x2 * y1 == 0 {
                    return Err(Error::InvalidInput(format!(
                        "directions ({x1}, {y1}) and ({x2}, {y2}) are parallel"
                    )));
                }
            }
        }
        let lengths_sq = directions
            .iter()
            .map(|&(x, y)| (x * x + y * y) as f64)
            .collect();
        Ok(StencilSet {
            directions,
            lengths_sq,
        })
    }

    /// Axes, diagonals and knight moves.
    pub fn wide() -> Self {
        Self::new(vec![
            (1, 0),
            (0, 1),
            (1, 1),
            (1, -1),
            (2, 1),
            (1, 2),
            (2, -1),
            (1, -2),
        ])
        .expect("valid default stencil")
    }

    pub fn axes() -> Self {
        Self::new(vec![(1, 0), (0, 1)]).expect("valid axis stencil")
    }

    pub fn directions(&self) -> &[(i32, i32)] {
        &self.directions
    }

    /// Euclidean lengths `|e|`.
    pub fn lengths(&self) -> Vec<f64> {
        self.lengths_sq.iter().map(|l| l.sqrt()).collect()
    }

    /// Largest coordinate offset of any direction.
    pub fn reach(&self) -> usize {
        self.directions
            .iter()
            .map(|&(x, y)| x.unsigned_abs().max(y.unsigned_abs()) as usize)
            .max()
            .unwrap_or(1)
    }
}

pub type Field = Box<dyn Fn(f64, f64) -> f64 + Send + Sync>;

/// A Dirichlet problem `F(D^2 w) = f` in the square, `w = g` on the boundary
/// and at any pinned interior nodes.
pub struct Problem2D {
    phase: Field,
    boundary: Field,
    exact: Option<Field>,
    pinned: Vec<(f64, f64)>,
}

impl Problem2D {
    pub fn new(
        phase: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
        boundary: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Problem2D {
            phase: Box::new(phase),
            boundary: Box::new(boundary),
            exact: None,
            pinned: Vec::new(),
        }
    }

    pub fn with_exact(mut self, exact: impl Fn(f64, f64) -> f64 + Send + Sync + 'static) -> Self {
        self.exact = Some(Box::new(exact));
        self
    }

    /// Holds `w = g` at the node nearest to `(x, y)` instead of solving there.
    pub fn with_pinned(mut self, x: f64, y: f64) -> Self {
        self.pinned.push((x, y));
        self
    }

    pub fn phase(&self, x: f64, y: f64) -> f64 {
        (self.phase)(x, y)
    }

    pub fn boundary(&self, x: f64, y: f64) -> f64 {
        (self.boundary)(x, y)
    }

    pub fn exact(&self) -> Option<&(dyn Fn(f64, f64) -> f64 + Send + Sync)> {
        self.exact.as_deref()
    }

    /// `w = |x|^(3/2)` with the phase of its Hessian,
    /// `f(r) = arctan(3/4 r^(-1/2)) + arctan(3/2 r^(-1/2))`, extended by `pi`
    /// at the origin. The origin is pinned: `F_h < pi` everywhere, so the
    /// equation cannot be met there.
    pub fn radial() -> Self {
        fn w(x: f64, y: f64) -> f64 {
            x.hypot(y).powf(1.5)
        }
        Problem2D::new(
            |x, y| {
                let r = x.hypot(y);
                if r == 0.0 {
                    std::f64::consts::PI
                } else {
                    let s = r.sqrt();
                    (0.75 / s).atan() + (1.5 / s).atan()
                }
            },
            w,
        )
        .with_exact(w)
        .with_pinned(0.0, 0.0)
    }

    /// `f = theta`, with data and exact solution the quadratic
    /// `(a x^2 + b y^2) / 2` where `arctan a + arctan b = theta`. The
    /// eigenvectors are the axes, so the quadratic solves the discrete
    /// problem exactly.
    pub fn constant(theta: f64) -> Result<Self> {
        if theta.is_nan() || theta.abs() >= std::f64::consts::PI {
            return Err(Error::InvalidInput(format!(
                "constant phase {theta} outside (-pi, pi)"
            )));
        }
        let half = 0.5 * theta;
        let split = 0.25f64.min(0.5 * (std::f64::consts::FRAC_PI_2 - half.abs()));
        let a = (half + split).tan();
        let b = (half - split).tan();
        let w = move |x: f64, y: f64| 0.5 * (a * x * x + b * y * y);
        Ok(Problem2D::new(move |_, _| theta, w).with_exact(w))
    }

    /// `f = 0` with affine data `a + b x + c y`.
    pub fn affine(a: f64, b: f64, c: f64) -> Self {
        let w = move |x: f64, y: f64| a + b * x + c * y;
        Problem2D::new(|_, _| 0.0, w).with_exact(w)
    }

    /// The two-dimensional family phase `f_k` with boundary data `u_k`.
    /// The phase takes a special value at the origin, so no well-posedness
    /// is implied.
    pub fn counterexample(k: usize) -> Result<Self> {
        let fam = Family::standard(2, k)?;
        Ok(Problem2D::new(
            move |x, y| fam.f_value(&[x, y]),
            move |x, y| fam.u(&[x, y]),
        ))
    }

    fn pinned_nodes(&self, m: usize) -> Vec<(usize, usize)> {
        let snap = |t: f64| {
            (((t + 1.0) * 0.5 * (m - 1) as f64).round() as isize).clamp(0, m as isize - 1) as usize
        };
        self.pinned
            .iter()
            .map(|&(x, y)| (snap(x), snap(y)))
            .collect()
    }
}

/// Which nodes are solved for, and with which stencil.
#[derive(Clone, Copy, PartialEq, Eq)]
enum NodeKind {
    Fixed,
    Full,
    Axis,
}

struct Layout {
    m: usize,
    kinds: Vec<NodeKind>,
}

impl Layout {
    fn new(m: usize, stencil: &StencilSet, pinned: &[(usize, usize)]) -> Self {
        let reach = stencil.reach();
        let mut kinds = vec![NodeKind::Fixed; m * m];
        for j in 1..m - 1 {
            for i in 1..m - 1 {
                let fits = i >= reach && j >= reach && i + reach < m && j + reach < m;
                kinds[j * m + i] = if fits { NodeKind::Full } else { NodeKind::Axis };
            }
        }
        for &(i, j) in pinned {
            kinds[j * m + i] = NodeKind::Fixed;
        }
        Layout { m, kinds }
    }
}

#[inline]
fn extremes_at(
    values: &[f64],
    m: usize,
    h2: f64,
    i: usize,
    j: usize,
    dirs: &[(i32, i32)],
    lengths_sq: &[f64],
) -> (f64, f64) {
    let c = values[j * m + i];
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for (&(dx, dy), &l2) in dirs.iter().zip(lengths_sq) {
        let ip = (i as isize + dx as isize) as usize;
        let jp = (j as isize + dy as isize) as usize;
        let im = (i as isize - dx as isize) as usize;
        let jm = (j as isize - dy as isize) as usize;
        let d = (values[jp * m + ip] + values[jm * m + im] - 2.0 * c) / (h2 * l2);
        lo = lo.min(d);
        hi = hi.max(d);
    }
    (lo, hi)
}

/// Extreme centred second differences `(min_e D_e w, max_e D_e w)` at an
/// interior node. Nodes too close to the boundary for the full stencil use
/// the axis directions only.
pub fn hessian_extremes(
    grid: &Grid2D,
    node: (usize, usize),
    stencil: &StencilSet,
) -> Result<(f64, f64)> {
    let m = grid.m;
    let (i, j) = node;
    if i == 0 || j == 0 || i >= m - 1 || j >= m - 1 {
        return Err(Error::InvalidInput(format!(
            "node ({i}, {j}) is not interior to an {m} x {m} grid"
        )));
    }
    let reach = stencil.reach();
    let h = grid.h();
    let axes = StencilSet::axes();
    let s = if i >= reach && j >= reach && i + reach < m && j + reach < m {
        stencil
    } else {
        &axes
    };
    Ok(extremes_at(
        &grid.values,
        m,
        h * h,
        i,
        j,
        &s.directions,
        &s.lengths_sq,
    ))
}

/// `F_h(w)` at an interior node.
pub fn discrete_phase(grid: &Grid2D, node: (usize, usize), stencil: &StencilSet) -> Result<f64> {
    let (lo, hi) = hessian_extremes(grid, node, stencil)?;
    Ok(lo.atan() + hi.atan())
}

fn phase_grid(prob: &Problem2D, m: usize) -> Result<Grid2D> {
    let f = Grid2D::from_fn(m, |x, y| prob.phase(x, y))?;
    let limit = std::f64::consts::PI * (1.0 + 4.0 * f64::EPSILON);
    if f.values.iter().any(|v| v.abs() > limit) {
        return Err(Error::InvalidInput("phase leaves [-pi, pi]".into()));
    }
    Ok(f)
}

struct Kernel<'a> {
    layout: Layout,
    phase: Grid2D,
    wide: &'a StencilSet,
    axes: StencilSet,
    h2: f64,
}

impl<'a> Kernel<'a> {
    fn new(prob: &Problem2D, m: usize, stencil: &'a StencilSet) -> Result<Self> {
        let h = 2.0 / (m - 1) as f64;
        Ok(Kernel {
            layout: Layout::new(m, stencil, &prob.pinned_nodes(m)),
            phase: phase_grid(prob, m)?,
            wide: stencil,
            axes: StencilSet::axes(),
            h2: h * h,
        })
    }

    /// Writes the residual into `out` and returns its sup-norm.
    fn residual_into(&self, values: &[f64], out: &mut [f64]) -> f64 {
        let m = self.layout.m;
        out.par_chunks_mut(m)
            .enumerate()
            .map(|(j, row)| {
                let mut worst = 0.0f64;
                for (i, slot) in row.iter_mut().enumerate() {
                    let s = match self.layout.kinds[j * m + i] {
                        NodeKind::Fixed => {
                            *slot = 0.0;
                            continue;
                        }
                        NodeKind::Full => self.wide,
                        NodeKind::Axis => &self.axes,
                    };
                    let (lo, hi) =
                        extremes_at(values, m, self.h2, i, j, &s.directions, &s.lengths_sq);
                    let r = lo.atan() + hi.atan() - self.phase.values[j * m + i];
                    *slot = r;
                    worst = worst.max(r.abs());
                }
                worst
            })
            .reduce(|| 0.0, f64::max)
    }
}

/// Residual `F_h(w) - f` at interior nodes, zero at boundary and pinned
/// nodes.
pub fn residual(grid: &Grid2D, prob: &Problem2D, stencil: &StencilSet) -> Result<Grid2D> {
    let kernel = Kernel::new(prob, grid.m, stencil)?;
    let mut out = Grid2D::new(grid.m)?;
    kernel.residual_into(&grid.values, &mut out.values);
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct Solution {
    pub grid: Grid2D,
    pub iterations: usize,
    /// Final residual sup-norm.
    pub residual: f64,
    pub converged: bool,
    /// Residual sup-norm before each update, then the final one.
    pub history: Vec<f64>,
}

/// Transfinite (Coons) interpolation of the boundary data, with boundary and
/// pinned nodes set from `g`.
pub fn initial_guess(prob: &Problem2D, m: usize) -> Result<Grid2D> {
    let g = |x: f64, y: f64| prob.boundary(x, y);
    let mut grid = Grid2D::from_fn(m, |x, y| {
        let s = 0.5 * (x + 1.0);
        let t = 0.5 * (y + 1.0);
        (1.0 - s) * g(-1.0, y) + s * g(1.0, y) + (1.0 - t) * g(x, -1.0) + t * g(x, 1.0)
            - ((1.0 - s) * (1.0 - t) * g(-1.0, -1.0)
                + s * (1.0 - t) * g(1.0, -1.0)
                + (1.0 - s) * t * g(-1.0, 1.0)
                + s * t * g(1.0, 1.0))
    })?;
    impose_dirichlet(prob, &mut grid);
    Ok(grid)
}

fn impose_dirichlet(prob: &Problem2D, grid: &mut Grid2D) {
    let m = grid.m;
    for j in 0..m {
        for i in 0..m {
            if grid.is_boundary(i, j) {
                let v = prob.boundary(grid.coord(i), grid.coord(j));
                grid.set(i, j, v);
            }
        }
    }
    for (i, j) in prob.pinned_nodes(m) {
        let v = prob.boundary(grid.coord(i), grid.coord(j));
        grid.set(i, j, v);
    }
}

/// Solves from [`initial_guess`].
pub fn solve(
    prob: &Problem2D,
    m: usize,
    stencil: &StencilSet,
    tol: f64,
    max_iters: usize,
) -> Result<Solution> {
    let initial = initial_guess(prob, m)?;
    solve_from(prob, initial, stencil, tol, max_iters)
}

/// Damped Jacobi iteration `w <- w + (h^2 / 4)(F_h(w) - f)` until the
/// residual sup-norm is at most `tol` or `max_iters` updates have been made.
/// Boundary and pinned values of `initial` are overwritten with `g`.
pub fn solve_from(
    prob: &Problem2D,
    mut initial: Grid2D,
    stencil: &StencilSet,
    tol: f64,
    max_iters: usize,
) -> Result<Solution> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "tolerance {tol} must be positive"
        )));
    }
    let m = initial.m;
    impose_dirichlet(prob, &mut initial);
    let kernel = Kernel::new(prob, m, stencil)?;
    let rho = kernel.h2 / 4.0;
    let mut w = initial.values;
    let mut res = vec![0.0; m * m];
    let mut history = Vec::new();
    let mut rising = 0;
    let mut iterations = 0;
    let residual = loop {
        let r = kernel.residual_into(&w, &mut res);
        if !r.is_finite() {
            return Err(Error::SolverFailure(format!(
                "non-finite residual after {iterations} iterations"
            )));
        }
        if let Some(&prev) = history.last() {
            if r > prev {
                rising += 1;
                if rising >= DIVERGENCE_WINDOW {
                    return Err(Error::SolverFailure(format!(
                        "residual grew for {DIVERGENCE_WINDOW} consecutive iterations (now {r:e})"
                    )));
                }
            } else {
                rising = 0;
            }
        }
        history.push(r);
        if r <= tol || iterations >= max_iters {
            break r;
        }
        w.par_iter_mut()
            .zip(res.par_iter())
            .for_each(|(wi, ri)| *wi += rho * ri);
        iterations += 1;
    };
    Ok(Solution {
        grid: Grid2D { m, values: w },
        iterations,
        residual,
        converged: residual <= tol,
        history,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_validation_and_csv() {
        assert!(Grid2D::new(4).is_err());
        assert!(Grid2D::new(3).is_err());
        let g = Grid2D::from_fn(5, |x, y| x - 2.0 * y + 0.1).unwrap();
        assert_eq!(g.center(), 2);
        assert_eq!(g.get(2, 2), 0.1);
        assert_eq!(g.get(4, 0), 1.0 + 2.0 + 0.1);
        let back = Grid2D::from_csv(&g.to_csv()).unwrap();
        assert_eq!(back, g);
        assert!(Grid2D::from_csv("").is_err());
        assert!(Grid2D::from_csv("5\n1,2\n").is_err());
        assert!(Grid2D::from_fn(5, |_, _| f64::NAN).is_err());
    }

    #[test]
    fn stencil_validation() {
        assert_eq!(StencilSet::wide().directions().len(), 8);
        assert_eq!(StencilSet::wide().reach(), 2);
        assert!(StencilSet::new(vec![(1, 0)]).is_err());
        assert!(StencilSet::new(vec![(1, 0), (0, 1), (2, 2), (1, 1)]).is_err());
        assert!(StencilSet::new(vec![(1, 0), (0, 1), (-1, 0)]).is_err());
        let l = StencilSet::wide().lengths();
        assert_eq!(l[0], 1.0);
        assert_eq!(l[4], 5f64.sqrt());
    }

    #[test]
    fn affine_extremes_vanish() {
        let g = Grid2D::from_fn(9, |x, y| 0.3 - 1.7 * x + 2.2 * y).unwrap();
        for j in 1..8 {
            for i in 1..8 {
                let (lo, hi) = hessian_extremes(&g, (i, j), &StencilSet::wide()).unwrap();
                assert!(lo.abs() < 1e-10 && hi.abs() < 1e-10);
            }
        }
        assert!(hessian_extremes(&g, (0, 3), &StencilSet::wide()).is_err());
        assert!(hessian_extremes(&g, (3, 8), &StencilSet::wide()).is_err());
    }

    #[test]
    fn isotropic_quadratic_extremes() {
        let g = Grid2D::from_fn(9, |x, y| 0.5 * (x * x + y * y)).unwrap();
        let (lo, hi) = hessian_extremes(&g, (4, 4), &StencilSet::wide()).unwrap();
        assert!((lo - 1.0).abs() < 1e-12 && (hi - 1.0).abs() < 1e-12);
    }

    #[test]
    fn zero_problem_has_zero_residual() {
        let prob = Problem2D::new(|_, _| 0.0, |_, _| 0.0);
        let r = residual(&Grid2D::new(9).unwrap(), &prob, &StencilSet::wide()).unwrap();
        assert_eq!(r.sup_norm(), 0.0);
    }

    #[test]
    fn pinned_node_snaps_to_origin() {
        let prob = Problem2D::radial();
        assert_eq!(prob.pinned_nodes(17), vec![(8, 8)]);
        let g = initial_guess(&prob, 17).unwrap();
        assert_eq!(g.get(8, 8), 0.0);
    }

    #[test]
    fn constant_problem_data_has_the_right_phase() {
        for &theta in &[-2.5, -0.4, 0.0, 0.3, 3.0] {
            let prob = Problem2D::constant(theta).unwrap();
            let g = Grid2D::from_fn(9, |x, y| prob.boundary(x, y)).unwrap();
            let f = discrete_phase(&g, (4, 4), &StencilSet::wide()).unwrap();
            assert!((f - theta).abs() < 1e-12, "{theta}: {f}");
        }
        assert!(Problem2D::constant(3.2).is_err());
    }

    #[test]
    fn non_positive_tolerance_is_rejected() {
        let prob = Problem2D::affine(0.0, 1.0, 0.0);
        assert!(solve(&prob, 9, &StencilSet::wide(), 0.0, 10).is_err());
    }
}
