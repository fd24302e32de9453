#![allow(dead_code)]

use rand::Rng;
use sllab::fdsolve::Problem2D;
use sllab::SymMatrix;

/// Dirichlet problems `(lower, upper)` sharing a phase with values in
/// `[0.2, 2.9]` and boundary data `g_lower <= g_upper`.
pub fn comparison_pairs() -> Vec<(&'static str, Problem2D, Problem2D)> {
    fn pair(
        f: fn(f64, f64) -> f64,
        g: fn(f64, f64) -> f64,
        lift: fn(f64, f64) -> f64,
    ) -> (Problem2D, Problem2D) {
        (
            Problem2D::new(f, g),
            Problem2D::new(f, move |x, y| g(x, y) + lift(x, y)),
        )
    }
    type Field = fn(f64, f64) -> f64;
    let specs: [(&'static str, Field, Field, Field); 5] = [
        (
            "constant phase, shifted quadratic",
            |_, _| 1.0,
            |x, y| 0.5 * (1.3 * x * x + 0.4 * y * y),
            |_, _| 0.1,
        ),
        (
            "bilinear phase, tilted lift",
            |x, y| 1.5 + 0.5 * x * y,
            |x, y| x * x + y * y,
            |x, _| 0.2 * (1.0 + x),
        ),
        (
            "oscillating phase",
            |x, _| 0.8 + 0.3 * (3.0 * x).cos(),
            |x, y| x.sin() * y,
            |_, y| 0.05 * (2.0 + y * y),
        ),
        (
            "large phase, flat data",
            |x, y| 2.5 - 0.4 * (x * x + y * y),
            |_, _| 0.0,
            |_, _| 0.3,
        ),
        (
            "small phase, kinked data",
            |x, y| 0.4 + 0.1 * (x + y),
            |x, y| x * y.abs(),
            |x, y| 0.01 * (1.0 + x * x * y * y),
        ),
    ];
    specs
        .into_iter()
        .map(|(name, f, g, lift)| {
            let (lo, hi) = pair(f, g, lift);
            (name, lo, hi)
        })
        .collect()
}

/// `scale * B B^T` for a random `B`.
pub fn random_psd<R: Rng>(n: usize, scale: f64, rng: &mut R) -> SymMatrix {
    let b: Vec<f64> = (0..n * n).map(|_| rng.gen_range(-1.0..1.0)).collect();
    SymMatrix::from_fn(n, |i, j| {
        scale * (0..n).map(|c| b[i * n + c] * b[j * n + c]).sum::<f64>()
    })
}
