mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sllab::slop::operator_value;
use sllab::symmat::{conjugate, eigenvalues, loewner_leq};
use sllab::{Family, OrthMatrix, SymMatrix};

const TOL: f64 = 1e-9;

fn matrix(max_n: usize) -> impl Strategy<Value = SymMatrix> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(-10.0f64..10.0, n * n)
            .prop_map(move |v| SymMatrix::from_fn(n, |i, j| v[i.min(j) * n + i.max(j)]))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn operator_is_odd(x in matrix(8)) {
        let a = operator_value(&x).unwrap();
        let b = operator_value(&-&x).unwrap();
        prop_assert!((a + b).abs() <= TOL);
    }

    #[test]
    fn operator_is_rotation_invariant(x in matrix(8), seed in any::<u64>()) {
        let q = OrthMatrix::random_givens(x.n(), &mut ChaCha8Rng::seed_from_u64(seed));
        let y = conjugate(&x, &q).unwrap();
        let a = operator_value(&x).unwrap();
        let b = operator_value(&y).unwrap();
        prop_assert!((a - b).abs() <= TOL);
    }

    #[test]
    fn operator_is_elliptic(x in matrix(8), seed in any::<u64>(), scale in 0.0f64..5.0) {
        let p = common::random_psd(x.n(), scale, &mut ChaCha8Rng::seed_from_u64(seed));
        let y = x.checked_add(&p).unwrap();
        prop_assert!(loewner_leq(&x, &y, 1e-10).unwrap());
        prop_assert!(operator_value(&x).unwrap() <= operator_value(&y).unwrap() + TOL);
    }

    #[test]
    fn shift_strictly_increases(x in matrix(8), tau in 0.01f64..2.0) {
        prop_assert!(operator_value(&x.shift(tau)).unwrap() > operator_value(&x).unwrap());
    }

    #[test]
    fn eigenvalues_preserve_trace(x in matrix(8)) {
        let spec = eigenvalues(&x).unwrap();
        let sum: f64 = spec.values().iter().sum();
        prop_assert!((sum - x.trace()).abs() <= 1e-10 * (1.0 + x.frobenius_norm()));
        prop_assert!(spec.values().windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn phase_symmetry_holds(
        n in 1usize..=4,
        k_frac in 0.0f64..=1.0,
        p in 1.05f64..1.95,
        coords in prop::collection::vec(prop_oneof![Just(0.0), -1.0f64..=1.0], 4),
    ) {
        let k = ((n as f64) * k_frac).round() as usize;
        let fam = Family::new(n, k, p).unwrap();
        let x = &coords[..n];
        let jx: Vec<f64> = x.iter().rev().copied().collect();
        prop_assert!((fam.f_value(x) + fam.mirror().f_value(&jx)).abs() <= 1e-12);
        prop_assert_eq!(fam.u(x), -fam.mirror().v(&jx));
        for other in 0..=n {
            let g = Family::new(n, other, p).unwrap();
            prop_assert!((fam.diff(x) - g.diff(x)).abs() <= 1e-12);
        }
    }
}
