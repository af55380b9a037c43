//! Property tests for the counting, deviation and layering kernels against
//! brute-force references.

mod common;

use common::*;
use proptest::prelude::*;
use robinson_core::gamma::gamma1_unclamped;
use robinson_core::{
    apply_permutation, corner_counts, decompose, gamma1, gamma1_direct, gamma1_fast, is_robinson, l1_distance,
    quantize, random_robinson, recombine, robinson_approx_binary, BinaryMask, Permutation, SymmetricMatrix, Threshold,
};

fn mask(max_n: usize) -> impl Strategy<Value = BinaryMask> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * n).prop_map(move |bits| BinaryMask::from_fn(n, |i, j| bits[(i - 1) * n + j - 1]))
    })
}

fn matrix_from(n: usize, vals: Vec<f64>) -> SymmetricMatrix {
    SymmetricMatrix::from_fn(n, |i, j| vals[(i - 1) * n + j - 1])
}

/// Real entries; every other draw snaps to a few levels so ties and exact
/// Robinson structure show up.
fn matrix(max_n: usize) -> impl Strategy<Value = SymmetricMatrix> {
    (1..=max_n, any::<bool>()).prop_flat_map(|(n, coarse)| {
        prop::collection::vec(0.0..=1.0f64, n * n).prop_map(move |v| {
            let a = matrix_from(n, v);
            if coarse {
                snap(&a, 3)
            } else {
                a
            }
        })
    })
}

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n).collect::<Vec<_>>()).prop_shuffle().prop_map(|v| Permutation::new(v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn corner_counts_match_brute_force(m in mask(12)) {
        let c = corner_counts(&m);
        let n = m.n();
        for a in 1..=n {
            for b in a..=n {
                prop_assert_eq!(c.ones_ur(a, b), ur_ref(&m, a, b), "ones_ur({}, {})", a, b);
                prop_assert_eq!(c.zeros_ll(a, b), ll_ref(&m, a, b), "zeros_ll({}, {})", a, b);
            }
        }
    }

    #[test]
    fn violation_count_matches_triples(m in mask(16)) {
        prop_assert_eq!(m.violation_count(), violations_ref(&m));
    }

    #[test]
    fn gamma_variants_agree(a in matrix(18)) {
        let r = gamma_ref(&a);
        prop_assert!((gamma1_direct(&a).value() - r).abs() <= 1e-12);
        prop_assert!((gamma1_fast(&a).value() - r).abs() <= 1e-12);
        prop_assert!((gamma1(&a).value() - r).abs() <= 1e-12);
        prop_assert!((0.0..1.0).contains(&r));
    }

    #[test]
    fn robinson_iff_zero_gamma(a in matrix(10)) {
        let by_def = robinson_ref(&a);
        prop_assert_eq!(is_robinson(&a, 0.0), by_def);
        prop_assert_eq!(gamma1_direct(&a).is_zero(), by_def);
    }

    #[test]
    fn robinson_generator_has_zero_gamma(n in 1..40usize, levels in 1..10usize, seed in any::<u64>()) {
        let a = random_robinson(n, levels, seed).unwrap();
        prop_assert!(robinson_ref(&a));
        prop_assert_eq!(gamma1_direct(&a).value(), 0.0);
    }

    #[test]
    fn l1_is_a_metric(n in 1..10usize, seed in any::<u64>()) {
        let mut r = rng(seed);
        let [a, b, c] = [(); 3].map(|_| dyadic_levels(n, 16, &mut r));
        let ab = l1_distance(&a, &b).unwrap();
        prop_assert_eq!(ab, l1_distance(&b, &a).unwrap());
        prop_assert_eq!(l1_distance(&a, &a).unwrap(), 0.0);
        prop_assert!(ab <= l1_distance(&a, &c).unwrap() + l1_distance(&c, &b).unwrap() + 1e-15);
        prop_assert_eq!(ab == 0.0, a == b);
    }

    #[test]
    fn gamma_is_subadditive_and_lipschitz(a in matrix(10), seed in any::<u64>()) {
        // gamma1(A) <= gamma1(R) + gamma1(A - R) and gamma1(B) <= 4 ||B||_1.
        let n = a.n();
        let mut r = rng(seed);
        let rob = random_robinson(n, 1 + (seed % 5) as usize, rand::Rng::random(&mut r)).unwrap();
        let diff: Vec<f64> = a.as_slice().iter().zip(rob.as_slice()).map(|(x, y)| x - y).collect();
        let g_diff = gamma1_unclamped(n, &diff);
        prop_assert!(gamma1_direct(&a).value() <= gamma1_direct(&rob).value() + g_diff + 1e-12);
        prop_assert!(g_diff <= 4.0 * l1_distance(&a, &rob).unwrap() + 1e-12);
    }

    #[test]
    fn layering_identity(a in matrix(14)) {
        let l = decompose(&a);
        prop_assert!(l.is_nested());
        let weights = l.weights();
        let layered: f64 = weights.iter().zip(l.layers()).map(|(w, m)| w * m.violation_count() as f64).sum::<f64>()
            / (a.n() as f64).powi(3);
        prop_assert!((layered - gamma_ref(&a)).abs() <= 1e-12);
        let back = recombine(&l);
        for (x, y) in back.as_slice().iter().zip(a.as_slice()) {
            prop_assert!((x - y).abs() <= 1e-15);
        }
    }

    #[test]
    fn quantize_rounds_to_grid(a in matrix(8), k in 1..=16u32) {
        let step = 1.0 / f64::from(k);
        let q = quantize(&a, step).unwrap();
        for (x, y) in q.as_slice().iter().zip(a.as_slice()) {
            prop_assert!((x - y).abs() <= step / 2.0 + 1e-15);
            let units = x / step;
            prop_assert!((units - units.round()).abs() <= 1e-9);
        }
    }

    #[test]
    fn reversal_leaves_gamma_unchanged(a in matrix(9), seed in any::<u64>()) {
        let n = a.n();
        let mut images: Vec<usize> = (1..=n).collect();
        let mut r = rng(seed);
        for k in (1..n).rev() {
            images.swap(k, rand::Rng::random_range(&mut r, 0..=k));
        }
        let p = Permutation::new(images).unwrap();
        let g = gamma_ref(&apply_permutation(&a, &p).unwrap());
        let g_rev = gamma_ref(&apply_permutation(&a, &p.reversed()).unwrap());
        prop_assert!((g - g_rev).abs() <= 1e-12);
    }

    #[test]
    fn permutation_algebra(p in (1..12usize).prop_flat_map(permutation)) {
        let n = p.len();
        prop_assert_eq!(p.compose(&p.inverse()).unwrap(), Permutation::identity(n));
        prop_assert_eq!(p.inverse().compose(&p).unwrap(), Permutation::identity(n));
        prop_assert_eq!(p.reversed().reversed(), p.clone());
        prop_assert!(p.canonical() <= p.canonical().reversed());
        let parsed = Permutation::new(p.to_string().split(' ').map(|s| s.parse().unwrap()).collect()).unwrap();
        prop_assert_eq!(parsed, p);
    }

    #[test]
    fn permuting_back_restores(a in matrix(9), seed in any::<u64>()) {
        let n = a.n();
        let mut images: Vec<usize> = (1..=n).collect();
        let mut r = rng(seed);
        for k in (1..n).rev() {
            images.swap(k, rand::Rng::random_range(&mut r, 0..=k));
        }
        let p = Permutation::new(images).unwrap();
        let b = apply_permutation(&a, &p).unwrap();
        for i in 1..=n {
            for j in 1..=n {
                prop_assert_eq!(b.get(i, j), a.get(p.image(i), p.image(j)));
            }
        }
        prop_assert_eq!(apply_permutation(&b, &p.inverse()).unwrap(), a);
    }

    #[test]
    fn rounding_is_robinson_and_monotone_in_t(m in mask(14), t1 in 0.1..20.0f64, dt in 0.0..20.0f64) {
        let lo = robinson_approx_binary(&m, Threshold::new(t1).unwrap());
        let hi = robinson_approx_binary(&m, Threshold::new(t1 + dt).unwrap());
        prop_assert!(robinson_ref(&SymmetricMatrix::from(&lo)));
        prop_assert!(hi.is_dominated_by(&lo));
    }

    #[test]
    fn unit_diagonal_corner_product_bound(m in mask(14)) {
        let n = m.n();
        let m = m.with_diagonal(&vec![true; n]);
        prop_assert!(corner_counts(&m).max_product() <= 2 * n as u64 * violations_ref(&m));
    }
}
