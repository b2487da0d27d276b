use proptest::prelude::*;

use qduality::algebra::{FormalSum, Scalar, Semiring};
use qduality::duality::{hs_forward, hs_inverse};
use qduality::effect::{make_effects, EffectAlgebra};
use qduality::linalg::{hermitian_eig, ComplexMatrix, C64};
use qduality::operators::{classify, pos_neg_split, sa_components, sample, OperatorKind};
use qduality::wp::{sample_channel, wp, Variant};
use qduality::operators::rng_from_seed;

fn kind() -> impl Strategy<Value = OperatorKind> {
    prop::sample::select(OperatorKind::ALL.to_vec())
}

fn dualizable() -> impl Strategy<Value = OperatorKind> {
    prop::sample::select(OperatorKind::DUALIZABLE.to_vec())
}

fn rational() -> impl Strategy<Value = Scalar> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Scalar::ratio(n, d))
}

fn gaussian_rational() -> impl Strategy<Value = Scalar> {
    (rational(), rational()).prop_map(|(a, b)| &a + &(&b * &Scalar::i()))
}

fn sum_over(n: u8, coeff: impl Strategy<Value = Scalar>) -> impl Strategy<Value = Vec<(u8, Scalar)>> {
    prop::collection::vec((0..n, coeff), 0..5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn samples_are_in_their_family_and_report_is_consistent(k in kind(), dim in 1usize..6, seed in any::<u64>()) {
        let a = sample(k, dim, seed);
        let r = classify(&a, 1e-9);
        prop_assert!(r.contains(k));
        prop_assert!(r.is_consistent());
    }

    #[test]
    fn eigendecomposition_reconstructs(dim in 1usize..7, seed in any::<u64>()) {
        let a = sample(OperatorKind::SelfAdjoint, dim, seed);
        let eig = hermitian_eig(&a, 1e-9).unwrap();
        prop_assert!(eig.reconstruct().max_diff(&a).unwrap() <= 1e-12);
        prop_assert!(eig.eigenvalues.windows(2).all(|w| w[0] >= w[1]));
        let v = &eig.eigenvectors;
        prop_assert!((&v.dagger() * v).max_diff(&ComplexMatrix::identity(dim)).unwrap() <= 1e-12);
        // Trace equals the sum of eigenvalues.
        let sum: f64 = eig.eigenvalues.iter().sum();
        prop_assert!((a.trace().re - sum).abs() <= 1e-12);
    }

    #[test]
    fn duality_roundtrip(k in dualizable(), dim in 1usize..5, seed in any::<u64>()) {
        let a = sample(k, dim, seed);
        let f = hs_forward(k, &a, 1e-9).unwrap();
        let back = hs_inverse(k, &f, 1e-9).unwrap();
        prop_assert!(back.max_diff(&a).unwrap() <= 1e-10);
    }

    #[test]
    fn splits_reassemble(dim in 1usize..6, seed in any::<u64>()) {
        let a = sample(OperatorKind::SelfAdjoint, dim, seed);
        let (p, n) = pos_neg_split(&a, 1e-9).unwrap();
        prop_assert!((&p - &n).max_diff(&a).unwrap() <= 1e-12);
        prop_assert!(classify(&p, 1e-9).positive && classify(&n, 1e-9).positive);
        // Disjoint support: A_p·A_n = 0.
        prop_assert!((&p * &n).max_norm() <= 1e-12);
        let b = sample(OperatorKind::Bounded, dim, seed);
        let (re, im) = sa_components(&b);
        prop_assert!((&re + &im.scale(C64::new(0.0, 1.0))).max_diff(&b).unwrap() <= 1e-15);
    }

    #[test]
    fn fmap_composes(terms in sum_over(4, rational())) {
        let s = FormalSum::new(Semiring::Rational, terms).unwrap();
        let f = |x: &u8| x % 2;
        let g = |x: &u8| x + 10;
        prop_assert_eq!(s.fmap(f).fmap(g), s.fmap(|x| g(&f(x))));
        prop_assert_eq!(s.fmap(f).total(), s.total());
    }

    #[test]
    fn flatten_is_natural(
        a in sum_over(3, gaussian_rational()),
        b in sum_over(3, gaussian_rational()),
        s in gaussian_rational(),
        t in gaussian_rational(),
    ) {
        let c = Semiring::ComplexRational;
        let outer = FormalSum::new(
            c,
            [(FormalSum::new(c, a).unwrap(), s), (FormalSum::new(c, b).unwrap(), t)],
        ).unwrap();
        let f = |x: &u8| x / 2;
        let lhs = outer.flatten().unwrap().fmap(f);
        let rhs = outer.fmap(|inner| inner.fmap(f)).flatten().unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn wp_is_an_effect_module_map(variant in prop::sample::select(Variant::ALL.to_vec()), dim in 2usize..4, seed in any::<u64>(), r in 0u8..=8) {
        let mut rng = rng_from_seed(seed);
        let f = sample_channel(variant, dim, &mut rng);
        let ef = make_effects(dim, 1e-9);
        let (a, b) = ef.sample_split(&mut rng);
        let a = a.scale_real(0.5);
        let b = b.scale_real(0.5);
        let r = r as f64 / 8.0;
        let wa = wp(&f, &a, 1e-9).unwrap();
        let wb = wp(&f, &b, 1e-9).unwrap();
        let wab = wp(&f, &(&a + &b), 1e-9).unwrap();
        prop_assert!(wab.max_diff(&(&wa + &wb)).unwrap() <= 1e-9);
        let wra = wp(&f, &a.scale_real(r), 1e-9).unwrap();
        prop_assert!(wra.max_diff(&wa.scale_real(r)).unwrap() <= 1e-9);
    }
}
