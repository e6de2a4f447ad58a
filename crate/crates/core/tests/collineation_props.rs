mod common;

use pentagram_core::collineation::{
    apply_cramer, apply_direct, hull_image, la_from_lifts, verify_conservation, verify_duality, Collineation,
};
use pentagram_core::geom::{lift, ratio, HomoVec, Mat3, Polygon, Rational, Scalar};
use pentagram_core::sample::{random_convex_polygon, random_hull_point, random_unimodular};
use proptest::prelude::*;

type Q = Rational;

fn convex(n: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Polygon<Q>> {
    (any::<u64>(), n).prop_map(|(seed, n)| random_convex_polygon(&mut common::rng(seed), n))
}

fn nonzero() -> impl Strategy<Value = Q> {
    (1i64..=30, 1i64..=30, any::<bool>()).prop_map(|(p, q, neg)| ratio(if neg { -p } else { p }, q))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn lift_scaling_does_not_matter(a in convex(5..=9), ks in prop::collection::vec(nonzero(), 9)) {
        let u = a.lifts();
        let scaled: Vec<HomoVec<Q>> = u.iter().zip(&ks).map(|(v, k)| v.scale(k)).collect();
        prop_assert_eq!(la_from_lifts(&scaled, 0.0).unwrap(), la_from_lifts(&u, 0.0).unwrap());
    }

    #[test]
    fn three_evaluations_agree(a in convex(5..=9), x in -20i64..=20, y in -20i64..=20, z in 1i64..=5) {
        let u = a.lifts();
        let v = HomoVec::point(Q::from_i64(x), Q::from_i64(y), Q::from_i64(z));
        let by_matrix = Collineation::build(&a).unwrap().apply(&v);
        prop_assert_eq!(&apply_direct(&u, &v, 0.0).unwrap(), &by_matrix);
        prop_assert_eq!(&apply_cramer(&u, &v, 0.0).unwrap(), &by_matrix);
    }

    #[test]
    fn trace_is_twice_n(a in convex(5..=10)) {
        prop_assert_eq!(Collineation::build(&a).unwrap().trace(), Q::from_i64(2 * a.len() as i64));
    }

    #[test]
    fn conserved_by_the_map(a in convex(5..=9)) {
        prop_assert!(verify_conservation(&a).unwrap().holds);
    }

    #[test]
    fn charpoly_is_a_projective_invariant(a in convex(5..=8), seed in any::<u64>()) {
        let l = Collineation::build(&a).unwrap();
        let psi = random_unimodular(&mut common::rng(seed));
        prop_assert_eq!(l.conjugate(&psi, 0.0).unwrap().charpoly(), l.charpoly());

        let lf = l.to_f64();
        let g = Mat3::new([[1.5, -0.25, 2.0], [0.5, 2.0, -1.0], [0.125, 0.0, 1.0]]);
        let pf = lf.charpoly().coefficients();
        let pg = lf.conjugate(&g, 1e-12).unwrap().charpoly().coefficients();
        for (x, y) in pf.iter().zip(&pg) {
            prop_assert!((x - y).abs() <= 1e-9 * (1.0 + x.abs()), "{x} vs {y}");
        }
    }

    #[test]
    fn dual_sequences_give_the_transpose(a in convex(5..=9)) {
        prop_assert!(verify_duality(&a).unwrap().holds);
    }

    #[test]
    fn hull_points_have_positive_weights(a in convex(5..=9), seed in any::<u64>()) {
        let l = Collineation::build(&a).unwrap();
        let mut r = common::rng(seed);
        for _ in 0..10 {
            let q = random_hull_point(&mut r, &a);
            let h = hull_image(&a, &l, &q).unwrap();
            prop_assert!(h.positive && h.consistent && h.image_in_hull);
        }
    }
}

#[test]
fn vertices_map_into_the_hull() {
    let a = common::heptagon();
    let l = Collineation::build(&a).unwrap();
    for p in a.vertices() {
        let image = pentagram_core::geom::project(&l.apply(&lift(p))).unwrap();
        assert_eq!(a.contains(&image), Ok(true), "{p} ↦ {image}");
    }
}
