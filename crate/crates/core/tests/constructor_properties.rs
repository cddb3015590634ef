//! Property tests for the constructors: the perturbation search must
//! return fully certified immersions deterministically, and every
//! covered embedding pattern must realize exactly the winding class it
//! was asked for.

use num_rational::BigRational;
use proptest::prelude::*;

use okaforge_core::algebra::GaussianRational;
use okaforge_core::constructors::{
    build_embedding_circular, build_embedding_plane, build_nonnull_immersion,
    CircularEmbedding, PlaneEmbedding,
};
use okaforge_core::domains::{Hole, PuncturedCircularDomain, PuncturedPlane, WindingClass};
use okaforge_core::doublepoints::{common_component, pair_system, ComponentVerdict};
use okaforge_core::maps::{classify_map, classify_on_circular};
use okaforge_core::verifiers::{
    check_immersion, check_injective_by_form, check_properness, check_winding,
};

fn gi(re: i64, im: i64) -> GaussianRational {
    GaussianRational::from_parts(re, im)
}

fn q(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> GaussianRational {
    GaussianRational::new(
        BigRational::new(re_num.into(), re_den.into()),
        BigRational::new(im_num.into(), im_den.into()),
    )
}

fn plane_pool() -> Vec<GaussianRational> {
    vec![gi(0, 0), gi(1, 0), gi(-1, 0), gi(0, 1), gi(2, 0), gi(0, -1)]
}

fn disk_pool() -> Vec<GaussianRational> {
    vec![
        q(1, 2, 0, 1),
        q(-1, 2, 0, 1),
        q(0, 1, 1, 2),
        q(0, 1, -1, 2),
        q(3, 4, 0, 1),
        q(1, 2, 1, 2),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn perturbation_search_returns_certified_immersions(
        idxs in proptest::sample::subsequence((0usize..6).collect::<Vec<_>>(), 1..=3),
        raw_windings in proptest::collection::vec(-2i64..=2, 3),
        seed in 0u64..512,
    ) {
        let pool = plane_pool();
        let punctures: Vec<_> = idxs.iter().map(|&i| pool[i].clone()).collect();
        let windings: Vec<i64> = raw_windings[..punctures.len()].to_vec();
        prop_assume!(windings.iter().any(|&k| k != 0));
        let x = PuncturedPlane::new(punctures);
        let w = WindingClass::for_plane(windings);

        let (map, log) = build_nonnull_immersion(&x, &w, seed).unwrap();
        prop_assert!(check_immersion(&map, &x).passed());
        prop_assert!(check_properness(&map, &x).passed());
        prop_assert!(check_winding(&map, &x, &w).passed());
        prop_assert_eq!(classify_map(&map, &x).unwrap(), w.clone());
        let g = map.second.as_factored().unwrap();
        let sys = pair_system(&map.first, g).unwrap();
        prop_assert!(matches!(common_component(&sys), ComponentVerdict::Finite));

        let (map2, log2) = build_nonnull_immersion(&x, &w, seed).unwrap();
        prop_assert_eq!(map, map2);
        prop_assert_eq!(log, log2);
    }

    #[test]
    fn covered_plane_patterns_realize_the_requested_class(
        idxs in proptest::sample::subsequence((0usize..6).collect::<Vec<_>>(), 3..=4),
        raw_windings in proptest::collection::vec(-2i64..=2, 4),
    ) {
        let pool = plane_pool();
        let punctures: Vec<_> = idxs.iter().map(|&i| pool[i].clone()).collect();
        let windings: Vec<i64> = raw_windings[..punctures.len()].to_vec();
        let x = PuncturedPlane::new(punctures);
        let w = WindingClass::for_plane(windings);

        if let PlaneEmbedding::Covered { map, .. } = build_embedding_plane(&x, &w).unwrap() {
            prop_assert!(check_immersion(&map, &x).passed());
            prop_assert!(check_properness(&map, &x).passed());
            prop_assert!(check_injective_by_form(&map).passed());
            prop_assert_eq!(classify_map(&map, &x).unwrap(), w);
        }
    }

    #[test]
    fn covered_circular_patterns_realize_the_requested_class(
        with_hole in proptest::bool::ANY,
        idxs in proptest::sample::subsequence((0usize..6).collect::<Vec<_>>(), 1..=3),
        raw_windings in proptest::collection::vec(-2i64..=2, 3),
        hole_winding in -1i64..=1,
    ) {
        let pool = disk_pool();
        let punctures: Vec<_> = idxs.iter().map(|&i| pool[i].clone()).collect();
        let windings: Vec<i64> = raw_windings[..punctures.len()].to_vec();
        let holes = if with_hole {
            vec![Hole::new(GaussianRational::zero(), BigRational::new(1.into(), 4.into()))]
        } else {
            Vec::new()
        };
        let hole_windings = if with_hole { vec![hole_winding] } else { Vec::new() };
        let domain = PuncturedCircularDomain::new(holes, punctures);
        let w = WindingClass::new(windings, hole_windings);

        if let CircularEmbedding::Covered { map, certificate, .. } =
            build_embedding_circular(&domain, &w).unwrap()
        {
            prop_assert!(certificate.verdict);
            if let Some(theta) = &certificate.theta {
                prop_assert!(theta.pass);
            }
            prop_assert!(check_injective_by_form(&map).passed());
            prop_assert_eq!(classify_on_circular(&map, &domain).unwrap(), w);
        }
    }
}
