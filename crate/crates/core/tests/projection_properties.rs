//! Property tests for the tangent-direction separation certificate:
//! invariance of the verdict under rescaling of the second component,
//! and successful repair of a family that always fails.

use num_rational::BigRational;
use proptest::prelude::*;

use okaforge_core::algebra::{FactoredRational, GaussianRational};
use okaforge_core::projection::{remediate_thetas, theta_certificate};

fn gi(re: i64, im: i64) -> GaussianRational {
    GaussianRational::from_parts(re, im)
}

fn marker_pool() -> Vec<GaussianRational> {
    vec![
        gi(0, 1),
        gi(1, 1),
        gi(-1, 2),
        gi(2, -1),
        gi(0, -2),
        gi(3, 1),
    ]
}

fn extra_root_pool() -> Vec<GaussianRational> {
    vec![gi(5, 0), gi(0, 5), gi(-4, -4)]
}

fn simple_pole_product(markers: &[GaussianRational]) -> Vec<(GaussianRational, i64)> {
    markers.iter().map(|b| (b.clone(), -1)).collect()
}

proptest! {
    /// Rescaling the second component by a nonzero constant multiplies
    /// every direction value by that constant and leaves the pass or
    /// fail verdict, including the failing pair, unchanged.
    #[test]
    fn rescaling_preserves_the_separation_verdict(
        markers in prop::sample::subsequence(marker_pool(), 2..=4),
        extras in prop::sample::subsequence(extra_root_pool(), 0..=2),
        mults in prop::collection::vec(prop_oneof![-2i64..0, 1i64..3], 3),
        re in -5i64..=5,
        im in -5i64..=5,
        den in 1i64..=4,
    ) {
        prop_assume!(re != 0 || im != 0);
        let mut factors = simple_pole_product(&markers);
        for (root, m) in extras.iter().zip(mults.iter()) {
            factors.push((root.clone(), *m));
        }
        let g = FactoredRational::new(GaussianRational::one(), factors.clone()).unwrap();
        let c = GaussianRational::new(
            BigRational::new(re.into(), den.into()),
            BigRational::new(im.into(), den.into()),
        );
        let scaled = FactoredRational::new(c.clone(), factors).unwrap();

        let base = theta_certificate(&g, &markers).unwrap();
        let after = theta_certificate(&scaled, &markers).unwrap();

        prop_assert_eq!(base.pass, after.pass);
        prop_assert_eq!(base.failing, after.failing);
        for (u, v) in base.values.iter().zip(after.values.iter()) {
            prop_assert_eq!(&(&c * u), v);
        }
    }

    /// Markers on the imaginary axis with a bare simple-pole product
    /// always produce real pairwise products, so the certificate fails
    /// and the repair loop must fix it.
    #[test]
    fn repair_fixes_collinear_marker_families(
        heights in prop::sample::subsequence(vec![-3i64, -2, -1, 1, 2, 3, 4], 2..=4),
    ) {
        let markers: Vec<_> = heights.iter().map(|&h| gi(0, h)).collect();
        let g = FactoredRational::new(
            GaussianRational::one(),
            simple_pole_product(&markers),
        )
        .unwrap();

        let initial = theta_certificate(&g, &markers).unwrap();
        prop_assert!(!initial.pass);
        prop_assert!(initial.failing.contains(&(0, 1)));

        let (repaired, d, cert) = remediate_thetas(&g, &markers).unwrap();
        prop_assert!(cert.pass);
        prop_assert_eq!(repaired.order_at(&d), 1);
        prop_assert!(d.norm_sq() >= BigRational::from_integer(64.into()));
        let recheck = theta_certificate(&repaired, &markers).unwrap();
        prop_assert!(recheck.pass);
    }
}
