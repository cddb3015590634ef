//! Construction of the explicit proper maps: the exponential-second
//! construction for the zero winding class, the certified perturbation
//! search for nonzero classes, and the closed-form embedding patterns
//! for punctured planes and punctured circular domains.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{FactoredRational, GaussianRational, Polynomial, RationalFunction};
use crate::domains::{
    reduce_to_plane, PuncturedCircularDomain, PuncturedPlane, ReductionResult, WindingClass,
};
use crate::doublepoints::{
    check_fiber_injectivity, common_component, fiber_avoids_branching, find_regular_value,
    pair_system, ComponentVerdict,
};
use crate::error::{Error, Result};
use crate::maps::{ExpCoeff, MapPair, SecondComponent};
use crate::projection::{
    pick_generic_d, remediate_thetas, theta_certificate, EscapeWitness, ProjectionCertificate,
    ProjectionFlavor, ThetaCertificate,
};
use crate::util::SplitMix64;
use crate::verifiers::{check_immersion, check_properness, check_winding};

/// One retry of the perturbation search: what was changed and which
/// check the previous candidate failed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PerturbationAttempt {
    pub perturbation: String,
    pub failed_check: String,
}

/// Replayable record of a perturbation search: the seed, every retry,
/// and the accepted map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerturbationLog {
    pub seed: u64,
    pub attempts: Vec<PerturbationAttempt>,
    pub final_map: MapPair,
}

/// Builds the zero-winding-class immersion with an exponential second
/// component: `((z − c)^{n+1} / ∏(z − a_j), exp(z))`.
pub fn build_null_immersion(x: &PuncturedPlane, c: &GaussianRational) -> Result<MapPair> {
    if x.count() == 0 {
        return Err(Error::InvalidParameter(
            "the construction needs at least one puncture".into(),
        ));
    }
    if !x.contains(c) {
        return Err(Error::InvalidParameter(format!(
            "center {c} collides with a puncture"
        )));
    }
    let num = Polynomial::from_roots(&vec![c.clone(); x.count() + 1]);
    let first = RationalFunction::new(num, x.puncture_polynomial())?;
    MapPair::new(first, SecondComponent::ExpLinear(ExpCoeff::one()))
}

fn validate_plane_windings(x: &PuncturedPlane, w: &WindingClass) -> Result<()> {
    if !w.hole_windings.is_empty() {
        return Err(Error::ShapeError(format!(
            "a punctured plane has no holes, but {} hole windings were given",
            w.hole_windings.len()
        )));
    }
    if w.puncture_windings.len() != x.count() {
        return Err(Error::ShapeError(format!(
            "{} windings do not match {} punctures",
            w.puncture_windings.len(),
            x.count()
        )));
    }
    Ok(())
}

enum RetryAction {
    FreshConstant,
    PerturbCoefficient,
}

enum CandidateOutcome {
    Accepted(MapPair),
    Rejected(String, RetryAction),
}

fn evaluate_candidate(
    p: &Polynomial,
    q: &Polynomial,
    q_roots: &[GaussianRational],
    g: &FactoredRational,
    second: &SecondComponent,
    x: &PuncturedPlane,
    w: &WindingClass,
    fiber: &Polynomial,
    a: &GaussianRational,
) -> Result<CandidateOutcome> {
    for root in q_roots {
        if p.eval(root).is_zero() {
            return Ok(CandidateOutcome::Rejected(
                "numerator_vanishes_at_pole".into(),
                RetryAction::FreshConstant,
            ));
        }
    }
    let f = RationalFunction::new(p.clone(), q.clone())?;
    let map = MapPair::new(f.clone(), second.clone())?;
    if !check_immersion(&map, x).passed() {
        return Ok(CandidateOutcome::Rejected(
            "immersion".into(),
            RetryAction::FreshConstant,
        ));
    }
    if !check_properness(&map, x).passed() {
        return Ok(CandidateOutcome::Rejected(
            "properness".into(),
            RetryAction::FreshConstant,
        ));
    }
    if !check_winding(&map, x, w).passed() {
        return Ok(CandidateOutcome::Rejected(
            "winding".into(),
            RetryAction::FreshConstant,
        ));
    }
    let sys = pair_system(&f, g)?;
    if !matches!(common_component(&sys), ComponentVerdict::Finite) {
        return Ok(CandidateOutcome::Rejected(
            "identification_finiteness".into(),
            RetryAction::FreshConstant,
        ));
    }
    if !fiber_avoids_branching(&f, fiber)? {
        return Ok(CandidateOutcome::Rejected(
            "fiber_branching".into(),
            RetryAction::PerturbCoefficient,
        ));
    }
    if !check_fiber_injectivity(&f, g, a)?.injective {
        return Ok(CandidateOutcome::Rejected(
            "fiber_injectivity".into(),
            RetryAction::PerturbCoefficient,
        ));
    }
    Ok(CandidateOutcome::Accepted(map))
}

fn draw_constant(rng: &mut SplitMix64) -> GaussianRational {
    let mut re = rng.signed(6);
    let im = rng.signed(6);
    let den = 1 + rng.below(4) as i64;
    if re == 0 && im == 0 {
        re = 1;
    }
    GaussianRational::new(
        BigRational::new(re.into(), den.into()),
        BigRational::new(im.into(), den.into()),
    )
}

fn small_real_shift(t: u32) -> GaussianRational {
    GaussianRational::new(
        BigRational::new(BigInt::one(), BigInt::from(10).pow(t)),
        BigRational::zero(),
    )
}

/// Builds a proper immersion in a nonzero winding class by a certified
/// perturbation search.
///
/// The second component is `g = ∏(z − a_j)^{k_j}` over the nonzero
/// windings. When every winding is nonzero the pair `(z, g)` is returned
/// directly. Otherwise the first component is `p/q` with `q` vanishing
/// exactly at the zero-winding punctures and `p = z^{deg q + 1} + β`;
/// candidates are re-certified in full, retrying with a fresh constant
/// term, or with a coefficient nudge of size `10^{-t}` when the fiber
/// checks are what failed. `q` and `g` are never perturbed.
pub fn build_nonnull_immersion(
    x: &PuncturedPlane,
    w: &WindingClass,
    seed: u64,
) -> Result<(MapPair, PerturbationLog)> {
    validate_plane_windings(x, w)?;
    if w.puncture_windings.iter().all(|&k| k == 0) {
        return Err(Error::WrongBranch(
            "every winding is zero; use the exponential construction".into(),
        ));
    }
    let mut factors = Vec::new();
    let mut q_roots = Vec::new();
    for (a, &k) in x.punctures().iter().zip(&w.puncture_windings) {
        if k != 0 {
            factors.push((a.clone(), k));
        } else {
            q_roots.push(a.clone());
        }
    }
    let g = FactoredRational::new(GaussianRational::one(), factors)?;
    let second = SecondComponent::Factored(g.clone());
    if q_roots.is_empty() {
        let map = MapPair::new(RationalFunction::z(), second)?;
        let log = PerturbationLog {
            seed,
            attempts: Vec::new(),
            final_map: map.clone(),
        };
        return Ok((map, log));
    }

    let q = Polynomial::from_roots(&q_roots);
    let deg_p = q_roots.len() + 1;
    let a = find_regular_value(&g, x, seed)?;
    let ge = g.expand();
    let fiber = &ge.numerator().clone() - &ge.denominator().scale(&a);

    let mut rng = SplitMix64::new(seed);
    let mut coeffs = vec![GaussianRational::zero(); deg_p + 1];
    coeffs[deg_p] = GaussianRational::one();
    coeffs[0] = draw_constant(&mut rng);
    let mut attempts = Vec::new();
    let mut t: u32 = 0;

    for _ in 0..64 {
        let p = Polynomial::new(coeffs.clone());
        match evaluate_candidate(&p, &q, &q_roots, &g, &second, x, w, &fiber, &a)? {
            CandidateOutcome::Accepted(map) => {
                let log = PerturbationLog {
                    seed,
                    attempts,
                    final_map: map.clone(),
                };
                return Ok((map, log));
            }
            CandidateOutcome::Rejected(check, action) => {
                let perturbation = match action {
                    RetryAction::FreshConstant => {
                        let beta = draw_constant(&mut rng);
                        coeffs[0] = beta.clone();
                        format!("constant term set to {beta}")
                    }
                    RetryAction::PerturbCoefficient => {
                        t += 1;
                        let idx = t as usize % deg_p;
                        coeffs[idx] = &coeffs[idx] + &small_real_shift(t);
                        format!("coefficient {idx} shifted by 10^-{t}")
                    }
                };
                attempts.push(PerturbationAttempt {
                    perturbation,
                    failed_check: check,
                });
            }
        }
    }
    Err(Error::SearchExhausted(format!(
        "no numerator candidate passed certification in 64 attempts (last failure: {})",
        attempts
            .last()
            .map(|a| a.failed_check.as_str())
            .unwrap_or("none")
    )))
}

/// Result of the closed-form embedding search on a punctured plane:
/// either an explicit map with the matched pattern index, or the
/// winding pattern lies outside the covered configurations.
#[derive(Debug, Clone)]
pub enum PlaneEmbedding {
    Covered { case: usize, map: MapPair },
    NotCovered { reason: String },
}

fn smallest_free_integer(x: &PuncturedPlane) -> GaussianRational {
    let mut k = 0i64;
    loop {
        let c = GaussianRational::from_int(k);
        if x.contains(&c) {
            return c;
        }
        k += 1;
    }
}

/// Matches the winding class against the four covered plane patterns
/// and returns the corresponding explicit embedding.
///
/// The patterns, after reordering punctures: (1) every winding nonzero;
/// (2) exactly one zero winding and nonzero total; (3) one +1, one −1,
/// the rest zero, with at least three punctures; (4) a single ±1 and
/// the rest zero, with at least three punctures.
pub fn build_embedding_plane(x: &PuncturedPlane, w: &WindingClass) -> Result<PlaneEmbedding> {
    validate_plane_windings(x, w)?;
    let n = x.count();
    if n == 0 {
        return Ok(PlaneEmbedding::NotCovered {
            reason: "the unpunctured plane carries no winding data".into(),
        });
    }
    let ks = &w.puncture_windings;
    let punctures = x.punctures();
    let zero_idx: Vec<usize> = (0..n).filter(|&j| ks[j] == 0).collect();

    if zero_idx.is_empty() {
        let factors = punctures
            .iter()
            .zip(ks.iter())
            .map(|(a, &k)| (a.clone(), k))
            .collect();
        let g = FactoredRational::new(GaussianRational::one(), factors)?;
        let map = MapPair::new(RationalFunction::z(), SecondComponent::Factored(g))?;
        return Ok(PlaneEmbedding::Covered { case: 1, map });
    }

    if n >= 2 && zero_idx.len() == 1 && ks.iter().sum::<i64>() != 0 {
        let pole = punctures[zero_idx[0]].clone();
        let factors = punctures
            .iter()
            .zip(ks.iter())
            .filter(|(_, &k)| k != 0)
            .map(|(a, &k)| (a.clone(), k))
            .collect();
        let g = FactoredRational::new(GaussianRational::one(), factors)?;
        let first = RationalFunction::new(Polynomial::one(), Polynomial::from_roots(&[pole]))?;
        let map = MapPair::new(first, SecondComponent::Factored(g))?;
        return Ok(PlaneEmbedding::Covered { case: 2, map });
    }

    if n >= 3 && zero_idx.len() == n - 2 {
        let plus: Vec<usize> = (0..n).filter(|&j| ks[j] == 1).collect();
        let minus: Vec<usize> = (0..n).filter(|&j| ks[j] == -1).collect();
        if plus.len() == 1 && minus.len() == 1 {
            let c = smallest_free_integer(x);
            let rest: Vec<GaussianRational> = zero_idx
                .iter()
                .map(|&j| punctures[j].clone())
                .collect();
            let first = RationalFunction::new(
                Polynomial::from_roots(&vec![c; n - 1]),
                Polynomial::from_roots(&rest),
            )?;
            let g = FactoredRational::new(
                GaussianRational::one(),
                vec![
                    (punctures[plus[0]].clone(), 1),
                    (punctures[minus[0]].clone(), -1),
                ],
            )?;
            let map = MapPair::new(first, SecondComponent::Factored(g))?;
            return Ok(PlaneEmbedding::Covered { case: 3, map });
        }
    }

    if n >= 3 && zero_idx.len() == n - 1 {
        let j0 = (0..n).find(|&j| ks[j] != 0).expect("one nonzero winding");
        if ks[j0] == 1 || ks[j0] == -1 {
            let rest: Vec<GaussianRational> = zero_idx
                .iter()
                .map(|&j| punctures[j].clone())
                .collect();
            let first =
                RationalFunction::new(Polynomial::one(), Polynomial::from_roots(&rest))?;
            let g = FactoredRational::new(
                GaussianRational::one(),
                vec![(punctures[j0].clone(), ks[j0])],
            )?;
            let map = MapPair::new(first, SecondComponent::Factored(g))?;
            return Ok(PlaneEmbedding::Covered { case: 4, map });
        }
    }

    Ok(PlaneEmbedding::NotCovered {
        reason: "the winding pattern matches none of the four covered configurations".into(),
    })
}

/// Result of the closed-form embedding search on a punctured circular
/// domain: the plane reduction, the explicit map, and the projection
/// certificate for the matched pattern, or NotCovered.
#[derive(Debug, Clone)]
pub enum CircularEmbedding {
    Covered {
        case: usize,
        reduction: ReductionResult,
        map: MapPair,
        certificate: ProjectionCertificate,
    },
    NotCovered {
        reason: String,
    },
}

fn curve_name(index: usize) -> String {
    if index == 0 {
        "unit_circle".into()
    } else {
        format!("hole_{index}")
    }
}

fn escape_via(
    markers: &[GaussianRational],
    component: &str,
    order_at: impl Fn(&GaussianRational) -> i64,
) -> Vec<EscapeWitness> {
    markers
        .iter()
        .enumerate()
        .map(|(i, b)| EscapeWitness {
            curve: curve_name(i),
            component: component.into(),
            order: order_at(b),
        })
        .collect()
}

fn reduction_second(reduction: &ReductionResult) -> Result<FactoredRational> {
    let factors = reduction
        .plane
        .punctures()
        .iter()
        .zip(reduction.windings.puncture_windings.iter())
        .filter(|(_, &k)| k != 0)
        .map(|(a, &k)| (a.clone(), k))
        .collect();
    FactoredRational::new(GaussianRational::one(), factors)
}

fn certify_or_remediate(
    g: FactoredRational,
    markers: &[GaussianRational],
) -> Result<(FactoredRational, Option<GaussianRational>, ThetaCertificate)> {
    let cert = theta_certificate(&g, markers)?;
    if cert.pass {
        return Ok((g, None, cert));
    }
    let (repaired, d, cert) = remediate_thetas(&g, markers)?;
    Ok((repaired, Some(d), cert))
}

fn noncollinearity_witnesses(
    d: &GaussianRational,
    markers: &[GaussianRational],
) -> Vec<String> {
    let mut out = Vec::new();
    for i in 0..markers.len() {
        for j in i + 1..markers.len() {
            let value = &(d - &markers[i]) * &(&markers[j] - &markers[i]).conj();
            out.push(format!(
                "Im((d - ({})) * conj(({}) - ({}))) = {}",
                markers[i], markers[j], markers[i], value.im
            ));
        }
    }
    out
}

/// Matches the winding class against the six covered circular patterns
/// and returns the reduction, the explicit map, and a passed projection
/// certificate.
///
/// Patterns (1) and (2) take the plane formula on the reduced domain and
/// certify escape-direction separation at the boundary markers, adding a
/// far zero to the second component when the initial certificate fails.
/// Patterns (3)-(5) place a generic far point in the first component's
/// numerator; pattern (6) splits the two boundary curves between the two
/// ends of the punctured line.
pub fn build_embedding_circular(
    domain: &PuncturedCircularDomain,
    w: &WindingClass,
) -> Result<CircularEmbedding> {
    let reduction = reduce_to_plane(domain, w)?;
    let n = domain.punctures().len();
    let m = domain.holes().len();
    if n == 0 {
        return Ok(CircularEmbedding::NotCovered {
            reason: "the covered patterns all need at least one puncture".into(),
        });
    }
    let ks = &w.puncture_windings;
    let ss = &w.hole_windings;
    let punctures = domain.punctures();
    let markers: Vec<GaussianRational> = std::iter::once(GaussianRational::i())
        .chain(domain.holes().iter().map(|h| h.marker()))
        .collect();
    let zero_idx: Vec<usize> = (0..n).filter(|&j| ks[j] == 0).collect();
    let all_s_zero = ss.iter().all(|&s| s == 0);

    if zero_idx.is_empty() {
        let g = reduction_second(&reduction)?;
        let (g, chosen_d, theta) = certify_or_remediate(g, &markers)?;
        let escape = escape_via(&markers, "second", |b| g.order_at(b));
        let map = MapPair::new(RationalFunction::z(), SecondComponent::Factored(g))?;
        let certificate = ProjectionCertificate {
            flavor: ProjectionFlavor::CStar,
            pattern: "distinct_escape_directions".into(),
            theta: Some(theta),
            chosen_d,
            noncollinearity: Vec::new(),
            escape,
            verdict: true,
        };
        return Ok(CircularEmbedding::Covered {
            case: 1,
            reduction,
            map,
            certificate,
        });
    }

    if zero_idx.len() == 1 {
        let pole = punctures[zero_idx[0]].clone();
        let g = reduction_second(&reduction)?;
        let (g, chosen_d, theta) = certify_or_remediate(g, &markers)?;
        let escape = escape_via(&markers, "second", |b| g.order_at(b));
        let first =
            RationalFunction::new(Polynomial::one(), Polynomial::from_roots(&[pole]))?;
        let map = MapPair::new(first, SecondComponent::Factored(g))?;
        let certificate = ProjectionCertificate {
            flavor: ProjectionFlavor::CStar,
            pattern: "distinct_escape_directions".into(),
            theta: Some(theta),
            chosen_d,
            noncollinearity: Vec::new(),
            escape,
            verdict: true,
        };
        return Ok(CircularEmbedding::Covered {
            case: 2,
            reduction,
            map,
            certificate,
        });
    }

    let generic_first = |den_roots: Vec<GaussianRational>| -> Result<(RationalFunction, GaussianRational)> {
        let d = pick_generic_d(&markers, 8, reduction.plane.punctures())?;
        let first = RationalFunction::new(
            Polynomial::from_roots(&[d.clone()]),
            Polynomial::from_roots(&den_roots),
        )?;
        Ok((first, d))
    };

    if n >= 3 && zero_idx.len() == n - 2 && all_s_zero {
        let plus: Vec<usize> = (0..n).filter(|&j| ks[j] == 1).collect();
        let minus: Vec<usize> = (0..n).filter(|&j| ks[j] == -1).collect();
        if plus.len() == 1 && minus.len() == 1 {
            let mut den_roots: Vec<GaussianRational> =
                zero_idx.iter().map(|&j| punctures[j].clone()).collect();
            den_roots.extend(markers.iter().cloned());
            let (first, d) = generic_first(den_roots)?;
            let g = FactoredRational::new(
                GaussianRational::one(),
                vec![
                    (punctures[plus[0]].clone(), 1),
                    (punctures[minus[0]].clone(), -1),
                ],
            )?;
            let escape = escape_via(&markers, "first", |b| first.order_at(b));
            let map = MapPair::new(first, SecondComponent::Factored(g))?;
            let certificate = ProjectionCertificate {
                flavor: ProjectionFlavor::C,
                pattern: "generic_direction".into(),
                theta: None,
                chosen_d: Some(d.clone()),
                noncollinearity: noncollinearity_witnesses(&d, &markers),
                escape,
                verdict: true,
            };
            return Ok(CircularEmbedding::Covered {
                case: 3,
                reduction,
                map,
                certificate,
            });
        }
    }

    if n >= 3 && zero_idx.len() == n - 1 && all_s_zero {
        let j0 = (0..n).find(|&j| ks[j] != 0).expect("one nonzero winding");
        if ks[j0] == 1 || ks[j0] == -1 {
            let mut den_roots: Vec<GaussianRational> =
                zero_idx.iter().map(|&j| punctures[j].clone()).collect();
            den_roots.extend(markers.iter().cloned());
            let (first, d) = generic_first(den_roots)?;
            let g = FactoredRational::new(
                GaussianRational::one(),
                vec![(punctures[j0].clone(), ks[j0])],
            )?;
            let escape = escape_via(&markers, "first", |b| first.order_at(b));
            let map = MapPair::new(first, SecondComponent::Factored(g))?;
            let certificate = ProjectionCertificate {
                flavor: ProjectionFlavor::C,
                pattern: "generic_direction".into(),
                theta: None,
                chosen_d: Some(d.clone()),
                noncollinearity: noncollinearity_witnesses(&d, &markers),
                escape,
                verdict: true,
            };
            return Ok(CircularEmbedding::Covered {
                case: 4,
                reduction,
                map,
                certificate,
            });
        }
    }

    if n >= 2 && zero_idx.len() == n && all_s_zero {
        let mut den_roots: Vec<GaussianRational> = punctures.to_vec();
        den_roots.extend(markers.iter().cloned());
        let (first, d) = generic_first(den_roots)?;
        let g = FactoredRational::new(
            GaussianRational::one(),
            vec![(GaussianRational::from_int(2), 1)],
        )?;
        let escape = escape_via(&markers, "first", |b| first.order_at(b));
        let map = MapPair::new(first, SecondComponent::Factored(g))?;
        let certificate = ProjectionCertificate {
            flavor: ProjectionFlavor::C,
            pattern: "generic_direction".into(),
            theta: None,
            chosen_d: Some(d.clone()),
            noncollinearity: noncollinearity_witnesses(&d, &markers),
            escape,
            verdict: true,
        };
        return Ok(CircularEmbedding::Covered {
            case: 5,
            reduction,
            map,
            certificate,
        });
    }

    if n >= 2 && m == 1 && zero_idx.len() == n && (ss[0] == 1 || ss[0] == -1) {
        let s = ss[0];
        let g = FactoredRational::new(
            GaussianRational::one(),
            vec![(markers[1].clone(), s), (markers[0].clone(), -s)],
        )?;
        let escape = escape_via(&markers, "second", |b| g.order_at(b));
        let first = RationalFunction::new(
            Polynomial::one(),
            Polynomial::from_roots(punctures),
        )?;
        let map = MapPair::new(first, SecondComponent::Factored(g))?;
        let certificate = ProjectionCertificate {
            flavor: ProjectionFlavor::CStar,
            pattern: "zero_infinity_split".into(),
            theta: None,
            chosen_d: None,
            noncollinearity: Vec::new(),
            escape,
            verdict: true,
        };
        return Ok(CircularEmbedding::Covered {
            case: 6,
            reduction,
            map,
            certificate,
        });
    }

    Ok(CircularEmbedding::NotCovered {
        reason: "the winding pattern matches none of the six covered configurations".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domains::Hole;
    use crate::maps::{classify_map, classify_on_circular};
    use crate::verifiers::check_injective_by_form;

    fn gi(re: i64, im: i64) -> GaussianRational {
        GaussianRational::from_parts(re, im)
    }

    fn plane(points: &[(i64, i64)]) -> PuncturedPlane {
        PuncturedPlane::new(points.iter().map(|&(re, im)| gi(re, im)).collect())
    }

    fn ipoly(coeffs: &[i64]) -> Polynomial {
        Polynomial::new(coeffs.iter().map(|&c| GaussianRational::from_int(c)).collect())
    }

    #[test]
    fn exponential_construction_matches_closed_forms() {
        let map = build_null_immersion(&plane(&[(0, 0)]), &gi(1, 0)).unwrap();
        assert_eq!(map.first.numerator(), &ipoly(&[1, -2, 1]));
        assert_eq!(map.first.denominator(), &ipoly(&[0, 1]));
        assert!(matches!(
            &map.second,
            SecondComponent::ExpLinear(l) if *l == ExpCoeff::one()
        ));

        let map2 = build_null_immersion(&plane(&[(0, 0), (1, 0)]), &gi(2, 0)).unwrap();
        assert_eq!(map2.first.numerator(), &ipoly(&[-8, 12, -6, 1]));
        assert_eq!(map2.first.denominator(), &ipoly(&[0, -1, 1]));

        assert!(matches!(
            build_null_immersion(&plane(&[(0, 0)]), &gi(0, 0)),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            build_null_immersion(&plane(&[]), &gi(1, 0)),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn all_nonzero_windings_take_the_direct_pair() {
        let x = plane(&[(0, 0), (1, 0)]);
        let w = WindingClass::for_plane(vec![1, 1]);
        let (map, log) = build_nonnull_immersion(&x, &w, 0).unwrap();
        assert!(map.first.is_identity());
        let g = map.second.as_factored().unwrap();
        assert_eq!(g.factors(), &[(gi(0, 0), 1), (gi(1, 0), 1)]);
        assert!(log.attempts.is_empty());
        assert_eq!(log.final_map, map);
    }

    #[test]
    fn single_zero_winding_guards_its_pole() {
        let x = plane(&[(0, 0), (1, 0)]);
        let w = WindingClass::for_plane(vec![1, 0]);
        let (map, _) = build_nonnull_immersion(&x, &w, 0).unwrap();
        assert_eq!(map.first.denominator(), &ipoly(&[-1, 1]));
        assert_eq!(map.first.numerator().degree(), Some(2));
        assert!(!map.first.numerator().eval(&gi(1, 0)).is_zero());
        let g = map.second.as_factored().unwrap();
        assert_eq!(g.factors(), &[(gi(0, 0), 1)]);
        assert!(check_immersion(&map, &x).passed());
        assert!(check_properness(&map, &x).passed());
        assert_eq!(classify_map(&map, &x).unwrap(), w);
    }

    #[test]
    fn two_zero_windings_build_a_cubic_over_a_quadratic() {
        let x = plane(&[(0, 0), (1, 0), (-1, 0)]);
        let w = WindingClass::for_plane(vec![2, 0, 0]);
        let (map, _) = build_nonnull_immersion(&x, &w, 0).unwrap();
        assert_eq!(map.first.denominator(), &ipoly(&[-1, 0, 1]));
        assert_eq!(map.first.numerator().degree(), Some(3));
        assert_eq!(
            map.second.as_factored().unwrap().factors(),
            &[(gi(0, 0), 2)]
        );
        assert!(check_immersion(&map, &x).passed());
        assert!(check_properness(&map, &x).passed());
        assert_eq!(classify_map(&map, &x).unwrap(), w);
        let sys = pair_system(&map.first, map.second.as_factored().unwrap()).unwrap();
        assert!(matches!(common_component(&sys), ComponentVerdict::Finite));
    }

    #[test]
    fn perturbation_search_is_deterministic() {
        let x = plane(&[(0, 0), (1, 0), (-1, 0)]);
        let w = WindingClass::for_plane(vec![2, 0, 0]);
        let (map_a, log_a) = build_nonnull_immersion(&x, &w, 17).unwrap();
        let (map_b, log_b) = build_nonnull_immersion(&x, &w, 17).unwrap();
        assert_eq!(map_a, map_b);
        assert_eq!(log_a, log_b);
    }

    #[test]
    fn zero_class_and_bad_shapes_are_rejected() {
        let x = plane(&[(0, 0), (1, 0)]);
        assert!(matches!(
            build_nonnull_immersion(&x, &WindingClass::for_plane(vec![0, 0]), 0),
            Err(Error::WrongBranch(_))
        ));
        assert!(matches!(
            build_nonnull_immersion(&x, &WindingClass::for_plane(vec![1]), 0),
            Err(Error::ShapeError(_))
        ));
        assert!(matches!(
            build_nonnull_immersion(&x, &WindingClass::new(vec![1, 1], vec![1]), 0),
            Err(Error::ShapeError(_))
        ));
    }

    #[test]
    fn plane_patterns_produce_the_expected_formulas() {
        let x2 = plane(&[(0, 0), (1, 0)]);
        match build_embedding_plane(&x2, &WindingClass::for_plane(vec![2, -1])).unwrap() {
            PlaneEmbedding::Covered { case, map } => {
                assert_eq!(case, 1);
                assert!(map.first.is_identity());
                assert_eq!(
                    map.second.as_factored().unwrap().factors(),
                    &[(gi(0, 0), 2), (gi(1, 0), -1)]
                );
                assert!(check_injective_by_form(&map).passed());
            }
            other => panic!("expected coverage, got {other:?}"),
        }

        match build_embedding_plane(&x2, &WindingClass::for_plane(vec![1, 0])).unwrap() {
            PlaneEmbedding::Covered { case, map } => {
                assert_eq!(case, 2);
                assert_eq!(map.first.numerator(), &ipoly(&[1]));
                assert_eq!(map.first.denominator(), &ipoly(&[-1, 1]));
                assert_eq!(
                    map.second.as_factored().unwrap().factors(),
                    &[(gi(0, 0), 1)]
                );
            }
            other => panic!("expected coverage, got {other:?}"),
        }

        let x3 = plane(&[(0, 0), (1, 0), (2, 0)]);
        match build_embedding_plane(&x3, &WindingClass::for_plane(vec![1, -1, 0])).unwrap() {
            PlaneEmbedding::Covered { case, map } => {
                assert_eq!(case, 3);
                assert_eq!(map.first.numerator(), &ipoly(&[9, -6, 1]));
                assert_eq!(map.first.denominator(), &ipoly(&[-2, 1]));
                assert_eq!(
                    map.second.as_factored().unwrap().factors(),
                    &[(gi(0, 0), 1), (gi(1, 0), -1)]
                );
            }
            other => panic!("expected coverage, got {other:?}"),
        }

        match build_embedding_plane(&x3, &WindingClass::for_plane(vec![0, -1, 0])).unwrap() {
            PlaneEmbedding::Covered { case, map } => {
                assert_eq!(case, 4);
                assert_eq!(map.first.denominator(), &ipoly(&[0, -2, 1]));
                assert_eq!(
                    map.second.as_factored().unwrap().factors(),
                    &[(gi(1, 0), -1)]
                );
            }
            other => panic!("expected coverage, got {other:?}"),
        }

        assert!(matches!(
            build_embedding_plane(&plane(&[(0, 0)]), &WindingClass::for_plane(vec![0])).unwrap(),
            PlaneEmbedding::NotCovered { .. }
        ));
        assert!(matches!(
            build_embedding_plane(&x3, &WindingClass::for_plane(vec![2, 0, 0])).unwrap(),
            PlaneEmbedding::NotCovered { .. }
        ));
        assert!(matches!(
            build_embedding_plane(&plane(&[]), &WindingClass::for_plane(vec![])).unwrap(),
            PlaneEmbedding::NotCovered { .. }
        ));
    }

    fn half() -> BigRational {
        BigRational::new(1.into(), 2.into())
    }

    #[test]
    fn circular_pattern_five_places_a_far_point() {
        let domain = PuncturedCircularDomain::new(
            Vec::new(),
            vec![GaussianRational::zero(), GaussianRational::from_ratio(1, 2)],
        );
        let w = WindingClass::new(vec![0, 0], Vec::new());
        match build_embedding_circular(&domain, &w).unwrap() {
            CircularEmbedding::Covered {
                case,
                map,
                certificate,
                ..
            } => {
                assert_eq!(case, 5);
                assert_eq!(map.first.numerator(), &ipoly(&[-8, 1]));
                assert_eq!(
                    map.first.denominator(),
                    &Polynomial::from_roots(&[
                        GaussianRational::zero(),
                        GaussianRational::from_ratio(1, 2),
                        GaussianRational::i()
                    ])
                );
                assert_eq!(
                    map.second.as_factored().unwrap().factors(),
                    &[(gi(2, 0), 1)]
                );
                assert_eq!(certificate.flavor, ProjectionFlavor::C);
                assert_eq!(certificate.chosen_d, Some(gi(8, 0)));
                assert!(certificate.verdict);
                assert_eq!(certificate.escape.len(), 1);
                assert_eq!(certificate.escape[0].curve, "unit_circle");
                assert_eq!(certificate.escape[0].order, -1);
                assert_eq!(classify_on_circular(&map, &domain).unwrap(), w);
                assert!(check_injective_by_form(&map).passed());
            }
            other => panic!("expected coverage, got {other:?}"),
        }
    }

    #[test]
    fn circular_pattern_six_splits_the_two_ends() {
        let domain = PuncturedCircularDomain::new(
            vec![Hole::new(GaussianRational::zero(), BigRational::new(1.into(), 4.into()))],
            vec![GaussianRational::from_ratio(1, 2), GaussianRational::from_ratio(-1, 2)],
        );
        let w = WindingClass::new(vec![0, 0], vec![1]);
        match build_embedding_circular(&domain, &w).unwrap() {
            CircularEmbedding::Covered {
                case,
                map,
                certificate,
                ..
            } => {
                assert_eq!(case, 6);
                let b1 = GaussianRational::new(
                    BigRational::zero(),
                    BigRational::new(1.into(), 4.into()),
                );
                assert_eq!(
                    map.second.as_factored().unwrap().factors(),
                    &[(b1, 1), (gi(0, 1), -1)]
                );
                assert_eq!(certificate.pattern, "zero_infinity_split");
                assert!(certificate.theta.is_none());
                assert_eq!(certificate.escape[0].order, -1);
                assert_eq!(certificate.escape[1].order, 1);
                assert_eq!(classify_on_circular(&map, &domain).unwrap(), w);
                assert!(check_injective_by_form(&map).passed());
            }
            other => panic!("expected coverage, got {other:?}"),
        }
    }

    #[test]
    fn circular_pattern_one_repairs_collinear_directions() {
        let domain = PuncturedCircularDomain::new(
            vec![Hole::new(GaussianRational::zero(), half())],
            vec![GaussianRational::new(
                BigRational::zero(),
                BigRational::new((-3).into(), 4.into()),
            )],
        );
        let w = WindingClass::new(vec![1], vec![-1]);
        match build_embedding_circular(&domain, &w).unwrap() {
            CircularEmbedding::Covered {
                case,
                map,
                certificate,
                ..
            } => {
                assert_eq!(case, 1);
                assert!(map.first.is_identity());
                let theta = certificate.theta.as_ref().unwrap();
                assert!(theta.pass);
                let d = certificate.chosen_d.as_ref().expect("repair engaged");
                let g = map.second.as_factored().unwrap();
                assert_eq!(g.order_at(d), 1);
                assert_eq!(classify_on_circular(&map, &domain).unwrap(), w);
            }
            other => panic!("expected coverage, got {other:?}"),
        }
    }

    #[test]
    fn circular_pattern_two_covers_a_single_zero_winding() {
        let domain = PuncturedCircularDomain::new(
            Vec::new(),
            vec![GaussianRational::from_ratio(1, 2)],
        );
        let w = WindingClass::new(vec![0], Vec::new());
        match build_embedding_circular(&domain, &w).unwrap() {
            CircularEmbedding::Covered {
                case,
                map,
                certificate,
                ..
            } => {
                assert_eq!(case, 2);
                assert_eq!(
                    map.first.denominator(),
                    &Polynomial::from_roots(&[GaussianRational::from_ratio(1, 2)])
                );
                assert_eq!(
                    map.second.as_factored().unwrap().factors(),
                    &[(gi(0, 1), -1)]
                );
                let theta = certificate.theta.as_ref().unwrap();
                assert!(theta.pass);
                assert!(certificate.chosen_d.is_none());
                assert_eq!(classify_on_circular(&map, &domain).unwrap(), w);
            }
            other => panic!("expected coverage, got {other:?}"),
        }
    }

    #[test]
    fn circular_uncovered_patterns_are_reported_as_data() {
        let domain = PuncturedCircularDomain::new(
            vec![Hole::new(GaussianRational::zero(), BigRational::new(1.into(), 4.into()))],
            vec![GaussianRational::from_ratio(1, 2), GaussianRational::from_ratio(-1, 2)],
        );
        let w = WindingClass::new(vec![0, 0], vec![2]);
        assert!(matches!(
            build_embedding_circular(&domain, &w).unwrap(),
            CircularEmbedding::NotCovered { .. }
        ));
        let empty = PuncturedCircularDomain::new(Vec::new(), Vec::new());
        assert!(matches!(
            build_embedding_circular(&empty, &WindingClass::new(vec![], vec![])).unwrap(),
            CircularEmbedding::NotCovered { .. }
        ));
    }
}
