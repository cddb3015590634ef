//! Exact certificates: immersion, properness, winding agreement,
//! injectivity by form, and the guards for maps of the punctured plane ℂ*.
//!
//! Every verdict is decided by exact arithmetic over ℚ(i). Numerics appear
//! only in witnesses, where certified root enclosures make a failure
//! re-checkable; they never influence pass or fail.

use serde::Serialize;

use crate::algebra::{poly_gcd, GaussianRational, Polynomial, RationalFunction};
use crate::domains::{PuncturedCircularDomain, PuncturedPlane, WindingClass};
use crate::error::{Error, Result};
use crate::maps::{classify_map, classify_on_circular, MapPair, SecondComponent};
use crate::numeric::{find_roots, Dyadic};

/// Which property a certificate speaks about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateKind {
    Immersion,
    Properness,
    Winding,
    InjectiveByForm,
    Guard,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Warn,
}

/// Outcome tag carried by guard certificates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GuardOutcome {
    /// The first component is proper on ℂ*, so no injective holomorphic
    /// map (f, e^g) of ℂ* into ℂ×ℂ* has this first component.
    NotInjectivePair,
    /// A nontrivial self-map of ℂ* fixes f, ruling out injectivity of any
    /// pair (f, e^g).
    NoNullInjectionWithThisF,
    /// The candidate self-map does not fix f.
    NotASymmetry,
    /// The candidate self-map is the identity.
    Trivial,
}

/// Structured, re-checkable evidence attached to a verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Witness {
    /// An exact point where the certified property fails.
    Point { value: GaussianRational },
    /// A certified enclosure of a non-rational witness point.
    ApproximatePoint {
        re: String,
        im: String,
        radius: String,
    },
    /// The point at infinity.
    AtInfinity,
    /// A component rendered in infix form.
    Form { text: String },
    /// A polynomial whose roots witness the failure.
    WitnessPolynomial { text: String },
    /// Computed versus requested winding numbers.
    WindingMismatch {
        computed_punctures: Vec<i64>,
        computed_holes: Vec<i64>,
        expected_punctures: Vec<i64>,
        expected_holes: Vec<i64>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub verdict: Verdict,
    pub witnesses: Vec<Witness>,
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub guard_outcome: Option<GuardOutcome>,
}

impl Certificate {
    fn pass(kind: CertificateKind) -> Self {
        Certificate {
            kind,
            verdict: Verdict::Pass,
            witnesses: Vec::new(),
            notes: Vec::new(),
            guard_outcome: None,
        }
    }

    fn fail(kind: CertificateKind, witnesses: Vec<Witness>) -> Self {
        Certificate {
            kind,
            verdict: Verdict::Fail,
            witnesses,
            notes: Vec::new(),
            guard_outcome: None,
        }
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// Order of `f` at a finite point, with the zero function and constants
/// treated as order 0 so they never count as escaping.
fn first_order_at(f: &RationalFunction, a: &GaussianRational) -> i64 {
    if f.is_zero() {
        0
    } else {
        f.order_at(a)
    }
}

fn first_order_at_infinity(f: &RationalFunction) -> i64 {
    if f.is_zero() {
        0
    } else {
        f.order_at_infinity()
    }
}

/// Appends certified enclosures of the roots of `h` to `witnesses`; when
/// isolation fails, records that in `notes` instead. The polynomial itself
/// is always attached, so the verdict never depends on the numerics.
fn attach_root_witnesses(h: &Polynomial, witnesses: &mut Vec<Witness>, notes: &mut Vec<String>) {
    witnesses.push(Witness::WitnessPolynomial { text: h.to_string() });
    let tol = Dyadic::from_pow2(-40);
    match find_roots(h, &tol, 4096) {
        Ok(roots) => {
            for r in roots {
                witnesses.push(Witness::ApproximatePoint {
                    re: r.ball.re.to_decimal_string(15),
                    im: r.ball.im.to_decimal_string(15),
                    radius: r.ball.rad.to_decimal_string(15),
                });
            }
        }
        Err(e) => notes.push(format!("witness roots not isolated: {e}")),
    }
}

/// Certifies that the pair has no common critical point in the domain.
///
/// For a rational first component f = p/q the critical numerator is
/// p′q − pq′; for a factored second component g the critical numerator is
/// the numerator of g′/g. The pair fails to immerse exactly where both
/// vanish, so the certificate passes iff their gcd has no root off the
/// punctures, decided by exact division.
pub fn check_immersion(map: &MapPair, x: &PuncturedPlane) -> Certificate {
    let n_f = map.first.derivative_numerator();
    let g = match &map.second {
        SecondComponent::ExpLinear(_) => {
            return Certificate::pass(CertificateKind::Immersion)
                .with_note("exponential second component has nonvanishing derivative");
        }
        SecondComponent::Factored(g) => g,
    };
    let n_g = g.log_derivative_numerator();
    if n_f.is_zero() && n_g.is_zero() {
        return Certificate::fail(CertificateKind::Immersion, Vec::new())
            .with_note("both components are constant, so the differential vanishes everywhere");
    }
    let mut h = poly_gcd(&n_f, &n_g);
    for a in x.punctures() {
        let m = h.order_at(a);
        for _ in 0..m {
            h = h.div_linear(a).0;
        }
    }
    if h.degree() == Some(0) {
        return Certificate::pass(CertificateKind::Immersion);
    }
    let mut witnesses = Vec::new();
    let mut notes =
        vec!["common critical points inside the domain at the roots of the attached polynomial"
            .to_string()];
    attach_root_witnesses(&h, &mut witnesses, &mut notes);
    Certificate {
        kind: CertificateKind::Immersion,
        verdict: Verdict::Fail,
        witnesses,
        notes,
        guard_outcome: None,
    }
}

/// Certifies boundary escape: at every puncture the first component must
/// have a pole or the second a zero or pole, and the same dichotomy must
/// hold at infinity, where the order of a factored second component is
/// minus the sum of its multiplicities.
///
/// An exponential second component is bounded along some directions into
/// any finite puncture and along some directions to infinity, so it is
/// never accepted as the escaping component; with such a second component
/// the first must carry a pole at every puncture and at infinity.
pub fn check_properness(map: &MapPair, x: &PuncturedPlane) -> Certificate {
    let second_order_at = |a: &GaussianRational| -> i64 {
        match &map.second {
            SecondComponent::Factored(g) => g.order_at(a),
            SecondComponent::ExpLinear(_) => 0,
        }
    };
    let mut witnesses = Vec::new();
    for a in x.punctures() {
        if first_order_at(&map.first, a) >= 0 && second_order_at(a) == 0 {
            witnesses.push(Witness::Point { value: a.clone() });
        }
    }
    let second_escapes_at_infinity = match &map.second {
        SecondComponent::Factored(g) => g.order_at_infinity() != 0,
        SecondComponent::ExpLinear(_) => false,
    };
    if first_order_at_infinity(&map.first) >= 0 && !second_escapes_at_infinity {
        witnesses.push(Witness::AtInfinity);
    }
    if witnesses.is_empty() {
        return Certificate::pass(CertificateKind::Properness);
    }
    let mut cert = Certificate::fail(CertificateKind::Properness, witnesses);
    if matches!(map.second, SecondComponent::ExpLinear(_)) {
        cert = cert.with_note(
            "exponential second component is bounded along some directions, so escape must come from the first component",
        );
    }
    cert
}

/// Certifies that the classified winding numbers equal the requested ones.
pub fn check_winding(map: &MapPair, x: &PuncturedPlane, expected: &WindingClass) -> Certificate {
    match classify_map(map, x) {
        Ok(w) if w == *expected => Certificate::pass(CertificateKind::Winding),
        Ok(w) => Certificate::fail(
            CertificateKind::Winding,
            vec![Witness::WindingMismatch {
                computed_punctures: w.puncture_windings,
                computed_holes: w.hole_windings,
                expected_punctures: expected.puncture_windings.clone(),
                expected_holes: expected.hole_windings.clone(),
            }],
        ),
        Err(e) => Certificate::fail(CertificateKind::Winding, Vec::new())
            .with_note(format!("classification failed: {e}")),
    }
}

/// Winding agreement on a punctured circular domain, holes included.
pub fn check_winding_circular(
    map: &MapPair,
    domain: &PuncturedCircularDomain,
    expected: &WindingClass,
) -> Certificate {
    match classify_on_circular(map, domain) {
        Ok(w) if w == *expected => Certificate::pass(CertificateKind::Winding),
        Ok(w) => Certificate::fail(
            CertificateKind::Winding,
            vec![Witness::WindingMismatch {
                computed_punctures: w.puncture_windings,
                computed_holes: w.hole_windings,
                expected_punctures: expected.puncture_windings.clone(),
                expected_holes: expected.hole_windings.clone(),
            }],
        ),
        Err(e) => Certificate::fail(CertificateKind::Winding, Vec::new())
            .with_note(format!("classification failed: {e}")),
    }
}

/// True for a nonconstant rational function with numerator and denominator
/// both of degree at most one. Such a function is a Möbius map, hence
/// injective on its whole domain of definition.
fn is_moebius(f: &RationalFunction) -> bool {
    if f.is_zero() || f.is_constant() {
        return false;
    }
    f.numerator().degree().unwrap_or(0) <= 1 && f.denominator().degree().unwrap_or(0) <= 1
}

/// Passes iff some component is injective for syntactic reasons: a Möbius
/// map (affine maps and (z−a)^{±1} included). The exponential of a linear
/// map is periodic and never qualifies.
pub fn check_injective_by_form(map: &MapPair) -> Certificate {
    if is_moebius(&map.first) {
        return Certificate::pass(CertificateKind::InjectiveByForm)
            .with_note("first component is a Möbius map");
    }
    let second_ok = match &map.second {
        SecondComponent::Factored(g) => is_moebius(&g.expand()),
        SecondComponent::ExpLinear(_) => false,
    };
    if second_ok {
        return Certificate::pass(CertificateKind::InjectiveByForm)
            .with_note("second component is a Möbius map");
    }
    let mut cert = Certificate::fail(
        CertificateKind::InjectiveByForm,
        vec![
            Witness::Form {
                text: map.first.to_string(),
            },
            Witness::Form {
                text: map.second.to_string(),
            },
        ],
    );
    if matches!(map.second, SecondComponent::ExpLinear(_)) {
        cert = cert.with_note("exponential second component is periodic, hence not injective");
    }
    cert
}

/// True when the polynomial is a single monomial c·z^k with c ≠ 0.
fn is_monomial(p: &Polynomial) -> bool {
    p.coeffs().iter().filter(|c| !c.is_zero()).count() == 1
}

/// Guard for first components on ℂ*: if f has poles at both 0 and ∞ it is
/// proper on ℂ*, and no injective holomorphic map (f, e^g) into ℂ×ℂ* can
/// have this first component. Otherwise the guard passes with the reminder
/// that a proper injective pair needs an essential singularity in f.
/// A pole away from 0 and ∞ means f is not a map of ℂ* at all; that is
/// reported as a warning, not a verdict.
pub fn guard_not_proper_first(f: &RationalFunction) -> Certificate {
    if !f.is_zero() && !is_monomial(f.denominator()) {
        return Certificate {
            kind: CertificateKind::Guard,
            verdict: Verdict::Warn,
            witnesses: vec![Witness::Form { text: f.to_string() }],
            notes: vec![
                "first component has a pole away from 0 and infinity, so it is not holomorphic on the punctured plane"
                    .to_string(),
            ],
            guard_outcome: None,
        };
    }
    let zero = GaussianRational::zero();
    let proper = first_order_at(f, &zero) < 0 && first_order_at_infinity(f) < 0;
    if proper {
        return Certificate {
            kind: CertificateKind::Guard,
            verdict: Verdict::Fail,
            witnesses: vec![Witness::Form { text: f.to_string() }],
            notes: vec![
                "f is proper on the punctured plane: no injective holomorphic pair (f, exp(g)) into CxC* exists"
                    .to_string(),
            ],
            guard_outcome: Some(GuardOutcome::NotInjectivePair),
        };
    }
    Certificate::pass(CertificateKind::Guard).with_note(
        "f is not proper on the punctured plane; a proper injective pair (f, exp(g)) requires an essential singularity of f at 0 or infinity",
    )
}

/// Guard for symmetries of the first component: `sigma` must be a self-map
/// of ℂ* (zeros and poles only at 0 and ∞). If σ is the identity the test
/// is trivial; if f∘σ = f exactly with σ ≠ id, no injective pair (f, e^g)
/// exists; otherwise σ is simply not a symmetry of f.
pub fn guard_symmetry(f: &RationalFunction, sigma: &RationalFunction) -> Result<Certificate> {
    if sigma.is_zero() || !is_monomial(sigma.numerator()) || !is_monomial(sigma.denominator()) {
        return Err(Error::InvalidParameter(format!(
            "{sigma} has a zero or pole away from 0 and infinity, so it is not a self-map of the punctured plane"
        )));
    }
    if sigma.is_identity() {
        let mut cert = Certificate::pass(CertificateKind::Guard)
            .with_note("the identity is trivially a symmetry");
        cert.guard_outcome = Some(GuardOutcome::Trivial);
        return Ok(cert);
    }
    let fixes_f = match sigma.as_constant() {
        Some(c) => match f.eval(&c) {
            Some(v) => f.as_constant() == Some(v),
            None => false,
        },
        None => &f.compose(sigma) == f,
    };
    if fixes_f {
        return Ok(Certificate {
            kind: CertificateKind::Guard,
            verdict: Verdict::Fail,
            witnesses: vec![Witness::Form {
                text: sigma.to_string(),
            }],
            notes: vec![
                "a nontrivial self-map of the punctured plane fixes f, so no injective pair (f, exp(g)) exists"
                    .to_string(),
            ],
            guard_outcome: Some(GuardOutcome::NoNullInjectionWithThisF),
        });
    }
    Ok(Certificate {
        kind: CertificateKind::Guard,
        verdict: Verdict::Warn,
        witnesses: vec![Witness::Form {
            text: sigma.to_string(),
        }],
        notes: vec!["the candidate self-map does not fix f".to_string()],
        guard_outcome: Some(GuardOutcome::NotASymmetry),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FactoredRational;
    use crate::maps::ExpCoeff;

    fn gi(re: i64, im: i64) -> GaussianRational {
        GaussianRational::from_parts(re, im)
    }

    fn factored(factors: &[(GaussianRational, i64)]) -> SecondComponent {
        SecondComponent::Factored(
            FactoredRational::new(GaussianRational::one(), factors.to_vec()).unwrap(),
        )
    }

    fn poly(coeffs: &[(i64, i64)]) -> Polynomial {
        Polynomial::new(
            coeffs
                .iter()
                .map(|&(re, im)| gi(re, im))
                .collect::<Vec<_>>(),
        )
    }

    fn ratfn(num: &[(i64, i64)], den: &[(i64, i64)]) -> RationalFunction {
        RationalFunction::new(poly(num), poly(den)).unwrap()
    }

    #[test]
    fn identity_first_component_always_immerses() {
        let x = PuncturedPlane::new(vec![gi(1, 0)]);
        let map = MapPair::new(RationalFunction::z(), factored(&[(gi(1, 0), 2)])).unwrap();
        assert!(check_immersion(&map, &x).passed());
    }

    #[test]
    fn shared_critical_point_detected() {
        let x = PuncturedPlane::new(vec![gi(1, 0), gi(-1, 0)]);
        let map = MapPair::new(
            ratfn(&[(0, 0), (0, 0), (1, 0)], &[(1, 0)]),
            factored(&[(gi(1, 0), 1), (gi(-1, 0), 1)]),
        )
        .unwrap();
        let cert = check_immersion(&map, &x);
        assert_eq!(cert.verdict, Verdict::Fail);
        assert!(cert
            .witnesses
            .iter()
            .any(|w| matches!(w, Witness::WitnessPolynomial { text } if text == "z")));
        let near_zero = cert.witnesses.iter().any(|w| match w {
            Witness::ApproximatePoint { re, im, .. } => {
                re.trim_start_matches('-').trim_matches('0').trim_matches('.') == ""
                    && im.trim_start_matches('-').trim_matches('0').trim_matches('.') == ""
            }
            _ => false,
        });
        assert!(near_zero, "expected an enclosure of the root 0");
    }

    #[test]
    fn exponential_branch_immerses() {
        let x = PuncturedPlane::new(vec![gi(0, 0)]);
        let map = MapPair::new(
            ratfn(&[(1, 0), (-2, 0), (1, 0)], &[(0, 0), (1, 0)]),
            SecondComponent::ExpLinear(ExpCoeff::one()),
        )
        .unwrap();
        assert!(check_immersion(&map, &x).passed());
    }

    #[test]
    fn properness_of_projection_pair() {
        let x = PuncturedPlane::new(vec![gi(0, 0), gi(1, 0), gi(2, 0)]);
        let map = MapPair::new(
            ratfn(&[(1, 0)], &[(2, 0), (-3, 0), (1, 0)]),
            factored(&[(gi(0, 0), 2)]),
        )
        .unwrap();
        assert!(check_properness(&map, &x).passed());
    }

    #[test]
    fn properness_of_identity_with_linear_second() {
        let x = PuncturedPlane::new(vec![gi(3, 1)]);
        let map = MapPair::new(RationalFunction::z(), factored(&[(gi(3, 1), 1)])).unwrap();
        assert!(check_properness(&map, &x).passed());
    }

    #[test]
    fn puncture_with_no_escape_is_a_witness() {
        let x = PuncturedPlane::new(vec![gi(0, 0), gi(3, 0)]);
        let map = MapPair::new(
            ratfn(&[(-1, 0), (1, 0)], &[(0, 0), (1, 0)]),
            factored(&[(gi(2, 0), 1)]),
        )
        .unwrap();
        let cert = check_properness(&map, &x);
        assert_eq!(cert.verdict, Verdict::Fail);
        assert_eq!(cert.witnesses, vec![Witness::Point { value: gi(3, 0) }]);
    }

    #[test]
    fn exponential_escape_is_refused() {
        let x = PuncturedPlane::new(vec![gi(0, 0)]);
        let map = MapPair::new(
            RationalFunction::z(),
            SecondComponent::ExpLinear(ExpCoeff::one()),
        )
        .unwrap();
        let cert = check_properness(&map, &x);
        assert_eq!(cert.verdict, Verdict::Fail);
        assert!(cert.witnesses.contains(&Witness::Point { value: gi(0, 0) }));
    }

    #[test]
    fn winding_certificate_matches_classification() {
        let x = PuncturedPlane::new(vec![gi(0, 0), gi(1, 0)]);
        let map = MapPair::new(
            RationalFunction::z(),
            factored(&[(gi(0, 0), 2), (gi(1, 0), -1)]),
        )
        .unwrap();
        assert!(check_winding(&map, &x, &WindingClass::for_plane(vec![2, -1])).passed());
        let cert = check_winding(&map, &x, &WindingClass::for_plane(vec![2, 0]));
        assert_eq!(cert.verdict, Verdict::Fail);
    }

    #[test]
    fn moebius_components_pass_by_form() {
        let first = ratfn(&[(1, 0), (0, 0), (1, 0)], &[(0, 0), (1, 0)]);
        let map = MapPair::new(
            first.clone(),
            factored(&[(gi(5, 0), 1), (gi(7, 0), -1)]),
        )
        .unwrap();
        assert!(check_injective_by_form(&map).passed());
        let by_first = MapPair::new(RationalFunction::z(), factored(&[(gi(0, 0), 3)])).unwrap();
        assert!(check_injective_by_form(&by_first).passed());
        let neither = MapPair::new(first, SecondComponent::ExpLinear(ExpCoeff::pi_i())).unwrap();
        let cert = check_injective_by_form(&neither);
        assert_eq!(cert.verdict, Verdict::Fail);
        assert_eq!(cert.witnesses.len(), 2);
    }

    #[test]
    fn proper_first_component_blocks_injection() {
        let f = ratfn(&[(1, 0), (0, 0), (1, 0)], &[(0, 0), (1, 0)]);
        let cert = guard_not_proper_first(&f);
        assert_eq!(cert.verdict, Verdict::Fail);
        assert_eq!(cert.guard_outcome, Some(GuardOutcome::NotInjectivePair));
    }

    #[test]
    fn non_proper_first_component_passes_with_note() {
        let cert = guard_not_proper_first(&RationalFunction::z());
        assert!(cert.passed());
        assert!(cert.notes.iter().any(|n| n.contains("essential singularity")));
    }

    #[test]
    fn pole_count_guard_on_quadratic_over_z() {
        let f = ratfn(&[(1, 0), (0, 0), (1, 0)], &[(0, 0), (1, 0)]);
        assert_eq!(f.order_at(&gi(0, 0)), -1);
        assert_eq!(f.order_at_infinity(), -1);
        assert_eq!(
            guard_not_proper_first(&f).guard_outcome,
            Some(GuardOutcome::NotInjectivePair)
        );
    }

    #[test]
    fn off_axis_pole_is_a_warning() {
        let f = ratfn(&[(1, 0)], &[(-1, 0), (1, 0)]);
        let cert = guard_not_proper_first(&f);
        assert_eq!(cert.verdict, Verdict::Warn);
        assert!(cert.guard_outcome.is_none());
    }

    #[test]
    fn inversion_symmetry_detected() {
        let f = ratfn(&[(1, 0), (0, 0), (1, 0)], &[(0, 0), (1, 0)]);
        let sigma = ratfn(&[(1, 0)], &[(0, 0), (1, 0)]);
        let cert = guard_symmetry(&f, &sigma).unwrap();
        assert_eq!(cert.verdict, Verdict::Fail);
        assert_eq!(
            cert.guard_outcome,
            Some(GuardOutcome::NoNullInjectionWithThisF)
        );
    }

    #[test]
    fn identity_symmetry_is_trivial() {
        let f = ratfn(&[(1, 0), (0, 0), (1, 0)], &[(0, 0), (1, 0)]);
        let cert = guard_symmetry(&f, &RationalFunction::z()).unwrap();
        assert!(cert.passed());
        assert_eq!(cert.guard_outcome, Some(GuardOutcome::Trivial));
    }

    #[test]
    fn non_symmetry_is_a_warning() {
        let f = ratfn(&[(0, 0), (0, 0), (1, 0)], &[(1, 0)]);
        let sigma = ratfn(&[(1, 0)], &[(0, 0), (1, 0)]);
        let cert = guard_symmetry(&f, &sigma).unwrap();
        assert_eq!(cert.verdict, Verdict::Warn);
        assert_eq!(cert.guard_outcome, Some(GuardOutcome::NotASymmetry));
    }

    #[test]
    fn bad_sigma_rejected() {
        let f = RationalFunction::z();
        let sigma = ratfn(&[(-1, 0), (1, 0)], &[(0, 0), (1, 0)]);
        assert!(matches!(
            guard_symmetry(&f, &sigma),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn certificate_serialization_has_stable_field_order() {
        let x = PuncturedPlane::new(vec![gi(0, 0), gi(3, 0)]);
        let map = MapPair::new(
            ratfn(&[(-1, 0), (1, 0)], &[(0, 0), (1, 0)]),
            factored(&[(gi(2, 0), 1)]),
        )
        .unwrap();
        let cert = check_properness(&map, &x);
        let json = serde_json::to_string(&cert).unwrap();
        assert_eq!(
            json,
            r#"{"kind":"properness","verdict":"fail","witnesses":[{"type":"point","value":{"re":"3","im":"0"}}],"notes":[]}"#
        );
    }
}
