//! Candidate maps into ℂ×ℂ* and their winding classification.
//!
//! A map pair ψ = (first, second) keeps the ℂ*-component either in factored
//! form, so zero and pole locations are part of the data, or as exp(λz) with
//! λ a Gaussian rational times an optional factor of π. Classification reads
//! the winding numbers straight off the factorization: the winding at a
//! puncture is the order of the second component there, and the winding
//! about a hole is the sum of orders over the closed hole disc.

use std::fmt;

use num_traits::One;

use crate::algebra::{FactoredRational, GaussianRational, RationalFunction};
use crate::domains::{PuncturedCircularDomain, PuncturedPlane, WindingClass};
use crate::error::{Error, Result};

/// The exponent coefficient λ in exp(λz), equal to `coeff`·π when `has_pi`
/// is set and to `coeff` otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpCoeff {
    pub coeff: GaussianRational,
    pub has_pi: bool,
}

impl ExpCoeff {
    pub fn new(coeff: GaussianRational, has_pi: bool) -> Self {
        ExpCoeff { coeff, has_pi }
    }

    pub fn one() -> Self {
        ExpCoeff {
            coeff: GaussianRational::one(),
            has_pi: false,
        }
    }

    /// λ = πi, the coefficient under which exp(λz) has period 2.
    pub fn pi_i() -> Self {
        ExpCoeff {
            coeff: GaussianRational::i(),
            has_pi: true,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }
}

impl fmt::Display for ExpCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.has_pi {
            return write!(f, "{}", self.coeff);
        }
        if self.coeff.is_one() {
            write!(f, "pi")
        } else if self.coeff == GaussianRational::i() {
            write!(f, "pi*i")
        } else {
            write!(f, "({})*pi", self.coeff)
        }
    }
}

/// The ℂ*-component of a map pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SecondComponent {
    Factored(FactoredRational),
    ExpLinear(ExpCoeff),
}

impl SecondComponent {
    pub fn is_constant(&self) -> bool {
        match self {
            SecondComponent::Factored(g) => g.is_constant(),
            SecondComponent::ExpLinear(l) => l.is_zero(),
        }
    }

    /// The factored form, when this component is rational.
    pub fn as_factored(&self) -> Option<&FactoredRational> {
        match self {
            SecondComponent::Factored(g) => Some(g),
            SecondComponent::ExpLinear(_) => None,
        }
    }
}

impl fmt::Display for SecondComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SecondComponent::Factored(g) => write!(f, "{g}"),
            SecondComponent::ExpLinear(l) => {
                if l.coeff.is_one() && !l.has_pi {
                    write!(f, "exp(z)")
                } else {
                    write!(f, "exp(({})*z)", l)
                }
            }
        }
    }
}

/// A candidate map ψ = (first, second) into ℂ×ℂ*.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapPair {
    pub first: RationalFunction,
    pub second: SecondComponent,
}

impl MapPair {
    /// Builds the pair, rejecting a vanishing exponent coefficient and the
    /// fully constant map.
    pub fn new(first: RationalFunction, second: SecondComponent) -> Result<Self> {
        if let SecondComponent::ExpLinear(l) = &second {
            if l.is_zero() {
                return Err(Error::InvalidParameter(
                    "exponential second component requires a nonzero coefficient".into(),
                ));
            }
        }
        if first.is_constant() && second.is_constant() {
            return Err(Error::InvalidParameter(
                "both components are constant".into(),
            ));
        }
        Ok(MapPair { first, second })
    }
}

impl fmt::Display for MapPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.first, self.second)
    }
}

/// Winding numbers of `map` about the punctures of `x`: the order of the
/// second component at each puncture. Every zero or pole of the second
/// component must sit at a puncture; exp(λz) has none, so it classifies as
/// all zeros.
pub fn classify_map(map: &MapPair, x: &PuncturedPlane) -> Result<WindingClass> {
    let g = match &map.second {
        SecondComponent::ExpLinear(_) => {
            return Ok(WindingClass::for_plane(vec![0; x.count()]));
        }
        SecondComponent::Factored(g) => g,
    };
    for (root, mult) in g.factors() {
        if *mult != 0 && !x.punctures().contains(root) {
            return Err(Error::InvalidSecondComponent(format!(
                "second component has order {mult} at {root}, which is not a puncture"
            )));
        }
    }
    let windings = x
        .punctures()
        .iter()
        .map(|a| g.order_at(a))
        .collect::<Vec<_>>();
    Ok(WindingClass::for_plane(windings))
}

/// Winding numbers of `map` on a punctured circular domain: the order of
/// the second component at each puncture, and about each hole the sum of
/// orders over the closed hole disc. Zeros and poles are allowed at
/// punctures, inside closed holes, and outside the open unit disc, but
/// nowhere else.
pub fn classify_on_circular(
    map: &MapPair,
    domain: &PuncturedCircularDomain,
) -> Result<WindingClass> {
    let violations = domain.violations();
    if !violations.is_empty() {
        return Err(Error::InvalidParameter(format!(
            "domain fails validation: {:?}",
            violations
        )));
    }
    let g = match &map.second {
        SecondComponent::ExpLinear(_) => {
            return Ok(WindingClass::new(
                vec![0; domain.punctures().len()],
                vec![0; domain.holes().len()],
            ));
        }
        SecondComponent::Factored(g) => g,
    };
    let mut hole_windings = vec![0i64; domain.holes().len()];
    for (root, mult) in g.factors() {
        if *mult == 0 || domain.punctures().contains(root) {
            continue;
        }
        if let Some(i) = domain
            .holes()
            .iter()
            .position(|h| h.contains_closed(root))
        {
            hole_windings[i] += mult;
            continue;
        }
        if root.norm_sq() < num_rational::BigRational::one() {
            return Err(Error::InvalidSecondComponent(format!(
                "second component has order {mult} at {root}, an interior point of the domain"
            )));
        }
    }
    let puncture_windings = domain
        .punctures()
        .iter()
        .map(|a| g.order_at(a))
        .collect::<Vec<_>>();
    Ok(WindingClass::new(puncture_windings, hole_windings))
}
