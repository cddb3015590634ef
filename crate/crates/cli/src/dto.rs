//! JSON shapes for job input and output. Every number that is exact is
//! serialized as a rational string; π-bearing values carry a decimal
//! rendering tagged with its digit count.

use serde::{Deserialize, Serialize};

use okaforge_core::algebra::{FactoredRational, GaussianRational};
use okaforge_core::constructors::{PerturbationAttempt, PerturbationLog};
use okaforge_core::domains::{
    Hole, MarkedRole, PuncturedCircularDomain, PuncturedPlane, ReductionResult, WindingClass,
};
use okaforge_core::doublepoints::DoublePointReport;
use okaforge_core::maps::{ExpCoeff, MapPair, SecondComponent};
use okaforge_core::numeric::{pi_ball, CBall};
use okaforge_core::{Error, Result};

use crate::expr;

/// The declared shape of a domain in job input and echo.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DomainDto {
    Plane {
        punctures: Vec<GaussianRational>,
    },
    Circular {
        punctures: Vec<GaussianRational>,
        holes: Vec<HoleDto>,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HoleDto {
    pub center: GaussianRational,
    pub radius: String,
}

impl HoleDto {
    pub fn to_hole(&self) -> Result<Hole> {
        Ok(Hole::new(
            self.center.clone(),
            expr::parse_positive_ratio(&self.radius)?,
        ))
    }
}

impl DomainDto {
    pub fn to_plane(&self) -> Result<PuncturedPlane> {
        match self {
            DomainDto::Plane { punctures } => {
                let x = PuncturedPlane::new(punctures.clone());
                let violations = x.violations();
                if !violations.is_empty() {
                    return Err(Error::InvalidParameter(format!(
                        "invalid punctured plane: {violations:?}"
                    )));
                }
                Ok(x)
            }
            DomainDto::Circular { .. } => Err(Error::InvalidParameter(
                "this command needs a plane domain".into(),
            )),
        }
    }

    pub fn to_circular(&self) -> Result<PuncturedCircularDomain> {
        match self {
            DomainDto::Circular { punctures, holes } => {
                let holes = holes
                    .iter()
                    .map(HoleDto::to_hole)
                    .collect::<Result<Vec<_>>>()?;
                let d = PuncturedCircularDomain::new(holes, punctures.clone());
                let violations = d.violations();
                if !violations.is_empty() {
                    return Err(Error::InvalidParameter(format!(
                        "invalid circular domain: {violations:?}"
                    )));
                }
                Ok(d)
            }
            DomainDto::Plane { .. } => Err(Error::InvalidParameter(
                "this command needs a circular domain".into(),
            )),
        }
    }

    pub fn is_plane(&self) -> bool {
        matches!(self, DomainDto::Plane { .. })
    }
}

/// Winding data as given in job input.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WindingsDto {
    pub punctures: Vec<i64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub holes: Vec<i64>,
}

impl WindingsDto {
    pub fn to_class(&self) -> WindingClass {
        WindingClass::new(self.punctures.clone(), self.holes.clone())
    }
}

/// Map input: a single `(first, second)` string, or split parts with a
/// structured factored second component.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MapInput {
    Pair(String),
    Parts { first: String, second: SecondInput },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SecondInput {
    Expr(String),
    Factored {
        scale: GaussianRational,
        factors: Vec<(GaussianRational, i64)>,
    },
    Exp {
        exp_coeff: GaussianRational,
        #[serde(default)]
        has_pi: bool,
    },
}

impl MapInput {
    pub fn to_map(&self) -> Result<MapPair> {
        match self {
            MapInput::Pair(s) => expr::parse_map(s),
            MapInput::Parts { first, second } => {
                let f = expr::parse_rational(first)?;
                let g = match second {
                    SecondInput::Expr(s) => expr::parse_second(s)?,
                    SecondInput::Factored { scale, factors } => SecondComponent::Factored(
                        FactoredRational::new(scale.clone(), factors.clone())?,
                    ),
                    SecondInput::Exp { exp_coeff, has_pi } => {
                        SecondComponent::ExpLinear(ExpCoeff::new(exp_coeff.clone(), *has_pi))
                    }
                };
                MapPair::new(f, g)
            }
        }
    }
}

/// Rendered map: canonical expressions plus the structured second
/// component.
#[derive(Debug, Clone, Serialize)]
pub struct MapDto {
    pub expr: String,
    pub first: String,
    pub second: SecondDto,
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SecondDto {
    Factored {
        expr: String,
        scale: GaussianRational,
        factors: Vec<FactorDto>,
    },
    ExpLinear {
        expr: String,
        coeff: GaussianRational,
        has_pi: bool,
        lambda_re: String,
        lambda_im: String,
        digits: usize,
    },
}

#[derive(Debug, Clone, Serialize)]
pub struct FactorDto {
    pub root: GaussianRational,
    pub multiplicity: i64,
}

fn lambda_decimals(l: &ExpCoeff, digits: usize) -> (String, String) {
    let prec = (digits as u32) * 4 + 32;
    let mut ball = CBall::from_gaussian(&l.coeff, prec);
    if l.has_pi {
        ball = ball.mul(&pi_ball(prec), prec);
    }
    (
        ball.re.to_decimal_string(digits),
        ball.im.to_decimal_string(digits),
    )
}

impl MapDto {
    pub fn from_map(map: &MapPair, digits: usize) -> Self {
        let second = match &map.second {
            SecondComponent::Factored(g) => SecondDto::Factored {
                expr: expr::factored_expr(g),
                scale: g.scale().clone(),
                factors: g
                    .factors()
                    .iter()
                    .map(|(root, mult)| FactorDto {
                        root: root.clone(),
                        multiplicity: *mult,
                    })
                    .collect(),
            },
            SecondComponent::ExpLinear(l) => {
                let (lambda_re, lambda_im) = lambda_decimals(l, digits);
                SecondDto::ExpLinear {
                    expr: expr::exp_expr(l),
                    coeff: l.coeff.clone(),
                    has_pi: l.has_pi,
                    lambda_re,
                    lambda_im,
                    digits,
                }
            }
        };
        MapDto {
            expr: expr::map_expr(map),
            first: expr::ratfunc_expr(&map.first),
            second,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LogDto {
    pub seed: u64,
    pub attempts: Vec<PerturbationAttempt>,
    pub final_map: String,
}

impl LogDto {
    pub fn from_log(log: &PerturbationLog) -> Self {
        LogDto {
            seed: log.seed,
            attempts: log.attempts.clone(),
            final_map: expr::map_expr(&log.final_map),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MarkedPointDto {
    pub point: GaussianRational,
    pub role: String,
}

fn role_name(role: MarkedRole) -> String {
    match role {
        MarkedRole::BasePoint => "base_point".into(),
        MarkedRole::HoleBoundary(i) => format!("hole_boundary_{}", i + 1),
        MarkedRole::HoleCenter(i) => format!("hole_center_{}", i + 1),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ReductionDto {
    pub punctures: Vec<GaussianRational>,
    pub windings: WindingClass,
    pub marked_points: Vec<MarkedPointDto>,
}

impl ReductionDto {
    pub fn from_reduction(r: &ReductionResult) -> Self {
        ReductionDto {
            punctures: r.plane.punctures().to_vec(),
            windings: r.windings.clone(),
            marked_points: r
                .marked_points
                .iter()
                .map(|m| MarkedPointDto {
                    point: m.point.clone(),
                    role: role_name(m.role),
                })
                .collect(),
        }
    }
}

/// Flat decimal rows for `--dump-points`.
#[derive(Debug, Clone, Serialize)]
pub struct PointRow {
    pub x_re: String,
    pub x_im: String,
    pub y_re: String,
    pub y_im: String,
    pub residual: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
}

pub fn dump_points(report: &DoublePointReport, digits: usize) -> Vec<PointRow> {
    report
        .pairs
        .iter()
        .map(|p| PointRow {
            x_re: p.x.re.to_decimal_string(digits),
            x_im: p.x.im.to_decimal_string(digits),
            y_re: p.y.re.to_decimal_string(digits),
            y_im: p.y.im.to_decimal_string(digits),
            residual: p.residual.to_decimal_string(digits),
            k: p.k,
        })
        .collect()
}
