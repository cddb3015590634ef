//! Job schema and the dispatcher that executes one job and renders its
//! result bundle as deterministic JSON.

use serde::{Deserialize, Serialize};

use okaforge_core::algebra::GaussianRational;
use okaforge_core::constructors::{
    build_embedding_circular, build_embedding_plane, build_nonnull_immersion,
    build_null_immersion, CircularEmbedding, PlaneEmbedding,
};
use okaforge_core::domains::{reduce_to_plane, PuncturedPlane, WindingClass};
use okaforge_core::doublepoints::{
    enumerate_exp, enumerate_rational, DoublePointReport, Finiteness,
};
use okaforge_core::maps::{classify_map, classify_on_circular, MapPair, SecondComponent};
use okaforge_core::numeric::Dyadic;
use okaforge_core::projection::ProjectionCertificate;
use okaforge_core::verifiers::{
    check_immersion, check_injective_by_form, check_properness, check_winding,
    check_winding_circular, guard_not_proper_first, guard_symmetry, Certificate, GuardOutcome,
    Verdict,
};
use okaforge_core::{Error, Result};

use crate::dto::{
    dump_points, DomainDto, LogDto, MapDto, MapInput, PointRow, ReductionDto, WindingsDto,
};
use crate::expr;

pub const SCHEMA: &str = "okaforge/1";

fn default_tol() -> f64 {
    1e-10
}

fn default_k() -> u32 {
    10
}

fn default_budget() -> u32 {
    64
}

fn default_digits() -> usize {
    24
}

fn is_false(b: &bool) -> bool {
    !*b
}

/// Execution options shared by all commands; defaults are applied
/// deterministically at deserialization time.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_tol")]
    pub tol: f64,
    #[serde(rename = "K", default = "default_k")]
    pub k: u32,
    #[serde(default = "default_budget")]
    pub attempt_budget: u32,
    #[serde(default = "default_digits")]
    pub precision: usize,
    #[serde(default, skip_serializing_if = "is_false")]
    pub dump_points: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            seed: 0,
            tol: default_tol(),
            k: default_k(),
            attempt_budget: default_budget(),
            precision: default_digits(),
            dump_points: false,
        }
    }
}

/// One job: a command plus its inputs. Serializes back to canonical
/// JSON, so the bundle can echo exactly what was run.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub schema: String,
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domain: Option<DomainDto>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub windings: Option<WindingsDto>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub map: Option<MapInput>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<GaussianRational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub guard: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub corpus: Option<String>,
    #[serde(default)]
    pub options: Options,
}

/// Rendered JSON plus the process exit code the job deserves.
pub struct JobOutput {
    pub json: String,
    pub exit: i32,
}

#[derive(Serialize)]
struct Bundle<'a, R: Serialize> {
    schema: &'static str,
    command: &'a str,
    input: &'a JobSpec,
    result: R,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    certificates: Vec<Certificate>,
}

fn render<R: Serialize>(
    spec: &JobSpec,
    result: R,
    certificates: Vec<Certificate>,
    extra_failure: bool,
) -> Result<JobOutput> {
    let failed =
        extra_failure || certificates.iter().any(|c| c.verdict == Verdict::Fail);
    let bundle = Bundle {
        schema: SCHEMA,
        command: &spec.command,
        input: spec,
        result,
        certificates,
    };
    let mut json = serde_json::to_string_pretty(&bundle)
        .map_err(|e| Error::InternalInconsistency(format!("serialization failed: {e}")))?;
    json.push('\n');
    Ok(JobOutput {
        json,
        exit: if failed { 1 } else { 0 },
    })
}

fn need_domain(spec: &JobSpec) -> Result<&DomainDto> {
    spec.domain
        .as_ref()
        .ok_or_else(|| Error::InvalidParameter("this command needs a domain".into()))
}

fn need_map(spec: &JobSpec) -> Result<MapPair> {
    spec.map
        .as_ref()
        .ok_or_else(|| Error::InvalidParameter("this command needs a map".into()))?
        .to_map()
}

fn need_windings(spec: &JobSpec) -> Result<WindingClass> {
    Ok(spec
        .windings
        .as_ref()
        .ok_or_else(|| Error::InvalidParameter("this command needs windings".into()))?
        .to_class())
}

fn tol_dyadic(options: &Options) -> Result<Dyadic> {
    if !(options.tol > 0.0) || !options.tol.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "tolerance must be a positive finite number, got {}",
            options.tol
        )));
    }
    Ok(Dyadic::from_f64(options.tol))
}

fn enumerate_for(map: &MapPair, x: &PuncturedPlane, options: &Options) -> Result<DoublePointReport> {
    let tol = tol_dyadic(options)?;
    match &map.second {
        SecondComponent::Factored(g) => enumerate_rational(&map.first, g, x, &tol),
        SecondComponent::ExpLinear(l) => enumerate_exp(&map.first, l, x, options.k, &tol),
    }
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

#[derive(Serialize)]
struct ClassifyResult {
    windings: WindingClass,
}

fn classify(spec: &JobSpec) -> Result<JobOutput> {
    let domain = need_domain(spec)?;
    let map = need_map(spec)?;
    let windings = if domain.is_plane() {
        classify_map(&map, &domain.to_plane()?)?
    } else {
        classify_on_circular(&map, &domain.to_circular()?)?
    };
    render(spec, ClassifyResult { windings }, Vec::new(), false)
}

#[derive(Serialize)]
struct ConstructResult {
    map: MapDto,
    #[serde(skip_serializing_if = "Option::is_none")]
    log: Option<LogDto>,
    double_points: DoublePointReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    points: Option<Vec<PointRow>>,
}

fn construct(spec: &JobSpec) -> Result<JobOutput> {
    let x = need_domain(spec)?.to_plane()?;
    let w = need_windings(spec)?;
    if !w.hole_windings.is_empty() {
        return Err(Error::ShapeError(
            "a plane construction takes no hole windings".into(),
        ));
    }
    if spec.options.attempt_budget != default_budget() {
        eprintln!(
            "note: the attempt budget is fixed at {}; the requested value {} is recorded but not applied",
            default_budget(),
            spec.options.attempt_budget
        );
    }
    let (map, log) = if w.puncture_windings.iter().all(|&k| k == 0) {
        let c = match &spec.c {
            Some(c) => c.clone(),
            None => smallest_free_integer(&x),
        };
        (build_null_immersion(&x, &c)?, None)
    } else {
        let (map, log) = build_nonnull_immersion(&x, &w, spec.options.seed)?;
        (map, Some(log))
    };
    let certificates = vec![
        check_immersion(&map, &x),
        check_properness(&map, &x),
        check_winding(&map, &x, &w),
    ];
    let report = enumerate_for(&map, &x, &spec.options)?;
    let infinite = matches!(
        report.finiteness,
        Finiteness::InfiniteCommonComponent { .. }
    );
    let points = if spec.options.dump_points {
        Some(dump_points(&report, spec.options.precision))
    } else {
        None
    };
    let result = ConstructResult {
        map: MapDto::from_map(&map, spec.options.precision),
        log: log.as_ref().map(LogDto::from_log),
        double_points: report,
        points,
    };
    render(spec, result, certificates, infinite)
}

#[derive(Serialize)]
struct EmbedResult {
    covered: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    case: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    map: Option<MapDto>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reduction: Option<ReductionDto>,
    #[serde(skip_serializing_if = "Option::is_none")]
    projection: Option<ProjectionCertificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<String>,
}

fn embed(spec: &JobSpec) -> Result<JobOutput> {
    let domain = need_domain(spec)?;
    let w = need_windings(spec)?;
    if domain.is_plane() {
        let x = domain.to_plane()?;
        match build_embedding_plane(&x, &w)? {
            PlaneEmbedding::Covered { case, map } => {
                let certificates = vec![
                    check_injective_by_form(&map),
                    check_immersion(&map, &x),
                    check_properness(&map, &x),
                    check_winding(&map, &x, &w),
                ];
                let result = EmbedResult {
                    covered: true,
                    case: Some(case),
                    map: Some(MapDto::from_map(&map, spec.options.precision)),
                    reduction: None,
                    projection: None,
                    reason: None,
                };
                render(spec, result, certificates, false)
            }
            PlaneEmbedding::NotCovered { reason } => {
                let result = EmbedResult {
                    covered: false,
                    case: None,
                    map: None,
                    reduction: None,
                    projection: None,
                    reason: Some(reason),
                };
                render(spec, result, Vec::new(), false)
            }
        }
    } else {
        let d = domain.to_circular()?;
        match build_embedding_circular(&d, &w)? {
            CircularEmbedding::Covered {
                case,
                reduction,
                map,
                certificate,
            } => {
                let certificates = vec![
                    check_injective_by_form(&map),
                    check_winding_circular(&map, &d, &w),
                ];
                let projection_failed = !certificate.verdict
                    || certificate
                        .theta
                        .as_ref()
                        .map(|t| !t.pass)
                        .unwrap_or(false);
                let result = EmbedResult {
                    covered: true,
                    case: Some(case),
                    map: Some(MapDto::from_map(&map, spec.options.precision)),
                    reduction: Some(ReductionDto::from_reduction(&reduction)),
                    projection: Some(certificate),
                    reason: None,
                };
                render(spec, result, certificates, projection_failed)
            }
            CircularEmbedding::NotCovered { reason } => {
                let result = EmbedResult {
                    covered: false,
                    case: None,
                    map: None,
                    reduction: None,
                    projection: None,
                    reason: Some(reason),
                };
                render(spec, result, Vec::new(), false)
            }
        }
    }
}

#[derive(Serialize)]
struct VerifyResult {
    windings: WindingClass,
}

fn verify(spec: &JobSpec) -> Result<JobOutput> {
    let domain = need_domain(spec)?;
    let map = need_map(spec)?;
    let expected = spec.windings.as_ref().map(WindingsDto::to_class);
    if domain.is_plane() {
        let x = domain.to_plane()?;
        let mut certificates = vec![
            check_immersion(&map, &x),
            check_properness(&map, &x),
            check_injective_by_form(&map),
        ];
        if let Some(w) = &expected {
            certificates.push(check_winding(&map, &x, w));
        }
        let windings = classify_map(&map, &x)?;
        render(spec, VerifyResult { windings }, certificates, false)
    } else {
        let d = domain.to_circular()?;
        let mut certificates = vec![check_injective_by_form(&map)];
        if let Some(w) = &expected {
            certificates.push(check_winding_circular(&map, &d, w));
        }
        let windings = classify_on_circular(&map, &d)?;
        render(spec, VerifyResult { windings }, certificates, false)
    }
}

#[derive(Serialize)]
struct DoublePointsResult {
    report: DoublePointReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    points: Option<Vec<PointRow>>,
}

fn double_points(spec: &JobSpec) -> Result<JobOutput> {
    let x = need_domain(spec)?.to_plane()?;
    let map = need_map(spec)?;
    let report = enumerate_for(&map, &x, &spec.options)?;
    let infinite = matches!(
        report.finiteness,
        Finiteness::InfiniteCommonComponent { .. }
    );
    let points = if spec.options.dump_points {
        Some(dump_points(&report, spec.options.precision))
    } else {
        None
    };
    render(
        spec,
        DoublePointsResult { report, points },
        Vec::new(),
        infinite,
    )
}

#[derive(Serialize)]
struct ReduceResult {
    reduction: ReductionDto,
}

fn reduce(spec: &JobSpec) -> Result<JobOutput> {
    let d = need_domain(spec)?.to_circular()?;
    let w = need_windings(spec)?;
    let reduction = reduce_to_plane(&d, &w)?;
    render(
        spec,
        ReduceResult {
            reduction: ReductionDto::from_reduction(&reduction),
        },
        Vec::new(),
        false,
    )
}

#[derive(Serialize)]
struct GuardResult {
    #[serde(skip_serializing_if = "Option::is_none")]
    outcome: Option<GuardOutcome>,
    verdict: Verdict,
}

fn guard(spec: &JobSpec) -> Result<JobOutput> {
    let kind = spec.guard.as_deref().ok_or_else(|| {
        Error::InvalidParameter(
            "guard needs a kind: not-proper-first or symmetry".into(),
        )
    })?;
    let f_src = spec
        .f
        .as_deref()
        .ok_or_else(|| Error::InvalidParameter("guard needs an expression for f".into()))?;
    let f = expr::parse_rational(f_src)?;
    let certificate = match kind {
        "not-proper-first" => guard_not_proper_first(&f),
        "symmetry" => {
            let sigma_src = spec.sigma.as_deref().ok_or_else(|| {
                Error::InvalidParameter("the symmetry guard needs an expression for sigma".into())
            })?;
            let sigma = expr::parse_rational(sigma_src)?;
            guard_symmetry(&f, &sigma)?
        }
        other => {
            return Err(Error::InvalidParameter(format!(
                "unknown guard kind `{other}` (expected not-proper-first or symmetry)"
            )))
        }
    };
    let result = GuardResult {
        outcome: certificate.guard_outcome,
        verdict: certificate.verdict,
    };
    render(spec, result, vec![certificate], false)
}

/// Executes one non-corpus job.
pub fn run_job(spec: &JobSpec) -> Result<JobOutput> {
    if spec.schema != SCHEMA {
        return Err(Error::InvalidParameter(format!(
            "unsupported schema `{}` (expected `{SCHEMA}`)",
            spec.schema
        )));
    }
    match spec.command.as_str() {
        "classify" => classify(spec),
        "construct" => construct(spec),
        "embed" => embed(spec),
        "verify" => verify(spec),
        "double-points" => double_points(spec),
        "reduce" => reduce(spec),
        "guard" => guard(spec),
        "corpus" => Err(Error::InvalidParameter(
            "corpus jobs are resolved before dispatch".into(),
        )),
        other => Err(Error::InvalidParameter(format!(
            "unknown command `{other}`"
        ))),
    }
}
