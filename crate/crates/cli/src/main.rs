//! Command line front end: flags (or a job file) build one job, the
//! dispatcher runs it, the result bundle goes to stdout as JSON and all
//! diagnostics go to stderr.
//!
//! Exit codes: 0 when every requested certificate passes, 1 when a
//! certificate fails (the result is still emitted), 2 on usage or
//! schema errors, 3 when a search or precision budget is exhausted.

mod corpus;
mod dto;
mod expr;
mod jobs;

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use okaforge_core::{Error, Result};

use crate::dto::{DomainDto, HoleDto, MapInput, WindingsDto};
use crate::jobs::{run_job, JobOutput, JobSpec, Options, SCHEMA};

#[derive(Parser)]
#[command(
    name = "okaforge",
    version,
    about = "Explicit proper holomorphic maps of punctured planar domains into C x C*, with exact certificates"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute the winding class of a map on a domain
    Classify(MapJobArgs),
    /// Build a proper immersion in a prescribed winding class
    Construct(ConstructArgs),
    /// Build a closed-form proper embedding when the class is covered
    Embed(EmbedArgs),
    /// Run the certificates for a given map on a domain
    Verify(MapJobArgs),
    /// Decide finiteness of identified pairs and enumerate them
    #[command(name = "double-points")]
    DoublePoints(DoublePointsArgs),
    /// Reduce a punctured circular domain to a punctured plane
    Reduce(ReduceArgs),
    /// Run a nonexistence guard on a first component
    Guard(GuardArgs),
    /// List or run the embedded example jobs
    Corpus(CorpusArgs),
}

#[derive(Args, Default)]
struct OptionArgs {
    /// Seed for the randomized searches
    #[arg(long)]
    seed: Option<u64>,
    /// Residual tolerance for reported enclosures
    #[arg(long)]
    tol: Option<f64>,
    /// Number of exponential shifts to enumerate
    #[arg(long = "K")]
    k: Option<u32>,
    /// Attempt budget echoed into the job record
    #[arg(long)]
    budget: Option<u32>,
    /// Decimal digits in reported values
    #[arg(long)]
    precision: Option<usize>,
    /// Also emit flat decimal point rows
    #[arg(long)]
    dump_points: bool,
}

impl OptionArgs {
    fn apply(&self, mut base: Options) -> Options {
        if let Some(v) = self.seed {
            base.seed = v;
        }
        if let Some(v) = self.tol {
            base.tol = v;
        }
        if let Some(v) = self.k {
            base.k = v;
        }
        if let Some(v) = self.budget {
            base.attempt_budget = v;
        }
        if let Some(v) = self.precision {
            base.precision = v;
        }
        if self.dump_points {
            base.dump_points = true;
        }
        base
    }
}

#[derive(Args, Default)]
struct DomainArgs {
    /// Domain shape: plane or circular (inferred from --holes when omitted)
    #[arg(long)]
    domain: Option<String>,
    /// Comma separated punctures (constants in the expression grammar)
    #[arg(long)]
    punctures: Option<String>,
    /// Semicolon separated holes, each written center:radius
    #[arg(long)]
    holes: Option<String>,
}

impl DomainArgs {
    fn to_dto(&self) -> Result<Option<DomainDto>> {
        let circular = match self.domain.as_deref() {
            None => self.holes.is_some(),
            Some("plane") => {
                if self.holes.is_some() {
                    return Err(Error::InvalidParameter(
                        "a plane domain cannot carry holes".into(),
                    ));
                }
                false
            }
            Some("circular") => true,
            Some(other) => {
                return Err(Error::InvalidParameter(format!(
                    "unknown domain shape `{other}` (expected plane or circular)"
                )));
            }
        };
        let punctures = match &self.punctures {
            Some(raw) => parse_constant_list(raw)?,
            None => {
                if circular || self.domain.is_some() {
                    Vec::new()
                } else {
                    return Ok(None);
                }
            }
        };
        if !circular {
            return Ok(Some(DomainDto::Plane { punctures }));
        }
        match &self.holes {
            None => Ok(Some(DomainDto::Circular {
                punctures,
                holes: Vec::new(),
            })),
            Some(raw) => {
                let mut holes = Vec::new();
                for part in raw.split(';').map(str::trim).filter(|s| !s.is_empty()) {
                    let (center_src, radius_src) = part.split_once(':').ok_or_else(|| {
                        Error::InvalidParameter(format!(
                            "hole `{part}` must be written center:radius"
                        ))
                    })?;
                    let center = expr::parse_constant(center_src)?;
                    let radius = expr::parse_positive_ratio(radius_src)?;
                    holes.push(HoleDto {
                        center,
                        radius: expr::ratio_str(&radius),
                    });
                }
                Ok(Some(DomainDto::Circular { punctures, holes }))
            }
        }
    }
}

fn parse_constant_list(raw: &str) -> Result<Vec<okaforge_core::algebra::GaussianRational>> {
    raw.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(expr::parse_constant)
        .collect()
}

fn parse_int_list(raw: &str) -> Result<Vec<i64>> {
    raw.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<i64>()
                .map_err(|_| Error::InvalidParameter(format!("invalid winding `{s}`")))
        })
        .collect()
}

#[derive(Args, Default)]
struct WindingArgs {
    /// Comma separated puncture windings
    #[arg(long)]
    windings: Option<String>,
    /// Comma separated hole windings
    #[arg(long = "hole-windings")]
    hole_windings: Option<String>,
}

impl WindingArgs {
    fn to_dto(&self) -> Result<Option<WindingsDto>> {
        match &self.windings {
            None => {
                if self.hole_windings.is_some() {
                    Err(Error::InvalidParameter(
                        "hole windings were given without puncture windings".into(),
                    ))
                } else {
                    Ok(None)
                }
            }
            Some(raw) => Ok(Some(WindingsDto {
                punctures: parse_int_list(raw)?,
                holes: match &self.hole_windings {
                    Some(h) => parse_int_list(h)?,
                    None => Vec::new(),
                },
            })),
        }
    }
}

#[derive(Args)]
struct MapJobArgs {
    /// Full job JSON file; inline flags are then rejected
    #[arg(long)]
    job: Option<PathBuf>,
    /// Map expression "(first, second)"
    #[arg(long)]
    map: Option<String>,
    #[command(flatten)]
    domain: DomainArgs,
    #[command(flatten)]
    windings: WindingArgs,
    #[command(flatten)]
    options: OptionArgs,
}

#[derive(Args)]
struct ConstructArgs {
    /// Full job JSON file; inline flags are then rejected
    #[arg(long)]
    job: Option<PathBuf>,
    #[command(flatten)]
    domain: DomainArgs,
    #[command(flatten)]
    windings: WindingArgs,
    /// Center for the exponential construction (all-zero class)
    #[arg(long)]
    c: Option<String>,
    #[command(flatten)]
    options: OptionArgs,
}

#[derive(Args)]
struct EmbedArgs {
    /// Full job JSON file; inline flags are then rejected
    #[arg(long)]
    job: Option<PathBuf>,
    #[command(flatten)]
    domain: DomainArgs,
    #[command(flatten)]
    windings: WindingArgs,
    #[command(flatten)]
    options: OptionArgs,
}

#[derive(Args)]
struct DoublePointsArgs {
    /// Full job JSON file; inline flags are then rejected
    #[arg(long)]
    job: Option<PathBuf>,
    /// Map expression "(first, second)"
    #[arg(long)]
    map: Option<String>,
    #[command(flatten)]
    domain: DomainArgs,
    #[command(flatten)]
    options: OptionArgs,
}

#[derive(Args)]
struct ReduceArgs {
    /// Full job JSON file; inline flags are then rejected
    #[arg(long)]
    job: Option<PathBuf>,
    #[command(flatten)]
    domain: DomainArgs,
    #[command(flatten)]
    windings: WindingArgs,
    #[command(flatten)]
    options: OptionArgs,
}

#[derive(Args)]
struct GuardArgs {
    /// Full job JSON file; inline flags are then rejected
    #[arg(long)]
    job: Option<PathBuf>,
    /// Guard kind: not-proper-first or symmetry
    #[arg(long)]
    kind: Option<String>,
    /// First component expression
    #[arg(long)]
    f: Option<String>,
    /// Candidate self-map for the symmetry guard
    #[arg(long)]
    sigma: Option<String>,
    #[command(flatten)]
    options: OptionArgs,
}

#[derive(Args)]
struct CorpusArgs {
    #[command(subcommand)]
    action: CorpusCmd,
}

#[derive(Subcommand)]
enum CorpusCmd {
    /// List the embedded jobs
    List,
    /// Run one embedded job by name
    Run {
        name: String,
        #[command(flatten)]
        options: OptionArgs,
    },
}

fn base_spec(command: &str) -> JobSpec {
    JobSpec {
        schema: SCHEMA.into(),
        command: command.into(),
        domain: None,
        windings: None,
        map: None,
        c: None,
        f: None,
        sigma: None,
        guard: None,
        corpus: None,
        options: Options::default(),
    }
}

fn load_job(path: &Path, command: &str) -> Result<JobSpec> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidParameter(format!("cannot read {}: {e}", path.display())))?;
    let spec: JobSpec = serde_json::from_str(&text)
        .map_err(|e| Error::InvalidParameter(format!("invalid job file: {e}")))?;
    if spec.command != command {
        return Err(Error::InvalidParameter(format!(
            "job file runs `{}` but was passed to `{command}`",
            spec.command
        )));
    }
    Ok(spec)
}

fn execute(cli: Cli) -> Result<JobOutput> {
    match cli.cmd {
        Cmd::Classify(a) => {
            if let Some(path) = &a.job {
                return run_job(&load_job(path, "classify")?);
            }
            let mut spec = base_spec("classify");
            spec.domain = a.domain.to_dto()?;
            spec.windings = a.windings.to_dto()?;
            spec.map = a.map.map(MapInput::Pair);
            spec.options = a.options.apply(spec.options);
            run_job(&spec)
        }
        Cmd::Construct(a) => {
            if let Some(path) = &a.job {
                return run_job(&load_job(path, "construct")?);
            }
            let mut spec = base_spec("construct");
            spec.domain = a.domain.to_dto()?;
            spec.windings = a.windings.to_dto()?;
            spec.c = a.c.as_deref().map(expr::parse_constant).transpose()?;
            spec.options = a.options.apply(spec.options);
            run_job(&spec)
        }
        Cmd::Embed(a) => {
            if let Some(path) = &a.job {
                return run_job(&load_job(path, "embed")?);
            }
            let mut spec = base_spec("embed");
            spec.domain = a.domain.to_dto()?;
            spec.windings = a.windings.to_dto()?;
            spec.options = a.options.apply(spec.options);
            run_job(&spec)
        }
        Cmd::Verify(a) => {
            if let Some(path) = &a.job {
                return run_job(&load_job(path, "verify")?);
            }
            let mut spec = base_spec("verify");
            spec.domain = a.domain.to_dto()?;
            spec.windings = a.windings.to_dto()?;
            spec.map = a.map.map(MapInput::Pair);
            spec.options = a.options.apply(spec.options);
            run_job(&spec)
        }
        Cmd::DoublePoints(a) => {
            if let Some(path) = &a.job {
                return run_job(&load_job(path, "double-points")?);
            }
            let mut spec = base_spec("double-points");
            spec.domain = a.domain.to_dto()?;
            spec.map = a.map.map(MapInput::Pair);
            spec.options = a.options.apply(spec.options);
            run_job(&spec)
        }
        Cmd::Reduce(a) => {
            if let Some(path) = &a.job {
                return run_job(&load_job(path, "reduce")?);
            }
            let mut spec = base_spec("reduce");
            spec.domain = a.domain.to_dto()?;
            spec.windings = a.windings.to_dto()?;
            spec.options = a.options.apply(spec.options);
            run_job(&spec)
        }
        Cmd::Guard(a) => {
            if let Some(path) = &a.job {
                return run_job(&load_job(path, "guard")?);
            }
            let mut spec = base_spec("guard");
            spec.guard = a.kind;
            spec.f = a.f;
            spec.sigma = a.sigma;
            spec.options = a.options.apply(spec.options);
            run_job(&spec)
        }
        Cmd::Corpus(a) => match a.action {
            CorpusCmd::List => corpus_list(),
            CorpusCmd::Run { name, options } => corpus_run(&name, &options),
        },
    }
}

#[derive(Serialize)]
struct CorpusRow {
    name: &'static str,
    command: String,
}

#[derive(Serialize)]
struct CorpusList {
    schema: &'static str,
    command: &'static str,
    result: Vec<CorpusRow>,
}

fn corpus_list() -> Result<JobOutput> {
    let mut rows = Vec::new();
    for entry in corpus::ENTRIES {
        let spec: JobSpec = serde_json::from_str(entry.spec).map_err(|e| {
            Error::InternalInconsistency(format!("embedded job {} is invalid: {e}", entry.name))
        })?;
        rows.push(CorpusRow {
            name: entry.name,
            command: spec.command,
        });
    }
    let listing = CorpusList {
        schema: SCHEMA,
        command: "corpus",
        result: rows,
    };
    let mut json = serde_json::to_string_pretty(&listing)
        .map_err(|e| Error::InternalInconsistency(format!("serialization failed: {e}")))?;
    json.push('\n');
    Ok(JobOutput { json, exit: 0 })
}

fn corpus_run(name: &str, options: &OptionArgs) -> Result<JobOutput> {
    let entry = corpus::find(name).ok_or_else(|| {
        Error::InvalidParameter(format!(
            "unknown corpus job `{name}` (see `okaforge corpus list`)"
        ))
    })?;
    let mut spec: JobSpec = serde_json::from_str(entry.spec).map_err(|e| {
        Error::InternalInconsistency(format!("embedded job {name} is invalid: {e}"))
    })?;
    spec.options = options.apply(spec.options);
    run_job(&spec)
}

fn exit_for(e: &Error) -> i32 {
    match e {
        Error::SearchExhausted(_)
        | Error::PrecisionExhausted(_)
        | Error::AmbiguousRoot(_)
        | Error::AmbiguousFiber(_)
        | Error::AmbiguousBoundary(_) => 3,
        _ => 2,
    }
}

fn main() {
    let cli = Cli::parse();
    let code = match execute(cli) {
        Ok(out) => {
            print!("{}", out.json);
            out.exit
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_for(&e)
        }
    };
    std::process::exit(code);
}
