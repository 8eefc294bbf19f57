//! Command dispatch.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use dehn_core::dehngraph::{build_d2, check_d2};
use dehn_core::diagram::{parse_pd, DiagramError, PdError};
use dehn_core::invariants::{check_lescop_relation, InvariantError};
use dehn_core::oracle::{fox_alexander, milnor_check};
use dehn_core::pipeline::{analyze, build_graph, run_checks, AnalysisOptions, CheckReport, KnotReport, PipelineError};
use dehn_core::PdCode;
use rayon::prelude::*;

use crate::formats::{
    self, ComputeChecksJson, ComputeJson, ErrorJson, GraphJson, GraphOutputJson, OracleJson, SCHEMA_VERSION,
};
use crate::input::{self, Entry, Input};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Compute,
    Graph,
    Check,
    Oracle,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Text,
    Dot,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub input: Input,
    pub command: Command,
    pub outer_region: Option<usize>,
    pub pivot_seed: Option<u64>,
    pub format: Format,
    /// Worker threads; 0 uses one per core.
    pub parallel: usize,
    /// Pivot seeds tried by `check`.
    pub seeds: u64,
    /// Include the diagram and chain complex in `compute` JSON.
    pub dump: bool,
}

#[derive(Debug, Parser)]
#[command(name = "dehn", version, about = "Torsion and defect of knot exteriors from PD codes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// Torsion, defect and sanity checks for each knot.
    Compute {
        #[command(flatten)]
        common: CommonArgs,
        /// Also emit the diagram and the chain complex.
        #[arg(long)]
        dump: bool,
    },
    /// The Dehn graph, as JSON, text or DOT.
    Graph {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Run the self-check suite and report pass/fail per check.
    Check {
        #[command(flatten)]
        common: CommonArgs,
        /// Number of random pivot seeds to compare against.
        #[arg(long, default_value_t = 10)]
        seeds: u64,
    },
    /// Alexander polynomial by Fox calculus.
    Oracle {
        #[command(flatten)]
        common: CommonArgs,
    },
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("source").required(true).args(["pd", "file"])))]
pub struct CommonArgs {
    /// PD code, e.g. "[[1,4,2,5],[3,6,4,1],[5,2,6,3]]" or "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)".
    #[arg(long)]
    pub pd: Option<String>,
    /// File with one PD code per line ('-' for standard input).
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Region to use as the unbounded one.
    #[arg(long)]
    pub outer_region: Option<usize>,
    /// Seed for the propagator's pivot order.
    #[arg(long)]
    pub pivot_seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker threads (0 = one per core).
    #[arg(long, default_value_t = 1)]
    pub parallel: usize,
}

impl Cli {
    pub fn into_config(self) -> RunConfig {
        let (command, common, seeds, dump) = match self.command {
            CliCommand::Compute { common, dump } => (Command::Compute, common, 0, dump),
            CliCommand::Graph { common } => (Command::Graph, common, 0, false),
            CliCommand::Check { common, seeds } => (Command::Check, common, seeds, false),
            CliCommand::Oracle { common } => (Command::Oracle, common, 0, false),
        };
        let input = match (common.pd, common.file) {
            (Some(pd), _) => Input::Inline(pd),
            (None, Some(f)) => Input::File(f),
            (None, None) => unreachable!("clap requires one input source"),
        };
        RunConfig {
            input,
            command,
            outer_region: common.outer_region,
            pivot_seed: common.pivot_seed,
            format: common.format,
            parallel: common.parallel,
            seeds,
            dump,
        }
    }
}

/// Failure categories, each with its own exit code.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    Usage,
    Parse,
    NonPlanar,
    NonExact,
    UnsupportedRepresentation,
    CheckFailed,
    Io,
    InvalidRegion,
    Internal,
}

impl ErrorKind {
    pub fn exit_code(self) -> i32 {
        match self {
            ErrorKind::Usage => 2,
            ErrorKind::Parse => 3,
            ErrorKind::NonPlanar => 4,
            ErrorKind::NonExact => 5,
            ErrorKind::UnsupportedRepresentation => 6,
            ErrorKind::CheckFailed => 7,
            ErrorKind::Io => 8,
            ErrorKind::InvalidRegion => 9,
            ErrorKind::Internal => 10,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ErrorKind::Usage => "usage",
            ErrorKind::Parse => "parse",
            ErrorKind::NonPlanar => "non_planar",
            ErrorKind::NonExact => "non_exact",
            ErrorKind::UnsupportedRepresentation => "unsupported_representation",
            ErrorKind::CheckFailed => "check_failed",
            ErrorKind::Io => "io",
            ErrorKind::InvalidRegion => "invalid_region",
            ErrorKind::Internal => "internal",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliError {
    pub kind: ErrorKind,
    pub message: String,
    pub line: Option<usize>,
    pub pd: Option<String>,
}

impl CliError {
    pub fn new(kind: ErrorKind, message: impl Into<String>) -> Self {
        CliError { kind, message: message.into(), line: None, pd: None }
    }

    fn at(mut self, entry: &Entry) -> Self {
        self.line = Some(entry.line);
        self.pd = Some(entry.text.clone());
        self
    }

    pub fn to_json(&self) -> String {
        let e = ErrorJson {
            schema_version: SCHEMA_VERSION,
            error: self.kind.name().to_string(),
            code: self.kind.exit_code(),
            message: self.message.clone(),
            line: self.line,
            pd: self.pd.clone(),
        };
        serde_json::to_string(&e).expect("error JSON serializes")
    }
}

impl From<PdError> for CliError {
    fn from(e: PdError) -> Self {
        CliError::new(ErrorKind::Parse, e.to_string())
    }
}

impl From<PipelineError> for CliError {
    fn from(e: PipelineError) -> Self {
        let kind = match &e {
            PipelineError::Diagram(DiagramError::NotPlanar { .. }) => ErrorKind::NonPlanar,
            PipelineError::Diagram(DiagramError::NoSuchRegion { .. }) => ErrorKind::InvalidRegion,
            PipelineError::Invariant(InvariantError::NotExact(_)) => ErrorKind::NonExact,
            PipelineError::Invariant(InvariantError::UnsupportedRepresentation { .. }) => {
                ErrorKind::UnsupportedRepresentation
            }
            _ => ErrorKind::Internal,
        };
        CliError::new(kind, e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::new(ErrorKind::Internal, e.to_string())
    }
}

/// Output for one knot and whether its checks passed.
struct KnotOutput {
    text: String,
    passed: bool,
}

fn options(config: &RunConfig) -> AnalysisOptions {
    AnalysisOptions { outer_region: config.outer_region, pivot_seed: config.pivot_seed }
}

fn compute(config: &RunConfig, pd: &PdCode) -> Result<KnotOutput, CliError> {
    let r = analyze(pd, &options(config))?;
    let alexander = fox_alexander(&r.diagram.wirtinger());
    let checks = ComputeChecksJson {
        exact: true,
        propagator: r.propagator.identities(&r.complex).map(|i| i.all()).unwrap_or(false),
        lescop: check_lescop_relation(&r.torsion, &r.defect),
        milnor: milnor_check(&r.torsion, &alexander),
        d2_consistency: check_d2(&build_d2(&r.diagram), &r.diagram, &r.representation).is_ok(),
    };
    let passed = checks.propagator && checks.lescop && checks.milnor && checks.d2_consistency;
    let text = match config.format {
        Format::Json => serde_json::to_string(&compute_json(config, pd, &r, checks))?,
        Format::Text => compute_text(pd, &r, &checks),
        Format::Dot => unreachable!("validated"),
    };
    Ok(KnotOutput { text, passed })
}

fn compute_json(config: &RunConfig, pd: &PdCode, r: &KnotReport, checks: ComputeChecksJson) -> ComputeJson {
    ComputeJson {
        schema_version: SCHEMA_VERSION,
        pd: pd.to_string(),
        crossings: pd.len(),
        unbounded_region: r.diagram.unbounded_region(),
        torsion: (&r.torsion).into(),
        defect: formats::defect_json(&r.defect.representative, &r.defect_terms, &r.graph),
        checks,
        diagram: config.dump.then(|| (&r.diagram).into()),
        complex: config.dump.then(|| formats::complex_json(&r.complex, &r.graph)),
    }
}

fn pass(b: bool) -> &'static str {
    if b {
        "pass"
    } else {
        "FAIL"
    }
}

fn compute_text(pd: &PdCode, r: &KnotReport, c: &ComputeChecksJson) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "pd: {pd}");
    let _ = writeln!(s, "crossings: {}", pd.len());
    let _ = writeln!(s, "torsion: {}", r.torsion.raw);
    let _ = writeln!(s, "torsion (normalized): {}", r.torsion.normalized);
    let _ = writeln!(s, "defect: {}", r.defect.representative);
    let _ = write!(
        s,
        "checks: exact {}, propagator {}, lescop {}, milnor {}, d2_consistency {}",
        pass(c.exact),
        pass(c.propagator),
        pass(c.lescop),
        pass(c.milnor),
        pass(c.d2_consistency)
    );
    s
}

fn graph(config: &RunConfig, pd: &PdCode) -> Result<KnotOutput, CliError> {
    let (_, g) = build_graph(pd, config.outer_region)?;
    let text = match config.format {
        Format::Dot => g.export_dot().trim_end().to_string(),
        Format::Json => serde_json::to_string(&GraphOutputJson {
            schema_version: SCHEMA_VERSION,
            pd: pd.to_string(),
            graph: GraphJson::from(&g),
        })?,
        Format::Text => {
            let mut s = format!("pd: {pd}");
            for e in g.edges() {
                let _ = write!(s, "\n{} -> {}: {}", g.vertex_name(e.from), g.vertex_name(e.to), e.label);
            }
            s
        }
    };
    Ok(KnotOutput { text, passed: true })
}

fn check(config: &RunConfig, pd: &PdCode) -> Result<KnotOutput, CliError> {
    let r: CheckReport = run_checks(pd, &options(config), config.seeds)?;
    let passed = r.all_passed();
    let text = match config.format {
        Format::Json => serde_json::to_string(&formats::check_json(pd.to_string(), config.seeds, &r))?,
        Format::Text => {
            let rows = [
                ("exact", r.exact),
                ("propagator", r.propagator),
                ("d2_consistency", r.d2_consistency),
                ("lescop", r.lescop),
                ("milnor", r.milnor),
                ("seed_independence", r.seed_independent),
                ("region_independence", r.region_independent),
            ];
            let mut s = format!("pd: {pd}");
            for (name, ok) in rows {
                let _ = write!(s, "\n  {name}: {}", pass(ok));
            }
            let _ = write!(s, "\nresult: {}", pass(passed));
            s
        }
        Format::Dot => unreachable!("validated"),
    };
    Ok(KnotOutput { text, passed })
}

fn oracle(config: &RunConfig, pd: &PdCode) -> Result<KnotOutput, CliError> {
    let (d, _) = build_graph(pd, config.outer_region)?;
    let a = fox_alexander(&d.wirtinger());
    let text = match config.format {
        Format::Json => serde_json::to_string(&OracleJson {
            schema_version: SCHEMA_VERSION,
            pd: pd.to_string(),
            alexander: a.coefficients().iter().map(|c| c.to_string()).collect(),
            text: a.to_string(),
        })?,
        Format::Text => a.to_string(),
        Format::Dot => unreachable!("validated"),
    };
    Ok(KnotOutput { text, passed: true })
}

fn process(config: &RunConfig, entry: &Entry) -> Result<KnotOutput, CliError> {
    let pd = parse_pd(&entry.text).map_err(|e| CliError::from(e).at(entry))?;
    log::debug!("line {}: {} crossings", entry.line, pd.len());
    let result = match config.command {
        Command::Compute => compute(config, &pd),
        Command::Graph => graph(config, &pd),
        Command::Check => check(config, &pd),
        Command::Oracle => oracle(config, &pd),
    };
    result.map_err(|e| e.at(entry))
}

fn validate(config: &RunConfig) -> Result<(), CliError> {
    if config.format == Format::Dot && config.command != Command::Graph {
        return Err(CliError::new(ErrorKind::Usage, "--format dot is only available for the graph command"));
    }
    Ok(())
}

fn execute(config: &RunConfig) -> Result<Vec<KnotOutput>, CliError> {
    validate(config)?;
    let entries = input::read(&config.input).map_err(|e| CliError::new(ErrorKind::Io, e.to_string()))?;
    if entries.is_empty() {
        return Err(CliError::new(ErrorKind::Parse, "input contains no PD codes"));
    }
    log::info!("{} knot(s), {} worker(s)", entries.len(), config.parallel);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.parallel)
        .build()
        .map_err(|e| CliError::new(ErrorKind::Internal, e.to_string()))?;
    let results: Vec<Result<KnotOutput, CliError>> =
        pool.install(|| entries.par_iter().map(|e| process(config, e)).collect());
    results.into_iter().collect()
}

/// Runs `config`, writing results to `out` and diagnostics to `err`.
/// Returns the process exit code. Nothing is written to `out` unless every
/// knot was processed.
pub fn run(config: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let outputs = match execute(config) {
        Ok(o) => o,
        Err(e) => {
            log::error!("{}", e.message);
            let _ = writeln!(err, "{}", e.to_json());
            return e.kind.exit_code();
        }
    };
    let separator = if config.format == Format::Json { "\n" } else { "\n\n" };
    let body = outputs.iter().map(|o| o.text.as_str()).collect::<Vec<_>>().join(separator);
    if let Err(e) = writeln!(out, "{body}").and_then(|_| out.flush()) {
        let e = CliError::new(ErrorKind::Io, e.to_string());
        let _ = writeln!(err, "{}", e.to_json());
        return e.kind.exit_code();
    }
    let failed = outputs.iter().filter(|o| !o.passed).count();
    if failed > 0 {
        let e = CliError::new(ErrorKind::CheckFailed, format!("{failed} knot(s) failed a check"));
        let _ = writeln!(err, "{}", e.to_json());
        return e.kind.exit_code();
    }
    0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(command: Command, pd: &str, format: Format) -> RunConfig {
        RunConfig {
            input: Input::Inline(pd.into()),
            command,
            outer_region: None,
            pivot_seed: None,
            format,
            parallel: 1,
            seeds: 2,
            dump: false,
        }
    }

    fn run_to_strings(c: &RunConfig) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(c, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn dot_needs_graph() {
        let (code, out, err) = run_to_strings(&config(Command::Compute, "[[1,2,2,1]]", Format::Dot));
        assert_eq!(code, 2);
        assert!(out.is_empty());
        assert!(err.contains("\"usage\""));
    }

    #[test]
    fn oracle_text() {
        let (code, out, _) = run_to_strings(&config(Command::Oracle, "[[1,4,2,5],[3,6,4,1],[5,2,6,3]]", Format::Text));
        assert_eq!(code, 0);
        assert_eq!(out, "t^2-t+1\n");
    }

    #[test]
    fn check_text() {
        let (code, out, _) = run_to_strings(&config(Command::Check, "[[1,2,2,1]]", Format::Text));
        assert_eq!(code, 0);
        assert!(out.ends_with("result: pass\n"));
    }

    #[test]
    fn pipeline_errors_map_to_kinds() {
        let w = dehn_core::mscomplex::ExactnessWitness {
            rank_d2: 0,
            rank_d1: 0,
            c2_dim: 1,
            c1_dim: 2,
            c0_dim: 1,
            boundary_squared_vanishes: true,
        };
        let cases = [
            (PipelineError::Diagram(DiagramError::NotPlanar { faces: 3, expected: 5 }), ErrorKind::NonPlanar),
            (PipelineError::Diagram(DiagramError::NoSuchRegion { region: 9, count: 3 }), ErrorKind::InvalidRegion),
            (PipelineError::Invariant(InvariantError::NotExact(w)), ErrorKind::NonExact),
            (
                PipelineError::Invariant(InvariantError::UnsupportedRepresentation { dim: 2 }),
                ErrorKind::UnsupportedRepresentation,
            ),
            (PipelineError::Invariant(InvariantError::PropagatorIdentity), ErrorKind::Internal),
        ];
        for (e, kind) in cases {
            assert_eq!(CliError::from(e).kind, kind);
        }
    }

    #[test]
    fn exit_codes_are_distinct() {
        use ErrorKind::*;
        let kinds =
            [Usage, Parse, NonPlanar, NonExact, UnsupportedRepresentation, CheckFailed, Io, InvalidRegion, Internal];
        let mut codes: Vec<i32> = kinds.iter().map(|k| k.exit_code()).collect();
        codes.sort();
        codes.dedup();
        assert_eq!(codes.len(), kinds.len());
        assert!(!codes.contains(&0) && !codes.contains(&1));
    }
}
