//! The `bihole` command-line tool.
//!
//! Exit codes: 0 ok, 1 I/O or other failure, 2 parse or argument error,
//! 3 unbalanced graph, 4 verification failure, 5 instance too large for the
//! exact oracle.

use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::bounds::{floor_bound, BoundReport};
use crate::error::Error;
use crate::experiment::{run_experiment, ExperimentConfig, ExperimentError};
use crate::extract::{check_trace, find_bihole, find_degenerate};
use crate::graph::{BipartiteGraph, GraphModel};
use crate::oracle::{
    is_bihole, max_bihole_exact, max_degenerate_exact, verify_degenerate_witness, OracleLimits,
};
use crate::rational::Rational;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_UNBALANCED: i32 = 3;
pub const EXIT_VERIFY: i32 = 4;
pub const EXIT_TOO_LARGE: i32 = 5;

#[derive(Debug, Parser)]
#[command(
    name = "bihole",
    version,
    about = "Degree-sequence bounds, witness extraction and exact oracles for biholes in bipartite graphs",
    after_help = "Exit codes: 0 ok, 1 I/O failure, 2 parse/argument error, 3 unbalanced graph, \
                  4 verification failure, 5 instance too large.\n\
                  Graph files use the edge-list format: '#' comments, a header line \"nA nB\", \
                  then one \"u v\" line per edge (0-based). Use '-' to read stdin."
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print every lower bound for a balanced graph.
    Bound(BoundArgs),
    /// Extract a bihole (d = 0) or a balanced d-degenerate witness.
    Extract(ExtractArgs),
    /// Compute the exact optimum by brute force.
    Oracle(OracleArgs),
    /// Generate a graph in canonical edge-list format.
    Gen(GenArgs),
    /// Run a parameter grid and write one CSV row per instance.
    #[command(after_help = concat!(
        "CSV columns: model,n,p,seed,d,floor_bound,ceil_strengthened,avg_deg_bound,extracted,exact,verified\n",
        "  p is empty for models other than gnp; exact is empty when the oracle was not run;\n",
        "  avg_deg_bound is rounded to 12 significant digits.\n",
        "The summary line goes to stderr. BIHOLE_ORACLE_MAX=B[,D] overrides the oracle limits."
    ))]
    Experiment(ExperimentArgs),
}

#[derive(Debug, Args)]
struct BoundArgs {
    /// Edge-list file, or '-' for stdin.
    #[arg(default_value = "-")]
    input: String,
    #[arg(short = 'd', long, default_value_t = 0, allow_negative_numbers = true)]
    d: i64,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
    /// ε for the logarithmic reference value, in (0, 1).
    #[arg(long, default_value = "1/2")]
    eps: Rational,
}

#[derive(Debug, Args)]
struct ExtractArgs {
    #[arg(default_value = "-")]
    input: String,
    #[arg(short = 'd', long, default_value_t = 0, allow_negative_numbers = true)]
    d: i64,
    /// Include the peel trace.
    #[arg(long)]
    trace: bool,
    /// Check the witness, its size against the floor bound, and the trace.
    #[arg(long)]
    verify: bool,
}

#[derive(Debug, Args)]
struct OracleArgs {
    #[arg(default_value = "-")]
    input: String,
    /// Compute β_d instead of β.
    #[arg(short = 'd', long, allow_negative_numbers = true)]
    d: Option<i64>,
    /// Override the maximum side size the oracle accepts.
    #[arg(long)]
    limits: Option<usize>,
}

#[derive(Debug, Args)]
struct GenArgs {
    /// gnp, complete, edgeless, matching, cycle or crown.
    #[arg(long)]
    model: String,
    #[arg(short = 'n', long)]
    n: usize,
    /// Edge probability (gnp only).
    #[arg(short = 'p', long, default_value_t = 0.5)]
    p: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output path; stdout when omitted or '-'.
    #[arg(short = 'o', long)]
    output: Option<String>,
}

#[derive(Debug, Args)]
struct ExperimentArgs {
    /// Comma-separated model names.
    #[arg(long, default_value = "gnp", value_delimiter = ',')]
    models: Vec<String>,
    /// Inclusive range `a..b` (or `a-b`, or a single n).
    #[arg(long, default_value = "4..12")]
    n_range: String,
    #[arg(long, default_value = "0.3", value_delimiter = ',')]
    p_grid: Vec<f64>,
    #[arg(long, default_value = "0", value_delimiter = ',')]
    d_set: Vec<usize>,
    #[arg(long, default_value_t = 10)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Only run the exact oracle for n up to this value.
    #[arg(long)]
    oracle_max: Option<usize>,
    /// Output CSV path; stdout when omitted or '-'.
    #[arg(short = 'o', long)]
    output: Option<PathBuf>,
}

/// Parses `a..b`, `a-b` or `a` into an inclusive list.
pub fn parse_n_range(s: &str) -> Result<Vec<usize>, String> {
    let bad = || format!("invalid n range {s:?}");
    let (lo, hi) = if let Some((a, b)) = s.split_once("..") {
        (a, b.trim_start_matches('='))
    } else if let Some((a, b)) = s.split_once('-') {
        (a, b)
    } else {
        (s, s)
    };
    let lo: usize = lo.trim().parse().map_err(|_| bad())?;
    let hi: usize = hi.trim().parse().map_err(|_| bad())?;
    if lo == 0 || lo > hi {
        return Err(bad());
    }
    Ok((lo..=hi).collect())
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::MalformedHeader(_)
            | Error::MalformedEdgeLine { .. }
            | Error::IndexOutOfRangeAtLine { .. }
            | Error::EdgeOutOfRange { .. }
            | Error::VertexOutOfRange { .. }
            | Error::InvalidProbability(_)
            | Error::InvalidSize(_)
            | Error::InvalidEpsilon
            | Error::NegativeD(_) => EXIT_PARSE,
            Error::UnbalancedGraph { .. } => EXIT_UNBALANCED,
            Error::TraceMismatch { .. } => EXIT_VERIFY,
            Error::InstanceTooLarge { .. } => EXIT_TOO_LARGE,
            _ => EXIT_FAILURE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure {
            code: EXIT_FAILURE,
            message: e.to_string(),
        }
    }
}

fn fail(code: i32, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

fn non_negative(d: i64) -> Result<usize, Error> {
    usize::try_from(d).map_err(|_| Error::NegativeD(d))
}

fn read_graph(input: &str, stdin: &mut dyn Read) -> Result<BipartiteGraph, Failure> {
    let mut text = String::new();
    if input == "-" {
        stdin.read_to_string(&mut text)?;
    } else {
        File::open(input)
            .and_then(|mut f| f.read_to_string(&mut text))
            .map_err(|e| fail(EXIT_FAILURE, format!("{input}: {e}")))?;
    }
    Ok(BipartiteGraph::parse_edge_list(&text)?)
}

fn to_json(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn cmd_bound(args: BoundArgs, stdin: &mut dyn Read, out: &mut dyn Write) -> Result<(), Failure> {
    let d = non_negative(args.d)?;
    let g = read_graph(&args.input, stdin)?;
    let report = BoundReport::compute(&g, d, Some(&args.eps))?;
    if args.json {
        writeln!(out, "{}", to_json(&report))?;
        return Ok(());
    }
    writeln!(out, "n: {}", report.n)?;
    writeln!(out, "d: {}", report.d)?;
    writeln!(out, "edges: {}", report.edge_count)?;
    writeln!(out, "caro_wei_sum: {}", report.caro_wei_sum)?;
    writeln!(out, "floor_bound: {}", report.floor_bound)?;
    writeln!(out, "strengthened: {}", report.strengthened)?;
    writeln!(out, "ceil_strengthened: {}", report.ceil_strengthened)?;
    writeln!(out, "average_degree_bound: {}", report.average_degree_bound)?;
    match &report.log_reference {
        Some(r) => writeln!(
            out,
            "log_reference: {} (eps {}, avg degree {}, n >= (1+eps)*avg: {}; threshold on avg degree unknown)",
            r.value.to_decimal_12(),
            r.eps,
            r.avg_degree,
            r.size_hypothesis_holds
        )?,
        None => writeln!(out, "log_reference: n/a (average degree <= 1)")?,
    }
    Ok(())
}

fn cmd_extract(args: ExtractArgs, stdin: &mut dyn Read, out: &mut dyn Write) -> Result<(), Failure> {
    let d = non_negative(args.d)?;
    let g = read_graph(&args.input, stdin)?;
    let (witness_json, size, witness_ok, trace) = if d == 0 {
        let (w, t) = find_bihole(&g)?;
        let ok = !args.verify || is_bihole(&g, &w)?;
        (serde_json::to_value(&w), w.size(), ok, t)
    } else {
        let (w, t) = find_degenerate(&g, d)?;
        let ok = !args.verify || verify_degenerate_witness(&g, &w, d)?;
        (serde_json::to_value(&w), w.size(), ok, t)
    };
    let witness_json = witness_json.expect("serializable");

    if args.verify {
        if !witness_ok {
            return Err(fail(EXIT_VERIFY, "witness failed verification"));
        }
        let floor = floor_bound(&g, d)?;
        if size < floor {
            return Err(fail(
                EXIT_VERIFY,
                format!("witness size {size} below floor bound {floor}"),
            ));
        }
        if !check_trace(&g, &trace, d)? {
            return Err(fail(EXIT_VERIFY, "strengthened bound decreased along the trace"));
        }
    }

    let doc = if args.trace {
        json!({ "witness": witness_json, "trace": trace })
    } else {
        witness_json
    };
    writeln!(out, "{}", to_json(&doc))?;
    Ok(())
}

fn cmd_oracle(args: OracleArgs, stdin: &mut dyn Read, out: &mut dyn Write) -> Result<(), Failure> {
    let d = args.d.map(non_negative).transpose()?;
    let mut limits = OracleLimits::from_env().map_err(|m| fail(EXIT_PARSE, m))?;
    if let Some(max) = args.limits {
        limits.max_side_bihole = max;
        limits.max_side_degenerate = max;
    }
    let g = read_graph(&args.input, stdin)?;
    let value = match d {
        None | Some(0) => max_bihole_exact(&g, &limits)?,
        Some(d) => max_degenerate_exact(&g, d, &limits)?,
    };
    writeln!(out, "{value}")?;
    Ok(())
}

fn cmd_gen(args: GenArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let model = GraphModel::from_name(&args.model, Some(args.p)).map_err(|m| fail(EXIT_PARSE, m))?;
    let g = BipartiteGraph::generate(model, args.n, args.seed)?;
    let text = g.to_edge_list();
    match args.output.as_deref() {
        None | Some("-") => out.write_all(text.as_bytes())?,
        Some(path) => std::fs::write(path, text)
            .map_err(|e| fail(EXIT_FAILURE, format!("{path}: {e}")))?,
    }
    Ok(())
}

fn cmd_experiment(
    args: ExperimentArgs,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), Failure> {
    let limits = OracleLimits::from_env().map_err(|m| fail(EXIT_PARSE, m))?;
    let n_values = parse_n_range(&args.n_range).map_err(|m| fail(EXIT_PARSE, m))?;
    if let Some(p) = args.p_grid.iter().find(|p| !(0.0..=1.0).contains(*p)) {
        return Err(Error::InvalidProbability(*p).into());
    }
    let cfg = ExperimentConfig {
        models: args.models,
        n_values,
        p_grid: args.p_grid,
        d_set: args.d_set,
        trials: args.trials,
        seed: args.seed,
        oracle_max: args.oracle_max,
        limits,
    };
    let result = match &args.output {
        Some(path) if path.as_os_str() != "-" => {
            let file = File::create(path)
                .map_err(|e| fail(EXIT_FAILURE, format!("{}: {e}", path.display())))?;
            run_experiment(&cfg, &mut BufWriter::new(file))
        }
        _ => run_experiment(&cfg, out),
    };
    let summary = result.map_err(|e| match e {
        ExperimentError::Config(m) => fail(EXIT_PARSE, m),
        ExperimentError::Graph(e) => e.into(),
        ExperimentError::Io(e) => e.into(),
    })?;
    writeln!(err, "{}", summary.line())?;
    if summary.violations > 0 {
        return Err(fail(
            EXIT_VERIFY,
            format!("{} rows failed verification", summary.violations),
        ));
    }
    Ok(())
}

/// Runs the CLI on explicit arguments and streams; returns the exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(rendered.as_bytes())
            } else {
                out.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Bound(a) => cmd_bound(a, stdin, out),
        Command::Extract(a) => cmd_extract(a, stdin, out),
        Command::Oracle(a) => cmd_oracle(a, stdin, out),
        Command::Gen(a) => cmd_gen(a, out),
        Command::Experiment(a) => cmd_experiment(a, out, err),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
