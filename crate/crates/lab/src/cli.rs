//! Command-line interface: `run`, `compare`, `repro`, `its` and `gen`.
//!
//! Exit codes: 0 success, 1 invalid input or arguments (and failed repro
//! cells), 2 I/O failure, 3 trace integrity failure.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use pbdrr_core::{compute_its, compute_metrics, simulate, Policy, Ticks, Workload, DEFAULT_OTS};
use serde_json::{json, Value};

use crate::cases::CaseId;
use crate::error::{LabError, Result};
use crate::report::{self, OutputFormat};
use crate::repro::repro;
use crate::workload_io::{self, WorkloadFormat};

#[derive(Debug, Parser)]
#[command(
    name = "pbdrr",
    version,
    about = "Round-robin scheduling lab with dynamic intelligent time slices"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Simulate one policy and print its trace and metrics.
    Run(RunArgs),
    /// Run several policies on the same workload and tabulate their metrics.
    Compare(CompareArgs),
    /// Reproduce the published tables for a built-in case.
    Repro(ReproArgs),
    /// Print the ITS breakdown of a workload.
    Its(ItsArgs),
    /// Generate a seeded random workload.
    Gen(GenArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PolicyArg {
    Pbdrr,
    Mrr,
    Rr,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Workload file (CSV, or JSON when the extension is .json).
    #[arg(long, conflicts_with = "case")]
    pub input: Option<PathBuf>,
    /// Built-in case instead of a file: 1, 2, 3 or illustration.
    #[arg(long)]
    pub case: Option<String>,
    /// Override the format guessed from the file extension.
    #[arg(long, value_enum)]
    pub input_format: Option<WorkloadFormat>,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "text")]
    pub format: OutputFormat,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum)]
    pub policy: PolicyArg,
    /// Original time slice for pbdrr and mrr.
    #[arg(long, default_value_t = DEFAULT_OTS)]
    pub ots: Ticks,
    /// Fixed quantum, required for rr.
    #[arg(long)]
    pub quantum: Option<Ticks>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Comma-separated policies, e.g. `mrr,pbdrr`.
    #[arg(long, value_enum, value_delimiter = ',', default_value = "mrr,pbdrr")]
    pub policies: Vec<PolicyArg>,
    #[arg(long, default_value_t = DEFAULT_OTS)]
    pub ots: Ticks,
    /// Fixed quantum, required when rr is listed.
    #[arg(long)]
    pub quantum: Option<Ticks>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ReproArgs {
    /// 1, 2, 3, illustration, or all.
    #[arg(long)]
    pub case: String,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ItsArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, default_value_t = DEFAULT_OTS)]
    pub ots: Ticks,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    /// Number of processes.
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Inclusive burst range, `LO..HI`.
    #[arg(long, default_value = "1..60")]
    pub burst: String,
    /// Inclusive priority range, `LO..HI`.
    #[arg(long, default_value = "1..9")]
    pub prio: String,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: WorkloadFormat,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn load(input: &InputArgs) -> Result<Workload> {
    match (&input.input, &input.case) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path).map_err(|source| LabError::Io {
                path: path.clone(),
                source,
            })?;
            let format = input.input_format.unwrap_or_else(|| WorkloadFormat::from_path(path));
            workload_io::parse_workload(&text, format)
        }
        (None, Some(case)) => Ok(case.parse::<CaseId>()?.case().workload()),
        (None, None) => Err(LabError::argument("either --input or --case is required")),
    }
}

fn policy(arg: PolicyArg, ots: Ticks, quantum: Option<Ticks>) -> Result<Policy> {
    Ok(match arg {
        PolicyArg::Pbdrr => Policy::pbdrr(ots)?,
        PolicyArg::Mrr => Policy::mrr(ots)?,
        PolicyArg::Rr => Policy::round_robin(quantum.ok_or_else(|| LabError::argument("rr requires --quantum"))?)?,
    })
}

fn emit(out: Option<&Path>, stdout: &mut dyn Write, body: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, body).map_err(|source| LabError::Io {
            path: path.to_path_buf(),
            source,
        }),
        None => Ok(stdout.write_all(body.as_bytes())?),
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value serializes");
    s.push('\n');
    s
}

fn reject_svg(format: OutputFormat) -> Result<()> {
    if format == OutputFormat::Svg {
        return Err(LabError::argument("--format svg is only valid for trace output (run)"));
    }
    Ok(())
}

/// Runs one invocation and returns the process exit code.
pub fn execute(cli: Cli, stdout: &mut dyn Write) -> Result<i32> {
    match cli.command {
        Command::Run(args) => {
            let workload = load(&args.input)?;
            let policy = policy(args.policy, args.ots, args.quantum)?;
            let trace = simulate(&workload, policy)?;
            let metrics = compute_metrics(&trace, &workload)?;
            let body = match args.output.format {
                OutputFormat::Text => {
                    let mut s = format!("policy: {policy}\n");
                    if !trace.breakdowns.is_empty() {
                        s.push_str(&report::breakdown_text(&workload, &trace.breakdowns));
                    }
                    s.push_str("gantt: ");
                    s.push_str(&report::render_gantt_text(&trace));
                    s.push_str(&report::metrics_text(&metrics));
                    s
                }
                OutputFormat::Json => pretty(&json!({
                    "policy": policy,
                    "breakdown": report::breakdown_json(&workload, &trace.breakdowns),
                    "trace": report::trace_json(&trace),
                    "metrics": report::metrics_json(policy, &metrics),
                })),
                OutputFormat::Csv => {
                    let mut s = report::trace_csv(&trace);
                    s.push('\n');
                    s.push_str(report::METRICS_CSV_HEADER);
                    s.push_str(&report::metrics_csv_row(policy, &metrics));
                    s
                }
                OutputFormat::Svg => report::render_gantt_svg(&trace),
            };
            emit(args.output.out.as_deref(), stdout, &body)?;
            Ok(0)
        }
        Command::Compare(args) => {
            reject_svg(args.output.format)?;
            let workload = load(&args.input)?;
            let policies = args
                .policies
                .iter()
                .map(|&p| policy(p, args.ots, args.quantum))
                .collect::<Result<Vec<_>>>()?;
            let report = report::build_comparison(&workload, &policies)?;
            let body = match args.output.format {
                OutputFormat::Json => pretty(&report.to_json()),
                OutputFormat::Csv => report.to_csv(),
                _ => report.to_text(),
            };
            emit(args.output.out.as_deref(), stdout, &body)?;
            Ok(0)
        }
        Command::Repro(args) => {
            reject_svg(args.output.format)?;
            let ids = if args.case.eq_ignore_ascii_case("all") {
                CaseId::ALL.to_vec()
            } else {
                vec![args.case.parse::<CaseId>()?]
            };
            let reports = ids.into_iter().map(repro).collect::<Result<Vec<_>>>()?;
            let body = match args.output.format {
                OutputFormat::Json if reports.len() == 1 => pretty(&reports[0].to_json()),
                OutputFormat::Json => pretty(&Value::Array(reports.iter().map(|r| r.to_json()).collect())),
                OutputFormat::Csv => {
                    let mut s = String::from("case,verdict,cell,expected,computed\n");
                    for r in &reports {
                        for c in &r.cells {
                            s.push_str(&format!(
                                "{},{},{},\"{}\",\"{}\"\n",
                                r.case, c.verdict, c.cell, c.expected, c.computed
                            ));
                        }
                    }
                    s
                }
                _ => reports.iter().map(|r| r.to_text()).collect::<Vec<_>>().join("\n"),
            };
            emit(args.output.out.as_deref(), stdout, &body)?;
            Ok(if reports.iter().all(|r| r.passed()) { 0 } else { 1 })
        }
        Command::Its(args) => {
            reject_svg(args.output.format)?;
            let workload = load(&args.input)?;
            let rows = compute_its(&workload, args.ots)?;
            let body = match args.output.format {
                OutputFormat::Json => pretty(&report::breakdown_json(&workload, &rows)),
                OutputFormat::Csv => report::breakdown_csv(&workload, &rows),
                _ => report::breakdown_text(&workload, &rows),
            };
            emit(args.output.out.as_deref(), stdout, &body)?;
            Ok(0)
        }
        Command::Gen(args) => {
            let bursts = workload_io::parse_range::<Ticks>(&args.burst)?;
            let prios = workload_io::parse_range::<u32>(&args.prio)?;
            let workload = workload_io::generate_workload(args.n, bursts, prios, args.seed)?;
            let body = workload_io::serialize_workload(&workload, args.format);
            emit(args.out.as_deref(), stdout, &body)?;
            Ok(0)
        }
    }
}

/// Parses `argv` and executes it; usage errors map to exit code 1.
pub fn main_with_args<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match execute(cli, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
