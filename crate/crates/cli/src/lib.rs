//! The `powercrit` command line: analysis reports, the metacyclic census,
//! property suites and graph export.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
//! 3 scale or resource limit exceeded.

pub mod descriptor;
pub mod report;
pub mod suites;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use powercrit_core::frobenius::census;
use powercrit_core::power_graph::{enhanced_graph_rows, export};
use powercrit_core::{Error, Group, Limits, PowerGraph};

use crate::report::{to_sorted_json, CensusRow};
use crate::suites::Suite;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_SCALE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "powercrit", version, about = "Power graphs, critical classes and critical groups")]
pub struct Cli {
    /// Worker threads for parallel scans (default: available parallelism).
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Analyze a group, or a single element of it.
    Analyze(AnalyzeArgs),
    /// Enumerate metacyclic groups C_{p^a} x| C_{q^b} and their flags.
    Census(CensusArgs),
    /// Run property suites over the built-in family of groups.
    Verify(VerifyArgs),
    /// Export the power graph or the enhanced power graph.
    Export(ExportArgs),
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// Group spec, e.g. `D:15`, `S:4`, `M:5,2,2,2,7`, `C:2 x Q:3`.
    pub spec: String,
    #[arg(long)]
    pub json: bool,
    /// Also write the power graph in DOT format to this path.
    #[arg(long)]
    pub dot: Option<PathBuf>,
    /// Report on one element only; works above the materialization limit.
    #[arg(long)]
    pub element: Option<String>,
    /// Omit timing so output is byte-identical across runs.
    #[arg(long)]
    pub stable: bool,
}

#[derive(Debug, Args)]
pub struct CensusArgs {
    #[arg(long)]
    pub max_order: u64,
    /// Build and classify every entry up to this order.
    #[arg(long, default_value_t = 0)]
    pub verify_up_to: u64,
    /// One JSON object per line instead of a table.
    #[arg(long)]
    pub json: bool,
    /// List every valid r, not only the canonical one.
    #[arg(long)]
    pub all_r: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    pub suite: Suite,
    #[arg(long)]
    pub max_order: usize,
    #[arg(long)]
    pub json: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Format {
    Dot,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum GraphKind {
    Power,
    Enhanced,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    pub spec: String,
    #[arg(long, value_enum)]
    pub format: Format,
    #[arg(long, value_enum, default_value = "power")]
    pub graph: GraphKind,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

enum Failure {
    Core(Error),
    Io(std::io::Error),
    Usage(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

pub fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::Scale { .. } | Error::Resource { .. } => EXIT_SCALE,
        Error::Consistency(_) => EXIT_VERIFICATION,
        _ => EXIT_USAGE,
    }
}

/// Runs the command line given by `args` (program name first).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    if let Some(n) = cli.workers {
        // the global pool can only be configured once per process
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    let result = match &cli.command {
        Command::Analyze(a) => analyze(a, out),
        Command::Census(c) => run_census(c, out),
        Command::Verify(v) => verify(v, out),
        Command::Export(x) => run_export(x, out),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let (code, msg) = match f {
                Failure::Core(e) => (exit_code_for(&e), e.to_string()),
                Failure::Io(e) => (EXIT_USAGE, format!("i/o error: {e}")),
                Failure::Usage(m) => (EXIT_USAGE, m),
                Failure::Verification(m) => (EXIT_VERIFICATION, m),
            };
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

fn load(spec: &str) -> Result<Group, Failure> {
    Ok(Group::parse(spec)?.with_limits(Limits::from_env()?))
}

fn analyze(args: &AnalyzeArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let group = load(&args.spec)?;
    if let Some(text) = &args.element {
        let x = descriptor::parse_element(&group, text)?;
        let rep = report::analyze_element(&group, x, args.stable)?;
        if args.json {
            writeln!(out, "{}", to_sorted_json(&rep, true))?;
        } else {
            write!(out, "{}", report::render_element(&rep))?;
        }
    } else {
        let rep = report::analyze(&group, args.stable)?;
        if args.json {
            writeln!(out, "{}", to_sorted_json(&rep, true))?;
        } else {
            write!(out, "{}", report::render_analysis(&rep))?;
        }
    }
    if let Some(path) = &args.dot {
        let pg = PowerGraph::build(&group)?;
        std::fs::write(path, export::to_dot(&group, pg.rows(), "P"))?;
    }
    Ok(())
}

fn run_census(args: &CensusArgs, out: &mut dyn Write) -> Result<(), Failure> {
    if args.max_order < 1 {
        return Err(Failure::Usage("--max-order must be at least 1".into()));
    }
    if args.verify_up_to > args.max_order {
        return Err(Failure::Usage(format!(
            "--verify-up-to {} exceeds --max-order {}",
            args.verify_up_to, args.max_order
        )));
    }
    let entries = census(args.max_order, args.verify_up_to, args.all_r)?;
    let rows: Vec<CensusRow> = entries.iter().map(CensusRow::from).collect();
    if args.json {
        for row in &rows {
            writeln!(out, "{}", to_sorted_json(row, false))?;
        }
    } else {
        write!(out, "{}", report::render_census(&rows))?;
    }
    let disagreements = rows.iter().filter(|r| r.agrees == Some(false)).count();
    if disagreements > 0 {
        return Err(Failure::Verification(format!(
            "{disagreements} census entries disagree with the power graph"
        )));
    }
    Ok(())
}

fn verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let results = suites::run_suite(args.suite, args.max_order)?;
    if args.json {
        writeln!(out, "{}", to_sorted_json(&results, true))?;
    } else {
        for r in &results {
            if r.passed() {
                writeln!(out, "PASS {} ({} cases)", r.name, r.cases)?;
            } else {
                writeln!(
                    out,
                    "FAIL {} ({} of {} cases violated)",
                    r.name, r.violation_count, r.cases
                )?;
                for v in &r.violations {
                    writeln!(out, "  counterexample: {v}")?;
                }
            }
            if let Some(note) = &r.note {
                writeln!(out, "  note: {note}")?;
            }
        }
    }
    let failed = results.iter().filter(|r| !r.passed()).count();
    if failed > 0 {
        return Err(Failure::Verification(format!("{failed} checks failed")));
    }
    if !args.json {
        writeln!(out, "all {} checks passed", results.len())?;
    }
    Ok(())
}

fn run_export(args: &ExportArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let group = load(&args.spec)?;
    let (rows, name, kind) = match args.graph {
        GraphKind::Power => (PowerGraph::build(&group)?.rows().to_vec(), "P", "power"),
        GraphKind::Enhanced => (enhanced_graph_rows(&group)?, "E", "enhanced"),
    };
    let text = match args.format {
        Format::Dot => export::to_dot(&group, &rows, name),
        Format::Json => {
            let mut value = serde_json::to_value(export::edge_list(&group, &rows)).expect("serializable");
            value["group"] = group.descriptor().into();
            value["graph"] = kind.into();
            format!("{}\n", serde_json::to_string_pretty(&value).unwrap())
        }
    };
    match &args.output {
        Some(path) => std::fs::write(path, text)?,
        None => write!(out, "{text}")?,
    }
    Ok(())
}
