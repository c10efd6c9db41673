//! Command-line interface. Exit codes: 0 success, 1 verification failure,
//! 2 usage or parse error, 3 resource cap.

use crate::budget::{Budget, BudgetError, BUDGET_ENV, DEFAULT_MAX_VERTICES};
use crate::links::{self, LinkError};
use crate::marked_graph::{GraphError, MarkedGraph};
use crate::spine::{self, SpineError, SpineVertex};
use crate::splittings::{self, FreeSplitting, SplittingError};
use crate::suites::{self, SuiteError, SuiteOptions};
use crate::word::{Automorphism, WordError};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::time::Duration;
use thiserror::Error;

/// Output encoding.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
}

#[derive(Debug, Parser)]
#[command(name = "coxspine", version, about = "Outer space spine of the universal Coxeter group W_n")]
pub struct Cli {
    /// Worker threads for parallel enumeration (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Cap on vertices created by an enumeration.
    #[arg(long, global = true, env = BUDGET_ENV, default_value_t = DEFAULT_MAX_VERTICES)]
    pub max_vertices: usize,
    /// Wall-clock cap in milliseconds.
    #[arg(long, global = true)]
    pub max_time_ms: Option<u64>,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Ball of the given radius around the standard {0}-star in L_n.
    Ball {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        radius: usize,
    },
    /// Runs a verification suite and prints its report.
    Verify {
        /// One of: degree-law, lemma-3-2, lemma-3-4, lemma-3-3, prop-3-5,
        /// lemma-4-2, lemma-4-3, lemma-4-4, prop-4-6, scott-swarup, lemma-5-4.
        suite: String,
        #[arg(long)]
        n: usize,
        /// Seed for sampling suites.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Sample count for sampling suites.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        /// Print the report without wall time.
        #[arg(long)]
        deterministic: bool,
    },
    /// Canonical form of a marked graph or free splitting.
    Canon { file: PathBuf },
    /// Image of a marked graph or free splitting under a product of
    /// `s(j,i)` and `t(i,j)` factors; the leftmost factor is applied last.
    Act { product: String, file: PathBuf },
    /// Positive and negative link of a marked graph.
    Link { file: PathBuf },
    /// Common refinement of pairwise compatible one-edge splittings.
    SplittingRefine {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Link vertices of a free splitting: a finite link in the spine, or a
    /// stream of distinct neighbours outside it.
    Neighbors {
        file: PathBuf,
        #[arg(long, default_value_t = 100)]
        count: usize,
    },
}

/// A command failure with its exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Bad arguments or malformed input (exit 2).
    #[error("{0}")]
    Usage(String),
    /// A verification or computation failed (exit 1).
    #[error("{0}")]
    Failed(String),
    /// A resource cap was reached (exit 3).
    #[error("resource cap reached: {0}")]
    Resource(BudgetError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Resource(_) => 3,
        }
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<WordError> for CliError {
    fn from(e: WordError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<SpineError> for CliError {
    fn from(e: SpineError) -> Self {
        match e {
            SpineError::Budget(b) => CliError::Resource(b),
            SpineError::Graph(g) => g.into(),
            e => CliError::Failed(e.to_string()),
        }
    }
}

impl From<LinkError> for CliError {
    fn from(e: LinkError) -> Self {
        match e {
            LinkError::Budget(b) => CliError::Resource(b),
            LinkError::Graph(g) => g.into(),
        }
    }
}

impl From<SplittingError> for CliError {
    fn from(e: SplittingError) -> Self {
        match e {
            SplittingError::Budget(b) => CliError::Resource(b),
            SplittingError::NoRefinement | SplittingError::MultipleRefinements(_) | SplittingError::Stalled { .. } => {
                CliError::Failed(e.to_string())
            }
            e => CliError::Usage(e.to_string()),
        }
    }
}

impl From<SuiteError> for CliError {
    fn from(e: SuiteError) -> Self {
        match e {
            SuiteError::Budget(b) => CliError::Resource(b),
            SuiteError::UnknownSuite(_) | SuiteError::UnsupportedRank { .. } => CliError::Usage(e.to_string()),
            e => CliError::Failed(e.to_string()),
        }
    }
}

/// Result of a successful command: text for stdout and an exit code.
pub struct Output {
    pub text: String,
    pub code: i32,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: 0 }
    }
}

/// Either kind of input document.
enum Input {
    Graph(MarkedGraph),
    Splitting(FreeSplitting),
}

fn read_input(path: &Path) -> Result<Input, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let is_splitting = value["vertices"]
        .as_array()
        .is_some_and(|vs| vs.iter().any(|v| v.get("labels").is_some()));
    if is_splitting {
        Ok(Input::Splitting(FreeSplitting::from_json(&text)?))
    } else {
        Ok(Input::Graph(MarkedGraph::from_json(&text)?))
    }
}

fn read_splitting(path: &Path) -> Result<FreeSplitting, CliError> {
    match read_input(path)? {
        Input::Splitting(s) => Ok(s),
        Input::Graph(g) => Ok(FreeSplitting::from_marked_graph(&g)),
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn emit_input(x: &Input, format: Format) -> String {
    match (x, format) {
        (Input::Graph(g), Format::Json) => pretty(&g.to_json_value()),
        (Input::Graph(g), Format::Dot) => g.to_dot(),
        (Input::Splitting(s), Format::Json) => pretty(&s.to_json_value()),
        (Input::Splitting(s), Format::Dot) => s.to_dot(),
    }
}

fn emit_splittings(items: &[FreeSplitting], format: Format, extra: Value) -> String {
    match format {
        Format::Json => {
            let mut v = extra;
            v["splittings"] = json!(items.iter().map(|s| s.to_json_value()).collect::<Vec<_>>());
            pretty(&v)
        }
        Format::Dot => items.iter().map(|s| s.to_dot()).collect(),
    }
}

fn budget(cli: &Cli) -> Budget {
    let b = Budget::new(cli.max_vertices, None);
    match cli.max_time_ms {
        Some(ms) => b.with_time(Duration::from_millis(ms)),
        None => b,
    }
}

/// Executes a parsed command line.
pub fn execute(cli: &Cli) -> Result<Output, CliError> {
    let budget = budget(cli);
    if let Command::Verify { suite, n, seed, samples, deterministic } = &cli.command {
        let opts = SuiteOptions { seed: *seed, samples: *samples, threads: cli.threads, budget };
        let report = suites::run_suite(suite, *n, &opts)?;
        let v = if *deterministic { report.deterministic_json() } else { report.to_json_value() };
        return Ok(Output { text: pretty(&v), code: if report.ok() { 0 } else { 1 } });
    }
    match cli.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t.max(1))
            .build()
            .map_err(|e| CliError::Usage(e.to_string()))?
            .install(|| execute_command(cli, &budget)),
        None => execute_command(cli, &budget),
    }
}

fn execute_command(cli: &Cli, budget: &Budget) -> Result<Output, CliError> {
    let format = cli.format;
    match &cli.command {
        Command::Ball { n, radius } => {
            if *n < 2 {
                return Err(CliError::Usage("n must be at least 2".into()));
            }
            let ball = spine::ball(&SpineVertex::standard(*n), *radius, budget)?;
            Ok(Output::ok(match format {
                Format::Json => pretty(&ball.to_json_value()),
                Format::Dot => ball.to_dot(),
            }))
        }
        Command::Verify { .. } => unreachable!("handled in execute"),
        Command::Canon { file } => {
            let out = match read_input(file)? {
                Input::Graph(g) => Input::Graph(g.canonicalize()),
                Input::Splitting(s) => Input::Splitting(s.canonicalize()),
            };
            Ok(Output::ok(emit_input(&out, format)))
        }
        Command::Act { product, file } => {
            let out = match read_input(file)? {
                Input::Graph(g) => Input::Graph(g.act(&Automorphism::parse_product(g.rank(), product)?)?),
                Input::Splitting(s) => Input::Splitting(s.act(&Automorphism::parse_product(s.rank(), product)?)?),
            };
            Ok(Output::ok(emit_input(&out, format)))
        }
        Command::Link { file } => {
            let g = match read_input(file)? {
                Input::Graph(g) => g,
                Input::Splitting(s) => s
                    .to_marked_graph()
                    .ok_or_else(|| CliError::Usage("link expects a marked graph (a splitting in the spine)".into()))?,
            };
            let link = links::link_graph(&g, budget)?;
            Ok(Output::ok(match format {
                Format::Json => pretty(&link.to_json_value()),
                Format::Dot => link.to_dot(),
            }))
        }
        Command::SplittingRefine { files } => {
            let parts: Vec<FreeSplitting> = files.iter().map(|f| read_splitting(f)).collect::<Result<_, _>>()?;
            let s = splittings::common_refinement(&parts)?;
            Ok(Output::ok(emit_input(&Input::Splitting(s), format)))
        }
        Command::Neighbors { file, count } => {
            let s = read_splitting(file)?;
            if s.is_in_spine() {
                let link = splittings::finite_link(&s)?;
                Ok(Output::ok(emit_splittings(&link, format, json!({"finite": true, "count": link.len()}))))
            } else {
                let nbrs = splittings::neighbor_stream(&s, *count)?;
                Ok(Output::ok(emit_splittings(&nbrs, format, json!({"finite": false, "count": nbrs.len()}))))
            }
        }
    }
}

/// Parses the process arguments, runs the command and returns the exit code.
pub fn main_with_args() -> i32 {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            out.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
