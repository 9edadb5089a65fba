//! Command definitions and their execution.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use qrbs::inference::{infer_exact, infer_shots, InferenceError, InferenceResult, Method};
use qrbs::qcompile::{compile, export_circuit, Block, CompileError};
use qrbs::ruledsl::{parse, ParseErrors};
use qrbs::RuleSet;
use thiserror::Error;

use crate::tables::{self, TableError, DEFAULT_SHOTS};

#[derive(Debug, Parser)]
#[command(name = "qrbs", version, about = "Rule-based inference under uncertainty on a simulated quantum register")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exact,
    Shots,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Csv,
    Jsonl,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableId {
    #[value(name = "4")]
    T4,
    #[value(name = "5")]
    T5,
    #[value(name = "6")]
    T6,
    #[value(name = "7")]
    T7,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GateId {
    And,
    Or,
}

#[derive(Debug, clap::Args)]
pub struct Sampling {
    /// Number of measurements in shot mode.
    #[arg(long, default_value_t = DEFAULT_SHOTS, value_parser = clap::value_parser!(u64).range(1..))]
    pub shots: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Infer the goal probability of a program.
    Run {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Exact)]
        mode: Mode,
        #[command(flatten)]
        sampling: Sampling,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Regenerate one of the reference tables as CSV.
    Tables {
        #[arg(value_enum)]
        which: TableId,
        #[command(flatten)]
        sampling: Sampling,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare the example network against the published disbelief grid.
    Table8 {
        #[command(flatten)]
        sampling: Sampling,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the compiled circuit of a program.
    Compile {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample the AND or OR block on superposed inputs.
    Gatedemo {
        #[arg(value_enum)]
        which: GateId,
        #[command(flatten)]
        sampling: Sampling,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a program without running it.
    Validate { input: PathBuf },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}", render_parse(.path, .errors))]
    Parse { path: PathBuf, errors: ParseErrors },
    #[error("{}: {source}", .path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Compile(#[from] CompileError),
    #[error(transparent)]
    Inference(#[from] InferenceError),
    #[error(transparent)]
    Table(#[from] TableError),
}

fn render_parse(path: &Path, errors: &ParseErrors) -> String {
    errors.iter().map(|e| format!("{}:{e}", path.display())).collect::<Vec<_>>().join("\n")
}

impl CliError {
    /// 1 for bad input or I/O, 2 when a resource budget is exceeded.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Compile(CompileError::QubitBudget { .. }) => 2,
            CliError::Inference(InferenceError::OracleBudget(_)) => 2,
            CliError::Table(TableError::Compile(CompileError::QubitBudget { .. })) => 2,
            _ => 1,
        }
    }
}

fn load(path: &Path) -> Result<RuleSet, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_owned(), source })?;
    parse(&text).map_err(|errors| CliError::Parse { path: path.to_owned(), errors })
}

fn emit(out: &Option<PathBuf>, text: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io { path: path.clone(), source }),
        None => {
            stdout.write_all(text.as_bytes()).map_err(|source| CliError::Io { path: PathBuf::from("<stdout>"), source })
        }
    }
}

/// One inference result in the requested output format.
pub fn render_result(r: &InferenceResult, format: Format) -> String {
    let (shots, seed) = match r.method {
        Method::Exact => (None, None),
        Method::Shots { shots, seed } => (Some(shots), Some(seed)),
    };
    let method = match r.method {
        Method::Exact => "exact",
        Method::Shots { .. } => "shots",
    };
    match format {
        Format::Human => {
            let mut s = format!("{} p_true={:.6} p_false={:.6}\nmethod={method}", r.goal, r.p_true, r.p_false);
            if let (Some(shots), Some(seed)) = (shots, seed) {
                s.push_str(&format!(" shots={shots} seed={seed}"));
            }
            s.push('\n');
            s
        }
        Format::Csv => {
            let opt = |v: Option<u64>| v.map(|x| x.to_string()).unwrap_or_default();
            let table = tables::Table {
                headers: ["goal", "p_true", "p_false", "method", "shots", "seed"].map(String::from).to_vec(),
                rows: vec![vec![
                    r.goal.clone(),
                    format!("{:.6}", r.p_true),
                    format!("{:.6}", r.p_false),
                    method.to_string(),
                    opt(shots),
                    opt(seed),
                ]],
            };
            table.to_csv().expect("in-memory csv")
        }
        Format::Jsonl => {
            let mut v = serde_json::json!({
                "goal": r.goal,
                "p_true": r.p_true,
                "p_false": r.p_false,
                "method": method,
            });
            if let (Some(shots), Some(seed)) = (shots, seed) {
                v["shots"] = shots.into();
                v["seed"] = seed.into();
            }
            format!("{v}\n")
        }
    }
}

pub fn execute(cli: Cli, stdout: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Run { input, mode, sampling, format, out } => {
            let rs = load(&input)?;
            let cp = compile(&rs)?;
            let result = match mode {
                Mode::Exact => infer_exact(&cp)?,
                Mode::Shots => infer_shots(&cp, sampling.shots, sampling.seed)?,
            };
            emit(&out, &render_result(&result, format), stdout)
        }
        Command::Tables { which, sampling, out } => {
            let table = match which {
                TableId::T4 => tables::table4(),
                TableId::T5 => tables::table5(),
                TableId::T6 => tables::table6(),
                TableId::T7 => tables::table7(sampling.shots, sampling.seed)?,
            };
            emit(&out, &table.to_csv()?, stdout)
        }
        Command::Table8 { sampling, out } => {
            emit(&out, &tables::table8(sampling.shots, sampling.seed)?.to_csv()?, stdout)
        }
        Command::Compile { input, out } => {
            let cp = compile(&load(&input)?)?;
            emit(&out, &export_circuit(&cp), stdout)
        }
        Command::Gatedemo { which, sampling, out } => {
            let block = match which {
                GateId::And => Block::And,
                GateId::Or => Block::Or,
            };
            emit(&out, &tables::gate_demo(block, sampling.shots, sampling.seed)?.to_csv()?, stdout)
        }
        Command::Validate { input } => {
            let rs = load(&input)?;
            let text = format!("ok: {} base facts, {} rules, goal {}\n", rs.base_facts.len(), rs.rules.len(), rs.goal);
            emit(&None, &text, stdout)
        }
    }
}

/// Parses `args`, runs the command and returns the process exit status.
/// Usage errors exit with 1 so that 2 stays reserved for budget errors.
pub fn main_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { stderr.write_all(text.as_bytes()) } else { stdout.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(cli, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
