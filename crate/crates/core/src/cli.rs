//! Command-line front end.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::balance::{format_rational, BalanceError, BalanceFunction, BalanceKind, Objective};
use crate::embedding::{parse_embedding, EmbeddingError};
use crate::oracle::{brute_force_cut, OracleError};
use crate::solver::{solve_detailed, SolveError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_DISAGREE: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse {
        path: PathBuf,
        source: EmbeddingError,
    },
    #[error("{path}: {source}")]
    Balance { path: PathBuf, source: BalanceError },
    #[error("unknown --f value `{0}` (expected quotient, density, expansion or custom:<path>)")]
    UnknownF(String),
    #[error("root {root} out of range (n = {n})")]
    Root { root: usize, n: usize },
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FChoice {
    Quotient,
    Density,
    Expansion,
    Custom(PathBuf),
}

impl std::str::FromStr for FChoice {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "quotient" => Ok(FChoice::Quotient),
            "density" => Ok(FChoice::Density),
            "expansion" => Ok(FChoice::Expansion),
            _ => match s.strip_prefix("custom:") {
                Some(path) if !path.is_empty() => Ok(FChoice::Custom(PathBuf::from(path))),
                _ => Err(CliError::UnknownF(s.to_string())),
            },
        }
    }
}

impl std::fmt::Display for FChoice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FChoice::Quotient => write!(f, "quotient"),
            FChoice::Density => write!(f, "density"),
            FChoice::Expansion => write!(f, "expansion"),
            FChoice::Custom(p) => write!(f, "custom:{}", p.display()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub input: PathBuf,
    pub f: FChoice,
    pub root: usize,
    pub oracle: bool,
    pub json: bool,
    pub dump_walks: Option<PathBuf>,
}

#[derive(Debug, Parser)]
#[command(
    name = "surfcut",
    version,
    about = "Exact f-sparsest cuts of surface-embedded graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve one embedded graph.
    Run {
        /// Embedded-graph file.
        input: PathBuf,
        /// quotient | density | expansion | custom:<path>
        #[arg(long = "f", default_value = "quotient", value_parser = parse_f)]
        f: FChoice,
        /// Spanning-tree root vertex.
        #[arg(long, default_value_t = 0)]
        root: usize,
        /// Cross-check against exhaustive enumeration.
        #[arg(long)]
        oracle: bool,
        /// Emit JSON instead of text.
        #[arg(long)]
        json: bool,
        /// Write the shortest tagged walk table to this path.
        #[arg(long = "dump-walks")]
        dump_walks: Option<PathBuf>,
    },
}

fn parse_f(s: &str) -> Result<FChoice, String> {
    s.parse().map_err(|e: CliError| e.to_string())
}

impl From<Command> for RunConfig {
    fn from(c: Command) -> Self {
        match c {
            Command::Run {
                input,
                f,
                root,
                oracle,
                json,
                dump_walks,
            } => RunConfig {
                input,
                f,
                root,
                oracle,
                json,
                dump_walks,
            },
        }
    }
}

/// Machine-readable result; fields serialize in declaration order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub genus: usize,
    pub f: String,
    pub value: String,
    pub cut_size: u64,
    pub balance: String,
    pub expansion: String,
    #[serde(rename = "S")]
    pub side: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub oracle_value: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub agree: Option<bool>,
}

impl Report {
    pub fn to_text(&self, n: usize) -> String {
        let mut out = String::new();
        writeln!(out, "genus: {}", self.genus).unwrap();
        writeln!(out, "f: {}", self.f).unwrap();
        writeln!(out, "value: {}", self.value).unwrap();
        writeln!(out, "cut_size: {}", self.cut_size).unwrap();
        writeln!(out, "balance: {}", self.balance).unwrap();
        let side: Vec<String> = self.side.iter().map(|v| v.to_string()).collect();
        writeln!(out, "S: {}", side.join(" ")).unwrap();
        writeln!(out, "expansion: {}", self.expansion).unwrap();
        if self.f == "expansion" {
            writeln!(
                out,
                "quotient = n * expansion: {} = {} * {}",
                self.value, n, self.expansion
            )
            .unwrap();
        }
        if let Some(v) = &self.oracle_value {
            writeln!(out, "oracle_value: {v}").unwrap();
        }
        if let Some(agree) = self.agree {
            writeln!(out, "oracle: {}", if agree { "AGREE" } else { "DISAGREE" }).unwrap();
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutcome {
    pub report: Report,
    pub output: String,
    pub exit_code: i32,
}

fn objective_text(v: &Objective) -> String {
    match v {
        Objective::Finite(r) => format_rational(r),
        Objective::Infinite => "inf".to_string(),
    }
}

pub fn load_balance(choice: &FChoice) -> Result<BalanceFunction, CliError> {
    Ok(match choice {
        FChoice::Quotient => BalanceFunction::quotient(),
        FChoice::Density => BalanceFunction::density(),
        FChoice::Expansion => BalanceFunction::expansion(),
        FChoice::Custom(path) => {
            let text = fs::read_to_string(path).map_err(|source| CliError::Io {
                path: path.clone(),
                source,
            })?;
            BalanceFunction::parse_custom(&text).map_err(|source| CliError::Balance {
                path: path.clone(),
                source,
            })?
        }
    })
}

pub fn run(cfg: &RunConfig) -> Result<RunOutcome, CliError> {
    let text = fs::read_to_string(&cfg.input).map_err(|source| CliError::Io {
        path: cfg.input.clone(),
        source,
    })?;
    let graph = parse_embedding(&text).map_err(|source| CliError::Parse {
        path: cfg.input.clone(),
        source,
    })?;
    let f = load_balance(&cfg.f)?;
    let n = graph.vertex_count();
    if cfg.root >= n {
        return Err(CliError::Root { root: cfg.root, n });
    }
    // the oracle cap is checked before the solver runs
    let oracle = if cfg.oracle {
        Some(brute_force_cut(&graph, &f)?)
    } else {
        None
    };
    let (solved, _, table) = solve_detailed(&graph, &f, cfg.root)?;
    if let Some(path) = &cfg.dump_walks {
        fs::write(path, table.dump()).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        })?;
    }

    let cut = &solved.cut;
    let mut report = Report {
        genus: solved.genus,
        f: match f.kind() {
            BalanceKind::Custom(_) => cfg.f.to_string(),
            _ => f.name().to_string(),
        },
        value: objective_text(&cut.value),
        cut_size: cut.cut_size,
        balance: format_rational(&cut.balance),
        expansion: format_rational(&cut.expansion),
        side: cut.side.clone(),
        oracle_value: None,
        agree: None,
    };
    let mut exit_code = EXIT_OK;
    if let Some(o) = oracle {
        let agree = o.best.value == cut.value;
        report.oracle_value = Some(objective_text(&o.best.value));
        report.agree = Some(agree);
        if !agree {
            exit_code = EXIT_DISAGREE;
        }
    }
    let output = if cfg.json {
        let mut s = serde_json::to_string(&report).expect("report serializes");
        s.push('\n');
        s
    } else {
        report.to_text(n)
    };
    Ok(RunOutcome {
        report,
        output,
        exit_code,
    })
}

/// Parses arguments, runs, prints, and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let cfg = RunConfig::from(cli.command);
    match run(&cfg) {
        Ok(outcome) => {
            print!("{}", outcome.output);
            outcome.exit_code
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_INPUT
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f_choice_parsing() {
        assert_eq!("density".parse::<FChoice>().unwrap(), FChoice::Density);
        assert_eq!(
            "custom:a/b.f".parse::<FChoice>().unwrap(),
            FChoice::Custom(PathBuf::from("a/b.f"))
        );
        assert!("custom:".parse::<FChoice>().is_err());
        assert!("cheeger".parse::<FChoice>().is_err());
    }

    #[test]
    fn json_round_trip() {
        let r = Report {
            genus: 1,
            f: "quotient".into(),
            value: "25/2".into(),
            cut_size: 5,
            balance: "2/5".into(),
            expansion: "5/2".into(),
            side: vec![1, 3],
            oracle_value: Some("25/2".into()),
            agree: Some(true),
        };
        let s = serde_json::to_string(&r).unwrap();
        assert!(s.starts_with("{\"genus\":1,\"f\":\"quotient\",\"value\":\"25/2\""));
        assert_eq!(serde_json::from_str::<Report>(&s).unwrap(), r);
        let mut bare = r.clone();
        bare.oracle_value = None;
        bare.agree = None;
        assert!(!serde_json::to_string(&bare).unwrap().contains("agree"));
    }
}
