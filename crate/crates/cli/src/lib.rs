//! Command-line front end for `rainbowlab`.
//!
//! Exit codes: 0 success, 1 a violation (or a rainbow packing where absence
//! was being checked), 2 usage or input errors, 3 an internal consistency
//! failure, 4 an exhausted node budget.

pub mod args;
pub mod commands;
pub mod report;

use std::ffi::OsString;

use clap::Parser;
use thiserror::Error;

use args::{Cli, Command, Format};
use commands::Outcome;
use rainbowlab::search::SearchOptions;
use report::{Report, RunConfig, SCHEMA_VERSION};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Success = 0,
    Violation = 1,
    Usage = 2,
    Bug = 3,
    Exhausted = 4,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("internal check failed: {0}")]
    Bug(String),

    #[error(transparent)]
    Core(#[from] rainbowlab::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit(&self) -> Exit {
        match self {
            CliError::Bug(_) => Exit::Bug,
            CliError::Core(rainbowlab::Error::ResourceExhausted { .. }) => Exit::Exhausted,
            _ => Exit::Usage,
        }
    }
}

/// What the process should print and return.
#[derive(Debug)]
pub struct RunOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(argv: I) -> RunOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                Exit::Usage as i32
            } else {
                0
            };
            let text = e.render().to_string();
            let (stdout, stderr) = if e.use_stderr() {
                (String::new(), text)
            } else {
                (text, String::new())
            };
            return RunOutput {
                code,
                stdout,
                stderr,
            };
        }
    };
    let config = RunConfig {
        common: cli.common.clone(),
        command: cli.command.clone(),
    };
    let (result, error, exit) = match dispatch(&cli) {
        Ok(o) => (Some(o.result), None, o.exit),
        Err(e) => (None, Some(e.to_string()), e.exit()),
    };
    let report = Report {
        schema_version: SCHEMA_VERSION,
        config,
        exit_code: exit as i32,
        result,
        error: error.clone(),
    };
    let stdout = match cli.common.format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    };
    RunOutput {
        code: exit as i32,
        stdout,
        stderr: error.map(|e| format!("error: {e}\n")).unwrap_or_default(),
    }
}

fn value(v: impl serde::Serialize) -> serde_json::Value {
    serde_json::to_value(v).expect("results serialize")
}

fn dispatch(cli: &Cli) -> Result<Outcome, CliError> {
    let common = &cli.common;
    if common.workers == 0 {
        return Err(CliError::Usage("--workers must be at least 1".into()));
    }
    let ok = |result| {
        Ok(Outcome {
            result,
            exit: Exit::Success,
        })
    };
    match &cli.command {
        Command::Formulas { n, t } => ok(value(commands::cmd_formulas(*n, *t)?)),
        Command::Construct { n, t, out } => {
            let (_, report) = commands::cmd_construct(*n, *t, out.as_deref())?;
            let exit = if report.self_check_passed() {
                Exit::Success
            } else {
                Exit::Bug
            };
            Ok(Outcome {
                result: value(report),
                exit,
            })
        }
        Command::CheckRainbow { coloring, k } => {
            let report = commands::cmd_check_rainbow(coloring, *k)?;
            let exit = if report.witness.is_some() {
                Exit::Violation
            } else {
                Exit::Success
            };
            Ok(Outcome {
                result: value(report),
                exit,
            })
        }
        Command::ArSearch {
            n,
            k,
            budget,
            split_depth,
            checkpoint,
            resume,
            no_seed,
        } => {
            if *budget == 0 {
                return Err(CliError::Usage("--budget must be positive".into()));
            }
            commands::cmd_ar_search(&commands::ArSearchArgs {
                n: *n,
                k: *k,
                opts: SearchOptions {
                    budget: *budget,
                    workers: common.workers,
                    split_depth: *split_depth,
                    checkpoint: checkpoint.clone(),
                    resume: *resume,
                    seed_with_construction: !no_seed,
                },
            })
        }
        Command::VerifyMoon(a) | Command::VerifyGamma(a) => {
            let which = if matches!(cli.command, Command::VerifyMoon(_)) {
                "moon"
            } else {
                "gamma"
            };
            let opts = commands::census_options(a.n_max, a.samples, common.seed, common.workers);
            commands::cmd_verify(which, &opts)
        }
        Command::VerifyPairs {
            n,
            t,
            instances,
            max_deletions,
            graph,
        } => commands::cmd_verify_pairs(
            *n,
            *t,
            *instances,
            *max_deletions,
            common.seed,
            graph.as_deref(),
        ),
        Command::I3 { graph6, budget } => {
            if *budget == 0 {
                return Err(CliError::Usage("--budget must be positive".into()));
            }
            ok(commands::cmd_i3(graph6, *budget)?)
        }
        Command::Matching { graph6 } => ok(commands::cmd_matching(graph6)?),
        Command::Encode { family, edges } => {
            let g = match (family, edges) {
                (Some(f), _) => commands::named_graph(f)?,
                (None, Some(path)) => commands::read_edge_list(path)?,
                (None, None) => return Err(CliError::Usage("give a family or --edges".into())),
            };
            ok(commands::cmd_decode(&rainbowlab::graph6::encode(&g))?)
        }
        Command::Decode { graph6 } => ok(commands::cmd_decode(graph6)?),
    }
}
