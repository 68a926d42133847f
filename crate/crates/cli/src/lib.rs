//! Problem files, reports and subcommands of the `polarmac` tool.

pub mod args;
pub mod catalog;
pub mod commands;
pub mod error;
pub mod problem;
pub mod report;

pub use commands::{run_command, Command, Settings};
pub use error::CliError;
pub use problem::{load_problem, ProblemFile};
pub use report::Report;

use args::{Cli, Cmd};

/// What the process prints and returns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Exit code of a completed report whose checks failed.
pub const EXIT_CHECK_FAILED: i32 = 5;

pub fn run_cli(cli: &Cli) -> Outcome {
    let ok = |stdout: String| Outcome {
        stdout,
        stderr: String::new(),
        code: 0,
    };
    let Some((cmd, common)) = cli.command.split() else {
        let Cmd::Catalog { name } = &cli.command else { unreachable!() };
        return match name {
            None => ok(catalog::names().map(|n| format!("{n}\n")).collect()),
            Some(n) => match catalog::source(n) {
                Some(s) => ok(s.to_string()),
                None => Outcome {
                    stdout: String::new(),
                    stderr: format!("error: no catalog entry `{n}`\n"),
                    code: 2,
                },
            },
        };
    };
    let result = ProblemFile::read(&common.file).and_then(|f| run_command(cmd, &f, &common.settings()));
    match result {
        Ok(report) => Outcome {
            stdout: if common.text { report.to_text() } else { report.to_json() },
            stderr: String::new(),
            code: if report.passed() { 0 } else { EXIT_CHECK_FAILED },
        },
        Err(e) => Outcome {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: e.exit_code(),
        },
    }
}
