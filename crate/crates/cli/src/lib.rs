//! Command-line front end for `reflexa`: JSON workspaces, deterministic JSON
//! reports and the acceptance corpus runner.

pub mod acceptance;
pub mod command;
pub mod render;
pub mod workspace;

use clap::Parser;
use serde_json::{json, Value};

pub use command::{Cli, Command};
pub use render::{Failure, Outcome, Status, INPUT_ERROR};
pub use workspace::{parse_workspace, Diagnostic, Workspace};

/// What the binary prints and returns.
#[derive(Clone, Debug)]
pub struct Invocation {
    pub stdout: String,
    pub stderr: String,
    pub exit_code: i32,
}

fn load(path: &std::path::Path) -> Result<Workspace, Invocation> {
    let fail = |stderr: String| Invocation { stdout: String::new(), stderr, exit_code: INPUT_ERROR };
    let text = std::fs::read_to_string(path).map_err(|e| fail(format!("{}: {e}\n", path.display())))?;
    parse_workspace(&text).map_err(|diags| {
        fail(diags.iter().map(|d| format!("{}:{d}\n", path.display())).collect())
    })
}

/// Canonical text of a report: pretty JSON with sorted keys and a final newline.
pub fn canonical(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn finish(r: Result<Outcome, Failure>) -> Invocation {
    match r {
        Ok(o) => Invocation { stdout: canonical(&o.report), stderr: String::new(), exit_code: o.status.exit_code() },
        Err(f) => Invocation { stdout: String::new(), stderr: format!("error: {}\n", f.message), exit_code: f.exit_code },
    }
}

/// Runs every job of a workspace. The exit code is 3 if any job hit an input
/// error, otherwise the most severe job status.
pub fn run_jobs(ws: &Workspace) -> Invocation {
    let mut worst = Status::Holds;
    let mut input_error = false;
    let mut jobs = Vec::new();
    for job in &ws.jobs {
        match job.command.execute(ws) {
            Ok(o) => {
                worst = worst.max(o.status);
                jobs.push(json!({ "args": job.args, "exit": o.status.exit_code(), "report": o.report }));
            }
            Err(f) => {
                input_error = true;
                jobs.push(json!({ "args": job.args, "exit": f.exit_code, "error": f.message }));
            }
        }
    }
    let exit_code = if input_error { INPUT_ERROR } else { worst.exit_code() };
    Invocation { stdout: canonical(&json!({ "jobs": jobs })), stderr: String::new(), exit_code }
}

/// Parses a full command line (including the program name) and runs it.
pub fn invoke<I, T>(args: I) -> Invocation
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { INPUT_ERROR } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Invocation { stdout: text, stderr: String::new(), exit_code: 0 }
            } else {
                Invocation { stdout: String::new(), stderr: text, exit_code: code }
            };
        }
    };
    if let Command::Run { file } = &cli.command {
        return match load(file) {
            Ok(ws) => run_jobs(&ws),
            Err(inv) => inv,
        };
    }
    let ws = match &cli.workspace {
        Some(p) => match load(p) {
            Ok(ws) => ws,
            Err(inv) => return inv,
        },
        None => Workspace::default(),
    };
    if let Err(e) = cli.command.check_references(&ws) {
        return finish(Err(Failure::input(e)));
    }
    finish(cli.command.execute(&ws))
}
