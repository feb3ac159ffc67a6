//! Command-line front end. Every command prints one JSON document on stdout
//! (`"schema": 1`, keys sorted, rationals as strings). Exit codes: 0 on
//! success, 1 when a verification fails, 2 on usage errors.

pub mod args;
pub mod commands;
pub mod fixtures;
pub mod selftest;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::Parser;
use serde_json::{json, Value};

use args::{Cli, Command};
use commands::{CmdResult, Failure};
use fixtures::{Mode, Store};

pub const SCHEMA: u32 = 1;
pub const THREADS_VAR: &str = "SPHERICAL_THREADS";

pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn document(command: &str, args: &Value, result: Value, status: &str) -> Value {
    json!({ "schema": SCHEMA, "command": command, "args": args, "result": result, "status": status })
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Hl(_) => "hl",
        Command::Spherical(_) => "spherical",
        Command::Feq(_) => "feq",
        Command::Reconstruct(_) => "reconstruct",
        Command::Oracle(_) => "oracle",
        Command::Hecke(_) => "hecke",
        Command::Tate(_) => "tate",
        Command::Selftest => "selftest",
    }
}

fn configure_threads() -> Result<(), String> {
    if let Ok(v) = std::env::var(THREADS_VAR) {
        let n: usize = v.parse().map_err(|_| format!("{THREADS_VAR} must be a positive integer, got {v:?}"))?;
        if n == 0 {
            return Err(format!("{THREADS_VAR} must be positive"));
        }
        // A second call in the same process (tests) leaves the first pool in place.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}

struct Output {
    json_path: Option<PathBuf>,
    store: Option<Store>,
    mismatches: Vec<Value>,
}

impl Output {
    fn emit(&mut self, command: &str, args: &Value, doc: &Value, print: bool) -> Result<(), String> {
        let text = render(doc);
        if print {
            print!("{text}");
            if let Some(p) = &self.json_path {
                std::fs::write(p, &text).map_err(|e| format!("cannot write {}: {e}", p.display()))?;
            }
        }
        if let Some(store) = &self.store {
            match store.apply(command, args, &text) {
                Ok(None) => {}
                Ok(Some(m)) => self.mismatches.push(m),
                Err(e) => return Err(format!("fixture store {}: {e}", store.dir.display())),
            }
        }
        Ok(())
    }
}

fn usage(command: &str, message: &str) -> i32 {
    let doc = json!({ "schema": SCHEMA, "command": command, "status": "usage_error", "error": message });
    print!("{}", render(&doc));
    eprintln!("error: {message}");
    2
}

/// Runs the CLI on `argv` (program name first) and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return code;
        }
    };
    let name = command_name(&cli.command);
    if let Err(msg) = configure_threads() {
        return usage(name, &msg);
    }
    let store = match (cli.record, cli.verify) {
        (false, false) if cli.fixtures.is_some() => return usage(name, "--fixtures needs --record or --verify"),
        (false, false) => None,
        (rec, _) => {
            let dir = cli.fixtures.clone().unwrap_or_else(|| PathBuf::from("fixtures"));
            Some(Store::new(dir, if rec { Mode::Record } else { Mode::Verify }))
        }
    };
    let mut out = Output { json_path: cli.json.clone(), store, mismatches: Vec::new() };

    let outcome: CmdResult = match &cli.command {
        Command::Hl(a) => commands::hl(a),
        Command::Spherical(a) => commands::spherical(a),
        Command::Feq(a) => commands::feq(a),
        Command::Reconstruct(a) => commands::reconstruct(a),
        Command::Oracle(a) => commands::oracle(a, cli.progress),
        Command::Hecke(a) => commands::hecke(a, cli.progress),
        Command::Tate(a) => commands::tate(a),
        Command::Selftest => return run_selftest(&mut out, cli.progress),
    };

    let code = match outcome {
        Ok(o) => {
            let status = if o.pass { "pass" } else { "fail" };
            let doc = document(name, &o.args, o.result, status);
            if let Err(msg) = out.emit(name, &o.args, &doc, true) {
                return usage(name, &msg);
            }
            if o.pass { 0 } else { 1 }
        }
        Err(Failure::Usage(msg)) => return usage(name, &msg),
        Err(Failure::Mismatch(report)) => {
            let doc = json!({ "schema": SCHEMA, "command": name, "status": "fail", "mismatch": report });
            print!("{}", render(&doc));
            1
        }
    };
    finish(&out, code)
}

fn finish(out: &Output, code: i32) -> i32 {
    if out.mismatches.is_empty() {
        return code;
    }
    eprint!("{}", render(&json!({ "schema": SCHEMA, "fixture_mismatches": out.mismatches })));
    1
}

fn run_selftest(out: &mut Output, progress: bool) -> i32 {
    let mut reports = Vec::new();
    for (name, params, check) in selftest::checks() {
        if progress {
            eprintln!("running {name}");
        }
        let report = check();
        if progress {
            eprintln!("{name}: {}", if report.pass { "pass" } else { "FAIL" });
        }
        let args = json!({ "check": name, "params": params });
        let status = if report.pass { "pass" } else { "fail" };
        let doc = document("selftest", &args, serde_json::to_value(&report).expect("report serializes"), status);
        if let Err(msg) = out.emit("selftest", &args, &doc, false) {
            return usage("selftest", &msg);
        }
        reports.push(report);
    }
    let summary = selftest::summary(&reports);
    let pass = summary["all_pass"] == json!(true);
    let doc = document("selftest", &json!({}), summary, if pass { "pass" } else { "fail" });
    if let Err(msg) = out.emit("selftest", &json!({}), &doc, true) {
        return usage("selftest", &msg);
    }
    finish(out, if pass { 0 } else { 1 })
}
