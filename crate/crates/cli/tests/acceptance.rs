//! Acceptance criteria, one line each. Runs without the libtest harness so
//! the verdicts are always printed.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::process::Command;
use std::time::Instant;

use padic_spherical::suite::{self, CheckReport};

fn store_snapshot(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    fs::read_dir(dir)
        .expect("fixture dir exists")
        .map(|e| {
            let e = e.unwrap();
            (e.file_name().to_string_lossy().into_owned(), fs::read(e.path()).unwrap())
        })
        .collect()
}

fn determinism() -> CheckReport {
    let dir = tempfile::tempdir().unwrap();
    let bin = env!("CARGO_BIN_EXE_spherical");
    let run = |mode: &str| {
        Command::new(bin)
            .args(["selftest", mode, "--fixtures"])
            .arg(dir.path())
            .output()
            .expect("binary runs")
    };
    let rec = run("--record");
    let before = store_snapshot(dir.path());
    let ver = run("--verify");
    let after = store_snapshot(dir.path());
    let pass = rec.status.code() == Some(0)
        && ver.status.code() == Some(0)
        && before == after
        && rec.stdout == ver.stdout
        && !before.is_empty();
    CheckReport {
        name: "determinism".into(),
        pass,
        cases: before.len(),
        details: serde_json::json!({
            "record_exit": rec.status.code(),
            "verify_exit": ver.status.code(),
            "fixtures": before.len(),
            "stderr": String::from_utf8_lossy(&ver.stderr),
        }),
    }
}

fn main() {
    type Criterion = (&'static str, Box<dyn Fn() -> CheckReport>);
    let criteria: Vec<Criterion> = vec![
        ("1 Hall-Littlewood structure, n <= 4", Box::new(|| suite::hall_littlewood_suite(4, -1, 3))),
        ("2 constant term equals Poincare sum, n <= 4", Box::new(|| suite::constant_term_suite(4))),
        ("3 hermitian prefactor ratio, n <= 4", Box::new(|| suite::prefactor_ratio_suite(4))),
        ("4 functional equations and cocycle", Box::new(|| suite::functional_equation_suite(3, 2))),
        ("5 symmetrization reconstruction", Box::new(|| suite::reconstruction_suite(3, 2))),
        ("6 oracle against closed forms, p = 3", Box::new(|| suite::oracle_suite(3, 4, 3))),
        ("7 Hecke eigen-relation", Box::new(|| suite::hecke_suite(3, 4, 2))),
        ("8 Tate gamma, Fourier involution, scaling", Box::new(|| suite::tate_suite(3, 50, 2))),
        ("9 selftest record/verify determinism", Box::new(determinism)),
    ];
    let mut failed = 0;
    for (label, check) in &criteria {
        let start = Instant::now();
        let report = check();
        let verdict = if report.pass { "PASS" } else { "FAIL" };
        println!("{verdict} criterion {label} ({} cases, {:.1?})", report.cases, start.elapsed());
        if !report.pass {
            failed += 1;
            println!("  details: {}", report.details);
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
