use padic_spherical::suite::{self, CheckReport};
use serde_json::{json, Value};

/// Name, recorded parameters and the check itself.
pub type Check = (&'static str, Value, fn() -> CheckReport);

/// The full invariant suite at its standard parameters, in a fixed order.
pub fn checks() -> Vec<Check> {
    vec![
        ("hall_littlewood", json!({ "max_n": 4, "lo": -1, "hi": 3 }), || suite::hall_littlewood_suite(4, -1, 3)),
        ("constant_term", json!({ "max_n": 4 }), || suite::constant_term_suite(4)),
        ("prefactor_ratio", json!({ "max_n": 4 }), || suite::prefactor_ratio_suite(4)),
        ("functional_equations", json!({ "max_n": 3, "bound": 2 }), || suite::functional_equation_suite(3, 2)),
        ("reconstruction", json!({ "max_n": 3, "bound": 2 }), || suite::reconstruction_suite(3, 2)),
        ("oracle", json!({ "p": 3, "rank_one_levels": 4, "rank_two_levels": 3 }), || suite::oracle_suite(3, 4, 3)),
        ("hecke", json!({ "p": 3, "rank_one_levels": 4, "rank_two_level": 2 }), || suite::hecke_suite(3, 4, 2)),
        ("tate", json!({ "p": 3, "samples": 50, "scaling_levels": 2 }), || suite::tate_suite(3, 50, 2)),
    ]
}

pub fn summary(reports: &[CheckReport]) -> Value {
    let checks: Vec<Value> = reports
        .iter()
        .map(|r| json!({ "name": r.name, "pass": r.pass, "cases": r.cases }))
        .collect();
    json!({ "checks": checks, "all_pass": reports.iter().all(|r| r.pass) })
}
