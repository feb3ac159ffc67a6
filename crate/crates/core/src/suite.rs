//! The invariant suites run by `selftest` and the acceptance tests. Each
//! check returns a deterministic report; nothing here measures time.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::render::to_grouped_text;
use crate::algebra::RatFunc;
use crate::case::CaseTag;
use crate::error::Result;
use crate::hall_littlewood::{dominated_by, hl_polynomial, monomial_expansion, Partition};
use crate::oracle::{
    fit_across_levels, hecke_eigen_check, oracle_match, valuation_histogram, CaseRealization, EnumOptions,
};
use crate::pv_zeta::{fourier_finite, scaling_check, tate_report, PVContext, StepFunction};
use crate::spherical::{
    casselman_reconstruct, cocycle_holds, feq_factor, functional_equation_holds, hermitian_printed_factor, prefactor,
};
use crate::weyl::{gamma_product, poincare_sum, t_symbol, weyl_act, WeylElement};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub pass: bool,
    /// Number of individual identities verified.
    pub cases: usize,
    pub details: Value,
}

impl CheckReport {
    fn new(name: &str, pass: bool, cases: usize, details: Value) -> Self {
        CheckReport { name: name.into(), pass, cases, details }
    }

    fn failed(name: &str, err: impl std::fmt::Display) -> Self {
        Self::new(name, false, 0, json!({ "error": err.to_string() }))
    }
}

fn wrap(name: &str, r: Result<CheckReport>) -> CheckReport {
    r.unwrap_or_else(|e| CheckReport::failed(name, e))
}

pub fn lambda(parts: &[i32]) -> Partition {
    Partition::new(parts.to_vec()).expect("valid partition")
}

/// Symmetry, integrality in the monomial basis, unitriangularity and
/// translation covariance of `P_lambda` for `n <= max_n`,
/// `lo <= lambda_n`, `lambda_1 <= hi`.
pub fn hall_littlewood_suite(max_n: usize, lo: i32, hi: i32) -> CheckReport {
    let name = "hall_littlewood";
    wrap(name, (|| {
        let t = t_symbol();
        let mut failures = Vec::new();
        let mut cases = 0;
        for n in 1..=max_n {
            let results: Vec<(Partition, Vec<&'static str>)> = Partition::all_in_box(n, lo, hi)
                .into_par_iter()
                .map(|l| {
                    let mut bad = Vec::new();
                    let p = match hl_polynomial(&l, n, &t) {
                        Ok(p) => p,
                        Err(_) => return (l, vec!["construction"]),
                    };
                    if !p.is_symmetric() {
                        bad.push("symmetry");
                    }
                    match monomial_expansion(&p) {
                        None => bad.push("monomial expansion"),
                        Some(exp) => {
                            if !exp.get(&l).is_some_and(|c| c.is_one()) {
                                bad.push("leading coefficient");
                            }
                            if exp.keys().any(|mu| !dominated_by(mu, &l)) {
                                bad.push("triangularity");
                            }
                            if !exp.values().all(|c| c.is_polynomial() && c.terms().all(|(_, a)| a.is_integer())) {
                                bad.push("integrality");
                            }
                        }
                    }
                    let mut e = vec![1; n + 1];
                    e[0] = 0;
                    match hl_polynomial(&l.translate(1), n, &t) {
                        Ok(s) if s == p.shift(&e) => {}
                        _ => bad.push("translation"),
                    }
                    (l, bad)
                })
                .collect();
            for (l, bad) in results {
                cases += 1;
                if !bad.is_empty() {
                    failures.push(json!({ "lambda": l.parts(), "failed": bad }));
                }
            }
        }
        let p20 = to_grouped_text(&hl_polynomial(&lambda(&[2, 0]), 2, &t)?, "t");
        let p20_ok = p20 == "x1^2 + x2^2 + (1-t)*x1*x2";
        Ok(CheckReport::new(
            name,
            failures.is_empty() && p20_ok,
            cases + 1,
            json!({ "max_n": max_n, "box": [lo, hi], "failures": failures, "p_2_0": p20 }),
        ))
    })())
}

/// `sum_sigma sigma.(gamma product) = sum_sigma t^{l(sigma)}`.
pub fn constant_term_suite(max_n: usize) -> CheckReport {
    let t = t_symbol();
    let results: Vec<(usize, bool)> = (1..=max_n)
        .map(|n| {
            let g = gamma_product(n, &t);
            let sum = WeylElement::all(n)
                .par_iter()
                .map(|s| weyl_act(s, &g))
                .reduce(|| RatFunc::zero(n), |a, b| &a + &b);
            (n, sum == RatFunc::from_laurent(poincare_sum(n, &t).widen(n)))
        })
        .collect();
    let pass = results.iter().all(|(_, ok)| *ok);
    CheckReport::new("constant_term", pass, results.len(), json!({ "ranks": results }))
}

/// Hermitian prefactor ratio against the printed product, every sigma.
pub fn prefactor_ratio_suite(max_n: usize) -> CheckReport {
    let name = "prefactor_ratio";
    wrap(name, (|| {
        let mut cases = 0;
        let mut failures = Vec::new();
        for n in 1..=max_n {
            let pre = prefactor(CaseTag::Hermitian, n)?;
            let bad: Vec<Vec<usize>> = WeylElement::all(n)
                .into_par_iter()
                .filter_map(|s| {
                    let ratio = pre.checked_div(&weyl_act(&s, &pre)).ok()?;
                    (ratio != hermitian_printed_factor(&s)).then(|| s.one_based())
                })
                .collect();
            cases += WeylElement::all(n).len();
            failures.extend(bad);
        }
        Ok(CheckReport::new(name, failures.is_empty(), cases, json!({ "max_n": max_n, "failures": failures })))
    })())
}

/// `omega = b_sigma * sigma.omega` for both cases and the cocycle relation
/// on `S_3`.
pub fn functional_equation_suite(max_n: usize, bound: i32) -> CheckReport {
    let name = "functional_equations";
    wrap(name, (|| {
        let mut jobs = Vec::new();
        for tag in [CaseTag::Alternating, CaseTag::Hermitian] {
            for n in 1..=max_n {
                for l in Partition::all_in_box(n, -bound, bound) {
                    for s in WeylElement::all(n) {
                        jobs.push((tag, l.clone(), s));
                    }
                }
            }
        }
        let failures: Vec<Value> = jobs
            .par_iter()
            .filter(|(tag, l, s)| !functional_equation_holds(*tag, l, s).unwrap_or(false))
            .map(|(tag, l, s)| json!({ "case": tag.name(), "lambda": l.parts(), "sigma": s.one_based() }))
            .collect();
        let mut cocycle_failures = Vec::new();
        let s3 = WeylElement::all(3);
        let mut cocycles = 0;
        for tag in [CaseTag::Alternating, CaseTag::Hermitian] {
            for a in &s3 {
                for b in &s3 {
                    cocycles += 1;
                    if !cocycle_holds(tag, a, b)? {
                        cocycle_failures.push(json!({ "case": tag.name(), "sigma": a.one_based(), "tau": b.one_based() }));
                    }
                }
            }
            if !feq_factor(tag, &WeylElement::identity(3))?.is_one() {
                cocycle_failures.push(json!({ "case": tag.name(), "identity": "b_1 != 1" }));
            }
        }
        Ok(CheckReport::new(
            name,
            failures.is_empty() && cocycle_failures.is_empty(),
            jobs.len() + cocycles,
            json!({ "max_n": max_n, "bound": bound, "failures": failures, "cocycle_failures": cocycle_failures }),
        ))
    })())
}

/// `sum_sigma sigma.(gamma x^lambda) = (w_lambda/(1-t)^n) P_lambda` at both
/// case parameters.
pub fn reconstruction_suite(max_n: usize, bound: i32) -> CheckReport {
    let mut jobs = Vec::new();
    for tag in [CaseTag::Alternating, CaseTag::Hermitian] {
        for n in 1..=max_n {
            for l in Partition::all_in_box(n, -bound, bound) {
                jobs.push((tag, l));
            }
        }
    }
    let failures: Vec<Value> = jobs
        .iter()
        .filter(|(tag, l)| !casselman_reconstruct(*tag, l).map(|r| r.holds()).unwrap_or(false))
        .map(|(tag, l)| json!({ "case": tag.name(), "lambda": l.parts() }))
        .collect();
    CheckReport::new("reconstruction", failures.is_empty(), jobs.len(), json!({ "failures": failures }))
}

/// Enumeration against closed forms: rank one at every level up to
/// `max_m_rank_one`, hermitian rank two up to `max_m_rank_two` with a stable
/// constant, and the symmetric residue-field histogram.
pub fn oracle_suite(p: u64, max_m_rank_one: u32, max_m_rank_two: u32) -> CheckReport {
    let name = "oracle";
    wrap(name, (|| {
        let mut cases = 0;
        let mut failures: Vec<Value> = Vec::new();
        let mut rank_one = Vec::new();
        for tag in [CaseTag::Hermitian, CaseTag::Alternating] {
            let case = CaseRealization::new(tag, 1)?;
            for l in [0, 1, 2] {
                for m in 1..=max_m_rank_one {
                    cases += 1;
                    match oracle_match(tag, &lambda(&[l]), &case.config(p, m)?, None) {
                        Ok(r) if r.fitted_c == crate::algebra::rat(1, 1) && r.tail == crate::algebra::rat(0, 1) => {
                            rank_one.push(json!({ "case": tag.name(), "lambda": [l], "m": m, "matched": r.matched() }))
                        }
                        Ok(r) => failures.push(json!({ "case": tag.name(), "lambda": [l], "m": m, "c": r.fitted_c.to_string() })),
                        Err(e) => failures.push(json!({ "case": tag.name(), "lambda": [l], "m": m, "error": e.to_string() })),
                    }
                }
            }
        }
        let mut rank_two = Vec::new();
        for parts in [[0, 0], [1, 0], [1, 1], [2, 0]] {
            let l = lambda(&parts);
            // below level lambda_n + 1 nothing besides the top slot is determined
            let levels: Vec<u32> = (parts[1] as u32 + 1..=max_m_rank_two).collect();
            cases += 1;
            match fit_across_levels(CaseTag::Hermitian, &l, p, &levels, &EnumOptions::default()) {
                Ok((c, reports)) => rank_two.push(json!({
                    "lambda": parts,
                    "c": c.value.map(|v| crate::algebra::serial::rational_string(&v)),
                    "levels": levels,
                    "matched": reports.iter().map(|r| r.matched()).collect::<Vec<_>>(),
                    "tails": reports.iter().map(|r| crate::algebra::serial::rational_string(&r.tail)).collect::<Vec<_>>(),
                })),
                Err(e) => failures.push(json!({ "case": "hermitian", "lambda": parts, "error": e.to_string() })),
            }
        }
        let sym = CaseRealization::new(CaseTag::Symmetric, 2)?;
        let h = valuation_histogram(&sym, &lambda(&[0, 0]), &sym.config(p, 1)?)?;
        cases += 1;
        let sym_ok = p != 3 || (h.counts.len() == 1 && h.counts.get(&vec![Some(0), Some(0)]) == Some(&48));
        if !sym_ok {
            failures.push(json!({ "case": "symmetric", "histogram": serde_json::to_value(&h).unwrap_or(Value::Null) }));
        }
        Ok(CheckReport::new(
            name,
            failures.is_empty(),
            cases,
            json!({
                "p": p,
                "rank_one": rank_one,
                "hermitian_rank_two": rank_two,
                "symmetric_histogram": serde_json::to_value(&h).unwrap_or(Value::Null),
                "failures": failures,
            }),
        ))
    })())
}

/// Hecke eigen-relation: rank-one cases at every level up to `max_m`, the
/// symmetric rank-two case at level `m2`.
pub fn hecke_suite(p: u64, max_m: u32, m2: u32) -> CheckReport {
    let name = "hecke";
    wrap(name, (|| {
        let mut reports = Vec::new();
        for tag in [CaseTag::Symmetric, CaseTag::Hermitian] {
            let case = CaseRealization::new(tag, 1)?;
            for m in 1..=max_m {
                reports.push(hecke_eigen_check(tag, &lambda(&[0]), &case.config(p, m)?)?);
            }
        }
        let sym = CaseRealization::new(CaseTag::Symmetric, 2)?;
        reports.push(hecke_eigen_check(CaseTag::Symmetric, &lambda(&[0, 0]), &sym.config(p, m2)?)?);
        let pass = reports.iter().all(|r| r.holds);
        Ok(CheckReport::new(name, pass, reports.len(), serde_json::to_value(&reports).unwrap_or(Value::Null)))
    })())
}

/// Tate gamma factor from the three standard functions, the Fourier
/// involution on `samples` seeded random step functions, and the scaling
/// identity for `m <= max_m`.
pub fn tate_suite(p: u64, samples: usize, max_m: u32) -> CheckReport {
    let name = "tate";
    wrap(name, (|| {
        let gamma = tate_report(p)?;
        let mut rng = ChaCha8Rng::seed_from_u64(0x7a7e);
        let shapes = [(1u32, 1u32, 1usize), (0, 2, 1), (2, 1, 1), (1, 2, 1), (1, 0, 2), (0, 1, 2), (1, 1, 2)];
        let mut involution_failures = Vec::new();
        for i in 0..samples {
            let (l, m, dim) = shapes[i % shapes.len()];
            let phi = StepFunction::random(&mut rng, p, l, m, dim)?;
            let ff = fourier_finite(&fourier_finite(&phi)?)?;
            let expected = if dim == 1 { phi.reflect() } else { phi.clone() };
            if ff != expected {
                involution_failures.push(json!({ "sample": i, "window": [l, m], "dim": dim }));
            }
        }
        let mut scaling = Vec::new();
        let mut scaling_ok = true;
        for degrees in [vec![1, 0], vec![1, 1]] {
            let ctx = PVContext::new(1, degrees, 1)?;
            for m in 0..=max_m {
                match scaling_check(&ctx, p, m) {
                    Ok(r) => scaling.push(serde_json::to_value(&r).unwrap_or(Value::Null)),
                    Err(e) => {
                        scaling_ok = false;
                        scaling.push(json!({ "m": m, "error": e.to_string() }));
                    }
                }
            }
        }
        let pass = gamma.independent && gamma.matches_expected && involution_failures.is_empty() && scaling_ok;
        Ok(CheckReport::new(
            name,
            pass,
            3 + samples + scaling.len(),
            json!({
                "gamma": gamma,
                "involution_samples": samples,
                "involution_failures": involution_failures,
                "scaling": scaling,
            }),
        ))
    })())
}
