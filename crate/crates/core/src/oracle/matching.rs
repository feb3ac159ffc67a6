//! Comparison of enumerated histograms with the closed forms.
//!
//! In `u_i = q^{-s_i}` coordinates the closed forms are rational functions
//! of `u` after the substitutions
//!
//! * alternating: `x_i = prod_{j >= i} w_j` with `w_j = q^-2 u_j` for `j < n`
//!   and `w_n = q^{n-1} u_n`;
//! * hermitian: `x_i = (-q^-1)^{n-i} prod_{j >= i} u_j`, up to the overall
//!   constant `(-q^{-(n-1)/2})^{|lambda|}` which is absorbed by `c_lambda`.

use num_traits::Zero;
use serde::Serialize;

use crate::algebra::{serial::rational_string, series_expand, LaurentExpr, RatFunc, Rational, Var};
use crate::case::CaseTag;
use crate::error::{Error, Result};
use crate::hall_littlewood::Partition;
use crate::spherical::{spherical_closed_form, NormalizationConstant};

use super::cases::CaseRealization;
use super::enumerate::{valuation_histogram_with, EnumOptions};
use super::histogram::{histogram_series, ValuationHistogram};
use super::ring::PAdicConfig;

/// `x_i` as a monomial in `q` and `u_1..u_n` (slots shared with `x`).
pub fn u_substitution(tag: CaseTag, n: usize) -> Result<Vec<LaurentExpr>> {
    let mut out = Vec::with_capacity(n);
    for i in 1..=n {
        let mut exps = vec![0i32; n + 1];
        for e in exps.iter_mut().skip(i) {
            *e = 1;
        }
        let (qexp, sign) = match tag {
            CaseTag::Alternating => (-2 * (n - i) as i32 + (n as i32 - 1), 1),
            CaseTag::Hermitian => (-((n - i) as i32), if (n - i).is_multiple_of(2) { 1 } else { -1 }),
            CaseTag::Symmetric => return Err(Error::NoClosedForm("symmetric")),
        };
        exps[0] = qexp;
        out.push(LaurentExpr::monomial(exps, Rational::from_integer(sign.into())));
    }
    Ok(out)
}

/// The closed form `prefactor * P_lambda` in `u` coordinates at `q = p`.
pub fn closed_form_in_u(tag: CaseTag, lambda: &Partition, p: u64) -> Result<RatFunc> {
    let n = lambda.len();
    let closed = spherical_closed_form(tag, lambda)?;
    let subs = u_substitution(tag, n)?;
    let mut bindings: Vec<(Var, RatFunc)> = subs
        .into_iter()
        .enumerate()
        .map(|(i, e)| (Var::X(i + 1), RatFunc::from_laurent(e)))
        .collect();
    let in_u = closed.substitute(&bindings)?;
    bindings.clear();
    bindings.push((Var::Q, RatFunc::from_int(p as i64, n)));
    Ok(in_u.substitute(&bindings)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoefficientCheck {
    pub exponents: Vec<i32>,
    #[serde(serialize_with = "ser_rat")]
    pub oracle: Rational,
    #[serde(serialize_with = "ser_rat")]
    pub closed: Rational,
}

fn ser_rat<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&rational_string(r))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatchReport {
    pub case: String,
    pub lambda: Vec<i32>,
    pub p: u64,
    pub m: u32,
    #[serde(serialize_with = "ser_rat")]
    pub fitted_c: Rational,
    /// Whether `fitted_c` came from this run rather than the caller.
    pub fitted_here: bool,
    /// Every determined coefficient, all of which matched.
    pub coefficients: Vec<CoefficientCheck>,
    #[serde(serialize_with = "ser_rat")]
    pub tail: Rational,
    #[serde(skip)]
    pub histogram: ValuationHistogram,
}

impl MatchReport {
    pub fn matched(&self) -> usize {
        self.coefficients.len()
    }
}

pub fn oracle_match(
    tag: CaseTag,
    lambda: &Partition,
    cfg: &PAdicConfig,
    c_fit: Option<&NormalizationConstant>,
) -> Result<MatchReport> {
    oracle_match_with(tag, lambda, cfg, c_fit, &EnumOptions::default())
}

pub fn oracle_match_with(
    tag: CaseTag,
    lambda: &Partition,
    cfg: &PAdicConfig,
    c_fit: Option<&NormalizationConstant>,
    opts: &EnumOptions,
) -> Result<MatchReport> {
    if tag == CaseTag::Symmetric {
        return Err(Error::NoClosedForm("symmetric"));
    }
    if lambda.parts().iter().any(|&l| l < 0) {
        return Err(Error::UnsupportedCase("matching needs nonnegative parts".into()));
    }
    let n = lambda.len();
    let case = CaseRealization::new(tag, n)?;
    let hist = valuation_histogram_with(&case, lambda, cfg, opts)?;
    let hs = histogram_series(&hist);
    let closed = closed_form_in_u(tag, lambda, cfg.p)?;

    let mut weights = vec![1i32; n + 1];
    weights[0] = 0;
    weights[n] = 0;
    let order = (n as i32 - 1) * (cfg.m as i32 - 1);
    let series = series_expand(&closed, &weights, order)?;
    let top = lambda.size();

    // closed-form terms must live on the top valuation
    for (e, c) in series.coeffs.terms() {
        if e[n] != top && !c.is_zero() {
            return Err(Error::MismatchBeyondTail {
                at: format!("{:?}", &e[1..]),
                oracle: "0".into(),
                closed: rational_string(c),
            });
        }
    }

    let cells = determined_cells(n, cfg.m, top);
    let mut fitted_here = false;
    let c = match c_fit.and_then(|c| c.value.clone()) {
        Some(v) => v,
        None => {
            fitted_here = true;
            let first = cells
                .iter()
                .find(|e| !series.coefficient(e).is_zero())
                .ok_or(Error::LevelTooSmall(cfg.m))?;
            hs.series.coefficient(first) / series.coefficient(first)
        }
    };
    let mut coefficients = Vec::new();
    for e in cells {
        let oracle = hs.series.coefficient(&e);
        let closed = &c * series.coefficient(&e);
        if oracle != closed {
            return Err(Error::MismatchBeyondTail {
                at: format!("{:?}", &e[1..]),
                oracle: rational_string(&oracle),
                closed: rational_string(&closed),
            });
        }
        coefficients.push(CoefficientCheck { exponents: e[1..].to_vec(), oracle, closed });
    }
    Ok(MatchReport {
        case: tag.name().to_string(),
        lambda: lambda.parts().to_vec(),
        p: cfg.p,
        m: cfg.m,
        fitted_c: c,
        fitted_here,
        coefficients,
        tail: hs.tail,
        histogram: hist,
    })
}

/// Exponent vectors (with the base slot) whose coefficient is exact at
/// level `m`, in graded order.
fn determined_cells(n: usize, m: u32, top: i32) -> Vec<Vec<i32>> {
    let mut out = vec![vec![0i32; n + 1]];
    for i in 1..n {
        out = out
            .into_iter()
            .flat_map(|e| {
                (0..m as i32).map(move |v| {
                    let mut e = e.clone();
                    e[i] = v;
                    e
                })
            })
            .collect();
    }
    for e in out.iter_mut() {
        e[n] = top;
    }
    out.sort_by_key(|e| (e[1..n].iter().sum::<i32>(), e.clone()));
    out
}

/// Fits `c_lambda` at each level in turn, recording every fit in one
/// normalization constant; a level that disagrees is an error.
pub fn fit_across_levels(
    tag: CaseTag,
    lambda: &Partition,
    p: u64,
    levels: &[u32],
    opts: &EnumOptions,
) -> Result<(NormalizationConstant, Vec<MatchReport>)> {
    let mut constant = NormalizationConstant::unset(tag, lambda.clone());
    let case = CaseRealization::new(tag, lambda.len())?;
    let mut reports = Vec::new();
    for &m in levels {
        let cfg = case.config(p, m)?;
        let report = oracle_match_with(tag, lambda, &cfg, None, opts)?;
        constant.record_fit(p, m, report.fitted_c.clone())?;
        reports.push(report);
    }
    Ok((constant, reports))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::spherical::hermitian_rank2_c0;

    fn lam(p: &[i32]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    #[test]
    fn rank_one_matches_with_unit_constant() {
        for tag in [CaseTag::Alternating, CaseTag::Hermitian] {
            let case = CaseRealization::new(tag, 1).unwrap();
            for m in 1..=3 {
                let r = oracle_match(tag, &lam(&[1]), &case.config(3, m).unwrap(), None).unwrap();
                assert_eq!(r.fitted_c, rat(1, 1));
                assert_eq!(r.matched(), 1);
            }
        }
    }

    #[test]
    fn hermitian_rank_two_constant() {
        let case = CaseRealization::new(CaseTag::Hermitian, 2).unwrap();
        let r = oracle_match(CaseTag::Hermitian, &lam(&[0, 0]), &case.config(3, 2).unwrap(), None).unwrap();
        assert_eq!(r.fitted_c, hermitian_rank2_c0(3));
        assert_eq!(r.matched(), 2);
    }

    #[test]
    fn alternating_rank_two_constant() {
        let case = CaseRealization::new(CaseTag::Alternating, 2).unwrap();
        let r = oracle_match(CaseTag::Alternating, &lam(&[0, 0]), &case.config(3, 1).unwrap(), None).unwrap();
        assert_eq!(r.fitted_c, rat(9, 13));
    }

    #[test]
    fn determined_cells_are_graded() {
        let cells = determined_cells(3, 2, 5);
        assert_eq!(cells.len(), 4);
        assert_eq!(cells[0], vec![0, 0, 0, 5]);
        assert_eq!(cells[3], vec![0, 1, 1, 5]);
    }
}
