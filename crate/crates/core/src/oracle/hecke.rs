//! The Hecke eigen-relation for the basic double coset `K diag(pi,1,..) K`
//! in rank one and two (symmetric and hermitian cases).
//!
//! The left side is `sum_j omega(g_j^-1 . x)` over lower triangular coset
//! representatives `g_j`. Since `pi g_j^-1 = adj(g_j)` is integral we
//! enumerate at `y_j = adj(g_j) . x = pi^2 (g_j^-1 . x)` and shift `v(f_i)` by
//! `-2i`. The right side is `lambda_s(phi) * omega(x)` with
//! `lambda_s(phi) = sum_j delta(g_j) |psi(g_j)|^-s` and
//! `delta(p) = |p_22 / p_11|`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use serde::Serialize;

use crate::algebra::{serial::rational_string, LaurentExpr, Rational};
use crate::case::CaseTag;
use crate::error::{Error, Result};
use crate::hall_littlewood::Partition;

use super::cases::{CaseRealization, IntElem, IntMatrix};
use super::enumerate::{histogram_at_point, EnumOptions};
use super::histogram::{histogram_series, ValuationHistogram};
use super::ring::{Elem, PAdicConfig, ResidueRing};

/// Which modulus character to use on the right side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DeltaConvention {
    /// `|p_22 / p_11|`
    LowerOverUpper,
    /// `|p_11 / p_22|`
    UpperOverLower,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HeckeCoefficient {
    pub exponents: Vec<i32>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HeckeReport {
    pub case: String,
    pub n: usize,
    pub lambda: Vec<i32>,
    pub p: u64,
    pub m: u32,
    pub cosets: usize,
    /// `lambda_s(phi)` in `u_i = q^-s_i`.
    pub eigenvalue: String,
    pub delta: DeltaConvention,
    pub coefficients: Vec<HeckeCoefficient>,
    pub holds: bool,
    /// Whether the opposite modulus character would also have matched.
    pub opposite_delta_holds: bool,
}

/// Lower triangular representatives of `K diag(pi, 1, ..) K / K`.
pub fn coset_representatives(case: &CaseRealization, cfg: &PAdicConfig) -> Result<Vec<IntMatrix>> {
    let p = cfg.p as i128;
    match case.matrix_size() {
        1 => Ok(vec![IntMatrix { rows: vec![vec![(p, 0)]] }]),
        2 => {
            let field = cfg.with_level(1)?.ring();
            let mut reps = vec![IntMatrix { rows: vec![vec![(p, 0), (0, 0)], vec![(0, 0), (1, 0)]] }];
            for i in 0..field.size() {
                let a = field.lift(field.element(i));
                reps.push(IntMatrix { rows: vec![vec![(1, 0), (0, 0)], vec![a, (p, 0)]] });
            }
            verify_tiling(&field, &reps)?;
            Ok(reps)
        }
        _ => Err(Error::UnsupportedCase("Hecke check is implemented for rank one and two".into())),
    }
}

/// The line `g O^2 mod pi` in projective coordinates.
fn column_line(field: &ResidueRing, g: &IntMatrix) -> Result<(Elem, Elem)> {
    let red = g.reduce(field);
    let col = (0..2)
        .map(|j| (red[0][j], red[1][j]))
        .find(|(a, b)| !field.is_zero(*a) || !field.is_zero(*b))
        .ok_or_else(|| Error::CosetDecompositionFailure("representative vanishes mod p".into()))?;
    Ok(normalize(field, col))
}

fn normalize(field: &ResidueRing, (a, b): (Elem, Elem)) -> (Elem, Elem) {
    if field.is_zero(b) {
        (field.one(), field.zero())
    } else {
        let inv = field.inv(b).expect("field");
        (field.mul(a, inv), field.one())
    }
}

/// Checks that the representatives lie in the double coset, give pairwise
/// distinct lattices, and reach every lattice `k diag(pi,1) O^2` for `k` in
/// `GL_2` of the residue field.
fn verify_tiling(field: &ResidueRing, reps: &[IntMatrix]) -> Result<()> {
    let mut seen = BTreeSet::new();
    for g in reps {
        let red = g.reduce(field);
        let det = field.sub(field.mul(red[0][0], red[1][1]), field.mul(red[0][1], red[1][0]));
        if !field.is_zero(det) {
            return Err(Error::CosetDecompositionFailure("representative is a unit".into()));
        }
        if !seen.insert(column_line(field, g)?) {
            return Err(Error::CosetDecompositionFailure("two representatives give the same coset".into()));
        }
    }
    let size = field.size();
    let mut reached = BTreeSet::new();
    for idx in 0..size.pow(4) {
        let e: Vec<Elem> = (0..4).map(|k| field.element(idx / size.pow(k) % size)).collect();
        let det = field.sub(field.mul(e[0], e[3]), field.mul(e[1], e[2]));
        if field.is_zero(det) {
            continue;
        }
        // k diag(pi, 1) reduces to the second column of k
        reached.insert(normalize(field, (e[1], e[3])));
    }
    if reached != seen {
        return Err(Error::CosetDecompositionFailure(format!(
            "{} representatives for {} cosets",
            seen.len(),
            reached.len()
        )));
    }
    Ok(())
}

fn adjugate(g: &IntMatrix) -> IntMatrix {
    match g.size() {
        1 => IntMatrix { rows: vec![vec![(1, 0)]] },
        _ => {
            let neg = |(a, b): IntElem| (-a, -b);
            let r = &g.rows;
            IntMatrix { rows: vec![vec![r[1][1], neg(r[0][1])], vec![neg(r[1][0]), r[0][0]]] }
        }
    }
}

fn diag_valuations(g: &IntMatrix, p: u64) -> Vec<i32> {
    (0..g.size())
        .map(|i| super::cases::int_valuation(g.rows[i][i], p).expect("invertible"))
        .collect()
}

/// `lambda_s(phi)` as a Laurent polynomial in `u_1..u_n`.
pub fn eigenvalue(case: &CaseRealization, cfg: &PAdicConfig, reps: &[IntMatrix], delta: DeltaConvention) -> LaurentExpr {
    let n = case.n;
    let big_q = cfg.residue_size() as i64;
    let mut out = LaurentExpr::zero(n);
    for g in reps {
        let v = diag_valuations(g, cfg.p);
        let mut exps = vec![0i32; n + 1];
        let mut acc = 0;
        for i in 0..n {
            acc += v[i];
            exps[i + 1] = -2 * acc;
        }
        let d = if n == 1 {
            0
        } else {
            match delta {
                DeltaConvention::LowerOverUpper => v[0] - v[1],
                DeltaConvention::UpperOverLower => v[1] - v[0],
            }
        };
        let coef = if d >= 0 {
            Rational::from_integer(BigInt::from(big_q).pow(d as u32))
        } else {
            Rational::new(1.into(), BigInt::from(big_q).pow((-d) as u32))
        };
        out = &out + &LaurentExpr::monomial(exps, coef);
    }
    out
}

pub fn hecke_eigen_check(tag: CaseTag, lambda: &Partition, cfg: &PAdicConfig) -> Result<HeckeReport> {
    hecke_eigen_check_with(tag, lambda, cfg, &EnumOptions::default())
}

pub fn hecke_eigen_check_with(
    tag: CaseTag,
    lambda: &Partition,
    cfg: &PAdicConfig,
    opts: &EnumOptions,
) -> Result<HeckeReport> {
    if tag == CaseTag::Alternating {
        return Err(Error::UnsupportedCase("Hecke check covers the symmetric and hermitian cases".into()));
    }
    let n = lambda.len();
    let case = CaseRealization::new(tag, n)?;
    case.check_config(cfg)?;
    if lambda.parts().iter().any(|&l| l < 0) {
        return Err(Error::UnsupportedCase("Hecke check needs nonnegative parts".into()));
    }
    let reps = coset_representatives(&case, cfg)?;
    let x = case.representative(lambda, cfg.p)?;

    // left side
    let mut lhs_hist: Option<ValuationHistogram> = None;
    for g in &reps {
        let y = case.exact_act(&adjugate(g), &x, cfg.rho());
        let h = histogram_at_point(&case, &y, cfg, opts)?;
        lhs_hist = Some(match lhs_hist {
            None => h,
            Some(acc) => acc.merge(&h),
        });
    }
    let lhs_hist = lhs_hist.expect("at least one coset");
    let shift: Vec<i32> = (1..=n as i32).map(|i| -2 * i).collect();
    let lhs = histogram_series(&lhs_hist.shifted(&shift)).series;

    // right side
    let omega = histogram_series(&histogram_at_point(&case, &x, cfg, opts)?).series;
    let top = lhs_hist.counts.keys().next().and_then(|c| c[n - 1]).expect("top valuation") - 2 * n as i32;
    let cells = comparison_cells(n, cfg.m, top);
    let check = |delta| {
        let rhs = &eigenvalue(&case, cfg, &reps, delta) * &omega;
        let coefficients: Vec<HeckeCoefficient> = cells
            .iter()
            .map(|e| HeckeCoefficient {
                exponents: e[1..].to_vec(),
                lhs: rational_string(&lhs.coefficient(e)),
                rhs: rational_string(&rhs.coefficient(e)),
            })
            .collect();
        let holds = coefficients.iter().all(|c| c.lhs == c.rhs);
        (coefficients, holds)
    };
    let (coefficients, holds) = check(DeltaConvention::LowerOverUpper);
    let (_, opposite) = check(DeltaConvention::UpperOverLower);
    Ok(HeckeReport {
        case: tag.name().into(),
        n,
        lambda: lambda.parts().to_vec(),
        p: cfg.p,
        m: cfg.m,
        cosets: reps.len(),
        eigenvalue: crate::algebra::render::to_text(&eigenvalue(&case, cfg, &reps, DeltaConvention::LowerOverUpper), "q")
            .replace('x', "u"),
        delta: DeltaConvention::LowerOverUpper,
        coefficients,
        holds,
        opposite_delta_holds: opposite,
    })
}

/// Cells `(e_1, .., e_{n-1}, top)` with `-2i <= e_i < m - 2i`, where both
/// sides are exact.
fn comparison_cells(n: usize, m: u32, top: i32) -> Vec<Vec<i32>> {
    let mut out = vec![vec![0i32; n + 1]];
    for i in 1..n {
        let lo = -2 * i as i32;
        let hi = m as i32 - 2 * i as i32;
        out = out
            .into_iter()
            .flat_map(|e| {
                (lo..hi).map(move |v| {
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
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lam(p: &[i32]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    #[test]
    fn rank_one_exact() {
        for tag in [CaseTag::Symmetric, CaseTag::Hermitian] {
            let case = CaseRealization::new(tag, 1).unwrap();
            for m in 1..=4 {
                let r = hecke_eigen_check(tag, &lam(&[1]), &case.config(3, m).unwrap()).unwrap();
                assert!(r.holds);
                assert_eq!(r.cosets, 1);
                assert_eq!(r.coefficients.len(), 1);
                assert_eq!(r.eigenvalue, "u1^-2");
            }
        }
    }

    #[test]
    fn rank_two_symmetric() {
        let case = CaseRealization::new(CaseTag::Symmetric, 2).unwrap();
        let r = hecke_eigen_check(CaseTag::Symmetric, &lam(&[0, 0]), &case.config(3, 2).unwrap()).unwrap();
        assert_eq!(r.cosets, 4);
        assert!(r.holds, "{r:?}");
        assert!(!r.opposite_delta_holds);
        assert_eq!(r.coefficients[0].exponents, vec![-2, -2]);
        assert_eq!(r.coefficients[0].lhs, "3/1");
    }

    #[test]
    fn tiling_counts() {
        let case = CaseRealization::new(CaseTag::Hermitian, 2).unwrap();
        let reps = coset_representatives(&case, &case.config(3, 1).unwrap()).unwrap();
        assert_eq!(reps.len(), 10);
    }
}
