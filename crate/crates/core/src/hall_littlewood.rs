//! Hall-Littlewood polynomials by symmetrization.
//!
//! `P_lambda(x; t) = (1/v_lambda(t)) sum_sigma sigma(x^lambda prod_{i<j} (x_i - t x_j)/(x_i - x_j))`
//! with `v_lambda(t) = w_lambda(t)/(1-t)^n`. The sum is taken over the common
//! denominator `prod_{i<j}(x_i - x_j)`, which every permutation maps to
//! `sgn(sigma)` times itself, so a single exact division finishes the job.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;

use crate::algebra::{exact_div, AlgebraError, LaurentExpr, Rational};
use crate::error::{Error, Result};
use crate::weyl::{param, WeylElement};

/// A weakly decreasing integer vector; parts may be negative.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<i32>,
    multiplicities: Vec<(i32, usize)>,
}

impl Partition {
    pub fn new(parts: Vec<i32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotDecreasing(parts));
        }
        let mut multiplicities: Vec<(i32, usize)> = Vec::new();
        for &p in &parts {
            match multiplicities.last_mut() {
                Some((v, m)) if *v == p => *m += 1,
                _ => multiplicities.push((p, 1)),
            }
        }
        Ok(Partition { parts, multiplicities })
    }

    /// The zero partition of length `n`.
    pub fn zero(n: usize) -> Self {
        Self::new(vec![0; n]).expect("constant vector")
    }

    pub fn parts(&self) -> &[i32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `(value, multiplicity)` for each distinct part, largest first.
    pub fn multiplicities(&self) -> &[(i32, usize)] {
        &self.multiplicities
    }

    pub fn size(&self) -> i32 {
        self.parts.iter().sum()
    }

    pub fn translate(&self, c: i32) -> Self {
        Self::new(self.parts.iter().map(|p| p + c).collect()).expect("translation keeps order")
    }

    /// Every weakly decreasing vector of length `n` with parts in `lo..=hi`.
    pub fn all_in_box(n: usize, lo: i32, hi: i32) -> Vec<Self> {
        fn rec(n: usize, lo: i32, hi: i32, prefix: &mut Vec<i32>, out: &mut Vec<Partition>) {
            if prefix.len() == n {
                out.push(Partition::new(prefix.clone()).expect("built decreasing"));
                return;
            }
            let top = prefix.last().copied().unwrap_or(hi);
            for v in (lo..=top).rev() {
                prefix.push(v);
                rec(n, lo, hi, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, lo, hi, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

fn t_poly(t: &LaurentExpr) -> LaurentExpr {
    param(t, 0).as_laurent().expect("parameter is Laurent")
}

/// `w_lambda(t) = prod over distinct parts of prod_{i=1}^{m} (1 - t^i)`.
pub fn w_lambda(lambda: &Partition, t: &LaurentExpr) -> LaurentExpr {
    let t = t_poly(t);
    let one = LaurentExpr::one(0);
    let mut out = one.clone();
    for &(_, m) in lambda.multiplicities() {
        for i in 1..=m {
            out = &out * &(&one - &t.pow(i as u32));
        }
    }
    out
}

/// `w_lambda(t)/(1-t)^n` as a polynomial: the product of t-integers `[i]_t`.
pub fn v_lambda(lambda: &Partition, t: &LaurentExpr) -> LaurentExpr {
    let t = t_poly(t);
    let one = LaurentExpr::one(0);
    let mut out = one.clone();
    for &(_, m) in lambda.multiplicities() {
        for i in 1..=m {
            let mut qint = LaurentExpr::zero(0);
            let mut p = one.clone();
            for _ in 0..i {
                qint = &qint + &p;
                p = &p * &t;
            }
            out = &out * &qint;
        }
    }
    out
}

/// `prod_{i<j} (x_i - x_j)`.
pub fn vandermonde(n: usize) -> LaurentExpr {
    let mut out = LaurentExpr::one(n);
    for i in 1..=n {
        for j in i + 1..=n {
            out = &out * &(&LaurentExpr::x(i, n) - &LaurentExpr::x(j, n));
        }
    }
    out
}

/// `P_lambda(x1..xn; t)` with `t` a Laurent polynomial in the base variable.
pub fn hl_polynomial(lambda: &Partition, n: usize, t: &LaurentExpr) -> Result<LaurentExpr> {
    if lambda.len() != n {
        return Err(Error::BadLength { expected: n, got: lambda.len() });
    }
    if n == 0 {
        return Ok(LaurentExpr::one(0));
    }
    let shift = lambda.parts()[n - 1].min(0);
    let base = lambda.translate(-shift);
    let p = hl_nonnegative(&base, n, t)?;
    Ok(p.shift(&{
        let mut s = vec![shift; n + 1];
        s[0] = 0;
        s
    }))
}

fn hl_nonnegative(lambda: &Partition, n: usize, t: &LaurentExpr) -> Result<LaurentExpr> {
    let tn = t_poly(t).widen(n);
    let mut kernel = LaurentExpr::monomial(
        std::iter::once(0).chain(lambda.parts().iter().copied()).collect(),
        Rational::from_integer(1.into()),
    );
    for i in 1..=n {
        for j in i + 1..=n {
            let xi = LaurentExpr::x(i, n);
            let xj = LaurentExpr::x(j, n);
            kernel = &kernel * &(&xi - &(&tn * &xj));
        }
    }
    let numerator = WeylElement::all(n)
        .par_iter()
        .map(|s| {
            let term = kernel.permute_x(s.perm());
            if s.sign() < 0 {
                -term
            } else {
                term
            }
        })
        .reduce(|| LaurentExpr::zero(n), |a, b| &a + &b);
    let sym = exact_div(&numerator, &vandermonde(n)).ok_or(AlgebraError::InexactDivision)?;
    let v = v_lambda(lambda, t).widen(n);
    Ok(exact_div(&sym, &v).ok_or(AlgebraError::InexactDivision)?)
}

/// Sum of `x^mu` over the distinct rearrangements `mu` of `lambda`.
pub fn monomial_sym(lambda: &Partition, n: usize) -> Result<LaurentExpr> {
    if lambda.len() != n {
        return Err(Error::BadLength { expected: n, got: lambda.len() });
    }
    let arrangements: BTreeSet<Vec<i32>> = WeylElement::all(n)
        .iter()
        .map(|s| s.act_on_vector(lambda.parts()))
        .collect();
    let terms = arrangements.into_iter().map(|mu| {
        let mut e = vec![0];
        e.extend(mu);
        (e, Rational::from_integer(1.into()))
    });
    Ok(LaurentExpr::from_terms(n, terms)?)
}

/// Coefficients of a symmetric Laurent polynomial in the monomial basis,
/// keyed by partition. Each coefficient is a Laurent polynomial in the base
/// variable (zero x-slots dropped).
pub fn monomial_expansion(p: &LaurentExpr) -> Option<BTreeMap<Partition, LaurentExpr>> {
    if !p.is_symmetric() {
        return None;
    }
    let mut out: BTreeMap<Partition, Vec<(Vec<i32>, Rational)>> = BTreeMap::new();
    for (e, c) in p.terms() {
        let xs = &e[1..];
        if xs.windows(2).all(|w| w[0] >= w[1]) {
            let lambda = Partition::new(xs.to_vec()).expect("checked decreasing");
            out.entry(lambda).or_default().push((vec![e[0]], c.clone()));
        }
    }
    Some(
        out.into_iter()
            .map(|(k, ts)| (k, LaurentExpr::from_terms(0, ts).expect("same shape")))
            .collect(),
    )
}

/// Dominance order: `mu <= lambda` when partial sums of `mu` never exceed
/// those of `lambda` and the totals agree.
pub fn dominated_by(mu: &Partition, lambda: &Partition) -> bool {
    if mu.len() != lambda.len() || mu.size() != lambda.size() {
        return false;
    }
    let mut a = 0;
    let mut b = 0;
    for (x, y) in mu.parts().iter().zip(lambda.parts()) {
        a += x;
        b += y;
        if a > b {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, render::to_grouped_text};
    use crate::weyl::t_symbol;

    fn lam(p: &[i32]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    fn tpoly(coeffs: &[i64]) -> LaurentExpr {
        coeffs
            .iter()
            .enumerate()
            .map(|(k, &c)| LaurentExpr::monomial(vec![k as i32], int(c)))
            .fold(LaurentExpr::zero(0), |a, b| &a + &b)
    }

    #[test]
    fn partition_validation() {
        assert!(Partition::new(vec![1, 2]).is_err());
        let p = lam(&[2, 1, 1, -1]);
        assert_eq!(p.multiplicities(), &[(2, 1), (1, 2), (-1, 1)]);
        assert_eq!(Partition::all_in_box(2, -1, 1).len(), 6);
    }

    #[test]
    fn w_lambda_examples() {
        let t = t_symbol();
        let one_minus_t = tpoly(&[1, -1]);
        assert_eq!(w_lambda(&lam(&[1, 0]), &t), one_minus_t.pow(2));
        assert_eq!(w_lambda(&lam(&[0, 0]), &t), &one_minus_t * &tpoly(&[1, 0, -1]));
        assert_eq!(
            w_lambda(&lam(&[2, 1, 1]), &t),
            &(&one_minus_t * &one_minus_t) * &tpoly(&[1, 0, -1])
        );
    }

    #[test]
    fn hl_examples() {
        let t = t_symbol();
        assert!(hl_polynomial(&lam(&[0, 0, 0]), 3, &t).unwrap().is_one());
        let p10 = hl_polynomial(&lam(&[1, 0]), 2, &t).unwrap();
        assert_eq!(p10, &LaurentExpr::x(1, 2) + &LaurentExpr::x(2, 2));
        let p20 = hl_polynomial(&lam(&[2, 0]), 2, &t).unwrap();
        assert_eq!(to_grouped_text(&p20, "t"), "x1^2 + x2^2 + (1-t)*x1*x2");
        let p11 = hl_polynomial(&lam(&[1, 1]), 2, &t).unwrap();
        assert_eq!(p11, &LaurentExpr::x(1, 2) * &LaurentExpr::x(2, 2));
    }

    #[test]
    fn negative_parts_translate() {
        let t = t_symbol();
        let p = hl_polynomial(&lam(&[1, -1]), 2, &t).unwrap();
        let q = hl_polynomial(&lam(&[2, 0]), 2, &t).unwrap();
        assert_eq!(p, q.shift(&[0, -1, -1]));
    }

    #[test]
    fn monomial_sym_examples() {
        let x1 = LaurentExpr::x(1, 2);
        let x2 = LaurentExpr::x(2, 2);
        assert_eq!(monomial_sym(&lam(&[1, 0]), 2).unwrap(), &x1 + &x2);
        assert_eq!(monomial_sym(&lam(&[1, 1]), 2).unwrap(), &x1 * &x2);
        assert_eq!(
            monomial_sym(&lam(&[2, 1]), 2).unwrap(),
            &(&x1.pow(2) * &x2) + &(&x1 * &x2.pow(2))
        );
    }

    #[test]
    fn wrong_length() {
        assert!(matches!(
            hl_polynomial(&lam(&[1]), 2, &t_symbol()),
            Err(Error::BadLength { .. })
        ));
    }
}
