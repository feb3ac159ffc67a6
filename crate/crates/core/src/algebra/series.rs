//! Truncated power-series expansion of rational functions under a grading.

use num_traits::Zero;

use super::laurent::{LaurentExpr, Rational};
use super::ratfunc::RatFunc;
use super::AlgebraError;

/// Series coefficients of all monomials of weight at most `order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    pub weights: Vec<i32>,
    pub order: i32,
    pub coeffs: LaurentExpr,
}

fn weight(weights: &[i32], e: &[i32]) -> i32 {
    weights.iter().zip(e).map(|(w, a)| w * a).sum()
}

fn truncate(e: &LaurentExpr, weights: &[i32], order: i32) -> LaurentExpr {
    let kept = e
        .terms()
        .filter(|(x, _)| weight(weights, x) <= order)
        .map(|(x, c)| (x.clone(), c.clone()));
    LaurentExpr::from_terms(e.nvars(), kept).expect("same shape")
}

fn truncated_mul(a: &LaurentExpr, b: &LaurentExpr, weights: &[i32], order: i32) -> LaurentExpr {
    let mut out = LaurentExpr::zero(a.nvars());
    let bw: Vec<_> = b.terms().map(|(e, c)| (weight(weights, e), e, c)).collect();
    for (ea, ca) in a.terms() {
        let wa = weight(weights, ea);
        for (wb, eb, cb) in &bw {
            if wa + wb <= order {
                let e: Vec<i32> = ea.iter().zip(eb.iter()).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * *cb);
            }
        }
    }
    out
}

fn min_weight(e: &LaurentExpr, weights: &[i32]) -> Option<i32> {
    e.terms().map(|(x, _)| weight(weights, x)).min()
}

impl TruncatedSeries {
    pub fn new(weights: Vec<i32>, order: i32, coeffs: &LaurentExpr) -> Self {
        let coeffs = truncate(coeffs, &weights, order);
        TruncatedSeries { weights, order, coeffs }
    }

    /// Product truncated at the smaller of the two orders.
    pub fn mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        if self.weights != other.weights {
            return Err(AlgebraError::InvalidGrading("series have different gradings".into()));
        }
        let order = self.order.min(other.order);
        Ok(TruncatedSeries {
            coeffs: truncated_mul(&self.coeffs, &other.coeffs, &self.weights, order),
            weights: self.weights.clone(),
            order,
        })
    }

    pub fn coefficient(&self, exps: &[i32]) -> Rational {
        self.coeffs.coefficient(exps)
    }

    pub fn weight_of(&self, exps: &[i32]) -> i32 {
        weight(&self.weights, exps)
    }
}

/// Expands `e` as a power series in the positively weighted variables.
///
/// `weights` has one nonnegative entry per variable slot (base variable
/// first). The weight-zero part of the denominator must be a single term, so
/// that it is a unit of the coefficient ring, and no denominator term may
/// have negative weight.
pub fn series_expand(e: &RatFunc, weights: &[i32], order: i32) -> Result<TruncatedSeries, AlgebraError> {
    let nvars = e.nvars();
    if weights.len() != nvars + 1 {
        return Err(AlgebraError::InvalidGrading(format!(
            "expected {} weights, got {}",
            nvars + 1,
            weights.len()
        )));
    }
    if weights.iter().any(|&w| w < 0) {
        return Err(AlgebraError::InvalidGrading("weights must be nonnegative".into()));
    }
    let den = e.den();
    let mut d0 = LaurentExpr::zero(nvars);
    let mut rest = LaurentExpr::zero(nvars);
    for (x, c) in den.terms() {
        let w = weight(weights, x);
        if w < 0 {
            return Err(AlgebraError::NoUnitConstantTerm);
        }
        let t = LaurentExpr::monomial(x.clone(), c.clone());
        if w == 0 {
            d0 = &d0 + &t;
        } else {
            rest = &rest + &t;
        }
    }
    let inv0 = match d0.as_monomial() {
        Some(_) => d0.powi(-1).expect("monomial inverse"),
        None => return Err(AlgebraError::NoUnitConstantTerm),
    };
    let num = e.num();
    if num.is_zero() {
        return Ok(TruncatedSeries::new(weights.to_vec(), order, &LaurentExpr::zero(nvars)));
    }
    // Enough precision in 1/den to reach `order` after multiplying by num.
    let need = order - min_weight(num, weights).expect("nonzero");
    // 1/den = inv0 * sum_k (-h)^k with h = rest * inv0 of positive weight.
    let h = -(&rest * &inv0);
    let mut inv = LaurentExpr::one(nvars);
    let mut power = LaurentExpr::one(nvars);
    if need >= 0 {
        loop {
            power = truncated_mul(&power, &h, weights, need);
            if power.is_zero() {
                break;
            }
            inv = &inv + &power;
        }
    } else {
        inv = LaurentExpr::zero(nvars);
    }
    let inv = &inv * &inv0;
    let coeffs = truncated_mul(num, &inv, weights, order);
    Ok(TruncatedSeries {
        weights: weights.to_vec(),
        order,
        coeffs,
    })
}

impl TruncatedSeries {
    /// Coefficients whose weight is exactly `w`.
    pub fn homogeneous_part(&self, w: i32) -> LaurentExpr {
        let kept = self
            .coeffs
            .terms()
            .filter(|(x, _)| weight(&self.weights, x) == w)
            .map(|(x, c)| (x.clone(), c.clone()));
        LaurentExpr::from_terms(self.coeffs.nvars(), kept).expect("same shape")
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero() || self.coeffs.terms().all(|(_, c)| c.is_zero())
    }
}
