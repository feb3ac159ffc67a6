//! Closed-form spherical functions, functional-equation factors and the
//! reconstruction identity.
//!
//! Everything is written in z-coordinates with `x_i = q^{z_i}`. For the
//! alternating case `t = q^-2` and the prefactor is
//! `prod_{i<j} (1 - q^-1 x_i/x_j)/(1 - q x_i/x_j)`; for unramified hermitian
//! forms `t = -q^-1` and the prefactor is
//! `prod_{i<j} (1 - q^-1 x_i/x_j)/(1 + x_i/x_j)`. The spherical function at
//! `pi^lambda` is `c_lambda * prefactor * P_lambda(x; t)` with a scalar
//! `c_lambda` that is fitted against the enumeration oracle.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{rat, LaurentExpr, RatFunc, Rational};
use crate::case::CaseTag;
use crate::error::{Error, Result};
use crate::hall_littlewood::{hl_polynomial, v_lambda, Partition};
use crate::weyl::{gamma_product, weyl_act, VariableMap, WeylElement};

/// Configuration of one homogeneous-space case at rank `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SphericalCase {
    pub tag: CaseTag,
    pub n: usize,
}

impl SphericalCase {
    pub fn new(tag: CaseTag, n: usize) -> Self {
        SphericalCase { tag, n }
    }

    fn require_closed_form(&self) -> Result<()> {
        match self.tag {
            CaseTag::Symmetric => Err(Error::NoClosedForm("symmetric")),
            _ => Ok(()),
        }
    }

    /// The Hall-Littlewood parameter as a Laurent polynomial in `q`.
    pub fn t(&self) -> Result<LaurentExpr> {
        self.require_closed_form()?;
        Ok(case_parameter(self.tag))
    }

    pub fn variable_map(&self) -> Result<VariableMap> {
        VariableMap::new(self.tag, self.n)
    }

    /// How the character shift is absorbed into the z-coordinates.
    pub fn shift_description(&self) -> &'static str {
        match self.tag {
            CaseTag::Alternating => "shift absorbed into the affine offsets -2 and n-1 of the coordinate change",
            CaseTag::Hermitian => "imaginary shift realized as the sign in t = -q^-1; coordinate change is linear",
            CaseTag::Symmetric => "no closed form",
        }
    }

    /// The group of open-orbit classes attached to each invariant.
    pub fn orbit_classes(&self) -> &'static str {
        match self.tag {
            CaseTag::Alternating => "trivial",
            CaseTag::Hermitian => "k^x / N(k'^x) = Z/2 (valuation parity)",
            CaseTag::Symmetric => "k^x / k^x2 = (Z/2)^2 (valuation parity, unit square class)",
        }
    }
}

fn case_parameter(tag: CaseTag) -> LaurentExpr {
    match tag {
        CaseTag::Alternating => LaurentExpr::q_pow(-2, 0),
        CaseTag::Hermitian => -LaurentExpr::q_pow(-1, 0),
        CaseTag::Symmetric => unreachable!("no closed form"),
    }
}

/// The product prefactor in front of `P_lambda`.
pub fn prefactor(tag: CaseTag, n: usize) -> Result<RatFunc> {
    SphericalCase::new(tag, n).require_closed_form()?;
    let q = LaurentExpr::q_pow(1, n);
    let qi = LaurentExpr::q_pow(-1, n);
    let mut num = LaurentExpr::one(n);
    let mut den = LaurentExpr::one(n);
    for i in 1..=n {
        for j in i + 1..=n {
            let xi = LaurentExpr::x(i, n);
            let xj = LaurentExpr::x(j, n);
            // Each factor multiplied through by x_j.
            num = &num * &(&xj - &(&qi * &xi));
            den = &den
                * &match tag {
                    CaseTag::Alternating => &xj - &(&q * &xi),
                    _ => &xj + &xi,
                };
        }
    }
    Ok(RatFunc::new(num, den)?)
}

/// `prefactor * P_lambda(x; t_case)`, without the scalar `c_lambda`.
pub fn spherical_closed_form(tag: CaseTag, lambda: &Partition) -> Result<RatFunc> {
    let case = SphericalCase::new(tag, lambda.len());
    let t = case.t()?;
    let p = hl_polynomial(lambda, case.n, &t)?;
    Ok(&prefactor(tag, case.n)? * &RatFunc::from_laurent(p))
}

/// `Psi_lambda = omega(pi^lambda)/omega(pi^0)` with the scalar ratio kept
/// symbolic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiNormalized {
    pub scalar: String,
    pub polynomial: LaurentExpr,
}

pub fn psi_normalized(tag: CaseTag, lambda: &Partition) -> Result<PsiNormalized> {
    let n = lambda.len();
    let omega = spherical_closed_form(tag, lambda)?;
    let omega0 = spherical_closed_form(tag, &Partition::zero(n))?;
    let ratio = omega.checked_div(&omega0)?;
    let polynomial = ratio
        .as_laurent()
        .ok_or_else(|| Error::MismatchFailure("prefactor did not cancel".into()))?;
    let expected = hl_polynomial(lambda, n, &case_parameter(tag))?;
    if polynomial != expected {
        return Err(Error::MismatchFailure("quotient differs from P_lambda".into()));
    }
    Ok(PsiNormalized {
        scalar: format!("c{lambda}/c0"),
        polynomial,
    })
}

/// The factor `b_sigma` with `omega(z) = b_sigma(z) * (sigma . omega)(z)`.
pub fn feq_factor(tag: CaseTag, sigma: &WeylElement) -> Result<RatFunc> {
    let n = sigma.rank();
    match tag {
        CaseTag::Hermitian => Ok(hermitian_printed_factor(sigma)),
        CaseTag::Alternating => {
            let pre = prefactor(tag, n)?;
            Ok(pre.checked_div(&weyl_act(sigma, &pre))?)
        }
        CaseTag::Symmetric => Err(Error::NoClosedForm("symmetric")),
    }
}

/// `prod_{i<j, sigma(i)>sigma(j)} (x_{sigma(i)} - q^-1 x_{sigma(j)}) / (x_{sigma(j)} - q^-1 x_{sigma(i)})`.
pub fn hermitian_printed_factor(sigma: &WeylElement) -> RatFunc {
    let n = sigma.rank();
    let qi = LaurentExpr::q_pow(-1, n);
    let mut num = LaurentExpr::one(n);
    let mut den = LaurentExpr::one(n);
    for (i, j) in sigma.inversion_pairs() {
        let a = LaurentExpr::x(sigma.image(i) + 1, n);
        let b = LaurentExpr::x(sigma.image(j) + 1, n);
        num = &num * &(&a - &(&qi * &b));
        den = &den * &(&b - &(&qi * &a));
    }
    RatFunc::new(num, den).expect("nonzero denominator")
}

/// Checks `b_{sigma tau} = b_sigma * sigma.(b_tau)`, the composition rule
/// for the left action used throughout.
pub fn cocycle_holds(tag: CaseTag, sigma: &WeylElement, tau: &WeylElement) -> Result<bool> {
    let lhs = feq_factor(tag, &sigma.compose(tau))?;
    let rhs = &feq_factor(tag, sigma)? * &weyl_act(sigma, &feq_factor(tag, tau)?);
    Ok(lhs == rhs)
}

/// Checks `omega = b_sigma * sigma.omega` for the closed form at `lambda`.
pub fn functional_equation_holds(tag: CaseTag, lambda: &Partition, sigma: &WeylElement) -> Result<bool> {
    let omega = spherical_closed_form(tag, lambda)?;
    let rhs = &feq_factor(tag, sigma)? * &weyl_act(sigma, &omega);
    Ok(omega == rhs)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reconstruction {
    pub sum: RatFunc,
    pub predicted: RatFunc,
}

impl Reconstruction {
    pub fn holds(&self) -> bool {
        self.sum == self.predicted
    }
}

/// `sum_sigma sigma.(gamma * x^lambda)` next to its predicted value
/// `(w_lambda(t)/(1-t)^n) * P_lambda(x; t)`.
pub fn casselman_reconstruct(tag: CaseTag, lambda: &Partition) -> Result<Reconstruction> {
    let case = SphericalCase::new(tag, lambda.len());
    let t = case.t()?;
    reconstruct_with(lambda, &t)
}

/// The reconstruction sum for an arbitrary parameter `t` in the base variable.
pub fn reconstruct_with(lambda: &Partition, t: &LaurentExpr) -> Result<Reconstruction> {
    let n = lambda.len();
    let mut e = vec![0];
    e.extend_from_slice(lambda.parts());
    let xl = RatFunc::from_laurent(LaurentExpr::monomial(e, Rational::from_integer(1.into())));
    let base = &gamma_product(n, t) * &xl;
    let sum = WeylElement::all(n)
        .par_iter()
        .map(|s| weyl_act(s, &base))
        .reduce(|| RatFunc::zero(n), |a, b| &a + &b);
    let p = hl_polynomial(lambda, n, t)?;
    let predicted = RatFunc::from_laurent(&v_lambda(lambda, t).widen(n) * &p);
    Ok(Reconstruction { sum, predicted })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    Unset,
    FittedFromOracle { p: u64, levels: Vec<u32> },
}

/// The scalar `c_lambda`, known only numerically at `q = p` after a fit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizationConstant {
    pub case: CaseTag,
    pub lambda: Partition,
    pub value: Option<Rational>,
    pub provenance: Provenance,
}

impl NormalizationConstant {
    pub fn unset(case: CaseTag, lambda: Partition) -> Self {
        NormalizationConstant {
            case,
            lambda,
            value: None,
            provenance: Provenance::Unset,
        }
    }

    /// Records a fit at level `m`; a second fit must reproduce the value.
    pub fn record_fit(&mut self, p: u64, m: u32, value: Rational) -> Result<()> {
        match (&self.value, &mut self.provenance) {
            (None, _) => {
                self.value = Some(value);
                self.provenance = Provenance::FittedFromOracle { p, levels: vec![m] };
                Ok(())
            }
            (Some(v), Provenance::FittedFromOracle { p: p0, levels }) if *p0 == p => {
                if *v != value {
                    return Err(Error::MismatchFailure(format!(
                        "c{} refit at level {m} gives {value}, earlier {v}",
                        self.lambda
                    )));
                }
                if !levels.contains(&m) {
                    levels.push(m);
                    levels.sort_unstable();
                }
                Ok(())
            }
            _ => Err(Error::MismatchFailure("fits at different primes cannot be merged".into())),
        }
    }
}

/// The value `c_0 = q(q-1)/(q^2+1)` that the hermitian rank-2 fit produces;
/// kept for documentation and tests of the fitting pipeline.
pub fn hermitian_rank2_c0(q: i64) -> Rational {
    rat(q * (q - 1), q * q + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Var;

    fn lam(p: &[i32]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    fn x(i: usize, n: usize) -> RatFunc {
        RatFunc::var(Var::X(i), n)
    }

    fn q(n: usize) -> RatFunc {
        RatFunc::var(Var::Q, n)
    }

    #[test]
    fn prefactor_examples() {
        assert!(prefactor(CaseTag::Hermitian, 1).unwrap().is_one());
        let one = RatFunc::one(2);
        let r = x(1, 2).checked_div(&x(2, 2)).unwrap();
        let qi = q(2).inv().unwrap();
        let herm = (&one - &(&qi * &r)).checked_div(&(&one + &r)).unwrap();
        assert_eq!(prefactor(CaseTag::Hermitian, 2).unwrap(), herm);
        let alt = (&one - &(&qi * &r)).checked_div(&(&one - &(&q(2) * &r))).unwrap();
        assert_eq!(prefactor(CaseTag::Alternating, 2).unwrap(), alt);
        assert!(matches!(prefactor(CaseTag::Symmetric, 2), Err(Error::NoClosedForm(_))));
    }

    #[test]
    fn closed_form_examples() {
        let w = spherical_closed_form(CaseTag::Hermitian, &lam(&[3])).unwrap();
        assert_eq!(w, RatFunc::from_laurent(LaurentExpr::x(1, 1).pow(3)));
        let w0 = spherical_closed_form(CaseTag::Hermitian, &lam(&[0, 0])).unwrap();
        assert_eq!(w0, prefactor(CaseTag::Hermitian, 2).unwrap());
        let w10 = spherical_closed_form(CaseTag::Alternating, &lam(&[1, 0])).unwrap();
        assert_eq!(w10, &prefactor(CaseTag::Alternating, 2).unwrap() * &(&x(1, 2) + &x(2, 2)));
    }

    #[test]
    fn psi_examples() {
        let z = psi_normalized(CaseTag::Hermitian, &lam(&[0, 0])).unwrap();
        assert!(z.polynomial.is_one());
        let p = psi_normalized(CaseTag::Hermitian, &lam(&[1, 1])).unwrap();
        assert_eq!(p.polynomial, &LaurentExpr::x(1, 2) * &LaurentExpr::x(2, 2));
        assert_eq!(p.scalar, "c(1,1)/c0");
    }

    #[test]
    fn feq_examples() {
        let s = WeylElement::transposition(2, 0, 1);
        assert!(feq_factor(CaseTag::Hermitian, &WeylElement::identity(2)).unwrap().is_one());
        let qi = q(2).inv().unwrap();
        let expected = (&x(2, 2) - &(&qi * &x(1, 2)))
            .checked_div(&(&x(1, 2) - &(&qi * &x(2, 2))))
            .unwrap();
        assert_eq!(feq_factor(CaseTag::Hermitian, &s).unwrap(), expected);
        let pre = prefactor(CaseTag::Alternating, 2).unwrap();
        assert_eq!(
            feq_factor(CaseTag::Alternating, &s).unwrap(),
            pre.checked_div(&weyl_act(&s, &pre)).unwrap()
        );
    }

    #[test]
    fn reconstruction_examples() {
        for tag in [CaseTag::Alternating, CaseTag::Hermitian] {
            let r = casselman_reconstruct(tag, &lam(&[2])).unwrap();
            assert_eq!(r.sum, RatFunc::from_laurent(LaurentExpr::x(1, 1).pow(2)));
            assert!(r.holds());
            let r = casselman_reconstruct(tag, &lam(&[1, 0])).unwrap();
            assert_eq!(r.sum, &x(1, 2) + &x(2, 2));
        }
        let t = crate::weyl::t_symbol();
        let r = reconstruct_with(&lam(&[0, 0]), &t).unwrap();
        assert_eq!(r.sum, &RatFunc::one(2) + &q(2));
    }

    #[test]
    fn normalization_refit() {
        let mut c = NormalizationConstant::unset(CaseTag::Hermitian, lam(&[0, 0]));
        c.record_fit(3, 2, rat(3, 5)).unwrap();
        c.record_fit(3, 3, rat(3, 5)).unwrap();
        assert_eq!(c.provenance, Provenance::FittedFromOracle { p: 3, levels: vec![2, 3] });
        assert!(c.record_fit(3, 4, rat(1, 2)).is_err());
        assert_eq!(hermitian_rank2_c0(3), rat(3, 5));
    }
}
