//! Rational functions in canonical form.
//!
//! A [`RatFunc`] stores `num / den` with both sides polynomials (no negative
//! exponents), `gcd(num, den) = 1` including monomial factors, and the
//! lex-leading coefficient of `den` equal to one. With that normalization the
//! derived structural equality coincides with equality of rational functions.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::gcd::{exact_div, poly_gcd};
use super::laurent::{Exponents, LaurentExpr, Rational, Var};
use super::AlgebraError;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: LaurentExpr,
    den: LaurentExpr,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked arithmetic on canonical rational functions.
pub fn arith(a: &RatFunc, op: ArithOp, b: &RatFunc) -> Result<RatFunc, AlgebraError> {
    if a.nvars() != b.nvars() {
        return Err(AlgebraError::VarMismatch(a.nvars(), b.nvars()));
    }
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::Div => a.checked_div(b)?,
    })
}

/// Right-hand side of a substitution.
pub type Binding = RatFunc;

fn split_monomial(e: &LaurentExpr) -> (Exponents, LaurentExpr) {
    let m = e.min_exponents();
    let neg: Exponents = m.iter().map(|a| -a).collect();
    (m, e.shift(&neg))
}

impl RatFunc {
    /// Builds and canonicalizes `num / den`.
    pub fn new(num: LaurentExpr, den: LaurentExpr) -> Result<Self, AlgebraError> {
        num.same_vars(&den)?;
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let nvars = num.nvars();
        if num.is_zero() {
            return Ok(Self::zero(nvars));
        }
        let (mn, pn) = split_monomial(&num);
        let (md, pd) = split_monomial(&den);
        let mut up = vec![0; nvars + 1];
        let mut down = vec![0; nvars + 1];
        for i in 0..=nvars {
            let k = mn[i] - md[i];
            if k > 0 {
                up[i] = k;
            } else {
                down[i] = -k;
            }
        }
        let n = pn.shift(&up);
        let d = pd.shift(&down);
        Ok(Self::from_polys(n, d))
    }

    /// Canonicalizes `n / d` for polynomials `n`, `d` with `d != 0`.
    fn from_polys(n: LaurentExpr, d: LaurentExpr) -> Self {
        let g = poly_gcd(&n, &d);
        let (n, d) = if g.is_one() {
            (n, d)
        } else {
            (
                exact_div(&n, &g).expect("gcd divides numerator"),
                exact_div(&d, &g).expect("gcd divides denominator"),
            )
        };
        Self::fix_leading(n, d)
    }

    fn fix_leading(n: LaurentExpr, d: LaurentExpr) -> Self {
        let lc = d.leading_term().expect("nonzero denominator").1.clone();
        if lc.is_one() {
            RatFunc { num: n, den: d }
        } else {
            let inv = lc.recip();
            RatFunc {
                num: n.scale(&inv),
                den: d.scale(&inv),
            }
        }
    }

    pub fn zero(nvars: usize) -> Self {
        RatFunc {
            num: LaurentExpr::zero(nvars),
            den: LaurentExpr::one(nvars),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(Rational::one(), nvars)
    }

    pub fn constant(c: Rational, nvars: usize) -> Self {
        RatFunc {
            num: LaurentExpr::constant(c, nvars),
            den: LaurentExpr::one(nvars),
        }
    }

    pub fn from_int(c: i64, nvars: usize) -> Self {
        Self::constant(super::int(c), nvars)
    }

    /// A Laurent polynomial as a rational function; negative exponents move
    /// to the denominator, no gcd needed.
    pub fn from_laurent(e: LaurentExpr) -> Self {
        let nvars = e.nvars();
        if e.is_zero() {
            return Self::zero(nvars);
        }
        let m = e.min_exponents();
        let lift: Exponents = m.iter().map(|&a| (-a).max(0)).collect();
        let den = LaurentExpr::monomial(lift.clone(), Rational::one());
        RatFunc {
            num: e.shift(&lift),
            den,
        }
    }

    pub fn var(v: Var, nvars: usize) -> Self {
        Self::from_laurent(LaurentExpr::var(v, nvars))
    }

    pub fn num(&self) -> &LaurentExpr {
        &self.num
    }

    pub fn den(&self) -> &LaurentExpr {
        &self.den
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    /// The Laurent polynomial this equals, when the denominator is a monomial.
    pub fn as_laurent(&self) -> Option<LaurentExpr> {
        let (e, c) = self.den.as_monomial()?;
        let neg: Exponents = e.iter().map(|a| -a).collect();
        Some(self.num.shift(&neg).scale(&c.recip()))
    }

    /// Equality by cross-multiplication; independent of canonical form.
    pub fn cross_eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }

    /// Checks that the stored form satisfies every canonical-form invariant.
    pub fn is_canonical(&self) -> bool {
        self.num.is_polynomial()
            && self.den.is_polynomial()
            && !self.den.is_zero()
            && self.den.leading_term().is_some_and(|(_, c)| c.is_one())
            && if self.num.is_zero() {
                self.den.is_one()
            } else {
                poly_gcd(&self.num, &self.den).is_one()
            }
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, AlgebraError> {
        Ok(self * &other.inv()?)
    }

    pub fn inv(&self) -> Result<Self, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Self::fix_leading(self.den.clone(), self.num.clone()))
    }

    pub fn pow(&self, k: i32) -> Result<Self, AlgebraError> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let k = k.unsigned_abs();
        // Canonical forms stay canonical under powers: coprime stays coprime.
        Ok(RatFunc {
            num: base.num.pow(k),
            den: base.den.pow(k),
        }
        .releading())
    }

    fn releading(self) -> Self {
        Self::fix_leading(self.num, self.den)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars());
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Applies `x_i -> x_{perm[i-1]+1}` (0-based permutation of the x-slots).
    pub fn permute_x(&self, perm: &[usize]) -> Self {
        // Permuting variables preserves coprimality; only the leading term of
        // the denominator may change.
        Self::fix_leading(self.num.permute_x(perm), self.den.permute_x(perm))
    }

    pub fn widen(&self, nvars: usize) -> Self {
        RatFunc {
            num: self.num.widen(nvars),
            den: self.den.widen(nvars),
        }
    }

    pub fn narrow(&self, nvars: usize) -> Option<Self> {
        Some(RatFunc {
            num: self.num.narrow(nvars)?,
            den: self.den.narrow(nvars)?,
        })
    }

    /// Simultaneous substitution of variables by rational functions. Unbound
    /// variables are kept; bindings for variables that do not occur are
    /// ignored.
    pub fn substitute(&self, bindings: &[(Var, Binding)]) -> Result<Self, AlgebraError> {
        let nvars = self.nvars();
        let mut table: Vec<Option<&RatFunc>> = vec![None; nvars + 1];
        for (v, b) in bindings {
            if b.nvars() != nvars {
                return Err(AlgebraError::VarMismatch(nvars, b.nvars()));
            }
            let slot = v.slot();
            if slot > nvars {
                return Err(AlgebraError::Malformed(format!("variable {v:?} out of range")));
            }
            table[slot] = Some(b);
        }
        let mut cache = PowerCache::default();
        let (n, dn) = substitute_poly(&self.num, &table, &mut cache);
        let (d, dd) = substitute_poly(&self.den, &table, &mut cache);
        if d.is_zero() {
            return Err(AlgebraError::SpecializationPole);
        }
        // self = (n / prod D^dn) / (d / prod D^dd)
        let mut numer = n;
        let mut denom = d;
        for slot in 0..=nvars {
            let Some(b) = table[slot] else { continue };
            let k = dd[slot] - dn[slot];
            if k > 0 {
                numer = &numer * cache.den_pow(slot, b, k as u32);
            } else if k < 0 {
                denom = &denom * cache.den_pow(slot, b, (-k) as u32);
            }
        }
        RatFunc::new(numer, denom)
    }

    /// Substitutes a single variable.
    pub fn subs(&self, v: Var, value: &RatFunc) -> Result<Self, AlgebraError> {
        self.substitute(&[(v, value.clone())])
    }
}

#[derive(Default)]
struct PowerCache {
    num: HashMap<(usize, u32), LaurentExpr>,
    den: HashMap<(usize, u32), LaurentExpr>,
}

impl PowerCache {
    fn num_pow(&mut self, slot: usize, b: &RatFunc, k: u32) -> &LaurentExpr {
        self.num.entry((slot, k)).or_insert_with(|| b.num.pow(k))
    }

    fn den_pow(&mut self, slot: usize, b: &RatFunc, k: u32) -> &LaurentExpr {
        self.den.entry((slot, k)).or_insert_with(|| b.den.pow(k))
    }
}

/// Substitutes into a polynomial and clears the binding denominators: returns
/// `P(b) * prod_v D_v^{E_v}` together with the exponents `E_v`.
fn substitute_poly(
    p: &LaurentExpr,
    table: &[Option<&RatFunc>],
    cache: &mut PowerCache,
) -> (LaurentExpr, Vec<i32>) {
    let nvars = p.nvars();
    let maxe = p.max_exponents();
    let degs: Vec<i32> = (0..=nvars)
        .map(|s| if table[s].is_some() { maxe[s] } else { 0 })
        .collect();
    let mut out = LaurentExpr::zero(nvars);
    for (e, c) in p.terms() {
        let mut rest = e.clone();
        let mut term = LaurentExpr::one(nvars);
        for slot in 0..=nvars {
            let Some(b) = table[slot] else { continue };
            rest[slot] = 0;
            let k = e[slot] as u32;
            let free = (degs[slot] - e[slot]) as u32;
            if k > 0 {
                term = &term * cache.num_pow(slot, b, k);
            }
            if free > 0 {
                term = &term * cache.den_pow(slot, b, free);
            }
        }
        out = &out + &term.shift(&rest).scale(c);
    }
    (out, degs)
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({})", super::render::ratfunc_text(self, "q"))
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::render::ratfunc_text(self, "q"))
    }
}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;

    fn add(self, rhs: &'a RatFunc) -> RatFunc {
        assert_eq!(self.nvars(), rhs.nvars(), "nvars mismatch in add");
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let (a, b, c, d) = (&self.num, &self.den, &rhs.num, &rhs.den);
        if b == d {
            let n = a + c;
            if n.is_zero() {
                return RatFunc::zero(self.nvars());
            }
            if b.is_one() {
                return RatFunc { num: n, den: b.clone() };
            }
            return RatFunc::from_polys(n, b.clone());
        }
        let g = poly_gcd(b, d);
        if g.is_one() {
            let n = &(a * d) + &(c * b);
            if n.is_zero() {
                return RatFunc::zero(self.nvars());
            }
            return RatFunc::fix_leading(n, b * d);
        }
        let b1 = exact_div(b, &g).expect("gcd divides");
        let d1 = exact_div(d, &g).expect("gcd divides");
        let n = &(a * &d1) + &(c * &b1);
        if n.is_zero() {
            return RatFunc::zero(self.nvars());
        }
        let h = poly_gcd(&n, &g);
        let (n, g) = if h.is_one() {
            (n, g)
        } else {
            (
                exact_div(&n, &h).expect("gcd divides"),
                exact_div(&g, &h).expect("gcd divides"),
            )
        };
        RatFunc::fix_leading(n, &(&b1 * &d1) * &g)
    }
}

impl<'a> Sub<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &'a RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;

    fn mul(self, rhs: &'a RatFunc) -> RatFunc {
        assert_eq!(self.nvars(), rhs.nvars(), "nvars mismatch in mul");
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero(self.nvars());
        }
        let (a, b, c, d) = (&self.num, &self.den, &rhs.num, &rhs.den);
        let g1 = poly_gcd(a, d);
        let g2 = poly_gcd(c, b);
        let cut = |x: &LaurentExpr, g: &LaurentExpr| {
            if g.is_one() {
                x.clone()
            } else {
                exact_div(x, g).expect("gcd divides")
            }
        };
        let n = &cut(a, &g1) * &cut(c, &g2);
        let dd = &cut(b, &g2) * &cut(d, &g1);
        RatFunc::fix_leading(n, dd)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                (&self).$m(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl From<LaurentExpr> for RatFunc {
    fn from(e: LaurentExpr) -> Self {
        RatFunc::from_laurent(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::laurent::int;

    fn x(i: usize) -> RatFunc {
        RatFunc::var(Var::X(i), 2)
    }

    fn q() -> RatFunc {
        RatFunc::var(Var::Q, 2)
    }

    fn one() -> RatFunc {
        RatFunc::one(2)
    }

    #[test]
    fn difference_of_squares_cancels() {
        let a = &(&x(1) * &x(1)) - &(&x(2) * &x(2));
        let b = &x(1) - &x(2);
        let r = arith(&a, ArithOp::Div, &b).unwrap();
        assert_eq!(r, &x(1) + &x(2));
        assert!(r.is_canonical());
    }

    #[test]
    fn coprime_quotient_keeps_shape() {
        let qi = q().inv().unwrap();
        let n = &one() - &(&(&qi * &qi) * &x(1));
        let d = &one() - &(&qi * &x(1));
        let r = n.checked_div(&d).unwrap();
        assert!(r.is_canonical());
        // (q^2 - x1) / (q^2 - q x1) after clearing q^-2
        assert_eq!(r.den().leading_term().unwrap().1, &int(1));
        assert!(r.cross_eq(&n.checked_div(&d).unwrap()));
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(x(1).checked_div(&RatFunc::zero(2)), Err(AlgebraError::DivisionByZero));
    }

    #[test]
    fn mismatched_nvars() {
        let a = RatFunc::one(1);
        let b = RatFunc::one(2);
        assert_eq!(arith(&a, ArithOp::Add, &b), Err(AlgebraError::VarMismatch(1, 2)));
    }

    #[test]
    fn substitution_examples() {
        let s = (&x(1) + &x(2))
            .subs(Var::X(2), &(&q().inv().unwrap() * &x(1)))
            .unwrap();
        let expected = &x(1) * &(&one() + &q().inv().unwrap());
        assert_eq!(s, expected);

        let t = q();
        let e = (&one() - &(&t * &x(1))).checked_div(&(&one() - &x(1))).unwrap();
        assert!(e.subs(Var::Q, &one()).unwrap().is_one());

        let pole = one().checked_div(&(&one() - &x(1))).unwrap();
        assert_eq!(pole.subs(Var::X(1), &one()), Err(AlgebraError::SpecializationPole));
    }

    #[test]
    fn laurent_round_trip() {
        let e = LaurentExpr::monomial(vec![-1, 2, -3], int(5));
        let r = RatFunc::from_laurent(e.clone());
        assert!(r.is_canonical());
        assert_eq!(r.as_laurent().unwrap(), e);
    }

    #[test]
    fn henrici_addition_shared_factor() {
        // 1/(x1 (x1-x2)) + 1/(x2 (x1-x2)) = (x1+x2)/(x1 x2 (x1-x2))
        let d = &x(1) - &x(2);
        let a = one().checked_div(&(&x(1) * &d)).unwrap();
        let b = one().checked_div(&(&x(2) * &d)).unwrap();
        let s = &a + &b;
        assert!(s.is_canonical());
        let expected = (&x(1) + &x(2)).checked_div(&(&(&x(1) * &x(2)) * &d)).unwrap();
        assert_eq!(s, expected);
        // and a difference that cancels the shared factor
        let c = one().checked_div(&x(2)).unwrap() - one().checked_div(&x(1)).unwrap();
        let r = c.checked_div(&d).unwrap();
        assert_eq!(r, one().checked_div(&(&x(1) * &x(2))).unwrap());
    }
}
