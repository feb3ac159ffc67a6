//! Multivariate polynomial gcd and exact division.
//!
//! The gcd is computed recursively: monomial factors are split off first,
//! variables occurring in only one argument are eliminated by taking contents,
//! and the rest goes to a heuristic evaluation/interpolation gcd whose answer
//! is confirmed by trial division. When the heuristic gives up, a primitive
//! pseudo-remainder sequence in one main variable finishes the job. Results are normalized to
//! integer-primitive polynomials with a positive lex-leading coefficient.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::laurent::{Exponents, LaurentExpr, Rational};

/// Greatest common divisor of two polynomials (no negative exponents).
///
/// `gcd(0, 0)` is `0`. Otherwise the result is integer-primitive with a
/// positive leading coefficient, including the largest common monomial.
pub fn poly_gcd(a: &LaurentExpr, b: &LaurentExpr) -> LaurentExpr {
    assert_eq!(a.nvars(), b.nvars(), "nvars mismatch in gcd");
    debug_assert!(a.is_polynomial() && b.is_polynomial());
    if a.is_zero() {
        return integer_primitive(b);
    }
    if b.is_zero() {
        return integer_primitive(a);
    }
    let ma = a.min_exponents();
    let mb = b.min_exponents();
    let common: Exponents = ma.iter().zip(&mb).map(|(x, y)| *x.min(y)).collect();
    let a1 = a.shift(&negated(&ma));
    let b1 = b.shift(&negated(&mb));
    gcd_stripped(&a1, &b1).shift(&common)
}

/// Exact quotient `a / b` in the Laurent ring, or `None` when `b` does not
/// divide `a`.
pub fn exact_div(a: &LaurentExpr, b: &LaurentExpr) -> Option<LaurentExpr> {
    assert_eq!(a.nvars(), b.nvars(), "nvars mismatch in division");
    if b.is_zero() {
        return None;
    }
    if a.is_zero() {
        return Some(LaurentExpr::zero(a.nvars()));
    }
    if let Some((e, c)) = b.as_monomial() {
        return Some(a.shift(&negated(e)).scale(&c.recip()));
    }
    let ma = a.min_exponents();
    let mb = b.min_exponents();
    let a1 = a.shift(&negated(&ma));
    let b1 = b.shift(&negated(&mb));
    let q = poly_div_exact(&a1, &b1)?;
    let offset: Exponents = ma.iter().zip(&mb).map(|(x, y)| x - y).collect();
    Some(q.shift(&offset))
}

fn negated(e: &[i32]) -> Exponents {
    e.iter().map(|a| -a).collect()
}

/// Division with remainder by lex leading terms; succeeds only when the
/// remainder is zero. Both arguments must be polynomials.
pub(crate) fn poly_div_exact(a: &LaurentExpr, b: &LaurentExpr) -> Option<LaurentExpr> {
    let nvars = a.nvars();
    let (lb_e, lb_c) = b.leading_term()?;
    let lb_e = lb_e.clone();
    let lb_inv = lb_c.recip();
    // Every term of the quotient must be bounded by a's degrees in each slot.
    let amax = a.max_exponents();
    let mut rem = a.clone();
    let mut quot = LaurentExpr::zero(nvars);
    while let Some((re, rc)) = rem.leading_term() {
        let diff: Exponents = re.iter().zip(&lb_e).map(|(x, y)| x - y).collect();
        if diff.iter().zip(&amax).any(|(&d, &m)| d < 0 || d > m) {
            return None;
        }
        let c = rc * &lb_inv;
        let t = LaurentExpr::monomial(diff, c);
        rem = &rem - &(&t * b);
        quot = &quot + &t;
    }
    Some(quot)
}

/// Rational content: positive `g` with `p / g` integral and primitive.
fn rational_content(p: &LaurentExpr) -> Rational {
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for (_, c) in p.terms() {
        num = num.gcd(c.numer());
        den = den.lcm(c.denom());
    }
    if num.is_zero() {
        Rational::one()
    } else {
        Rational::new(num, den)
    }
}

/// Scales `p` to have coprime integer coefficients and a positive lex-leading
/// coefficient.
pub(crate) fn integer_primitive(p: &LaurentExpr) -> LaurentExpr {
    let Some((_, lc)) = p.leading_term() else {
        return p.clone();
    };
    let mut c = rational_content(p);
    if lc.is_negative() {
        c = -c;
    }
    if c.is_one() {
        p.clone()
    } else {
        p.scale(&c.recip())
    }
}

fn degree_in(p: &LaurentExpr, slot: usize) -> i32 {
    p.terms().map(|(e, _)| e[slot]).max().unwrap_or(0)
}

/// Coefficients of `p` as a polynomial in the variable at `slot`.
fn coeffs_in(p: &LaurentExpr, slot: usize) -> BTreeMap<i32, LaurentExpr> {
    let mut out: BTreeMap<i32, Vec<(Exponents, Rational)>> = BTreeMap::new();
    for (e, c) in p.terms() {
        let mut e2 = e.clone();
        e2[slot] = 0;
        out.entry(e[slot]).or_default().push((e2, c.clone()));
    }
    out.into_iter()
        .map(|(k, ts)| (k, LaurentExpr::from_terms(p.nvars(), ts).expect("same shape")))
        .collect()
}

fn content_in(p: &LaurentExpr, slot: usize) -> LaurentExpr {
    let mut g = LaurentExpr::zero(p.nvars());
    for c in coeffs_in(p, slot).values() {
        g = poly_gcd(&g, c);
        if g.is_constant() {
            return LaurentExpr::one(p.nvars());
        }
    }
    g
}

fn primitive_in(p: &LaurentExpr, slot: usize) -> LaurentExpr {
    let c = content_in(p, slot);
    let q = if c.is_one() {
        p.clone()
    } else {
        exact_div(p, &c).expect("content divides")
    };
    integer_primitive(&q)
}

/// gcd of nonzero polynomials neither of which has a monomial factor.
fn gcd_stripped(a: &LaurentExpr, b: &LaurentExpr) -> LaurentExpr {
    let nvars = a.nvars();
    if a.is_constant() || b.is_constant() {
        return LaurentExpr::one(nvars);
    }
    let a = integer_primitive(a);
    let b = integer_primitive(b);
    if a == b {
        return a;
    }
    let (small, large) = if a.len() <= b.len() { (&a, &b) } else { (&b, &a) };
    if poly_div_exact(large, small).is_some() {
        return small.clone();
    }

    let ua = a.used_slots();
    let ub = b.used_slots();
    for slot in 0..=nvars {
        if ua[slot] != ub[slot] {
            let (with, without) = if ua[slot] { (&a, &b) } else { (&b, &a) };
            let mut g = without.clone();
            for c in coeffs_in(with, slot).values() {
                g = poly_gcd(&g, c);
                if g.is_constant() {
                    return LaurentExpr::one(nvars);
                }
            }
            return g;
        }
    }

    if let Some(g) = heuristic_gcd(&a, &b) {
        return integer_primitive(&g);
    }

    let main = (0..=nvars)
        .filter(|&s| ua[s])
        .min_by_key(|&s| (degree_in(&a, s).max(degree_in(&b, s)), s))
        .expect("non-constant polynomials use some variable");

    let ca = content_in(&a, main);
    let cb = content_in(&b, main);
    let pa = if ca.is_one() { a.clone() } else { exact_div(&a, &ca).expect("content divides") };
    let pb = if cb.is_one() { b.clone() } else { exact_div(&b, &cb).expect("content divides") };
    let c = poly_gcd(&ca, &cb);
    let g = primitive_prs(pa, pb, main);
    integer_primitive(&(&c * &g))
}

/// Largest bit size of an evaluation point before giving up on the heuristic.
const HEURISTIC_BIT_LIMIT: u64 = 40_000;

fn max_norm(p: &LaurentExpr) -> BigInt {
    p.terms().map(|(_, c)| c.numer().abs()).max().unwrap_or_else(BigInt::zero)
}

fn integer_gcd_of_coeffs(p: &LaurentExpr) -> BigInt {
    p.terms().fold(BigInt::zero(), |g, (_, c)| g.gcd(c.numer()))
}

/// Evaluates the variable at `slot` at the integer `xi`.
fn eval_at(p: &LaurentExpr, slot: usize, xi: &BigInt) -> LaurentExpr {
    let mut powers: BTreeMap<i32, BigInt> = BTreeMap::new();
    let terms = p.terms().map(|(e, c)| {
        let k = e[slot];
        let pw = powers.entry(k).or_insert_with(|| num_traits::pow(xi.clone(), k as usize)).clone();
        let mut e2 = e.clone();
        e2[slot] = 0;
        (e2, c * Rational::from_integer(pw))
    });
    LaurentExpr::from_terms(p.nvars(), terms.collect::<Vec<_>>()).expect("same shape")
}

/// Symmetric residue of an integer modulo `xi`.
fn smod(c: &BigInt, xi: &BigInt) -> BigInt {
    let r = c.mod_floor(xi);
    if &r + &r > *xi {
        r - xi
    } else {
        r
    }
}

/// Rebuilds a polynomial from its image at `slot = xi` by xi-adic expansion.
fn xi_adic(gamma: &LaurentExpr, slot: usize, xi: &BigInt) -> LaurentExpr {
    let nvars = gamma.nvars();
    let mut rest = gamma.clone();
    let mut out = LaurentExpr::zero(nvars);
    let mut i = 0;
    let xr = Rational::from_integer(xi.clone());
    while !rest.is_zero() {
        let digit: Vec<(Exponents, Rational)> = rest
            .terms()
            .map(|(e, c)| (e.clone(), Rational::from_integer(smod(c.numer(), xi))))
            .collect();
        let digit = LaurentExpr::from_terms(nvars, digit).expect("same shape");
        rest = (&rest - &digit).scale(&xr.recip());
        let mut shift = vec![0; nvars + 1];
        shift[slot] = i;
        out = &out + &digit.shift(&shift);
        i += 1;
    }
    out
}

/// Heuristic gcd by evaluation and xi-adic reconstruction. Any returned
/// value has been confirmed by trial division; `None` means the heuristic
/// gave up. Both arguments need integer coefficients.
fn heuristic_gcd(a: &LaurentExpr, b: &LaurentExpr) -> Option<LaurentExpr> {
    let nvars = a.nvars();
    if a.is_zero() || b.is_zero() {
        return None;
    }
    let ca = integer_gcd_of_coeffs(a);
    let cb = integer_gcd_of_coeffs(b);
    let g0 = Rational::from_integer(ca.gcd(&cb));
    if a.is_constant() || b.is_constant() {
        return Some(LaurentExpr::constant(g0, nvars));
    }
    let a = a.scale(&Rational::from_integer(ca).recip());
    let b = b.scale(&Rational::from_integer(cb).recip());
    let ua = a.used_slots();
    let ub = b.used_slots();
    let slot = (0..=nvars)
        .filter(|&s| ua[s] || ub[s])
        .min_by_key(|&s| (degree_in(&a, s).max(degree_in(&b, s)), s))?;
    let deg = degree_in(&a, slot).max(degree_in(&b, slot)).max(1) as u64;
    let mut xi: BigInt = max_norm(&a).min(max_norm(&b)) * 2 + 29;
    for _ in 0..6 {
        if xi.bits() * deg > HEURISTIC_BIT_LIMIT {
            return None;
        }
        let ea = eval_at(&a, slot, &xi);
        let eb = eval_at(&b, slot, &xi);
        if !ea.is_zero() && !eb.is_zero() {
            let gamma = heuristic_gcd(&ea, &eb)?;
            let g = integer_primitive(&xi_adic(&gamma, slot, &xi));
            if !g.is_zero() && poly_div_exact(&a, &g).is_some() && poly_div_exact(&b, &g).is_some() {
                return Some(g.scale(&g0));
            }
        }
        xi = xi * 73794 / 27011;
    }
    None
}

/// gcd of two polynomials that are primitive in the variable at `slot`.
fn primitive_prs(a: LaurentExpr, b: LaurentExpr, slot: usize) -> LaurentExpr {
    let nvars = a.nvars();
    let (mut a, mut b) = if degree_in(&a, slot) >= degree_in(&b, slot) { (a, b) } else { (b, a) };
    loop {
        if degree_in(&b, slot) == 0 {
            return LaurentExpr::one(nvars);
        }
        let r = pseudo_rem(&a, &b, slot);
        if r.is_zero() {
            return primitive_in(&b, slot);
        }
        a = b;
        b = primitive_in(&r, slot);
    }
}

fn pseudo_rem(a: &LaurentExpr, b: &LaurentExpr, slot: usize) -> LaurentExpr {
    let db = degree_in(b, slot);
    let bc = coeffs_in(b, slot);
    let lb = bc.get(&db).expect("leading coefficient").clone();
    let mut r = a.clone();
    while !r.is_zero() {
        let dr = degree_in(&r, slot);
        if dr < db {
            break;
        }
        let lr = coeffs_in(&r, slot).remove(&dr).expect("leading coefficient");
        let mut shift = vec![0; r.nvars() + 1];
        shift[slot] = dr - db;
        r = &(&r * &lb) - &(&lr * &b.shift(&shift));
        r = integer_primitive(&r);
    }
    r
}
