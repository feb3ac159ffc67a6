//! Stable text rendering.
//!
//! The flat form lists terms as `coef*q^a*x1^b*...` in descending lex order.
//! The grouped form collects terms by their x-monomial and prints the
//! coefficient (a Laurent polynomial in the base variable) in parentheses,
//! e.g. `x1^2 + x2^2 + (1-t)*x1*x2`.

use std::collections::BTreeMap;

use num_traits::{One, Signed};

use super::laurent::{Exponents, LaurentExpr, Rational};
use super::ratfunc::RatFunc;

/// Variable names used when rendering: the base variable and either the
/// default `x1, x2, ..` or an explicit list.
#[derive(Clone, Debug)]
pub struct Names<'a> {
    pub base: &'a str,
    pub vars: Option<&'a [&'a str]>,
}

impl<'a> Names<'a> {
    pub fn standard(base: &'a str) -> Self {
        Names { base, vars: None }
    }

    fn name(&self, slot: usize) -> String {
        match (slot, self.vars) {
            (0, _) => self.base.to_string(),
            (_, Some(v)) => v[slot - 1].to_string(),
            (_, None) => format!("x{slot}"),
        }
    }
}

fn monomial_text(e: &[i32], names: &Names) -> String {
    let mut parts = Vec::new();
    for (slot, &a) in e.iter().enumerate() {
        match a {
            0 => {}
            1 => parts.push(names.name(slot)),
            _ => parts.push(format!("{}^{}", names.name(slot), a)),
        }
    }
    parts.join("*")
}

fn rational_text(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// `|coef|*monomial` without sign.
fn unsigned_term(e: &[i32], c: &Rational, names: &Names) -> String {
    let m = monomial_text(e, names);
    let a = c.abs();
    if m.is_empty() {
        rational_text(&a)
    } else if a.is_one() {
        m
    } else {
        format!("{}*{}", rational_text(&a), m)
    }
}

fn join_signed<I>(items: I, sep_plus: &str, sep_minus: &str) -> String
where
    I: IntoIterator<Item = (bool, String)>,
{
    let mut out = String::new();
    for (i, (neg, body)) in items.into_iter().enumerate() {
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { sep_minus } else { sep_plus });
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Flat rendering, terms in descending lex order (base variable first).
pub fn to_text(e: &LaurentExpr, base: &str) -> String {
    to_text_named(e, &Names::standard(base))
}

pub fn to_text_named(e: &LaurentExpr, names: &Names) -> String {
    join_signed(
        e.terms().rev().map(|(x, c)| (c.is_negative(), unsigned_term(x, c, names))),
        " + ",
        " - ",
    )
}

/// Compact rendering of a polynomial in the base variable alone, ascending
/// powers, no spaces: `1-t`, `1+2*t+t^2`.
fn base_poly_text(terms: &[(i32, Rational)], base: &str) -> String {
    join_signed(
        terms.iter().map(|(k, c)| {
            let mut e = vec![0; 1];
            e[0] = *k;
            (c.is_negative(), unsigned_term(&e, c, &Names::standard(base)))
        }),
        "+",
        "-",
    )
}

fn group_key(x: &Exponents) -> (Vec<i32>, Exponents) {
    let mut sorted = x.clone();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    (sorted, x.clone())
}

/// Grouped rendering by x-monomial. Groups are ordered by their sorted
/// exponent partition (dominant first) and then by descending lex order.
pub fn to_grouped_text(e: &LaurentExpr, base: &str) -> String {
    let mut groups: BTreeMap<(Vec<i32>, Exponents), Vec<(i32, Rational)>> = BTreeMap::new();
    for (x, c) in e.terms() {
        let xs: Exponents = x[1..].to_vec();
        groups.entry(group_key(&xs)).or_default().push((x[0], c.clone()));
    }
    let names = Names::standard(base);
    let items = groups.into_iter().rev().map(|((_, xs), coeffs)| {
        let mut full = vec![0];
        full.extend_from_slice(&xs);
        let mono = monomial_text(&full, &names);
        if coeffs.len() == 1 {
            let (k, c) = &coeffs[0];
            full[0] = *k;
            (c.is_negative(), unsigned_term(&full, c, &names))
        } else {
            let inner = base_poly_text(&coeffs, base);
            if mono.is_empty() {
                (false, format!("({inner})"))
            } else {
                (false, format!("({inner})*{mono}"))
            }
        }
    });
    join_signed(items, " + ", " - ")
}

pub fn ratfunc_text(r: &RatFunc, base: &str) -> String {
    if r.den().is_one() {
        return to_text(r.num(), base);
    }
    format!("({})/({})", to_text(r.num(), base), to_text(r.den(), base))
}

pub fn ratfunc_text_named(r: &RatFunc, names: &Names) -> String {
    if r.den().is_one() {
        return to_text_named(r.num(), names);
    }
    format!("({})/({})", to_text_named(r.num(), names), to_text_named(r.den(), names))
}

pub fn ratfunc_grouped_text(r: &RatFunc, base: &str) -> String {
    if r.den().is_one() {
        return to_grouped_text(r.num(), base);
    }
    format!("({})/({})", to_grouped_text(r.num(), base), to_grouped_text(r.den(), base))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::laurent::{int, rat};

    #[test]
    fn flat_text() {
        let e = LaurentExpr::from_terms(
            2,
            vec![
                (vec![-1, 1, 0], int(1)),
                (vec![0, 0, 2], rat(-3, 2)),
                (vec![0, 0, 0], int(4)),
            ],
        )
        .unwrap();
        assert_eq!(to_text(&e, "q"), "-3/2*x2^2 + 4 + q^-1*x1");
        assert_eq!(to_text(&LaurentExpr::zero(2), "q"), "0");
    }

    #[test]
    fn grouped_hall_littlewood_shape() {
        let e = LaurentExpr::from_terms(
            2,
            vec![
                (vec![0, 2, 0], int(1)),
                (vec![0, 0, 2], int(1)),
                (vec![0, 1, 1], int(1)),
                (vec![1, 1, 1], int(-1)),
            ],
        )
        .unwrap();
        assert_eq!(to_grouped_text(&e, "t"), "x1^2 + x2^2 + (1-t)*x1*x2");
    }

    #[test]
    fn grouped_single_coefficients() {
        let e = LaurentExpr::from_terms(1, vec![(vec![2, 1], int(-1)), (vec![0, 0], int(3))]).unwrap();
        assert_eq!(to_grouped_text(&e, "t"), "-t^2*x1 + 3");
    }
}
