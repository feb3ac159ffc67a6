//! JSON encoding: `{"nvars": n, "terms": [[[e0, e1, ...], "p/q"], ...]}` for
//! Laurent polynomials and `{"num": ..., "den": ...}` for rational functions.

use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::laurent::{Exponents, LaurentExpr, Rational};
use super::ratfunc::RatFunc;

pub fn rational_string(c: &Rational) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

pub fn parse_rational(s: &str) -> Result<Rational, String> {
    Rational::from_str(s.trim()).map_err(|e| format!("bad rational {s:?}: {e}"))
}

#[derive(Serialize, Deserialize)]
struct LaurentRepr {
    nvars: usize,
    terms: Vec<(Exponents, String)>,
}

impl Serialize for LaurentExpr {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        LaurentRepr {
            nvars: self.nvars(),
            terms: self.terms().map(|(e, c)| (e.clone(), rational_string(c))).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentExpr {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = LaurentRepr::deserialize(d)?;
        let mut terms = Vec::with_capacity(repr.terms.len());
        for (e, c) in repr.terms {
            terms.push((e, parse_rational(&c).map_err(D::Error::custom)?));
        }
        LaurentExpr::from_terms(repr.nvars, terms).map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct RatFuncRepr {
    num: LaurentExpr,
    den: LaurentExpr,
}

impl Serialize for RatFunc {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RatFuncRepr {
            num: self.num().clone(),
            den: self.den().clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatFunc {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = RatFuncRepr::deserialize(d)?;
        RatFunc::new(repr.num, repr.den).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::laurent::{rat, Var};

    #[test]
    fn json_round_trip() {
        let e = LaurentExpr::from_terms(2, vec![(vec![-1, 2, 0], rat(3, 4)), (vec![0, 0, 1], rat(-1, 1))]).unwrap();
        let text = serde_json::to_string(&e).unwrap();
        assert_eq!(text, r#"{"nvars":2,"terms":[[[-1,2,0],"3/4"],[[0,0,1],"-1/1"]]}"#);
        let back: LaurentExpr = serde_json::from_str(&text).unwrap();
        assert_eq!(back, e);

        let r = RatFunc::one(2).checked_div(&(&RatFunc::one(2) - &RatFunc::var(Var::X(1), 2))).unwrap();
        let back: RatFunc = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
        assert_eq!(back, r);
    }
}
