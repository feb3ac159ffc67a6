use proptest::prelude::*;

use padic_spherical::algebra::serial::{parse_rational, rational_string};
use padic_spherical::algebra::{int, rat, series_expand, LaurentExpr, RatFunc, Rational, Var};
use padic_spherical::hall_littlewood::{hl_polynomial, monomial_sym, Partition};
use padic_spherical::weyl::{t_symbol, weyl_act, WeylElement};

const NV: usize = 2;

fn laurent(lo: i32) -> impl Strategy<Value = LaurentExpr> {
    prop::collection::vec((prop::collection::vec(lo..=2i32, NV + 1), -3i64..=3), 0..4).prop_map(|terms| {
        LaurentExpr::from_terms(NV, terms.into_iter().map(|(e, c)| (e, int(c)))).unwrap()
    })
}

fn nonzero_laurent() -> impl Strategy<Value = LaurentExpr> {
    laurent(-1).prop_filter("nonzero", |e| !e.is_zero())
}

fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (laurent(-1), nonzero_laurent()).prop_map(|(a, b)| RatFunc::new(a, b).unwrap())
}

fn permutation(n: usize) -> impl Strategy<Value = WeylElement> {
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|p| WeylElement::new(p).unwrap())
}

fn weight(n: usize) -> impl Strategy<Value = Partition> {
    prop::collection::vec(-1i32..=3, n).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(v).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn laurent_ring_axioms(a in laurent(-2), b in laurent(-2), c in laurent(-2)) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &LaurentExpr::one(NV), a.clone());
    }

    #[test]
    fn ratfunc_field_axioms(a in ratfunc(), b in ratfunc(), c in ratfunc()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn canonical_form_is_idempotent(a in ratfunc()) {
        prop_assert!(a.is_canonical());
        let again = RatFunc::new(a.num().clone(), a.den().clone()).unwrap();
        prop_assert_eq!(&again, &a);
        let scaled = RatFunc::new(a.num().scale(&rat(-7, 3)), a.den().scale(&rat(-7, 3))).unwrap();
        prop_assert_eq!(scaled, a);
    }

    #[test]
    fn substitution_is_a_homomorphism(a in ratfunc(), b in ratfunc(), v in ratfunc()) {
        let var = Var::X(1);
        prop_assume!(a.subs(var, &v).is_ok() && b.subs(var, &v).is_ok());
        let (sa, sb) = (a.subs(var, &v).unwrap(), b.subs(var, &v).unwrap());
        if let Ok(sum) = (&a + &b).subs(var, &v) {
            prop_assert_eq!(sum, &sa + &sb);
        }
        if let Ok(prod) = (&a * &b).subs(var, &v) {
            prop_assert_eq!(prod, &sa * &sb);
        }
    }

    #[test]
    fn series_of_product_is_truncated_convolution(
        a in laurent(0), b in laurent(0), c in -3i64..=3, d in -3i64..=3, order in 0i32..5,
    ) {
        let weights = [0, 1, 1];
        let one = LaurentExpr::one(NV);
        let den1 = &one - &LaurentExpr::x(1, NV).scale(&int(c));
        let den2 = &one - &(&LaurentExpr::x(1, NV) * &LaurentExpr::x(2, NV)).scale(&int(d));
        let f = RatFunc::new(a, den1).unwrap();
        let g = RatFunc::new(b, den2).unwrap();
        let sf = series_expand(&f, &weights, order).unwrap();
        let sg = series_expand(&g, &weights, order).unwrap();
        let sfg = series_expand(&(&f * &g), &weights, order).unwrap();
        let conv = LaurentExpr::from_terms(
            NV,
            (&sf.coeffs * &sg.coeffs)
                .terms()
                .filter(|(e, _)| e[1] + e[2] <= order)
                .map(|(e, c)| (e.clone(), c.clone())),
        )
        .unwrap();
        prop_assert_eq!(sfg.coeffs, conv);
    }

    #[test]
    fn rational_strings_round_trip(n in -1000i64..1000, d in 1i64..1000) {
        let r: Rational = rat(n, d);
        let s = rational_string(&r);
        prop_assert!(s.contains('/'));
        prop_assert_eq!(parse_rational(&s).unwrap(), r);
    }

    #[test]
    fn hall_littlewood_is_symmetric(l in (1usize..=3).prop_flat_map(weight)) {
        let n = l.len();
        let p = hl_polynomial(&l, n, &t_symbol()).unwrap();
        prop_assert!(p.is_symmetric());
        for s in WeylElement::all(n) {
            prop_assert_eq!(p.permute_x(s.perm()), p.clone());
        }
    }

    #[test]
    fn hall_littlewood_at_t_one_is_monomial(l in (1usize..=3).prop_flat_map(weight)) {
        let n = l.len();
        let p = hl_polynomial(&l, n, &LaurentExpr::one(0)).unwrap();
        prop_assert_eq!(p, monomial_sym(&l, n).unwrap());
    }

    #[test]
    fn weyl_action_composes(
        (s, t) in (1usize..=4).prop_flat_map(|n| (permutation(n), permutation(n))),
        seed in laurent(-1),
    ) {
        let n = s.rank();
        // spread the random expression over n variables
        let f = RatFunc::from_laurent(seed.widen(n.max(NV)).narrow(n).unwrap_or_else(|| LaurentExpr::x(1, n)))
            .checked_div(&RatFunc::from_laurent(&LaurentExpr::one(n) - &LaurentExpr::x(n, n).scale(&rat(1, 2))))
            .unwrap();
        prop_assert_eq!(weyl_act(&s.compose(&t), &f), weyl_act(&s, &weyl_act(&t, &f)));
        prop_assert_eq!(weyl_act(&s.inverse(), &weyl_act(&s, &f)), f);
    }
}
