use padic_spherical::algebra::{LaurentExpr, RatFunc};
use padic_spherical::hall_littlewood::{hl_polynomial, monomial_expansion, Partition};
use padic_spherical::spherical::{
    casselman_reconstruct, cocycle_holds, feq_factor, functional_equation_holds, hermitian_printed_factor,
    prefactor,
};
use padic_spherical::weyl::{gamma_product, poincare_sum, t_symbol, weyl_act, WeylElement};
use padic_spherical::CaseTag;

#[test]
fn hermitian_prefactor_ratio_matches_printed_factor() {
    for n in 1..=4 {
        let pre = prefactor(CaseTag::Hermitian, n).unwrap();
        for s in WeylElement::all(n) {
            let ratio = pre.checked_div(&weyl_act(&s, &pre)).unwrap();
            assert_eq!(ratio, hermitian_printed_factor(&s), "sigma={s:?}");
        }
    }
}

#[test]
fn constant_term_identity() {
    let t = t_symbol();
    for n in 1..=4 {
        let g = gamma_product(n, &t);
        let sum = WeylElement::all(n)
            .iter()
            .map(|s| weyl_act(s, &g))
            .fold(RatFunc::zero(n), |a, b| &a + &b);
        assert_eq!(sum, RatFunc::from_laurent(poincare_sum(n, &t).widen(n)), "n={n}");
    }
}

#[test]
fn functional_equations_both_cases() {
    for tag in [CaseTag::Alternating, CaseTag::Hermitian] {
        for n in 1..=3 {
            for lambda in Partition::all_in_box(n, -2, 2) {
                for s in WeylElement::all(n) {
                    assert!(functional_equation_holds(tag, &lambda, &s).unwrap(), "{tag} {lambda:?} {s:?}");
                }
            }
        }
    }
}

#[test]
fn cocycle_over_s3() {
    for tag in [CaseTag::Alternating, CaseTag::Hermitian] {
        let all = WeylElement::all(3);
        for s in &all {
            for u in &all {
                assert!(cocycle_holds(tag, s, u).unwrap(), "{tag} {s:?} {u:?}");
            }
        }
        assert!(feq_factor(tag, &WeylElement::identity(3)).unwrap().is_one());
    }
}

#[test]
fn reconstruction_identity() {
    for tag in [CaseTag::Alternating, CaseTag::Hermitian] {
        for n in 1..=3 {
            for lambda in Partition::all_in_box(n, -2, 2) {
                let r = casselman_reconstruct(tag, &lambda).unwrap();
                assert!(r.holds(), "{tag} {lambda:?}");
            }
        }
    }
}

#[test]
fn hall_littlewood_structure() {
    let t = t_symbol();
    for n in 1..=4 {
        for lambda in Partition::all_in_box(n, -1, 3) {
            let p = hl_polynomial(&lambda, n, &t).unwrap();
            let expansion = monomial_expansion(&p).expect("symmetric");
            assert!(expansion[&lambda].is_one(), "{lambda:?}");
            for c in expansion.values() {
                assert!(c.is_polynomial());
                assert!(c.terms().all(|(_, a)| a.is_integer()));
            }
            let shifted = hl_polynomial(&lambda.translate(1), n, &t).unwrap();
            let mut e = vec![1; n + 1];
            e[0] = 0;
            assert_eq!(shifted, p.shift(&e));
        }
    }
    let _ = LaurentExpr::zero(0);
}
