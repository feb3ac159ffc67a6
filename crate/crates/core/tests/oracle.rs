use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use padic_spherical::hall_littlewood::Partition;
use padic_spherical::oracle::enumerate::brute_force_histogram;
use padic_spherical::oracle::{
    group_order, histogram_at_point, orbit_signature, valuation_histogram, CaseRealization, EnumOptions,
    IntMatrix, ValuationHistogram,
};
use padic_spherical::pv_zeta::{
    fourier_finite, gamma_extract, scaling_check, tate_gamma_expected, zeta_step, PVContext, StepFunction,
};
use padic_spherical::{CaseTag, Error};

fn lam(p: &[i32]) -> Partition {
    Partition::new(p.to_vec()).unwrap()
}

fn real(rows: Vec<Vec<i128>>) -> IntMatrix {
    IntMatrix { rows: rows.into_iter().map(|r| r.into_iter().map(|a| (a, 0)).collect()).collect() }
}

fn histogram() -> impl Strategy<Value = ValuationHistogram> {
    prop::collection::vec((prop::collection::vec(prop::option::of(0i32..3), 2), 1u128..50), 0..6).prop_map(|cells| {
        let mut h = ValuationHistogram::empty(3, 2, 3, 0);
        for (c, k) in cells {
            h.add(c, k);
        }
        h
    })
}

/// A 2x2 integer matrix invertible modulo `p`.
fn unimodular_mod(p: i128) -> impl Strategy<Value = [[i128; 2]; 2]> {
    prop::array::uniform2(prop::array::uniform2(-4i128..=4))
        .prop_filter("unit determinant", move |g| (g[0][0] * g[1][1] - g[0][1] * g[1][0]).rem_euclid(p) != 0)
}

fn embed(g: [[i128; 2]; 2]) -> IntMatrix {
    real(g.iter().map(|r| r.to_vec()).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn histogram_merge_is_commutative_and_associative(a in histogram(), b in histogram(), c in histogram()) {
        prop_assert_eq!(a.clone().merge(&b), b.clone().merge(&a));
        prop_assert_eq!(a.clone().merge(&b).merge(&c), a.clone().merge(&b.clone().merge(&c)));
        prop_assert_eq!(a.clone().merge(&b).mass(), a.mass() + b.mass());
    }

    #[test]
    fn symmetric_histogram_is_k_invariant(g in unimodular_mod(3), d in prop::array::uniform2(0u32..2)) {
        let case = CaseRealization::new(CaseTag::Symmetric, 2).unwrap();
        let cfg = case.config(3, 2).unwrap();
        let x = real(vec![vec![3i128.pow(d[0]), 0], vec![0, 3i128.pow(d[0] + d[1])]]);
        let gx = case.exact_act(&embed(g), &x, cfg.rho());
        let opts = EnumOptions::default();
        prop_assert_eq!(
            histogram_at_point(&case, &gx, &cfg, &opts).unwrap(),
            histogram_at_point(&case, &x, &cfg, &opts).unwrap()
        );
    }

    #[test]
    fn hermitian_histogram_is_k_invariant(g in unimodular_mod(3), t in 0u32..2) {
        let case = CaseRealization::new(CaseTag::Hermitian, 2).unwrap();
        let cfg = case.config(3, 1).unwrap();
        let x = real(vec![vec![1, 0], vec![0, 3i128.pow(t)]]);
        let gx = case.exact_act(&embed(g), &x, cfg.rho());
        let opts = EnumOptions::default();
        prop_assert_eq!(
            histogram_at_point(&case, &gx, &cfg, &opts).unwrap(),
            histogram_at_point(&case, &x, &cfg, &opts).unwrap()
        );
    }

    #[test]
    fn signature_is_invariant_under_lower_triangular(
        a in -8i128..=8, b in -8i128..=8, c in -8i128..=8,
        d1 in prop::sample::select(vec![1i128, 2, 4, 5, 7, 8]),
        d2 in prop::sample::select(vec![1i128, 2, 4, 5, 7, 8]),
        l in -6i128..=6,
    ) {
        let case = CaseRealization::new(CaseTag::Symmetric, 2).unwrap();
        let cfg = case.config(3, 3).unwrap();
        let x = real(vec![vec![a, b], vec![b, c]]);
        let s = match orbit_signature(&case, &x, &cfg) {
            Ok(s) => s,
            Err(Error::NotInOpenOrbit(_)) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        let bl = real(vec![vec![d1, 0], vec![l, d2]]);
        let bx = case.exact_act(&bl, &x, cfg.rho());
        prop_assert_eq!(orbit_signature(&case, &bx, &cfg).unwrap(), s);
    }

    #[test]
    fn zeta_gamma_is_independent_of_test_function(seed in any::<u64>(), window in 0u32..3, level in 1u32..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let phi = StepFunction::random(&mut rng, 3, window, level, 1).unwrap();
        match gamma_extract(&phi) {
            Ok(g) => prop_assert_eq!(g, tate_gamma_expected(3)),
            Err(Error::ZeroZeta) => {}
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
    }

    #[test]
    fn zeta_integral_is_linear(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let phi = StepFunction::random(&mut rng, 3, 1, 1, 1).unwrap();
        let psi = StepFunction::random(&mut rng, 3, 1, 1, 1).unwrap();
        let lhs = zeta_step(&phi.add(&psi).unwrap(), &[1]).unwrap();
        let rhs = &zeta_step(&phi, &[1]).unwrap() + &zeta_step(&psi, &[1]).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn fourier_twice_reflects(seed in any::<u64>(), window in 0u32..3, level in 0u32..3, dim in 1usize..=2) {
        prop_assume!(dim == 1 || window + level <= 2);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let phi = StepFunction::random(&mut rng, 3, window, level, dim).unwrap();
        let ff = fourier_finite(&fourier_finite(&phi).unwrap()).unwrap();
        if dim == 1 {
            prop_assert_eq!(ff, phi.reflect());
        } else {
            prop_assert_eq!(ff, phi);
        }
    }

    #[test]
    fn scaling_is_multiplicative(a1 in 0u32..3, a2 in 0u32..3, m in 0u32..3) {
        prop_assume!(a1 + a2 > 0);
        let ctx = PVContext::new(1, vec![a1, a2], 1).unwrap();
        let r = scaling_check(&ctx, 3, m).unwrap();
        prop_assert!(r.holds);
    }
}

#[test]
fn level_coherence_by_push_down() {
    let cases = [
        (CaseTag::Symmetric, lam(&[0, 0]), 3),
        (CaseTag::Symmetric, lam(&[1, 0]), 3),
        (CaseTag::Hermitian, lam(&[0, 0]), 3),
        (CaseTag::Hermitian, lam(&[1, 0]), 3),
        (CaseTag::Alternating, lam(&[1]), 5),
    ];
    for (tag, l, p) in cases {
        let case = CaseRealization::new(tag, l.len()).unwrap();
        let high = valuation_histogram(&case, &l, &case.config(p, 2).unwrap()).unwrap();
        let low = valuation_histogram(&case, &l, &case.config(p, 1).unwrap()).unwrap();
        let size = case.matrix_size();
        let pushed = high.push_down(1, &[l.len() - 1], group_order(size, low.residue_size, 1).unwrap()).unwrap();
        assert_eq!(pushed, low, "{tag} {l}");
    }
}

#[test]
fn fibered_enumeration_agrees_with_brute_force() {
    let case = CaseRealization::new(CaseTag::Symmetric, 2).unwrap();
    let cfg = case.config(3, 1).unwrap();
    let x = real(vec![vec![1, 1], vec![1, 2]]);
    let fibered = histogram_at_point(&case, &x, &cfg, &EnumOptions::default()).unwrap();
    assert_eq!(fibered, brute_force_histogram(&case, &x, &cfg).unwrap());
    assert!(fibered.is_complete());
}

#[test]
fn symmetric_residue_histogram() {
    let case = CaseRealization::new(CaseTag::Symmetric, 2).unwrap();
    let h = valuation_histogram(&case, &lam(&[0, 0]), &case.config(3, 1).unwrap()).unwrap();
    assert_eq!(h.counts.len(), 1);
    assert_eq!(h.counts[&vec![Some(0), Some(0)]], 48);
}
