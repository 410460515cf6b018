use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use swdom_core::law::{
    beta_of, dominated_set, f_eval, mulholland_g, r_star, sufficient_mulholland, ConditionTag, DominatedShape,
};
use swdom_core::order::check_order_properties;
use swdom_core::{dominates_closed_form, dominates_equiv_form, DominanceVerdict, ParamValue, R_CRIT};

fn p(v: f64) -> ParamValue {
    ParamValue::new(v).unwrap()
}

fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo * (hi / lo).powf(i as f64 / (n - 1) as f64)).collect()
}

/// 500 x 500 log grid over [1e-3, 1e3]^2 plus every pair involving 0 or ∞.
fn param_grid() -> Vec<(ParamValue, ParamValue)> {
    let mut axis: Vec<ParamValue> = log_grid(1e-3, 1e3, 500).into_iter().map(p).collect();
    let mut pairs: Vec<_> = axis.iter().flat_map(|&a| axis.iter().map(move |&b| (a, b))).collect();
    let specials = [ParamValue::ZERO, ParamValue::INFINITY];
    axis.extend(specials);
    for s in specials {
        for &a in &axis {
            pairs.push((s, a));
            pairs.push((a, s));
        }
    }
    pairs
}

#[test]
#[allow(clippy::excessive_precision)]
fn critical_constant_is_correctly_rounded() {
    // x = R_CRIT - 17 is exact; R_CRIT is correctly rounded iff 12√2 lies
    // strictly between the neighbouring midpoints, i.e. iff
    // (x - h)^2 < 288 < (x + h)^2 with h half an ulp of R_CRIT.
    let x = R_CRIT - 17.0;
    let h = (f64::from_bits(R_CRIT.to_bits() + 1) - R_CRIT) / 2.0;
    assert!((x - h).mul_add(x - h, -288.0) < 0.0);
    assert!((x + h).mul_add(x + h, -288.0) > 0.0);
    assert!((R_CRIT - 33.970_562_748_477_140_6).abs() <= f64::from_bits(R_CRIT.to_bits() + 1) - R_CRIT);
    assert!((f_eval(R_CRIT).unwrap() - R_CRIT).abs() <= 1e-12);
}

#[test]
fn f_examples() {
    assert!((f_eval(16.0).unwrap() - 121.0).abs() <= 1e-12);
    assert!((f_eval(121.0).unwrap() - 16.0).abs() <= 1e-12);
    assert!((f_eval(100.0).unwrap() - 841.0 / 49.0).abs() <= 1e-12);
    assert!(f_eval(9.0).is_err());
    assert!(f_eval(4.0).is_err());
    assert!(f_eval(9.0 + 1e-8).unwrap() > 1e10);
}

#[test]
fn r_star_reproduces_the_constant() {
    let r = r_star();
    assert!((r - 6.00914).abs() <= 1e-4);
    assert!(mulholland_g(r).abs() <= 1e-9);
    assert_eq!(mulholland_g(1.0), 0.0);
}

#[test]
fn closed_form_examples() {
    use ConditionTag::*;
    use DominanceVerdict::*;
    assert_eq!(dominates_closed_form(p(0.0), p(5.0)), Dominates(I));
    assert_eq!(dominates_closed_form(p(2.0), p(10.0)), Dominates(IV));
    assert_eq!(dominates_closed_form(p(16.0), p(121.0)), Dominates(V));
    assert_eq!(dominates_closed_form(p(20.0), p(100.0)), DoesNotDominate);
    assert_eq!(dominates_closed_form(p(5.0), p(3.0)), DoesNotDominate);
    assert_eq!(dominates_closed_form(p(0.0), p(0.0)), Dominates(I));
    assert_eq!(dominates_closed_form(p(7.0), ParamValue::INFINITY), Dominates(II));
    assert_eq!(dominates_closed_form(p(50.0), p(50.0)), Dominates(III));
    assert!(dominates_equiv_form(p(16.0), p(121.0)));
    assert!(dominates_equiv_form(p(0.5), p(7.0)));
    assert!(!dominates_equiv_form(p(20.0), p(100.0)));
}

#[test]
fn closed_and_square_root_forms_agree() {
    let mut disagreements = 0;
    for (l, m) in param_grid() {
        if dominates_closed_form(l, m).dominates() != dominates_equiv_form(l, m) {
            disagreements += 1;
        }
    }
    assert_eq!(disagreements, 0);
}

#[test]
fn sufficient_conditions_imply_dominance() {
    for (l, m) in param_grid() {
        if sufficient_mulholland(l, m) {
            assert!(dominates_closed_form(l, m).dominates(), "{l} {m}");
        }
    }
    assert!(sufficient_mulholland(p(0.5), p(7.0)));
    assert!(sufficient_mulholland(p(2.0), p(5.0)));
    assert!(!sufficient_mulholland(p(2.0), p(7.0)));
    assert!(dominates_closed_form(p(2.0), p(7.0)).dominates());
}

#[test]
fn verdicts_imply_order() {
    for (l, m) in param_grid().into_iter().step_by(7) {
        if dominates_closed_form(l, m).dominates() {
            assert!(l <= m);
        }
    }
}

#[test]
fn dominated_set_examples() {
    assert_eq!(dominated_set(p(5.0)).shape, DominatedShape::FullTail);
    match dominated_set(p(16.0)).shape {
        DominatedShape::IntervalPlusInfinity { beta } => assert!((beta - 121.0).abs() < 1e-12),
        other => panic!("{other:?}"),
    }
    assert_eq!(dominated_set(p(50.0)).shape, DominatedShape::SelfAndInfinity);
    assert_eq!(dominated_set(p(5.0)).to_string(), "[5, inf]");
    assert_eq!(dominated_set(p(50.0)).to_string(), "{50, inf}");
}

#[test]
fn dominated_sets_match_the_closed_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let draw = |rng: &mut ChaCha8Rng| match rng.random_range(0..20) {
        0 => ParamValue::ZERO,
        1 => ParamValue::INFINITY,
        _ => p(10f64.powf(rng.random_range(-3.0..4.0))),
    };
    for _ in 0..100 {
        let alpha = draw(&mut rng);
        let set = dominated_set(alpha);
        for _ in 0..100 {
            let beta = draw(&mut rng);
            assert_eq!(set.contains(beta), dominates_closed_form(alpha, beta).dominates(), "{alpha} {beta}");
        }
        // The computed end f(alpha) may sit an ulp past the exact one.
        if let DominatedShape::IntervalPlusInfinity { beta } = set.shape {
            assert!(set.contains(p(beta * (1.0 - 1e-12))));
            assert!(!set.contains(p(beta * (1.0 + 1e-12))));
        }
    }
}

#[test]
fn beta_examples() {
    assert!((beta_of(16.0).unwrap() - 121.0).abs() < 1e-12);
    assert!((beta_of(R_CRIT).unwrap() - R_CRIT).abs() < 1e-12);
    assert!(beta_of(12.0).unwrap() <= beta_of(10.0).unwrap());
    assert!(beta_of(9.0).is_err());
    assert!(beta_of(40.0).is_err());
}

#[test]
fn order_properties_on_random_sets() {
    for seed in 0..10 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut params: Vec<ParamValue> = (0..200).map(|_| p(10f64.powf(rng.random_range(-2.0..3.0)))).collect();
        params.extend([ParamValue::ZERO, ParamValue::INFINITY]);
        let report = check_order_properties(&params);
        assert!(report.all_hold(), "seed {seed}: {report:?}");
        assert_eq!(report.violating_triple, None);
    }
}

proptest! {
    #[test]
    fn f_is_an_involution(x in 9.0 + 1e-6..1e6f64) {
        let back = f_eval(f_eval(x).unwrap()).unwrap();
        prop_assert!((back - x).abs() <= 1e-9 * x);
    }

    #[test]
    fn f_decreases_strictly(a in 9.0 + 1e-9..1e6f64, b in 9.0 + 1e-9..1e6f64) {
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        prop_assume!(hi > lo * (1.0 + 1e-12));
        prop_assert!(f_eval(lo).unwrap() > f_eval(hi).unwrap());
    }

    #[test]
    fn f_stays_above_the_pole(x in 9.0 + 1e-12..1e12f64) {
        prop_assert!(f_eval(x).unwrap() > 9.0);
    }

    #[test]
    fn forms_agree_anywhere(l in 0.0..1e4f64, m in 0.0..1e4f64) {
        prop_assert_eq!(dominates_closed_form(p(l), p(m)).dominates(), dominates_equiv_form(p(l), p(m)));
    }

    #[test]
    fn order_properties_on_small_sets(v in proptest::collection::vec(0.0..200.0f64, 1..40)) {
        let params: Vec<ParamValue> = v.into_iter().map(p).collect();
        prop_assert!(check_order_properties(&params).all_hold());
    }
}
