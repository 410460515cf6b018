//! Invariant suites behind `swdom verify`.
//!
//! Every random draw comes from a generator seeded with the suite seed, so a
//! run is reproducible.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use swdom_core::law::{beta_of, dominated_set, f_eval, mulholland_g, r_star, sufficient_mulholland, DominatedShape};
use swdom_core::order::check_order_properties;
use swdom_core::reduced::{identity_residual, reduced_search_with, unclamped_sides, Clauses};
use swdom_core::tnorm::sides_ab;
use swdom_core::{
    dominance_gap, dominates_closed_form, dominates_equiv_form, falsify, grid_min_gap, map_reduced_to_raw,
    reduced_search, tnorm_eval, tsw_eval, ParamValue, SearchConfig, TNormId, UnitValue, R_CRIT,
};

use crate::parallel::{falsify_many, falsify_par};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Tnorms,
    Law,
    Falsifier,
    All,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub suite: &'static str,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

struct Recorder {
    suite: &'static str,
    checks: Vec<Check>,
}

impl Recorder {
    fn new(suite: &'static str) -> Self {
        Recorder { suite, checks: Vec::new() }
    }

    fn check(&mut self, name: &'static str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { suite: self.suite, name, passed, detail: detail.into() });
    }
}

pub fn run_suite(suite: Suite, seed: u64) -> Vec<Check> {
    match suite {
        Suite::Tnorms => tnorms(seed),
        Suite::Law => law(seed),
        Suite::Falsifier => falsifier(seed),
        Suite::All => [tnorms(seed), law(seed), falsifier(seed)].concat(),
    }
}

fn p(v: f64) -> ParamValue {
    ParamValue::new(v).expect("nonnegative parameter")
}

fn unit(v: f64) -> UnitValue {
    UnitValue::new(v).expect("unit value")
}

fn t(lambda: ParamValue, u: f64, v: f64) -> f64 {
    tsw_eval(lambda, unit(u), unit(v)).get()
}

fn random_param(rng: &mut ChaCha8Rng) -> ParamValue {
    match rng.random_range(0..10) {
        0 => ParamValue::ZERO,
        1 => ParamValue::ONE,
        2 => ParamValue::INFINITY,
        _ => p(10f64.powf(rng.random_range(-3.0..4.0))),
    }
}

fn unit_grid(n: usize) -> Vec<f64> {
    (0..n).map(|i| i as f64 / (n - 1) as f64).collect()
}

/// `n` log-spaced values from `lo` to `hi`.
pub fn log_axis(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo * (hi / lo).powf(i as f64 / (n - 1) as f64)).collect()
}

/// Outside the relative band of width `1e-3` around `λ = f(μ)` and
/// `μ = 17 + 12√2`, where witness gaps vanish.
pub fn outside_band(lambda: f64, mu: f64) -> bool {
    let near_curve = mu > R_CRIT && (lambda / f_eval(mu).expect("mu above the pole") - 1.0).abs() < 1e-3;
    let near_line = (mu / R_CRIT - 1.0).abs() < 1e-3;
    !near_curve && !near_line
}

fn tnorms(seed: u64) -> Vec<Check> {
    let mut r = Recorder::new("tnorms");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let (mut comm, mut neutral, mut bounds) = (0, 0, 0);
    for _ in 0..10_000 {
        let lambda = random_param(&mut rng);
        let (u, v) = (rng.random_range(0.0..=1.0), rng.random_range(0.0..=1.0));
        comm += (t(lambda, u, v).to_bits() != t(lambda, v, u).to_bits()) as usize;
        neutral += ((t(lambda, u, 1.0) - u).abs() > f64::EPSILON * u) as usize;
        let lo = tnorm_eval(TNormId::Drastic, unit(u), unit(v)).get();
        let hi = tnorm_eval(TNormId::Minimum, unit(u), unit(v)).get();
        bounds += !(lo <= t(lambda, u, v) && t(lambda, u, v) <= hi) as usize;
    }
    r.check("commutativity", comm == 0, format!("{comm} asymmetric of 10000"));
    r.check("neutral element", neutral == 0, format!("{neutral} off by more than 1 ulp"));
    r.check("drastic <= T <= minimum", bounds == 0, format!("{bounds} out of bounds"));

    let g = unit_grid(50);
    let mut worst = 0.0f64;
    for lambda in [p(0.0), p(0.5), p(1.0), p(2.0), p(10.0), ParamValue::INFINITY] {
        for &a in &g {
            for &b in &g {
                let ab = t(lambda, a, b);
                for &c in &g {
                    worst = worst.max((t(lambda, ab, c) - t(lambda, a, t(lambda, b, c))).abs());
                }
            }
        }
    }
    r.check("associativity", worst <= 1e-12, format!("max deviation {worst:e} on 50^3"));

    let g = unit_grid(41);
    let params = [p(0.0), p(0.3), p(1.0), p(4.0), p(40.0), ParamValue::INFINITY];
    let (mut mono, mut order) = (0, 0);
    for (k, &lambda) in params.iter().enumerate() {
        for &v in &g {
            mono += g.windows(2).filter(|w| t(lambda, w[0], v) > t(lambda, w[1], v) + 1e-15).count();
            for &u in &g {
                order += params[k..].iter().filter(|&&mu| t(lambda, u, v) < t(mu, u, v) - 1e-15).count();
            }
        }
    }
    r.check("monotonicity", mono == 0, format!("{mono} decreasing steps"));
    r.check("family order", order == 0, format!("{order} inversions"));

    let mut special = 0;
    for &u in &g {
        for &v in &g {
            let (a, b) = (unit(u), unit(v));
            special += (tsw_eval(ParamValue::ZERO, a, b) != tnorm_eval(TNormId::Product, a, b)) as usize;
            special += (tsw_eval(ParamValue::ONE, a, b) != tnorm_eval(TNormId::Lukasiewicz, a, b)) as usize;
            special += (tsw_eval(ParamValue::INFINITY, a, b) != tnorm_eval(TNormId::Drastic, a, b)) as usize;
        }
    }
    r.check("special members", special == 0, format!("{special} mismatches"));

    let mut worst = 0.0f64;
    for _ in 0..100_000 {
        let (lambda, mu) = (p(rng.random_range(0.0..60.0)), p(rng.random_range(0.0..60.0)));
        let [x, y, u, v] = [(); 4].map(|_| unit(rng.random_range(0.0..=1.0)));
        let s = sides_ab(lambda, mu, x, y, u, v).expect("finite parameters");
        let gap = dominance_gap(TNormId::SugenoWeber(lambda), TNormId::SugenoWeber(mu), x, y, u, v);
        worst = worst.max((s.gap() - gap).abs());
    }
    r.check("sides reproduce the gap", worst <= 1e-14, format!("max deviation {worst:e} at 1e5 points"));
    r.checks
}

fn param_pairs() -> Vec<(ParamValue, ParamValue)> {
    let mut axis: Vec<ParamValue> = log_axis(1e-3, 1e3, 500).into_iter().map(p).collect();
    let mut pairs: Vec<_> = axis.iter().flat_map(|&a| axis.iter().map(move |&b| (a, b))).collect();
    let specials = [ParamValue::ZERO, ParamValue::INFINITY];
    axis.extend(specials);
    for s in specials {
        for &a in &axis {
            pairs.extend([(s, a), (a, s)]);
        }
    }
    pairs
}

#[allow(clippy::excessive_precision)]
fn law(seed: u64) -> Vec<Check> {
    let mut r = Recorder::new("law");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let fix = (f_eval(R_CRIT).expect("above the pole") - R_CRIT).abs();
    let ulp = f64::from_bits(R_CRIT.to_bits() + 1) - R_CRIT;
    let ok = fix <= 1e-12 && (R_CRIT - 33.970_562_748_477_140_6).abs() <= ulp;
    r.check("critical constant", ok, format!("|f(r) - r| = {fix:e}"));

    let e16 = (f_eval(16.0).expect("above the pole") - 121.0).abs();
    let e121 = (f_eval(121.0).expect("above the pole") - 16.0).abs();
    r.check("f(16) = 121, f(121) = 16", e16 <= 1e-12 && e121 <= 1e-12, format!("errors {e16:e}, {e121:e}"));

    let (mut inv, mut dec, mut range) = (0, 0, 0);
    for _ in 0..10_000 {
        let x = rng.random_range(9.0 + 1e-6..1e6);
        let fx = f_eval(x).expect("above the pole");
        inv += ((f_eval(fx).expect("above the pole") - x).abs() > 1e-9 * x) as usize;
        range += !(fx > 9.0) as usize;
        let y = rng.random_range(9.0 + 1e-6..1e6);
        let (lo, hi) = if x < y { (x, y) } else { (y, x) };
        if hi > lo * (1.0 + 1e-12) {
            dec += !(f_eval(lo).expect("above the pole") > f_eval(hi).expect("above the pole")) as usize;
        }
    }
    let blowup = f_eval(9.0 + 1e-8).expect("above the pole");
    r.check("involution", inv == 0, format!("{inv} of 10000 off"));
    r.check("strict decrease", dec == 0, format!("{dec} non-decreasing pairs"));
    r.check("range above 9", range == 0 && blowup > 1e10, format!("f(9 + 1e-8) = {blowup:e}"));

    let rs = r_star();
    let ok = (rs - 6.00914).abs() <= 1e-4 && mulholland_g(rs).abs() <= 1e-9;
    r.check("r*", ok, format!("r* = {rs:.12}, g(r*) = {:e}", mulholland_g(rs)));

    let pairs = param_pairs();
    let disagree =
        pairs.iter().filter(|&&(l, m)| dominates_closed_form(l, m).dominates() != dominates_equiv_form(l, m)).count();
    r.check(
        "closed and square-root forms agree",
        disagree == 0,
        format!("{disagree} of {} pairs disagree", pairs.len()),
    );

    let counter =
        pairs.iter().filter(|&&(l, m)| sufficient_mulholland(l, m) && !dominates_closed_form(l, m).dominates()).count();
    let strict = !sufficient_mulholland(p(2.0), p(7.0)) && dominates_closed_form(p(2.0), p(7.0)).dominates();
    r.check("sufficient conditions", counter == 0 && strict, format!("{counter} counterexamples"));

    let shapes = dominated_set(p(5.0)).shape == DominatedShape::FullTail
        && matches!(dominated_set(p(16.0)).shape, DominatedShape::IntervalPlusInfinity { beta } if (beta - 121.0).abs() < 1e-12)
        && dominated_set(p(50.0)).shape == DominatedShape::SelfAndInfinity;
    let mut member = 0;
    for _ in 0..100 {
        let alpha = random_param(&mut rng);
        let set = dominated_set(alpha);
        for _ in 0..100 {
            let beta = random_param(&mut rng);
            member += (set.contains(beta) != dominates_closed_form(alpha, beta).dominates()) as usize;
        }
    }
    r.check("dominated sets", shapes && member == 0, format!("{member} membership mismatches"));

    let beta_ok = (beta_of(16.0).map(|b| (b - 121.0).abs() < 1e-12)).unwrap_or(false)
        && beta_of(12.0).unwrap_or(f64::NAN) <= beta_of(10.0).unwrap_or(f64::NAN)
        && beta_of(40.0).is_err();
    r.check("beta", beta_ok, "");

    let landmark = [p(0.0), p(1.0), p(5.0), p(16.0), p(50.0), p(121.0), ParamValue::INFINITY];
    let mut failures = (!check_order_properties(&landmark).all_hold()) as usize;
    for _ in 0..10 {
        let mut set: Vec<ParamValue> = (0..200).map(|_| p(10f64.powf(rng.random_range(-2.0..3.0)))).collect();
        set.extend([ParamValue::ZERO, ParamValue::INFINITY]);
        failures += (!check_order_properties(&set).all_hold()) as usize;
    }
    r.check("order properties", failures == 0, format!("{failures} of 11 sets fail"));
    r.checks
}

fn falsifier(seed: u64) -> Vec<Check> {
    let mut r = Recorder::new("falsifier");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cfg = SearchConfig { seed, ..Default::default() };

    let examples = falsify(p(0.0), p(7.0), &cfg).is_ok_and(|o| !o.is_violation())
        && falsify(p(16.0), p(121.0), &cfg).is_ok_and(|o| !o.is_violation())
        && falsify(p(17.0), p(121.0), &cfg).is_ok_and(|o| o.witness().is_some_and(|w| w.gap < -1e-9))
        && grid_min_gap(p(2.0), p(10.0), &cfg).is_ok_and(|g| g.min_gap >= -1e-12);
    r.check("examples", examples, "");

    let axis = log_axis(1e-2, 1e3, 10);
    let pairs: Vec<(ParamValue, ParamValue)> = axis
        .iter()
        .flat_map(|&l| axis.iter().map(move |&m| (l, m)))
        .filter(|&(l, m)| outside_band(l, m))
        .map(|(l, m)| (p(l), p(m)))
        .collect();
    let outcomes = falsify_many(&pairs, &cfg).expect("valid configuration");
    let (mut disagree, mut invalid, mut reduced_disagree, mut mapped_bad) = (0, 0, 0, 0);
    for (&(l, m), o) in pairs.iter().zip(&outcomes) {
        disagree += (dominates_closed_form(l, m).dominates() == o.is_violation()) as usize;
        if let Some(w) = o.witness() {
            let pt = w.point;
            let g = dominance_gap(
                TNormId::SugenoWeber(l),
                TNormId::SugenoWeber(m),
                unit(pt.x),
                unit(pt.y),
                unit(pt.u),
                unit(pt.v),
            );
            invalid += !(g < -cfg.tol && (g - w.gap).abs() <= 1e-14 && pt.in_open_cube()) as usize;
        }
        if l < m {
            let red = reduced_search(l, m, &cfg);
            reduced_disagree += (red.is_some() != o.is_violation()) as usize;
            if let Some(w) = red {
                let ok = map_reduced_to_raw(l, &w)
                    .is_ok_and(|pt| pt.gap(TNormId::SugenoWeber(l), TNormId::SugenoWeber(m)) < 0.0);
                mapped_bad += !ok as usize;
            }
        }
    }
    r.check("agrees with the closed form", disagree == 0, format!("{disagree} of {} cells disagree", pairs.len()));
    r.check("witnesses re-evaluate", invalid == 0, format!("{invalid} invalid witnesses"));
    r.check(
        "reduced search agrees",
        reduced_disagree == 0 && mapped_bad == 0,
        format!("{reduced_disagree} disagreements, {mapped_bad} bad mappings"),
    );

    let small = SearchConfig { grid_n: 16, ..cfg };
    let mut found = 0;
    for _ in 0..10 {
        let l = rng.random_range(1e-3..=1.0);
        let m = 10f64.powf(rng.random_range(0.0..3.0)).max(1.0 + 1e-9);
        found += reduced_search_with(p(l), p(m), &small, Clauses::IneqBOnly).is_some() as usize;
    }
    r.check("reduced formula empty for lambda <= 1", found == 0, format!("{found} of 10 pairs gave a point"));

    let mut worst = 0.0f64;
    for _ in 0..100_000 {
        let (l, m) = (rng.random_range(0.0..50.0), rng.random_range(0.0..50.0));
        let [x, y, u, v] = [(); 4].map(|_| rng.random_range(-2.0..=2.0));
        let s = unclamped_sides(l, m, x, y, u, v);
        worst = worst.max(identity_residual(l, m, x, y, u, v).abs() / (1.0 + (s.a - s.b).abs()));
    }
    r.check("factorization identity", worst <= 1e-9, format!("max relative residual {worst:e}"));

    let a = falsify(p(20.0), p(100.0), &cfg).expect("valid configuration");
    let b = falsify_par(p(20.0), p(100.0), &cfg).expect("valid configuration");
    let same = a.min_gap().0.to_bits() == b.min_gap().0.to_bits() && a.min_gap().1 == b.min_gap().1;
    r.check("deterministic", same, "");
    r.checks
}
