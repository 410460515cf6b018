//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Runs at full scale; criteria 6 and 7 take minutes on one core.

use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use swdom::export::{read_region_csv, write_region, Format};
use swdom::parallel::falsify_many;
use swdom::verify::{log_axis, outside_band};
use swdom_core::law::{dominated_set, f_eval, mulholland_g, r_star, sufficient_mulholland, DominatedShape};
use swdom_core::order::check_order_properties;
use swdom_core::reduced::{identity_residual, reduced_search_with, unclamped_sides, Clauses};
use swdom_core::{
    boundary_curve, dominates_closed_form, dominates_equiv_form, map_reduced_to_raw, reduced_search, sample_region,
    FalsifyResult, ParamValue, Scale, SearchConfig, TNormId, R_CRIT,
};

fn p(v: f64) -> ParamValue {
    ParamValue::new(v).unwrap()
}

type Outcome = (bool, String);

#[allow(clippy::excessive_precision)]
fn critical_constant() -> Outcome {
    let r = 17.0 + 12.0 * 2f64.sqrt();
    let ulp = f64::from_bits(R_CRIT.to_bits() + 1) - R_CRIT;
    let fix = (f_eval(r).unwrap() - r).abs();
    let lit = (r - 33.970_562_748_477_140_6).abs();
    (fix <= 1e-12 && lit <= ulp, format!("|f(r) - r| = {fix:e}, |r - 33.9705627484771406| = {lit:e}"))
}

fn involution() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut worst = 0.0f64;
    let mut bad = 0;
    for _ in 0..10_000 {
        let x = rng.random_range(9.0 + 1e-6..1e6);
        let err = (f_eval(f_eval(x).unwrap()).unwrap() - x).abs();
        worst = worst.max(err / x);
        bad += (err > 1e-9 * x) as usize;
    }
    let e16 = (f_eval(16.0).unwrap() - 121.0).abs();
    let e121 = (f_eval(121.0).unwrap() - 16.0).abs();
    (
        bad == 0 && e16 <= 1e-12 && e121 <= 1e-12,
        format!("{bad} of 10000 off, worst relative {worst:e}; pair errors {e16:e}, {e121:e}"),
    )
}

fn r_star_value() -> Outcome {
    let r = r_star();
    let g = mulholland_g(r);
    ((r - 6.00914).abs() <= 1e-4 && g.abs() <= 1e-9, format!("r* = {r:.12}, g(r*) = {g:e}"))
}

fn param_grid() -> Vec<(ParamValue, ParamValue)> {
    let mut axis: Vec<ParamValue> = log_axis(1e-3, 1e3, 500).into_iter().map(p).collect();
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

fn cross_form() -> Outcome {
    let pairs = param_grid();
    let bad =
        pairs.iter().filter(|&&(l, m)| dominates_closed_form(l, m).dominates() != dominates_equiv_form(l, m)).count();
    (bad == 0, format!("{bad} of {} pairs disagree", pairs.len()))
}

fn sufficiency() -> Outcome {
    let pairs = param_grid();
    let bad =
        pairs.iter().filter(|&&(l, m)| sufficient_mulholland(l, m) && !dominates_closed_form(l, m).dominates()).count();
    let strict =
        pairs.iter().filter(|&&(l, m)| !sufficient_mulholland(l, m) && dominates_closed_form(l, m).dominates()).count();
    let example = !sufficient_mulholland(p(2.0), p(7.0)) && dominates_closed_form(p(2.0), p(7.0)).dominates();
    (
        bad == 0 && strict > 0 && example,
        format!("{bad} counterexamples; {strict} dominating pairs without the sufficient condition"),
    )
}

fn band_pairs() -> Vec<(ParamValue, ParamValue)> {
    let axis = log_axis(1e-2, 1e3, 60);
    axis.iter()
        .flat_map(|&l| axis.iter().map(move |&m| (l, m)))
        .filter(|&(l, m)| outside_band(l, m))
        .map(|(l, m)| (p(l), p(m)))
        .collect()
}

fn oracle_agreement(pairs: &[(ParamValue, ParamValue)], outcomes: &[FalsifyResult], cfg: &SearchConfig) -> Outcome {
    let (mut missed, mut spurious) = (0, 0);
    for (&(l, m), o) in pairs.iter().zip(outcomes) {
        match (dominates_closed_form(l, m).dominates(), o.witness()) {
            (true, Some(_)) => spurious += 1,
            (false, Some(w)) if w.gap < -cfg.tol => {}
            (false, _) => missed += 1,
            (true, None) => {}
        }
    }
    (
        missed == 0 && spurious == 0,
        format!(
            "{} cells: {spurious} witnesses against dominance, {missed} non-dominating cells without a witness",
            pairs.len()
        ),
    )
}

fn reduced_agreement(pairs: &[(ParamValue, ParamValue)], outcomes: &[FalsifyResult], cfg: &SearchConfig) -> Outcome {
    let (mut cells, mut disagree, mut mapped_bad) = (0, 0, 0);
    for (&(l, m), o) in pairs.iter().zip(outcomes) {
        // The reduced form is stated for λ < μ only.
        if l >= m {
            continue;
        }
        cells += 1;
        let red = reduced_search(l, m, cfg);
        disagree += (red.is_some() != o.is_violation()) as usize;
        if let Some(w) = red {
            let ok = map_reduced_to_raw(l, &w)
                .is_ok_and(|pt| pt.gap(TNormId::SugenoWeber(l), TNormId::SugenoWeber(m)) < 0.0);
            mapped_bad += !ok as usize;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut found = 0;
    for _ in 0..50 {
        let l = rng.random_range(0.0..=1.0f64).max(f64::MIN_POSITIVE);
        let m = 10f64.powf(rng.random_range(0.0..3.0)).max(f64::from_bits(1f64.to_bits() + 1));
        found += reduced_search_with(p(l), p(m), cfg, Clauses::IneqBOnly).is_some() as usize;
    }
    (
        disagree == 0 && mapped_bad == 0 && found == 0,
        format!("{cells} cells with λ < μ: {disagree} disagreements, {mapped_bad} bad mappings; {found} of 50 pairs with λ <= 1 gave a point"),
    )
}

fn factorization() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut worst = 0.0f64;
    for _ in 0..100_000 {
        let (l, m) = (rng.random_range(0.0..50.0), rng.random_range(0.0..50.0));
        let [x, y, u, v] = [(); 4].map(|_| rng.random_range(-2.0..=2.0));
        let s = unclamped_sides(l, m, x, y, u, v);
        worst = worst.max(identity_residual(l, m, x, y, u, v).abs() / (1.0 + (s.a - s.b).abs()));
    }
    (worst <= 1e-9, format!("max relative residual {worst:e} at 1e5 points"))
}

fn order() -> Outcome {
    let fixed: Vec<ParamValue> =
        [0.0, 1.0, 5.0, 16.0, 50.0, 121.0].into_iter().map(p).chain([ParamValue::INFINITY]).collect();
    let mut failed = !check_order_properties(&fixed).all_hold() as usize;
    let mut triples = 0;
    for seed in 0..10 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut params: Vec<ParamValue> = (0..200).map(|_| p(10f64.powf(rng.random_range(-2.0..3.0)))).collect();
        params.extend([ParamValue::ZERO, ParamValue::INFINITY]);
        let report = check_order_properties(&params);
        failed += !report.all_hold() as usize;
        triples += report.violating_triple.is_some() as usize;
    }
    (failed == 0 && triples == 0, format!("{failed} of 11 sets fail, {triples} violating triples"))
}

fn dominated_sets() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let shapes = [
        matches!(dominated_set(p(5.0)).shape, DominatedShape::FullTail),
        matches!(dominated_set(p(16.0)).shape, DominatedShape::IntervalPlusInfinity { beta } if (beta - 121.0).abs() <= 1e-12),
        matches!(dominated_set(p(50.0)).shape, DominatedShape::SelfAndInfinity),
    ];
    let mut mismatches = 0;
    for alpha in [5.0, 16.0, 50.0] {
        let set = dominated_set(p(alpha));
        for _ in 0..100 {
            let beta = p(10f64.powf(rng.random_range(-2.0..4.0)));
            mismatches += (set.contains(beta) != dominates_closed_form(p(alpha), beta).dominates()) as usize;
        }
    }
    (shapes.iter().all(|&s| s) && mismatches == 0, format!("shapes {shapes:?}, {mismatches} membership mismatches"))
}

fn region_export() -> Outcome {
    let grid = sample_region((1e-2, 1e3), (1e-2, 1e3), 100, Scale::Log).unwrap();
    let mut buf = Vec::new();
    write_region(&grid, Format::Csv, &mut buf).unwrap();
    let back = read_region_csv(buf.as_slice()).unwrap();
    let cells: Vec<_> = grid.cells().collect();
    let lost = back.len().abs_diff(cells.len())
        + back
            .iter()
            .zip(&cells)
            .filter(|(r, c)| {
                r.lambda.to_bits() != c.lambda.to_bits()
                    || r.mu.to_bits() != c.mu.to_bits()
                    || r.dominates != c.dominates
                    || r.condition != c.condition
            })
            .count();
    let curve = boundary_curve(R_CRIT * (1.0 + 1e-6), 1e4, 200).unwrap();
    let off = curve
        .samples
        .iter()
        .filter(|&&(mu, lambda)| {
            !dominates_closed_form(p(lambda), p(mu)).dominates()
                || dominates_closed_form(p(lambda * (1.0 + 1e-6)), p(mu)).dominates()
        })
        .count();
    (
        lost == 0 && off == 0,
        format!(
            "{} rows, {lost} not reproduced; {off} of {} curve samples off the boundary",
            cells.len(),
            curve.samples.len()
        ),
    )
}

fn main() -> ExitCode {
    let mut failures = 0;
    let mut report = |n: usize, name: &str, run: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let (ok, detail) = run();
        let secs = start.elapsed().as_secs_f64();
        println!("{} {n:>2} {name}: {detail} ({secs:.1} s)", if ok { "PASS" } else { "FAIL" });
        failures += !ok as usize;
    };
    report(1, "critical constant", &mut critical_constant);
    report(2, "involution", &mut involution);
    report(3, "r*", &mut r_star_value);
    report(4, "cross-form equivalence", &mut cross_form);
    report(5, "sufficiency", &mut sufficiency);

    let cfg = SearchConfig { grid_n: 48, tol: 1e-9, seed: 0, ..Default::default() };
    let pairs = band_pairs();
    let mut outcomes = Vec::new();
    report(6, "oracle agreement", &mut || {
        outcomes = falsify_many(&pairs, &cfg).unwrap();
        oracle_agreement(&pairs, &outcomes, &cfg)
    });
    report(7, "reduced-form agreement", &mut || reduced_agreement(&pairs, &outcomes, &cfg));
    report(8, "factorization identity", &mut factorization);
    report(9, "order properties", &mut order);
    report(10, "dominated sets", &mut dominated_sets);
    report(11, "region export", &mut region_export);

    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failures} criteria failed");
        ExitCode::FAILURE
    }
}
