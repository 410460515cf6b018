//! Numerical search for counterexamples to dominance.
//!
//! The search scans the interior grid `{(i + 1/2) / n}^4` for the smallest
//! dominance gap, then refines the best cells by cyclic coordinate descent.
//! Along one coordinate the gap between two Sugeno-Weber members is piecewise
//! linear, so each line search is exact: the minimum sits at an end of the
//! interval or at one of the kinks of the clamped forms.
//!
//! The diagonal `x = y = u = v` gets extra starts at the kinks of the gap
//! restricted to it; violations close to the dominance boundary hide in a
//! thin sliver there that the grid is too coarse to hit.
//!
//! Scans can be split into row ranges and merged; ties are broken by the
//! lexicographically smallest grid index, so the result does not depend on
//! the partitioning.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::ops::Range;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::tnorm::{gap_raw, sw_form, sw_raw, sw_unclamped};
use crate::{Error, ParamValue, Result, TNormId};

/// Number of best grid cells the refinement starts from.
pub const MULTISTART: usize = 16;

/// Distance kept from the faces of the cube during refinement.
pub const FACE_MARGIN: f64 = 1e-9;

/// A sweep improving the gap by no more than this ends the refinement.
const SWEEP_IMPROVEMENT: f64 = 1e-15;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchConfig {
    /// Grid points per axis.
    pub grid_n: usize,
    /// Maximum number of coordinate-descent sweeps per start.
    pub refine_iters: usize,
    /// A gap below `-tol` counts as a violation.
    pub tol: f64,
    /// Seed of the multistart jitter.
    pub seed: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { grid_n: 48, refine_iters: 200, tol: 1e-9, seed: 0 }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.grid_n < 2 {
            return Err(Error::InvalidConfig("grid_n must be at least 2"));
        }
        if self.grid_n > u16::MAX as usize {
            return Err(Error::InvalidConfig("grid_n is too large"));
        }
        if !(self.tol > 0.0) || !self.tol.is_finite() {
            return Err(Error::InvalidConfig("tol must be positive"));
        }
        Ok(())
    }
}

/// A point `(x, y, u, v)` of the unit 4-cube.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
    pub u: f64,
    pub v: f64,
}

impl Point {
    pub const CORNER: Point = Point { x: 1.0, y: 1.0, u: 1.0, v: 1.0 };

    pub fn new(x: f64, y: f64, u: f64, v: f64) -> Self {
        Point { x, y, u, v }
    }

    fn to_array(self) -> [f64; 4] {
        [self.x, self.y, self.u, self.v]
    }

    fn from_array(a: [f64; 4]) -> Self {
        Point { x: a[0], y: a[1], u: a[2], v: a[3] }
    }

    /// All coordinates strictly between 0 and 1.
    pub fn in_open_cube(&self) -> bool {
        self.to_array().iter().all(|&c| c > 0.0 && c < 1.0)
    }

    pub fn gap(&self, t1: TNormId, t2: TNormId) -> f64 {
        gap_raw(t1, t2, self.x, self.y, self.u, self.v)
    }
}

/// A point of the open cube where the dominance gap is below `-tol`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Witness {
    pub point: Point,
    pub gap: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FalsifyResult {
    ViolationFound(Witness),
    NoViolationFound { min_gap: f64, argmin: Point },
}

impl FalsifyResult {
    pub fn is_violation(&self) -> bool {
        matches!(self, FalsifyResult::ViolationFound(_))
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            FalsifyResult::ViolationFound(w) => Some(w),
            FalsifyResult::NoViolationFound { .. } => None,
        }
    }

    /// Smallest gap seen, with its location.
    pub fn min_gap(&self) -> (f64, Point) {
        match *self {
            FalsifyResult::ViolationFound(w) => (w.gap, w.point),
            FalsifyResult::NoViolationFound { min_gap, argmin } => (min_gap, argmin),
        }
    }
}

/// A grid cell with a score; cells order by score, then by index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cell {
    pub score: f64,
    pub index: [u16; 4],
}

impl Cell {
    fn order(&self, other: &Cell) -> Ordering {
        self.score.total_cmp(&other.score).then_with(|| self.index.cmp(&other.index))
    }
}

/// Outcome of a (partial) grid scan: the cell with the smallest gap, and
/// the `keep` cells with the smallest relaxed gap (see
/// [`relaxed_gap_raw`](crate::tnorm::relaxed_gap_raw)), best first.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanResult {
    pub min_gap: Option<Cell>,
    pub best: Vec<Cell>,
    keep: usize,
}

impl ScanResult {
    pub fn empty(keep: usize) -> Self {
        ScanResult { min_gap: None, best: Vec::with_capacity(keep + 1), keep: keep.max(1) }
    }

    #[inline]
    pub(crate) fn threshold(&self) -> f64 {
        if self.best.len() < self.keep {
            f64::INFINITY
        } else {
            self.best[self.keep - 1].score
        }
    }

    // Cells are offered in increasing index order, so an equal score never
    // displaces an earlier cell.
    pub(crate) fn offer(&mut self, cell: Cell) {
        let pos = self.best.partition_point(|c| c.score <= cell.score);
        self.best.insert(pos, cell);
        self.best.truncate(self.keep);
    }

    /// Combine results of disjoint partial scans.
    pub fn merge(mut self, other: ScanResult) -> ScanResult {
        self.min_gap = match (self.min_gap, other.min_gap) {
            (Some(a), Some(b)) => Some(if b.order(&a).is_lt() { b } else { a }),
            (a, b) => a.or(b),
        };
        self.best.extend(other.best);
        self.best.sort_by(Cell::order);
        self.best.truncate(self.keep);
        self
    }
}

/// Precomputed tables for scanning the dominance gap of `t1` over `t2` on
/// the interior grid.
pub struct GridScan {
    t1: TNormId,
    t2: TNormId,
    n: usize,
    coords: Vec<f64>,
    // table[i * n + j] = T(c_i, c_j)
    t1_table: Vec<f64>,
    t2_table: Vec<f64>,
}

/// `(i + 1/2) / n`.
pub fn grid_coord(i: usize, n: usize) -> f64 {
    (i as f64 + 0.5) / n as f64
}

impl GridScan {
    pub fn new(t1: TNormId, t2: TNormId, n: usize) -> Self {
        let coords: Vec<f64> = (0..n).map(|i| grid_coord(i, n)).collect();
        let table = |t: TNormId| {
            let mut tab = Vec::with_capacity(n * n);
            for &a in &coords {
                for &b in &coords {
                    tab.push(t.eval_raw(a, b));
                }
            }
            tab
        };
        GridScan { t1, t2, n, t1_table: table(t1), t2_table: table(t2), coords }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn point(&self, index: [u16; 4]) -> Point {
        Point::from_array(index.map(|i| self.coords[i as usize]))
    }

    /// Scan all cells whose `x` index lies in `rows`.
    pub fn scan_rows(&self, rows: Range<usize>, keep: usize) -> ScanResult {
        match (self.t1, self.t2) {
            (TNormId::SugenoWeber(l), TNormId::SugenoWeber(m)) if is_plain(l) && is_plain(m) => {
                let (l, m) = (l.get(), m.get());
                self.scan_with(rows, keep, |a, b| sw_form(l, a, b).max(0.0), |a, b| sw_form(m, a, b))
            }
            (t1, t2) => self.scan_with(rows, keep, |a, b| t1.eval_raw(a, b), |a, b| t2.eval_unclamped(a, b)),
        }
    }

    // `t2_unclamped` clamped at zero is `t2`, bit for bit, for every t-norm
    // here.
    #[inline(always)]
    fn scan_with<F1, F2>(&self, rows: Range<usize>, keep: usize, t1: F1, t2_unclamped: F2) -> ScanResult
    where
        F1: Fn(f64, f64) -> f64,
        F2: Fn(f64, f64) -> f64,
    {
        let n = self.n;
        let mut out = ScanResult::empty(keep);
        let mut threshold = out.threshold();
        let mut min_gap = f64::INFINITY;
        let mut min_index = [0u16; 4];
        for i in rows {
            let t1_x = &self.t1_table[i * n..(i + 1) * n];
            for j in 0..n {
                let a = self.t2_table[i * n + j];
                let t1_y = &self.t1_table[j * n..(j + 1) * n];
                for (k, &c) in t1_x.iter().enumerate() {
                    let t2_u = &self.t2_table[k * n..(k + 1) * n];
                    for l in 0..n {
                        let lhs = t1(a, t2_u[l]);
                        let rhs = t2_unclamped(c, t1_y[l]);
                        let relaxed = lhs - rhs;
                        let gap = lhs - rhs.max(0.0);
                        if gap < min_gap {
                            min_gap = gap;
                            min_index = [i as u16, j as u16, k as u16, l as u16];
                        }
                        if relaxed < threshold {
                            out.offer(Cell { score: relaxed, index: [i as u16, j as u16, k as u16, l as u16] });
                            threshold = out.threshold();
                        }
                    }
                }
            }
        }
        if min_gap < f64::INFINITY {
            out.min_gap = Some(Cell { score: min_gap, index: min_index });
        }
        out
    }

    pub fn scan(&self, keep: usize) -> ScanResult {
        self.scan_rows(0..self.n, keep)
    }
}

// Members evaluated by the generic clamped form, see `sw_raw`.
fn is_plain(p: ParamValue) -> bool {
    let v = p.get();
    v != 0.0 && v != 1.0 && v.is_finite()
}

/// Smallest grid gap with its location.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridMin {
    pub min_gap: f64,
    pub argmin: Point,
    /// Grid index of `argmin`; `None` when no scan was needed.
    pub index: Option<[u16; 4]>,
}

fn finite_positive(p: ParamValue, what: &'static str) -> Result<f64> {
    match p.as_finite() {
        Some(v) if v > 0.0 => Ok(v),
        _ => Err(Error::OutsideDomain { what, value: p.get() }),
    }
}

/// Minimum of the gap of `T_lambda` over `T_mu` on the interior grid.
///
/// Both parameters must be finite and positive; `lambda = 0` and `mu = ∞`
/// are settled by the closed form. For `lambda = mu` every gap vanishes
/// (up to round-off in the scan), and `0` at the corner is returned without
/// scanning.
pub fn grid_min_gap(lambda: ParamValue, mu: ParamValue, cfg: &SearchConfig) -> Result<GridMin> {
    cfg.validate()?;
    finite_positive(lambda, "grid lambda")?;
    finite_positive(mu, "grid mu")?;
    if lambda == mu {
        return Ok(GridMin { min_gap: 0.0, argmin: Point::CORNER, index: None });
    }
    let scan = GridScan::new(TNormId::SugenoWeber(lambda), TNormId::SugenoWeber(mu), cfg.grid_n);
    let best = scan.scan(1).min_gap.expect("grid has at least one cell");
    Ok(GridMin { min_gap: best.score, argmin: scan.point(best.index), index: Some(best.index) })
}

/// Breakpoints of `t -> outer(other, inner(t, partner))` on the real line,
/// where `inner` is the unclamped form with parameter `p` and `outer` the
/// member with parameter `q`: the zero of the inner form and the value of
/// `t` at which the outer form reaches zero.
fn kinks(p: f64, partner: f64, q: f64, other: f64, out: &mut Vec<f64>) {
    // inner(t) = t * slope - p (1 - partner)
    let slope = partner + p * (1.0 - partner);
    if !(slope > 0.0) {
        return;
    }
    let offset = p * (1.0 - partner);
    out.push(offset / slope);
    // outer(a) = a * other - q (1 - a)(1 - other) vanishes at a = a_star.
    let denom = other + q * (1.0 - other);
    if denom > 0.0 {
        let a_star = q * (1.0 - other) / denom;
        out.push((a_star + offset) / slope);
    }
}

/// Exact minimizer of the relaxed gap along coordinate `axis`, or `None` if
/// no candidate improves on `current`.
fn line_min(lambda: f64, mu: f64, p: [f64; 4], axis: usize, current: f64, buf: &mut Vec<f64>) -> Option<(f64, f64)> {
    let [x, y, u, v] = p;
    buf.clear();
    buf.push(FACE_MARGIN);
    buf.push(1.0 - FACE_MARGIN);
    // Each coordinate enters one mu-form (left side) and one lambda-form
    // (right side); listed with its partner there and the other argument of
    // the enclosing outer member.
    let (mu_partner, mu_other, lam_partner, lam_other) = match axis {
        0 => (y, sw_raw(mu, u, v), u, sw_raw(lambda, y, v)),
        1 => (x, sw_raw(mu, u, v), v, sw_raw(lambda, x, u)),
        2 => (v, sw_raw(mu, x, y), x, sw_raw(lambda, y, v)),
        _ => (u, sw_raw(mu, x, y), y, sw_raw(lambda, x, u)),
    };
    kinks(mu, mu_partner, lambda, mu_other, buf);
    kinks(lambda, lam_partner, mu, lam_other, buf);

    let mut best: Option<(f64, f64)> = None;
    let mut best_value = current;
    for &t in buf.iter() {
        if !t.is_finite() {
            continue;
        }
        let t = t.clamp(FACE_MARGIN, 1.0 - FACE_MARGIN);
        let mut q = p;
        q[axis] = t;
        let value = sw_relaxed(lambda, mu, q);
        if value < best_value {
            best_value = value;
            best = Some((t, value));
        }
    }
    best
}

#[inline]
fn sw_gap(lambda: f64, mu: f64, p: [f64; 4]) -> f64 {
    let [x, y, u, v] = p;
    sw_raw(lambda, sw_raw(mu, x, y), sw_raw(mu, u, v)) - sw_raw(mu, sw_raw(lambda, x, u), sw_raw(lambda, y, v))
}

#[inline]
fn sw_relaxed(lambda: f64, mu: f64, p: [f64; 4]) -> f64 {
    let [x, y, u, v] = p;
    sw_raw(lambda, sw_raw(mu, x, y), sw_raw(mu, u, v)) - sw_unclamped(mu, sw_raw(lambda, x, u), sw_raw(lambda, y, v))
}

/// Cyclic coordinate descent with exact line searches, starting at `start`.
///
/// The descent runs on the relaxed gap, which has no plateau where the
/// right-hand side is clamped; the point with the smallest gap visited is
/// returned, so the result never has a larger gap than `start`. Stops after
/// `cfg.refine_iters` sweeps or at the first sweep improving by at most
/// `1e-15`.
pub fn refine_witness(lambda: ParamValue, mu: ParamValue, start: Point, cfg: &SearchConfig) -> Result<Point> {
    let l = lambda.try_finite()?;
    let m = mu.try_finite()?;
    Ok(Point::from_array(refine_raw(l, m, start.to_array(), cfg.refine_iters)))
}

fn refine_raw(lambda: f64, mu: f64, start: [f64; 4], sweeps: usize) -> [f64; 4] {
    let mut p = start;
    let mut current = sw_relaxed(lambda, mu, p);
    let mut best = (sw_gap(lambda, mu, p), p);
    let mut buf = Vec::with_capacity(6);
    for _ in 0..sweeps {
        let before = current;
        for axis in 0..4 {
            if let Some((t, value)) = line_min(lambda, mu, p, axis, current, &mut buf) {
                p[axis] = t;
                current = value;
                let gap = sw_gap(lambda, mu, p);
                if gap < best.0 {
                    best = (gap, p);
                }
            }
        }
        if before - current <= SWEEP_IMPROVEMENT {
            break;
        }
    }
    best.1
}

/// Jittered starting points around the centres of `cells`, drawn in order
/// from a generator seeded with `seed`. Each start stays inside its cell.
pub fn multistart_points(cells: &[Cell], n: usize, seed: u64) -> Vec<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let h = 1.0 / n as f64;
    cells
        .iter()
        .map(|cell| {
            Point::from_array(cell.index.map(|i| {
                // Uniform in [-1/2, 1/2) of the half-width.
                let r = (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64 - 0.5;
                grid_coord(i as usize, n) + r * h * 0.5
            }))
        })
        .collect()
}

/// Solve `sw_form(p, t, t) = c` for `t` in `[0, 1]` by bisection; the left
/// side increases from `-p` to `1`.
fn diagonal_level(p: f64, c: f64) -> Option<f64> {
    if !(c > -p && c < 1.0) {
        return None;
    }
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if sw_form(p, mid, mid) < c {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(lo)
}

/// Zero of `a -> sw_form(p, a, a)` in `[0, 1]`.
fn diagonal_zero(p: f64) -> f64 {
    let s = libm::sqrt(p);
    s / (1.0 + s)
}

/// Diagonal points at the kinks of `t -> gap(t, t, t, t)`: where an inner
/// form leaves zero and where an outer form does. Each kink is also taken
/// from just below, where the left side is still clamped.
pub fn diagonal_starts(lambda: f64, mu: f64) -> Vec<Point> {
    let levels = [(mu, 0.0), (mu, diagonal_zero(lambda)), (lambda, 0.0), (lambda, diagonal_zero(mu))];
    let mut out = Vec::with_capacity(2 * levels.len());
    for (p, c) in levels {
        if let Some(t) = diagonal_level(p, c) {
            for t in [t, t - 1e-12] {
                let t = t.clamp(FACE_MARGIN, 1.0 - FACE_MARGIN);
                out.push(Point::new(t, t, t, t));
            }
        }
    }
    out
}

/// Outcome for pairs the closed form settles without search.
pub fn trivial_outcome(lambda: ParamValue, mu: ParamValue) -> Option<FalsifyResult> {
    (lambda.is_zero() || mu.is_infinite() || lambda == mu)
        .then_some(FalsifyResult::NoViolationFound { min_gap: 0.0, argmin: Point::CORNER })
}

/// Turn the best grid cell and the refined points into a verdict.
pub fn conclude(t1: TNormId, t2: TNormId, grid_best: Point, refined: &[Point], tol: f64) -> FalsifyResult {
    let mut best = grid_best;
    let mut best_gap = best.gap(t1, t2);
    for p in refined {
        let g = p.gap(t1, t2);
        if g < best_gap {
            best = *p;
            best_gap = g;
        }
    }
    if best_gap < -tol && best.in_open_cube() {
        FalsifyResult::ViolationFound(Witness { point: best, gap: best_gap })
    } else {
        FalsifyResult::NoViolationFound { min_gap: best_gap, argmin: best }
    }
}

/// Starting points of the refinement: the jittered `best` cells followed by
/// the [`diagonal_starts`].
pub fn search_starts(lambda: f64, mu: f64, best: &[Cell], cfg: &SearchConfig) -> Vec<Point> {
    let mut starts = multistart_points(best, cfg.grid_n, cfg.seed);
    starts.extend(diagonal_starts(lambda, mu));
    starts
}

/// Search for a point where `T_lambda` fails to dominate `T_mu`.
///
/// Pairs with `lambda = 0`, `mu = ∞` or `lambda = mu` are answered without
/// search. Otherwise the grid is scanned, the [`MULTISTART`] best cells and
/// the [`diagonal_starts`] are refined (finite parameters only) and a
/// violation is reported iff some gap falls below `-cfg.tol`.
pub fn falsify(lambda: ParamValue, mu: ParamValue, cfg: &SearchConfig) -> Result<FalsifyResult> {
    cfg.validate()?;
    if let Some(outcome) = trivial_outcome(lambda, mu) {
        return Ok(outcome);
    }
    let (t1, t2) = (TNormId::SugenoWeber(lambda), TNormId::SugenoWeber(mu));
    let scan = GridScan::new(t1, t2, cfg.grid_n);
    let result = scan.scan(MULTISTART);
    let grid_best = scan.point(result.min_gap.expect("grid has at least one cell").index);
    let refined = match (lambda.as_finite(), mu.as_finite()) {
        (Some(l), Some(m)) => search_starts(l, m, &result.best, cfg)
            .into_iter()
            .map(|s| Point::from_array(refine_raw(l, m, s.to_array(), cfg.refine_iters)))
            .collect(),
        _ => Vec::new(),
    };
    Ok(conclude(t1, t2, grid_best, &refined, cfg.tol))
}
