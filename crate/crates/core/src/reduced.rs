//! The max-free reduced form of dominance failure.
//!
//! Write `x' = 1 - x` (likewise `y'`, `u'`, `v'`) and
//! `ṽ = (λ - 1) v' y' + v' + y'`. For `0 < λ < μ < ∞`, `T_λ` fails to
//! dominate `T_μ` iff some `(x', y', u', ṽ)` with `0 < x', y', u' < 1` and
//! `y' < ṽ < 1 + λ y'` makes both [`ineq_a`] and [`ineq_b`] negative. All
//! functions in this module take the substituted coordinates, written
//! without primes, except [`identity_residual`] and [`unclamped_sides`].
//!
//! [`reduced_search`] looks for such points without going through the
//! clamped t-norms, so it serves as a second, independent falsifier.

use alloc::vec::Vec;

use crate::falsify::{grid_coord, multistart_points, Cell, Point, ScanResult, SearchConfig, FACE_MARGIN, MULTISTART};
use crate::tnorm::{inner_terms_raw, Sides};
use crate::{Error, ParamValue, Result, UnitValue};

/// `u((λ-1)x+1)((μ-1)ṽ+1) + (μ-1)ṽx + ṽ + x - 1`.
pub fn ineq_a(lambda: f64, mu: f64, x: f64, u: f64, v_tilde: f64) -> f64 {
    u * ((lambda - 1.0) * x + 1.0) * ((mu - 1.0) * v_tilde + 1.0) + (mu - 1.0) * v_tilde * x + v_tilde + x - 1.0
}

/// `ṽx(1 - (λ-1)(μ-1)uy) + y((λ-1)uy((μ-1)x+1) + u - x)`.
pub fn ineq_b(lambda: f64, mu: f64, x: f64, y: f64, u: f64, v_tilde: f64) -> f64 {
    v_tilde * x * (1.0 - (lambda - 1.0) * (mu - 1.0) * u * y)
        + y * ((lambda - 1.0) * u * y * ((mu - 1.0) * x + 1.0) + u - x)
}

fn reduced_params(lambda: ParamValue, mu: ParamValue) -> Option<(f64, f64)> {
    let (l, m) = (lambda.as_finite()?, mu.as_finite()?);
    (0.0 < l && l < m).then_some((l, m))
}

fn in_domain(lambda: f64, x: f64, y: f64, u: f64, v_tilde: f64) -> bool {
    let open = |t: f64| 0.0 < t && t < 1.0;
    open(x) && open(y) && open(u) && y < v_tilde && v_tilde < 1.0 + lambda * y
}

/// The reduced formula at one point; false unless `0 < λ < μ < ∞`.
pub fn reduced_violation(lambda: ParamValue, mu: ParamValue, x: f64, y: f64, u: f64, v_tilde: f64) -> bool {
    let Some((l, m)) = reduced_params(lambda, mu) else {
        return false;
    };
    in_domain(l, x, y, u, v_tilde) && ineq_a(l, m, x, u, v_tilde) < 0.0 && ineq_b(l, m, x, y, u, v_tilde) < 0.0
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedWitness {
    pub x: f64,
    pub y: f64,
    pub u: f64,
    pub v_tilde: f64,
    pub ineq_a: f64,
    pub ineq_b: f64,
}

/// Which inequalities [`reduced_search_with`] has to violate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Clauses {
    #[default]
    Both,
    /// Drop `ineq_a`; for `λ <= 1` even this weaker formula is unsatisfiable.
    IneqBOnly,
}

/// Forward substitution `ṽ = (λ-1)vy + v + y`.
pub fn v_tilde_of(lambda: f64, y: f64, v: f64) -> f64 {
    (lambda - 1.0) * v * y + v + y
}

/// Back-substitute a reduced point into the original coordinates of the
/// dominance inequality.
pub fn map_reduced_to_raw(lambda: ParamValue, w: &ReducedWitness) -> Result<Point> {
    let l = lambda.try_finite()?;
    let v = (w.v_tilde - w.y) / (1.0 + (l - 1.0) * w.y);
    let back = |t: f64| UnitValue::new(1.0 - t).map(f64::from).map_err(|_| Error::MappedOutsideCube(1.0 - t));
    Ok(Point::new(back(w.x)?, back(w.y)?, back(w.u)?, back(v)?))
}

/// `A` and `B` of the dominance inequality with no clamp applied, neither to
/// the inner terms nor to the sides; original coordinates.
pub fn unclamped_sides(lambda: f64, mu: f64, x: f64, y: f64, u: f64, v: f64) -> Sides {
    let t = inner_terms_raw(lambda, mu, x, y, u, v);
    Sides {
        a: (1.0 - lambda) * t.x3 * t.x4 + lambda * (t.x3 + t.x4 - 1.0),
        b: (1.0 - mu) * t.x1 * t.x2 + mu * (t.x1 + t.x2 - 1.0),
    }
}

/// `(A - B)` minus its factorization
/// `(μ-λ)((μ+λ(1-μ))(u-1)(v-1)(x-1)(y-1) - ((u-1)y-u)((v-1)x-v) + 1)`,
/// with `A`, `B` from [`unclamped_sides`]. Vanishes up to round-off.
pub fn identity_residual(lambda: f64, mu: f64, x: f64, y: f64, u: f64, v: f64) -> f64 {
    let s = unclamped_sides(lambda, mu, x, y, u, v);
    let factored = (mu - lambda)
        * ((mu + lambda * (1.0 - mu)) * (u - 1.0) * (v - 1.0) * (x - 1.0) * (y - 1.0)
            - ((u - 1.0) * y - u) * ((v - 1.0) * x - v)
            + 1.0);
    (s.a - s.b) - factored
}

/// Samples along the image of the diagonal used to bracket sign changes.
const CURVE_SAMPLES: usize = 4096;

struct Problem {
    lambda: f64,
    mu: f64,
    clauses: Clauses,
}

impl Problem {
    fn parts(&self, p: [f64; 4]) -> (f64, f64) {
        let [x, y, u, vt] = p;
        (ineq_a(self.lambda, self.mu, x, u, vt), ineq_b(self.lambda, self.mu, x, y, u, vt))
    }

    fn objective(&self, p: [f64; 4]) -> f64 {
        let (a, b) = self.parts(p);
        match self.clauses {
            Clauses::Both => a.max(b),
            Clauses::IneqBOnly => b,
        }
    }

    // ṽ for the cell coordinate `t` in (0, 1), which plays the role of v.
    fn v_tilde(&self, y: f64, t: f64) -> f64 {
        y + t * (1.0 + (self.lambda - 1.0) * y)
    }

    fn bounds(&self, p: [f64; 4], axis: usize) -> Option<(f64, f64)> {
        let [_, y, _, vt] = p;
        let (lo, hi) = match axis {
            1 => {
                let lo = FACE_MARGIN.max((vt - 1.0) / self.lambda + FACE_MARGIN);
                (lo, (1.0 - FACE_MARGIN).min(vt - FACE_MARGIN))
            }
            3 => {
                let w = 1.0 + (self.lambda - 1.0) * y;
                (y + FACE_MARGIN * w, y + (1.0 - FACE_MARGIN) * w)
            }
            _ => (FACE_MARGIN, 1.0 - FACE_MARGIN),
        };
        (lo < hi).then_some((lo, hi))
    }

    /// Exact minimizer of the objective along `axis`. Both inequalities are
    /// at most quadratic in every coordinate, so the minimum of their maximum
    /// sits at an end, a vertex or a crossing.
    fn line_min(&self, p: [f64; 4], axis: usize, current: f64, cand: &mut Vec<f64>) -> Option<([f64; 4], f64)> {
        let (lo, hi) = self.bounds(p, axis)?;
        let (mid, half) = (0.5 * (lo + hi), 0.5 * (hi - lo));
        let at = |tau: f64| {
            let mut q = p;
            q[axis] = (mid + tau * half).clamp(lo, hi);
            q
        };
        let (am, bm) = self.parts(at(-1.0));
        let (a0, b0) = self.parts(at(0.0));
        let (ap, bp) = self.parts(at(1.0));
        let quad = |m: f64, z: f64, p: f64| [z, 0.5 * (p - m), 0.5 * (p + m) - z];
        let qa = quad(am, a0, ap);
        let qb = quad(bm, b0, bp);

        cand.clear();
        cand.extend([-1.0, 1.0]);
        push_vertex(qb, cand);
        if self.clauses == Clauses::Both {
            push_vertex(qa, cand);
            push_roots([qa[0] - qb[0], qa[1] - qb[1], qa[2] - qb[2]], cand);
        }

        let mut best = None;
        let mut best_value = current;
        for &tau in cand.iter() {
            if !tau.is_finite() {
                continue;
            }
            let q = at(tau.clamp(-1.0, 1.0));
            let value = self.objective(q);
            if value < best_value {
                best_value = value;
                best = Some((q, value));
            }
        }
        best
    }

    fn refine(&self, start: [f64; 4], sweeps: usize) -> ([f64; 4], f64) {
        let mut p = start;
        let mut current = self.objective(p);
        let mut cand = Vec::with_capacity(6);
        for _ in 0..sweeps {
            let before = current;
            for axis in 0..4 {
                if let Some((q, value)) = self.line_min(p, axis, current, &mut cand) {
                    p = q;
                    current = value;
                }
            }
            if before - current <= 1e-15 {
                break;
            }
        }
        (p, current)
    }

    fn scan(&self, n: usize) -> ScanResult {
        let mut out = ScanResult::empty(MULTISTART);
        let mut threshold = out.threshold();
        for i in 0..n {
            let x = grid_coord(i, n);
            for j in 0..n {
                let y = grid_coord(j, n);
                for k in 0..n {
                    let u = grid_coord(k, n);
                    for l in 0..n {
                        let vt = self.v_tilde(y, grid_coord(l, n));
                        let score = self.objective([x, y, u, vt]);
                        if score < threshold {
                            out.offer(Cell { score, index: [i as u16, j as u16, k as u16, l as u16] });
                            threshold = out.threshold();
                        }
                    }
                }
            }
        }
        out
    }

    // Image of the raw diagonal: x = y = u = s, v = s.
    fn curve(&self, s: f64) -> [f64; 4] {
        [s, s, s, v_tilde_of(self.lambda, s, s)]
    }

    /// Starts along the image of the diagonal, one between each pair of
    /// consecutive sign changes of the two inequalities.
    fn curve_starts(&self) -> Vec<[f64; 4]> {
        let s_at = |k: usize| grid_coord(k, CURVE_SAMPLES);
        let mut roots = Vec::new();
        let mut prev = self.parts(self.curve(s_at(0)));
        for k in 1..CURVE_SAMPLES {
            let next = self.parts(self.curve(s_at(k)));
            for which in 0..2 {
                let pick = |ab: (f64, f64)| if which == 0 { ab.0 } else { ab.1 };
                if (pick(prev) < 0.0) != (pick(next) < 0.0) {
                    let f = |s: f64| pick(self.parts(self.curve(s))) < 0.0;
                    roots.push(bisect(f, s_at(k - 1), s_at(k)));
                }
            }
            prev = next;
        }
        roots.push(s_at(0));
        roots.push(s_at(CURVE_SAMPLES - 1));
        roots.sort_by(f64::total_cmp);
        roots.windows(2).map(|w| self.curve(0.5 * (w[0] + w[1]))).collect()
    }
}

/// Boundary between the sets where `neg` holds and where it does not,
/// given that it differs at `lo` and `hi`.
fn bisect(neg: impl Fn(f64) -> bool, mut lo: f64, mut hi: f64) -> f64 {
    let at_lo = neg(lo);
    for _ in 0..64 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if neg(mid) == at_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

// Coefficients [c0, c1, c2] of c0 + c1 t + c2 t^2.
fn push_vertex(q: [f64; 3], out: &mut Vec<f64>) {
    if q[2] != 0.0 {
        out.push(-q[1] / (2.0 * q[2]));
    }
}

fn push_roots(q: [f64; 3], out: &mut Vec<f64>) {
    let [c, b, a] = q;
    if a.abs() <= 1e-12 * (b.abs() + c.abs()) {
        if b != 0.0 {
            out.push(-c / b);
        }
        return;
    }
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        return;
    }
    // Numerically stable pair of roots.
    let s = libm::sqrt(disc);
    let t = -0.5 * (b + if b < 0.0 { -s } else { s });
    out.push(t / a);
    if t != 0.0 {
        out.push(c / t);
    }
}

/// Search the reduced formula for `T_λ` against `T_μ`; see
/// [`reduced_search_with`].
pub fn reduced_search(lambda: ParamValue, mu: ParamValue, cfg: &SearchConfig) -> Option<ReducedWitness> {
    reduced_search_with(lambda, mu, cfg, Clauses::Both)
}

/// Grid scan over `(x, y, u, ṽ)` with `ṽ = y + t(1 + λy - y)` for `t` on the
/// interior grid, followed by coordinate descent on the larger of the two
/// inequalities from the [`MULTISTART`] best cells and from points along the
/// image of the diagonal. A witness is reported when every required
/// inequality is below `-cfg.tol`.
///
/// Returns `None` unless `0 < λ < μ < ∞` and `cfg` is valid.
pub fn reduced_search_with(
    lambda: ParamValue,
    mu: ParamValue,
    cfg: &SearchConfig,
    clauses: Clauses,
) -> Option<ReducedWitness> {
    cfg.validate().ok()?;
    let (l, m) = reduced_params(lambda, mu)?;
    let problem = Problem { lambda: l, mu: m, clauses };
    let n = cfg.grid_n;

    let cells = problem.scan(n).best;
    let grid_starts = multistart_points(&cells, n, cfg.seed).into_iter().map(|p| {
        let y = p.y;
        [p.x, y, p.u, problem.v_tilde(y, p.v)]
    });
    let starts: Vec<[f64; 4]> = grid_starts.chain(problem.curve_starts()).collect();

    let mut best: Option<([f64; 4], f64)> = None;
    for s in starts {
        let (p, value) = problem.refine(s, cfg.refine_iters);
        if best.map_or(true, |(_, b)| value < b) {
            best = Some((p, value));
        }
    }
    let (p, value) = best?;
    let [x, y, u, v_tilde] = p;
    (value < -cfg.tol && in_domain(l, x, y, u, v_tilde)).then(|| {
        let (ineq_a, ineq_b) = problem.parts(p);
        ReducedWitness { x, y, u, v_tilde, ineq_a, ineq_b }
    })
}
