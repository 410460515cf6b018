//! Closed-form dominance between Sugeno-Weber t-norms.
//!
//! `T_lambda` dominates `T_mu` exactly when one of five conditions holds:
//!
//! 1. `lambda = 0`,
//! 2. `mu = ∞`,
//! 3. `lambda = mu`,
//! 4. `0 < lambda < mu <= 17 + 12√2`,
//! 5. `mu > 17 + 12√2` and `0 < lambda <= f(mu)`,
//!
//! with the decreasing involution `f(x) = ((1 - 3√x) / (3 - √x))²` on
//! `(9, ∞)`. An equivalent square-root form is implemented separately in
//! [`dominates_equiv_form`] so the two can be cross-checked.

use core::fmt;
use core::sync::atomic::{AtomicU64, Ordering};

use libm::{log, sqrt};

use crate::{Error, ParamValue, Result};

/// `17 + 12√2 = (3 + 2√2)²`, the fixpoint of [`f_eval`], correctly rounded.
pub const R_CRIT: f64 = 33.970_562_748_477_14;

/// Lower end of the domain of [`f_eval`]; `f` has a pole there.
pub const F_POLE: f64 = 9.0;

/// `((1 - 3√x) / (3 - √x))²` for `x > 9`.
pub fn f_eval(x: f64) -> Result<f64> {
    // `!(x > 9)` also rejects NaN.
    if !(x > F_POLE) || x.is_infinite() {
        return Err(Error::OutsideDomain { what: "f", value: x });
    }
    Ok(f_unchecked(x))
}

#[inline]
pub(crate) fn f_unchecked(x: f64) -> f64 {
    let s = sqrt(x);
    let q = (1.0 - 3.0 * s) / (3.0 - s);
    q * q
}

/// `ln²t + ln t - t + 1`, whose roots are `t = 1` and `t = r*`.
pub fn mulholland_g(t: f64) -> f64 {
    let l = log(t);
    l * l + l - t + 1.0
}

const R_STAR_BRACKET: (f64, f64) = (2.0, 10.0);
const R_STAR_TOL: f64 = 1e-10;

fn bisect_r_star() -> f64 {
    let (mut lo, mut hi) = R_STAR_BRACKET;
    // g(lo) > 0 > g(hi) on the fixed bracket.
    while hi - lo > R_STAR_TOL {
        let mid = 0.5 * (lo + hi);
        if mulholland_g(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

static R_STAR_BITS: AtomicU64 = AtomicU64::new(0);

/// The second root of `ln²t + ln t - t + 1`, found by bisection on `[2, 10]`.
///
/// Computed on first use and cached.
pub fn r_star() -> f64 {
    let bits = R_STAR_BITS.load(Ordering::Relaxed);
    if bits != 0 {
        return f64::from_bits(bits);
    }
    let r = bisect_r_star();
    R_STAR_BITS.store(r.to_bits(), Ordering::Relaxed);
    r
}

/// The two constants the dominance law depends on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalConstants {
    pub r_crit: f64,
    pub r_star: f64,
}

impl CriticalConstants {
    pub fn get() -> Self {
        CriticalConstants { r_crit: R_CRIT, r_star: r_star() }
    }
}

/// Which of the five conditions established dominance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConditionTag {
    /// `lambda = 0`
    I,
    /// `mu = ∞`
    II,
    /// `lambda = mu`
    III,
    /// `0 < lambda < mu <= 17 + 12√2`
    IV,
    /// `mu > 17 + 12√2` and `0 < lambda <= f(mu)`
    V,
}

impl ConditionTag {
    pub const ALL: [ConditionTag; 5] =
        [ConditionTag::I, ConditionTag::II, ConditionTag::III, ConditionTag::IV, ConditionTag::V];

    /// Lowercase roman numeral.
    pub fn as_str(self) -> &'static str {
        match self {
            ConditionTag::I => "i",
            ConditionTag::II => "ii",
            ConditionTag::III => "iii",
            ConditionTag::IV => "iv",
            ConditionTag::V => "v",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        ConditionTag::ALL.into_iter().find(|t| t.as_str() == s)
    }
}

impl fmt::Display for ConditionTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DominanceVerdict {
    Dominates(ConditionTag),
    DoesNotDominate,
}

impl DominanceVerdict {
    pub fn dominates(self) -> bool {
        matches!(self, DominanceVerdict::Dominates(_))
    }

    pub fn condition(self) -> Option<ConditionTag> {
        match self {
            DominanceVerdict::Dominates(tag) => Some(tag),
            DominanceVerdict::DoesNotDominate => None,
        }
    }
}

impl fmt::Display for DominanceVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DominanceVerdict::Dominates(tag) => write!(f, "dominates ({tag})"),
            DominanceVerdict::DoesNotDominate => f.write_str("does-not-dominate"),
        }
    }
}

/// Decide whether `T_lambda` dominates `T_mu`.
///
/// Conditions are tried in order and the first match is reported, so
/// `(0, 0)` is tagged `I` rather than `III`. Comparisons against
/// [`R_CRIT`] are exact.
pub fn dominates_closed_form(lambda: ParamValue, mu: ParamValue) -> DominanceVerdict {
    use ConditionTag::*;
    let (l, m) = (lambda.get(), mu.get());
    let tag = if lambda.is_zero() {
        Some(I)
    } else if mu.is_infinite() {
        Some(II)
    } else if lambda == mu {
        Some(III)
    } else if 0.0 < l && l < m && m <= R_CRIT {
        Some(IV)
    } else if m > R_CRIT && 0.0 < l && l <= f_unchecked(m) {
        // mu is finite here, so f(mu) is defined.
        Some(V)
    } else {
        None
    };
    tag.map_or(DominanceVerdict::DoesNotDominate, DominanceVerdict::Dominates)
}

/// The square-root formulation of the same relation: besides the three
/// trivial cases, either `0 < lambda < min(mu, 1)` or `0 < lambda < mu` with
/// `1 + √(lambda·mu) <= 3(√lambda + √mu)`.
pub fn dominates_equiv_form(lambda: ParamValue, mu: ParamValue) -> bool {
    if lambda.is_zero() || mu.is_infinite() || lambda == mu {
        return true;
    }
    let (l, m) = (lambda.get(), mu.get());
    if !(0.0 < l && l < m) {
        return false;
    }
    if l < m.min(1.0) {
        return true;
    }
    1.0 + sqrt(l * m) <= 3.0 * (sqrt(l) + sqrt(m))
}

/// Sufficient conditions known before the full characterization:
/// `lambda <= min(1, mu)` or `1 < lambda <= mu <= r*`.
pub fn sufficient_mulholland(lambda: ParamValue, mu: ParamValue) -> bool {
    let (l, m) = (lambda.get(), mu.get());
    l <= m.min(1.0) || (1.0 < l && l <= m && m <= r_star())
}

/// Upper end `f(alpha)` of the finite part of the dominated set of
/// `T_alpha`, defined for `9 < alpha <= 17 + 12√2`.
pub fn beta_of(alpha: f64) -> Result<f64> {
    if !(alpha > F_POLE && alpha <= R_CRIT) {
        return Err(Error::OutsideDomain { what: "beta", value: alpha });
    }
    Ok(f_unchecked(alpha))
}

/// Shape of `{beta | T_alpha >> T_beta}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DominatedShape {
    /// `[alpha, ∞]`, for `alpha <= 9`.
    FullTail,
    /// `[alpha, beta] ∪ {∞}` with `beta = f(alpha)`, for `9 < alpha < 17 + 12√2`.
    IntervalPlusInfinity { beta: f64 },
    /// `{alpha, ∞}`, for `alpha >= 17 + 12√2`.
    SelfAndInfinity,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DominatedSet {
    pub alpha: ParamValue,
    pub shape: DominatedShape,
}

impl DominatedSet {
    pub fn contains(&self, beta: ParamValue) -> bool {
        let alpha = self.alpha;
        if beta.is_infinite() || beta == alpha {
            return true;
        }
        if beta < alpha {
            return false;
        }
        match self.shape {
            DominatedShape::SelfAndInfinity => false,
            // Past the critical constant the endpoint test is written as
            // alpha <= f(beta), the same comparison the closed form makes.
            DominatedShape::FullTail | DominatedShape::IntervalPlusInfinity { .. } => {
                let b = beta.get();
                b <= R_CRIT || alpha.get() <= f_unchecked(b)
            }
        }
    }
}

impl fmt::Display for DominatedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.shape {
            DominatedShape::FullTail => write!(f, "[{}, inf]", self.alpha),
            DominatedShape::IntervalPlusInfinity { beta } => write!(f, "[{}, {}] ∪ {{inf}}", self.alpha, beta),
            DominatedShape::SelfAndInfinity if self.alpha.is_infinite() => f.write_str("{inf}"),
            DominatedShape::SelfAndInfinity => write!(f, "{{{}, inf}}", self.alpha),
        }
    }
}

pub fn dominated_set(alpha: ParamValue) -> DominatedSet {
    let a = alpha.get();
    let shape = if a <= F_POLE {
        DominatedShape::FullTail
    } else if a < R_CRIT {
        DominatedShape::IntervalPlusInfinity { beta: f_unchecked(a) }
    } else {
        DominatedShape::SelfAndInfinity
    };
    DominatedSet { alpha, shape }
}
