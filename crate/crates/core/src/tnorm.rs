//! The basic t-norms, the Sugeno-Weber family and the raw terms of the
//! dominance inequality.

use crate::{ParamValue, Result, UnitValue};

/// Identifies one t-norm.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TNormId {
    Minimum,
    Product,
    Lukasiewicz,
    Drastic,
    SugenoWeber(ParamValue),
}

/// Continuity class of a family member.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    /// Continuous and strictly monotone; only the product.
    Strict,
    /// Continuous with every interior element nilpotent.
    Nilpotent,
    /// The drastic product.
    NotContinuous,
}

#[inline]
pub(crate) fn drastic(u: f64, v: f64) -> f64 {
    if u == 1.0 {
        v
    } else if v == 1.0 {
        u
    } else {
        0.0
    }
}

/// `u + v - 1` as `min - (1 - max)`: symmetric bit for bit and exact when
/// either argument is 1.
#[inline]
pub(crate) fn lukasiewicz_unclamped(u: f64, v: f64) -> f64 {
    let (lo, hi) = if u <= v { (u, v) } else { (v, u) };
    lo - (1.0 - hi)
}

#[inline]
pub(crate) fn lukasiewicz(u: f64, v: f64) -> f64 {
    lukasiewicz_unclamped(u, v).max(0.0)
}

/// Unclamped Sugeno-Weber form for a finite parameter, written as
/// `uv - lambda (1-u)(1-v)`, which equals `(1-lambda)uv + lambda(u+v-1)` and
/// returns `u` exactly when `v == 1`.
#[inline]
pub(crate) fn sw_form(lambda: f64, u: f64, v: f64) -> f64 {
    u * v - lambda * ((1.0 - u) * (1.0 - v))
}

/// Sugeno-Weber member with a raw parameter, `f64::INFINITY` meaning drastic.
#[inline]
pub(crate) fn sw_raw(lambda: f64, u: f64, v: f64) -> f64 {
    if lambda == 0.0 {
        u * v
    } else if lambda == 1.0 {
        lukasiewicz(u, v)
    } else if lambda == f64::INFINITY {
        drastic(u, v)
    } else {
        sw_form(lambda, u, v).max(0.0)
    }
}

/// [`sw_raw`] without the clamp at zero.
#[inline]
pub(crate) fn sw_unclamped(lambda: f64, u: f64, v: f64) -> f64 {
    if lambda == 0.0 {
        u * v
    } else if lambda == 1.0 {
        lukasiewicz_unclamped(u, v)
    } else if lambda == f64::INFINITY {
        drastic(u, v)
    } else {
        sw_form(lambda, u, v)
    }
}

impl TNormId {
    /// Evaluate on raw floats assumed to lie in `[0, 1]`.
    #[inline]
    pub fn eval_raw(self, u: f64, v: f64) -> f64 {
        match self {
            TNormId::Minimum => u.min(v),
            TNormId::Product => u * v,
            TNormId::Lukasiewicz => lukasiewicz(u, v),
            TNormId::Drastic => drastic(u, v),
            TNormId::SugenoWeber(p) => sw_raw(p.get(), u, v),
        }
    }

    /// Like [`eval_raw`](Self::eval_raw) but without the clamp at zero for
    /// the Łukasiewicz and finite Sugeno-Weber forms.
    #[inline]
    pub fn eval_unclamped(self, u: f64, v: f64) -> f64 {
        match self {
            TNormId::Lukasiewicz => lukasiewicz_unclamped(u, v),
            TNormId::SugenoWeber(p) => sw_unclamped(p.get(), u, v),
            other => other.eval_raw(u, v),
        }
    }

    pub fn eval(self, u: UnitValue, v: UnitValue) -> UnitValue {
        UnitValue::new_unchecked(self.eval_raw(u.get(), v.get()))
    }
}

/// The Sugeno-Weber t-norm with parameter `lambda`.
///
/// `lambda = 0` is the product, `lambda = ∞` the drastic product and
/// `lambda = 1` the Łukasiewicz t-norm; every other parameter gives
/// `max(0, (1-lambda)uv + lambda(u+v-1))`.
pub fn tsw_eval(lambda: ParamValue, u: UnitValue, v: UnitValue) -> UnitValue {
    UnitValue::new_unchecked(sw_raw(lambda.get(), u.get(), v.get()))
}

pub fn tnorm_eval(id: TNormId, u: UnitValue, v: UnitValue) -> UnitValue {
    id.eval(u, v)
}

pub fn family_class(lambda: ParamValue) -> Classification {
    if lambda.is_zero() {
        Classification::Strict
    } else if lambda.is_infinite() {
        Classification::NotContinuous
    } else {
        Classification::Nilpotent
    }
}

/// The four unclamped bilinear forms inside the dominance inequality for
/// `T_lambda >> T_mu`.
///
/// Each `(1-p)ab + p(a+b-1)` is evaluated as `ab - p(1-a)(1-b)`, the
/// arrangement the t-norms themselves use, so that the clamped sides
/// reproduce the dominance gap bit for bit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InnerTerms {
    /// `(1-lambda)ux + lambda(u+x-1)`
    pub x1: f64,
    /// `(1-lambda)vy + lambda(v+y-1)`
    pub x2: f64,
    /// `(1-mu)uv + mu(u+v-1)`
    pub x3: f64,
    /// `(1-mu)xy + mu(x+y-1)`
    pub x4: f64,
}

pub(crate) fn inner_terms_raw(lambda: f64, mu: f64, x: f64, y: f64, u: f64, v: f64) -> InnerTerms {
    InnerTerms { x1: sw_form(lambda, u, x), x2: sw_form(lambda, v, y), x3: sw_form(mu, u, v), x4: sw_form(mu, x, y) }
}

pub fn inner_terms(
    lambda: ParamValue,
    mu: ParamValue,
    x: UnitValue,
    y: UnitValue,
    u: UnitValue,
    v: UnitValue,
) -> Result<InnerTerms> {
    Ok(inner_terms_raw(lambda.try_finite()?, mu.try_finite()?, x.get(), y.get(), u.get(), v.get()))
}

/// The two sides `A` (left) and `B` (right) of the dominance inequality
/// before the outer clamp; `max(0, A) - max(0, B)` is the dominance gap.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sides {
    pub a: f64,
    pub b: f64,
}

impl Sides {
    pub fn gap(self) -> f64 {
        self.a.max(0.0) - self.b.max(0.0)
    }
}

pub(crate) fn sides_raw(lambda: f64, mu: f64, t: &InnerTerms) -> Sides {
    let c1 = t.x1.max(0.0);
    let c2 = t.x2.max(0.0);
    let c3 = t.x3.max(0.0);
    let c4 = t.x4.max(0.0);
    Sides { a: sw_form(lambda, c3, c4), b: sw_form(mu, c1, c2) }
}

pub fn sides_ab(
    lambda: ParamValue,
    mu: ParamValue,
    x: UnitValue,
    y: UnitValue,
    u: UnitValue,
    v: UnitValue,
) -> Result<Sides> {
    let terms = inner_terms(lambda, mu, x, y, u, v)?;
    Ok(sides_raw(lambda.get(), mu.get(), &terms))
}

#[inline]
pub(crate) fn gap_raw(t1: TNormId, t2: TNormId, x: f64, y: f64, u: f64, v: f64) -> f64 {
    let lhs = t1.eval_raw(t2.eval_raw(x, y), t2.eval_raw(u, v));
    let rhs = t2.eval_raw(t1.eval_raw(x, u), t1.eval_raw(y, v));
    lhs - rhs
}

/// The gap with the outer clamp of the right-hand side removed.
///
/// Never below the gap, equal to it wherever the right-hand side is
/// positive, and hence negative exactly where the gap is. Unlike the gap it
/// keeps varying where the right-hand side is clamped to zero.
#[inline]
pub fn relaxed_gap_raw(t1: TNormId, t2: TNormId, x: f64, y: f64, u: f64, v: f64) -> f64 {
    let lhs = t1.eval_raw(t2.eval_raw(x, y), t2.eval_raw(u, v));
    let rhs = t2.eval_unclamped(t1.eval_raw(x, u), t1.eval_raw(y, v));
    lhs - rhs
}

/// `T1(T2(x,y), T2(u,v)) - T2(T1(x,u), T1(y,v))`.
///
/// `T1` dominates `T2` at this point iff the result is nonnegative.
pub fn dominance_gap(t1: TNormId, t2: TNormId, x: UnitValue, y: UnitValue, u: UnitValue, v: UnitValue) -> f64 {
    gap_raw(t1, t2, x.get(), y.get(), u.get(), v.get())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uv(v: f64) -> UnitValue {
        UnitValue::new(v).unwrap()
    }

    fn p(v: f64) -> ParamValue {
        ParamValue::new(v).unwrap()
    }

    #[test]
    fn family_examples() {
        assert_eq!(tsw_eval(p(0.0), uv(0.3), uv(0.5)).get(), 0.3 * 0.5);
        assert_eq!(tsw_eval(p(1.0), uv(0.5), uv(0.5)).get(), 0.0);
        assert_eq!(tsw_eval(ParamValue::INFINITY, uv(0.7), uv(1.0)).get(), 0.7);
        assert!((tsw_eval(p(2.0), uv(0.8), uv(0.9)).get() - 0.68).abs() < 1e-15);
    }

    #[test]
    fn basic_tnorm_examples() {
        assert_eq!(tnorm_eval(TNormId::Minimum, uv(0.2), uv(0.9)).get(), 0.2);
        assert!((tnorm_eval(TNormId::Lukasiewicz, uv(0.6), uv(0.7)).get() - 0.3).abs() < 1e-15);
        assert_eq!(tnorm_eval(TNormId::Drastic, uv(0.6), uv(0.7)).get(), 0.0);
        assert_eq!(tnorm_eval(TNormId::Drastic, uv(1.0), uv(0.7)).get(), 0.7);
    }

    #[test]
    fn special_members_coincide_with_basic_tnorms() {
        let grid: Vec<f64> = (0..=20).map(|i| i as f64 / 20.0).collect();
        for &a in &grid {
            for &b in &grid {
                let (a, b) = (uv(a), uv(b));
                assert_eq!(tsw_eval(p(0.0), a, b), tnorm_eval(TNormId::Product, a, b));
                assert_eq!(tsw_eval(p(1.0), a, b), tnorm_eval(TNormId::Lukasiewicz, a, b));
                assert_eq!(tsw_eval(ParamValue::INFINITY, a, b), tnorm_eval(TNormId::Drastic, a, b));
            }
        }
    }

    #[test]
    fn classification() {
        assert_eq!(family_class(p(0.0)), Classification::Strict);
        assert_eq!(family_class(p(1.0)), Classification::Nilpotent);
        assert_eq!(family_class(p(1e9)), Classification::Nilpotent);
        assert_eq!(family_class(ParamValue::INFINITY), Classification::NotContinuous);
    }

    #[test]
    fn inner_term_examples() {
        let t = inner_terms(p(1.0), p(1.0), uv(0.5), uv(0.5), uv(0.5), uv(0.5)).unwrap();
        assert_eq!((t.x1, t.x2, t.x3, t.x4), (0.0, 0.0, 0.0, 0.0));
        let t = inner_terms(p(2.0), p(3.0), uv(1.0), uv(1.0), uv(1.0), uv(1.0)).unwrap();
        assert_eq!((t.x1, t.x2, t.x3, t.x4), (1.0, 1.0, 1.0, 1.0));
        let t = inner_terms(p(2.0), p(10.0), uv(0.9), uv(0.9), uv(0.9), uv(0.9)).unwrap();
        for (got, want) in [(t.x1, 0.79), (t.x2, 0.79), (t.x3, 0.71), (t.x4, 0.71)] {
            assert!((got - want).abs() < 1e-14, "{got} vs {want}");
        }
        assert_eq!(
            inner_terms(ParamValue::INFINITY, p(1.0), uv(0.5), uv(0.5), uv(0.5), uv(0.5)),
            Err(crate::Error::InfiniteParameter)
        );
    }

    #[test]
    fn sides_examples() {
        let s = sides_ab(p(2.0), p(10.0), uv(1.0), uv(1.0), uv(1.0), uv(1.0)).unwrap();
        assert_eq!((s.a, s.b), (1.0, 1.0));
        let s = sides_ab(p(2.0), p(10.0), uv(0.1), uv(0.1), uv(0.1), uv(0.1)).unwrap();
        assert_eq!((s.a, s.b), (-2.0, -10.0));
        assert!(sides_ab(p(2.0), ParamValue::INFINITY, uv(0.1), uv(0.1), uv(0.1), uv(0.1)).is_err());
    }

    #[test]
    fn gap_at_the_corner_is_zero() {
        let one = uv(1.0);
        let g = dominance_gap(TNormId::SugenoWeber(p(2.0)), TNormId::SugenoWeber(p(10.0)), one, one, one, one);
        assert_eq!(g, 0.0);
    }

    #[test]
    fn gap_pairs_variables_as_defined() {
        // The minimum dominates the product, not the other way round.
        let (x, y, u, v) = (uv(0.5), uv(1.0), uv(1.0), uv(0.5));
        let g = dominance_gap(TNormId::Product, TNormId::Minimum, x, y, u, v);
        assert!((g - (0.25 - 0.5)).abs() < 1e-15);
        assert!(dominance_gap(TNormId::Minimum, TNormId::Product, x, y, u, v) >= 0.0);
    }
}
