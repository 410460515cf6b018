//! Order properties of the dominance relation on a finite set of parameters.

use alloc::vec::Vec;

use crate::law::{dominated_set, dominates_closed_form, f_unchecked, DominatedShape, F_POLE, R_CRIT};
use crate::ParamValue;

/// Case of the direct transitivity argument that applies to a chain
/// `a >> b >> c` of pairwise distinct parameters with finite `c`.
///
/// There is no case for `b >= 17 + 12√2`: then `T_b` dominates only `b` and
/// `∞`, so such a chain cannot exist.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransitivityCase {
    /// Some parameters coincide or `c = ∞`; nothing to argue.
    Trivial,
    /// `9 < b < 17 + 12√2`: `c ∈ [b, f(b)] ⊆ [a, f(a)]`.
    MiddleBand,
    /// `b <= 9`: also `a <= 9`, and `T_a` dominates all `beta >= a`.
    LowMiddle,
}

/// Classify a chain and re-derive `a >> c` from the dominated-set
/// shapes instead of the closed form. Returns `None` when the
/// argument fails, which would falsify transitivity.
pub fn transitivity_argument(a: ParamValue, b: ParamValue, c: ParamValue) -> Option<TransitivityCase> {
    if a == b || b == c || a == c || c.is_infinite() {
        return Some(TransitivityCase::Trivial);
    }
    if !(a <= b && b <= c) {
        return None;
    }
    let bv = b.get();
    if bv >= R_CRIT {
        return None;
    }
    if bv > F_POLE {
        // c <= f(b) <= f(a) when a > 9, and a <= 9 dominates everything above.
        let c_ok = c.get() <= R_CRIT || b.get() <= f_unchecked(c.get());
        let a_ok = match dominated_set(a).shape {
            DominatedShape::FullTail => true,
            DominatedShape::IntervalPlusInfinity { beta } => {
                c.get() <= R_CRIT || c.get() <= beta || a.get() <= f_unchecked(c.get())
            }
            DominatedShape::SelfAndInfinity => false,
        };
        return (c_ok && a_ok).then_some(TransitivityCase::MiddleBand);
    }
    (a.get() <= F_POLE).then_some(TransitivityCase::LowMiddle)
}

/// Result of [`check_order_properties`].
#[derive(Debug, Clone, PartialEq, Default)]
pub struct OrderReport {
    pub size: usize,
    pub reflexive: bool,
    pub antisymmetric: bool,
    pub transitive: bool,
    /// `a >> b` always implies `a <= b`.
    pub comparability: bool,
    /// First `(i, j, k)` (lexicographically) with `p_i >> p_j >> p_k` but not `p_i >> p_k`.
    pub violating_triple: Option<(usize, usize, usize)>,
    /// Chains `p_i >> p_j >> p_k` examined.
    pub chains: usize,
    /// Chains per case of the direct argument, in the order of
    /// [`TransitivityCase`]; a chain where that argument failed is counted in
    /// `argument_failures`.
    pub case_counts: [usize; 3],
    pub argument_failures: usize,
}

impl OrderReport {
    pub fn all_hold(&self) -> bool {
        self.reflexive && self.antisymmetric && self.transitive && self.comparability && self.argument_failures == 0
    }
}

/// Build the dominance matrix of `params` with the closed form and check
/// reflexivity, antisymmetry, transitivity and that dominance implies `<=`.
pub fn check_order_properties(params: &[ParamValue]) -> OrderReport {
    let n = params.len();
    let mut rel = Vec::with_capacity(n * n);
    for &a in params {
        for &b in params {
            rel.push(dominates_closed_form(a, b).dominates());
        }
    }
    let r = |i: usize, j: usize| rel[i * n + j];

    let mut report = OrderReport {
        size: n,
        reflexive: true,
        antisymmetric: true,
        transitive: true,
        comparability: true,
        ..Default::default()
    };

    for i in 0..n {
        if !r(i, i) {
            report.reflexive = false;
        }
        for j in 0..n {
            if !r(i, j) {
                continue;
            }
            if params[i] > params[j] {
                report.comparability = false;
            }
            if r(j, i) && params[i] != params[j] {
                report.antisymmetric = false;
            }
            for k in 0..n {
                if !r(j, k) {
                    continue;
                }
                report.chains += 1;
                if !r(i, k) {
                    report.transitive = false;
                    report.violating_triple.get_or_insert((i, j, k));
                }
                match transitivity_argument(params[i], params[j], params[k]) {
                    Some(case) => report.case_counts[case as usize] += 1,
                    None => report.argument_failures += 1,
                }
            }
        }
    }
    report
}
