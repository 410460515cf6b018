//! Sampling of the solution set `{(λ, μ) | T_λ >> T_μ}` and of its curved
//! boundary `λ = f(μ)`.

use alloc::vec::Vec;

use crate::law::{dominates_closed_form, f_unchecked, R_CRIT};
use crate::{ConditionTag, DominanceVerdict, Error, ParamValue, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Scale {
    Linear,
    #[default]
    Log,
}

/// `n` strictly increasing samples from `lo` to `hi`, both included.
pub fn axis(lo: f64, hi: f64, n: usize, scale: Scale) -> Result<Vec<f64>> {
    if n < 2 {
        return Err(Error::TooFewSamples(n));
    }
    let lo_ok = match scale {
        Scale::Linear => lo >= 0.0,
        Scale::Log => lo > 0.0,
    };
    if !(lo_ok && lo < hi && hi.is_finite()) {
        return Err(Error::InvalidRange { lo, hi });
    }
    let last = (n - 1) as f64;
    let mut out: Vec<f64> = (0..n)
        .map(|k| {
            let t = k as f64 / last;
            match scale {
                Scale::Linear => lo + (hi - lo) * t,
                Scale::Log => libm::exp(libm::log(lo) + (libm::log(hi) - libm::log(lo)) * t),
            }
        })
        .collect();
    out[0] = lo;
    out[n - 1] = hi;
    if out.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidRange { lo, hi });
    }
    Ok(out)
}

/// Closed-form verdicts on a rectangular `(λ, μ)` grid.
#[derive(Debug, Clone, PartialEq)]
pub struct RegionGrid {
    pub lambdas: Vec<f64>,
    pub mus: Vec<f64>,
    /// Row-major: `verdicts[i * mus.len() + j]` is for `(lambdas[i], mus[j])`.
    pub verdicts: Vec<DominanceVerdict>,
}

/// One cell of a [`RegionGrid`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionCell {
    pub lambda: f64,
    pub mu: f64,
    pub dominates: bool,
    pub condition: Option<ConditionTag>,
}

impl RegionGrid {
    /// Evaluate the closed form on every pair of the given axes.
    pub fn from_axes(lambdas: Vec<f64>, mus: Vec<f64>) -> Result<Self> {
        let mut verdicts = Vec::with_capacity(lambdas.len() * mus.len());
        for &l in &lambdas {
            let lp = ParamValue::new(l)?;
            for &m in &mus {
                verdicts.push(dominates_closed_form(lp, ParamValue::new(m)?));
            }
        }
        Ok(RegionGrid { lambdas, mus, verdicts })
    }

    pub fn get(&self, i: usize, j: usize) -> DominanceVerdict {
        self.verdicts[i * self.mus.len() + j]
    }

    /// Cells in row-major order.
    pub fn cells(&self) -> impl Iterator<Item = RegionCell> + '_ {
        self.lambdas.iter().enumerate().flat_map(move |(i, &lambda)| {
            self.mus.iter().enumerate().map(move |(j, &mu)| {
                let v = self.get(i, j);
                RegionCell { lambda, mu, dominates: v.dominates(), condition: v.condition() }
            })
        })
    }

    /// Share of dominating cells.
    pub fn dominating_fraction(&self) -> f64 {
        let hits = self.verdicts.iter().filter(|v| v.dominates()).count();
        hits as f64 / self.verdicts.len() as f64
    }
}

/// `n x n` closed-form verdicts over the product of the two ranges.
pub fn sample_region(lambda_range: (f64, f64), mu_range: (f64, f64), n: usize, scale: Scale) -> Result<RegionGrid> {
    let lambdas = axis(lambda_range.0, lambda_range.1, n, scale)?;
    let mus = axis(mu_range.0, mu_range.1, n, scale)?;
    RegionGrid::from_axes(lambdas, mus)
}

/// Samples `(μ, f(μ))` of the curved part of the boundary.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryCurve {
    pub samples: Vec<(f64, f64)>,
}

/// `n` log-spaced samples of `λ = f(μ)` for `μ` from `mu_lo` to `mu_hi`;
/// requires `17 + 12√2 < mu_lo < mu_hi < ∞`.
pub fn boundary_curve(mu_lo: f64, mu_hi: f64, n: usize) -> Result<BoundaryCurve> {
    if !(mu_lo > R_CRIT) {
        return Err(Error::InvalidRange { lo: mu_lo, hi: mu_hi });
    }
    let mus = axis(mu_lo, mu_hi, n, Scale::Log)?;
    let samples: Vec<(f64, f64)> = mus.into_iter().map(|m| (m, f_unchecked(m))).collect();
    Ok(BoundaryCurve { samples })
}
