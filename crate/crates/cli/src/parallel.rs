//! Multi-threaded drivers for the falsifier.
//!
//! Results are bit-identical to the sequential [`swdom_core::falsify`]:
//! scan partitions are merged in row order with the same tie-break and the
//! refined points are collected in start order.

use rayon::prelude::*;
use swdom_core::falsify::{conclude, search_starts, trivial_outcome, GridScan, ScanResult, MULTISTART};
use swdom_core::{refine_witness, FalsifyResult, ParamValue, Result, SearchConfig, TNormId};

/// Rows of the grid handed to one task.
const ROWS_PER_TASK: usize = 2;

/// [`swdom_core::falsify`] with the grid scan and the refinements spread
/// over the current rayon pool.
pub fn falsify_par(lambda: ParamValue, mu: ParamValue, cfg: &SearchConfig) -> Result<FalsifyResult> {
    cfg.validate()?;
    if let Some(outcome) = trivial_outcome(lambda, mu) {
        return Ok(outcome);
    }
    let (t1, t2) = (TNormId::SugenoWeber(lambda), TNormId::SugenoWeber(mu));
    let n = cfg.grid_n;
    let scan = GridScan::new(t1, t2, n);
    let parts: Vec<ScanResult> = (0..n)
        .into_par_iter()
        .step_by(ROWS_PER_TASK)
        .map(|start| scan.scan_rows(start..(start + ROWS_PER_TASK).min(n), MULTISTART))
        .collect();
    let result = parts.into_iter().fold(ScanResult::empty(MULTISTART), ScanResult::merge);
    let grid_best = scan.point(result.min_gap.expect("grid has at least one cell").index);
    let refined = match (lambda.as_finite(), mu.as_finite()) {
        (Some(l), Some(m)) => search_starts(l, m, &result.best, cfg)
            .into_par_iter()
            .map(|s| refine_witness(lambda, mu, s, cfg))
            .collect::<Result<Vec<_>>>()?,
        _ => Vec::new(),
    };
    Ok(conclude(t1, t2, grid_best, &refined, cfg.tol))
}

/// Sequential [`swdom_core::falsify`] for many pairs, one pair per task.
pub fn falsify_many(pairs: &[(ParamValue, ParamValue)], cfg: &SearchConfig) -> Result<Vec<FalsifyResult>> {
    pairs.par_iter().map(|&(l, m)| swdom_core::falsify(l, m, cfg)).collect()
}
