//! CSV and JSON files for region grids and boundary curves.
//!
//! Numbers are written with 17 significant digits so every `f64` reads back
//! to the same bits.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};
use serde_json::value::RawValue;
use swdom_core::law::{ConditionTag, CriticalConstants};
use swdom_core::{BoundaryCurve, RegionGrid};

#[derive(Debug, thiserror::Error)]
pub enum ExportError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("line {line}: {msg}")]
    Parse { line: u64, msg: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// `x` with 17 significant digits, e.g. `3.3970562748477141e1`.
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

fn raw_number(x: f64) -> Box<RawValue> {
    // `{:e}` never produces NaN or inf for the finite values written here.
    RawValue::from_string(fmt17(x)).expect("finite float is valid JSON")
}

/// One row of a region export.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionRecord {
    pub lambda: f64,
    pub mu: f64,
    pub dominates: bool,
    pub condition: Option<ConditionTag>,
}

fn records(grid: &RegionGrid) -> impl Iterator<Item = RegionRecord> + '_ {
    grid.cells().map(|c| RegionRecord { lambda: c.lambda, mu: c.mu, dominates: c.dominates, condition: c.condition })
}

#[derive(Serialize)]
struct JsonRegionRecord {
    lambda: Box<RawValue>,
    mu: Box<RawValue>,
    dominates: bool,
    condition: Option<&'static str>,
}

#[derive(Serialize)]
struct JsonCurveRecord {
    lambda: Box<RawValue>,
    mu: Box<RawValue>,
}

#[derive(Serialize)]
struct Constants {
    r_crit: Box<RawValue>,
    r_star: Box<RawValue>,
}

#[derive(Serialize)]
struct Metadata {
    generator_version: &'static str,
    constants: Constants,
}

#[derive(Serialize)]
struct Document<T> {
    metadata: Metadata,
    records: Vec<T>,
}

fn metadata() -> Metadata {
    let c = CriticalConstants::get();
    Metadata {
        generator_version: concat!("swdom ", env!("CARGO_PKG_VERSION")),
        constants: Constants { r_crit: raw_number(c.r_crit), r_star: raw_number(c.r_star) },
    }
}

fn write_json<T: Serialize>(records: Vec<T>, out: &mut dyn Write) -> Result<(), ExportError> {
    serde_json::to_writer_pretty(&mut *out, &Document { metadata: metadata(), records })?;
    writeln!(out)?;
    Ok(())
}

/// Header `lambda,mu,dominates,condition`, one row per cell in row-major
/// order; `condition` is a roman numeral or empty.
pub fn write_region(grid: &RegionGrid, format: Format, out: &mut dyn Write) -> Result<(), ExportError> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["lambda", "mu", "dominates", "condition"])?;
            for r in records(grid) {
                let dominates = if r.dominates { "true" } else { "false" };
                let condition = r.condition.map_or("", ConditionTag::as_str);
                w.write_record([fmt17(r.lambda).as_str(), fmt17(r.mu).as_str(), dominates, condition])?;
            }
            w.flush()?;
        }
        Format::Json => {
            let rows = records(grid)
                .map(|r| JsonRegionRecord {
                    lambda: raw_number(r.lambda),
                    mu: raw_number(r.mu),
                    dominates: r.dominates,
                    condition: r.condition.map(ConditionTag::as_str),
                })
                .collect();
            write_json(rows, out)?;
        }
    }
    Ok(())
}

/// Header `lambda,mu`, one row per sample in order of increasing `mu`.
pub fn write_curve(curve: &BoundaryCurve, format: Format, out: &mut dyn Write) -> Result<(), ExportError> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["lambda", "mu"])?;
            for &(mu, lambda) in &curve.samples {
                w.write_record([fmt17(lambda), fmt17(mu)])?;
            }
            w.flush()?;
        }
        Format::Json => {
            let rows = curve
                .samples
                .iter()
                .map(|&(mu, lambda)| JsonCurveRecord { lambda: raw_number(lambda), mu: raw_number(mu) })
                .collect();
            write_json(rows, out)?;
        }
    }
    Ok(())
}

#[derive(Deserialize)]
struct CsvRegionRow {
    lambda: f64,
    mu: f64,
    dominates: bool,
    condition: String,
}

/// Parse a region CSV written by [`write_region`].
pub fn read_region_csv(input: impl Read) -> Result<Vec<RegionRecord>, ExportError> {
    let mut rdr = csv::Reader::from_reader(input);
    let mut out = Vec::new();
    for row in rdr.deserialize() {
        let row: CsvRegionRow = row?;
        let line = out.len() as u64 + 2;
        let condition = match row.condition.as_str() {
            "" => None,
            s => Some(
                ConditionTag::parse(s)
                    .ok_or_else(|| ExportError::Parse { line, msg: format!("unknown condition {s:?}") })?,
            ),
        };
        if condition.is_some() != row.dominates {
            return Err(ExportError::Parse { line, msg: "condition must be set exactly for dominating cells".into() });
        }
        out.push(RegionRecord { lambda: row.lambda, mu: row.mu, dominates: row.dominates, condition });
    }
    Ok(out)
}

/// Parse a curve CSV written by [`write_curve`] into `(lambda, mu)` rows.
pub fn read_curve_csv(input: impl Read) -> Result<Vec<(f64, f64)>, ExportError> {
    let mut rdr = csv::Reader::from_reader(input);
    rdr.deserialize().map(|r| r.map_err(ExportError::from)).collect()
}
