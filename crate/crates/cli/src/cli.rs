//! Command-line interface.
//!
//! Exit status: 0 on success, 1 when a search contradicts the closed form,
//! a suite or order check fails, or output cannot be written, and 2 on
//! usage errors.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::value::RawValue;
use swdom_core::law::{dominated_set, r_star};
use swdom_core::order::check_order_properties;
use swdom_core::{
    boundary_curve, dominance_gap, dominates_closed_form, sample_region, FalsifyResult, ParamValue, Point, Scale,
    SearchConfig, TNormId, UnitValue,
};

use crate::export::{fmt17, write_curve, write_region, ExportError, Format};
use crate::parallel::falsify_par;
use crate::verify::{run_suite, Suite};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILURE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "swdom", version, about = "Dominance between Sugeno-Weber t-norms")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ScaleArg {
    Linear,
    Log,
}

impl From<ScaleArg> for Scale {
    fn from(s: ScaleArg) -> Scale {
        match s {
            ScaleArg::Linear => Scale::Linear,
            ScaleArg::Log => Scale::Log,
        }
    }
}

#[derive(Debug, clap::Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide dominance of T_lambda over T_mu by the closed form.
    Check { lambda: ParamValue, mu: ParamValue },
    /// Search numerically for a counterexample to dominance.
    Falsify {
        lambda: ParamValue,
        mu: ParamValue,
        #[arg(long = "grid", default_value_t = 48)]
        grid_n: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Dominance gap at one point; negative means a violation.
    Gap {
        lambda: ParamValue,
        mu: ParamValue,
        #[arg(value_parser = parse_unit)]
        x: UnitValue,
        #[arg(value_parser = parse_unit)]
        y: UnitValue,
        #[arg(value_parser = parse_unit)]
        u: UnitValue,
        #[arg(value_parser = parse_unit)]
        v: UnitValue,
    },
    /// Closed-form verdicts on an n x n grid of (lambda, mu).
    Region {
        #[arg(long, num_args = 2, value_names = ["LO", "HI"], default_values_t = [0.01, 1000.0])]
        lambda_range: Vec<f64>,
        #[arg(long, num_args = 2, value_names = ["LO", "HI"], default_values_t = [0.01, 1000.0])]
        mu_range: Vec<f64>,
        #[arg(short, default_value_t = 200)]
        n: usize,
        #[arg(long, value_enum, default_value_t = ScaleArg::Log)]
        scale: ScaleArg,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Samples of the boundary lambda = f(mu) for mu above 17 + 12√2.
    Boundary {
        #[arg(long, default_value_t = 34.0)]
        mu_lo: f64,
        #[arg(long, default_value_t = 1000.0)]
        mu_hi: f64,
        #[arg(short, default_value_t = 200)]
        n: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// The set of parameters dominated by T_alpha.
    DominatedSet { alpha: ParamValue },
    /// Order properties of dominance on random parameters plus 0 and inf.
    Transitivity {
        #[arg(long, default_value_t = 200)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run an invariant suite.
    Verify {
        #[arg(value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// The Mulholland constant r*.
    Rstar,
}

fn parse_unit(s: &str) -> Result<UnitValue, String> {
    let v: f64 = s.trim().parse().map_err(|e| format!("{e}"))?;
    UnitValue::new(v).map_err(|e| e.to_string())
}

/// A command failure with its exit status.
#[derive(Debug)]
pub struct Failure {
    pub status: u8,
    pub message: String,
}

impl Failure {
    fn usage(message: impl ToString) -> Self {
        Failure { status: EXIT_USAGE, message: message.to_string() }
    }

    fn runtime(message: impl ToString) -> Self {
        Failure { status: EXIT_FAILURE, message: message.to_string() }
    }
}

impl From<ExportError> for Failure {
    fn from(e: ExportError) -> Self {
        Failure::runtime(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::runtime(e)
    }
}

/// Parse `args` (program name first) and run the command. Reports go to
/// `out`, diagnostics to `err`; returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = write!(out, "{e}");
            return EXIT_OK;
        }
        Err(e) => {
            let text = e.to_string();
            let line = text.lines().next().unwrap_or("error: invalid usage");
            let _ = writeln!(err, "{line}");
            return EXIT_USAGE;
        }
    };
    match execute(cli.command, out, err) {
        Ok(status) => status,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.status
        }
    }
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<u8, Failure> {
    match command {
        Command::Check { lambda, mu } => {
            writeln!(out, "{}", dominates_closed_form(lambda, mu))?;
            Ok(EXIT_OK)
        }
        Command::Falsify { lambda, mu, grid_n, tol, seed } => {
            let cfg = SearchConfig { grid_n, tol, seed, ..Default::default() };
            let result = falsify_par(lambda, mu, &cfg).map_err(Failure::usage)?;
            let verdict = dominates_closed_form(lambda, mu);
            serde_json::to_writer(&mut *out, &FalsifyReport::new(&result, verdict.to_string()))
                .map_err(Failure::runtime)?;
            writeln!(out)?;
            match (result.is_violation(), verdict.dominates()) {
                (true, true) => {
                    writeln!(err, "witness contradicts the closed form")?;
                    Ok(EXIT_FAILURE)
                }
                (false, false) => {
                    writeln!(err, "no witness found although the closed form denies dominance")?;
                    Ok(EXIT_OK)
                }
                _ => Ok(EXIT_OK),
            }
        }
        Command::Gap { lambda, mu, x, y, u, v } => {
            let g = dominance_gap(TNormId::SugenoWeber(lambda), TNormId::SugenoWeber(mu), x, y, u, v);
            writeln!(out, "{}", fmt17(g))?;
            Ok(EXIT_OK)
        }
        Command::Region { lambda_range, mu_range, n, scale, output } => {
            let grid = sample_region((lambda_range[0], lambda_range[1]), (mu_range[0], mu_range[1]), n, scale.into())
                .map_err(Failure::usage)?;
            with_output(&output, out, |w| write_region(&grid, output.format, w))?;
            Ok(EXIT_OK)
        }
        Command::Boundary { mu_lo, mu_hi, n, output } => {
            let curve = boundary_curve(mu_lo, mu_hi, n).map_err(Failure::usage)?;
            with_output(&output, out, |w| write_curve(&curve, output.format, w))?;
            Ok(EXIT_OK)
        }
        Command::DominatedSet { alpha } => {
            writeln!(out, "{}", dominated_set(alpha))?;
            Ok(EXIT_OK)
        }
        Command::Transitivity { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut params: Vec<ParamValue> = (0..count)
                .map(|_| ParamValue::new(10f64.powf(rng.random_range(-2.0..3.0))).expect("positive"))
                .collect();
            params.extend([ParamValue::ZERO, ParamValue::INFINITY]);
            let report = check_order_properties(&params);
            writeln!(out, "size {}", report.size)?;
            writeln!(out, "reflexive {}", report.reflexive)?;
            writeln!(out, "antisymmetric {}", report.antisymmetric)?;
            writeln!(out, "transitive {}", report.transitive)?;
            writeln!(out, "comparability {}", report.comparability)?;
            writeln!(out, "chains {}", report.chains)?;
            let [trivial, middle, low] = report.case_counts;
            writeln!(
                out,
                "argument trivial={trivial} middle-band={middle} low-middle={low} failed={}",
                report.argument_failures
            )?;
            if let Some((i, j, k)) = report.violating_triple {
                writeln!(out, "violating triple {} {} {}", params[i], params[j], params[k])?;
            }
            Ok(if report.all_hold() { EXIT_OK } else { EXIT_FAILURE })
        }
        Command::Verify { suite, seed } => {
            let checks = run_suite(suite, seed);
            let failed = checks.iter().filter(|c| !c.passed).count();
            for c in &checks {
                let tag = if c.passed { "PASS" } else { "FAIL" };
                if c.detail.is_empty() {
                    writeln!(out, "{tag} {}/{}", c.suite, c.name)?;
                } else {
                    writeln!(out, "{tag} {}/{}: {}", c.suite, c.name, c.detail)?;
                }
            }
            writeln!(out, "{} checks, {failed} failed", checks.len())?;
            Ok(if failed == 0 { EXIT_OK } else { EXIT_FAILURE })
        }
        Command::Rstar => {
            // r* lies in (1, 10): one digit before the point, eleven after.
            writeln!(out, "{:.11}", r_star())?;
            Ok(EXIT_OK)
        }
    }
}

fn with_output(
    output: &OutputArgs,
    stdout: &mut dyn Write,
    write: impl FnOnce(&mut dyn Write) -> Result<(), ExportError>,
) -> Result<(), Failure> {
    match &output.out {
        Some(path) => {
            let file = File::create(path).map_err(|e| Failure::runtime(format!("{}: {e}", path.display())))?;
            let mut w = BufWriter::new(file);
            write(&mut w)?;
            w.flush()?;
        }
        None => write(stdout)?,
    }
    Ok(())
}

fn num(x: f64) -> Box<RawValue> {
    RawValue::from_string(fmt17(x)).expect("finite float is valid JSON")
}

#[derive(Serialize)]
struct JsonPoint {
    x: Box<RawValue>,
    y: Box<RawValue>,
    u: Box<RawValue>,
    v: Box<RawValue>,
}

impl From<Point> for JsonPoint {
    fn from(p: Point) -> Self {
        JsonPoint { x: num(p.x), y: num(p.y), u: num(p.u), v: num(p.v) }
    }
}

#[derive(Serialize)]
struct JsonWitness {
    x: Box<RawValue>,
    y: Box<RawValue>,
    u: Box<RawValue>,
    v: Box<RawValue>,
    gap: Box<RawValue>,
}

#[derive(Serialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
enum FalsifyReport {
    ViolationFound { closed_form: String, witness: JsonWitness },
    NoViolationFound { closed_form: String, min_gap: Box<RawValue>, argmin: JsonPoint },
}

impl FalsifyReport {
    fn new(result: &FalsifyResult, closed_form: String) -> Self {
        match *result {
            FalsifyResult::ViolationFound(w) => {
                let p = w.point;
                let witness = JsonWitness { x: num(p.x), y: num(p.y), u: num(p.u), v: num(p.v), gap: num(w.gap) };
                FalsifyReport::ViolationFound { closed_form, witness }
            }
            FalsifyResult::NoViolationFound { min_gap, argmin } => {
                FalsifyReport::NoViolationFound { closed_form, min_gap: num(min_gap), argmin: argmin.into() }
            }
        }
    }
}
