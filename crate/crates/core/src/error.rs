use thiserror::Error;

/// Errors raised by constructors and operations with restricted domains.
#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum Error {
    #[error("parameter must be a nonnegative number or infinity, got {0}")]
    InvalidParameter(f64),
    #[error("value {0} lies outside the unit interval")]
    OutOfUnitInterval(f64),
    #[error("operation requires a finite parameter")]
    InfiniteParameter,
    #[error("{what}: argument {value} outside the domain")]
    OutsideDomain { what: &'static str, value: f64 },
    #[error("invalid search configuration: {0}")]
    InvalidConfig(&'static str),
    #[error("invalid sampling range [{lo}, {hi}]")]
    InvalidRange { lo: f64, hi: f64 },
    #[error("at least two samples are required, got {0}")]
    TooFewSamples(usize),
    #[error("mapped coordinate {0} falls outside the open unit interval")]
    MappedOutsideCube(f64),
}

pub type Result<T> = core::result::Result<T, Error>;
