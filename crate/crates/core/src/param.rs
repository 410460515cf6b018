use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use crate::{Error, Result};

/// Slack tolerated when a coordinate computed by substitution lands just
/// outside `[0, 1]`.
pub const UNIT_SLACK: f64 = 1e-12;

/// A family parameter in `[0, ∞]`.
///
/// Infinity is stored as `f64::INFINITY`; NaN and negative values are
/// rejected at construction, so the derived total order is the usual one on
/// the extended half-line.
#[derive(Clone, Copy, PartialEq)]
pub struct ParamValue(f64);

impl ParamValue {
    pub const ZERO: ParamValue = ParamValue(0.0);
    pub const ONE: ParamValue = ParamValue(1.0);
    pub const INFINITY: ParamValue = ParamValue(f64::INFINITY);

    /// Accepts any nonnegative finite value or `+∞`.
    pub fn new(value: f64) -> Result<Self> {
        if value.is_nan() || value < 0.0 {
            return Err(Error::InvalidParameter(value));
        }
        Ok(ParamValue(value))
    }

    pub fn finite(value: f64) -> Result<Self> {
        if !value.is_finite() {
            return Err(Error::InvalidParameter(value));
        }
        Self::new(value)
    }

    pub fn is_infinite(self) -> bool {
        self.0 == f64::INFINITY
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0.0
    }

    /// The finite value, or `None` for infinity.
    pub fn as_finite(self) -> Option<f64> {
        if self.is_infinite() {
            None
        } else {
            Some(self.0)
        }
    }

    pub fn try_finite(self) -> Result<f64> {
        self.as_finite().ok_or(Error::InfiniteParameter)
    }

    /// Raw value, `f64::INFINITY` for the infinite parameter.
    pub fn get(self) -> f64 {
        self.0
    }
}

impl Eq for ParamValue {}

impl PartialOrd for ParamValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ParamValue {
    fn cmp(&self, other: &Self) -> Ordering {
        // Neither side is NaN.
        self.0.partial_cmp(&other.0).unwrap_or(Ordering::Equal)
    }
}

impl fmt::Debug for ParamValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for ParamValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            f.write_str("inf")
        } else {
            fmt::Display::fmt(&self.0, f)
        }
    }
}

impl FromStr for ParamValue {
    type Err = Error;

    /// Decimal literal or `inf`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") {
            return Ok(ParamValue::INFINITY);
        }
        let value: f64 = s.parse().map_err(|_| Error::InvalidParameter(f64::NAN))?;
        if value.is_infinite() {
            // "1e999" and friends are not an accepted spelling of infinity.
            return Err(Error::InvalidParameter(value));
        }
        ParamValue::new(value)
    }
}

impl TryFrom<f64> for ParamValue {
    type Error = Error;

    fn try_from(value: f64) -> Result<Self> {
        ParamValue::new(value)
    }
}

/// A point of the unit interval.
#[derive(Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct UnitValue(f64);

impl UnitValue {
    pub const ZERO: UnitValue = UnitValue(0.0);
    pub const ONE: UnitValue = UnitValue(1.0);

    /// Values within [`UNIT_SLACK`] of the interval are snapped onto it;
    /// anything further out is an error.
    pub fn new(v: f64) -> Result<Self> {
        if !(-UNIT_SLACK..=1.0 + UNIT_SLACK).contains(&v) {
            return Err(Error::OutOfUnitInterval(v));
        }
        Ok(UnitValue(v.clamp(0.0, 1.0)))
    }

    /// Callers guarantee `0 <= v <= 1`.
    pub(crate) const fn new_unchecked(v: f64) -> Self {
        UnitValue(v)
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

impl fmt::Debug for UnitValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(&self.0, f)
    }
}

impl fmt::Display for UnitValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl From<UnitValue> for f64 {
    fn from(v: UnitValue) -> f64 {
        v.0
    }
}

impl TryFrom<f64> for UnitValue {
    type Error = Error;

    fn try_from(value: f64) -> Result<Self> {
        UnitValue::new(value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn param_rejects_nan_and_negative() {
        assert!(ParamValue::new(f64::NAN).is_err());
        assert!(ParamValue::new(-1e-300).is_err());
        assert!(ParamValue::new(0.0).is_ok());
        assert!(ParamValue::finite(f64::INFINITY).is_err());
    }

    #[test]
    fn param_order_puts_infinity_last() {
        let a = ParamValue::new(1e300).unwrap();
        assert!(a < ParamValue::INFINITY);
        assert!(ParamValue::ZERO < a);
        assert_eq!(ParamValue::INFINITY.cmp(&ParamValue::INFINITY), Ordering::Equal);
    }

    #[test]
    fn param_parses_inf_token() {
        assert_eq!("inf".parse::<ParamValue>().unwrap(), ParamValue::INFINITY);
        assert_eq!("2.5".parse::<ParamValue>().unwrap().get(), 2.5);
        assert!("-3".parse::<ParamValue>().is_err());
        assert!("nan".parse::<ParamValue>().is_err());
        assert!("abc".parse::<ParamValue>().is_err());
        assert!("1e999".parse::<ParamValue>().is_err());
    }

    #[test]
    fn unit_value_snaps_within_slack_only() {
        assert_eq!(UnitValue::new(1.0 + 5e-13).unwrap().get(), 1.0);
        assert_eq!(UnitValue::new(-5e-13).unwrap().get(), 0.0);
        assert!(UnitValue::new(1.0 + 1e-9).is_err());
        assert!(UnitValue::new(-0.1).is_err());
        assert!(UnitValue::new(f64::NAN).is_err());
    }
}
