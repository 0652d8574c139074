//! Exact decimal thresholds and the comparison operators shared by the
//! constraint evaluator and the miners.
//!
//! Support-like quantities are ratios of transaction counts, so a threshold
//! typed as a decimal can be compared against them without any rounding:
//! `k / n >= p / q` is decided as `k * q >= p * n` in integer arithmetic.
//! Real-valued measures (lift, dependence) fall back to a fixed tolerance.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Tolerance applied when comparing real-valued measures.
pub const REAL_TOLERANCE: f64 = 1e-9;

const MAX_SCALE: u32 = 18;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ThresholdError {
    #[error("`{0}` is not a non-negative decimal number")]
    Malformed(String),
    #[error("`{0}` has more than {MAX_SCALE} fractional digits")]
    TooPrecise(String),
}

/// A non-negative rational `num / den`.
#[derive(Debug, Clone, Copy)]
pub struct Ratio {
    pub num: u128,
    pub den: u128,
}

impl Ratio {
    pub fn new(num: u128, den: u128) -> Self {
        Ratio { num, den }
    }

    pub fn is_defined(&self) -> bool {
        self.den != 0
    }

    pub fn as_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// Exact ordering by cross-multiplication. Both denominators must be
    /// non-zero.
    pub fn exact_cmp(&self, other: &Ratio) -> Ordering {
        debug_assert!(self.is_defined() && other.is_defined());
        match (self.num.checked_mul(other.den), other.num.checked_mul(self.den)) {
            (Some(a), Some(b)) => a.cmp(&b),
            // Only reachable with astronomically large operands.
            _ => self.as_f64().total_cmp(&other.as_f64()),
        }
    }
}

impl PartialEq for Ratio {
    fn eq(&self, other: &Self) -> bool {
        self.exact_cmp(other) == Ordering::Equal
    }
}

/// A decimal threshold kept as an exact rational.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Threshold {
    mantissa: u128,
    scale: u32,
}

impl Threshold {
    pub const ZERO: Threshold = Threshold { mantissa: 0, scale: 0 };

    /// Converts through the shortest decimal representation of `value`, so
    /// `Threshold::from_f64(0.3)` is exactly 3/10.
    pub fn from_f64(value: f64) -> Result<Self, ThresholdError> {
        if !value.is_finite() || value < 0.0 {
            return Err(ThresholdError::Malformed(value.to_string()));
        }
        value.to_string().parse()
    }

    pub fn ratio(&self) -> Ratio {
        Ratio::new(self.mantissa, 10u128.pow(self.scale))
    }

    pub fn as_f64(&self) -> f64 {
        self.ratio().as_f64()
    }

    /// `count / total >= self`. With `total == 0` this holds only for a zero
    /// threshold.
    pub fn met_by_count(&self, count: usize, total: usize) -> bool {
        let r = self.ratio();
        (count as u128) * r.den >= r.num * total as u128
    }

    /// `count / total < self`, the strict rarity test.
    pub fn exceeds_count(&self, count: usize, total: usize) -> bool {
        !self.met_by_count(count, total)
    }

    /// `value >= self` for a real-valued measure, within [`REAL_TOLERANCE`].
    pub fn met_by_real(&self, value: f64) -> bool {
        CmpOp::Ge.apply_real(value, self.as_f64())
    }
}

impl FromStr for Threshold {
    type Err = ThresholdError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let malformed = || ThresholdError::Malformed(text.to_string());
        let (int_part, frac_part) = match text.split_once('.') {
            Some((i, f)) => (i, f),
            None => (text, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(malformed());
        }
        let all_digits = |s: &str| s.bytes().all(|b| b.is_ascii_digit());
        if !all_digits(int_part) || !all_digits(frac_part) || (text.contains('.') && frac_part.is_empty()) {
            return Err(malformed());
        }
        let frac_trimmed = frac_part.trim_end_matches('0');
        if frac_trimmed.len() > MAX_SCALE as usize {
            return Err(ThresholdError::TooPrecise(text.to_string()));
        }
        let int_digits = int_part.trim_start_matches('0');
        let int_value: u128 = if int_digits.is_empty() {
            0
        } else {
            int_digits.parse::<u64>().map(u128::from).map_err(|_| malformed())?
        };
        let scale = frac_trimmed.len() as u32;
        let frac_value: u128 = if frac_trimmed.is_empty() { 0 } else { frac_trimmed.parse().map_err(|_| malformed())? };
        Ok(Threshold {
            mantissa: int_value * 10u128.pow(scale) + frac_value,
            scale,
        })
    }
}

impl fmt::Display for Threshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let den = 10u128.pow(self.scale);
        let int = self.mantissa / den;
        if self.scale == 0 {
            write!(f, "{int}")
        } else {
            let frac = self.mantissa % den;
            write!(f, "{int}.{frac:0width$}", width = self.scale as usize)
        }
    }
}

/// Numeric comparison operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CmpOp {
    Ge,
    Gt,
    Le,
    Lt,
    Eq,
    Ne,
}

impl CmpOp {
    pub fn symbol(self) -> &'static str {
        match self {
            CmpOp::Ge => ">=",
            CmpOp::Gt => ">",
            CmpOp::Le => "<=",
            CmpOp::Lt => "<",
            CmpOp::Eq => "==",
            CmpOp::Ne => "!=",
        }
    }

    pub fn from_ordering(self, ord: Ordering) -> bool {
        match self {
            CmpOp::Ge => ord != Ordering::Less,
            CmpOp::Gt => ord == Ordering::Greater,
            CmpOp::Le => ord != Ordering::Greater,
            CmpOp::Lt => ord == Ordering::Less,
            CmpOp::Eq => ord == Ordering::Equal,
            CmpOp::Ne => ord != Ordering::Equal,
        }
    }

    /// Tolerant comparison: values within [`REAL_TOLERANCE`] count as equal,
    /// so `Lt` is always the negation of `Ge` and `Gt` of `Le`.
    pub fn apply_real(self, lhs: f64, rhs: f64) -> bool {
        let ord = if (lhs - rhs).abs() <= REAL_TOLERANCE {
            Ordering::Equal
        } else if lhs < rhs {
            Ordering::Less
        } else {
            Ordering::Greater
        };
        self.from_ordering(ord)
    }
}

impl fmt::Display for CmpOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_decimals_exactly() {
        let t: Threshold = "0.30".parse().unwrap();
        assert_eq!(t.ratio().num, 3);
        assert_eq!(t.ratio().den, 10);
        assert_eq!(t.to_string(), "0.3");
        assert_eq!("1".parse::<Threshold>().unwrap().as_f64(), 1.0);
        assert_eq!(".5".parse::<Threshold>().unwrap().as_f64(), 0.5);
        assert_eq!("00.25".parse::<Threshold>().unwrap().to_string(), "0.25");
        assert_eq!("1.05".parse::<Threshold>().unwrap().to_string(), "1.05");
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", ".", "-1", "1.", "abc", "1e3", "0.1.2", "+3"] {
            assert!(bad.parse::<Threshold>().is_err(), "{bad}");
        }
        assert!(Threshold::from_f64(f64::NAN).is_err());
        assert!(Threshold::from_f64(-0.5).is_err());
        assert!(matches!(
            "0.0000000000000000000001".parse::<Threshold>(),
            Err(ThresholdError::TooPrecise(_))
        ));
    }

    #[test]
    fn count_comparison_has_no_float_drift() {
        // 0.3 * 10 is 3.0000000000000004 in binary floating point.
        let t = Threshold::from_f64(0.3).unwrap();
        assert!(t.met_by_count(3, 10));
        assert!(!t.met_by_count(2, 10));
        assert!(t.exceeds_count(2, 10));
        assert!(!t.exceeds_count(3, 10));
        assert!(Threshold::ZERO.met_by_count(0, 0));
    }

    #[test]
    fn real_comparison_is_tolerant_and_consistent() {
        assert!(CmpOp::Ge.apply_real(1.0 - 1e-12, 1.0));
        assert!(!CmpOp::Lt.apply_real(1.0 - 1e-12, 1.0));
        assert!(CmpOp::Lt.apply_real(0.9, 1.0));
        assert!(CmpOp::Ne.apply_real(0.9, 1.0));
        assert!(CmpOp::Eq.apply_real(0.1 + 0.2, 0.3));
    }
}
