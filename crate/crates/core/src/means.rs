//! Power means `M_t(a, b)` over the extended parameter range `[-∞, +∞]`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Below this magnitude `t` is treated as zero (geometric mean).
pub const ZERO_T_THRESHOLD: f64 = 1e-12;

/// A real number or one of the two infinities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtReal {
    NegInf,
    Finite(f64),
    PosInf,
}

impl ExtReal {
    pub const ZERO: ExtReal = ExtReal::Finite(0.0);

    /// Maps `±∞` to the tags; NaN is rejected.
    pub fn new(value: f64) -> Result<Self, MeanError> {
        if value.is_nan() {
            Err(MeanError::BadParameter(value.to_string()))
        } else if value == f64::INFINITY {
            Ok(ExtReal::PosInf)
        } else if value == f64::NEG_INFINITY {
            Ok(ExtReal::NegInf)
        } else {
            Ok(ExtReal::Finite(value))
        }
    }

    pub fn to_f64(self) -> f64 {
        match self {
            ExtReal::NegInf => f64::NEG_INFINITY,
            ExtReal::Finite(v) => v,
            ExtReal::PosInf => f64::INFINITY,
        }
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            ExtReal::Finite(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_zero(self) -> bool {
        matches!(self, ExtReal::Finite(v) if v.abs() < ZERO_T_THRESHOLD)
    }
}

impl From<f64> for ExtReal {
    /// Panics on NaN; use [`ExtReal::new`] for untrusted input.
    fn from(value: f64) -> Self {
        ExtReal::new(value).expect("t must not be NaN")
    }
}

impl PartialOrd for ExtReal {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        self.to_f64().partial_cmp(&other.to_f64())
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtReal::NegInf => f.write_str("-inf"),
            ExtReal::PosInf => f.write_str("+inf"),
            ExtReal::Finite(v) => write!(f, "{v}"),
        }
    }
}

impl FromStr for ExtReal {
    type Err = MeanError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "-inf" | "-infinity" => Ok(ExtReal::NegInf),
            "inf" | "+inf" | "infinity" | "+infinity" => Ok(ExtReal::PosInf),
            other => other
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .map(ExtReal::Finite)
                .ok_or_else(|| MeanError::BadParameter(s.to_string())),
        }
    }
}

/// Finite values serialize as numbers, infinities as `"-inf"` / `"+inf"`.
impl Serialize for ExtReal {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            ExtReal::Finite(v) => serializer.serialize_f64(*v),
            other => serializer.serialize_str(&other.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for ExtReal {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Number(f64),
            Text(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Number(v) => ExtReal::new(v).map_err(serde::de::Error::custom),
            Raw::Text(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MeanError {
    #[error("power mean arguments must be finite and non-negative (got {a}, {b})")]
    NegativeArgument { a: f64, b: f64 },
    #[error("invalid t parameter '{0}'")]
    BadParameter(String),
}

/// `M_t(a, b)`; rejects negative or non-finite arguments.
pub fn generalized_mean(t: ExtReal, a: f64, b: f64) -> Result<f64, MeanError> {
    if !(a.is_finite() && b.is_finite() && a >= 0.0 && b >= 0.0) {
        return Err(MeanError::NegativeArgument { a, b });
    }
    Ok(power_mean(t, a, b))
}

/// `M_t(a, b)` without argument checks, for inner loops whose arguments are
/// norms and therefore non-negative.
///
/// With `hi = max(a, b)`, `lo = min(a, b)` and `r = lo / hi`:
///
/// * `t > 0`: `hi · ((1 + r^t) / 2)^(1/t)`
/// * `t < 0`: `lo · ((1 + r^|t|) / 2)^(1/t)`
///
/// Both forms raise a ratio in `[0, 1]` to a positive power, so nothing
/// overflows for any `|t|`. The outer power is taken as
/// `exp(ln_1p(expm1(t·ln r) / 2) / t)` so the result stays accurate as
/// `t → 0`. Zero arguments give `0` for `t ≤ 0`, the limiting value.
#[inline]
pub fn power_mean(t: ExtReal, a: f64, b: f64) -> f64 {
    debug_assert!(a >= 0.0 && b >= 0.0, "power_mean({a}, {b})");
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    let t = match t {
        ExtReal::NegInf => return lo,
        ExtReal::PosInf => return hi,
        ExtReal::Finite(t) => t,
    };
    if lo == hi {
        return lo;
    }
    if t.abs() < ZERO_T_THRESHOLD {
        return (lo.sqrt()) * (hi.sqrt());
    }
    if lo == 0.0 {
        return if t > 0.0 { hi * 0.5f64.powf(1.0 / t) } else { 0.0 };
    }
    let ln_r = (lo / hi).ln();
    // ln((1 + r^s) / 2) with s = |t|
    let s = t.abs();
    let log_half_sum = ((s * ln_r).exp_m1() * 0.5).ln_1p();
    let base = if t > 0.0 { hi } else { lo };
    let m = base * (log_half_sum / t).exp();
    m.clamp(lo, hi)
}
