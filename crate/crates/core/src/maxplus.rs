//! The max-plus semiring `ℝ ∪ {−∞}` with `⊕ = max` and `⊙ = +`.
//!
//! `−∞` is carried as the symbolic [`MaxPlus::Bottom`] case rather than as
//! `f64::NEG_INFINITY`, so absorption under `⊙` is exact and no `−∞ + ∞`
//! expression can ever be formed.

use std::cmp::Ordering;
use std::fmt;

use crate::error::Error;

/// A max-plus scalar: a finite real or `Bottom` (−∞).
///
/// `Finite` never holds NaN or ±∞; use [`MaxPlus::try_from_f64`] when the
/// source value is untrusted.
#[derive(Clone, Copy, Debug)]
pub enum MaxPlus {
    Bottom,
    Finite(f64),
}

pub use MaxPlus::{Bottom, Finite};

impl MaxPlus {
    /// Neutral element of `⊙`.
    pub const ONE: MaxPlus = Finite(0.0);
    /// Neutral element of `⊕`.
    pub const ZERO: MaxPlus = Bottom;

    /// Converts a float, mapping `-inf` to `Bottom`.
    pub fn try_from_f64(x: f64) -> Result<Self, Error> {
        if x.is_nan() || x == f64::INFINITY {
            Err(Error::NonFinite(x))
        } else if x == f64::NEG_INFINITY {
            Ok(Bottom)
        } else {
            Ok(Finite(x))
        }
    }

    /// `ln x` for `x ≥ 0`, with `ln 0 = Bottom`.
    pub fn ln(x: f64) -> Self {
        debug_assert!(x >= 0.0, "ln of negative value {x}");
        if x == 0.0 {
            Bottom
        } else {
            Finite(x.ln())
        }
    }

    pub fn oplus(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }

    pub fn odot(self, other: Self) -> Self {
        match (self, other) {
            (Finite(a), Finite(b)) => Finite(a + b),
            _ => Bottom,
        }
    }

    /// Subtracts a finite amount; `Bottom` stays `Bottom`.
    pub fn shift(self, by: f64) -> Self {
        match self {
            Finite(a) => Finite(a + by),
            Bottom => Bottom,
        }
    }

    pub fn is_bottom(self) -> bool {
        matches!(self, Bottom)
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            Finite(a) => Some(a),
            Bottom => None,
        }
    }

    /// The value as an `f64`, with `Bottom` mapped to `-inf`.
    pub fn to_f64(self) -> f64 {
        self.finite().unwrap_or(f64::NEG_INFINITY)
    }

    /// `e^x`, with `e^Bottom = 0`.
    pub fn exp(self) -> f64 {
        match self {
            Finite(a) => a.exp(),
            Bottom => 0.0,
        }
    }
}

/// Free-function form of [`MaxPlus::oplus`].
pub fn oplus(a: MaxPlus, b: MaxPlus) -> MaxPlus {
    a.oplus(b)
}

/// Free-function form of [`MaxPlus::odot`].
pub fn odot(a: MaxPlus, b: MaxPlus) -> MaxPlus {
    a.odot(b)
}

/// `⊕` over a sequence; the empty sum is `Bottom`.
pub fn big_oplus<I: IntoIterator<Item = MaxPlus>>(xs: I) -> MaxPlus {
    xs.into_iter().fold(Bottom, MaxPlus::oplus)
}

impl PartialEq for MaxPlus {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for MaxPlus {}

impl PartialOrd for MaxPlus {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MaxPlus {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Bottom, Bottom) => Ordering::Equal,
            (Bottom, Finite(_)) => Ordering::Less,
            (Finite(_), Bottom) => Ordering::Greater,
            // -0.0 and 0.0 are the same weight
            (Finite(a), Finite(b)) => a.partial_cmp(b).expect("NaN in MaxPlus"),
        }
    }
}

impl From<f64> for MaxPlus {
    /// Panics on NaN or `+inf`.
    fn from(x: f64) -> Self {
        MaxPlus::try_from_f64(x).expect("invalid max-plus value")
    }
}

impl fmt::Display for MaxPlus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Finite(a) => write!(f, "{a}"),
            Bottom => f.write_str("-inf"),
        }
    }
}
