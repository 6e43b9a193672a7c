//! Nonnegative extended reals, the codomain of measures.
//!
//! Two conventions matter for integration and are easy to get wrong:
//!
//! * `0 · ∞ = ∞ · 0 = 0`, so an infinite part carrying the value zero
//!   contributes nothing to an integral.
//! * [`XReal::real`] projects `∞` to `0`. The simple-function integral
//!   scales every value by the *projected* measure of its part; on the last,
//!   zero-valued part an infinite measure therefore gives `0 · 0 = 0`.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Mul};

use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};

/// A value in `[0, +∞]`.
///
/// Internally a non-NaN `f64 >= 0`, with `f64::INFINITY` standing for `+∞`.
/// NaN and negative inputs are rejected by the constructors, so the order is
/// total.
#[derive(Clone, Copy)]
pub struct XReal(f64);

impl XReal {
    pub const ZERO: XReal = XReal(0.0);
    pub const ONE: XReal = XReal(1.0);
    pub const INFINITY: XReal = XReal(f64::INFINITY);

    /// Accepts any non-NaN `x >= 0`; `f64::INFINITY` maps to `+∞`.
    pub fn new(x: f64) -> Result<Self> {
        if x.is_nan() || x < 0.0 {
            return Err(Error::InvalidXReal(x));
        }
        // normalizes -0.0
        Ok(XReal(x + 0.0))
    }

    /// Like [`XReal::new`] but also rejects infinity.
    pub fn finite(x: f64) -> Result<Self> {
        if !x.is_finite() {
            return Err(Error::InvalidXReal(x));
        }
        Self::new(x)
    }

    pub fn is_finite(self) -> bool {
        self.0.is_finite()
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0.0
    }

    /// The finite payload, or `None` for `+∞`.
    pub fn as_finite(self) -> Option<f64> {
        self.is_finite().then_some(self.0)
    }

    /// Projection to the reals with `real(∞) = 0`.
    pub fn real(self) -> f64 {
        if self.is_finite() {
            self.0
        } else {
            0.0
        }
    }

    /// Raw value, `f64::INFINITY` for `+∞`.
    pub fn to_f64(self) -> f64 {
        self.0
    }
}

impl Default for XReal {
    fn default() -> Self {
        XReal::ZERO
    }
}

impl PartialEq for XReal {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

impl Eq for XReal {}

impl PartialOrd for XReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for XReal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

impl Add for XReal {
    type Output = XReal;

    /// Saturates: a finite sum that overflows `f64` becomes `+∞`.
    fn add(self, rhs: XReal) -> XReal {
        XReal(self.0 + rhs.0)
    }
}

impl Mul for XReal {
    type Output = XReal;

    fn mul(self, rhs: XReal) -> XReal {
        if self.is_zero() || rhs.is_zero() {
            XReal::ZERO
        } else {
            XReal(self.0 * rhs.0)
        }
    }
}

impl Sum for XReal {
    fn sum<I: Iterator<Item = XReal>>(iter: I) -> XReal {
        iter.fold(XReal::ZERO, Add::add)
    }
}

impl fmt::Debug for XReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_finite() {
            write!(f, "Finite({:?})", self.0)
        } else {
            f.write_str("Infinity")
        }
    }
}

impl fmt::Display for XReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_finite() {
            fmt::Display::fmt(&self.0, f)
        } else {
            f.write_str("inf")
        }
    }
}

impl Serialize for XReal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.is_finite() {
            s.serialize_f64(self.0)
        } else {
            s.serialize_str("inf")
        }
    }
}

impl<'de> Deserialize<'de> for XReal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct XRealVisitor;

        impl Visitor<'_> for XRealVisitor {
            type Value = XReal;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a number >= 0 or the string \"inf\"")
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<XReal, E> {
                XReal::finite(v).map_err(E::custom)
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<XReal, E> {
                self.visit_f64(v as f64)
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<XReal, E> {
                self.visit_f64(v as f64)
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<XReal, E> {
                match v {
                    "inf" | "Infinity" | "infinity" => Ok(XReal::INFINITY),
                    other => other
                        .parse::<f64>()
                        .map_err(|_| E::invalid_value(de::Unexpected::Str(other), &self))
                        .and_then(|x| XReal::finite(x).map_err(E::custom)),
                }
            }
        }

        d.deserialize_any(XRealVisitor)
    }
}
