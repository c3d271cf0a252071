use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A value in `[0, ∞]`: an exact nonnegative rational or `∞`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dist {
    Finite(BigRational),
    Inf,
}

impl Dist {
    pub fn zero() -> Self {
        Dist::Finite(BigRational::zero())
    }

    pub fn int(n: i64) -> Self {
        assert!(n >= 0, "distances are nonnegative");
        Dist::Finite(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        let r = BigRational::new(BigInt::from(n), BigInt::from(d));
        assert!(!r.is_negative(), "distances are nonnegative");
        Dist::Finite(r)
    }

    /// `2⁻ⁿ`
    pub fn dyadic(n: usize) -> Self {
        Dist::Finite(BigRational::new(BigInt::from(1), BigInt::from(2).pow(n as u32)))
    }

    pub fn is_inf(&self) -> bool {
        matches!(self, Dist::Inf)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Dist::Finite(r) if r.is_zero())
    }

    /// `[0, ∞](self, r) = max(r − self, 0)`, with `∞ − ∞ = 0`.
    pub fn hom(&self, r: &Dist) -> Dist {
        match (self, r) {
            (_, Dist::Inf) if !self.is_inf() => Dist::Inf,
            (_, Dist::Inf) | (Dist::Inf, _) => Dist::zero(),
            (Dist::Finite(t), Dist::Finite(r)) => {
                if r > t {
                    Dist::Finite(r - t)
                } else {
                    Dist::zero()
                }
            }
        }
    }

    /// `|a − b|`, with `∞` matched only by `∞`.
    pub fn deviation(&self, other: &Dist) -> Dist {
        match (self, other) {
            (Dist::Inf, Dist::Inf) => Dist::zero(),
            (Dist::Inf, _) | (_, Dist::Inf) => Dist::Inf,
            (Dist::Finite(a), Dist::Finite(b)) => Dist::Finite((a - b).abs()),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Dist::Inf => f64::INFINITY,
            Dist::Finite(r) => r.to_f64().unwrap_or(f64::NAN),
        }
    }
}

impl Add for &Dist {
    type Output = Dist;

    fn add(self, rhs: &Dist) -> Dist {
        match (self, rhs) {
            (Dist::Finite(a), Dist::Finite(b)) => Dist::Finite(a + b),
            _ => Dist::Inf,
        }
    }
}

impl Add for Dist {
    type Output = Dist;

    fn add(self, rhs: Dist) -> Dist {
        &self + &rhs
    }
}

impl fmt::Display for Dist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dist::Inf => f.write_str("inf"),
            Dist::Finite(r) => write!(f, "{r}"),
        }
    }
}

/// Accepts `inf`, integers, fractions `p/q` and decimals `1.25`, all exact.
impl FromStr for Dist {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Malformed(format!("`{s}` is not a distance"));
        if s == "inf" || s == "∞" {
            return Ok(Dist::Inf);
        }
        let r = if let Some((n, d)) = s.split_once('/') {
            let (n, d): (BigInt, BigInt) = (n.trim().parse().map_err(|_| bad())?, d.trim().parse().map_err(|_| bad())?);
            if d.is_zero() {
                return Err(bad());
            }
            BigRational::new(n, d)
        } else if let Some((whole, frac)) = s.split_once('.') {
            if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let digits: BigInt = format!("{whole}{frac}").parse().map_err(|_| bad())?;
            BigRational::new(digits, BigInt::from(10).pow(frac.len() as u32))
        } else {
            BigRational::from_integer(s.parse().map_err(|_| bad())?)
        };
        if r.is_negative() {
            return Err(Error::invalid("distance", format!("{s} is negative")));
        }
        Ok(Dist::Finite(r))
    }
}

impl Serialize for Dist {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Dist {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match serde_json::Value::deserialize(d)? {
            serde_json::Value::String(s) => s.parse().map_err(serde::de::Error::custom),
            serde_json::Value::Number(n) => n.to_string().parse().map_err(serde::de::Error::custom),
            other => Err(serde::de::Error::custom(format!("expected a distance, got {other}"))),
        }
    }
}
