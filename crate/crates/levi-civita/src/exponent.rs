//! Exact rational exponents and the value group `Q ∪ {+∞}`.
//!
//! Exponents index the support of a Levi-Civita number. They are exact
//! rationals: the valuation laws must hold with no rounding, and rational
//! exponents are the field's defining feature.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// A rational exponent, kept normalized (positive denominator, gcd 1).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Exponent(Ratio<i64>);

impl Exponent {
    pub const ZERO: Exponent = Exponent(Ratio::new_raw(0, 1));
    pub const ONE: Exponent = Exponent(Ratio::new_raw(1, 1));

    /// Builds `num/den`. Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        Exponent(Ratio::new(num, den))
    }

    pub fn int(n: i64) -> Self {
        Exponent(Ratio::from_integer(n))
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn as_f64(&self) -> f64 {
        self.numer() as f64 / self.denom() as f64
    }
}

impl From<i64> for Exponent {
    fn from(n: i64) -> Self {
        Exponent::int(n)
    }
}

impl Add for Exponent {
    type Output = Exponent;
    fn add(self, rhs: Exponent) -> Exponent {
        Exponent(self.0 + rhs.0)
    }
}

impl Sub for Exponent {
    type Output = Exponent;
    fn sub(self, rhs: Exponent) -> Exponent {
        Exponent(self.0 - rhs.0)
    }
}

impl Neg for Exponent {
    type Output = Exponent;
    fn neg(self) -> Exponent {
        Exponent(-self.0)
    }
}

impl Mul<i64> for Exponent {
    type Output = Exponent;
    fn mul(self, rhs: i64) -> Exponent {
        Exponent(self.0 * Ratio::from_integer(rhs))
    }
}

impl Div<i64> for Exponent {
    type Output = Exponent;
    fn div(self, rhs: i64) -> Exponent {
        Exponent(self.0 / Ratio::from_integer(rhs))
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl FromStr for Exponent {
    type Err = Error;

    /// Parses `p` or `p/q`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::Domain(format!("invalid rational `{s}`"));
        match s.split_once('/') {
            None => {
                let n: i64 = s.trim().parse().map_err(|_| bad())?;
                Ok(Exponent::int(n))
            }
            Some((p, q)) => {
                let p: i64 = p.trim().parse().map_err(|_| bad())?;
                let q: i64 = q.trim().parse().map_err(|_| bad())?;
                if q == 0 {
                    return Err(bad());
                }
                Ok(Exponent::new(p, q))
            }
        }
    }
}

impl Serialize for Exponent {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Exponent {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(de::Error::custom)
    }
}

/// An element of `Q ∪ {+∞}`: the range of the valuation, and the type of a
/// number's exactness horizon (`Infinite` means every coefficient is exact).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Valuation {
    Finite(Exponent),
    Infinite,
}

impl Valuation {
    pub fn finite(e: impl Into<Exponent>) -> Self {
        Valuation::Finite(e.into())
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Valuation::Infinite)
    }

    pub fn exponent(&self) -> Option<Exponent> {
        match self {
            Valuation::Finite(e) => Some(*e),
            Valuation::Infinite => None,
        }
    }

    pub fn as_f64(&self) -> f64 {
        match self {
            Valuation::Finite(e) => e.as_f64(),
            Valuation::Infinite => f64::INFINITY,
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use Valuation::*;
        match (self, other) {
            (Infinite, Infinite) => std::cmp::Ordering::Equal,
            (Infinite, Finite(_)) => std::cmp::Ordering::Greater,
            (Finite(_), Infinite) => std::cmp::Ordering::Less,
            (Finite(a), Finite(b)) => a.cmp(b),
        }
    }
}

impl From<Exponent> for Valuation {
    fn from(e: Exponent) -> Self {
        Valuation::Finite(e)
    }
}

impl Add for Valuation {
    type Output = Valuation;
    /// Infinity-absorbing sum.
    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinite,
        }
    }
}

impl Add<Exponent> for Valuation {
    type Output = Valuation;
    fn add(self, rhs: Exponent) -> Valuation {
        match self {
            Valuation::Finite(a) => Valuation::Finite(a + rhs),
            Valuation::Infinite => Valuation::Infinite,
        }
    }
}

impl Sub<Exponent> for Valuation {
    type Output = Valuation;
    fn sub(self, rhs: Exponent) -> Valuation {
        match self {
            Valuation::Finite(a) => Valuation::Finite(a - rhs),
            Valuation::Infinite => Valuation::Infinite,
        }
    }
}

impl Mul<i64> for Valuation {
    type Output = Valuation;
    fn mul(self, rhs: i64) -> Valuation {
        match self {
            Valuation::Finite(a) => Valuation::Finite(a * rhs),
            Valuation::Infinite => Valuation::Infinite,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(e) => write!(f, "{e}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

impl FromStr for Valuation {
    type Err = Error;

    /// Parses `inf` or a rational `p/q`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("inf") || t == "+inf" || t == "∞" {
            Ok(Valuation::Infinite)
        } else {
            Ok(Valuation::Finite(t.parse()?))
        }
    }
}

impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Valuation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization() {
        let e = Exponent::new(2, -4);
        assert_eq!(e.numer(), -1);
        assert_eq!(e.denom(), 2);
        assert_eq!(e, Exponent::new(-1, 2));
    }

    #[test]
    fn ordering_with_infinity() {
        assert!(Valuation::finite(3) < Valuation::Infinite);
        assert!(Valuation::finite(Exponent::new(1, 2)) < Valuation::finite(1));
    }

    #[test]
    fn parse_round_trip() {
        for s in ["3", "-1", "1/2", "-7/3"] {
            let e: Exponent = s.parse().unwrap();
            assert_eq!(e.to_string(), s);
        }
        let v: Valuation = "inf".parse().unwrap();
        assert!(v.is_infinite());
    }
}
