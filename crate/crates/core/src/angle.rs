//! Exact rational multiples of π with a floating-point fallback.
//!
//! Every metric quantity in the crate (edge lengths, link angles, distances)
//! is an [`Angle`]. Sums and differences of exact values stay exact, which
//! makes equalities such as "diameter = π" decidable on the generated corpus.
//! As soon as an approximate value enters a computation the result is
//! approximate and comparisons fall back to [`EPS_ANGLE`].

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance for comparing approximate angles (radians).
pub const EPS_ANGLE: f64 = 1e-9;

/// Tolerance for Gram / Cayley–Menger definiteness checks.
pub const EPS_GRAM: f64 = 1e-9;

/// Largest denominator tried when recognizing a computed angle as `π·p/q`.
pub const Q_MAX: i64 = 360;

#[derive(Clone, Copy, Debug)]
pub enum Angle {
    /// `r · π`.
    Exact(Rational64),
    /// Radians.
    Approx(f64),
}

impl Angle {
    pub const ZERO: Angle = Angle::Exact(Rational64::new_raw(0, 1));
    pub const PI: Angle = Angle::Exact(Rational64::new_raw(1, 1));
    pub const HALF_PI: Angle = Angle::Exact(Rational64::new_raw(1, 2));
    pub const TWO_PI: Angle = Angle::Exact(Rational64::new_raw(2, 1));

    /// `(p/q)·π`. Panics if `q == 0`.
    pub fn pi_frac(p: i64, q: i64) -> Angle {
        Angle::Exact(Rational64::new(p, q))
    }

    pub fn radians_value(x: f64) -> Angle {
        Angle::Approx(x)
    }

    /// Recognizes `x` as `π·p/q` with `q ≤ Q_MAX` when it lies within
    /// [`EPS_ANGLE`] of such a value; otherwise keeps it approximate.
    pub fn rationalize(x: f64) -> Angle {
        if !x.is_finite() {
            return Angle::Approx(x);
        }
        let t = x / std::f64::consts::PI;
        for q in 1..=Q_MAX {
            let p = (t * q as f64).round();
            if (p * std::f64::consts::PI / q as f64 - x).abs() <= EPS_ANGLE {
                return Angle::Exact(Rational64::new(p as i64, q));
            }
        }
        Angle::Approx(x)
    }

    pub fn radians(&self) -> f64 {
        match *self {
            Angle::Exact(r) => *r.numer() as f64 / *r.denom() as f64 * std::f64::consts::PI,
            Angle::Approx(x) => x,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Angle::Exact(_))
    }

    /// The `(p, q)` pair of an exact angle.
    pub fn as_pi_frac(&self) -> Option<(i64, i64)> {
        match self {
            Angle::Exact(r) => Some((*r.numer(), *r.denom())),
            Angle::Approx(_) => None,
        }
    }

    /// Multiplies by the rational `num/den`.
    pub fn scale(&self, num: i64, den: i64) -> Angle {
        match *self {
            Angle::Exact(r) => Angle::Exact(r * Rational64::new(num, den)),
            Angle::Approx(x) => Angle::Approx(x * num as f64 / den as f64),
        }
    }

    pub fn half(&self) -> Angle {
        self.scale(1, 2)
    }

    /// Equality: exact when both operands are exact, else within [`EPS_ANGLE`].
    pub fn approx_eq(&self, other: &Angle) -> bool {
        self.cmp_tol(other) == Ordering::Equal
    }

    /// Total comparison with tolerance semantics for approximate operands.
    pub fn cmp_tol(&self, other: &Angle) -> Ordering {
        match (self, other) {
            (Angle::Exact(a), Angle::Exact(b)) => a.cmp(b),
            _ => {
                let d = self.radians() - other.radians();
                if d.abs() <= EPS_ANGLE {
                    Ordering::Equal
                } else if d < 0.0 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
        }
    }

    pub fn min(self, other: Angle) -> Angle {
        if other.cmp_tol(&self) == Ordering::Less {
            other
        } else {
            self
        }
    }

    pub fn max(self, other: Angle) -> Angle {
        if other.cmp_tol(&self) == Ordering::Greater {
            other
        } else {
            self
        }
    }

    pub fn is_zero(&self) -> bool {
        self.approx_eq(&Angle::ZERO)
    }

    pub fn is_positive(&self) -> bool {
        self.cmp_tol(&Angle::ZERO) == Ordering::Greater
    }
}

impl Default for Angle {
    fn default() -> Self {
        Angle::ZERO
    }
}

impl PartialEq for Angle {
    fn eq(&self, other: &Self) -> bool {
        self.approx_eq(other)
    }
}

impl PartialOrd for Angle {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_tol(other))
    }
}

impl Add for Angle {
    type Output = Angle;
    fn add(self, rhs: Angle) -> Angle {
        match (self, rhs) {
            (Angle::Exact(a), Angle::Exact(b)) => Angle::Exact(a + b),
            _ => Angle::Approx(self.radians() + rhs.radians()),
        }
    }
}

impl Sub for Angle {
    type Output = Angle;
    fn sub(self, rhs: Angle) -> Angle {
        match (self, rhs) {
            (Angle::Exact(a), Angle::Exact(b)) => Angle::Exact(a - b),
            _ => Angle::Approx(self.radians() - rhs.radians()),
        }
    }
}

impl Neg for Angle {
    type Output = Angle;
    fn neg(self) -> Angle {
        match self {
            Angle::Exact(a) => Angle::Exact(-a),
            Angle::Approx(x) => Angle::Approx(-x),
        }
    }
}

impl std::iter::Sum for Angle {
    fn sum<I: Iterator<Item = Angle>>(iter: I) -> Angle {
        iter.fold(Angle::ZERO, |a, b| a + b)
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Angle::Exact(r) => {
                let (p, q) = (*r.numer(), *r.denom());
                match (p, q) {
                    (0, _) => write!(f, "0"),
                    (1, 1) => write!(f, "pi"),
                    (-1, 1) => write!(f, "-pi"),
                    (p, 1) => write!(f, "{p}pi"),
                    (1, q) => write!(f, "pi/{q}"),
                    (-1, q) => write!(f, "-pi/{q}"),
                    (p, q) => write!(f, "{p}pi/{q}"),
                }
            }
            Angle::Approx(x) => write!(f, "{x}"),
        }
    }
}

impl FromStr for Angle {
    type Err = Error;

    /// Accepts `pi`, `pi/3`, `2pi/3`, `2*pi/3`, `-pi/2`, or a plain radian value.
    fn from_str(s: &str) -> Result<Angle> {
        let t = s.trim().replace('*', "").replace('π', "pi");
        if t == "0" {
            return Ok(Angle::ZERO);
        }
        if let Some(idx) = t.find("pi") {
            let bad = || Error::Parse(format!("cannot parse angle {s:?}"));
            let (head, tail) = (&t[..idx], &t[idx + 2..]);
            let p: i64 = match head {
                "" => 1,
                "-" => -1,
                h => h.parse().map_err(|_| bad())?,
            };
            let q: i64 = if tail.is_empty() {
                1
            } else {
                let d = tail.strip_prefix('/').ok_or_else(bad)?;
                d.parse().map_err(|_| bad())?
            };
            if q == 0 {
                return Err(bad());
            }
            Ok(Angle::pi_frac(p, q))
        } else {
            t.parse::<f64>()
                .map(Angle::Approx)
                .map_err(|_| Error::Parse(format!("cannot parse angle {s:?}")))
        }
    }
}

/// JSON form of an angle: `{"pi":[p,q]}` or `{"rad":x}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum AngleRepr {
    Pi { pi: [i64; 2] },
    Rad { rad: f64 },
}

impl From<Angle> for AngleRepr {
    fn from(a: Angle) -> Self {
        match a {
            Angle::Exact(r) => AngleRepr::Pi {
                pi: [*r.numer(), *r.denom()],
            },
            Angle::Approx(x) => AngleRepr::Rad { rad: x },
        }
    }
}

impl TryFrom<AngleRepr> for Angle {
    type Error = Error;
    fn try_from(r: AngleRepr) -> Result<Angle> {
        match r {
            AngleRepr::Pi { pi: [p, q] } => {
                if q == 0 {
                    Err(Error::Parse("angle with zero denominator".into()))
                } else {
                    Ok(Angle::pi_frac(p, q))
                }
            }
            AngleRepr::Rad { rad } => Ok(Angle::Approx(rad)),
        }
    }
}

impl Serialize for Angle {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        AngleRepr::from(*self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Angle {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Angle, D::Error> {
        let r = AngleRepr::deserialize(d)?;
        Angle::try_from(r).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_arithmetic_stays_exact() {
        let a = Angle::pi_frac(1, 3) + Angle::pi_frac(1, 6);
        assert_eq!(a.as_pi_frac(), Some((1, 2)));
        let b = Angle::PI - Angle::pi_frac(2, 3);
        assert_eq!(b.as_pi_frac(), Some((1, 3)));
        assert!(Angle::pi_frac(1, 3).scale(6, 1).approx_eq(&Angle::TWO_PI));
    }

    #[test]
    fn mixed_arithmetic_is_approximate() {
        let a = Angle::pi_frac(1, 2) + Angle::Approx(1.0);
        assert!(!a.is_exact());
        assert!((a.radians() - (std::f64::consts::FRAC_PI_2 + 1.0)).abs() < 1e-15);
    }

    #[test]
    fn rationalize_recognizes_small_denominators() {
        let x = (0.5f64).acos();
        assert_eq!(Angle::rationalize(x).as_pi_frac(), Some((1, 3)));
        assert_eq!(
            Angle::rationalize(std::f64::consts::PI * 7.0 / 360.0).as_pi_frac(),
            Some((7, 360))
        );
        assert!(!Angle::rationalize((1.0f64 / 3.0).acos()).is_exact());
    }

    #[test]
    fn tolerance_comparison() {
        let a = Angle::Approx(std::f64::consts::PI + 1e-11);
        assert!(a.approx_eq(&Angle::PI));
        assert!(Angle::Approx(3.0) < Angle::PI);
        assert!(Angle::pi_frac(1, 3) < Angle::pi_frac(1, 2));
    }

    #[test]
    fn parse_and_display() {
        for s in ["pi", "pi/3", "2pi/3", "-pi/2", "5pi/3"] {
            let a: Angle = s.parse().unwrap();
            assert_eq!(a.to_string(), s);
        }
        let a: Angle = "2*pi/3".parse().unwrap();
        assert_eq!(a.as_pi_frac(), Some((2, 3)));
        let b: Angle = "1.25".parse().unwrap();
        assert!(!b.is_exact());
        assert!("pi/0".parse::<Angle>().is_err());
        assert!("abc".parse::<Angle>().is_err());
    }

    #[test]
    fn json_forms() {
        let s = serde_json::to_string(&Angle::pi_frac(2, 3)).unwrap();
        assert_eq!(s, r#"{"pi":[2,3]}"#);
        let a: Angle = serde_json::from_str(r#"{"rad":1.5}"#).unwrap();
        assert!(a.approx_eq(&Angle::Approx(1.5)));
    }
}
