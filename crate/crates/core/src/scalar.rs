//! Scalar abstraction shared by every piece of core math.
//!
//! The decision path runs on [`Rational`](crate::Rational) (arbitrary
//! precision, exact). Floating-point instantiations exist so the same data
//! model can be evaluated numerically, e.g. when comparing against Monte-Carlo
//! estimates; sign decisions on floats use a small absolute tolerance.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};

/// Error produced when a scalar literal cannot be parsed.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid scalar literal {literal:?}: {reason}")]
pub struct ScalarParseError {
    pub literal: String,
    pub reason: String,
}

/// Field-like scalar used by forms, modules, PL functions and the cone engine.
pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + PartialOrd
    + Num
    + Signed
    + FromPrimitive
    + Send
    + Sync
    + 'static
{
    /// Whether arithmetic (and therefore every sign decision) is exact.
    const EXACT: bool;

    fn from_frac(num: i64, den: i64) -> Self {
        Self::from_i64(num).expect("i64 fits") / Self::from_i64(den).expect("i64 fits")
    }

    fn to_f64_lossy(&self) -> f64;

    /// Sign of the value: -1, 0 or 1.
    fn sign(&self) -> i8;

    /// Rescales a direction by a positive factor into a canonical
    /// representative. Exact types produce primitive integer vectors.
    fn normalize_direction(v: &mut [Self]);

    /// Serialized text form (`"num/den"` for rationals).
    fn to_text(&self) -> String;

    fn parse_text(s: &str) -> Result<Self, ScalarParseError>;

    fn total_cmp(&self, other: &Self) -> Ordering {
        self.partial_cmp(other).unwrap_or(Ordering::Equal)
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_frac(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn sign(&self) -> i8 {
        if self.is_zero() {
            0
        } else if self.is_positive() {
            1
        } else {
            -1
        }
    }

    fn normalize_direction(v: &mut [Self]) {
        if v.iter().all(Zero::is_zero) {
            return;
        }
        let mut lcm = BigInt::one();
        for x in v.iter() {
            lcm = lcm.lcm(x.denom());
        }
        let mut gcd = BigInt::zero();
        for x in v.iter() {
            let scaled = x.numer() * (&lcm / x.denom());
            gcd = gcd.gcd(&scaled);
        }
        for x in v.iter_mut() {
            let scaled = x.numer() * (&lcm / x.denom());
            *x = BigRational::from_integer(scaled / &gcd);
        }
    }

    fn to_text(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }

    fn parse_text(s: &str) -> Result<Self, ScalarParseError> {
        let err = |reason: &str| ScalarParseError {
            literal: s.to_string(),
            reason: reason.to_string(),
        };
        let t = s.trim();
        let (num, den) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| err("numerator is not an integer"))?;
        let den: BigInt = den.parse().map_err(|_| err("denominator is not an integer"))?;
        if den.is_zero() {
            return Err(err("zero denominator"));
        }
        Ok(BigRational::new(num, den))
    }
}

macro_rules! float_scalar {
    ($t:ty, $tol:expr) => {
        impl Scalar for $t {
            const EXACT: bool = false;

            fn to_f64_lossy(&self) -> f64 {
                *self as f64
            }

            fn sign(&self) -> i8 {
                if self.abs() <= $tol {
                    0
                } else if *self > 0.0 {
                    1
                } else {
                    -1
                }
            }

            fn normalize_direction(v: &mut [Self]) {
                let m = v.iter().fold(0.0 as $t, |m, x| m.max(x.abs()));
                if m > 0.0 {
                    for x in v.iter_mut() {
                        *x /= m;
                    }
                }
            }

            fn to_text(&self) -> String {
                format!("{:?}", self)
            }

            fn parse_text(s: &str) -> Result<Self, ScalarParseError> {
                let t = s.trim();
                if let Some((n, d)) = t.split_once('/') {
                    let err = |reason: &str| ScalarParseError {
                        literal: s.to_string(),
                        reason: reason.to_string(),
                    };
                    let n: $t = n.trim().parse().map_err(|_| err("bad numerator"))?;
                    let d: $t = d.trim().parse().map_err(|_| err("bad denominator"))?;
                    if d == 0.0 {
                        return Err(err("zero denominator"));
                    }
                    return Ok(n / d);
                }
                t.parse().map_err(|_| ScalarParseError {
                    literal: s.to_string(),
                    reason: "not a number".to_string(),
                })
            }
        }
    };
}

float_scalar!(f64, 1e-12);
float_scalar!(f32, 1e-6);

/// Converts a small integer into any scalar.
pub fn int<T: Scalar>(n: i64) -> T {
    T::from_i64(n).expect("integer fits the scalar type")
}

/// Lexicographic comparison of coefficient vectors.
pub fn lex_cmp<T: Scalar>(a: &[T], b: &[T]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.total_cmp(y) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    a.len().cmp(&b.len())
}

/// Dot product of two equal-length slices.
pub fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    let mut acc = T::zero();
    for (x, y) in a.iter().zip(b) {
        if x.is_zero() || y.is_zero() {
            continue;
        }
        acc = acc + x.clone() * y.clone();
    }
    acc
}
