//! Scalar results that are exact rationals when the kernel allows it and
//! doubles otherwise.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

/// Relative tolerance under which two floating objectives count as tied.
pub const TIE_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Exact(BigRational),
    Approx(f64),
}

impl Value {
    pub fn zero(exact: bool) -> Self {
        if exact {
            Value::Exact(BigRational::zero())
        } else {
            Value::Approx(0.0)
        }
    }

    pub fn from_integer(n: i64) -> Self {
        Value::Exact(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Value::Exact(_))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Value::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            Value::Approx(x) => *x,
        }
    }

    pub fn as_exact(&self) -> Option<&BigRational> {
        match self {
            Value::Exact(r) => Some(r),
            Value::Approx(_) => None,
        }
    }

    pub fn add(&self, other: &Value) -> Value {
        match (self, other) {
            (Value::Exact(a), Value::Exact(b)) => Value::Exact(a + b),
            _ => Value::Approx(self.to_f64() + other.to_f64()),
        }
    }

    pub fn mul(&self, other: &Value) -> Value {
        match (self, other) {
            (Value::Exact(a), Value::Exact(b)) => Value::Exact(a * b),
            _ => Value::Approx(self.to_f64() * other.to_f64()),
        }
    }

    pub fn scale(&self, k: usize) -> Value {
        match self {
            Value::Exact(r) => Value::Exact(r * BigRational::from_integer(BigInt::from(k))),
            Value::Approx(x) => Value::Approx(x * k as f64),
        }
    }

    pub fn neg(&self) -> Value {
        match self {
            Value::Exact(r) => Value::Exact(-r),
            Value::Approx(x) => Value::Approx(-x),
        }
    }

    /// Exact comparison when both sides are rational, `f64::total_cmp` otherwise.
    pub fn compare(&self, other: &Value) -> Ordering {
        match (self, other) {
            (Value::Exact(a), Value::Exact(b)) => a.cmp(b),
            _ => self.to_f64().total_cmp(&other.to_f64()),
        }
    }

    /// Tie test used for pair objectives: exact equality for rationals,
    /// `|a - b| <= 1e-9 * max(1, |a|)` otherwise.
    pub fn ties(&self, other: &Value) -> bool {
        match (self, other) {
            (Value::Exact(a), Value::Exact(b)) => a == b,
            _ => {
                let (a, b) = (self.to_f64(), other.to_f64());
                (a - b).abs() <= TIE_TOLERANCE * a.abs().max(1.0)
            }
        }
    }

    /// Exact equality for rationals, absolute tolerance `tol` otherwise.
    pub fn approx_eq(&self, other: &Value, tol: f64) -> bool {
        match (self, other) {
            (Value::Exact(a), Value::Exact(b)) => a == b,
            _ => (self.to_f64() - other.to_f64()).abs() <= tol,
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Value::Exact(r) => r.is_negative(),
            Value::Approx(x) => *x < 0.0,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Exact(r) => write!(f, "{}", format_rational(r)),
            Value::Approx(x) => write!(f, "{}", format_float(*x)),
        }
    }
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Value::Exact(r) => s.serialize_str(&format_rational(r)),
            Value::Approx(x) => s.serialize_f64(*x),
        }
    }
}

/// `p/q` in lowest terms, or just `p` for integers.
pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Formats `x` with 15 significant digits, trailing zeros removed.
/// Magnitudes outside `[1e-5, 1e15)` use scientific notation.
pub fn format_float(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0".to_string();
    }
    let sci = format!("{x:.14e}");
    let (mantissa, exp) = sci.split_once('e').expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..15).contains(&exp) {
        let decimals = (14 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}"))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa))
    }
}

/// Rounds to 15 significant digits, as printed by [`format_float`].
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    format!("{x:.14e}").parse().unwrap_or(x)
}

fn trim_zeros(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Value {
        Value::Exact(BigRational::new(n.into(), d.into()))
    }

    #[test]
    fn formatting() {
        assert_eq!(format_float(0.4), "0.4");
        assert_eq!(format_float(3f64.sqrt()), "1.73205080756888");
        assert_eq!(format_float(-2.0), "-2");
        assert_eq!(format_float(1e-7), "1e-7");
        assert_eq!(format_float(123456789.0), "123456789");
        assert_eq!(format_float(2.5e20), "2.5e20");
        assert_eq!(q(6, 4).to_string(), "3/2");
        assert_eq!(q(8, 2).to_string(), "4");
    }

    #[test]
    fn ties_and_order() {
        assert!(q(1, 3).ties(&q(2, 6)));
        assert!(!q(1, 3).ties(&q(1, 4)));
        assert!(Value::Approx(1.0).ties(&Value::Approx(1.0 + 5e-10)));
        assert!(!Value::Approx(1.0).ties(&Value::Approx(1.0 + 5e-9)));
        assert!(Value::Approx(1e6).ties(&Value::Approx(1e6 + 1e-4)));
        assert_eq!(q(1, 3).compare(&q(1, 2)), Ordering::Less);
        assert_eq!(q(1, 2).add(&q(1, 3)), q(5, 6));
        assert_eq!(q(5, 6).scale(6), q(5, 1));
    }

    #[test]
    fn serialises_exact_as_string() {
        assert_eq!(serde_json::to_string(&q(2, 5)).unwrap(), "\"2/5\"");
        assert_eq!(serde_json::to_string(&Value::Approx(0.5)).unwrap(), "0.5");
    }
}
