//! Scalar traits the rest of the crate is generic over.

use std::fmt::{Debug, Display, LowerExp};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{Float, FloatConst, FromPrimitive, Num, Signed, ToPrimitive, Zero};

/// A field with exact arithmetic, used for row reduction.
pub trait ExactScalar: Clone + PartialEq + Debug + Display + Num + Signed + Send + Sync {
    fn from_int(v: i64) -> Self;

    fn to_f64(&self) -> f64;

    /// Numerator and denominator, denominator positive.
    fn parts(&self) -> (i64, i64);

    /// Parses `p/q` or a bare integer `p`.
    fn parse_ratio(s: &str) -> Option<Self>;

    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }

    /// Formats as `p/q` with `q > 0`, including `q = 1`.
    fn to_ratio_string(&self) -> String {
        let (p, q) = self.parts();
        format!("{p}/{q}")
    }
}

macro_rules! impl_exact_machine {
    ($int:ty) => {
        impl ExactScalar for Ratio<$int> {
            fn from_int(v: i64) -> Self {
                Ratio::from_integer(v as $int)
            }

            fn to_f64(&self) -> f64 {
                *self.numer() as f64 / *self.denom() as f64
            }

            fn parts(&self) -> (i64, i64) {
                (*self.numer() as i64, *self.denom() as i64)
            }

            fn parse_ratio(s: &str) -> Option<Self> {
                parse_parts(s).map(|(p, q)| Ratio::new(p as $int, q as $int))
            }
        }
    };
}

impl_exact_machine!(i64);
impl_exact_machine!(i128);

impl ExactScalar for Ratio<BigInt> {
    fn from_int(v: i64) -> Self {
        Ratio::from_integer(BigInt::from(v))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn parts(&self) -> (i64, i64) {
        (
            self.numer().to_i64().expect("numerator fits in i64"),
            self.denom().to_i64().expect("denominator fits in i64"),
        )
    }

    fn parse_ratio(s: &str) -> Option<Self> {
        parse_parts(s).map(|(p, q)| Ratio::new(BigInt::from(p), BigInt::from(q)))
    }
}

fn parse_parts(s: &str) -> Option<(i64, i64)> {
    let s = s.trim();
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (i64::from_str(p.trim()).ok()?, i64::from_str(q.trim()).ok()?),
        None => (i64::from_str(s).ok()?, 1),
    };
    if q.is_zero() {
        return None;
    }
    Some((p, q))
}

/// Floating-point type plans are executed in.
pub trait Real:
    Float + FloatConst + FromPrimitive + Debug + Display + LowerExp + Default + Send + Sync + 'static
{
    fn from_f64_lossy(v: f64) -> Self {
        <Self as FromPrimitive>::from_f64(v).expect("finite constant")
    }

    fn to_f64_lossy(self) -> f64 {
        ToPrimitive::to_f64(&self).unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}
