//! Coefficient rings for formal series.
//!
//! Everything that manipulates series coefficients is generic over [`Scalar`].
//! The exact instances ([`num_rational::BigRational`], [`num_rational::Rational64`])
//! are what the factorization code relies on; the float instances are handy for
//! quick numerical inspection of large truncations.

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive, Zero};

/// A field-like coefficient type.
pub trait Scalar:
    Clone + Debug + Display + PartialOrd + Num + Neg<Output = Self> + Signed + FromPrimitive + Send + Sync
{
    /// True when the value is an integer (exactly, for rational types).
    fn is_integral(&self) -> bool;

    /// The value as an `i64` if it is an integer that fits.
    fn to_integer(&self) -> Option<i64>;

    /// Whether arithmetic in this type is exact.
    const EXACT: bool;

    fn from_int(v: i64) -> Self {
        Self::from_i64(v).expect("every scalar type represents small integers")
    }

    /// `1/k` for a positive integer `k`.
    fn recip_int(k: u64) -> Self {
        Self::one() / Self::from_u64(k).expect("every scalar type represents small integers")
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn is_integral(&self) -> bool {
        self.is_integer()
    }

    fn to_integer(&self) -> Option<i64> {
        if self.is_integer() {
            self.numer().to_i64()
        } else {
            None
        }
    }
}

impl Scalar for Ratio<i64> {
    const EXACT: bool = true;

    fn is_integral(&self) -> bool {
        self.is_integer()
    }

    fn to_integer(&self) -> Option<i64> {
        self.is_integer().then(|| *self.numer())
    }
}

macro_rules! impl_float_scalar {
    ($($t:ty),*) => {
        $(
            impl Scalar for $t {
                const EXACT: bool = false;

                fn is_integral(&self) -> bool {
                    self.is_finite() && self.fract() == 0.0
                }

                fn to_integer(&self) -> Option<i64> {
                    if self.is_integral() && self.abs() < 9.0e15 {
                        Some(*self as i64)
                    } else {
                        None
                    }
                }
            }
        )*
    };
}

impl_float_scalar!(f32, f64);

/// Parse an exact rational written as `"p"` or `"p/q"`.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(BigRational::new(num, den))
}

/// Render an exact rational as `"p"` (integers) or `"p/q"`.
pub fn render_rational(value: &BigRational) -> String {
    value.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_text_round_trip() {
        let half = parse_rational("-3/6").unwrap();
        assert_eq!(render_rational(&half), "-1/2");
        assert_eq!(render_rational(&parse_rational("4").unwrap()), "4");
        assert!(parse_rational("1/0").is_none());
        assert!(parse_rational("x").is_none());
    }

    #[test]
    fn integrality() {
        assert!(BigRational::from_int(3).is_integral());
        assert!(!BigRational::recip_int(3).is_integral());
        assert_eq!(Scalar::to_integer(&Ratio::<i64>::from_int(-5)), Some(-5));
        assert!(2.0f64.is_integral());
        assert!(!0.5f32.is_integral());
    }
}
