//! Numeric field for the algebra: exact rationals or 64-bit floats.

use std::fmt::{Debug, Display};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive, Zero};

pub use crate::rational::Rational;

/// Which numeric field an algebra instance computes in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Exact,
    Float,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Float => "float",
        }
    }
}

impl Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact" => Ok(Mode::Exact),
            "float" => Ok(Mode::Float),
            other => Err(format!("unknown mode `{other}` (expected exact|float)")),
        }
    }
}

/// Coefficient type of forms, vectors and endomorphisms.
///
/// Implemented for [`Rational`] and `f64`. The mode is a property of the
/// type, so two values of different modes can never meet in one expression
/// of the generic API; the dynamic [`crate::json::AnyForm`] layer reports
/// such attempts as [`crate::Error::ModeMismatch`].
pub trait Scalar:
    Num
    + Signed
    + Clone
    + Debug
    + Display
    + PartialOrd
    + Send
    + Sync
    + FromPrimitive
    + ToPrimitive
    + 'static
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
{
    const MODE: Mode;

    fn from_int(n: i64) -> Self;

    /// `num / den`; `den` must be nonzero.
    fn ratio(num: i64, den: i64) -> Self;

    fn from_rational(q: &Rational) -> Self;

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Zero in exact mode, `|x| <= tol` in float mode.
    fn is_negligible(&self, tol: f64) -> bool;
}

impl Scalar for Rational {
    const MODE: Mode = Mode::Exact;

    fn from_int(n: i64) -> Self {
        Rational::integer(n)
    }

    fn ratio(num: i64, den: i64) -> Self {
        Rational::from_i128(num.into(), den.into())
    }

    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn is_negligible(&self, _tol: f64) -> bool {
        self.is_zero()
    }
}

impl Scalar for f64 {
    const MODE: Mode = Mode::Float;

    fn from_int(n: i64) -> Self {
        n as f64
    }

    fn ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn from_rational(q: &Rational) -> Self {
        q.to_f64().unwrap_or(f64::NAN)
    }

    fn is_negligible(&self, tol: f64) -> bool {
        self.abs() <= tol
    }
}

/// Parses `"p/q"`, `"p"` or a decimal such as `"-0.25"` into an exact rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        return (!d.is_zero()).then(|| Rational::new(n, d));
    }
    if let Ok(n) = s.parse::<BigInt>() {
        return Some(Rational::from_integer(n));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = body.split_once('.')?;
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("{int}{frac}").parse().ok()?;
    let den = num_traits::pow(BigInt::from(10), frac.len());
    let q = Rational::new(digits, den);
    Some(if neg { -q } else { q })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fraction_integer_and_decimal() {
        assert_eq!(parse_rational("-3/6"), Some(Rational::ratio(-1, 2)));
        assert_eq!(parse_rational("7"), Some(Rational::from_int(7)));
        assert_eq!(parse_rational("-0.25"), Some(Rational::ratio(-1, 4)));
        assert_eq!(parse_rational("1/0x"), None);
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("."), None);
    }

    #[test]
    fn negligible_is_exact_zero_in_rational_mode() {
        assert!(!Rational::ratio(1, 1_000_000_000).is_negligible(1.0));
        assert!(Rational::zero().is_negligible(0.0));
        assert!(1e-13_f64.is_negligible(1e-12));
    }
}
