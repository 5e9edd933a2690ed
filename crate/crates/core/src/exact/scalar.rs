use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Arbitrary-precision rational. `BigRational` keeps the denominator positive and
/// the fraction reduced, so equal values always share one representation.
pub type ExactScalar = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseExactError {
    #[error("empty rational literal")]
    Empty,
    #[error("malformed rational literal `{0}`")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

pub fn int(n: i64) -> ExactScalar {
    BigRational::from_integer(BigInt::from(n))
}

/// `n / d`, reduced. Panics when `d == 0`.
pub fn frac(n: i64, d: i64) -> ExactScalar {
    assert!(d != 0, "zero denominator");
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn from_bigint(n: BigInt) -> ExactScalar {
    BigRational::from_integer(n)
}

/// Parses `p`, `-p`, `p/q` (whitespace around the parts is tolerated).
pub fn parse_scalar(text: &str) -> Result<ExactScalar, ParseExactError> {
    let t = text.trim();
    if t.is_empty() {
        return Err(ParseExactError::Empty);
    }
    let bad = || ParseExactError::Malformed(t.to_string());
    let parse_int = |s: &str| -> Result<BigInt, ParseExactError> {
        let s = s.trim();
        let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        BigInt::from_str(s.strip_prefix('+').unwrap_or(s)).map_err(|_| bad())
    };
    match t.split_once('/') {
        None => Ok(BigRational::from_integer(parse_int(t)?)),
        Some((num, den)) => {
            let num = parse_int(num)?;
            let den = parse_int(den)?;
            if den.is_zero() {
                return Err(ParseExactError::ZeroDenominator(t.to_string()));
            }
            Ok(BigRational::new(num, den))
        }
    }
}

/// Canonical text form: `p` for integers, `p/q` otherwise.
pub fn format_scalar(x: &ExactScalar) -> String {
    x.to_string()
}

pub fn is_integer(x: &ExactScalar) -> bool {
    x.is_integer()
}

pub fn to_i64(x: &ExactScalar) -> Option<i64> {
    if x.is_integer() {
        x.numer().to_i64()
    } else {
        None
    }
}

/// Exact sign in {-1, 0, 1}.
pub fn sign(x: &ExactScalar) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// True when `x` is an odd integer.
pub fn is_odd_integer(x: &ExactScalar) -> bool {
    x.is_integer() && x.numer().is_odd()
}

/// True when `x` is an even integer.
pub fn is_even_integer(x: &ExactScalar) -> bool {
    x.is_integer() && x.numer().is_even()
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Exact complex number with rational parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ComplexExact {
    pub re: ExactScalar,
    pub im: ExactScalar,
}

impl ComplexExact {
    pub fn new(re: ExactScalar, im: ExactScalar) -> Self {
        ComplexExact { re, im }
    }

    pub fn real(re: ExactScalar) -> Self {
        ComplexExact {
            re,
            im: ExactScalar::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::real(int(n))
    }

    pub fn zero() -> Self {
        Self::real(ExactScalar::zero())
    }

    pub fn one() -> Self {
        Self::real(ExactScalar::one())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// The integer value, when the number is a real integer.
    pub fn as_integer(&self) -> Option<BigInt> {
        (self.im.is_zero() && self.re.is_integer()).then(|| self.re.numer().clone())
    }

    pub fn is_integer(&self) -> bool {
        self.as_integer().is_some()
    }

    pub fn is_odd_integer(&self) -> bool {
        self.as_integer().is_some_and(|n| n.is_odd())
    }

    pub fn is_even_integer(&self) -> bool {
        self.as_integer().is_some_and(|n| n.is_even())
    }

    pub fn scale(&self, s: &ExactScalar) -> Self {
        ComplexExact::new(&self.re * s, &self.im * s)
    }

    pub fn conj(&self) -> Self {
        ComplexExact::new(self.re.clone(), -&self.im)
    }

    pub fn norm_sqr(&self) -> ExactScalar {
        &self.re * &self.re + &self.im * &self.im
    }

    /// `None` when dividing by zero.
    pub fn checked_div(&self, rhs: &ComplexExact) -> Option<ComplexExact> {
        if rhs.is_zero() {
            return None;
        }
        let d = rhs.norm_sqr();
        let num = self * &rhs.conj();
        Some(ComplexExact::new(num.re / &d, num.im / d))
    }

    /// Parses `a`, `a/b`, `a+bi`, `a-b/ci`, `bi`, `i`, `-i`.
    pub fn parse(text: &str) -> Result<Self, ParseExactError> {
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(ParseExactError::Empty);
        }
        let Some(body) = t.strip_suffix('i') else {
            return Ok(Self::real(parse_scalar(&t)?));
        };
        let split = body
            .char_indices()
            .filter(|&(i, c)| i > 0 && (c == '+' || c == '-'))
            .map(|(i, _)| i)
            .next_back();
        let (re_part, im_part) = match split {
            Some(i) => (&body[..i], &body[i..]),
            None => ("0", body),
        };
        let im = match im_part {
            "" | "+" => ExactScalar::one(),
            "-" => -ExactScalar::one(),
            s => parse_scalar(s)?,
        };
        Ok(ComplexExact::new(parse_scalar(re_part)?, im))
    }
}

impl fmt::Display for ComplexExact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, -&self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl From<ExactScalar> for ComplexExact {
    fn from(re: ExactScalar) -> Self {
        ComplexExact::real(re)
    }
}

impl From<i64> for ComplexExact {
    fn from(n: i64) -> Self {
        ComplexExact::from_int(n)
    }
}

impl<'a> Add<&'a ComplexExact> for &'a ComplexExact {
    type Output = ComplexExact;
    fn add(self, rhs: &ComplexExact) -> ComplexExact {
        ComplexExact::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl<'a> Sub<&'a ComplexExact> for &'a ComplexExact {
    type Output = ComplexExact;
    fn sub(self, rhs: &ComplexExact) -> ComplexExact {
        ComplexExact::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl<'a> Mul<&'a ComplexExact> for &'a ComplexExact {
    type Output = ComplexExact;
    fn mul(self, rhs: &ComplexExact) -> ComplexExact {
        ComplexExact::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Neg for &ComplexExact {
    type Output = ComplexExact;
    fn neg(self) -> ComplexExact {
        ComplexExact::new(-&self.re, -&self.im)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<ComplexExact> for ComplexExact {
            type Output = ComplexExact;
            fn $method(self, rhs: ComplexExact) -> ComplexExact {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a ComplexExact> for ComplexExact {
            type Output = ComplexExact;
            fn $method(self, rhs: &ComplexExact) -> ComplexExact {
                (&self).$method(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for ComplexExact {
    type Output = ComplexExact;
    fn neg(self) -> ComplexExact {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_normalizes() {
        assert_eq!(parse_scalar("6/4").unwrap(), frac(3, 2));
        assert_eq!(parse_scalar("-2/-4").unwrap(), frac(1, 2));
        assert_eq!(parse_scalar(" 7 ").unwrap(), int(7));
        assert_eq!(parse_scalar("+3/9").unwrap(), frac(1, 3));
        assert!(matches!(parse_scalar("1/0"), Err(ParseExactError::ZeroDenominator(_))));
        assert!(matches!(parse_scalar("1.5"), Err(ParseExactError::Malformed(_))));
        assert!(matches!(parse_scalar(""), Err(ParseExactError::Empty)));
        assert_eq!(format_scalar(&frac(-4, 6)), "-2/3");
        assert_eq!(format_scalar(&frac(4, 2)), "2");
    }

    #[test]
    fn exact_addition_matches_cross_multiplication() {
        // 1/6 + 3/10 = (10 + 18)/60 = 7/15
        assert_eq!(frac(1, 6) + frac(3, 10), frac(7, 15));
    }

    #[test]
    fn complex_parse_and_display_round_trip() {
        for text in ["3", "1/2+3/4i", "-1/2-i", "5i", "-i", "2-7/3i"] {
            let z = ComplexExact::parse(text).unwrap();
            assert_eq!(ComplexExact::parse(&z.to_string()).unwrap(), z, "{text}");
        }
        assert_eq!(
            ComplexExact::parse("1/2-3i").unwrap(),
            ComplexExact::new(frac(1, 2), int(-3))
        );
    }

    #[test]
    fn complex_division() {
        let a = ComplexExact::new(int(1), int(2));
        let b = ComplexExact::new(int(3), int(-1));
        let q = a.checked_div(&b).unwrap();
        assert_eq!(&q * &b, a);
        assert!(a.checked_div(&ComplexExact::zero()).is_none());
    }
}
