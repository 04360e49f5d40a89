//! Exact commutative rings used as term coefficients.
//!
//! Two carriers are provided: [`Rational`] (the default) and [`Gaussian`]
//! rationals `a+bi`. Both keep a canonical representation, so structural
//! equality coincides with ring equality and zero tests are exact.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid scalar literal `{0}`")]
pub struct ScalarParseError(pub String);

/// Coefficient ring of a term.
///
/// Implementations must be canonical: `a == b` iff they denote the same ring
/// element.
pub trait Scalar:
    Clone
    + Eq
    + Hash
    + fmt::Debug
    + fmt::Display
    + FromStr<Err = ScalarParseError>
    + Zero
    + One
    + Add<Output = Self>
    + Mul<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// Embeds the rational `numer/denom`. `denom` must be nonzero.
    fn from_ratio(numer: i64, denom: i64) -> Self;

    /// Parses the longest scalar literal at the start of `input`, returning it
    /// together with the number of bytes consumed.
    fn parse_prefix(input: &str) -> Option<(Self, usize)>;
}

/// Arbitrary-precision rational in lowest terms.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Rational(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn from_integer(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl Zero for Rational {
    fn zero() -> Self {
        Rational(BigRational::zero())
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for Rational {
    fn one() -> Self {
        Rational(BigRational::one())
    }
}

impl Add for Rational {
    type Output = Rational;

    fn add(self, rhs: Rational) -> Rational {
        Rational(self.0 + rhs.0)
    }
}

impl Mul for Rational {
    type Output = Rational;

    fn mul(self, rhs: Rational) -> Rational {
        Rational(self.0 * rhs.0)
    }
}

impl Neg for Rational {
    type Output = Rational;

    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

/// Scans `-?digits(/digits)?` and returns the byte length, without the sign
/// if `allow_sign` is false.
fn scan_rational(input: &str, allow_sign: bool) -> Option<(Rational, usize)> {
    let bytes = input.as_bytes();
    let mut i = 0;
    let negative = allow_sign && bytes.first() == Some(&b'-');
    if negative {
        i += 1;
    }
    let start = i;
    while i < bytes.len() && bytes[i].is_ascii_digit() {
        i += 1;
    }
    if i == start {
        return None;
    }
    let numer: BigInt = input[start..i].parse().ok()?;
    let mut denom = BigInt::one();
    if bytes.get(i) == Some(&b'/') {
        let dstart = i + 1;
        let mut j = dstart;
        while j < bytes.len() && bytes[j].is_ascii_digit() {
            j += 1;
        }
        if j > dstart {
            let d: BigInt = input[dstart..j].parse().ok()?;
            if d.is_zero() {
                return None;
            }
            denom = d;
            i = j;
        }
    }
    let mut value = BigRational::new(numer, denom);
    if negative {
        value = -value;
    }
    Some((Rational(value), i))
}

impl FromStr for Rational {
    type Err = ScalarParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let trimmed = s.trim();
        match scan_rational(trimmed, true) {
            Some((r, len)) if len == trimmed.len() => Ok(r),
            _ => Err(ScalarParseError(s.to_string())),
        }
    }
}

impl Scalar for Rational {
    fn from_ratio(numer: i64, denom: i64) -> Self {
        Rational::new(numer, denom)
    }

    fn parse_prefix(input: &str) -> Option<(Self, usize)> {
        scan_rational(input, true)
    }
}

/// Gaussian rational `re + im·i`, for complex amplitudes.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gaussian {
    pub re: Rational,
    pub im: Rational,
}

impl Gaussian {
    pub fn new(re: Rational, im: Rational) -> Self {
        Gaussian { re, im }
    }

    pub fn i() -> Self {
        Gaussian::new(Rational::zero(), Rational::one())
    }
}

impl fmt::Debug for Gaussian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn write_imaginary(f: &mut fmt::Formatter<'_>, im: &Rational) -> fmt::Result {
    if im.is_one() {
        write!(f, "i")
    } else if (-im.clone()).is_one() {
        write!(f, "-i")
    } else {
        write!(f, "{im}i")
    }
}

impl fmt::Display for Gaussian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write_imaginary(f, &self.im),
            (false, false) => {
                write!(f, "{}", self.re)?;
                if !self.im.is_negative() {
                    write!(f, "+")?;
                }
                write_imaginary(f, &self.im)
            }
        }
    }
}

impl Zero for Gaussian {
    fn zero() -> Self {
        Gaussian::new(Rational::zero(), Rational::zero())
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for Gaussian {
    fn one() -> Self {
        Gaussian::new(Rational::one(), Rational::zero())
    }
}

impl Add for Gaussian {
    type Output = Gaussian;

    fn add(self, rhs: Gaussian) -> Gaussian {
        Gaussian::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Mul for Gaussian {
    type Output = Gaussian;

    fn mul(self, rhs: Gaussian) -> Gaussian {
        let re = self.re.clone() * rhs.re.clone() + -(self.im.clone() * rhs.im.clone());
        let im = self.re * rhs.im + self.im * rhs.re;
        Gaussian::new(re, im)
    }
}

impl Neg for Gaussian {
    type Output = Gaussian;

    fn neg(self) -> Gaussian {
        Gaussian::new(-self.re, -self.im)
    }
}

/// Parses an imaginary component `[-]q?i` where `q` is an unsigned rational;
/// `sign_required` demands an explicit leading `+` or `-`.
fn scan_imaginary(input: &str, sign_required: bool) -> Option<(Rational, usize)> {
    let bytes = input.as_bytes();
    let mut i = 0;
    let mut negative = false;
    match bytes.first() {
        Some(b'+') => i = 1,
        Some(b'-') => {
            negative = true;
            i = 1
        }
        _ if sign_required => return None,
        _ => {}
    }
    let (coeff, len) = match scan_rational(&input[i..], false) {
        Some((r, len)) => (r, len),
        None => (Rational::one(), 0),
    };
    i += len;
    if bytes.get(i) != Some(&b'i') {
        return None;
    }
    // `i` must not run into an identifier such as `if`.
    if let Some(next) = input[i + 1..].chars().next() {
        if next.is_alphanumeric() || next == '_' || next == '\'' {
            return None;
        }
    }
    let coeff = if negative { -coeff } else { coeff };
    Some((coeff, i + 1))
}

impl Scalar for Gaussian {
    fn from_ratio(numer: i64, denom: i64) -> Self {
        Gaussian::new(Rational::new(numer, denom), Rational::zero())
    }

    fn parse_prefix(input: &str) -> Option<(Self, usize)> {
        if let Some((im, len)) = scan_imaginary(input, false) {
            return Some((Gaussian::new(Rational::zero(), im), len));
        }
        let (re, len) = scan_rational(input, true)?;
        if let Some((im, ilen)) = scan_imaginary(&input[len..], true) {
            return Some((Gaussian::new(re, im), len + ilen));
        }
        Some((Gaussian::new(re, Rational::zero()), len))
    }
}

impl FromStr for Gaussian {
    type Err = ScalarParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let trimmed = s.trim();
        match Gaussian::parse_prefix(trimmed) {
            Some((g, len)) if len == trimmed.len() => Ok(g),
            _ => Err(ScalarParseError(s.to_string())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn rational_examples() {
        assert_eq!(q(1, 2) + q(1, 2), Rational::one());
        assert_eq!(q(3, 7) + Rational::zero(), q(3, 7));
        assert_eq!(q(2, 3) + q(1, 6), q(5, 6));
        assert_eq!(q(3, 7) * Rational::one(), q(3, 7));
        assert!((q(3, 7) * Rational::zero()).is_zero());
        assert_eq!(q(2, 3) * q(3, 4), q(1, 2));
        assert_eq!(q(1, 2), q(2, 4));
        assert_ne!(Rational::zero(), Rational::one());
        assert_eq!(q(1, 3) + q(1, 3), q(2, 3));
    }

    #[test]
    fn rational_text() {
        assert_eq!("7".parse::<Rational>().unwrap(), q(7, 1));
        assert_eq!("-3/6".parse::<Rational>().unwrap(), q(-1, 2));
        assert_eq!(q(-1, 2).to_string(), "-1/2");
        assert_eq!(q(4, 2).to_string(), "2");
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
        assert_eq!(Rational::parse_prefix("1/2.x"), Some((q(1, 2), 3)));
        assert_eq!(Rational::parse_prefix("3.x"), Some((q(3, 1), 1)));
    }

    #[test]
    fn gaussian_text_and_arithmetic() {
        let z: Gaussian = "1+2i".parse().unwrap();
        assert_eq!(z, Gaussian::new(q(1, 1), q(2, 1)));
        assert_eq!(z.to_string(), "1+2i");
        assert_eq!(
            "-i".parse::<Gaussian>().unwrap(),
            Gaussian::new(q(0, 1), q(-1, 1))
        );
        assert_eq!(
            "1/2-1/2i".parse::<Gaussian>().unwrap().to_string(),
            "1/2-1/2i"
        );
        assert_eq!(Gaussian::i() * Gaussian::i(), -Gaussian::one());
        assert_eq!(
            Gaussian::parse_prefix("2i.x"),
            Some((Gaussian::new(q(0, 1), q(2, 1)), 2))
        );
        assert_eq!(
            Gaussian::parse_prefix("2.x"),
            Some((Gaussian::from_ratio(2, 1), 1))
        );
        assert_eq!(Gaussian::parse_prefix("1+x"), Some((Gaussian::one(), 1)));
        assert_eq!(Gaussian::parse_prefix("if"), None);
    }

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (-20i64..20, 1i64..12).prop_map(|(n, d)| q(n, d))
    }

    fn arb_gaussian() -> impl Strategy<Value = Gaussian> {
        (arb_rational(), arb_rational()).prop_map(|(a, b)| Gaussian::new(a, b))
    }

    fn ring_axioms<S: Scalar>(a: S, b: S, c: S) {
        assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
        assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
        assert_eq!(
            (a.clone() + b.clone()) + c.clone(),
            a.clone() + (b.clone() + c.clone())
        );
        assert_eq!(
            (a.clone() * b.clone()) * c.clone(),
            a.clone() * (b.clone() * c.clone())
        );
        assert_eq!(
            a.clone() * (b.clone() + c.clone()),
            a.clone() * b.clone() + a.clone() * c.clone()
        );
        assert_eq!(a.clone() + S::zero(), a.clone());
        assert_eq!(a.clone() * S::one(), a.clone());
        assert!((a.clone() * S::zero()).is_zero());
        let printed = a.to_string();
        assert_eq!(printed.parse::<S>().unwrap(), a);
    }

    proptest! {
        #[test]
        fn rational_ring(a in arb_rational(), b in arb_rational(), c in arb_rational()) {
            ring_axioms(a, b, c);
        }

        #[test]
        fn gaussian_ring(a in arb_gaussian(), b in arb_gaussian(), c in arb_gaussian()) {
            ring_axioms(a, b, c);
        }

        #[test]
        fn equality_is_representation(a in arb_rational(), b in arb_rational()) {
            prop_assert_eq!(a == b, a.to_string() == b.to_string());
        }
    }
}
