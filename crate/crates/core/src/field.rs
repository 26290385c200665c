//! Exact scalar fields.
//!
//! Everything in this crate is generic over [`Field`]. The default scalar is
//! [`Rational`] (arbitrary precision `p/q`); [`Fp`] gives a prime field for
//! modular sessions.

use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

/// Arbitrary-precision rational numbers in canonical reduced form.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid scalar `{0}`")]
pub struct ScalarParseError(pub String);

pub trait Field:
    Clone
    + Debug
    + Display
    + PartialEq
    + Eq
    + Hash
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Div<Output = Self>
{
    fn from_i64(n: i64) -> Self;

    /// Parses `p/q` or a bare integer `p`.
    fn parse_scalar(s: &str) -> Result<Self, ScalarParseError>;
}

fn split_fraction(s: &str) -> Result<(BigInt, BigInt), ScalarParseError> {
    let err = || ScalarParseError(s.to_string());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| err())?;
    let den = BigInt::from_str(den).map_err(|_| err())?;
    if den.is_zero() || den < BigInt::zero() {
        return Err(err());
    }
    Ok((num, den))
}

impl Field for BigRational {
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn parse_scalar(s: &str) -> Result<Self, ScalarParseError> {
        let (num, den) = split_fraction(s)?;
        Ok(BigRational::new(num, den))
    }
}

/// The prime field `Z/PZ`. `P` must be prime; this is checked when the
/// first inverse is taken.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    pub fn new(value: i128) -> Self {
        Fp(value.rem_euclid(P as i128) as u64)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn pow(self, mut exp: u64) -> Self {
        let mut base = self;
        let mut acc = Fp::<P>(1 % P);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            exp >>= 1;
        }
        acc
    }

    pub fn inverse(self) -> Self {
        assert!(self.0 != 0, "division by zero in F_{P}");
        let inv = self.pow(P - 2);
        assert!((inv * self).0 == 1, "modulus {P} is not prime");
        inv
    }
}

impl<const P: u64> Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.0, P)
    }
}

impl<const P: u64> Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Fp<P> {
    fn one() -> Self {
        Fp(1 % P)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Fp(((self.0 as u128 + rhs.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Fp(((self.0 as u128 + P as u128 - rhs.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fp(((self.0 as u128 * rhs.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp((P - self.0) % P)
    }
}

impl<const P: u64> Div for Fp<P> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        self * rhs.inverse()
    }
}

impl<const P: u64> Field for Fp<P> {
    fn from_i64(n: i64) -> Self {
        Fp::new(n as i128)
    }

    fn parse_scalar(s: &str) -> Result<Self, ScalarParseError> {
        let (num, den) = split_fraction(s)?;
        let modulus = BigInt::from(P);
        let reduce = |x: &BigInt| -> Self {
            let r = ((x % &modulus) + &modulus) % &modulus;
            Fp(r.to_string().parse().expect("residue fits in u64"))
        };
        let den = reduce(&den);
        if den.is_zero() {
            return Err(ScalarParseError(s.to_string()));
        }
        Ok(reduce(&num) / den)
    }
}
