//! Scalar fields for the linear algebra and the representation oracle.
//!
//! Everything downstream is generic over [`Field`]; the oracle additionally
//! needs [`FiniteField`] so it can enumerate matrix entries. Prime fields are
//! the const-generic [`Fp`], and `Rational64` is a [`Field`] for exact work
//! over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Rational64;
use num_traits::{One, Zero};

/// A commutative field with exact arithmetic.
pub trait Field:
    Copy
    + Eq
    + fmt::Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    /// Multiplicative inverse, `None` for zero.
    fn inv(self) -> Option<Self>;
}

/// A field with finitely many elements, indexable as `0..ORDER`.
pub trait FiniteField: Field {
    const ORDER: u32;

    /// The element with the given index; index 0 is zero and index 1 is one.
    fn from_index(index: u32) -> Self;

    fn index(self) -> u32;

    fn elements() -> impl Iterator<Item = Self> {
        (0..Self::ORDER).map(Self::from_index)
    }
}

/// The prime field `Z/PZ`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fp<const P: u32>(u32);

impl<const P: u32> Fp<P> {
    pub const fn new(value: u32) -> Self {
        Self(value % P)
    }

    pub const fn value(self) -> u32 {
        self.0
    }

    fn pow(self, mut exp: u32) -> Self {
        let mut base = self;
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            exp >>= 1;
        }
        acc
    }
}

impl<const P: u32> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u32> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u32> Add for Fp<P> {
    type Output = Self;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        let s = self.0 + rhs.0;
        Self(if s >= P { s - P } else { s })
    }
}

impl<const P: u32> Sub for Fp<P> {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        Self(if self.0 >= rhs.0 { self.0 - rhs.0 } else { self.0 + P - rhs.0 })
    }
}

impl<const P: u32> Mul for Fp<P> {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: Self) -> Self {
        Self(self.0 * rhs.0 % P)
    }
}

impl<const P: u32> Neg for Fp<P> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self(if self.0 == 0 { 0 } else { P - self.0 })
    }
}

impl<const P: u32> Zero for Fp<P> {
    fn zero() -> Self {
        Self(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u32> One for Fp<P> {
    fn one() -> Self {
        Self(1 % P)
    }
}

impl<const P: u32> Field for Fp<P> {
    fn inv(self) -> Option<Self> {
        // Fermat: a^(P-2) is the inverse for prime P.
        (self.0 != 0).then(|| self.pow(P - 2))
    }
}

impl<const P: u32> FiniteField for Fp<P> {
    const ORDER: u32 = P;

    #[inline]
    fn from_index(index: u32) -> Self {
        Self(index)
    }

    #[inline]
    fn index(self) -> u32 {
        self.0
    }
}

impl Field for Rational64 {
    fn inv(self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }
}

/// Primes accepted wherever a runtime field choice is made.
pub const SUPPORTED_PRIMES: [u32; 4] = [2, 3, 5, 7];

/// Runs `$body` with the type alias `$F` bound to the prime field of order
/// `$p`. Evaluates to `Err(Error::UnsupportedPrime)` for other values.
#[macro_export]
macro_rules! with_prime_field {
    ($p:expr, $F:ident => $body:expr) => {{
        match $p {
            2 => {
                type $F = $crate::F2;
                Ok($body)
            }
            3 => {
                type $F = $crate::F3;
                Ok($body)
            }
            5 => {
                type $F = $crate::F5;
                Ok($body)
            }
            7 => {
                type $F = $crate::F7;
                Ok($body)
            }
            other => Err($crate::Error::UnsupportedPrime(other)),
        }
    }};
}
