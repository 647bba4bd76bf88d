//! Exact ordered-field scalars.
//!
//! Every length, position, slope and function value in this crate is an
//! element of an exact ordered field. The algorithms only need field
//! operations, a total order and a handful of rational-specific helpers
//! (integrality, rational gcd, canonical `p/q` text), which is what
//! [`Scalar`] collects. It is implemented for [`Ratio<T>`] over any signed
//! machine or big integer; the crate root fixes [`crate::Rational`] to the
//! arbitrary precision variant.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};

/// An exact ordered field element with rational structure.
pub trait Scalar:
    Clone + Ord + Hash + Debug + Display + Num + Signed + Send + Sync + 'static
{
    fn from_int(n: i64) -> Self;

    fn from_uint(n: u64) -> Self;

    fn frac(numer: i64, denom: i64) -> Self {
        Self::from_int(numer) / Self::from_int(denom)
    }

    fn is_integer(&self) -> bool;

    /// Value as an `i64` when it is an integer that fits.
    fn to_int(&self) -> Option<i64>;

    /// Smallest integer `>= self`, when it fits in an `i64`.
    fn ceil_int(&self) -> Option<i64>;

    /// Largest `g > 0` such that both `self / g` and `other / g` are integers.
    /// Both arguments must be non-zero.
    fn rational_gcd(&self, other: &Self) -> Self;

    /// Canonical `p/q` text with `q > 0` and `gcd(p, q) = 1`.
    fn to_canonical(&self) -> String;

    /// Parses `p/q` or a bare integer `p`.
    fn parse_canonical(s: &str) -> Option<Self>;
}

impl<T> Scalar for Ratio<T>
where
    T: Clone
        + Integer
        + Signed
        + Hash
        + Debug
        + Display
        + FromStr
        + FromPrimitive
        + ToPrimitive
        + Send
        + Sync
        + 'static,
{
    fn from_int(n: i64) -> Self {
        Ratio::from_integer(T::from_i64(n).expect("integer does not fit the scalar type"))
    }

    fn from_uint(n: u64) -> Self {
        Ratio::from_integer(T::from_u64(n).expect("integer does not fit the scalar type"))
    }

    fn is_integer(&self) -> bool {
        Ratio::is_integer(self)
    }

    fn to_int(&self) -> Option<i64> {
        if Ratio::is_integer(self) {
            self.numer().to_i64()
        } else {
            None
        }
    }

    fn ceil_int(&self) -> Option<i64> {
        self.ceil().numer().to_i64()
    }

    fn rational_gcd(&self, other: &Self) -> Self {
        // gcd(a/b, c/d) = gcd(a d, c b) / (b d), then reduced by Ratio::new.
        let (a, b) = (self.numer().abs(), self.denom().clone());
        let (c, d) = (other.numer().abs(), other.denom().clone());
        let num = (a * d.clone()).gcd(&(c * b.clone()));
        Ratio::new(num, b * d)
    }

    fn to_canonical(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }

    fn parse_canonical(s: &str) -> Option<Self> {
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim().parse::<T>().ok()?, d.trim().parse::<T>().ok()?),
            None => (s.parse::<T>().ok()?, T::one()),
        };
        if d.is_zero() {
            return None;
        }
        Some(Ratio::new(n, d))
    }
}

pub(crate) fn lcm_u64(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

pub(crate) fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}
