//! Scalar domains for cohomology computations.
//!
//! Everything is exact: integer coefficients are arbitrary-precision
//! [`Int`]s, rational coefficients are arbitrary-precision [`Rat`]s.
//! Coefficients grow under repeated relation rewriting, so no fixed-width
//! arithmetic is used anywhere in the crate.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

pub type Int = num_bigint::BigInt;
pub type Rat = num_rational::BigRational;

/// Coefficient ring for [`crate::ring::CohomClass`]: implemented by [`Int`]
/// (the integral cohomology ring) and [`Rat`] (the rational one).
pub trait Scalar:
    Clone
    + Eq
    + Ord
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + From<Int>
{
}

impl<T> Scalar for T where
    T: Clone
        + Eq
        + Ord
        + fmt::Debug
        + fmt::Display
        + Zero
        + One
        + Neg<Output = Self>
        + Add<Output = Self>
        + Sub<Output = Self>
        + Mul<Output = Self>
        + From<Int>
{
}

pub fn int(v: i64) -> Int {
    Int::from(v)
}

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(Int::from(num), Int::from(den))
}

/// True iff the rational is an integer.
pub fn rat_is_integral(r: &Rat) -> bool {
    r.denom().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rat_normalizes_sign() {
        let r = rat(1, -2);
        assert_eq!(r, rat(-1, 2));
        assert!(!rat_is_integral(&r));
        assert!(rat_is_integral(&rat(4, 2)));
    }
}
