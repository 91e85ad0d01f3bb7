//! Exact rational arithmetic for analytic payoffs.

use std::fmt;
use std::ops::{Add, AddAssign, Mul};

use num_rational::Rational64;
use num_traits::{CheckedAdd, CheckedMul};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

/// Exact fraction with 64-bit numerator and denominator. Always stored
/// reduced with a positive denominator; arithmetic aborts on overflow
/// instead of wrapping or rounding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(Rational64);

impl Rational {
    pub const fn zero() -> Self {
        Rational(Rational64::new_raw(0, 1))
    }

    /// Panics if `denominator` is zero.
    pub fn new(numerator: i64, denominator: i64) -> Self {
        Rational(Rational64::new(numerator, denominator))
    }

    pub fn from_integer(value: i64) -> Self {
        Rational(Rational64::from_integer(value))
    }

    pub fn numerator(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denominator(&self) -> i64 {
        *self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.numerator() == 0
    }
}

impl Add for Rational {
    type Output = Rational;

    fn add(self, rhs: Rational) -> Rational {
        Rational(self.0.checked_add(&rhs.0).expect("rational overflow"))
    }
}

impl AddAssign for Rational {
    fn add_assign(&mut self, rhs: Rational) {
        *self = *self + rhs;
    }
}

impl Mul for Rational {
    type Output = Rational;

    fn mul(self, rhs: Rational) -> Rational {
        Rational(self.0.checked_mul(&rhs.0).expect("rational overflow"))
    }
}

impl Mul<i64> for Rational {
    type Output = Rational;

    fn mul(self, rhs: i64) -> Rational {
        self * Rational::from_integer(rhs)
    }
}

/// Renders with an explicit denominator even for integers, so exact values
/// are visibly exact: "1/3", "-1/3", "0/1".
impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator(), self.denominator())
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Rational", 2)?;
        s.serialize_field("num", &self.numerator())?;
        s.serialize_field("den", &self.denominator())?;
        s.end()
    }
}

/// Expected payoff of one (strategy, scheme) pairing, exact per player.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ExpectedPayoff {
    pub alice: Rational,
    pub bob: Rational,
}

impl ExpectedPayoff {
    pub fn is_zero_sum(&self) -> bool {
        (self.alice + self.bob).is_zero()
    }
}
