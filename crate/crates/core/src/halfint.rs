//! Exact half-integers, stored doubled.

use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

/// An element of (1/2)·Z; `HalfInt::half(3)` is 3/2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HalfInt(i64);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);

    pub fn int(n: i64) -> Self {
        HalfInt(2 * n)
    }

    /// Value n/2.
    pub fn half(n: i64) -> Self {
        HalfInt(n)
    }

    pub fn doubled(self) -> i64 {
        self.0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    pub fn as_integer(self) -> Option<i64> {
        self.is_integer().then_some(self.0 / 2)
    }

    pub fn is_nonnegative(self) -> bool {
        self.0 >= 0
    }
}

impl From<i64> for HalfInt {
    fn from(n: i64) -> Self {
        HalfInt::int(n)
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 + rhs.0)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 - rhs.0)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl AddAssign for HalfInt {
    fn add_assign(&mut self, rhs: HalfInt) {
        self.0 += rhs.0;
    }
}

impl SubAssign for HalfInt {
    fn sub_assign(&mut self, rhs: HalfInt) {
        self.0 -= rhs.0;
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}
