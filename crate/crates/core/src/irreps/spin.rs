use std::fmt;
use std::ops::{Add, Neg, Sub};

/// A half-integer quantum number stored as twice its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInt(i64);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);
    pub const HALF: HalfInt = HalfInt(1);
    pub const ONE: HalfInt = HalfInt(2);
    pub const TWO: HalfInt = HalfInt(4);

    pub const fn from_twice(twice: i64) -> Self {
        HalfInt(twice)
    }
    pub const fn int(v: i64) -> Self {
        HalfInt(2 * v)
    }
    pub const fn twice(self) -> i64 {
        self.0
    }
    pub fn value(self) -> f64 {
        self.0 as f64 / 2.0
    }
    pub const fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }
    pub fn abs(self) -> Self {
        HalfInt(self.0.abs())
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, o: HalfInt) -> HalfInt {
        HalfInt(self.0 + o.0)
    }
}
impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, o: HalfInt) -> HalfInt {
        HalfInt(self.0 - o.0)
    }
}
impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}
impl From<i64> for HalfInt {
    fn from(v: i64) -> Self {
        HalfInt::int(v)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}
