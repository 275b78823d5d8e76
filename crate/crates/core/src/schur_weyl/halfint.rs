use std::fmt;

use serde::{Deserialize, Serialize};

/// A multiple of 1/2, stored as twice its value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HalfInt(i32);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);

    pub fn from_twice(twice: i32) -> Self {
        HalfInt(twice)
    }

    pub fn twice(self) -> i32 {
        self.0
    }

    pub fn as_f64(self) -> f64 {
        self.0 as f64 / 2.0
    }

    pub fn abs(self) -> Self {
        HalfInt(self.0.abs())
    }
}

impl std::ops::Neg for HalfInt {
    type Output = HalfInt;

    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
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

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display() {
        assert_eq!(HalfInt::from_twice(3).to_string(), "3/2");
        assert_eq!(HalfInt::from_twice(-1).to_string(), "-1/2");
        assert_eq!(HalfInt::from_twice(4).to_string(), "2");
        assert_eq!(HalfInt::ZERO.to_string(), "0");
    }
}
