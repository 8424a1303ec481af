use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

/// An element of Z/2.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "u8", into = "u8")]
pub struct Parity(bool);

impl Parity {
    pub const EVEN: Parity = Parity(false);
    pub const ODD: Parity = Parity(true);

    pub fn of(n: i64) -> Parity {
        Parity(n.rem_euclid(2) == 1)
    }

    pub fn is_odd(self) -> bool {
        self.0
    }

    pub fn is_even(self) -> bool {
        !self.0
    }

    /// (-1)^self.
    pub fn sign(self) -> i64 {
        if self.0 {
            -1
        } else {
            1
        }
    }

    pub fn as_int(self) -> i64 {
        i64::from(self.0)
    }
}

impl From<u8> for Parity {
    fn from(v: u8) -> Self {
        Parity(v % 2 == 1)
    }
}

impl From<Parity> for u8 {
    fn from(p: Parity) -> u8 {
        u8::from(p.0)
    }
}

impl Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        Parity(self.0 ^ rhs.0)
    }
}

impl Sub for Parity {
    type Output = Parity;
    fn sub(self, rhs: Parity) -> Parity {
        self + rhs
    }
}

impl Neg for Parity {
    type Output = Parity;
    fn neg(self) -> Parity {
        self
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_int())
    }
}
