use std::fmt;

use serde::Serialize;

/// Nonnegative fraction kept unreduced, so `num/den` reads off the counts
/// that produced it. Equality compares the reduced value.
#[derive(Debug, Clone, Copy, Eq, Serialize)]
pub struct ExactRatio {
    pub num: u128,
    pub den: u128,
}

impl ExactRatio {
    pub fn new(num: u128, den: u128) -> Self {
        assert!(den > 0, "zero denominator");
        ExactRatio { num, den }
    }

    pub fn reduced(self) -> Self {
        let g = gcd(self.num, self.den);
        ExactRatio {
            num: self.num / g,
            den: self.den / g,
        }
    }

    pub fn to_f64(self) -> f64 {
        // Reducing first keeps both halves exactly representable for longer.
        let r = self.reduced();
        r.num as f64 / r.den as f64
    }

    /// `1 - self`, assuming `self <= 1`.
    pub fn complement(self) -> Self {
        ExactRatio::new(self.den - self.num, self.den)
    }
}

impl PartialEq for ExactRatio {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = (self.reduced(), other.reduced());
        a.num == b.num && a.den == b.den
    }
}

impl fmt::Display for ExactRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}
