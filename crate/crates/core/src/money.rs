//! Exact money arithmetic in integer cents.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

/// An amount of US dollars held as whole cents.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cents(pub i64);

impl Cents {
    pub const ZERO: Cents = Cents(0);

    /// Rounds a (possibly fractional) dollar amount to the nearest cent.
    pub fn from_dollars(dollars: f64) -> Self {
        Cents((dollars * 100.0).round() as i64)
    }

    pub fn whole_dollars(dollars: i64) -> Self {
        Cents(dollars * 100)
    }

    /// Multiplies by a real factor and rounds half away from zero.
    pub fn scale(self, factor: f64) -> Self {
        Cents((self.0 as f64 * factor).round() as i64)
    }

    pub fn as_dollars(self) -> f64 {
        self.0 as f64 / 100.0
    }

    /// Whole dollars, rounding half away from zero.
    pub fn round_dollars(self) -> i64 {
        let q = self.0 / 100;
        let r = self.0 % 100;
        if r >= 50 {
            q + 1
        } else if r <= -50 {
            q - 1
        } else {
            q
        }
    }

    pub fn max(self, other: Cents) -> Cents {
        if self >= other {
            self
        } else {
            other
        }
    }
}

impl Add for Cents {
    type Output = Cents;
    fn add(self, rhs: Cents) -> Cents {
        Cents(self.0 + rhs.0)
    }
}

impl AddAssign for Cents {
    fn add_assign(&mut self, rhs: Cents) {
        self.0 += rhs.0;
    }
}

impl Sub for Cents {
    type Output = Cents;
    fn sub(self, rhs: Cents) -> Cents {
        Cents(self.0 - rhs.0)
    }
}

impl SubAssign for Cents {
    fn sub_assign(&mut self, rhs: Cents) {
        self.0 -= rhs.0;
    }
}

impl Neg for Cents {
    type Output = Cents;
    fn neg(self) -> Cents {
        Cents(-self.0)
    }
}

impl Sum for Cents {
    fn sum<I: Iterator<Item = Cents>>(iter: I) -> Cents {
        iter.fold(Cents::ZERO, Add::add)
    }
}

/// Formats as a plain decimal dollar amount with two places, e.g. `-12.05`.
impl fmt::Display for Cents {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.0 < 0 { "-" } else { "" };
        let abs = self.0.unsigned_abs();
        write!(f, "{}{}.{:02}", sign, abs / 100, abs % 100)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounds_to_whole_dollars() {
        assert_eq!(Cents(149).round_dollars(), 1);
        assert_eq!(Cents(150).round_dollars(), 2);
        assert_eq!(Cents(-150).round_dollars(), -2);
        assert_eq!(Cents(-149).round_dollars(), -1);
    }

    #[test]
    fn display_is_locale_free() {
        assert_eq!(Cents(12_345_678).to_string(), "123456.78");
        assert_eq!(Cents(-5).to_string(), "-0.05");
        assert_eq!(Cents::from_dollars(0.6).to_string(), "0.60");
    }
}
