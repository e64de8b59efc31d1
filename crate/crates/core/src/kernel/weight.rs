use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use super::scalar::{parse_rational, Rational};
use crate::error::{Error, Result};

/// A half-integer conformal weight, stored as twice its value.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Weight(i64);

impl Weight {
    pub const ZERO: Weight = Weight(0);
    pub const HALF: Weight = Weight(1);
    pub const ONE: Weight = Weight(2);

    pub const fn from_twice(twice: i64) -> Self {
        Weight(twice)
    }

    pub const fn int(n: i64) -> Self {
        Weight(2 * n)
    }

    pub const fn twice(self) -> i64 {
        self.0
    }

    pub fn from_rational(q: &Rational) -> Result<Self> {
        let den = q.denom();
        if !(den.is_one() || *den == BigInt::from(2)) {
            return Err(Error::InvalidWeight(super::scalar::format_rational(q)));
        }
        let twice = (q * Rational::from_integer(BigInt::from(2)))
            .to_integer()
            .to_i64()
            .ok_or_else(|| Error::InvalidWeight(super::scalar::format_rational(q)))?;
        Ok(Weight(twice))
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::from_rational(&parse_rational(s)?)
    }

    pub fn to_rational(self) -> Rational {
        Rational::new(BigInt::from(self.0), BigInt::from(2))
    }

    pub fn is_integral(self) -> bool {
        self.0 % 2 == 0
    }

    /// Parity of the homogeneous piece: half-odd weights are odd.
    pub fn is_odd(self) -> bool {
        !self.is_integral()
    }

    /// `w + 2w²`, which is an integer for every half-integer `w`.
    pub fn sign_exponent(self) -> i64 {
        let t = self.0;
        // w + 2w² = t/2 + t²/2 = t(t+1)/2
        t * (t + 1) / 2
    }

    /// `(-1)^{w + 2w²}`.
    pub fn reflection_sign(self) -> i64 {
        if self.sign_exponent().rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    }

    /// The mode index shift `wt(v) - n - 1` as a weight.
    pub fn mode_shift(self, n: i64) -> Weight {
        Weight(self.0 - 2 * n - 2)
    }

    /// Weights `0, 1/2, …, self`.
    pub fn steps_up_to(self) -> impl Iterator<Item = Weight> {
        (0..=self.0.max(-1)).map(Weight)
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, o: Weight) -> Weight {
        Weight(self.0 + o.0)
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, o: Weight) -> Weight {
        Weight(self.0 - o.0)
    }
}

impl Neg for Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(-self.0)
    }
}

impl fmt::Display for Weight {
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
    use crate::kernel::scalar::rat;

    #[test]
    fn rejects_non_half_integers() {
        assert!(Weight::from_rational(&rat(1, 3)).is_err());
        assert_eq!(Weight::parse("3/2").unwrap(), Weight::from_twice(3));
        assert_eq!(Weight::parse("4/2").unwrap(), Weight::int(2));
        assert_eq!(Weight::parse("-1/2").unwrap().to_string(), "-1/2");
    }

    #[test]
    fn reflection_signs() {
        // (-1)^{1/2 + 1/2} = -1, (-1)^{1+2} = -1, (-1)^{3/2+9/2} = 1, (-1)^{2+8} = 1
        assert_eq!(Weight::HALF.reflection_sign(), -1);
        assert_eq!(Weight::ONE.reflection_sign(), -1);
        assert_eq!(Weight::from_twice(3).reflection_sign(), 1);
        assert_eq!(Weight::int(2).reflection_sign(), 1);
        for t in -20..20 {
            let w = Weight::from_twice(t).to_rational();
            let e = &w + &w * &w * rat(2, 1);
            assert!(e.is_integer());
        }
    }
}
