use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A point of the compactified half-line `[0, inf]` held as a coprime pair
/// `num/den`. Infinity is the canonical pair `1/0`, zero is `0/1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExtendedRational {
    num: BigUint,
    den: BigUint,
}

impl ExtendedRational {
    pub fn new(num: impl Into<BigUint>, den: impl Into<BigUint>) -> Result<Self> {
        let (num, den) = (num.into(), den.into());
        if num.is_zero() && den.is_zero() {
            return Err(Error::ZeroOverZero);
        }
        let g = num.gcd(&den);
        Ok(Self {
            num: num / &g,
            den: den / &g,
        })
    }

    /// Builds `num/den` from machine integers. Panics on `0/0`.
    pub fn frac(num: u64, den: u64) -> Self {
        Self::new(num, den).expect("0/0 is not a point")
    }

    pub fn zero() -> Self {
        Self::frac(0, 1)
    }

    pub fn one() -> Self {
        Self::frac(1, 1)
    }

    pub fn infinity() -> Self {
        Self::frac(1, 0)
    }

    /// Converts a signed rational; negative values are rejected.
    pub fn from_rational(r: &BigRational) -> Result<Self> {
        if r.is_negative_value() {
            return Err(Error::Negative);
        }
        let num = r.numer().magnitude().clone();
        let den = r.denom().magnitude().clone();
        Self::new(num, den)
    }

    /// Converts a signed projective pair `(n : d)`; the pair must describe a
    /// point of `[0, inf]`.
    pub fn from_projective(n: &BigInt, d: &BigInt) -> Result<Self> {
        if n.is_zero() && d.is_zero() {
            return Err(Error::ZeroOverZero);
        }
        if !n.is_zero() && !d.is_zero() && (n.sign() != d.sign()) {
            return Err(Error::Negative);
        }
        Self::new(n.magnitude().clone(), d.magnitude().clone())
    }

    pub fn numer(&self) -> &BigUint {
        &self.num
    }

    pub fn denom(&self) -> &BigUint {
        &self.den
    }

    pub fn is_infinite(&self) -> bool {
        self.den.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// The finite value as a signed rational, `None` at infinity.
    pub fn to_rational(&self) -> Option<BigRational> {
        if self.is_infinite() {
            None
        } else {
            Some(BigRational::new(
                BigInt::from(self.num.clone()),
                BigInt::from(self.den.clone()),
            ))
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self.to_rational() {
            Some(r) => r.to_f64().unwrap_or(f64::INFINITY),
            None => f64::INFINITY,
        }
    }

    /// The mediant `(a+c)/(b+d)` of `a/b` and `c/d`.
    pub fn mediant(&self, other: &Self) -> Self {
        Self::new(&self.num + &other.num, &self.den + &other.den)
            .expect("mediant of two points is never 0/0")
    }

    /// `phi(x) = |1 - 1/x|` with `phi(0) = inf` and `phi(inf) = 1`.
    pub fn phi(&self) -> Self {
        if self.num.is_zero() {
            return Self::infinity();
        }
        if self.den.is_zero() {
            return Self::one();
        }
        // |n - d| / n is already in lowest terms because gcd(n, d) = 1.
        let diff = if self.num >= self.den {
            &self.num - &self.den
        } else {
            &self.den - &self.num
        };
        if diff.is_zero() {
            return Self::zero();
        }
        Self {
            num: diff,
            den: self.num.clone(),
        }
    }

    /// Number of steps the orbit needs to reach `0`.
    ///
    /// Every rational lands on `0`: below 1 the step `n/d -> (d-n)/n` lowers
    /// `num + den`, above 1 two steps give `n/d -> d/(n-d)`, which also
    /// lowers it.
    pub fn escape_time(&self) -> u64 {
        let mut x = self.clone();
        let mut steps = 0;
        while !x.is_zero() {
            x = x.phi();
            steps += 1;
        }
        steps
    }

    /// `phi^n(self)`.
    pub fn phi_iter(&self, n: u64) -> Self {
        let mut x = self.clone();
        for _ in 0..n {
            x = x.phi();
        }
        x
    }
}

impl Ord for ExtendedRational {
    fn cmp(&self, other: &Self) -> Ordering {
        // a/b <= c/d iff a*d <= c*b; 1/0 compares as maximal automatically
        // since its denominator kills the other side.
        match (self.is_infinite(), other.is_infinite()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Greater,
            (false, true) => Ordering::Less,
            (false, false) => (&self.num * &other.den).cmp(&(&other.num * &self.den)),
        }
    }
}

impl PartialOrd for ExtendedRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ExtendedRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Debug for ExtendedRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl Serialize for ExtendedRational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

trait SignExt {
    fn is_negative_value(&self) -> bool;
}

impl SignExt for BigRational {
    fn is_negative_value(&self) -> bool {
        self.numer().sign() == num_bigint::Sign::Minus
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: u64, d: u64) -> ExtendedRational {
        ExtendedRational::frac(n, d)
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(q(2, 4), q(1, 2));
        assert_eq!(q(5, 0), ExtendedRational::infinity());
        assert_eq!(q(0, 7), ExtendedRational::zero());
        assert_eq!(ExtendedRational::new(0u32, 0u32), Err(Error::ZeroOverZero));
    }

    #[test]
    fn order_puts_infinity_last() {
        let mut v = vec![q(1, 0), q(3, 2), q(0, 1), q(2, 3), q(1, 1)];
        v.sort();
        assert_eq!(v, vec![q(0, 1), q(2, 3), q(1, 1), q(3, 2), q(1, 0)]);
    }

    #[test]
    fn phi_examples() {
        assert_eq!(q(0, 1).phi(), q(1, 0));
        assert_eq!(q(1, 0).phi(), q(1, 1));
        assert_eq!(q(1, 1).phi(), q(0, 1));
        // |1 - 3/2| = 1/2
        assert_eq!(q(2, 3).phi(), q(1, 2));
        assert_eq!(q(5, 1).phi(), q(4, 5));
    }

    #[test]
    fn escape_examples() {
        assert_eq!(q(0, 1).escape_time(), 0);
        assert_eq!(q(1, 1).escape_time(), 1);
        // 3/5 -> 2/3 -> 1/2 -> 1 -> 0
        assert_eq!(q(3, 5).escape_time(), 4);
        assert_eq!(q(1, 0).escape_time(), 2);
    }

    #[test]
    fn projective_sign_handling() {
        let n = BigInt::from(-2);
        let d = BigInt::from(-4);
        assert_eq!(ExtendedRational::from_projective(&n, &d).unwrap(), q(1, 2));
        let d = BigInt::from(4);
        assert_eq!(
            ExtendedRational::from_projective(&n, &d),
            Err(Error::Negative)
        );
        let z = BigInt::from(0);
        assert_eq!(
            ExtendedRational::from_projective(&n, &z).unwrap(),
            ExtendedRational::infinity()
        );
    }
}
