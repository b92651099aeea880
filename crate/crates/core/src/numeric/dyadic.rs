use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// `mantissa / 2^exponent` in `[0, 1]`, with an odd mantissa whenever the
/// exponent is positive.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DyadicRational {
    mantissa: BigUint,
    exponent: u64,
}

impl DyadicRational {
    pub fn new(mantissa: impl Into<BigUint>, exponent: u64) -> Result<Self> {
        let d = Self::reduced(mantissa.into(), exponent);
        if d.mantissa > BigUint::one() << d.exponent {
            return Err(Error::OutsideUnitInterval(d.to_string()));
        }
        Ok(d)
    }

    fn reduced(mut mantissa: BigUint, mut exponent: u64) -> Self {
        if mantissa.is_zero() {
            return Self {
                mantissa,
                exponent: 0,
            };
        }
        let tz = mantissa.trailing_zeros().unwrap_or(0).min(exponent);
        mantissa >>= tz;
        exponent -= tz;
        Self { mantissa, exponent }
    }

    pub fn zero() -> Self {
        Self::reduced(BigUint::zero(), 0)
    }

    pub fn one() -> Self {
        Self::reduced(BigUint::one(), 0)
    }

    pub fn mantissa(&self) -> &BigUint {
        &self.mantissa
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    /// `(self + other) / 2`.
    pub fn midpoint(&self, other: &Self) -> Self {
        let e = self.exponent.max(other.exponent);
        let a = &self.mantissa << (e - self.exponent);
        let b = &other.mantissa << (e - other.exponent);
        Self::reduced(a + b, e + 1)
    }

    /// `self - (self - low) / 2^t` for `low <= self`: the left end after `t`
    /// halvings toward `self`.
    pub(crate) fn approach_from_below(low: &Self, high: &Self, t: u64) -> Self {
        // high - (high - low) / 2^t
        let e = low.exponent.max(high.exponent);
        let l = &low.mantissa << (e - low.exponent);
        let h = &high.mantissa << (e - high.exponent);
        let gap = &h - &l;
        Self::reduced((h << t) - gap, e + t)
    }

    /// `low + (high - low) / 2^t`.
    pub(crate) fn approach_from_above(low: &Self, high: &Self, t: u64) -> Self {
        let e = low.exponent.max(high.exponent);
        let l = &low.mantissa << (e - low.exponent);
        let h = &high.mantissa << (e - high.exponent);
        let gap = &h - &l;
        Self::reduced((l << t) + gap, e + t)
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(
            BigInt::from(self.mantissa.clone()),
            BigInt::one() << self.exponent,
        )
    }

    /// Exact conversion from a rational with a power-of-two denominator.
    pub fn from_rational(r: &BigRational) -> Result<Self> {
        let den = r.denom().magnitude();
        let bits = den.bits().saturating_sub(1);
        if r.numer().sign() == num_bigint::Sign::Minus || den != &(BigUint::one() << bits) {
            return Err(Error::Precondition(format!("{r} is not a dyadic in [0, 1]")));
        }
        Self::new(r.numer().magnitude().clone(), bits)
    }

    pub fn to_f64(&self) -> f64 {
        self.to_rational().to_f64().unwrap_or(f64::NAN)
    }
}

impl Ord for DyadicRational {
    fn cmp(&self, other: &Self) -> Ordering {
        let e = self.exponent.max(other.exponent);
        let a = &self.mantissa << (e - self.exponent);
        let b = &other.mantissa << (e - other.exponent);
        a.cmp(&b)
    }
}

impl PartialOrd for DyadicRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for DyadicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2^{}", self.mantissa, self.exponent)
    }
}

impl fmt::Debug for DyadicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for DyadicRational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
