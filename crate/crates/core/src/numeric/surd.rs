use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use super::ExtendedRational;
use crate::error::{Error, Result};

/// An exact value `(p + q*sqrt(d)) / r` in `[0, inf)`.
///
/// Canonical form: `r > 0`, `d` square-free, `gcd(p, q, r) = 1`, and
/// `q = 0` exactly when `d = 0`. Equality is structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadraticSurd {
    p: BigInt,
    q: BigInt,
    r: BigInt,
    d: BigInt,
}

impl QuadraticSurd {
    pub fn new(
        p: impl Into<BigInt>,
        q: impl Into<BigInt>,
        d: impl Into<BigInt>,
        r: impl Into<BigInt>,
    ) -> Result<Self> {
        let s = Self::normalize(p.into(), q.into(), d.into(), r.into())?;
        if s.sign() == Ordering::Less {
            return Err(Error::Negative);
        }
        Ok(s)
    }

    fn normalize(mut p: BigInt, mut q: BigInt, d: BigInt, mut r: BigInt) -> Result<Self> {
        if r.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if d.is_negative() {
            return Err(Error::Precondition("radicand must be nonnegative".into()));
        }
        if r.is_negative() {
            p = -p;
            q = -q;
            r = -r;
        }
        let (core, factor) = square_free_split(d.magnitude());
        let mut d = BigInt::from(core);
        q *= BigInt::from(factor);
        if d.is_one() {
            p += &q;
            q = BigInt::zero();
        }
        if q.is_zero() || d.is_zero() {
            q = BigInt::zero();
            d = BigInt::zero();
        }
        let g = p.gcd(&q).gcd(&r);
        if !g.is_zero() && !g.is_one() {
            p /= &g;
            q /= &g;
            r /= &g;
        }
        Ok(Self { p, q, r, d })
    }

    pub fn from_rational(x: &ExtendedRational) -> Result<Self> {
        if x.is_infinite() {
            return Err(Error::Precondition("inf is not a surd".into()));
        }
        Self::new(
            BigInt::from(x.numer().clone()),
            0,
            0,
            BigInt::from(x.denom().clone()),
        )
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }
    pub fn q(&self) -> &BigInt {
        &self.q
    }
    pub fn r(&self) -> &BigInt {
        &self.r
    }
    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn is_rational(&self) -> bool {
        self.q.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    /// The rational value when the radical part vanishes.
    pub fn as_rational(&self) -> Option<ExtendedRational> {
        if self.is_rational() {
            ExtendedRational::from_projective(&self.p, &self.r).ok()
        } else {
            None
        }
    }

    fn sign(&self) -> Ordering {
        sign_of(&self.p, &self.q, &self.d)
    }

    /// Exact comparison with a point of `[0, inf]`.
    pub fn cmp_rational(&self, x: &ExtendedRational) -> Ordering {
        if x.is_infinite() {
            return Ordering::Less;
        }
        // sign of (b*p - a*r) + b*q*sqrt(d) for x = a/b
        let a = BigInt::from(x.numer().clone());
        let b = BigInt::from(x.denom().clone());
        sign_of(&(&b * &self.p - &a * &self.r), &(&b * &self.q), &self.d)
    }

    pub fn to_f64(&self) -> f64 {
        let r = self.r.to_f64().unwrap_or(f64::INFINITY);
        if self.q.is_zero() {
            return self.p.to_f64().unwrap_or(f64::NAN) / r;
        }
        let root = self.d.to_f64().unwrap_or(f64::INFINITY).sqrt();
        let p = self.p.to_f64().unwrap_or(f64::NAN);
        let qs = self.q.to_f64().unwrap_or(f64::NAN) * root;
        if p.signum() == qs.signum() || p == 0.0 {
            (p + qs) / r
        } else {
            // cancellation: use (p^2 - q^2 d) / (r (p - q sqrt d))
            let exact = &self.p * &self.p - &self.q * &self.q * &self.d;
            exact.to_f64().unwrap_or(f64::NAN) / (r * (p - qs))
        }
    }

    /// `phi` on a surd. Zero is rejected because its image is `inf`.
    pub fn phi(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::SurdAtZero);
        }
        let map = if self.cmp_rational(&ExtendedRational::one()) == Ordering::Greater {
            super::MobiusMap::new(1, -1, 1, 0)
        } else {
            super::MobiusMap::new(-1, 1, 1, 0)
        }
        .expect("branch matrices are unimodular");
        map.apply_surd(self)
    }

    /// Builds the canonical value `(n0 + n1 sqrt(d)) / (m0 + m1 sqrt(d))`.
    pub(crate) fn from_ratio(
        n0: BigInt,
        n1: BigInt,
        m0: BigInt,
        m1: BigInt,
        d: &BigInt,
    ) -> Result<Self> {
        // multiply through by the conjugate of the denominator
        let den = &m0 * &m0 - &m1 * &m1 * d;
        let real = &n0 * &m0 - &n1 * &m1 * d;
        let irr = &n1 * &m0 - &n0 * &m1;
        let s = Self::normalize(real, irr, d.clone(), den)?;
        if s.sign() == Ordering::Less {
            return Err(Error::Negative);
        }
        Ok(s)
    }
}

/// Certified sign of `p + q sqrt(d)` with `d >= 0`.
fn sign_of(p: &BigInt, q: &BigInt, d: &BigInt) -> Ordering {
    let ps = p.sign();
    let qs = if d.is_zero() { Sign::NoSign } else { q.sign() };
    let to_ord = |s: Sign| match s {
        Sign::Minus => Ordering::Less,
        Sign::NoSign => Ordering::Equal,
        Sign::Plus => Ordering::Greater,
    };
    match (ps, qs) {
        (_, Sign::NoSign) => to_ord(ps),
        (Sign::NoSign, _) => to_ord(qs),
        (a, b) if a == b => to_ord(a),
        _ => {
            // opposite signs: the larger square wins
            let p2 = p * p;
            let q2d = q * q * d;
            match p2.cmp(&q2d) {
                Ordering::Greater => to_ord(ps),
                Ordering::Less => to_ord(qs),
                Ordering::Equal => Ordering::Equal,
            }
        }
    }
}

/// Splits `n = core * factor^2` with `core` square-free.
///
/// Trial division runs only while `p^3 <= rest`; the cofactor left over has
/// at most two prime factors, so it is square-free unless it is a square.
pub(crate) fn square_free_split(n: &BigUint) -> (BigUint, BigUint) {
    if n.is_zero() {
        return (BigUint::zero(), BigUint::one());
    }
    let mut rest = n.clone();
    let mut core = BigUint::one();
    let mut factor = BigUint::one();
    let mut p: u64 = 2;
    loop {
        let pb = BigUint::from(p);
        if &pb * &pb * &pb > rest {
            break;
        }
        let mut e = 0u32;
        while (&rest % p).is_zero() {
            rest /= p;
            e += 1;
        }
        if e > 0 {
            factor *= pb.pow(e / 2);
            if e % 2 == 1 {
                core *= &pb;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let root = rest.sqrt();
    if &root * &root == rest {
        factor *= root;
    } else {
        core *= rest;
    }
    (core, factor)
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q.is_zero() {
            return write!(f, "{}/{}", self.p, self.r);
        }
        let sign = if self.q.is_negative() { '-' } else { '+' };
        write!(
            f,
            "({}{}{}√{})/{}",
            self.p,
            sign,
            self.q.abs(),
            self.d,
            self.r
        )
    }
}

impl fmt::Debug for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for QuadraticSurd {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn surd(p: i64, q: i64, d: i64, r: i64) -> QuadraticSurd {
        QuadraticSurd::new(p, q, d, r).unwrap()
    }

    #[test]
    fn square_factors_move_into_q() {
        assert_eq!(surd(0, 1, 8, 1), surd(0, 2, 2, 1));
        assert_eq!(surd(2, 2, 20, 4), surd(1, 2, 5, 2));
        assert_eq!(surd(3, 1, 4, 5), surd(1, 0, 0, 1));
        assert_eq!(surd(-2, -2, 5, -4), surd(1, 1, 5, 2));
    }

    #[test]
    fn split_handles_large_cofactors() {
        let p = BigUint::from(1_000_003u64);
        let n = &p * &p * BigUint::from(6u32);
        assert_eq!(square_free_split(&n), (BigUint::from(6u32), p.clone()));
        let n = &p * BigUint::from(999_983u64) * BigUint::from(49u32);
        assert_eq!(
            square_free_split(&n),
            (&p * BigUint::from(999_983u64), BigUint::from(7u32))
        );
    }

    #[test]
    fn negative_values_rejected() {
        assert_eq!(QuadraticSurd::new(-3, 1, 5, 1), Err(Error::Negative));
        assert!(QuadraticSurd::new(-2, 1, 5, 1).is_ok());
    }

    #[test]
    fn phi_examples() {
        let z = surd(-1, 1, 5, 2);
        assert_eq!(z.phi().unwrap(), z);
        assert_eq!(surd(3, 1, 5, 2).phi().unwrap(), z);
        // 1 - 1/sqrt 2 = (2 - sqrt 2) / 2
        assert_eq!(surd(0, 1, 2, 1).phi().unwrap(), surd(2, -1, 2, 2));
        assert_eq!(surd(0, 0, 0, 1).phi(), Err(Error::SurdAtZero));
    }

    #[test]
    fn compare_with_rationals() {
        let z = surd(-1, 1, 5, 2);
        assert_eq!(z.cmp_rational(&ExtendedRational::frac(8, 13)), Ordering::Greater);
        assert_eq!(z.cmp_rational(&ExtendedRational::frac(13, 21)), Ordering::Less);
        assert_eq!(z.cmp_rational(&ExtendedRational::infinity()), Ordering::Less);
        assert!((z.to_f64() - 0.618_033_988_749_894_8).abs() < 1e-15);
    }

    #[test]
    fn display_format() {
        assert_eq!(surd(-1, 1, 5, 2).to_string(), "(-1+1√5)/2");
        assert_eq!(surd(2, -1, 2, 2).to_string(), "(2-1√2)/2");
        assert_eq!(surd(3, 0, 0, 4).to_string(), "3/4");
    }
}
