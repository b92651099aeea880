use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{ExactPoint, ExtendedRational, QuadraticSurd};
use crate::error::{Error, Result};

/// Integer projective map `x -> (a x + b) / (c x + d)` with `ad - bc = +-1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MobiusMap {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

impl MobiusMap {
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: impl Into<BigInt>,
    ) -> Result<Self> {
        let m = Self {
            a: a.into(),
            b: b.into(),
            c: c.into(),
            d: d.into(),
        };
        let det = m.determinant();
        if det.abs().is_one() {
            Ok(m)
        } else {
            Err(Error::NotUnimodular(det.to_string()))
        }
    }

    pub fn identity() -> Self {
        Self::new(1, 0, 0, 1).unwrap()
    }

    /// Inverse of the decreasing branch: `y -> 1/(1+y)`, maps `[0, inf]` onto `I_0`.
    pub fn psi0() -> Self {
        Self::new(0, 1, 1, 1).unwrap()
    }

    /// Inverse of the increasing branch: `y -> 1/(1-y)`, maps `[0, 1]` onto `I_1`.
    pub fn psi1() -> Self {
        Self::new(0, 1, -1, 1).unwrap()
    }

    /// Inverse branch for one symbol.
    pub fn branch_inverse(symbol: u8) -> Self {
        if symbol == 0 {
            Self::psi0()
        } else {
            Self::psi1()
        }
    }

    pub fn entries(&self) -> [&BigInt; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn determinant(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn is_identity(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.a == self.d
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            a: &self.a * &other.a + &self.b * &other.c,
            b: &self.a * &other.b + &self.b * &other.d,
            c: &self.c * &other.a + &self.d * &other.c,
            d: &self.c * &other.b + &self.d * &other.d,
        }
    }

    /// Projective action on a signed pair `(n : m)`.
    pub fn apply_projective(&self, n: &BigInt, m: &BigInt) -> (BigInt, BigInt) {
        (&self.a * n + &self.b * m, &self.c * n + &self.d * m)
    }

    /// Exact action on `[0, inf]`; `inf` goes to `a/c`. Fails if the image is
    /// negative.
    pub fn apply(&self, x: &ExtendedRational) -> Result<ExtendedRational> {
        let n = BigInt::from(x.numer().clone());
        let m = BigInt::from(x.denom().clone());
        let (n2, m2) = self.apply_projective(&n, &m);
        ExtendedRational::from_projective(&n2, &m2)
    }

    pub fn apply_surd(&self, x: &QuadraticSurd) -> Result<QuadraticSurd> {
        // ((a p + b r) + a q sqrt d) / ((c p + d r) + c q sqrt d)
        let n0 = &self.a * x.p() + &self.b * x.r();
        let n1 = &self.a * x.q();
        let m0 = &self.c * x.p() + &self.d * x.r();
        let m1 = &self.c * x.q();
        if m1.is_zero() && m0.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        QuadraticSurd::from_ratio(n0, n1, m0, m1, x.d())
    }

    pub fn apply_point(&self, x: &ExactPoint) -> Result<ExactPoint> {
        match x {
            ExactPoint::Rational(r) => self.apply(r).map(ExactPoint::Rational),
            ExactPoint::Surd(s) => self.apply_surd(s).map(ExactPoint::from),
        }
    }

    /// All fixed points lying in `[0, inf]`, solving `c x^2 + (d - a) x - b = 0`
    /// (plus `inf` when `c = 0`). Sorted ascending.
    pub fn fixed_points(&self) -> Result<Vec<ExactPoint>> {
        if self.is_identity() {
            return Err(Error::IdentityMap);
        }
        let mut out = Vec::new();
        if self.c.is_zero() {
            // a, d are units; a = d is a translation, a = -d a reflection
            if self.a != self.d {
                let two_d: BigInt = &self.d * 2;
                if let Ok(x) = ExtendedRational::from_projective(&self.b, &two_d) {
                    if !x.is_infinite() {
                        out.push(ExactPoint::Rational(x));
                    }
                }
            }
            out.push(ExactPoint::Rational(ExtendedRational::infinity()));
            return Ok(out);
        }
        let dm = &self.d - &self.a;
        let disc: BigInt = &dm * &dm + (&self.b * &self.c) * 4;
        if disc.is_negative() {
            return Err(Error::NoFixedPoint);
        }
        let two_c: BigInt = &self.c * 2;
        let base: BigInt = &self.a - &self.d;
        let signs: &[i32] = if disc.is_zero() { &[1] } else { &[1, -1] };
        for &s in signs {
            match QuadraticSurd::new(base.clone(), s, disc.clone(), two_c.clone()) {
                Ok(x) => out.push(ExactPoint::from(x)),
                Err(Error::Negative) => {}
                Err(e) => return Err(e),
            }
        }
        if out.is_empty() {
            return Err(Error::NoFixedPoint);
        }
        out.sort_by(|x, y| x.partial_cmp(y).unwrap_or(Ordering::Equal));
        out.dedup();
        Ok(out)
    }

    /// The unique fixed point in `[0, inf]`; errors when there are two.
    pub fn fixed_point(&self) -> Result<ExactPoint> {
        let mut pts = self.fixed_points()?;
        if pts.len() == 1 {
            Ok(pts.remove(0))
        } else {
            Err(Error::AmbiguousFixedPoint(format!("{self:?}")))
        }
    }
}

impl fmt::Debug for MobiusMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: u64, d: u64) -> ExtendedRational {
        ExtendedRational::frac(n, d)
    }

    #[test]
    fn rejects_non_unimodular() {
        assert!(matches!(
            MobiusMap::new(2, 0, 0, 1),
            Err(Error::NotUnimodular(_))
        ));
    }

    #[test]
    fn apply_examples() {
        assert_eq!(MobiusMap::identity().apply(&q(2, 3)).unwrap(), q(2, 3));
        assert_eq!(MobiusMap::psi0().apply(&q(1, 0)).unwrap(), q(0, 1));
        assert_eq!(MobiusMap::psi1().apply(&q(1, 2)).unwrap(), q(2, 1));
        assert_eq!(MobiusMap::psi1().apply(&q(1, 1)).unwrap(), q(1, 0));
        assert_eq!(MobiusMap::psi1().apply(&q(2, 1)), Err(Error::Negative));
    }

    #[test]
    fn fixed_point_examples() {
        let z = QuadraticSurd::new(-1, 1, 5, 2).unwrap();
        assert_eq!(
            MobiusMap::psi0().fixed_point().unwrap(),
            ExactPoint::Surd(z)
        );
        let shift = MobiusMap::new(1, 1, 0, 1).unwrap();
        assert_eq!(
            shift.fixed_point().unwrap(),
            ExactPoint::Rational(ExtendedRational::infinity())
        );
        let m = MobiusMap::psi1()
            .compose(&MobiusMap::psi0())
            .compose(&MobiusMap::psi0());
        assert_eq!(m, MobiusMap::new(1, 2, 0, 1).unwrap());
        assert_eq!(
            m.fixed_point().unwrap(),
            ExactPoint::Rational(ExtendedRational::infinity())
        );
        assert_eq!(MobiusMap::identity().fixed_points(), Err(Error::IdentityMap));
    }

    #[test]
    fn parabolic_and_reflection_cases() {
        // psi0 psi0 psi1 has the double root 1
        let m = MobiusMap::psi0()
            .compose(&MobiusMap::psi0())
            .compose(&MobiusMap::psi1());
        assert_eq!(m.fixed_point().unwrap(), ExactPoint::Rational(q(1, 1)));
        // x -> -x + 4 fixes 2 and inf
        let refl = MobiusMap::new(-1, 4, 0, 1).unwrap();
        assert_eq!(
            refl.fixed_points().unwrap(),
            vec![
                ExactPoint::Rational(q(2, 1)),
                ExactPoint::Rational(ExtendedRational::infinity())
            ]
        );
        // rotation x -> -1/x has no real fixed point
        let rot = MobiusMap::new(0, -1, 1, 0).unwrap();
        assert_eq!(rot.fixed_points(), Err(Error::NoFixedPoint));
    }

    #[test]
    fn surd_action_matches_float() {
        let x = QuadraticSurd::new(1, 1, 3, 2).unwrap();
        let m = MobiusMap::new(2, 1, 1, 1).unwrap();
        let y = m.apply_surd(&x).unwrap();
        let xf = x.to_f64();
        assert!((y.to_f64() - (2.0 * xf + 1.0) / (xf + 1.0)).abs() < 1e-12);
    }
}
