//! Exact arithmetic on `[0, inf]`: extended rationals, quadratic surds,
//! unimodular Möbius maps and dyadic rationals.

mod dyadic;
mod extended;
mod mobius;
mod surd;

use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

pub use dyadic::DyadicRational;
pub use extended::ExtendedRational;
pub use mobius::MobiusMap;
pub use surd::QuadraticSurd;

use crate::error::Result;

/// An exactly known point of `[0, inf]`: rational (including `inf`) or an
/// irrational quadratic surd.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum ExactPoint {
    Rational(ExtendedRational),
    Surd(QuadraticSurd),
}

impl ExactPoint {
    pub fn phi(&self) -> Result<Self> {
        match self {
            ExactPoint::Rational(r) => Ok(ExactPoint::Rational(r.phi())),
            ExactPoint::Surd(s) => s.phi().map(ExactPoint::from),
        }
    }

    pub fn phi_iter(&self, n: u64) -> Result<Self> {
        let mut x = self.clone();
        for _ in 0..n {
            x = x.phi()?;
        }
        Ok(x)
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExactPoint::Rational(r) if r.is_infinite())
    }

    pub fn is_irrational(&self) -> bool {
        matches!(self, ExactPoint::Surd(_))
    }

    pub fn cmp_rational(&self, x: &ExtendedRational) -> Ordering {
        match self {
            ExactPoint::Rational(r) => r.cmp(x),
            ExactPoint::Surd(s) => s.cmp_rational(x),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            ExactPoint::Rational(r) => r.to_f64(),
            ExactPoint::Surd(s) => s.to_f64(),
        }
    }
}

impl From<QuadraticSurd> for ExactPoint {
    fn from(s: QuadraticSurd) -> Self {
        match s.as_rational() {
            Some(r) => ExactPoint::Rational(r),
            None => ExactPoint::Surd(s),
        }
    }
}

impl From<ExtendedRational> for ExactPoint {
    fn from(r: ExtendedRational) -> Self {
        ExactPoint::Rational(r)
    }
}

impl PartialOrd for ExactPoint {
    /// Total between rationals and between a surd and a rational; two
    /// distinct surds compare through their float values only when those
    /// are clearly apart.
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (_, ExactPoint::Rational(r)) => Some(self.cmp_rational(r)),
            (ExactPoint::Rational(r), ExactPoint::Surd(s)) => Some(s.cmp_rational(r).reverse()),
            (ExactPoint::Surd(a), ExactPoint::Surd(b)) => {
                if a == b {
                    return Some(Ordering::Equal);
                }
                let (x, y) = (a.to_f64(), b.to_f64());
                if (x - y).abs() > 1e-9 * (1.0 + x.abs().max(y.abs())) {
                    x.partial_cmp(&y)
                } else {
                    None
                }
            }
        }
    }
}

impl fmt::Display for ExactPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactPoint::Rational(r) => fmt::Display::fmt(r, f),
            ExactPoint::Surd(s) => fmt::Display::fmt(s, f),
        }
    }
}

impl fmt::Debug for ExactPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for ExactPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// `phi` on a rational point.
pub fn phi_rat(x: &ExtendedRational) -> ExtendedRational {
    x.phi()
}

/// `phi` on a surd; zero is rejected.
pub fn phi_surd(x: &QuadraticSurd) -> Result<QuadraticSurd> {
    x.phi()
}

/// Smallest `n` with `phi^n(x) = 0`.
pub fn escape_time(x: &ExtendedRational) -> u64 {
    x.escape_time()
}

pub fn mobius_apply(m: &MobiusMap, x: &ExtendedRational) -> Result<ExtendedRational> {
    m.apply(x)
}

pub fn mobius_fixed_point(m: &MobiusMap) -> Result<ExactPoint> {
    m.fixed_point()
}
