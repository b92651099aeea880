//! Text forms used on the command line and in exported records.
//!
//! * fractions `p/q`, with `1/0` for infinity; plain integers and decimals
//!   such as `0.75` are read exactly;
//! * surds `(p+q√d)/r`, with the ASCII spelling `(p+q*sqrt(d))/r`;
//! * dyadics `m/2^e`;
//! * words as strings of `0`/`1`, codes as `pre(period)`, intervals as
//!   `lo..hi`.

use num_bigint::{BigInt, BigUint};
use num_traits::{Num, One, Zero};

use crate::error::{Error, Result};
use crate::numeric::{DyadicRational, ExactPoint, ExtendedRational, QuadraticSurd};

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Self { src, pos: 0 }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            self.err(format!("expected {token:?}"))
        }
    }

    /// Optional sign; accepts the Unicode minus.
    fn sign(&mut self) -> Option<bool> {
        if self.eat("+") {
            Some(false)
        } else if self.eat("-") || self.eat("\u{2212}") {
            Some(true)
        } else {
            None
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let len = self
            .rest()
            .bytes()
            .take_while(|b| b.is_ascii_digit())
            .count();
        if len == 0 {
            return None;
        }
        let s = &self.rest()[..len];
        self.pos += len;
        Some(s)
    }

    fn uint(&mut self) -> Result<BigUint> {
        match self.digits() {
            Some(d) => Ok(BigUint::from_str_radix(d, 10).unwrap()),
            None => self.err("expected digits"),
        }
    }

    fn finish(&mut self) -> Result<()> {
        self.skip_ws();
        if self.pos == self.src.len() {
            Ok(())
        } else {
            self.err("unexpected trailing input")
        }
    }
}

/// `p/q`, `p`, a decimal `a.b`, or `inf`.
pub fn parse_fraction(s: &str) -> Result<ExtendedRational> {
    let mut c = Cursor::new(s);
    let r = fraction(&mut c)?;
    c.finish()?;
    Ok(r)
}

fn fraction(c: &mut Cursor<'_>) -> Result<ExtendedRational> {
    c.skip_ws();
    if c.eat("inf") || c.eat("\u{221e}") {
        return Ok(ExtendedRational::infinity());
    }
    if matches!(c.sign(), Some(true)) {
        return c.err("negative values are outside [0, inf]");
    }
    let int = c.uint()?;
    if c.eat(".") {
        let start = c.pos;
        let frac = c.digits().unwrap_or("");
        if frac.is_empty() {
            c.pos = start;
            return c.err("expected digits after '.'");
        }
        let scale = BigUint::from(10u32).pow(frac.len() as u32);
        let num = int * &scale + BigUint::from_str_radix(frac, 10).unwrap();
        return ExtendedRational::new(num, scale);
    }
    if c.eat("/") {
        let den = c.uint()?;
        return ExtendedRational::new(int, den).or_else(|e| c.err(e.to_string()));
    }
    ExtendedRational::new(int, 1u32)
}

/// `(p+q√d)/r`, `(p+q*sqrt(d))/r`; the `/r` and `q` may be omitted.
pub fn parse_surd(s: &str) -> Result<QuadraticSurd> {
    let mut c = Cursor::new(s);
    let v = surd(&mut c)?;
    c.finish()?;
    Ok(v)
}

fn surd(c: &mut Cursor<'_>) -> Result<QuadraticSurd> {
    c.expect("(")?;
    let p_neg = matches!(c.sign(), Some(true));
    let p = BigInt::from(c.uint()?);
    let p = if p_neg { -p } else { p };
    let q_neg = match c.sign() {
        Some(n) => n,
        None => return c.err("expected '+' or '-' before the radical"),
    };
    let q = match c.digits() {
        Some(d) => BigInt::from_str_radix(d, 10).unwrap(),
        None => BigInt::one(),
    };
    let q = if q_neg { -q } else { q };
    let d = if c.eat("\u{221a}") {
        c.uint()?
    } else {
        c.eat("*");
        c.expect("sqrt")?;
        c.expect("(")?;
        let d = c.uint()?;
        c.expect(")")?;
        d
    };
    c.expect(")")?;
    let r = if c.eat("/") {
        c.uint()?
    } else {
        BigUint::one()
    };
    if r.is_zero() {
        return c.err("surd denominator must be nonzero");
    }
    QuadraticSurd::new(p, q, BigInt::from(d), BigInt::from(r)).or_else(|e| c.err(e.to_string()))
}

/// Any point: fraction, decimal, or surd.
pub fn parse_point(s: &str) -> Result<ExactPoint> {
    if s.trim_start().starts_with('(') {
        parse_surd(s).map(ExactPoint::from)
    } else {
        parse_fraction(s).map(ExactPoint::Rational)
    }
}

/// `m/2^e` or a plain fraction with a power-of-two denominator.
pub fn parse_dyadic(s: &str) -> Result<DyadicRational> {
    let mut c = Cursor::new(s);
    let m = c.uint()?;
    let e = if c.eat("/") {
        if c.eat("2^") {
            let e = c.uint()?;
            u64::try_from(e).or_else(|_| c.err("exponent too large"))?
        } else {
            let den = c.uint()?;
            let bits = den.bits().saturating_sub(1);
            if den != BigUint::one() << bits {
                return c.err("denominator is not a power of two");
            }
            bits
        }
    } else {
        0
    };
    c.finish()?;
    DyadicRational::new(m, e).or_else(|e| c.err(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fractions() {
        assert_eq!(parse_fraction("3/5").unwrap(), ExtendedRational::frac(3, 5));
        assert_eq!(parse_fraction("1/0").unwrap(), ExtendedRational::infinity());
        assert_eq!(parse_fraction(" 6/4 ").unwrap(), ExtendedRational::frac(3, 2));
        assert_eq!(parse_fraction("0.75").unwrap(), ExtendedRational::frac(3, 4));
        assert_eq!(parse_fraction("7").unwrap(), ExtendedRational::frac(7, 1));
        assert!(matches!(parse_fraction("3/x"), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(parse_fraction("0/0"), Err(Error::Parse { .. })));
        assert!(matches!(parse_fraction("-1/2"), Err(Error::Parse { .. })));
        assert!(matches!(parse_fraction("1/2 z"), Err(Error::Parse { pos: 4, .. })));
    }

    #[test]
    fn surds() {
        let z = QuadraticSurd::new(-1, 1, 5, 2).unwrap();
        assert_eq!(parse_surd("(-1+1√5)/2").unwrap(), z);
        assert_eq!(parse_surd("(\u{2212}1+1√5)/2").unwrap(), z);
        assert_eq!(parse_surd("(-1+sqrt(5))/2").unwrap(), z);
        assert_eq!(parse_surd("(-1+1*sqrt(5))/2").unwrap(), z);
        assert_eq!(parse_surd("(0+√2)").unwrap(), QuadraticSurd::new(0, 1, 2, 1).unwrap());
        assert!(matches!(parse_surd("(1+√5"), Err(Error::Parse { .. })));
        assert!(matches!(parse_surd("(-3+1√5)/2"), Err(Error::Parse { .. })));
    }

    #[test]
    fn dyadics() {
        assert_eq!(parse_dyadic("3/2^2").unwrap(), DyadicRational::new(3u32, 2).unwrap());
        assert_eq!(parse_dyadic("1/4").unwrap(), DyadicRational::new(1u32, 2).unwrap());
        assert!(parse_dyadic("1/3").is_err());
    }

    #[test]
    fn display_round_trips() {
        for s in ["0/1", "1/0", "13/21", "(-1+1√5)/2", "(3+1√5)/2", "(2-1√2)/2"] {
            assert_eq!(parse_point(s).unwrap().to_string(), s);
        }
        let d = DyadicRational::new(5u32, 4).unwrap();
        assert_eq!(parse_dyadic(&d.to_string()).unwrap(), d);
    }
}
