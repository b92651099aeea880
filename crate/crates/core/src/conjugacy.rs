//! Modified Farey levels and the homeomorphism `h: [0, inf] -> [0, 1]`
//! conjugating `phi` to the piecewise-linear map `f`.
//!
//! `h` is the modified Minkowski map: `h(0/1) = 0`, `h(1/0) = 1` and the
//! value at a mediant is the average of the values at its parents. At a
//! rational it is computed from the run lengths of the mediant path (the
//! continued fraction), so a partial quotient of size `t` costs one shift
//! by `t` bits instead of `t` steps.

use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::{DyadicRational, ExactPoint, ExtendedRational};

/// Largest level `farey_level` builds by default (`2^24 + 1` entries).
pub const MAX_FAREY_LEVEL: u32 = 24;

/// The level-`n` modified Farey sequence `F_n`, from `0/1` to `1/0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FareyLevel {
    n: u32,
    entries: Vec<ExtendedRational>,
}

impl FareyLevel {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn entries(&self) -> &[ExtendedRational] {
        &self.entries
    }

    /// `a_{i,n} / b_{i,n}`.
    pub fn get(&self, i: usize) -> Option<&ExtendedRational> {
        self.entries.get(i)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `index,fraction,h` rows; `h` is the exact node value `i/2^n`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("index,fraction,h\n");
        for (i, x) in self.entries.iter().enumerate() {
            let h = DyadicRational::new(BigUint::from(i), u64::from(self.n)).unwrap();
            writeln!(out, "{i},{x},{h}").unwrap();
        }
        out
    }
}

pub fn farey_level(n: u32) -> Result<FareyLevel> {
    farey_level_capped(n, MAX_FAREY_LEVEL)
}

pub fn farey_level_capped(n: u32, max: u32) -> Result<FareyLevel> {
    if n > max {
        return Err(Error::LevelTooLarge { requested: n, max });
    }
    let mut entries = vec![ExtendedRational::zero(), ExtendedRational::infinity()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(entries.len() * 2 - 1);
        for pair in entries.windows(2) {
            next.push(pair[0].clone());
            next.push(pair[0].mediant(&pair[1]));
        }
        next.push(entries.last().unwrap().clone());
        entries = next;
    }
    Ok(FareyLevel { n, entries })
}

/// Outcome of one symmetry identity over its whole index range.
#[derive(Debug, Clone, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub statement: String,
    pub passed: bool,
    pub checked: usize,
    pub counterexample: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FareyReport {
    pub n: u32,
    pub identities: Vec<IdentityCheck>,
    pub notes: Vec<String>,
}

impl FareyReport {
    pub fn all_passed(&self) -> bool {
        self.identities.iter().all(|c| c.passed)
    }
}

struct Tally {
    check: IdentityCheck,
}

impl Tally {
    fn new(name: &str, statement: &str) -> Self {
        Self {
            check: IdentityCheck {
                name: name.into(),
                statement: statement.into(),
                passed: true,
                checked: 0,
                counterexample: None,
            },
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.check.checked += 1;
        if !ok && self.check.passed {
            self.check.passed = false;
            self.check.counterexample = Some(describe());
        }
    }
}

fn reciprocal(x: &ExtendedRational) -> ExtendedRational {
    ExtendedRational::new(x.denom().clone(), x.numer().clone()).unwrap()
}

/// Checks the four symmetries of `F_n` (`n >= 1`):
///
/// * (a) `a_i = 1 / a_{2^n - i}` for `0 <= i <= 2^(n-1)`;
/// * (b) `a_i + a_{2^(n-1) - i} = 1` for `0 <= i <= 2^(n-1)`;
/// * (c) `phi(a_{2^(n-1) + i}) = a_i` for `0 <= i <= 2^(n-1)`;
/// * (d) `phi(a_{i,n+1}) = a_{2^n - i, n}` for `0 <= i <= 2^n`.
///
/// For (c) the index `2^n + i` taken literally only exists at `i = 0`, where
/// it fails; a note in the report records that.
pub fn farey_properties_report(n: u32) -> Result<FareyReport> {
    if n == 0 {
        return Err(Error::Precondition("property report needs n >= 1".into()));
    }
    let level = farey_level_capped(n, MAX_FAREY_LEVEL - 1)?;
    let finer = farey_level(n + 1)?;
    let a = level.entries();
    let full = 1usize << n;
    let half = full / 2;

    let mut ta = Tally::new("a", "a[i] = 1 / a[2^n - i], 0 <= i <= 2^(n-1)");
    for i in 0..=half {
        let rhs = reciprocal(&a[full - i]);
        ta.record(a[i] == rhs, || format!("i={i}: {} vs {}", a[i], rhs));
    }

    let mut tb = Tally::new("b", "a[i] + a[2^(n-1) - i] = 1, 0 <= i <= 2^(n-1)");
    for i in 0..=half {
        let sum = a[i].to_rational().zip(a[half - i].to_rational()).map(|(x, y)| x + y);
        let ok = sum.as_ref().is_some_and(|s| s.is_one());
        tb.record(ok, || format!("i={i}: {} + {} != 1", a[i], a[half - i]));
    }

    let mut tc = Tally::new("c", "phi(a[2^(n-1) + i]) = a[i], 0 <= i <= 2^(n-1)");
    for i in 0..=half {
        let img = a[half + i].phi();
        tc.record(img == a[i], || format!("i={i}: phi({}) = {img} vs {}", a[half + i], a[i]));
    }

    let mut td = Tally::new("d", "phi(a[i, n+1]) = a[2^n - i, n], 0 <= i <= 2^n");
    let b = finer.entries();
    for i in 0..=full {
        let img = b[i].phi();
        td.record(img == a[full - i], || {
            format!("i={i}: phi({}) = {img} vs {}", b[i], a[full - i])
        });
    }

    let literal = a[full].phi();
    let notes = vec![format!(
        "(c) with index 2^n + i: only i = 0 is in range, and phi({}) = {literal} != {}; the report checks index 2^(n-1) + i",
        a[full], a[0]
    )];

    Ok(FareyReport {
        n,
        identities: vec![ta.check, tb.check, tc.check, td.check],
        notes,
    })
}

/// `f(x) = 1 - 2x` on `[0, 1/2]`, `x - 1/2` on `[1/2, 1]`.
pub fn f_map(x: &BigRational) -> Result<BigRational> {
    let one = BigRational::one();
    if x < &BigRational::zero() || x > &one {
        return Err(Error::OutsideUnitInterval(x.to_string()));
    }
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    Ok(if x <= &half {
        one - x * BigInt::from(2)
    } else {
        x - half
    })
}

/// `h` at a point of `[0, inf]` with a rational coordinate. The result has
/// about as many bits as the sum of the partial quotients of `x`.
pub fn h_rational(x: &ExtendedRational) -> DyadicRational {
    if x.is_zero() {
        return DyadicRational::zero();
    }
    if x.is_infinite() {
        return DyadicRational::one();
    }
    // continued fraction [c0; c1, ..., ck]: the mediant path is
    // R^c0 L^c1 R^c2 ... with the last run shortened by one, then a hit
    let mut lo = DyadicRational::zero();
    let mut hi = DyadicRational::one();
    let (mut p, mut q) = (x.numer().clone(), x.denom().clone());
    let mut right = true;
    loop {
        let (c, rem) = p.div_rem(&q);
        let last = rem.is_zero();
        let mut run = c;
        if last {
            run -= 1u32;
        }
        let t = u64::try_from(&run).expect("partial quotient exceeds u64");
        if t > 0 {
            if right {
                lo = DyadicRational::approach_from_below(&lo, &hi, t);
            } else {
                hi = DyadicRational::approach_from_above(&lo, &hi, t);
            }
        }
        if last {
            return lo.midpoint(&hi);
        }
        p = q;
        q = rem;
        right = !right;
    }
}

/// Inverse of `h` on dyadics: walks the mediant tree bit by bit.
pub fn h_inverse(d: &DyadicRational) -> ExtendedRational {
    let (mut lo, mut hi) = (ExtendedRational::zero(), ExtendedRational::infinity());
    let (mut hl, mut hh) = (DyadicRational::zero(), DyadicRational::one());
    if d == &hl {
        return lo;
    }
    if d == &hh {
        return hi;
    }
    loop {
        let mid = lo.mediant(&hi);
        let hm = hl.midpoint(&hh);
        match d.cmp(&hm) {
            std::cmp::Ordering::Equal => return mid,
            std::cmp::Ordering::Greater => {
                lo = mid;
                hl = hm;
            }
            std::cmp::Ordering::Less => {
                hi = mid;
                hh = hm;
            }
        }
    }
}

/// `h_n`: linear between consecutive level-`n` nodes `a_i -> i/2^n`, and
/// constant `(2^n - 1)/2^n` on the last segment `[n/1, inf]`.
pub fn h_level(n: u32, x: &ExtendedRational) -> Result<BigRational> {
    if n == 0 {
        return Err(Error::Precondition("h_level needs n >= 1".into()));
    }
    let (mut lo, mut hi) = (ExtendedRational::zero(), ExtendedRational::infinity());
    let mut index = BigUint::zero();
    for _ in 0..n {
        let mid = lo.mediant(&hi);
        index <<= 1;
        if x >= &mid {
            lo = mid;
            index += 1u32;
        } else {
            hi = mid;
        }
    }
    let scale = BigRational::from_integer(BigInt::one() << n);
    let i = BigRational::from_integer(BigInt::from(index));
    let Some(hi) = hi.to_rational() else {
        return Ok(i / scale);
    };
    let lo = lo.to_rational().unwrap();
    let x = x.to_rational().unwrap();
    Ok((i + (x - &lo) / (hi - lo)) / scale)
}

/// Dyadic bracket `[h(lo), h(hi)]` of `h(x)` from `depth` mediant steps,
/// exact when the walk lands on `x`.
pub fn h_enclosure(x: &ExactPoint, depth: u32) -> (DyadicRational, DyadicRational) {
    if let ExactPoint::Rational(r) = x {
        let h = h_rational(r);
        return (h.clone(), h);
    }
    let (mut lo, mut hi) = (ExtendedRational::zero(), ExtendedRational::infinity());
    let (mut hl, mut hh) = (DyadicRational::zero(), DyadicRational::one());
    for _ in 0..depth {
        let mid = lo.mediant(&hi);
        let hm = hl.midpoint(&hh);
        if x.cmp_rational(&mid) == std::cmp::Ordering::Greater {
            lo = mid;
            hl = hm;
        } else {
            hi = mid;
            hh = hm;
        }
    }
    (hl, hh)
}

/// `h(phi(x)) == f(h(x))`, exactly.
pub fn conjugacy_check(x: &ExtendedRational) -> bool {
    let lhs = h_rational(&x.phi());
    let rhs = f_map(&h_rational(x).to_rational()).expect("h maps into [0, 1]");
    lhs.to_rational() == rhs
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: u64, d: u64) -> ExtendedRational {
        ExtendedRational::frac(n, d)
    }

    fn dy(m: u32, e: u64) -> DyadicRational {
        DyadicRational::new(m, e).unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn small_levels() {
        let show = |n| {
            farey_level(n)
                .unwrap()
                .entries()
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        assert_eq!(show(1), "0/1 1/1 1/0");
        assert_eq!(show(2), "0/1 1/2 1/1 2/1 1/0");
        assert_eq!(show(3), "0/1 1/3 1/2 2/3 1/1 3/2 2/1 3/1 1/0");
        assert!(matches!(farey_level(25), Err(Error::LevelTooLarge { .. })));
    }

    #[test]
    fn reports_pass() {
        for n in 1..=8 {
            let r = farey_properties_report(n).unwrap();
            assert!(r.all_passed(), "{r:?}");
            assert_eq!(r.identities[3].checked, (1 << n) + 1);
        }
    }

    #[test]
    fn f_examples() {
        assert_eq!(f_map(&rat(0, 1)).unwrap(), rat(1, 1));
        assert_eq!(f_map(&rat(1, 1)).unwrap(), rat(1, 2));
        assert_eq!(f_map(&rat(1, 2)).unwrap(), rat(0, 1));
        assert_eq!(f_map(&rat(1, 4)).unwrap(), rat(1, 2));
        assert_eq!(f_map(&rat(3, 4)).unwrap(), rat(1, 4));
        assert!(f_map(&rat(3, 2)).is_err());
    }

    #[test]
    fn h_examples() {
        assert_eq!(h_rational(&q(1, 0)), DyadicRational::one());
        assert_eq!(h_rational(&q(0, 1)), DyadicRational::zero());
        assert_eq!(h_rational(&q(1, 1)), dy(1, 1));
        assert_eq!(h_rational(&q(2, 1)), dy(3, 2));
        assert_eq!(h_rational(&q(1, 2)), dy(1, 2));
        assert_eq!(h_rational(&q(3, 2)), dy(5, 3));
        assert_eq!(h_rational(&q(5, 1)), dy(31, 5));
    }

    #[test]
    fn h_agrees_with_level_nodes() {
        for n in 1..=9u32 {
            let level = farey_level(n).unwrap();
            for (i, x) in level.entries().iter().enumerate() {
                assert_eq!(h_rational(x), dy(i as u32, n as u64), "{x}");
                assert_eq!(h_inverse(&h_rational(x)), *x);
            }
        }
    }

    #[test]
    fn huge_partial_quotient() {
        let x = ExtendedRational::new(3u32, 100_001u32).unwrap();
        let h = h_rational(&x);
        assert!(h > DyadicRational::zero() && h.exponent() > 33_000);
        assert_eq!(h_inverse(&h), x);
    }

    #[test]
    fn level_interpolation() {
        for n in 1..6 {
            assert!(h_level(n, &q(0, 1)).unwrap().is_zero());
        }
        assert_eq!(h_level(2, &q(1, 2)).unwrap(), rat(1, 4));
        assert_eq!(h_level(2, &q(3, 4)).unwrap(), rat(3, 8));
        assert_eq!(h_level(2, &q(1, 0)).unwrap(), rat(3, 4));
        assert_eq!(h_level(2, &q(7, 1)).unwrap(), rat(3, 4));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(h_inverse(&dy(1, 1)), q(1, 1));
        assert_eq!(h_inverse(&dy(1, 2)), q(1, 2));
        assert_eq!(h_inverse(&DyadicRational::zero()), q(0, 1));
        assert_eq!(h_inverse(&DyadicRational::one()), q(1, 0));
    }

    #[test]
    fn conjugacy_examples() {
        assert!(conjugacy_check(&q(2, 1)));
        assert!(conjugacy_check(&q(1, 1)));
        assert!(conjugacy_check(&q(1, 0)));
        assert!(conjugacy_check(&q(0, 1)));
        assert!(conjugacy_check(&q(355, 113)));
    }

    #[test]
    fn surd_enclosure_brackets() {
        let z: ExactPoint = crate::numeric::QuadraticSurd::new(-1, 1, 5, 2).unwrap().into();
        let (lo, hi) = h_enclosure(&z, 30);
        assert!(lo < hi);
        assert_eq!(hi.to_rational() - lo.to_rational(), rat(1, 1 << 30));
        // the golden-ratio conjugate sits on the zig-zag path: h = 1/3
        let third = rat(1, 3);
        assert!(lo.to_rational() < third && third < hi.to_rational());
    }

    #[test]
    fn csv_rows() {
        let csv = farey_level(1).unwrap().to_csv();
        assert_eq!(csv, "index,fraction,h\n0,0/1,0/2^0\n1,1/1,1/2^1\n2,1/0,1/2^0\n");
    }
}
