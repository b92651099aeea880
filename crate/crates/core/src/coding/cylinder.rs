use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Serialize, Serializer};

use super::{CodeStream, Word};
use crate::error::{Error, Result};
use crate::numeric::{ExactPoint, ExtendedRational, MobiusMap};

/// A closed interval `[lo, hi]` of `[0, inf]` with exact endpoints.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FareyInterval {
    lo: ExtendedRational,
    hi: ExtendedRational,
}

impl FareyInterval {
    pub fn new(lo: ExtendedRational, hi: ExtendedRational) -> Result<Self> {
        if lo > hi {
            return Err(Error::Precondition(format!("interval {lo}..{hi} is reversed")));
        }
        Ok(Self { lo, hi })
    }

    pub(crate) fn sorted(a: ExtendedRational, b: ExtendedRational) -> Self {
        if a <= b {
            Self { lo: a, hi: b }
        } else {
            Self { lo: b, hi: a }
        }
    }

    pub fn whole() -> Self {
        Self {
            lo: ExtendedRational::zero(),
            hi: ExtendedRational::infinity(),
        }
    }

    /// `I_0 = [0, 1]`.
    pub fn unit() -> Self {
        Self {
            lo: ExtendedRational::zero(),
            hi: ExtendedRational::one(),
        }
    }

    /// `I_1 = [1, inf]`.
    pub fn upper() -> Self {
        Self {
            lo: ExtendedRational::one(),
            hi: ExtendedRational::infinity(),
        }
    }

    pub fn lo(&self) -> &ExtendedRational {
        &self.lo
    }

    pub fn hi(&self) -> &ExtendedRational {
        &self.hi
    }

    pub fn is_whole(&self) -> bool {
        self.lo.is_zero() && self.hi.is_infinite()
    }

    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }

    /// `hi - lo`, or `None` when `hi = inf` (and the interval is not `{inf}`).
    pub fn width(&self) -> Option<BigRational> {
        match (self.lo.to_rational(), self.hi.to_rational()) {
            (Some(a), Some(b)) => Some(b - a),
            _ if self.is_degenerate() => Some(BigRational::zero()),
            _ => None,
        }
    }

    /// `|b c - a d|` for `lo = b/a`, `hi = d/c`; `1` for cylinders.
    pub fn determinant(&self) -> BigInt {
        let b = BigInt::from(self.lo.numer().clone());
        let a = BigInt::from(self.lo.denom().clone());
        let d = BigInt::from(self.hi.numer().clone());
        let c = BigInt::from(self.hi.denom().clone());
        let det = b * c - a * d;
        if det < BigInt::zero() {
            -det
        } else {
            det
        }
    }

    pub fn contains(&self, x: &ExtendedRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_point(&self, x: &ExactPoint) -> bool {
        x.cmp_rational(&self.lo) != Ordering::Less && x.cmp_rational(&self.hi) != Ordering::Greater
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    pub fn mediant(&self) -> ExtendedRational {
        self.lo.mediant(&self.hi)
    }

    /// Exact image under `phi`: one piece when the interval lies on one side
    /// of 1, two pieces when it straddles 1.
    pub fn phi_image(&self) -> Vec<FareyInterval> {
        let one = ExtendedRational::one();
        let mut out = Vec::with_capacity(2);
        if self.lo < one {
            // phi decreasing on [0, 1]
            let top = if self.hi < one { self.hi.clone() } else { one.clone() };
            out.push(Self::sorted(top.phi(), self.lo.phi()));
        }
        if self.hi >= one && !(self.hi == one && self.lo < one) {
            // phi increasing on [1, inf]
            let bottom = if self.lo > one { self.lo.clone() } else { one };
            out.push(Self::sorted(bottom.phi(), self.hi.phi()));
        }
        out
    }
}

impl fmt::Display for FareyInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

impl fmt::Debug for FareyInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl Serialize for FareyInterval {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for FareyInterval {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let sep = s.find("..").ok_or(Error::Parse {
            pos: 0,
            msg: "expected lo..hi".into(),
        })?;
        let lo = crate::text::parse_fraction(&s[..sep])?;
        let hi = crate::text::parse_fraction(&s[sep + 2..]).map_err(|e| match e {
            Error::Parse { pos, msg } => Error::Parse {
                pos: pos + sep + 2,
                msg,
            },
            other => other,
        })?;
        FareyInterval::new(lo, hi)
    }
}

/// `phi(iv)` as one or two exact pieces.
pub fn phi_interval_image(iv: &FareyInterval) -> Vec<FareyInterval> {
    iv.phi_image()
}

/// The cylinder `{x : phi^k(x) in I_{w_k}, 0 <= k < |w|}`, built by applying
/// the inverse branches right to left.
pub fn cylinder(w: &Word) -> Result<FareyInterval> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    w.require_admissible()?;
    let mut walker = CylinderWalker::new();
    for &s in w.symbols() {
        walker.push(s)?;
    }
    Ok(walker.interval())
}

/// Incremental cylinder of a growing prefix.
///
/// Keeps `M = psi_{w_0} ∘ ... ∘ psi_{w_{n-2}}`; the cylinder of the prefix is
/// `M(I_{w_{n-1}})`, and `M` is monotone there.
#[derive(Clone, Debug)]
pub struct CylinderWalker {
    prefix_map: MobiusMap,
    last: Option<u8>,
    len: usize,
}

impl Default for CylinderWalker {
    fn default() -> Self {
        Self::new()
    }
}

impl CylinderWalker {
    pub fn new() -> Self {
        Self {
            prefix_map: MobiusMap::identity(),
            last: None,
            len: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn push(&mut self, symbol: u8) -> Result<()> {
        if let Some(prev) = self.last {
            if prev == 1 && symbol == 1 {
                return Err(Error::Inadmissible(format!("...11 at position {}", self.len)));
            }
            self.prefix_map = self.prefix_map.compose(&MobiusMap::branch_inverse(prev));
        }
        self.last = Some(symbol);
        self.len += 1;
        Ok(())
    }

    /// Cylinder of the symbols pushed so far (`[0, inf]` before any).
    pub fn interval(&self) -> FareyInterval {
        let base = match self.last {
            None => return FareyInterval::whole(),
            Some(0) => FareyInterval::unit(),
            Some(_) => FareyInterval::upper(),
        };
        let a = self.prefix_map.apply(base.lo()).expect("admissible prefix keeps [0, inf]");
        let b = self.prefix_map.apply(base.hi()).expect("admissible prefix keeps [0, inf]");
        FareyInterval::sorted(a, b)
    }
}

/// Certified enclosure of the point coded by `s`: the cylinder of the
/// shortest prefix (at most `max_prefix` symbols) narrower than `width_goal`.
pub fn point_of_code(
    s: &CodeStream,
    max_prefix: usize,
    width_goal: &BigRational,
) -> Result<FareyInterval> {
    let mut walker = CylinderWalker::new();
    let mut current = FareyInterval::whole();
    for i in 0..max_prefix {
        walker.push(s.symbol_at(i as u64))?;
        current = walker.interval();
        if let Some(w) = current.width() {
            if &w < width_goal {
                return Ok(current);
            }
        }
    }
    Err(Error::WidthGoalNotReached {
        prefix: max_prefix,
        enclosure: current,
    })
}

/// The nested enclosures for prefix lengths `1..=max_prefix`.
pub fn enclosures(s: &CodeStream, max_prefix: usize) -> Result<Vec<FareyInterval>> {
    let mut walker = CylinderWalker::new();
    (0..max_prefix)
        .map(|i| {
            walker.push(s.symbol_at(i as u64))?;
            Ok(walker.interval())
        })
        .collect()
}

/// Symbol emitted at the boundary point `1`, which lies in both `I_0` and
/// `I_1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TieRule {
    /// Always emit 0 at the point 1.
    #[default]
    Zero,
    /// Emit 1 at the point 1 unless the previous symbol was 1; gives the
    /// other code of a rational, e.g. `1 010 010 ...` for 1.
    One,
}

/// The first `n` symbols of the code of `x`.
pub fn itinerary(x: &ExactPoint, n: usize, tie: TieRule) -> Result<Word> {
    let one = ExtendedRational::one();
    let mut w = Word::empty();
    let mut p = x.clone();
    for k in 0..n {
        let sym = match p.cmp_rational(&one) {
            Ordering::Less => 0,
            Ordering::Greater => 1,
            Ordering::Equal => match tie {
                TieRule::One if w.last() != Some(1) => 1,
                _ => 0,
            },
        };
        w.push(sym);
        if k + 1 < n {
            p = p.phi()?;
        }
    }
    Ok(w)
}

/// Exact point with code `preperiod · period period ...`.
pub fn periodic_point(preperiod: &Word, period: &Word) -> Result<ExactPoint> {
    if period.is_empty() {
        return Err(Error::EmptyWord);
    }
    preperiod.concat(period).concat(period).require_admissible()?;
    let map = composition(period);
    let candidates = map.fixed_points()?;
    let mut chosen = None;
    let mut reps = 1;
    while chosen.is_none() {
        let cyl = cylinder(&period.repeat(reps))?;
        let inside: Vec<&ExactPoint> =
            candidates.iter().filter(|x| cyl.contains_point(x)).collect();
        match inside.len() {
            0 => return Err(Error::NoFixedPoint),
            1 => chosen = Some(inside[0].clone()),
            _ if reps >= 16 => return Err(Error::AmbiguousFixedPoint(period.to_string())),
            _ => reps += 1,
        }
    }
    let x = chosen.unwrap();
    if preperiod.is_empty() {
        Ok(x)
    } else {
        composition(preperiod).apply_point(&x)
    }
}

/// `psi_{w_0} ∘ psi_{w_1} ∘ ... ∘ psi_{w_{n-1}}`.
pub fn composition(w: &Word) -> MobiusMap {
    w.symbols()
        .iter()
        .fold(MobiusMap::identity(), |m, &s| m.compose(&MobiusMap::branch_inverse(s)))
}
