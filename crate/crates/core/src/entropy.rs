//! Entropy estimators, exact mixing certificates, dense periodic points and
//! a finite transitivity scan.
//!
//! The entropy of `phi` is `log lambda` with `lambda` the positive root of
//! `x^3 - 2x - 1 = (x + 1)(x^2 - x - 1)`, i.e. the golden ratio. It is
//! estimated through the golden-mean shift (word growth, transition matrix)
//! and through the conjugate map `f` (lap counts).

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::coding::{cylinder, periodic_point, CodeStream, FareyInterval, Word};
use crate::error::{Error, Result};
use crate::numeric::{ExactPoint, QuadraticSurd};

/// Deepest lap count computed; `f^n` has `F(n+2)` laps.
pub const MAX_LAP_DEPTH: u32 = 32;

/// `log((1 + sqrt 5) / 2)`.
pub fn golden_entropy() -> f64 {
    ((1.0 + 5f64.sqrt()) / 2.0).ln()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EntropyMethod {
    PolynomialRoot,
    WordGrowth,
    Spectral,
    LapCount,
}

impl EntropyMethod {
    pub fn name(self) -> &'static str {
        match self {
            Self::PolynomialRoot => "polynomial-root",
            Self::WordGrowth => "word-growth",
            Self::Spectral => "spectral",
            Self::LapCount => "lap-count",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct EntropyEstimate {
    pub method: EntropyMethod,
    /// Estimate of `log lambda`.
    pub value: f64,
    /// Estimate of `lambda` itself.
    pub lambda: f64,
    /// Recurrence depth, bisection steps or power iterations.
    pub depth: u64,
    pub error_bound: Option<f64>,
}

/// Length-`n` words without `11`: `c(1) = 2`, `c(2) = 3`,
/// `c(n) = c(n-1) + c(n-2)`.
pub fn count_admissible_words(n: u32) -> BigUint {
    assert!(n >= 1, "word length must be positive");
    let (mut a, mut b) = (BigUint::one(), BigUint::from(2u32));
    for _ in 1..n {
        let c = &a + &b;
        a = b;
        b = c;
    }
    b
}

fn ratio_f64(num: &BigUint, den: &BigUint) -> f64 {
    BigRational::new(BigInt::from(num.clone()), BigInt::from(den.clone()))
        .to_f64()
        .unwrap_or(f64::NAN)
}

/// `log(c(n) / c(n-1))`.
pub fn entropy_word_growth(n: u32) -> Result<EntropyEstimate> {
    if n < 2 {
        return Err(Error::Precondition("word growth needs n >= 2".into()));
    }
    let lambda = ratio_f64(&count_admissible_words(n), &count_admissible_words(n - 1));
    let prev = if n > 2 {
        ratio_f64(&count_admissible_words(n - 1), &count_admissible_words(n - 2))
    } else {
        2.0
    };
    Ok(EntropyEstimate {
        method: EntropyMethod::WordGrowth,
        value: lambda.ln(),
        lambda,
        depth: n.into(),
        error_bound: Some((lambda.ln() - prev.ln()).abs()),
    })
}

/// Integer polynomial, coefficients from the constant term up.
fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// `(x + 1)(x^2 - x - 1)` expands to `x^3 - 2x - 1`.
pub fn factorization_holds() -> bool {
    poly_mul(&[1, 1], &[-1, -1, 1]) == [-1, -2, 0, 1]
}

fn cubic(x: &BigRational) -> BigRational {
    x * x * x - x * BigInt::from(2) - BigRational::one()
}

/// Exact bracket `[lo, hi]` of the root of `x^3 - 2x - 1` in `[1, 2]` with
/// `hi - lo < tol`, and the number of bisection steps.
pub fn polynomial_root_bracket(tol: f64) -> Result<(BigRational, BigRational, u64)> {
    if !(tol > 0.0) {
        return Err(Error::Precondition("tolerance must be positive".into()));
    }
    let mut lo = BigRational::one();
    let mut hi = BigRational::from_integer(BigInt::from(2));
    debug_assert!(cubic(&lo).is_negative() && cubic(&hi).is_positive());
    let mut steps = 0u64;
    while (&hi - &lo).to_f64().unwrap() >= tol {
        let mid = (&lo + &hi) / BigInt::from(2);
        let v = cubic(&mid);
        if v.is_zero() {
            return Ok((mid.clone(), mid, steps));
        }
        if v.is_negative() {
            lo = mid;
        } else {
            hi = mid;
        }
        steps += 1;
    }
    Ok((lo, hi, steps))
}

pub fn entropy_polynomial_root(tol: f64) -> Result<EntropyEstimate> {
    let (lo, hi, steps) = polynomial_root_bracket(tol)?;
    let golden = QuadraticSurd::new(1, 1, 5, 2)?;
    let lo_x = crate::numeric::ExtendedRational::from_rational(&lo)?;
    let hi_x = crate::numeric::ExtendedRational::from_rational(&hi)?;
    if golden.cmp_rational(&lo_x).is_lt() || golden.cmp_rational(&hi_x).is_gt() {
        return Err(Error::Precondition("bisection lost the golden ratio".into()));
    }
    let lambda = ((&lo + &hi) / BigInt::from(2)).to_f64().unwrap();
    let width = (&hi - &lo).to_f64().unwrap();
    Ok(EntropyEstimate {
        method: EntropyMethod::PolynomialRoot,
        value: lambda.ln(),
        lambda,
        depth: steps,
        // |d log| <= width / lo with lo >= 1
        error_bound: Some(width),
    })
}

/// Power iteration on `[[1, 1], [1, 0]]` from `(1, 1)`, exact in integers;
/// the estimate is the ratio of successive coordinate sums.
pub fn transition_spectral_radius(iterations: u32) -> Result<EntropyEstimate> {
    if iterations == 0 {
        return Err(Error::Precondition("need at least one iteration".into()));
    }
    let (mut a, mut b) = (BigUint::one(), BigUint::one());
    let mut prev_ratio = f64::NAN;
    let mut ratio = f64::NAN;
    for _ in 0..iterations {
        let before = &a + &b;
        let na = &a + &b;
        b = a;
        a = na;
        prev_ratio = ratio;
        ratio = ratio_f64(&(&a + &b), &before);
    }
    Ok(EntropyEstimate {
        method: EntropyMethod::Spectral,
        value: ratio.ln(),
        lambda: ratio,
        depth: iterations.into(),
        error_bound: (!prev_ratio.is_nan()).then(|| (ratio - prev_ratio).abs()),
    })
}

/// Turning points of `f^n` in `(0, 1)`: the points `x` with `f^k(x) = 1/2`
/// for some `k < n`, as numerators over `2^(n+1)`, sorted.
pub fn lap_breakpoints(n: u32) -> Result<Vec<u64>> {
    if n == 0 {
        return Err(Error::Precondition("lap count needs n >= 1".into()));
    }
    if n > MAX_LAP_DEPTH {
        return Err(Error::DepthTooLarge {
            requested: n,
            max: MAX_LAP_DEPTH,
        });
    }
    let one = 1u64 << (n + 1);
    let half = one / 2;
    let mut all = BTreeSet::from([half]);
    let mut layer = vec![half];
    for _ in 1..n {
        let mut next = BTreeSet::new();
        for &y in &layer {
            // f^{-1}(y) = { (1 - y)/2, y + 1/2 }; both have denominator one
            // power of two larger, which the scale absorbs
            let a = (one - y) / 2;
            let b = y + half;
            for x in [a, b] {
                if x > 0 && x < one {
                    next.insert(x);
                }
            }
        }
        all.extend(next.iter().copied());
        layer = next.into_iter().collect();
    }
    Ok(all.into_iter().collect())
}

/// Maximal monotone pieces of `f^n`.
pub fn lap_count(n: u32) -> Result<BigUint> {
    Ok(BigUint::from(lap_breakpoints(n)?.len() + 1))
}

pub fn entropy_lap_count(n: u32) -> Result<EntropyEstimate> {
    let laps = lap_count(n)?.to_f64().unwrap();
    let value = laps.ln() / f64::from(n);
    Ok(EntropyEstimate {
        method: EntropyMethod::LapCount,
        value,
        lambda: value.exp(),
        depth: n.into(),
        error_bound: None,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct MixingCertificate {
    pub word: Word,
    /// `steps[0]` is the cylinder, `steps[k+1]` the exact image of `steps[k]`.
    pub steps: Vec<Vec<FareyInterval>>,
    pub n_cover: usize,
}

/// Sorted, disjoint union; intervals sharing an endpoint are merged.
pub fn merge_union(mut pieces: Vec<FareyInterval>) -> Vec<FareyInterval> {
    pieces.sort_by(|a, b| a.lo().cmp(b.lo()).then(a.hi().cmp(b.hi())));
    let mut out: Vec<FareyInterval> = Vec::with_capacity(pieces.len());
    for iv in pieces {
        match out.last_mut() {
            Some(last) if iv.lo() <= last.hi() => {
                if iv.hi() > last.hi() {
                    *last = FareyInterval::new(last.lo().clone(), iv.hi().clone()).unwrap();
                }
            }
            _ => out.push(iv),
        }
    }
    out
}

/// Image of a union under `phi`, merged.
pub fn phi_union_image(union: &[FareyInterval]) -> Vec<FareyInterval> {
    merge_union(union.iter().flat_map(|iv| iv.phi_image()).collect())
}

/// Iterates `phi` on the cylinder of `w` until the union is `[0, inf]`.
pub fn mixing_certificate(w: &Word) -> Result<MixingCertificate> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let start = cylinder(w)?;
    if start.is_degenerate() {
        return Err(Error::Precondition(format!("cylinder of {w} is a point")));
    }
    let bound = w.len() + 2;
    let mut steps = vec![vec![start]];
    while !(steps.last().unwrap().len() == 1 && steps.last().unwrap()[0].is_whole()) {
        if steps.len() > bound {
            return Err(Error::Precondition(format!(
                "no cover of [0, inf] within {bound} steps for {w}"
            )));
        }
        let next = phi_union_image(steps.last().unwrap());
        steps.push(next);
    }
    Ok(MixingCertificate {
        word: w.clone(),
        n_cover: steps.len() - 1,
        steps,
    })
}

/// Periodic point of `(w 000)` repeated: irrational, inside the cylinder of
/// `w`, fixed by `phi^(|w|+3)`.
pub fn dense_periodic_witness(w: &Word) -> Result<QuadraticSurd> {
    w.require_admissible()?;
    let period = w.concat(&Word::zeros(3));
    match periodic_point(&Word::empty(), &period)? {
        ExactPoint::Surd(s) => Ok(s),
        ExactPoint::Rational(x) => Err(Error::Precondition(format!(
            "periodic point {x} of ({period}) is rational"
        ))),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct WordOccurrence {
    pub word: Word,
    /// First index `i` with `i % stride == 0` where the word starts.
    pub first_index: Option<u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TransitivityReport {
    pub stream: String,
    pub word_len: usize,
    pub stride: u64,
    pub horizon: u64,
    pub words: Vec<WordOccurrence>,
    pub passed: bool,
}

/// Does every admissible word of length `word_len` start at some index
/// `i < horizon` with `i % stride == 0`?
pub fn transitivity_check(
    s: &CodeStream,
    word_len: usize,
    stride: u64,
    horizon: u64,
) -> Result<TransitivityReport> {
    if word_len == 0 || word_len > 8 || stride == 0 || stride > 3 || horizon == 0 {
        return Err(Error::Precondition(
            "transitivity scan needs 1 <= word_len <= 8, 1 <= stride <= 3, horizon >= 1".into(),
        ));
    }
    let targets = Word::admissible_of_len(word_len);
    let key = |w: &Word| w.symbols().iter().fold(0u32, |acc, &b| acc << 1 | u32::from(b));
    let mut first: BTreeMap<u32, u64> = BTreeMap::new();
    let wanted: BTreeSet<u32> = targets.iter().map(key).collect();
    let mask = (1u32 << word_len) - 1;
    let mut window = 0u32;
    for j in 0..horizon + word_len as u64 - 1 {
        window = (window << 1 | u32::from(s.symbol_at(j))) & mask;
        if j + 1 < word_len as u64 {
            continue;
        }
        let start = j + 1 - word_len as u64;
        if start.is_multiple_of(stride) && wanted.contains(&window) {
            first.entry(window).or_insert(start);
            if first.len() == wanted.len() {
                break;
            }
        }
    }
    let words: Vec<WordOccurrence> = targets
        .into_iter()
        .map(|w| WordOccurrence {
            first_index: first.get(&key(&w)).copied(),
            word: w,
        })
        .collect();
    let passed = words.iter().all(|o| o.first_index.is_some());
    Ok(TransitivityReport {
        stream: s.label(),
        word_len,
        stride,
        horizon,
        words,
        passed,
    })
}
