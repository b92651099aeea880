//! Factorial-block codes whose points form scrambled sets, and finite checks
//! of the events their orbits are built to produce.
//!
//! Both families start with a fixed prefix of length `5! = 120` followed by
//! blocks `A(k!)` occupying `[k!, (k+1)!)` for `k >= 5`. Every block is `k`
//! strings of length `k!`:
//!
//! * `mu`: `01 0^(k!-2)`, then `0 b_j 0^(k!-2)` for `j = 0..k-2`;
//! * `tau`: a copy of `alpha_0 .. alpha_(k!-1)`, the separation string
//!   `0^(k!/4) (100)^(k!/12) (001)^(k!/12) (010)^(k!/12)`, the parameter
//!   string `(b_j 00)^((k-1)!/3)` for `j = 0..k-1`, and `k - 3` tracking
//!   blocks built from C and C* windows of the tracked codes.
//!
//! Symbols are computed from the index alone; nothing is materialised.

use std::cmp::Ordering;
use std::fmt;
use std::ops::RangeInclusive;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::coding::{CodeStream, CylinderWalker, FareyInterval, SymbolSource, Word};
use crate::error::{Error, Result};
use crate::numeric::ExtendedRational;

/// Largest block index schedules may use unless configured otherwise.
pub const DEFAULT_MAX_K: u32 = 9;
/// Largest `k` whose whole block `A(k!)` has `u64` indices.
pub const HARD_MAX_K: u32 = 19;

const PREFIX_LEN: u64 = 120;

/// `k!`, or `None` past `u64`.
pub fn factorial(k: u32) -> Option<u64> {
    (1..=u64::from(k)).try_fold(1u64, |acc, i| acc.checked_mul(i))
}

fn fact(k: u32) -> u64 {
    factorial(k).expect("factorial beyond u64")
}

/// The block `k >= 5` with `k! <= n < (k+1)!`, for `n >= 5!`.
fn block_of(n: u64) -> u32 {
    let mut k = 5;
    while factorial(k + 1).is_some_and(|f| f <= n) {
        k += 1;
    }
    k
}

fn check_k_range(ks: &RangeInclusive<u32>, max_k: u32) -> Result<()> {
    let cap = max_k.min(HARD_MAX_K);
    if *ks.start() < 5 || ks.is_empty() {
        return Err(Error::Precondition(format!(
            "k range {}..{} must start at 5 or above",
            ks.start(),
            ks.end()
        )));
    }
    if *ks.end() > cap {
        return Err(Error::KTooLarge {
            requested: *ks.end(),
            max: cap,
        });
    }
    Ok(())
}

/// Index arithmetic of one block `A(k!)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BlockLayout {
    pub k: u32,
    /// `k!`, the absolute start of the block and the length of each string.
    pub fact: u64,
}

/// Where an absolute index of `tau` falls.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TauPosition {
    /// Below `5!`.
    Prefix { p: u64 },
    /// String 0: `alpha_p`.
    Alpha { k: u32, p: u64 },
    /// String 1, inside `0^(k!/4)`.
    Zeros { k: u32, p: u64 },
    /// String 1, run `0` = `(100)`, `1` = `(001)`, `2` = `(010)`; `o` is the
    /// offset from the run start.
    Run { k: u32, run: u32, o: u64 },
    /// String 2, the `(b_j 00)` stretch.
    Beta { k: u32, j: u32, o: u64 },
    /// Tracking block `i` (`1..=k-3`), window `j` (`1..=k`), C or C*.
    Tracking { k: u32, i: u32, j: u32, star: bool, o: u64 },
}

impl BlockLayout {
    pub fn new(k: u32) -> Result<Self> {
        if k < 5 {
            return Err(Error::Precondition("blocks start at k = 5".into()));
        }
        let fact = factorial(k).ok_or(Error::KTooLarge {
            requested: k,
            max: 20,
        })?;
        Ok(Self { k, fact })
    }

    /// Absolute end `(k+1)!` (exclusive).
    pub fn end(&self) -> u64 {
        self.fact * (u64::from(self.k) + 1)
    }

    /// Start of string `p` (`0..k`).
    pub fn string_start(&self, p: u32) -> u64 {
        self.fact * (1 + u64::from(p))
    }

    pub fn quarter(&self) -> u64 {
        self.fact / 4
    }

    pub fn twelfth(&self) -> u64 {
        self.fact / 12
    }

    /// `(k-1)!`, the length of each `(b_j 00)` stretch.
    pub fn sub_fact(&self) -> u64 {
        self.fact / u64::from(self.k)
    }

    /// `(k-1)!/2`, the length of each C and C* window.
    pub fn window(&self) -> u64 {
        self.sub_fact() / 2
    }

    /// Absolute start of separation run `run` in `tau`.
    pub fn run_start(&self, run: u32) -> u64 {
        self.string_start(1) + self.quarter() * (1 + u64::from(run))
    }

    /// Absolute start of `(b_j 00)^((k-1)!/3)` in `tau`.
    pub fn beta_start(&self, j: u32) -> u64 {
        self.string_start(2) + u64::from(j) * self.sub_fact()
    }

    /// `(3+i) k!`, the absolute start of tracking block `i`.
    pub fn tracking_start(&self, i: u32) -> u64 {
        self.string_start(2 + i)
    }

    /// Absolute start of window `j` in tracking block `i`.
    pub fn window_start(&self, i: u32, j: u32, star: bool) -> u64 {
        let base = self.tracking_start(i) + if star { self.fact / 2 } else { 0 };
        base + u64::from(j - 1) * self.window()
    }

    /// First index of the tracked code read by window `j`: the windows copy
    /// `(k-1)!/2 - 1` symbols each, back to back.
    pub fn window_source(&self, i: u32, j: u32, star: bool) -> u64 {
        let base = self.tracking_start(i) + if star { self.fact / 2 } else { 0 };
        base + u64::from(j - 1) * (self.window() - 1)
    }

    /// Sub-block lengths of the `tau` layout in order: alpha copy, zeros,
    /// three runs, `k` parameter stretches, `2k` windows per tracking block.
    pub fn tau_sub_blocks(&self) -> Vec<u64> {
        let k = u64::from(self.k);
        let mut out = vec![self.fact, self.quarter()];
        out.extend([3 * self.twelfth(); 3]);
        out.extend(std::iter::repeat_n(self.sub_fact(), self.k as usize));
        for _ in 0..self.k - 3 {
            out.extend(std::iter::repeat_n(self.window(), 2 * k as usize));
        }
        out
    }

    fn locate(&self, n: u64) -> TauPosition {
        let k = self.k;
        let r = n - self.fact;
        let (part, p) = (r / self.fact, r % self.fact);
        match part {
            0 => TauPosition::Alpha { k, p },
            1 if p < self.quarter() => TauPosition::Zeros { k, p },
            1 => {
                let q = p - self.quarter();
                TauPosition::Run {
                    k,
                    run: (q / self.quarter()) as u32,
                    o: q % self.quarter(),
                }
            }
            2 => TauPosition::Beta {
                k,
                j: (p / self.sub_fact()) as u32,
                o: p % self.sub_fact(),
            },
            _ => {
                let sub = p / self.window();
                let o = p % self.window();
                let (star, j) = if sub < u64::from(k) {
                    (false, sub as u32 + 1)
                } else {
                    (true, (sub - u64::from(k)) as u32 + 1)
                };
                TauPosition::Tracking {
                    k,
                    i: part as u32 - 2,
                    j,
                    star,
                    o,
                }
            }
        }
    }
}

/// Position of an absolute index of `tau`.
pub fn locate_tau(n: u64) -> TauPosition {
    if n < PREFIX_LEN {
        TauPosition::Prefix { p: n }
    } else {
        BlockLayout::new(block_of(n)).unwrap().locate(n)
    }
}

/// A 0-1 parameter sequence from a finite word, repeated forever.
pub fn beta_from_word(w: &Word) -> Result<CodeStream> {
    CodeStream::periodic_unchecked(Word::empty(), w.clone())
}

struct MuSource {
    beta: CodeStream,
}

impl SymbolSource for MuSource {
    fn symbol_at(&self, n: u64) -> u8 {
        if n < PREFIX_LEN {
            return 0;
        }
        let k = block_of(n);
        let f = fact(k);
        let r = n - f;
        let (s, p) = (r / f, r % f);
        match (s, p) {
            (0, 1) => 1,
            (_, 1) => self.beta.symbol_at(s - 1),
            _ => 0,
        }
    }

    fn label(&self) -> String {
        format!("mu[{}]", self.beta)
    }
}

/// `mu_beta = 0^(5!) A(5!) A(6!) ...`.
pub fn mu_code(beta: &CodeStream) -> CodeStream {
    CodeStream::procedural(Arc::new(MuSource { beta: beta.clone() }))
}

/// The first `count` admissible words of length at least 5, ordered by
/// length and then lexicographically.
pub fn enumerate_admissible(count: usize) -> Vec<Word> {
    let mut out = Vec::with_capacity(count);
    let mut len = 5;
    while out.len() < count {
        out.extend(Word::admissible_of_len(len).into_iter().take(count - out.len()));
        len += 1;
    }
    out
}

/// Positions `(m_i)!` at which the enumerated words `B_i` are written.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlphaSchedule {
    pub m: Vec<u32>,
    pub words: Vec<Word>,
    #[serde(skip)]
    starts: Vec<u64>,
}

impl AlphaSchedule {
    /// Smallest increasing `m_i` with `(m_i)! > (m_(i-1))! + k_(i-1) + 1`,
    /// as far as `(m_i)!` fits in `u64`.
    pub fn minimal() -> Self {
        let words = enumerate_admissible(20);
        let mut m = vec![1u32];
        while m.len() < words.len() {
            let prev = *m.last().unwrap();
            let need = fact(prev) + words[m.len() - 1].len() as u64 + 1;
            let mut next = prev + 1;
            while factorial(next).is_some_and(|f| f <= need) {
                next += 1;
            }
            if factorial(next).is_none() {
                break;
            }
            m.push(next);
        }
        Self::explicit(m).expect("minimal schedule is valid")
    }

    /// A user schedule; position `i` (1-based) of the first violation is
    /// reported.
    pub fn explicit(m: Vec<u32>) -> Result<Self> {
        let words = enumerate_admissible(m.len());
        let mut starts = Vec::with_capacity(m.len());
        for (idx, &mi) in m.iter().enumerate() {
            let f = factorial(mi).ok_or(Error::BadSchedule(idx + 1))?;
            if mi == 0 {
                return Err(Error::BadSchedule(idx + 1));
            }
            if idx > 0 {
                let prev = starts[idx - 1] + words[idx - 1].len() as u64 + 1;
                if mi <= m[idx - 1] || f <= prev {
                    return Err(Error::BadSchedule(idx + 1));
                }
            }
            starts.push(f);
        }
        Ok(Self { m, words, starts })
    }

    pub fn starts(&self) -> &[u64] {
        &self.starts
    }
}

struct AlphaSource {
    schedule: AlphaSchedule,
}

impl SymbolSource for AlphaSource {
    fn symbol_at(&self, n: u64) -> u8 {
        let starts = &self.schedule.starts;
        let idx = starts.partition_point(|&s| s <= n);
        if idx == 0 {
            return 0;
        }
        let w = &self.schedule.words[idx - 1];
        let off = n - starts[idx - 1];
        w.symbols().get(off as usize).copied().unwrap_or(0)
    }

    fn label(&self) -> String {
        "alpha".into()
    }
}

/// `alpha`: `B_i` at `(m_i)!`, zeros elsewhere.
pub fn alpha_transitive(schedule: &AlphaSchedule) -> CodeStream {
    CodeStream::procedural(Arc::new(AlphaSource {
        schedule: schedule.clone(),
    }))
}

fn check_window(i: u64, j: u64) -> Result<()> {
    if i < 5 || j <= i || !(j - i + 1).is_multiple_of(3) {
        return Err(Error::Precondition(format!(
            "window {i}:{j} needs 5 <= i < j and j - i + 1 divisible by 3"
        )));
    }
    Ok(())
}

/// `C(i : j) = gamma_i .. gamma_(j-1) 0`.
pub fn c_block(code: &CodeStream, i: u64, j: u64) -> Result<Word> {
    check_window(i, j)?;
    let mut w = code.window(i, (j - i) as usize);
    w.push(0);
    Ok(w)
}

fn c_star_symbol(lead: u8, len: u64, o: u64) -> u8 {
    if lead == 1 {
        // 0 (100)^m 10
        match o {
            0 => 0,
            o if o == len - 2 => 1,
            o if o == len - 1 => 0,
            o => u8::from((o - 1) % 3 == 0),
        }
    } else {
        u8::from(o.is_multiple_of(3))
    }
}

/// `C*(i : j)`: `0 100 ... 100 10` when `gamma_i = 1`, `100 ... 100`
/// otherwise.
pub fn c_star_block(code: &CodeStream, i: u64, j: u64) -> Result<Word> {
    check_window(i, j)?;
    let len = j - i + 1;
    let lead = code.symbol_at(i);
    Word::new((0..len).map(|o| c_star_symbol(lead, len, o)).collect())
}

struct TauSource {
    alpha: CodeStream,
    beta: CodeStream,
    tracked: Vec<CodeStream>,
}

impl TauSource {
    fn tracked(&self, i: u32) -> &CodeStream {
        &self.tracked[(i as usize - 1) % self.tracked.len()]
    }
}

impl SymbolSource for TauSource {
    fn symbol_at(&self, n: u64) -> u8 {
        const PATTERNS: [[u8; 3]; 3] = [[1, 0, 0], [0, 0, 1], [0, 1, 0]];
        match locate_tau(n) {
            TauPosition::Prefix { p } if p + 1 < PREFIX_LEN => self.alpha.symbol_at(p),
            TauPosition::Prefix { .. } | TauPosition::Zeros { .. } => 0,
            TauPosition::Alpha { p, .. } => self.alpha.symbol_at(p),
            TauPosition::Run { run, o, .. } => PATTERNS[run as usize][(o % 3) as usize],
            TauPosition::Beta { j, o, .. } => {
                if o % 3 == 0 {
                    self.beta.symbol_at(u64::from(j))
                } else {
                    0
                }
            }
            TauPosition::Tracking { k, i, j, star, o } => {
                let layout = BlockLayout::new(k).unwrap();
                let len = layout.window();
                let gamma = self.tracked(i);
                let src = layout.window_source(i, j, star);
                if star {
                    c_star_symbol(gamma.symbol_at(src), len, o)
                } else if o + 1 == len {
                    0
                } else {
                    gamma.symbol_at(src + o)
                }
            }
        }
    }

    fn label(&self) -> String {
        format!("tau[{}]", self.beta)
    }
}

/// `tau_beta(alpha, X)`. Tracked codes are reused cyclically when there are
/// fewer than `k - 3` of them.
pub fn tau_code(beta: &CodeStream, alpha: &CodeStream, tracked: &[CodeStream]) -> Result<CodeStream> {
    if tracked.is_empty() {
        return Err(Error::Precondition("tau needs at least one tracked code".into()));
    }
    for x in tracked {
        if !x.is_admissible_on(0, 256) {
            return Err(Error::Inadmissible(x.to_string()));
        }
    }
    Ok(CodeStream::procedural(Arc::new(TauSource {
        alpha: alpha.clone(),
        beta: beta.clone(),
        tracked: tracked.to_vec(),
    })))
}

/// Default tracked codes: irrational periodic points spread over `(0, inf)`.
pub fn default_tracked() -> Vec<CodeStream> {
    ["(0)", "1(0)", "(00010)", "(01000)", "(10)", "(0010)"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EventKind {
    Close,
    Far,
}

/// The part of the construction that makes an event happen.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "block", rename_all = "kebab-case")]
pub enum EventSource {
    /// String `string` of `A(k!)` in `mu`.
    MuString { k: u32, string: u32 },
    /// `0^(k!/4)` of `tau`.
    TauZeros { k: u32 },
    /// Separation run `run` of `tau`.
    TauRun { k: u32, run: u32 },
    /// `(b_j 00)` stretch of `tau`.
    TauBeta { k: u32, j: u32 },
    /// C (or C*) window `j` of tracking block `i`.
    TauTracking { k: u32, i: u32, j: u32, star: bool },
}

/// A time `n` at which the pair is predicted to be close or far apart.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScheduleEvent {
    pub kind: EventKind,
    #[serde(serialize_with = "as_string")]
    pub index: u64,
    pub source: EventSource,
    pub note: String,
}

fn as_string<S: Serializer>(v: &u64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// Which construction to schedule events for.
#[derive(Clone)]
pub enum ScheduleKind {
    /// Pair `(mu_beta, sigma^shift mu_xi)`.
    Theorem1 { shift: u64, beta: CodeStream, xi: CodeStream },
    /// Pair `(tau_beta, sigma^shift tau_eta)`.
    Theorem2 { shift: u64, beta: CodeStream, eta: CodeStream },
    /// Pair `(orbit of r, tau)`; `tau` locates the phase alignment.
    RationalVsTau { r: ExtendedRational, tau: CodeStream },
    /// Pair `(gamma, sigma^(j-1) tau)` where `gamma` is tracked code `i`.
    Tracking { i: u32, j: u32, gamma: CodeStream },
}

fn event(kind: EventKind, index: u64, source: EventSource, note: String) -> ScheduleEvent {
    ScheduleEvent {
        kind,
        index,
        source,
        note,
    }
}

pub fn schedule_events(
    kind: &ScheduleKind,
    ks: RangeInclusive<u32>,
    max_k: u32,
) -> Result<Vec<ScheduleEvent>> {
    check_k_range(&ks, max_k)?;
    let mut out = Vec::new();
    for k in ks {
        let lay = BlockLayout::new(k)?;
        let f = lay.fact;
        match kind {
            ScheduleKind::Theorem1 { shift, beta, xi } => {
                let i = *shift;
                if i >= f / 2 {
                    continue;
                }
                if i > 0 {
                    out.push(event(
                        EventKind::Far,
                        f + 1,
                        EventSource::MuString { k, string: 0 },
                        format!("1 0^(k!-2) vs 0^(k!-1-{i})"),
                    ));
                }
                out.push(event(
                    EventKind::Close,
                    f + 2,
                    EventSource::MuString { k, string: 0 },
                    format!("0^(k!-2) vs 0^(k!-2-{i})"),
                ));
                if i == 0 {
                    for m in 0..k - 1 {
                        let (b, x) = (beta.symbol_at(m.into()), xi.symbol_at(m.into()));
                        if b != x {
                            out.push(event(
                                EventKind::Far,
                                (u64::from(m) + 2) * f + 1,
                                EventSource::MuString { k, string: m + 1 },
                                format!("{b} 0^(k!-2) vs {x} 0^(k!-2)"),
                            ));
                        }
                    }
                }
            }
            ScheduleKind::Theorem2 { shift, beta, eta } => {
                let i = *shift;
                if i >= lay.quarter() {
                    continue;
                }
                out.push(event(
                    EventKind::Close,
                    lay.string_start(1),
                    EventSource::TauZeros { k },
                    format!("0^(k!/4) vs 0^(k!/4-{i})"),
                ));
                if i > 0 {
                    out.push(event(
                        EventKind::Far,
                        lay.run_start(0) - i,
                        EventSource::TauZeros { k },
                        format!("0^{i} (100)^(k!/12) vs (100)^(k!/12)"),
                    ));
                } else {
                    for j in 0..k {
                        let (b, e) = (beta.symbol_at(j.into()), eta.symbol_at(j.into()));
                        if b != e {
                            out.push(event(
                                EventKind::Far,
                                lay.beta_start(j),
                                EventSource::TauBeta { k, j },
                                format!("({b}00)^((k-1)!/3) vs ({e}00)^((k-1)!/3)"),
                            ));
                        }
                    }
                }
            }
            ScheduleKind::RationalVsTau { r, tau } => {
                let e = r.escape_time();
                for run in 0..3 {
                    let start = lay.run_start(run);
                    for o in 0..3 {
                        let n = start + o;
                        let rv = rational_orbit_at(r, e, n);
                        let tv = tau_phase(tau, n);
                        if n >= e && tv.as_ref() == Some(&rv) && !rv.is_infinite() {
                            out.push(event(
                                EventKind::Close,
                                n,
                                EventSource::TauRun { k, run },
                                format!("phi^n(r) = {rv}, tau tail near {rv}"),
                            ));
                        }
                    }
                }
                let zeros = lay.string_start(1);
                if let Some(n) = (zeros..zeros + 3)
                    .find(|&n| n >= e && rational_orbit_at(r, e, n).is_infinite())
                {
                    out.push(event(
                        EventKind::Far,
                        n,
                        EventSource::TauZeros { k },
                        "phi^n(r) = inf, tau tail in a 0-run".into(),
                    ));
                }
            }
            ScheduleKind::Tracking { i, j, gamma } => {
                if *i == 0 || *i > k - 3 || *j == 0 || *j > k {
                    continue;
                }
                let n = lay.window_source(*i, *j, false);
                out.push(event(
                    EventKind::Close,
                    n,
                    EventSource::TauTracking { k, i: *i, j: *j, star: false },
                    format!("C window copies {} symbols", lay.window() - 1),
                ));
                let a = lay.window_source(*i, *j, true);
                let n = if gamma.symbol_at(a) == 1 { a + 1 } else { a };
                out.push(event(
                    EventKind::Far,
                    n,
                    EventSource::TauTracking { k, i: *i, j: *j, star: true },
                    "C* window (100)-run vs tracked code".into(),
                ));
            }
        }
    }
    Ok(out)
}

fn rational_orbit_at(r: &ExtendedRational, escape: u64, n: u64) -> ExtendedRational {
    if n < escape {
        r.phi_iter(n)
    } else {
        match (n - escape) % 3 {
            0 => ExtendedRational::zero(),
            1 => ExtendedRational::infinity(),
            _ => ExtendedRational::one(),
        }
    }
}

/// Which point of the 3-cycle `{0, inf, 1}` the tail of `tau` at `n`
/// starts to spell out.
fn tau_phase(tau: &CodeStream, n: u64) -> Option<ExtendedRational> {
    match tau.window(n, 3).symbols() {
        [1, 0, 0] => Some(ExtendedRational::infinity()),
        [0, 0, 1] => Some(ExtendedRational::one()),
        [0, 1, 0] => Some(ExtendedRational::zero()),
        _ => None,
    }
}

/// A certified bound on `|x - y|` in `[0, inf]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Distance {
    Finite(BigRational),
    Infinite,
}

impl Distance {
    fn zero() -> Self {
        Self::Finite(BigRational::zero())
    }

    pub fn cmp_rational(&self, q: &BigRational) -> Ordering {
        match self {
            Self::Finite(d) => d.cmp(q),
            Self::Infinite => Ordering::Greater,
        }
    }
}

impl PartialOrd for Distance {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Distance {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Self::Finite(a), Self::Finite(b)) => a.cmp(b),
            (Self::Finite(_), Self::Infinite) => Ordering::Less,
            (Self::Infinite, Self::Finite(_)) => Ordering::Greater,
            (Self::Infinite, Self::Infinite) => Ordering::Equal,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Finite(d) => write!(f, "{}/{}", d.numer(), d.denom()),
            Self::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Distance {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn is_exact_infinity(x: &FareyInterval) -> bool {
    x.is_degenerate() && x.lo().is_infinite()
}

/// Lower and upper bounds on `|x - y|` for `x`, `y` in the enclosures.
/// `|inf - a| = inf` for finite `a`; two copies of `inf` are at distance 0.
pub fn distance_bounds(x: &FareyInterval, y: &FareyInterval) -> (Distance, Distance) {
    match (is_exact_infinity(x), is_exact_infinity(y)) {
        (true, true) => return (Distance::zero(), Distance::zero()),
        (true, false) | (false, true) => {
            let other = if is_exact_infinity(x) { y } else { x };
            return if other.hi().is_infinite() {
                (Distance::zero(), Distance::Infinite)
            } else {
                (Distance::Infinite, Distance::Infinite)
            };
        }
        _ => {}
    }
    let a = x.lo().to_rational().unwrap();
    let c = y.lo().to_rational().unwrap();
    let b = x.hi().to_rational();
    let d = y.hi().to_rational();
    let upper = match (&b, &d) {
        (Some(b), Some(d)) => Distance::Finite(b.max(d) - (&a).min(&c)),
        _ => Distance::Infinite,
    };
    let mut lower = BigRational::zero();
    if let Some(b) = &b {
        lower = lower.max(&c - b);
    }
    if let Some(d) = &d {
        lower = lower.max(&a - d);
    }
    (Distance::Finite(lower), upper)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Debug, Clone, Serialize)]
pub struct EventResult {
    #[serde(flatten)]
    pub event: ScheduleEvent,
    pub threshold: String,
    pub lower: Distance,
    pub upper: Distance,
    pub s_enclosure: FareyInterval,
    pub t_enclosure: FareyInterval,
    pub s_prefix: usize,
    pub t_prefix: usize,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScrambleReport {
    pub pair: String,
    pub eps: String,
    pub m_big: String,
    pub prefix_budget: usize,
    pub events: Vec<EventResult>,
    pub passed: usize,
    pub failed: usize,
    pub inconclusive: usize,
    /// Largest certified lower bound over the far events.
    pub limsup_proxy: Option<Distance>,
    /// Smallest certified upper bound over the close events.
    pub liminf_proxy: Option<Distance>,
}

impl ScrambleReport {
    pub fn verdict(&self) -> Verdict {
        if self.failed > 0 {
            Verdict::Fail
        } else if self.inconclusive > 0 {
            Verdict::Inconclusive
        } else {
            Verdict::Pass
        }
    }

    /// Fraction of events with a pass or fail verdict; 1 for no events.
    pub fn decided_fraction(&self) -> f64 {
        if self.events.is_empty() {
            1.0
        } else {
            (self.passed + self.failed) as f64 / self.events.len() as f64
        }
    }
}

enum Side<'a> {
    Code(&'a CodeStream),
    Orbit { r: &'a ExtendedRational, escape: u64 },
}

/// Narrowest cylinder of `sigma^n` of the code within the budget, stopping
/// once the width drops below `goal`.
fn enclose(side: &Side<'_>, n: u64, budget: usize, goal: &BigRational) -> Result<(FareyInterval, usize)> {
    match side {
        Side::Orbit { r, escape } => {
            let x = rational_orbit_at(r, *escape, n);
            Ok((FareyInterval::new(x.clone(), x)?, 0))
        }
        Side::Code(s) => {
            let mut walker = CylinderWalker::new();
            let mut current = FareyInterval::whole();
            for i in 0..budget {
                walker.push(s.symbol_at(n + i as u64))?;
                current = walker.interval();
                if current.width().is_some_and(|w| &w < goal) {
                    return Ok((current, i + 1));
                }
            }
            Ok((current, budget))
        }
    }
}

fn judge(kind: EventKind, lower: &Distance, upper: &Distance, eps: &BigRational, m_big: &BigRational) -> Verdict {
    match kind {
        EventKind::Close if upper.cmp_rational(eps).is_lt() => Verdict::Pass,
        EventKind::Close if lower.cmp_rational(eps).is_ge() => Verdict::Fail,
        EventKind::Far if lower.cmp_rational(m_big).is_gt() => Verdict::Pass,
        EventKind::Far if upper.cmp_rational(m_big).is_le() => Verdict::Fail,
        _ => Verdict::Inconclusive,
    }
}

fn verify_sides(
    pair: String,
    s: Side<'_>,
    t: Side<'_>,
    events: &[ScheduleEvent],
    eps: &BigRational,
    m_big: &BigRational,
    budget: usize,
) -> Result<ScrambleReport> {
    if eps <= &BigRational::zero() || m_big <= &BigRational::zero() {
        return Err(Error::Precondition("eps and M must be positive".into()));
    }
    let sixteenth = BigRational::new(BigInt::one(), BigInt::from(16));
    let close_goal = eps * &sixteenth;
    let far_goal = sixteenth;
    let results = events
        .par_iter()
        .map(|ev| {
            let goal = match ev.kind {
                EventKind::Close => &close_goal,
                EventKind::Far => &far_goal,
            };
            let (se, sp) = enclose(&s, ev.index, budget, goal)?;
            let (te, tp) = enclose(&t, ev.index, budget, goal)?;
            let (lower, upper) = distance_bounds(&se, &te);
            let verdict = judge(ev.kind, &lower, &upper, eps, m_big);
            let threshold = match ev.kind {
                EventKind::Close => eps,
                EventKind::Far => m_big,
            };
            Ok(EventResult {
                event: ev.clone(),
                threshold: threshold.to_string(),
                lower,
                upper,
                s_enclosure: se,
                t_enclosure: te,
                s_prefix: sp,
                t_prefix: tp,
                verdict,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let count = |v| results.iter().filter(|r| r.verdict == v).count();
    let limsup_proxy = results
        .iter()
        .filter(|r| r.event.kind == EventKind::Far)
        .map(|r| r.lower.clone())
        .max();
    let liminf_proxy = results
        .iter()
        .filter(|r| r.event.kind == EventKind::Close)
        .map(|r| r.upper.clone())
        .min();
    Ok(ScrambleReport {
        pair,
        eps: eps.to_string(),
        m_big: m_big.to_string(),
        prefix_budget: budget,
        passed: count(Verdict::Pass),
        failed: count(Verdict::Fail),
        inconclusive: count(Verdict::Inconclusive),
        events: results,
        limsup_proxy,
        liminf_proxy,
    })
}

/// Certifies each event for the pair `(s, t)` from cylinder enclosures of
/// `sigma^n s` and `sigma^n t` read with at most `prefix_len` symbols.
pub fn verify_scrambling(
    s: &CodeStream,
    t: &CodeStream,
    events: &[ScheduleEvent],
    eps: &BigRational,
    m_big: &BigRational,
    prefix_len: usize,
) -> Result<ScrambleReport> {
    verify_sides(
        format!("{s} vs {t}"),
        Side::Code(s),
        Side::Code(t),
        events,
        eps,
        m_big,
        prefix_len,
    )
}

/// Phase-alignment events between the exact orbit of a rational `r` and
/// `tau`.
pub fn rational_vs_tau(
    r: &ExtendedRational,
    tau: &CodeStream,
    ks: RangeInclusive<u32>,
    max_k: u32,
    eps: &BigRational,
    m_big: &BigRational,
    prefix_len: usize,
) -> Result<ScrambleReport> {
    if r.is_infinite() {
        return Err(Error::Precondition("r must be finite".into()));
    }
    let kind = ScheduleKind::RationalVsTau {
        r: r.clone(),
        tau: tau.clone(),
    };
    let events = schedule_events(&kind, ks, max_k)?;
    verify_sides(
        format!("orbit of {r} vs {tau}"),
        Side::Orbit {
            r,
            escape: r.escape_time(),
        },
        Side::Code(tau),
        &events,
        eps,
        m_big,
        prefix_len,
    )
}

/// `[0, 1/3] ∪ [1/2, 1] ∪ [2, 3]`, which contains every point of the `mu`
/// family and its orbit.
pub fn theorem1_bound() -> [FareyInterval; 3] {
    let q = ExtendedRational::frac;
    [
        FareyInterval::new(q(0, 1), q(1, 3)).unwrap(),
        FareyInterval::new(q(1, 2), q(1, 1)).unwrap(),
        FareyInterval::new(q(2, 1), q(3, 1)).unwrap(),
    ]
}

/// Is the enclosure of `sigma^n s` inside [`theorem1_bound`]?
pub fn within_theorem1_bound(s: &CodeStream, n: u64, prefix_len: usize) -> Result<bool> {
    let goal = BigRational::new(BigInt::one(), BigInt::from(1000));
    let (iv, _) = enclose(&Side::Code(s), n, prefix_len, &goal)?;
    Ok(theorem1_bound().iter().any(|b| iv.is_subset_of(b)))
}

/// The piecewise-linear map through `(0, 1)`, `(1/6, 1/3)`, `(1/3, 1/6)`,
/// `(1/2, 0)`, `(1, 1/2)`: `{0, 1/2, 1}` is a 3-cycle, `1/4` the only fixed
/// point, and every other point of `(1/6, 1/3)` has period 2.
pub fn g_map(x: &BigRational) -> Result<BigRational> {
    let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
    if x < &BigRational::zero() || x > &BigRational::one() {
        return Err(Error::OutsideUnitInterval(x.to_string()));
    }
    Ok(if x <= &r(1, 6) {
        BigRational::one() - x * BigInt::from(4)
    } else if x <= &r(1, 2) {
        r(1, 2) - x
    } else {
        x - r(1, 2)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(s: &str) -> CodeStream {
        s.parse().unwrap()
    }

    fn beta(s: &str) -> CodeStream {
        beta_from_word(&s.parse().unwrap()).unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn factorial_blocks() {
        assert_eq!(factorial(5), Some(120));
        assert_eq!(factorial(20), Some(2_432_902_008_176_640_000));
        assert_eq!(factorial(21), None);
        assert_eq!(block_of(120), 5);
        assert_eq!(block_of(719), 5);
        assert_eq!(block_of(720), 6);
        assert_eq!(block_of(u64::MAX), 20);
    }

    #[test]
    fn mu_examples() {
        let b = beta("1011");
        let mu = mu_code(&b);
        assert!((0..120).all(|n| mu.symbol_at(n) == 0));
        assert_eq!(mu.symbol_at(121), 1);
        assert_eq!(mu.symbol_at(241), 1);
        assert_eq!(mu.symbol_at(361), 0);
        assert_eq!(mu.symbol_at(481), 1);
        assert_eq!(mu.symbol_at(721), 1);
        assert!(mu.window(0, 6000).is_admissible());
    }

    #[test]
    fn enumeration() {
        let b = enumerate_admissible(20);
        assert_eq!(b[0].to_string(), "00000");
        assert_eq!(b.iter().filter(|w| w.len() == 5).count(), 13);
        assert_eq!(b[13].to_string(), "000000");
        assert!(b.iter().all(Word::is_admissible));
    }

    #[test]
    fn alpha_schedule() {
        let s = AlphaSchedule::minimal();
        assert_eq!(&s.m[..7], &[1, 4, 5, 6, 7, 8, 9]);
        assert_eq!(*s.m.last().unwrap(), 20);
        let a = alpha_transitive(&s);
        assert_eq!(a.symbol_at(0), 0);
        assert_eq!(a.window(1, 5), s.words[0]);
        assert_eq!(a.window(5040, 5).to_string(), "00101");
        assert!(a.window(0, 50_000).is_admissible());
        assert_eq!(AlphaSchedule::explicit(vec![1, 3]), Err(Error::BadSchedule(2)));
        assert_eq!(AlphaSchedule::explicit(vec![1, 4, 4]), Err(Error::BadSchedule(3)));
        assert!(AlphaSchedule::explicit(vec![2, 4, 6]).is_ok());
    }

    #[test]
    fn c_blocks() {
        assert_eq!(c_block(&code("(0)"), 6, 11).unwrap().to_string(), "000000");
        let w = c_block(&code("(010)"), 6, 11).unwrap();
        assert_eq!(w.to_string(), "010010");
        assert!(c_block(&code("(0)"), 6, 10).is_err());
        assert!(c_block(&code("(0)"), 4, 9).is_err());
        let star0 = c_star_block(&code("(0)"), 6, 14).unwrap();
        assert_eq!(star0.to_string(), "100100100");
        let star1 = c_star_block(&code("(10)"), 6, 14).unwrap();
        assert_eq!(star1.to_string(), "010010010");
        assert_eq!(star1.last(), Some(0));
    }

    #[test]
    fn layout_bookkeeping() {
        for k in 5..=9 {
            let lay = BlockLayout::new(k).unwrap();
            let total: u64 = lay.tau_sub_blocks().iter().sum();
            assert_eq!(total, u64::from(k) * lay.fact);
            assert_eq!(lay.fact % 12, 0);
            assert_eq!(lay.sub_fact() % 3, 0);
            assert_eq!(lay.window() % 3, 0);
            assert_eq!(lay.end(), factorial(k + 1).unwrap());
        }
    }

    fn sample_tau(b: &str) -> CodeStream {
        let alpha = alpha_transitive(&AlphaSchedule::minimal());
        tau_code(&beta(b), &alpha, &default_tracked()).unwrap()
    }

    #[test]
    fn tau_layout() {
        let alpha = alpha_transitive(&AlphaSchedule::minimal());
        let tau = sample_tau("1101");
        assert_eq!(tau.window(0, 119), alpha.prefix(119));
        assert_eq!(tau.symbol_at(119), 0);
        for k in 5..=7 {
            let lay = BlockLayout::new(k).unwrap();
            let f = lay.fact;
            assert_eq!(tau.window(f, f as usize), alpha.prefix(f as usize));
            assert!(tau.window(2 * f, lay.quarter() as usize).symbols().iter().all(|&s| s == 0));
            assert_eq!(tau.window(lay.run_start(0), 6).to_string(), "100100");
            assert_eq!(tau.window(lay.run_start(1), 6).to_string(), "001001");
            assert_eq!(tau.window(lay.run_start(2), 6).to_string(), "010010");
            assert_eq!(tau.symbol_at(3 * f), 1);
            assert_eq!(tau.symbol_at(lay.beta_start(2)), 0);
            assert_eq!(tau.symbol_at(lay.beta_start(3)), 1);
            assert!(tau.window(f, (k as usize) * f as usize).is_admissible());
        }
    }

    #[test]
    fn tau_tracking_copies_shifted_code() {
        let tau = sample_tau("1");
        let tracked = default_tracked();
        let lay = BlockLayout::new(6).unwrap();
        for i in 1..=3 {
            let gamma = &tracked[i as usize - 1];
            for j in 1..=6 {
                let start = lay.window_start(i, j, false);
                let src = lay.window_source(i, j, false);
                assert_eq!(start - src, u64::from(j - 1));
                let len = lay.window() as usize;
                assert_eq!(tau.window(start, len - 1), gamma.window(src, len - 1));
                assert_eq!(tau.symbol_at(start + len as u64 - 1), 0);
                let star = lay.window_start(i, j, true);
                let a = lay.window_source(i, j, true);
                let expect = c_star_block(gamma, a, a + len as u64 - 1).unwrap();
                assert_eq!(tau.window(star, len), expect);
            }
        }
    }

    #[test]
    fn theorem1_schedule_indices() {
        let kind = ScheduleKind::Theorem1 {
            shift: 1,
            beta: beta("0"),
            xi: beta("1"),
        };
        let ev = schedule_events(&kind, 6..=6, DEFAULT_MAX_K).unwrap();
        assert!(ev.iter().any(|e| e.kind == EventKind::Far && e.index == 721));
        let kind = ScheduleKind::Theorem1 {
            shift: 0,
            beta: beta("0"),
            xi: beta("1"),
        };
        let ev = schedule_events(&kind, 6..=6, DEFAULT_MAX_K).unwrap();
        assert!(ev.iter().any(|e| e.kind == EventKind::Far && e.index == 1441));
        assert!(matches!(
            schedule_events(&kind, 5..=10, DEFAULT_MAX_K),
            Err(Error::KTooLarge { .. })
        ));
        assert!(schedule_events(&kind, 4..=6, DEFAULT_MAX_K).is_err());
    }

    #[test]
    fn theorem2_far_index_in_zero_run() {
        let kind = ScheduleKind::Theorem2 {
            shift: 2,
            beta: beta("0"),
            eta: beta("1"),
        };
        let ev = schedule_events(&kind, 6..=6, DEFAULT_MAX_K).unwrap();
        let far = ev.iter().find(|e| e.kind == EventKind::Far).unwrap();
        assert_eq!(far.index, 2 * 720 + 180 - 2);
        assert!(matches!(locate_tau(far.index), TauPosition::Zeros { k: 6, .. }));
    }

    #[test]
    fn theorem1_verification() {
        let (b, x) = (beta("01"), beta("10"));
        let (s, t) = (mu_code(&b), mu_code(&x));
        let kind = ScheduleKind::Theorem1 {
            shift: 0,
            beta: b,
            xi: x,
        };
        let ev = schedule_events(&kind, 5..=6, DEFAULT_MAX_K).unwrap();
        let rep = verify_scrambling(&s, &t, &ev, &rat(1, 100), &rat(3, 2), 4096).unwrap();
        assert_eq!(rep.verdict(), Verdict::Pass, "{rep:#?}");
        let top = rep.limsup_proxy.unwrap();
        assert!(top.cmp_rational(&rat(15, 8)).is_gt());
        assert!(top.cmp_rational(&rat(201, 100)).is_lt());
        let same = verify_scrambling(&s, &s, &ev[..1], &rat(1, 100), &rat(3, 2), 64).unwrap();
        assert_eq!(same.events[0].upper, Distance::Finite(rat(0, 1)).max(same.events[0].upper.clone()));
    }

    #[test]
    fn distances() {
        let q = ExtendedRational::frac;
        let iv = |a, b| FareyInterval::new(a, b).unwrap();
        let (lo, hi) = distance_bounds(&iv(q(0, 1), q(1, 2)), &iv(q(2, 1), q(3, 1)));
        assert_eq!(lo, Distance::Finite(rat(3, 2)));
        assert_eq!(hi, Distance::Finite(rat(3, 1)));
        let inf = iv(q(1, 0), q(1, 0));
        assert_eq!(distance_bounds(&inf, &iv(q(0, 1), q(1, 1))).0, Distance::Infinite);
        assert_eq!(distance_bounds(&inf, &inf).1, Distance::Finite(rat(0, 1)));
        let open = iv(q(5, 1), q(1, 0));
        let (lo, hi) = distance_bounds(&open, &iv(q(0, 1), q(1, 1)));
        assert_eq!(lo, Distance::Finite(rat(4, 1)));
        assert_eq!(hi, Distance::Infinite);
    }

    #[test]
    fn rational_phases() {
        let tau = sample_tau("10");
        let r = ExtendedRational::frac(3, 5);
        assert_eq!(r.escape_time(), 4);
        let kind = ScheduleKind::RationalVsTau { r: r.clone(), tau: tau.clone() };
        let ev = schedule_events(&kind, 6..=7, DEFAULT_MAX_K).unwrap();
        assert!(ev.iter().any(|e| e.kind == EventKind::Close));
        assert!(ev.iter().any(|e| e.kind == EventKind::Far));
        let rep = rational_vs_tau(&r, &tau, 6..=7, DEFAULT_MAX_K, &rat(1, 100), &rat(1000, 1), 8192)
            .unwrap();
        assert_eq!(rep.verdict(), Verdict::Pass, "{rep:#?}");
    }

    #[test]
    fn g_examples() {
        let g = |n, d| g_map(&rat(n, d)).unwrap();
        assert_eq!(g(0, 1), rat(1, 1));
        assert_eq!(g(1, 1), rat(1, 2));
        assert_eq!(g(1, 2), rat(0, 1));
        assert_eq!(g(1, 6), rat(1, 3));
        assert_eq!(g(1, 3), rat(1, 6));
        assert_eq!(g(1, 4), rat(1, 4));
        let x = rat(1, 5);
        assert_eq!(g_map(&g_map(&x).unwrap()).unwrap(), x);
        assert!(g_map(&rat(2, 1)).is_err());
    }
}
