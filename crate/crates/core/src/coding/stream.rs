use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use super::Word;
use crate::error::{Error, Result};

/// A lazily indexable 0-1 sequence. Implementations must be pure in the
/// index: no cursor, safe to read from many threads.
pub trait SymbolSource: Send + Sync {
    fn symbol_at(&self, index: u64) -> u8;

    /// Short human-readable description used in reports.
    fn label(&self) -> String;
}

/// An infinite code: either eventually periodic (`pre · period period ...`)
/// or produced by a procedural generator, possibly shifted.
#[derive(Clone)]
pub struct CodeStream {
    repr: Repr,
}

#[derive(Clone)]
enum Repr {
    Periodic { preperiod: Word, period: Word },
    Procedural { source: Arc<dyn SymbolSource>, offset: u64 },
}

/// Borrowed view of how a stream is represented.
#[derive(Debug, Clone, Copy)]
pub enum StreamKind<'a> {
    EventuallyPeriodic { preperiod: &'a Word, period: &'a Word },
    Procedural { offset: u64 },
}

impl CodeStream {
    /// `preperiod · period · period · ...`, checked for admissibility across
    /// the wrap-around.
    pub fn periodic(preperiod: Word, period: Word) -> Result<Self> {
        let s = Self::periodic_unchecked(preperiod, period)?;
        if let Repr::Periodic { preperiod, period } = &s.repr {
            preperiod.concat(period).concat(period).require_admissible()?;
        }
        Ok(s)
    }

    /// Same as [`CodeStream::periodic`] without the admissibility check; used
    /// for general binary parameter sequences.
    pub fn periodic_unchecked(preperiod: Word, period: Word) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::EmptyWord);
        }
        let (preperiod, period) = normalize(preperiod, period);
        Ok(Self {
            repr: Repr::Periodic { preperiod, period },
        })
    }

    pub fn constant(symbol: u8) -> Self {
        Self::periodic_unchecked(Word::empty(), Word::new(vec![symbol]).unwrap()).unwrap()
    }

    pub fn procedural(source: Arc<dyn SymbolSource>) -> Self {
        Self {
            repr: Repr::Procedural { source, offset: 0 },
        }
    }

    pub fn kind(&self) -> StreamKind<'_> {
        match &self.repr {
            Repr::Periodic { preperiod, period } => {
                StreamKind::EventuallyPeriodic { preperiod, period }
            }
            Repr::Procedural { offset, .. } => StreamKind::Procedural { offset: *offset },
        }
    }

    pub fn symbol_at(&self, n: u64) -> u8 {
        match &self.repr {
            Repr::Periodic { preperiod, period } => {
                let pre = preperiod.len() as u64;
                if n < pre {
                    preperiod.symbols()[n as usize]
                } else {
                    period.symbols()[((n - pre) % period.len() as u64) as usize]
                }
            }
            Repr::Procedural { source, offset } => source.symbol_at(
                offset
                    .checked_add(n)
                    .expect("stream index overflowed u64"),
            ),
        }
    }

    /// `sigma^k`.
    pub fn shift(&self, k: u64) -> Self {
        match &self.repr {
            Repr::Periodic { preperiod, period } => {
                let pre = preperiod.len() as u64;
                let (preperiod, period) = if k <= pre {
                    (Word::new(preperiod.symbols()[k as usize..].to_vec()).unwrap(), period.clone())
                } else {
                    let r = ((k - pre) % period.len() as u64) as usize;
                    (Word::empty(), rotate_left(period, r))
                };
                let (preperiod, period) = normalize(preperiod, period);
                Self {
                    repr: Repr::Periodic { preperiod, period },
                }
            }
            Repr::Procedural { source, offset } => Self {
                repr: Repr::Procedural {
                    source: Arc::clone(source),
                    offset: offset.checked_add(k).expect("stream shift overflowed u64"),
                },
            },
        }
    }

    pub fn prefix(&self, n: usize) -> Word {
        self.window(0, n)
    }

    pub fn window(&self, start: u64, len: usize) -> Word {
        Word::new((0..len as u64).map(|i| self.symbol_at(start + i)).collect()).unwrap()
    }

    /// Looks for a `11` factor. Periodic streams are checked exhaustively;
    /// procedural ones on `[start, start + len)`.
    pub fn is_admissible_on(&self, start: u64, len: usize) -> bool {
        match &self.repr {
            Repr::Periodic { preperiod, period } => {
                preperiod.concat(period).concat(period).is_admissible()
            }
            Repr::Procedural { .. } => self.window(start, len + 1).is_admissible(),
        }
    }

    pub fn label(&self) -> String {
        self.to_string()
    }
}

fn rotate_left(w: &Word, r: usize) -> Word {
    let mut v = w.symbols().to_vec();
    v.rotate_left(r);
    Word::new(v).unwrap()
}

/// Shortest period, then the shortest preperiod.
fn normalize(preperiod: Word, period: Word) -> (Word, Word) {
    let p = period.symbols();
    let n = p.len();
    let prim = (1..=n)
        .find(|&d| n.is_multiple_of(d) && (d..n).all(|i| p[i] == p[i - d]))
        .unwrap_or(n);
    let mut period = p[..prim].to_vec();
    let mut pre = preperiod.symbols().to_vec();
    while let (Some(&a), Some(&b)) = (pre.last(), period.last()) {
        if a != b {
            break;
        }
        pre.pop();
        period.rotate_right(1);
    }
    (Word::new(pre).unwrap(), Word::new(period).unwrap())
}

impl PartialEq for CodeStream {
    fn eq(&self, other: &Self) -> bool {
        match (&self.repr, &other.repr) {
            (
                Repr::Periodic { preperiod: a, period: b },
                Repr::Periodic { preperiod: c, period: d },
            ) => a == c && b == d,
            (
                Repr::Procedural { source: s, offset: o },
                Repr::Procedural { source: t, offset: p },
            ) => Arc::ptr_eq(s, t) && o == p,
            _ => false,
        }
    }
}

impl fmt::Display for CodeStream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Periodic { preperiod, period } => write!(f, "{preperiod}({period})"),
            Repr::Procedural { source, offset } if *offset == 0 => f.write_str(&source.label()),
            Repr::Procedural { source, offset } => {
                write!(f, "sigma^{offset}({})", source.label())
            }
        }
    }
}

impl fmt::Debug for CodeStream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for CodeStream {
    type Err = Error;

    /// `pre(period)`, e.g. `0(010)` for `0 010 010 ...` or `(0)` for all zeros.
    /// A bare word is read as its own period.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (pre, period) = match s.find('(') {
            Some(open) => {
                let close = s.rfind(')').ok_or(Error::Parse {
                    pos: s.len(),
                    msg: "missing ')'".into(),
                })?;
                if close != s.len() - 1 || close < open {
                    return Err(Error::Parse {
                        pos: close,
                        msg: "period must close the code".into(),
                    });
                }
                (&s[..open], &s[open + 1..close])
            }
            None => ("", s),
        };
        let pre: Word = pre.parse()?;
        let period: Word = period.parse().map_err(|e| match e {
            Error::Parse { pos, msg } => Error::Parse {
                pos: pos + s.find('(').map_or(0, |o| o + 1),
                msg,
            },
            other => other,
        })?;
        CodeStream::periodic(pre, period)
    }
}

/// Truncated series `sum |s_i - t_i| / 2^(i+1)`, within `tol` of the full sum.
pub fn sigma_metric(s: &CodeStream, t: &CodeStream, tol: f64) -> f64 {
    assert!(tol > 0.0, "tolerance must be positive");
    // tail after N terms is at most 2^-N < tol
    let n = ((1.0 / tol).log2().ceil().max(0.0) as u64) + 1;
    let mut sum = 0.0;
    let mut w = 0.5;
    for i in 0..n.min(1100) {
        if s.symbol_at(i) != t.symbol_at(i) {
            sum += w;
        }
        w *= 0.5;
    }
    sum
}
