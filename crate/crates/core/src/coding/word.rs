use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A finite 0-1 word. Admissibility (no factor `11`) is a property, not an
/// invariant, so the same type also carries arbitrary binary words such as
/// the parameters of the scrambled-set codes.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn new(symbols: Vec<u8>) -> Result<Self> {
        if let Some(pos) = symbols.iter().position(|&s| s > 1) {
            return Err(Error::Parse {
                pos,
                msg: format!("symbol {} is not 0 or 1", symbols[pos]),
            });
        }
        Ok(Self(symbols))
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn zeros(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn symbols(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_admissible(&self) -> bool {
        !self.0.windows(2).any(|w| w == [1, 1])
    }

    pub fn require_admissible(&self) -> Result<()> {
        if self.is_admissible() {
            Ok(())
        } else {
            Err(Error::Inadmissible(self.to_string()))
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn repeat(&self, times: usize) -> Word {
        Word(self.0.repeat(times))
    }

    /// The word with its first symbol dropped.
    pub fn tail(&self) -> Word {
        Word(self.0.iter().skip(1).copied().collect())
    }

    pub fn prefix(&self, n: usize) -> Word {
        Word(self.0[..n.min(self.0.len())].to_vec())
    }

    pub fn first(&self) -> Option<u8> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<u8> {
        self.0.last().copied()
    }

    pub fn push(&mut self, s: u8) {
        debug_assert!(s <= 1);
        self.0.push(s);
    }

    /// All admissible words of length `n` in lexicographic order (`0 < 1`).
    pub fn admissible_of_len(n: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        for _ in 0..n {
            let mut next = Vec::with_capacity(out.len() * 2);
            for w in &out {
                next.push(w.concat(&Word(vec![0])));
                if w.last() != Some(1) {
                    next.push(w.concat(&Word(vec![1])));
                }
            }
            out = next;
        }
        out
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.char_indices()
            .map(|(pos, c)| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(Error::Parse {
                    pos,
                    msg: format!("unexpected {c:?} in word"),
                }),
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            f.write_str(if *s == 0 { "0" } else { "1" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_admissibility() {
        let w: Word = "0100".parse().unwrap();
        assert_eq!(w.symbols(), &[0, 1, 0, 0]);
        assert!(w.is_admissible());
        assert!(!"0110".parse::<Word>().unwrap().is_admissible());
        assert!(matches!(
            "01x".parse::<Word>(),
            Err(Error::Parse { pos: 2, .. })
        ));
    }

    #[test]
    fn admissible_counts_are_fibonacci() {
        let counts: Vec<usize> = (1..=8).map(|n| Word::admissible_of_len(n).len()).collect();
        assert_eq!(counts, vec![2, 3, 5, 8, 13, 21, 34, 55]);
        let five = Word::admissible_of_len(5);
        assert_eq!(five[0].to_string(), "00000");
        assert!(five.windows(2).all(|p| p[0] < p[1]));
    }
}
