use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::problem::Problem;
use crate::error::{Error, Result};

/// A word `i_1^{(a_1)} .. i_r^{(a_r)}`; multiplicities above one are
/// divided-power groups.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Word {
    entries: Vec<(u32, usize)>,
}

impl Word {
    pub fn new(entries: Vec<(u32, usize)>) -> Result<Self> {
        if entries.iter().any(|&(l, a)| l == 0 || a == 0) {
            return Err(Error::InvalidWord("letters and multiplicities must be positive".into()));
        }
        Ok(Word { entries })
    }

    pub fn from_letters(letters: &[u32]) -> Self {
        Word {
            entries: letters.iter().map(|&l| (l, 1)).collect(),
        }
    }

    /// Parses `"3,2^2,3,1,3"`.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim().trim_start_matches('(').trim_end_matches(')');
        if t.is_empty() {
            return Ok(Word { entries: vec![] });
        }
        let bad = || Error::Parse(format!("not a word: {text:?}"));
        let entries = t
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                let (l, a) = match tok.split_once('^') {
                    Some((l, a)) => (l, a.trim().trim_start_matches('(').trim_end_matches(')')),
                    None => (tok, "1"),
                };
                Ok((l.trim().parse().map_err(|_| bad())?, a.parse().map_err(|_| bad())?))
            })
            .collect::<Result<Vec<_>>>()?;
        Word::new(entries)
    }

    pub fn entries(&self) -> &[(u32, usize)] {
        &self.entries
    }

    /// Letter sequence of the totalization.
    pub fn letters(&self) -> Vec<u32> {
        self.entries
            .iter()
            .flat_map(|&(l, a)| std::iter::repeat_n(l, a))
            .collect()
    }

    /// Number of strands.
    pub fn len(&self) -> usize {
        self.entries.iter().map(|e| e.1).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_total(&self) -> bool {
        self.entries.iter().all(|e| e.1 == 1)
    }

    pub fn totalization(&self) -> Word {
        Word::from_letters(&self.letters())
    }

    /// Strand ranges of the entries.
    pub fn groups(&self) -> Vec<std::ops::Range<usize>> {
        let mut pos = 0;
        self.entries
            .iter()
            .map(|&(_, a)| {
                pos += a;
                pos - a..pos
            })
            .collect()
    }

    /// Number of occurrences of each letter `1..=m`.
    pub fn counts(&self, m: u32) -> Vec<usize> {
        let mut c = vec![0; m as usize];
        for &(l, a) in &self.entries {
            if l >= 1 && l <= m {
                c[l as usize - 1] += a;
            }
        }
        c
    }

    pub fn check(&self, p: &Problem) -> Result<()> {
        if let Some(&(l, _)) = self.entries.iter().find(|e| e.0 > p.m) {
            return Err(Error::InvalidWord(format!("letter {l} exceeds m = {}", p.m)));
        }
        if self.counts(p.m) != p.full_dims() {
            return Err(Error::InvalidWord(format!(
                "word {self} has letter counts {:?}, expected {:?}",
                self.counts(p.m),
                p.full_dims()
            )));
        }
        Ok(())
    }

    /// Strand positions of the red strands, left to right.
    pub fn red_positions(&self, m: u32) -> Vec<usize> {
        self.letters()
            .iter()
            .enumerate()
            .filter(|(_, &l)| l == m)
            .map(|(k, _)| k)
            .collect()
    }

    /// Reds with equal `chi` entries are consecutive strands.
    pub fn is_chi_parabolic(&self, p: &Problem) -> bool {
        let reds = self.red_positions(p.m);
        (0..p.chi.len().saturating_sub(1))
            .filter(|&k| p.chi[k] == p.chi[k + 1])
            .all(|k| k + 1 < reds.len() && reds[k + 1] == reds[k] + 1)
    }

    /// The first strand is not red.
    pub fn is_violating(&self, m: u32) -> bool {
        matches!(self.entries.first(), Some(&(l, _)) if l != m)
    }

    /// Swaps the letters at strands `k` and `k+1` of a total word.
    pub fn swapped(&self, k: usize) -> Word {
        let mut l = self.letters();
        l.swap(k, k + 1);
        Word::from_letters(&l)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.letters()
            .cmp(&other.letters())
            .then_with(|| self.entries.cmp(&other.entries))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|&(l, a)| if a == 1 { l.to_string() } else { format!("{l}^{a}") })
            .collect();
        f.write_str(&parts.join(","))
    }
}

impl std::str::FromStr for Word {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Word::parse(s)
    }
}
