use serde::{Deserialize, Serialize};

use super::word::Word;
use crate::error::{Error, Result};

/// Labels `1..m`; reds carry label `m`, blacks `1..m-1` with `v[i-1]` strands
/// of label `i`. `chi` is the weakly increasing tuple attached to the reds.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Problem {
    pub m: u32,
    pub n: usize,
    pub v: Vec<usize>,
    pub chi: Vec<i64>,
}

/// Largest number of words an enumeration may produce.
pub const WORD_LIMIT: usize = 200_000;

impl Problem {
    pub fn new(m: u32, v: Vec<usize>, chi: Vec<i64>) -> Result<Self> {
        let p = Problem {
            m,
            n: chi.len(),
            v,
            chi,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.m == 0 {
            return Err(Error::InvalidProblem("m must be at least 1".into()));
        }
        if self.v.len() != self.m as usize - 1 {
            return Err(Error::InvalidProblem(format!(
                "dimension vector has {} entries, expected {}",
                self.v.len(),
                self.m - 1
            )));
        }
        if self.chi.len() != self.n {
            return Err(Error::InvalidProblem(format!("chi has {} entries but n = {}", self.chi.len(), self.n)));
        }
        if self.chi.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidProblem("chi must be weakly increasing".into()));
        }
        Ok(())
    }

    /// `v` extended by `v_m = n`.
    pub fn full_dims(&self) -> Vec<usize> {
        let mut d = self.v.clone();
        d.push(self.n);
        d
    }

    pub fn num_black(&self) -> usize {
        self.v.iter().sum()
    }

    /// Total number of strands, which is also the number of polynomial variables.
    pub fn num_strands(&self) -> usize {
        self.num_black() + self.n
    }

    pub fn is_red(&self, letter: u32) -> bool {
        letter == self.m
    }

    /// Maximal runs of equal entries of `chi`, as index ranges.
    pub fn chi_blocks(&self) -> Vec<std::ops::Range<usize>> {
        blocks_of(&self.chi)
    }

    /// All total words, in lexicographic order.
    pub fn enumerate_words(&self) -> Result<Vec<Word>> {
        let counts = self.full_dims();
        let total = multinomial(&counts);
        if total.is_none_or(|t| t > WORD_LIMIT) {
            return Err(Error::TooLarge(format!("more than {WORD_LIMIT} words")));
        }
        let mut out = Vec::new();
        let mut remaining = counts;
        let mut prefix = Vec::new();
        shuffles(&mut remaining, &mut prefix, self.num_strands(), &mut out);
        Ok(out.into_iter().map(|l| Word::from_letters(&l)).collect())
    }

    /// All total words whose reds with equal `chi` entries are adjacent.
    pub fn enumerate_chi_parabolic_words(&self) -> Result<Vec<Word>> {
        Ok(self
            .enumerate_words()?
            .into_iter()
            .filter(|w| w.is_chi_parabolic(self))
            .collect())
    }
}

pub(crate) fn blocks_of(chi: &[i64]) -> Vec<std::ops::Range<usize>> {
    let mut out = Vec::new();
    let mut start = 0;
    for k in 1..=chi.len() {
        if k == chi.len() || chi[k] != chi[start] {
            out.push(start..k);
            start = k;
        }
    }
    out
}

fn multinomial(counts: &[usize]) -> Option<usize> {
    let mut total: usize = 0;
    let mut acc: u128 = 1;
    for &c in counts {
        for i in 1..=c {
            total += 1;
            acc = acc * total as u128 / i as u128;
            if acc > usize::MAX as u128 {
                return None;
            }
        }
    }
    Some(acc as usize)
}

fn shuffles(remaining: &mut [usize], prefix: &mut Vec<u32>, len: usize, out: &mut Vec<Vec<u32>>) {
    if prefix.len() == len {
        out.push(prefix.clone());
        return;
    }
    for i in 0..remaining.len() {
        if remaining[i] > 0 {
            remaining[i] -= 1;
            prefix.push(i as u32 + 1);
            shuffles(remaining, prefix, len, out);
            prefix.pop();
            remaining[i] += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_enumeration() {
        let p = Problem::new(2, vec![0], vec![0]).unwrap();
        assert_eq!(p.enumerate_chi_parabolic_words().unwrap().len(), 1);
        let p = Problem::new(2, vec![1], vec![0]).unwrap();
        let words: Vec<String> = p.enumerate_words().unwrap().iter().map(|w| w.to_string()).collect();
        assert_eq!(words, ["1,2", "2,1"]);
        let p = Problem::new(2, vec![1], vec![0, 0]).unwrap();
        let words: Vec<String> = p
            .enumerate_chi_parabolic_words()
            .unwrap()
            .iter()
            .map(|w| w.to_string())
            .collect();
        assert_eq!(words, ["1,2,2", "2,2,1"]);
    }

    #[test]
    fn invalid_problems() {
        assert!(Problem::new(2, vec![1, 1], vec![0]).is_err());
        assert!(Problem::new(2, vec![1], vec![1, 0]).is_err());
        assert!(Problem::new(0, vec![], vec![]).is_err());
    }
}
