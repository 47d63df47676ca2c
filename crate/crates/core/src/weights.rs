//! `sl_∞` weights attached to central characters and Gelfand-Tsetlin weights
//! with their words.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::klrw::{Problem, Word};

/// A finitely supported combination of the `ε_k`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SlWeight {
    coeffs: BTreeMap<i64, i64>,
}

impl SlWeight {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn epsilon(k: i64) -> Self {
        let mut w = Self::zero();
        w.add_to(k, 1);
        w
    }

    /// `α_i = ε_{i+1} - ε_i`.
    pub fn alpha(i: i64) -> Self {
        let mut w = Self::epsilon(i + 1);
        w.add_to(i, -1);
        w
    }

    fn add_to(&mut self, k: i64, c: i64) {
        let e = self.coeffs.entry(k).or_insert(0);
        *e += c;
        if *e == 0 {
            self.coeffs.remove(&k);
        }
    }

    pub fn coefficient(&self, k: i64) -> i64 {
        self.coeffs.get(&k).copied().unwrap_or(0)
    }

    pub fn support(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.coeffs.iter().map(|(&k, &c)| (k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `α_k^∨(μ)`, the coefficient of `ε_{k+1}` minus that of `ε_k`.
    pub fn coroot_pairing(&self, k: i64) -> i64 {
        self.coefficient(k + 1) - self.coefficient(k)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut w = self.clone();
        for (k, c) in other.support() {
            w.add_to(k, c);
        }
        w
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut w = self.clone();
        for (k, c) in other.support() {
            w.add_to(k, -c);
        }
        w
    }
}

impl fmt::Display for SlWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .support()
            .map(|(k, c)| match c {
                1 => format!("e{k}"),
                -1 => format!("-e{k}"),
                c => format!("{c}e{k}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + ").replace("+ -", "- "))
    }
}

/// `μ_χ = Σ ε_{χ_i}`.
pub fn mu_of_chi(chi: &[i64]) -> SlWeight {
    let mut w = SlWeight::zero();
    for &c in chi {
        w.add_to(c, 1);
    }
    w
}

fn check_increasing(chi: &[i64]) -> Result<()> {
    if chi.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidProblem("chi must be weakly increasing".into()));
    }
    Ok(())
}

/// `χ` with an entry `i` raised to `i + 1`, when the result is weakly increasing.
pub fn chi_plus(chi: &[i64], i: i64) -> Option<Vec<i64>> {
    check_increasing(chi).ok()?;
    let k = chi.iter().rposition(|&c| c == i)?;
    let mut out = chi.to_vec();
    out[k] += 1;
    Some(out)
}

/// `χ` with an entry `i + 1` lowered to `i`, when the result is weakly increasing.
pub fn chi_minus(chi: &[i64], i: i64) -> Option<Vec<i64>> {
    check_increasing(chi).ok()?;
    let k = chi.iter().position(|&c| c == i + 1)?;
    let mut out = chi.to_vec();
    out[k] -= 1;
    Some(out)
}

/// `a` applications of `chi_plus`.
pub fn chi_plus_power(chi: &[i64], i: i64, a: usize) -> Option<Vec<i64>> {
    (0..a).try_fold(chi.to_vec(), |c, _| chi_plus(&c, i))
}

/// `a` applications of `chi_minus`.
pub fn chi_minus_power(chi: &[i64], i: i64, a: usize) -> Option<Vec<i64>> {
    (0..a).try_fold(chi.to_vec(), |c, _| chi_minus(&c, i))
}

/// A triangular array `λ_{k,j}`, `1 ≤ j ≤ k ≤ n`, each row sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<i64>>", into = "Vec<Vec<i64>>")]
pub struct GTWeight {
    rows: Vec<Vec<i64>>,
}

impl TryFrom<Vec<Vec<i64>>> for GTWeight {
    type Error = Error;

    fn try_from(rows: Vec<Vec<i64>>) -> Result<Self> {
        GTWeight::new(rows)
    }
}

impl From<GTWeight> for Vec<Vec<i64>> {
    fn from(w: GTWeight) -> Self {
        w.rows
    }
}

/// Largest number of patterns `enumerate_gt_patterns` will produce.
pub const PATTERN_LIMIT: usize = 1_000_000;

impl GTWeight {
    /// Rows may be given in any order; row `k` is the one of length `k`.
    pub fn new(mut rows: Vec<Vec<i64>>) -> Result<Self> {
        rows.sort_by_key(Vec::len);
        for (k, row) in rows.iter_mut().enumerate() {
            if row.len() != k + 1 {
                return Err(Error::Shape(format!("rows must have lengths 1..{}", k + 1)));
            }
            row.sort_unstable();
        }
        Ok(GTWeight { rows })
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    /// Row `k`, 1-based.
    pub fn row(&self, k: usize) -> &[i64] {
        &self.rows[k - 1]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    /// The top row.
    pub fn chi(&self) -> &[i64] {
        self.rows.last().map_or(&[], Vec::as_slice)
    }

    /// The problem whose words are those of `Ω = {(i,k): k ≤ i ≤ n}`.
    pub fn problem(&self) -> Problem {
        let n = self.n();
        Problem::new(n.max(1) as u32, (1..n).collect(), self.chi().to_vec()).expect("sorted top row")
    }
}

impl fmt::Display for GTWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", serde_json::to_string(&self.rows).expect("serializable"))
    }
}

/// `λ_{k+1,j} ≤ λ_{k,j} < λ_{k+1,j+1}` for all `k < n`.
pub fn is_gt_pattern(w: &GTWeight) -> bool {
    w.rows
        .windows(2)
        .all(|pair| (0..pair[0].len()).all(|j| pair[1][j] <= pair[0][j] && pair[0][j] < pair[1][j + 1]))
}

/// All patterns with top row `chi`, in lexicographic order of their rows.
pub fn enumerate_gt_patterns(chi: &[i64]) -> Result<Vec<GTWeight>> {
    check_increasing(chi)?;
    let mut total: usize = 1;
    let mut row = chi.to_vec();
    // Bound the count by the product of the interval lengths of each row.
    while row.len() > 1 {
        let widths: Vec<usize> = row.windows(2).map(|w| (w[1] - w[0]).max(0) as usize).collect();
        for &wd in &widths {
            total = total.saturating_mul(wd);
        }
        row = row.windows(2).map(|w| w[1] - 1).collect();
    }
    if total > PATTERN_LIMIT {
        return Err(Error::TooLarge(format!("up to {total} patterns")));
    }
    fn rec(rows: &mut Vec<Vec<i64>>, out: &mut Vec<GTWeight>) {
        let upper = rows.last().unwrap().clone();
        if upper.len() <= 1 {
            let mut r = rows.clone();
            r.reverse();
            out.push(GTWeight { rows: r });
            return;
        }
        let mut current = Vec::with_capacity(upper.len() - 1);
        fill(&upper, &mut current, rows, out);
    }
    fn fill(upper: &[i64], current: &mut Vec<i64>, rows: &mut Vec<Vec<i64>>, out: &mut Vec<GTWeight>) {
        let j = current.len();
        if j + 1 == upper.len() {
            rows.push(current.clone());
            rec(rows, out);
            rows.pop();
            return;
        }
        for x in upper[j]..upper[j + 1] {
            current.push(x);
            fill(upper, current, rows, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    if chi.is_empty() {
        return Ok(vec![GTWeight { rows: vec![] }]);
    }
    rec(&mut vec![chi.to_vec()], &mut out);
    out.sort();
    Ok(out)
}

/// Sorts `Ω` by value, larger rows first on ties, and reads off the rows;
/// points with equal value and row form one divided power.
pub fn word_of_gt_weight(w: &GTWeight) -> Word {
    let mut points: Vec<(i64, std::cmp::Reverse<usize>)> = Vec::new();
    for (k, row) in w.rows.iter().enumerate() {
        points.extend(row.iter().map(|&x| (x, std::cmp::Reverse(k + 1))));
    }
    points.sort();
    let mut entries: Vec<((i64, usize), usize)> = Vec::new();
    for (x, std::cmp::Reverse(r)) in points {
        match entries.last_mut() {
            Some((key, a)) if *key == (x, r) => *a += 1,
            _ => entries.push(((x, r), 1)),
        }
    }
    Word::new(entries.into_iter().map(|((_, r), a)| (r as u32, a)).collect()).expect("positive rows")
}

/// Equal words; a sufficient condition for isomorphic weight functors.
pub fn same_word_class(a: &GTWeight, b: &GTWeight) -> Result<bool> {
    if a.chi() != b.chi() {
        return Err(Error::Shape("weights have different top rows".into()));
    }
    Ok(word_of_gt_weight(a) == word_of_gt_weight(b))
}
