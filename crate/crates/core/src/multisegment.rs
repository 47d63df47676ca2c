//! Flavored multisegments, segmentations and good words.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::klrw::{Problem, Word};

/// The interval `[start, end]` of labels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Segment {
    pub start: u32,
    pub end: u32,
}

impl Segment {
    pub fn new(start: u32, end: u32) -> Result<Self> {
        if start == 0 || start > end {
            return Err(Error::Invalid(format!("[{start}, {end}] is not a segment")));
        }
        Ok(Segment { start, end })
    }

    pub fn len(&self) -> usize {
        (self.end - self.start + 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The reversed word `(end, end-1, .., start)`.
    pub fn word(&self) -> Vec<u32> {
        (self.start..=self.end).rev().collect()
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.word().iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A multiset of segments in `[1, m]` whose segments ending at `m` carry
/// integer flavors. Kept sorted: unflavored by `(start, end)`, flavored by
/// `(flavor, start)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FlavoredMultisegment {
    m: u32,
    unflavored: Vec<Segment>,
    flavored: Vec<(Segment, i64)>,
}

#[derive(Serialize)]
struct JsonSegment {
    start: u32,
    end: u32,
    flavor: Option<i64>,
}

impl FlavoredMultisegment {
    pub fn new(m: u32, mut unflavored: Vec<Segment>, mut flavored: Vec<(Segment, i64)>) -> Result<Self> {
        if let Some(s) = unflavored.iter().find(|s| s.end >= m) {
            return Err(Error::Invalid(format!("unflavored segment {s} must end below {m}")));
        }
        if let Some((s, _)) = flavored.iter().find(|(s, _)| s.end != m) {
            return Err(Error::Invalid(format!("flavored segment {s} must end at {m}")));
        }
        unflavored.sort();
        flavored.sort_by_key(|&(s, c)| (c, s.start));
        Ok(FlavoredMultisegment { m, unflavored, flavored })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn unflavored(&self) -> &[Segment] {
        &self.unflavored
    }

    pub fn flavored(&self) -> &[(Segment, i64)] {
        &self.flavored
    }

    /// Flavors in increasing order.
    pub fn flavors(&self) -> Vec<i64> {
        self.flavored.iter().map(|f| f.1).collect()
    }

    pub fn dimension_vector(&self) -> Vec<usize> {
        let mut d = vec![0; self.m as usize];
        for s in self.unflavored.iter().chain(self.flavored.iter().map(|f| &f.0)) {
            for i in s.start..=s.end {
                d[i as usize - 1] += 1;
            }
        }
        d
    }

    /// Matches the dimension vector and flavors of `p`.
    pub fn fits(&self, p: &Problem) -> bool {
        self.m == p.m && self.dimension_vector() == p.full_dims() && self.flavors() == p.chi
    }

    /// Concatenates the unflavored reversed segments in increasing
    /// lexicographic order (a word sorts before its proper prefixes), then
    /// one group per flavor with its letters merged in decreasing order.
    pub fn good_word(&self) -> Word {
        let mut words: Vec<Vec<u32>> = self.unflavored.iter().map(Segment::word).collect();
        words.sort_by(|a, b| {
            let common = a.len().min(b.len());
            a[..common].cmp(&b[..common]).then(b.len().cmp(&a.len()))
        });
        let mut entries: Vec<(u32, usize)> = words.concat().into_iter().map(|l| (l, 1)).collect();
        let mut i = 0;
        while i < self.flavored.len() {
            let flavor = self.flavored[i].1;
            let mut letters = Vec::new();
            while i < self.flavored.len() && self.flavored[i].1 == flavor {
                letters.extend(self.flavored[i].0.word());
                i += 1;
            }
            letters.sort_unstable_by(|a, b| b.cmp(a));
            let group_start = entries.len();
            for l in letters {
                let grouped = entries.len() > group_start;
                match entries.last_mut() {
                    Some(e) if grouped && e.0 == l => e.1 += 1,
                    _ => entries.push((l, 1)),
                }
            }
        }
        Word::new(entries).expect("letters are positive")
    }

    pub fn to_json(&self) -> serde_json::Value {
        let segs: Vec<JsonSegment> = self
            .unflavored
            .iter()
            .map(|s| JsonSegment {
                start: s.start,
                end: s.end,
                flavor: None,
            })
            .chain(self.flavored.iter().map(|(s, c)| JsonSegment {
                start: s.start,
                end: s.end,
                flavor: Some(*c),
            }))
            .collect();
        serde_json::to_value(segs).expect("serializable")
    }

    /// Parses `"{(1),(2,1),(3,2)@5}"`.
    pub fn parse(text: &str, m: u32) -> Result<Self> {
        let t = text.trim();
        let inner = t
            .strip_prefix('{')
            .and_then(|s| s.strip_suffix('}'))
            .ok_or_else(|| Error::Parse(format!("multisegment must be braced: {t:?}")))?;
        let mut unflavored = Vec::new();
        let mut flavored = Vec::new();
        let mut rest = inner.trim();
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("expected '(' in {t:?}")))?;
            let close = open
                .find(')')
                .ok_or_else(|| Error::Parse(format!("unclosed segment in {t:?}")))?;
            let letters: Vec<u32> = open[..close]
                .split(',')
                .map(|x| x.trim().parse().map_err(|_| Error::Parse(format!("bad letter in {t:?}"))))
                .collect::<Result<_>>()?;
            let seg = segment_of_letters(&letters)?;
            rest = open[close + 1..].trim_start();
            if let Some(after) = rest.strip_prefix('@') {
                let end = after.find(',').unwrap_or(after.len());
                let flavor = after[..end]
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad flavor in {t:?}")))?;
                flavored.push((seg, flavor));
                rest = after[end..].trim_start();
            } else {
                unflavored.push(seg);
            }
            rest = rest.strip_prefix(',').unwrap_or(rest).trim_start();
        }
        Self::new(m, unflavored, flavored)
    }
}

fn segment_of_letters(letters: &[u32]) -> Result<Segment> {
    let (&first, &last) = (letters.first().unwrap(), letters.last().unwrap());
    let (lo, hi) = (first.min(last), first.max(last));
    let increasing: Vec<u32> = (lo..=hi).collect();
    let decreasing: Vec<u32> = (lo..=hi).rev().collect();
    if letters != increasing.as_slice() && letters != decreasing.as_slice() {
        return Err(Error::Parse(format!("{letters:?} is not a list of consecutive integers")));
    }
    Segment::new(lo, hi)
}

impl fmt::Display for FlavoredMultisegment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.unflavored.iter().map(Segment::to_string).collect();
        parts.extend(self.flavored.iter().map(|(s, c)| format!("{s}@{c}")));
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Multisets of segments in `[1, dims.len()]` with the given dimension
/// vector, each sorted by `(start, end)`.
pub fn segment_multisets(dims: &[usize]) -> Vec<Vec<Segment>> {
    fn rec(remaining: &mut Vec<usize>, current: &mut Vec<Segment>, out: &mut Vec<Vec<Segment>>) {
        let Some(i) = remaining.iter().position(|&d| d > 0) else {
            let mut done = current.clone();
            done.sort();
            out.push(done);
            return;
        };
        let start = i as u32 + 1;
        let mut max_end = remaining.len() as u32;
        if let Some(last) = current.last().filter(|s| s.start == start) {
            max_end = last.end;
        }
        let mut end = start;
        while end <= max_end && remaining[end as usize - 1] > 0 {
            end += 1;
        }
        for e in start..end {
            for r in &mut remaining[i..e as usize] {
                *r -= 1;
            }
            current.push(Segment { start, end: e });
            rec(remaining, current, out);
            current.pop();
            for r in &mut remaining[i..e as usize] {
                *r += 1;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut dims.to_vec(), &mut Vec::new(), &mut out);
    out
}

/// Every χ-flavored multisegment with dimension vector `(v, n)`.
pub fn enumerate_flavored(p: &Problem) -> Vec<FlavoredMultisegment> {
    let mut flavors = p.chi.clone();
    flavors.sort_unstable();
    let mut out = BTreeSet::new();
    for segments in segment_multisets(&p.full_dims()) {
        let (top, rest): (Vec<Segment>, Vec<Segment>) = segments.into_iter().partition(|s| s.end == p.m);
        for assignment in distinct_permutations(&flavors) {
            let flavored = top.iter().copied().zip(assignment).collect();
            out.insert(FlavoredMultisegment::new(p.m, rest.clone(), flavored).expect("segments fit"));
        }
    }
    out.into_iter().collect()
}

fn distinct_permutations(items: &[i64]) -> Vec<Vec<i64>> {
    let mut current = items.to_vec();
    current.sort_unstable();
    let mut out = vec![current.clone()];
    // Lexicographic next permutation.
    loop {
        let Some(i) = (1..current.len()).rev().find(|&i| current[i - 1] < current[i]) else {
            return out;
        };
        let j = (i..current.len()).rev().find(|&j| current[j] > current[i - 1]).unwrap();
        current.swap(i - 1, j);
        current[i..].reverse();
        out.push(current.clone());
    }
}

/// Limit on the number of segmentations enumerated at once.
pub const SEGMENTATION_LIMIT: usize = 200_000;

/// A partition of Ω into subsegments, stored as the map sending `(i, j)` to
/// the next element `(i + 1, j')` of its block, when there is one.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Segmentation {
    dims: Vec<usize>,
    next: Vec<Vec<Option<usize>>>,
}

impl Segmentation {
    /// Indices are 1-based; `next[i][j]` links `(i+1, j+1)` to
    /// `(i+2, next[i][j])`.
    pub fn new(dims: Vec<usize>, next: Vec<Vec<Option<usize>>>) -> Result<Self> {
        if dims.is_empty() || next.len() + 1 != dims.len() {
            return Err(Error::Shape("one link row per pair of adjacent rows".into()));
        }
        for (i, row) in next.iter().enumerate() {
            if row.len() != dims[i] {
                return Err(Error::Shape(format!("link row {} has the wrong length", i + 1)));
            }
            let mut seen = BTreeSet::new();
            for &t in row.iter().flatten() {
                if t == 0 || t > dims[i + 1] || !seen.insert(t) {
                    return Err(Error::Invalid(format!("link row {} is not injective", i + 1)));
                }
            }
        }
        Ok(Segmentation { dims, next })
    }

    /// The segmentation of Ω into blocks, each listed bottom row first.
    pub fn from_blocks(dims: Vec<usize>, blocks: &[Vec<(u32, usize)>]) -> Result<Self> {
        let mut next: Vec<Vec<Option<usize>>> = dims.iter().skip(1).zip(&dims).map(|(_, &d)| vec![None; d]).collect();
        let mut covered = BTreeSet::new();
        for block in blocks {
            for (a, b) in block.iter().zip(block.iter().skip(1)) {
                if b.0 != a.0 + 1 {
                    return Err(Error::Invalid(format!("block {block:?} skips a row")));
                }
                next.get_mut(a.0 as usize - 1)
                    .and_then(|row| row.get_mut(a.1.wrapping_sub(1)))
                    .ok_or_else(|| Error::Invalid(format!("{a:?} is not in Ω")))?
                    .replace(b.1);
            }
            for &(i, j) in block {
                if i == 0 || i as usize > dims.len() || j == 0 || j > dims[i as usize - 1] || !covered.insert((i, j)) {
                    return Err(Error::Invalid(format!("({i},{j}) is repeated or outside Ω")));
                }
            }
        }
        if covered.len() != dims.iter().sum::<usize>() {
            return Err(Error::Invalid("blocks do not cover Ω".into()));
        }
        Self::new(dims, next)
    }

    pub fn m(&self) -> u32 {
        self.dims.len() as u32
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// `Some(j')` when `(i, j)` is followed by `(i + 1, j')` (1-based).
    pub fn successor(&self, i: u32, j: usize) -> Option<usize> {
        self.next.get(i as usize - 1).and_then(|row| row[j - 1])
    }

    /// Blocks as lists of `(row, index)`, bottom row first.
    pub fn blocks(&self) -> Vec<Vec<(u32, usize)>> {
        let mut has_pred: BTreeSet<(u32, usize)> = BTreeSet::new();
        for (i, row) in self.next.iter().enumerate() {
            for &t in row.iter().flatten() {
                has_pred.insert((i as u32 + 2, t));
            }
        }
        let mut blocks = Vec::new();
        for (i, &d) in self.dims.iter().enumerate() {
            for j in 1..=d {
                let mut pos = (i as u32 + 1, j);
                if has_pred.contains(&pos) {
                    continue;
                }
                let mut block = vec![pos];
                while let Some(t) = self.next.get(pos.0 as usize - 1).and_then(|row| row[pos.1 - 1]) {
                    pos = (pos.0 + 1, t);
                    block.push(pos);
                }
                blocks.push(block);
            }
        }
        blocks
    }
}

/// Forgets the indices; a block reaching row `m` at `(m, j)` is flavored by
/// `chi[j - 1]`.
pub fn multisegment_of_segmentation(s: &Segmentation, chi: &[i64]) -> Result<FlavoredMultisegment> {
    let m = s.m();
    if chi.len() != s.dims[m as usize - 1] {
        return Err(Error::Shape(format!("{} flavors for {} red points", chi.len(), s.dims[m as usize - 1])));
    }
    let mut unflavored = Vec::new();
    let mut flavored = Vec::new();
    for block in s.blocks() {
        let (first, last) = (block[0], *block.last().unwrap());
        let seg = Segment { start: first.0, end: last.0 };
        if last.0 == m {
            flavored.push((seg, chi[last.1 - 1]));
        } else {
            unflavored.push(seg);
        }
    }
    FlavoredMultisegment::new(m, unflavored, flavored)
}

fn partial_injections(from: usize, to: usize) -> Vec<Vec<Option<usize>>> {
    fn rec(k: usize, to: usize, used: &mut Vec<bool>, current: &mut Vec<Option<usize>>, out: &mut Vec<Vec<Option<usize>>>) {
        if k == current.len() {
            out.push(current.clone());
            return;
        }
        current[k] = None;
        rec(k + 1, to, used, current, out);
        for t in 0..to {
            if !used[t] {
                used[t] = true;
                current[k] = Some(t + 1);
                rec(k + 1, to, used, current, out);
                used[t] = false;
            }
        }
        current[k] = None;
    }
    let mut out = Vec::new();
    rec(0, to, &mut vec![false; to], &mut vec![None; from], &mut out);
    out
}

fn partial_injection_count(from: usize, to: usize) -> Option<usize> {
    // Σ_k C(from,k) C(to,k) k!
    let mut total: usize = 0;
    let mut term: usize = 1;
    for k in 0..=from.min(to) {
        total = total.checked_add(term)?;
        term = term.checked_mul((from - k) * (to - k))? / (k + 1);
    }
    Some(total)
}

/// All partitions of Ω into subsegments.
pub fn enumerate_segmentations(p: &Problem) -> Result<Vec<Segmentation>> {
    let dims = p.full_dims();
    let mut total: usize = 1;
    for w in dims.windows(2) {
        total = partial_injection_count(w[0], w[1])
            .and_then(|c| total.checked_mul(c))
            .filter(|&t| t <= SEGMENTATION_LIMIT)
            .ok_or_else(|| Error::TooLarge(format!("more than {SEGMENTATION_LIMIT} segmentations")))?;
    }
    let choices: Vec<Vec<Vec<Option<usize>>>> = dims.windows(2).map(|w| partial_injections(w[0], w[1])).collect();
    let mut out = Vec::with_capacity(total);
    let mut index = vec![0usize; choices.len()];
    loop {
        let next = index.iter().zip(&choices).map(|(&k, c)| c[k].clone()).collect();
        out.push(Segmentation { dims: dims.clone(), next });
        let Some(pos) = (0..index.len()).rev().find(|&r| index[r] + 1 < choices[r].len()) else {
            return Ok(out);
        };
        index[pos] += 1;
        for r in &mut index[pos + 1..] {
            *r = 0;
        }
    }
}
