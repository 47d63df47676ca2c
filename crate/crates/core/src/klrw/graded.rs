//! Graded pieces of `e(w1) T e(w2)` and of the violating ideal, computed as
//! ranks of spanning sets inside the operator normal form.

use std::collections::HashMap;

use super::element::{crossing_degree, AlgebraElement};
use super::problem::Problem;
use super::relations::crossings;
use super::word::Word;
use crate::error::{Error, Result};
use crate::exact::linalg::{EchelonBasis, SparseVector};
use crate::exact::{Monomial, Perm, Polynomial, RationalFunction};
use crate::operators::PermOperator;

/// Letter-preserving strand matchings from `source` to `target` in which
/// reds keep their order; `π(s)` is the top position of bottom strand `s`.
pub fn matchings(p: &Problem, source: &Word, target: &Word) -> Vec<Perm> {
    let (ls, lt) = (source.letters(), target.letters());
    if ls.len() != lt.len() || source.counts(p.m) != target.counts(p.m) {
        return vec![];
    }
    let mut partial: Vec<Vec<Option<usize>>> = vec![vec![None; ls.len()]];
    for label in 1..=p.m {
        let src: Vec<usize> = (0..ls.len()).filter(|&s| ls[s] == label).collect();
        let tgt: Vec<usize> = (0..lt.len()).filter(|&t| lt[t] == label).collect();
        let assignments: Vec<Vec<usize>> = if p.is_red(label) {
            vec![tgt.clone()]
        } else {
            permutations(&tgt)
        };
        partial = partial
            .into_iter()
            .flat_map(|base| {
                let src = &src;
                assignments.iter().map(move |a| {
                    let mut b = base.clone();
                    for (s, &t) in src.iter().zip(a) {
                        b[*s] = Some(t);
                    }
                    b
                })
            })
            .collect();
    }
    partial
        .into_iter()
        .map(|b| Perm::from_images(b.into_iter().map(Option::unwrap).collect()).expect("bijection"))
        .collect()
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, x);
            out.push(tail);
        }
    }
    out
}

/// Degree of a reduced diagram realizing `matching`.
pub fn matching_degree(source: &Word, matching: &Perm) -> i64 {
    let l = source.letters();
    let n = l.len();
    let mut d = 0;
    for a in 0..n {
        for b in a + 1..n {
            if matching.image(a) > matching.image(b) {
                d += crossing_degree(l[a], l[b]);
            }
        }
    }
    d
}

/// Crossing positions, bottom to top, of a reduced diagram for `matching`.
pub fn reduced_crossings(matching: &Perm) -> Vec<usize> {
    let n = matching.len();
    let mut cur: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    loop {
        let Some(k) = (0..n.saturating_sub(1)).find(|&k| matching.image(cur[k]) > matching.image(cur[k + 1])) else {
            return out;
        };
        cur.swap(k, k + 1);
        out.push(k);
    }
}

/// Smallest degree of a crossing diagram from `source` to `target`.
pub fn lower_degree_bound(p: &Problem, target: &Word, source: &Word) -> Option<i64> {
    matchings(p, source, target)
        .iter()
        .map(|m| matching_degree(source, m))
        .min()
}

/// Exponent vectors of total degree `k` in `n` variables.
pub fn monomials_of_degree(n: usize, k: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return if k == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=k).rev() {
        for mut rest in monomials_of_degree(n - 1, k - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Products `(dot monomial) · (reduced diagram)` of degree `d` from `source`
/// to `target`.
pub fn spanning_set(p: &Problem, target: &Word, source: &Word, d: i64) -> Result<Vec<AlgebraElement>> {
    source.check(p)?;
    target.check(p)?;
    let n = p.num_strands();
    let mut out = Vec::new();
    for m in matchings(p, source, target) {
        let rest = d - matching_degree(source, &m);
        if rest < 0 || rest % 2 != 0 {
            continue;
        }
        let diagram = crossings(p, &source.totalization(), &reduced_crossings(&m), Default::default())?;
        for e in monomials_of_degree(n, (rest / 2) as u32) {
            let dots = AlgebraElement::dots(p, &target.totalization(), &e)?;
            out.push(dots.multiply(&diagram));
        }
    }
    Ok(out)
}

/// Embeds operators into one rational vector space: all coefficients are
/// multiplied by a common denominator and indexed by (permutation, monomial).
struct Vectorizer {
    index: HashMap<(Perm, Monomial), usize>,
    denominator: Polynomial,
}

impl Vectorizer {
    fn new(ops: &[PermOperator], nvars: usize) -> Self {
        let coeffs: Vec<&RationalFunction> = ops.iter().flat_map(|op| op.terms().map(|t| t.1)).collect();
        Vectorizer {
            index: HashMap::new(),
            denominator: common_denominator(&coeffs, nvars),
        }
    }

    fn vector(&mut self, op: &PermOperator) -> SparseVector {
        let mut v = SparseVector::new();
        for (w, c) in op.terms() {
            let scaled = self
                .denominator
                .div_exact(&c.denominator())
                .expect("common denominator is a multiple");
            let poly = &scaled * c.numerator();
            for (mono, x) in poly.terms() {
                let next = self.index.len();
                let i = *self.index.entry((w.clone(), mono.clone())).or_insert(next);
                v.insert(i, x.clone());
            }
        }
        v
    }
}

/// Least common multiple of the denominators.
pub fn common_denominator(coeffs: &[&RationalFunction], nvars: usize) -> Polynomial {
    let mut lcm: std::collections::BTreeMap<Polynomial, u32> = Default::default();
    let mut linear = true;
    for c in coeffs {
        for (f, k) in c.denominator_factors() {
            linear &= f.degree() == Some(1);
            let e = lcm.entry(f.clone()).or_insert(0);
            *e = (*e).max(k);
        }
    }
    if linear {
        lcm.iter()
            .fold(Polynomial::one(nvars), |acc, (f, &k)| &acc * &f.pow(k))
    } else {
        coeffs
            .iter()
            .fold(Polynomial::one(nvars), |acc, c| crate::exact::gcd::lcm(&acc, &c.denominator()))
    }
}

/// Dimension of the span of the operators of `elements`.
pub fn rank_of(elements: &[AlgebraElement], nvars: usize) -> usize {
    independent_subset(elements, nvars).len()
}

/// A maximal linearly independent subfamily.
pub fn independent_subset(elements: &[AlgebraElement], nvars: usize) -> Vec<AlgebraElement> {
    let ops: Vec<PermOperator> = elements.iter().map(AlgebraElement::op).collect();
    let mut vz = Vectorizer::new(&ops, nvars);
    let mut basis = EchelonBasis::new();
    let mut out = Vec::new();
    for (el, op) in elements.iter().zip(&ops) {
        if basis.insert(vz.vector(op)) {
            out.push(el.clone());
        }
    }
    out
}

/// Dimension of the degree-`d` piece of `e(target) T e(source)`.
pub fn graded_piece_dimension(p: &Problem, target: &Word, source: &Word, d: i64) -> Result<usize> {
    let span = spanning_set(p, target, source, d)?;
    Ok(rank_of(&span, p.num_strands()))
}

/// `(degree, dimension)` for every degree from the lower bound up to `max_degree`.
pub fn graded_dimensions(p: &Problem, target: &Word, source: &Word, max_degree: i64) -> Result<Vec<(i64, usize)>> {
    let Some(lo) = lower_degree_bound(p, target, source) else {
        return Ok(vec![]);
    };
    (lo..=max_degree)
        .map(|d| Ok((d, graded_piece_dimension(p, target, source, d)?)))
        .collect()
}

/// Degree-`d` piece of the two-sided ideal generated by the violating
/// `chi`-parabolic idempotents, between `source` and `target`.
pub fn violating_ideal_dimension(p: &Problem, target: &Word, source: &Word, d: i64) -> Result<usize> {
    Ok(rank_of(&violating_ideal_spanning_set(p, target, source, d)?, p.num_strands()))
}

pub fn violating_ideal_spanning_set(p: &Problem, target: &Word, source: &Word, d: i64) -> Result<Vec<AlgebraElement>> {
    source.check(p)?;
    target.check(p)?;
    let n = p.num_strands();
    let mut products = Vec::new();
    for mid in p.enumerate_chi_parabolic_words()? {
        if !mid.is_violating(p.m) {
            continue;
        }
        let (Some(lo_top), Some(lo_bottom)) = (lower_degree_bound(p, target, &mid), lower_degree_bound(p, &mid, source))
        else {
            continue;
        };
        for d1 in lo_top..=d - lo_bottom {
            let xs = independent_subset(&spanning_set(p, target, &mid, d1)?, n);
            if xs.is_empty() {
                continue;
            }
            let ys = independent_subset(&spanning_set(p, &mid, source, d - d1)?, n);
            for x in &xs {
                for y in &ys {
                    let xy = x.multiply(y);
                    if !xy.is_zero() {
                        products.push(xy);
                    }
                }
            }
        }
    }
    if products.len() > 100_000 {
        return Err(Error::TooLarge("violating ideal spanning set".into()));
    }
    Ok(products)
}

/// Dimension of the degree-`d` piece of the quotient by the violating ideal.
pub fn quotient_dimension(p: &Problem, target: &Word, source: &Word, d: i64) -> Result<usize> {
    let whole = spanning_set(p, target, source, d)?;
    let ideal = violating_ideal_spanning_set(p, target, source, d)?;
    let n = p.num_strands();
    Ok(rank_of(&whole, n) - rank_of(&ideal, n))
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_pieces() {
        let p = Problem::new(2, vec![1], vec![0]).unwrap();
        let w = Word::parse("2,1").unwrap();
        assert_eq!(graded_piece_dimension(&p, &w, &w, 0).unwrap(), 1);
        assert_eq!(graded_piece_dimension(&p, &w, &w, 2).unwrap(), 2);
        assert_eq!(violating_ideal_dimension(&p, &w, &w, 0).unwrap(), 0);
        assert_eq!(violating_ideal_dimension(&p, &w, &w, 2).unwrap(), 1);
        assert_eq!(quotient_dimension(&p, &w, &w, 2).unwrap(), 1);
        let v = Word::parse("1,2").unwrap();
        assert_eq!(violating_ideal_dimension(&p, &v, &v, 0).unwrap(), 1);
        assert_eq!(quotient_dimension(&p, &v, &v, 0).unwrap(), 0);
    }

    #[test]
    fn reduced_crossings_realize_matching() {
        let m = Perm::from_images(vec![2, 0, 3, 1]).unwrap();
        let ks = reduced_crossings(&m);
        assert_eq!(ks.len(), m.length());
    }
}
