//! KLRW diagrams realized as operators on the polynomial representation.

use std::collections::BTreeMap;
use std::fmt;

use super::problem::Problem;
use super::word::Word;
use crate::error::{Error, Result};
use crate::exact::{Perm, Polynomial, Rational, RationalFunction};
use crate::operators::PermOperator;

/// Sign used for a crossing whose bottom labels are `(i, i+1)`.
///
/// `Consistent` multiplies by `Y_k - Y_{k+1}` after swapping and satisfies
/// every local relation. `Displayed` uses `Y_{k+1} - Y_k`; it breaks the
/// bigon relations and is kept as a control.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum CrossingSign {
    #[default]
    Consistent,
    Displayed,
}

/// A homogeneous-by-components element `e(target) · x · e(source)`.
///
/// The zero element carries no words.
#[derive(Clone, Debug)]
pub struct AlgebraElement {
    nstrands: usize,
    words: Option<(Word, Word)>,
    components: BTreeMap<i64, PermOperator>,
}

/// Degree of a crossing of strands labeled `a` and `b`; reds count as label
/// `m` in the type A pairing.
pub fn crossing_degree(a: u32, b: u32) -> i64 {
    if a == b {
        -2
    } else if a.abs_diff(b) == 1 {
        1
    } else {
        0
    }
}

impl AlgebraElement {
    pub fn zero(nstrands: usize) -> Self {
        AlgebraElement {
            nstrands,
            words: None,
            components: BTreeMap::new(),
        }
    }

    /// Wraps an operator of known degree; no consistency check is made.
    pub fn from_operator(source: Word, target: Word, op: PermOperator, degree: i64) -> Self {
        let nstrands = op.nvars();
        let mut components = BTreeMap::new();
        if !op.is_zero() {
            components.insert(degree, op);
        }
        AlgebraElement {
            nstrands,
            words: Some((source, target)),
            components,
        }
    }

    /// `e(w)`, or the divided-power idempotent `e'(w)` when `w` has groups.
    pub fn idempotent(p: &Problem, w: &Word) -> Result<Self> {
        w.check(p)?;
        let n = p.num_strands();
        let mut op = PermOperator::identity(n);
        for r in w.groups() {
            if r.len() > 1 {
                op = op.compose(&nil_hecke_idempotent(n, r.start, r.len()));
            }
        }
        Ok(Self::from_operator(w.clone(), w.clone(), op, 0))
    }

    /// A dot on strand `k` (zero-based) of the total word `w`.
    pub fn dot(p: &Problem, w: &Word, k: usize) -> Result<Self> {
        w.check(p)?;
        total(w)?;
        let n = p.num_strands();
        if k >= n {
            return Err(Error::Position { pos: k, len: n });
        }
        let op = PermOperator::multiplication(Polynomial::var(n, k));
        Ok(Self::from_operator(w.clone(), w.clone(), op, 2))
    }

    /// Product of dots `Y^e` on the total word `w`.
    pub fn dots(p: &Problem, w: &Word, exponents: &[u32]) -> Result<Self> {
        w.check(p)?;
        total(w)?;
        let n = p.num_strands();
        if exponents.len() != n {
            return Err(Error::Position {
                pos: exponents.len(),
                len: n,
            });
        }
        let mono = crate::exact::Monomial(exponents.to_vec());
        let deg = 2 * mono.degree() as i64;
        let op = PermOperator::multiplication(Polynomial::monomial(Rational::from_integer(1.into()), mono));
        Ok(Self::from_operator(w.clone(), w.clone(), op, deg))
    }

    /// The crossing of strands `k` and `k+1` (zero-based) with `w` at the bottom.
    pub fn crossing(p: &Problem, w: &Word, k: usize) -> Result<Self> {
        Self::crossing_with(p, w, k, CrossingSign::Consistent)
    }

    pub fn crossing_with(p: &Problem, w: &Word, k: usize, sign: CrossingSign) -> Result<Self> {
        w.check(p)?;
        total(w)?;
        let n = p.num_strands();
        if k + 1 >= n {
            return Err(Error::Position { pos: k + 1, len: n });
        }
        let l = w.letters();
        let (a, b) = (l[k], l[k + 1]);
        if p.is_red(a) && p.is_red(b) {
            return Err(Error::RedCrossing(k, k + 1));
        }
        let op = if a == b {
            PermOperator::divided_difference(n, k)
        } else if a + 1 == b {
            let (yk, yk1) = (Polynomial::var(n, k), Polynomial::var(n, k + 1));
            let c = match sign {
                CrossingSign::Consistent => &yk - &yk1,
                CrossingSign::Displayed => &yk1 - &yk,
            };
            PermOperator::multiplication(c).compose(&PermOperator::swap(n, k))
        } else {
            PermOperator::swap(n, k)
        };
        Ok(Self::from_operator(w.clone(), w.swapped(k), op, crossing_degree(a, b)))
    }

    pub fn nstrands(&self) -> usize {
        self.nstrands
    }

    pub fn source(&self) -> Option<&Word> {
        self.words.as_ref().map(|w| &w.0)
    }

    pub fn target(&self) -> Option<&Word> {
        self.words.as_ref().map(|w| &w.1)
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    /// The underlying operator (sum over degree components).
    pub fn op(&self) -> PermOperator {
        self.components
            .values()
            .fold(PermOperator::zero(self.nstrands), |acc, c| acc.try_add(c).expect("same ring"))
    }

    pub fn components(&self) -> impl Iterator<Item = (i64, &PermOperator)> {
        self.components.iter().map(|(&d, op)| (d, op))
    }

    /// Degree of a homogeneous nonzero element.
    pub fn degree(&self) -> Option<i64> {
        if self.components.len() == 1 {
            self.components.keys().next().copied()
        } else {
            None
        }
    }

    /// Degrees of the nonzero homogeneous components.
    pub fn degrees(&self) -> Vec<i64> {
        self.components.keys().copied().collect()
    }

    /// `self · other`: `other` first, then `self`.
    pub fn multiply(&self, other: &Self) -> Self {
        let n = self.nstrands;
        let (Some((s, _)), Some((_, t))) = (&self.words, &other.words) else {
            return Self::zero(n);
        };
        if self.is_zero() || other.is_zero() || s.letters() != t.letters() || n != other.nstrands {
            return Self::zero(n);
        }
        let mut components = BTreeMap::new();
        for (&d1, a) in &self.components {
            for (&d2, b) in &other.components {
                let c: &mut PermOperator = components.entry(d1 + d2).or_insert_with(|| PermOperator::zero(n));
                *c = c.try_add(&a.compose(b)).expect("same ring");
            }
        }
        components.retain(|_, op: &mut PermOperator| !op.is_zero());
        AlgebraElement {
            nstrands: n,
            words: Some((other.words.as_ref().unwrap().0.clone(), self.words.as_ref().unwrap().1.clone())),
            components,
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if other.words.is_none() || other.is_zero() && self.words.is_some() {
            return Ok(self.clone());
        }
        if self.words.is_none() || self.is_zero() {
            return Ok(other.clone());
        }
        let (s1, t1) = self.words.as_ref().unwrap();
        let (s2, t2) = other.words.as_ref().unwrap();
        if s1.letters() != s2.letters() || t1.letters() != t2.letters() {
            return Err(Error::InvalidWord(format!("cannot add elements {s1}->{t1} and {s2}->{t2}")));
        }
        let mut out = self.clone();
        for (&d, op) in &other.components {
            let c = out
                .components
                .entry(d)
                .or_insert_with(|| PermOperator::zero(self.nstrands));
            *c = c.try_add(op)?;
        }
        out.components.retain(|_, op| !op.is_zero());
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.scale(&Rational::from_integer((-1).into())))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = self.clone();
        for op in out.components.values_mut() {
            *op = op.scale(c);
        }
        out.components.retain(|_, op| !op.is_zero());
        out
    }

    /// Acts on a polynomial in the source summand.
    pub fn apply(&self, f: &Polynomial) -> RationalFunction {
        self.op().apply(f)
    }

    /// Conjugate by permutations of strand positions at the source and target.
    pub(crate) fn relabeled(&self, source: &Perm, target: &Perm) -> Self {
        let mut out = self.clone();
        let (ps, pt) = (PermOperator::perm(source.inverse()), PermOperator::perm(target.clone()));
        for op in out.components.values_mut() {
            *op = pt.compose(op).compose(&ps);
        }
        out
    }
}

fn total(w: &Word) -> Result<()> {
    if w.is_total() {
        Ok(())
    } else {
        Err(Error::InvalidWord(format!("{w} is not a total word")))
    }
}

/// `∂_{w_0}` on the `a` consecutive variables starting at `start`.
pub fn longest_divided_difference(n: usize, start: usize, a: usize) -> PermOperator {
    let mut op = PermOperator::identity(n);
    for top in 1..a {
        for k in (0..top).rev() {
            op = op.compose(&PermOperator::divided_difference(n, start + k));
        }
    }
    op
}

/// The primitive nilHecke idempotent `Y_1^{a-1} Y_2^{a-2} .. Y_{a-1} · ∂_{w_0}`.
pub fn nil_hecke_idempotent(n: usize, start: usize, a: usize) -> PermOperator {
    let mut e = vec![0u32; n];
    for t in 0..a {
        e[start + t] = (a - 1 - t) as u32;
    }
    let mono = Polynomial::monomial(Rational::from_integer(1.into()), crate::exact::Monomial(e));
    PermOperator::multiplication(mono).compose(&longest_divided_difference(n, start, a))
}

impl PartialEq for AlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        if self.is_zero() && other.is_zero() {
            return true;
        }
        self.words == other.words && self.components == other.components
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.words {
            Some((s, t)) if !self.is_zero() => write!(f, "[{t}] <- [{s}]: {}", self.op()),
            _ => f.write_str("0"),
        }
    }
}
