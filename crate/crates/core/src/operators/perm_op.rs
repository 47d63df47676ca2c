//! Operators `Σ_w c_w · w` on a polynomial ring, coefficients on the left.
//!
//! `(c·w)(f) = c · f^w`, where `f^w` relabels `Y_i ↦ Y_{w(i)}`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exact::{Perm, Polynomial, Rational, RationalFunction};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermOperator {
    nvars: usize,
    terms: BTreeMap<Perm, RationalFunction>,
}

impl PermOperator {
    pub fn zero(nvars: usize) -> Self {
        PermOperator {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(nvars: usize) -> Self {
        Self::term(RationalFunction::one(nvars), Perm::identity(nvars))
    }

    pub fn term(c: RationalFunction, w: Perm) -> Self {
        assert_eq!(c.nvars(), w.len(), "coefficient ring and permutation size differ");
        let mut op = Self::zero(w.len());
        op.add_term(w, c);
        op
    }

    pub fn perm(w: Perm) -> Self {
        let n = w.len();
        Self::term(RationalFunction::one(n), w)
    }

    /// Multiplication by a polynomial.
    pub fn multiplication(p: Polynomial) -> Self {
        let n = p.nvars();
        Self::term(p.into(), Perm::identity(n))
    }

    /// Simple transposition of `k` and `k+1` (zero-based).
    pub fn swap(nvars: usize, k: usize) -> Self {
        Self::perm(Perm::transposition(nvars, k))
    }

    /// `∂_k = (s_k - 1) / (Y_{k+1} - Y_k)` (zero-based `k`).
    pub fn divided_difference(nvars: usize, k: usize) -> Self {
        let diff = &Polynomial::var(nvars, k + 1) - &Polynomial::var(nvars, k);
        let c = RationalFunction::new(Polynomial::one(nvars), diff).expect("nonzero denominator");
        let mut op = Self::term(c.clone(), Perm::transposition(nvars, k));
        op.add_term(Perm::identity(nvars), -&c);
        op
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Perm, &RationalFunction)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, w: &Perm) -> RationalFunction {
        self.terms
            .get(w)
            .cloned()
            .unwrap_or_else(|| RationalFunction::zero(self.nvars))
    }

    pub(crate) fn add_term(&mut self, w: Perm, c: RationalFunction) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(old) => {
                let s = &*old + &c;
                if s.is_zero() {
                    self.terms.remove(&w);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::VariableCount {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&Rational::from_integer((-1).into()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.nvars);
        for (w, d) in &self.terms {
            out.add_term(w.clone(), d.scale(c));
        }
        out
    }

    /// Left multiplication by a rational function.
    pub fn left_mul(&self, c: &RationalFunction) -> Self {
        let mut out = Self::zero(self.nvars);
        for (w, d) in &self.terms {
            out.add_term(w.clone(), c * d);
        }
        out
    }

    /// `self ∘ other` (apply `other` first):
    /// `(c·w)∘(d·v) = (c · d^w)·(w∘v)`.
    pub fn try_compose(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(self.nvars);
        for (w, c) in &self.terms {
            for (v, d) in &other.terms {
                let coeff = if w.is_identity() { c * d } else { c * &d.permute(w) };
                out.add_term(w.compose(v), coeff);
            }
        }
        Ok(out)
    }

    pub fn compose(&self, other: &Self) -> Self {
        self.try_compose(other).expect("operators on different rings")
    }

    pub fn apply(&self, f: &Polynomial) -> RationalFunction {
        self.apply_rational(&f.clone().into())
    }

    pub fn apply_rational(&self, f: &RationalFunction) -> RationalFunction {
        assert_eq!(f.nvars(), self.nvars, "operand ring differs from the operator's");
        let mut out = RationalFunction::zero(self.nvars);
        for (w, c) in &self.terms {
            out = &out + &(c * &f.permute(w));
        }
        out
    }

    /// Conjugates by a relabeling: `u ∘ self ∘ u⁻¹`.
    pub fn conjugate(&self, u: &Perm) -> Self {
        Self::perm(u.clone())
            .compose(self)
            .compose(&Self::perm(u.inverse()))
    }

    /// Extends to a larger ring; `map[i]` is the new index of variable `i`
    /// and the permutations fix every index outside the image of `map`.
    pub fn embed(&self, nvars: usize, map: &[usize]) -> Self {
        let mut out = Self::zero(nvars);
        for (w, c) in &self.terms {
            let mut images: Vec<usize> = (0..nvars).collect();
            for (i, &j) in map.iter().enumerate() {
                images[j] = map[w.image(i)];
            }
            let w2 = Perm::from_images(images).expect("embedding is injective");
            out.add_term(w2, c.embed(nvars, map));
        }
        out
    }

    /// Every coefficient is a polynomial.
    pub fn has_polynomial_coefficients(&self) -> bool {
        self.terms.values().all(RationalFunction::is_polynomial)
    }

    pub fn format_with(&self, name: &dyn Fn(usize) -> String) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .map(|(w, c)| format!("({})*{}", c.format_with(name), w))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for PermOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with(&|i| format!("Y{}", i + 1)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn y(n: usize, i: usize) -> Polynomial {
        Polynomial::var(n, i)
    }

    #[test]
    fn transposition_squares_to_identity() {
        let s = PermOperator::swap(2, 0);
        assert_eq!(s.compose(&s), PermOperator::identity(2));
        assert_eq!(PermOperator::identity(2).compose(&s), s);
        assert_eq!(s.apply(&y(2, 0)), y(2, 1).into());
    }

    #[test]
    fn dot_slides_through_swap() {
        let s = PermOperator::swap(2, 0);
        let lhs = PermOperator::multiplication(y(2, 0)).compose(&s);
        let rhs = s.compose(&PermOperator::multiplication(y(2, 1)));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn divided_difference_operator() {
        let d = PermOperator::divided_difference(2, 0);
        let f = &y(2, 0) * &y(2, 0);
        assert_eq!(d.apply(&f), (&y(2, 0) + &y(2, 1)).into());
        assert!(d.compose(&d).is_zero());
        assert_eq!(d.to_string(), "((1)/(Y1 - Y2))*[1,2] + ((-1)/(Y1 - Y2))*[2,1]");
    }

    #[test]
    fn embedding_preserves_action() {
        let d = PermOperator::divided_difference(2, 0).embed(3, &[1, 2]);
        let f = &y(3, 1) * &y(3, 1);
        assert_eq!(d.apply(&f), (&y(3, 1) + &y(3, 2)).into());
        assert_eq!(d.apply(&y(3, 0)), RationalFunction::zero(3));
    }
}
