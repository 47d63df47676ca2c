//! Sparse multivariate polynomials over the rationals.
//!
//! Terms are kept in a map keyed by exponent vectors ordered graded
//! lexicographically, so the leading term is the last entry and the canonical
//! text form lists terms from the largest monomial down.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::perm::Perm;
use super::rational::{format_rational, parse_rational, rat, Rational};
use crate::error::{Error, Result};

/// Exponent vector, one slot per variable.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming divisibility.
    fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(nvars), c);
        }
        p
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, rat(c))
    }

    /// The variable `Y_{i+1}` (indices are zero-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range for {nvars} variables");
        Self::monomial(Rational::one(), Monomial::var(nvars, i))
    }

    pub fn monomial(c: Rational, m: Monomial) -> Self {
        let nvars = m.0.len();
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.0.len(), nvars, "exponent vector length mismatch");
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The constant value, if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.is_zero() {
            return Some(Rational::zero());
        }
        if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> Rational {
        self.leading_term()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn uses_var(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.0[var] > 0)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn check_vars(&self, other: &Polynomial) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::VariableCount {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_vars(other)?;
        let mut out = Polynomial::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut out = Polynomial::one(self.nvars);
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Relabels variables: `Y_i ↦ Y_{w(i)}`.
    pub fn permute(&self, w: &Perm) -> Polynomial {
        assert_eq!(w.len(), self.nvars, "permutation size must match variable count");
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut e = vec![0; self.nvars];
            for (i, &x) in m.0.iter().enumerate() {
                e[w.image(i)] = x;
            }
            out.terms.insert(Monomial(e), c.clone());
        }
        out
    }

    /// Swaps `Y_k` and `Y_l`.
    pub fn swap_vars(&self, k: usize, l: usize) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            e.swap(k, l);
            out.terms.insert(Monomial(e), c.clone());
        }
        out
    }

    /// Divided difference `(f^{(k,k+1)} - f) / (Y_{k+1} - Y_k)` on zero-based
    /// index `k`, computed monomial by monomial.
    pub fn divided_difference(&self, k: usize) -> Polynomial {
        assert!(k + 1 < self.nvars, "divided difference index {k} out of range");
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            let (a, b) = (m.0[k], m.0[k + 1]);
            if a == b {
                continue;
            }
            // x = Y_k, y = Y_{k+1}:
            // (x^b y^a - x^a y^b)/(y - x) = ± x^lo y^lo * sum_t y^t x^{d-1-t}
            let (lo, d, sign) = if a > b { (b, a - b, 1) } else { (a, b - a, -1) };
            let coeff = if sign > 0 { c.clone() } else { -c.clone() };
            for t in 0..d {
                let mut e = m.0.clone();
                e[k] = lo + d - 1 - t;
                e[k + 1] = lo + t;
                out.add_term(Monomial(e), coeff.clone());
            }
        }
        out
    }

    /// Fixed by every transposition inside `block`?
    pub fn is_symmetric(&self, block: &[usize]) -> bool {
        if block.len() < 2 {
            return true;
        }
        block
            .windows(2)
            .all(|w| self.swap_vars(w[0], w[1]) == *self)
    }

    /// Replaces each variable `Y_i` by `images[i]` (all images share a ring).
    pub fn substitute(&self, images: &[Polynomial]) -> Polynomial {
        assert_eq!(images.len(), self.nvars, "one image per variable required");
        let target = images.first().map(|p| p.nvars).unwrap_or(0);
        let mut powers: Vec<Vec<Polynomial>> = images.iter().map(|p| vec![Polynomial::one(p.nvars), p.clone()]).collect();
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap() * &images[i];
                    powers[i].push(next);
                }
                term = &term * &powers[i][e as usize];
            }
            for (k, v) in term.terms {
                out.add_term(k, v);
            }
        }
        out
    }

    /// Re-homes the polynomial in a ring with `nvars` variables, sending
    /// variable `i` to `map[i]`.
    pub fn embed(&self, nvars: usize, map: &[usize]) -> Polynomial {
        assert_eq!(map.len(), self.nvars);
        let mut out = Polynomial::zero(nvars);
        for (m, c) in &self.terms {
            let mut e = vec![0; nvars];
            for (i, &x) in m.0.iter().enumerate() {
                e[map[i]] += x;
            }
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars);
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                for _ in 0..e {
                    t *= x;
                }
            }
            total += t;
        }
        total
    }

    /// Exact division; `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        assert_eq!(self.nvars, divisor.nvars);
        let (lm, lc) = divisor.leading_term()?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut rem = self.clone();
        let mut quo = Polynomial::zero(self.nvars);
        while let Some((m, c)) = rem.leading_term() {
            if !lm.divides(m) {
                return None;
            }
            let qm = lm.quotient_of(m);
            let qc = c / &lc;
            for (dm, dc) in &divisor.terms {
                rem.add_term(dm.mul(&qm), -(dc * &qc));
            }
            quo.add_term(qm, qc);
        }
        Some(quo)
    }

    /// Coefficients as a polynomial in `var`: entry `d` is the coefficient of
    /// `var^d` (still living in the full ring, free of `var`).
    pub fn coefficients_in(&self, var: usize) -> Vec<Polynomial> {
        let deg = self.degree_in(var) as usize;
        let mut out = vec![Polynomial::zero(self.nvars); deg + 1];
        for (m, c) in &self.terms {
            let d = m.0[var] as usize;
            let mut e = m.0.clone();
            e[var] = 0;
            out[d].add_term(Monomial(e), c.clone());
        }
        out
    }

    pub fn from_coefficients_in(nvars: usize, var: usize, coeffs: &[Polynomial]) -> Polynomial {
        let mut out = Polynomial::zero(nvars);
        for (d, p) in coeffs.iter().enumerate() {
            for (m, c) in &p.terms {
                let mut e = m.0.clone();
                e[var] += d as u32;
                out.add_term(Monomial(e), c.clone());
            }
        }
        out
    }

    /// Scales so that the leading coefficient is one (zero stays zero).
    pub fn monic(&self) -> Polynomial {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
        }
    }

    /// Canonical text with custom variable names.
    pub fn format_with(&self, name: &dyn Fn(usize) -> String) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { name(i) } else { format!("{}^{}", name(i), e) })
                .collect();
            if mono.is_empty() {
                s.push_str(&format_rational(&abs));
            } else {
                if !abs.is_one() {
                    s.push_str(&format_rational(&abs));
                    s.push('*');
                }
                s.push_str(&mono.join("*"));
            }
        }
        s
    }

    /// Parses the canonical text form (`Y1^2*Y2 - 2/3*Y3 + 1`) into a ring
    /// with `nvars` variables.
    pub fn parse(text: &str, nvars: usize) -> Result<Polynomial> {
        parse_with(text, nvars, &|tok| {
            tok.strip_prefix('Y')
                .and_then(|d| d.parse::<usize>().ok())
                .filter(|&i| i >= 1)
                .map(|i| i - 1)
        })
    }
}

/// Parser shared by every variable naming scheme; `var_index` maps a variable
/// token to its zero-based index.
pub fn parse_with(
    text: &str,
    nvars: usize,
    var_index: &dyn Fn(&str) -> Option<usize>,
) -> Result<Polynomial> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    // split into signed terms
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    for (i, ch) in compact.char_indices() {
        if (ch == '+' || ch == '-') && !(i > 0 && compact[..i].ends_with('^')) {
            if !cur.is_empty() {
                terms.push((neg, std::mem::take(&mut cur)));
            } else if i != 0 {
                return Err(Error::Parse(format!("dangling sign in {text:?}")));
            }
            neg = ch == '-';
        } else {
            cur.push(ch);
        }
    }
    if cur.is_empty() {
        return Err(Error::Parse(format!("trailing sign in {text:?}")));
    }
    terms.push((neg, cur));

    let mut p = Polynomial::zero(nvars);
    for (neg, body) in terms {
        let mut coeff = Rational::one();
        let mut exps = vec![0u32; nvars];
        for factor in body.split('*') {
            if factor.is_empty() {
                return Err(Error::Parse(format!("empty factor in {text:?}")));
            }
            if factor.starts_with(|c: char| c.is_ascii_digit()) {
                coeff *= parse_rational(factor)?;
                continue;
            }
            let (var, exp) = match factor.split_once('^') {
                Some((v, e)) => (
                    v,
                    e.parse::<u32>()
                        .map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?,
                ),
                None => (factor, 1),
            };
            let idx = var_index(var).ok_or_else(|| Error::Parse(format!("unknown variable {var:?}")))?;
            if idx >= nvars {
                return Err(Error::Parse(format!(
                    "variable {var} outside a ring of {nvars} variables"
                )));
            }
            exps[idx] += exp;
        }
        if neg {
            coeff = -coeff;
        }
        p.add_term(Monomial(exps), coeff);
    }
    Ok(p)
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with(&|i| format!("Y{}", i + 1)))
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Self) -> Polynomial {
        self.try_add(rhs).expect("polynomial addition")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Self) -> Polynomial {
        self.try_sub(rhs).expect("polynomial subtraction")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Self) -> Polynomial {
        self.try_mul(rhs).expect("polynomial multiplication")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Self) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Self) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Self) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

/// Elementary symmetric polynomial `e_k` in the given variables.
pub fn elementary_symmetric(nvars: usize, vars: &[usize], k: usize) -> Polynomial {
    let mut out = Polynomial::zero(nvars);
    if k > vars.len() {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let mut e = vec![0; nvars];
        for &i in &idx {
            e[vars[i]] += 1;
        }
        out.add_term(Monomial(e), Rational::one());
        // next combination
        let mut pos = k;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            if idx[pos] < vars.len() - k + pos {
                idx[pos] += 1;
                for j in pos + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::ratio;

    fn y(n: usize, i: usize) -> Polynomial {
        Polynomial::var(n, i)
    }

    #[test]
    fn addition_examples() {
        let y1 = y(2, 0);
        assert!((&y1 + &(-&y1)).is_zero());
        let lhs = &(&y1 + &y(2, 1)) + &y(2, 1);
        assert_eq!(lhs.to_string(), "Y1 + 2*Y2");
        let sq = y1.pow(2);
        let sum = &sq.scale(&ratio(2, 3)) + &sq.scale(&ratio(1, 3));
        assert_eq!(sum, sq);
    }

    #[test]
    fn mismatched_rings_are_rejected() {
        let a = Polynomial::var(2, 0);
        let b = Polynomial::var(3, 0);
        assert_eq!(a.try_add(&b), Err(Error::VariableCount { left: 2, right: 3 }));
        assert!(a.try_mul(&b).is_err());
    }

    #[test]
    fn multiplication_examples() {
        let (a, b) = (y(2, 0), y(2, 1));
        let p = &(&a - &b) * &(&a + &b);
        assert_eq!(p, &a.pow(2) - &b.pow(2));
        assert_eq!(&p * &Polynomial::one(2), p);
        assert!((&Polynomial::zero(2) * &p).is_zero());
    }

    #[test]
    fn permutation_examples() {
        let s = Perm::transposition(2, 0);
        assert_eq!(y(2, 0).permute(&s), y(2, 1));
        let sym = &y(2, 0) * &y(2, 1);
        assert_eq!(sym.permute(&s), sym);
    }

    #[test]
    fn divided_difference_examples() {
        assert_eq!(y(2, 0).divided_difference(0), Polynomial::one(2));
        assert!((&y(2, 0) * &y(2, 1)).divided_difference(0).is_zero());
        assert_eq!(y(2, 0).pow(2).divided_difference(0), &y(2, 0) + &y(2, 1));
    }

    #[test]
    fn symmetric_blocks() {
        let p = &y(3, 0) + &y(3, 1);
        assert!(p.is_symmetric(&[0, 1]));
        assert!(!y(3, 0).is_symmetric(&[0, 1]));
        assert!(y(3, 0).is_symmetric(&[2]));
    }

    #[test]
    fn text_round_trip() {
        let p = Polynomial::parse("Y1^2*Y2 - 2/3*Y3 + 1", 3).unwrap();
        assert_eq!(p.to_string(), "Y1^2*Y2 - 2/3*Y3 + 1");
        assert_eq!(Polynomial::parse("-Y2", 2).unwrap().to_string(), "-Y2");
        assert!(Polynomial::parse("Y4", 3).is_err());
        assert!(Polynomial::parse("Y1 +", 3).is_err());
        assert_eq!(Polynomial::parse("0", 2).unwrap(), Polynomial::zero(2));
    }

    #[test]
    fn exact_division() {
        let (a, b) = (y(2, 0), y(2, 1));
        let p = &(&a - &b) * &(&a + &b.scale(&rat(3)));
        assert_eq!(p.div_exact(&(&a - &b)).unwrap(), &a + &b.scale(&rat(3)));
        assert!(p.div_exact(&(&a + &Polynomial::one(2))).is_none());
    }

    #[test]
    fn elementary_symmetric_counts() {
        let e2 = elementary_symmetric(4, &[0, 1, 2, 3], 2);
        assert_eq!(e2.num_terms(), 6);
        assert_eq!(elementary_symmetric(3, &[0, 2], 0), Polynomial::one(3));
    }
}
