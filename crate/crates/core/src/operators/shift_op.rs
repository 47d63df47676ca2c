//! Operators `Σ_a c_a(x) · φ^a` where `φ_{i,j}` translates `x_{i,j}` by one:
//! `φ_{i,j} x_{k,l} = (x_{k,l} + δ_{ik}δ_{jl}) φ_{i,j}`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exact::{Polynomial, RationalFunction};

/// Triangular family of variables `x_{i,j}`, `1 ≤ j ≤ row_len(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    rows: Vec<usize>,
    offsets: Vec<usize>,
}

impl Alphabet {
    pub fn new(rows: Vec<usize>) -> Self {
        let mut offsets = Vec::with_capacity(rows.len());
        let mut acc = 0;
        for &r in &rows {
            offsets.push(acc);
            acc += r;
        }
        Alphabet { rows, offsets }
    }

    /// Rows `1..=n` with row `k` holding `k` variables.
    pub fn triangular(n: usize) -> Self {
        Self::new((1..=n).collect())
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn row_len(&self, i: usize) -> usize {
        self.rows[i - 1]
    }

    pub fn len(&self) -> usize {
        self.rows.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Flat index of `x_{i,j}` (one-based `i`, `j`).
    pub fn index(&self, i: usize, j: usize) -> usize {
        assert!(i >= 1 && i <= self.rows.len() && j >= 1 && j <= self.rows[i - 1], "x_{{{i},{j}}} outside the alphabet");
        self.offsets[i - 1] + j - 1
    }

    pub fn position(&self, flat: usize) -> (usize, usize) {
        let i = (0..self.rows.len())
            .find(|&r| flat >= self.offsets[r] && flat < self.offsets[r] + self.rows[r])
            .expect("flat index outside the alphabet");
        (i + 1, flat - self.offsets[i] + 1)
    }

    pub fn var(&self, i: usize, j: usize) -> Polynomial {
        Polynomial::var(self.len(), self.index(i, j))
    }

    pub fn name(&self, flat: usize) -> String {
        let (i, j) = self.position(flat);
        format!("x{i}_{j}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftOperator {
    alphabet: Alphabet,
    terms: BTreeMap<Vec<i32>, RationalFunction>,
}

impl ShiftOperator {
    pub fn zero(alphabet: &Alphabet) -> Self {
        ShiftOperator {
            alphabet: alphabet.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(alphabet: &Alphabet) -> Self {
        Self::term(alphabet, RationalFunction::one(alphabet.len()), vec![0; alphabet.len()])
    }

    pub fn term(alphabet: &Alphabet, c: RationalFunction, shift: Vec<i32>) -> Self {
        assert_eq!(shift.len(), alphabet.len());
        let mut op = Self::zero(alphabet);
        op.add_term(shift, c);
        op
    }

    /// `φ_{i,j}^e`.
    pub fn phi(alphabet: &Alphabet, i: usize, j: usize, e: i32) -> Self {
        let mut shift = vec![0; alphabet.len()];
        shift[alphabet.index(i, j)] = e;
        Self::term(alphabet, RationalFunction::one(alphabet.len()), shift)
    }

    pub fn multiplication(alphabet: &Alphabet, c: RationalFunction) -> Self {
        Self::term(alphabet, c, vec![0; alphabet.len()])
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i32>, &RationalFunction)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, shift: &[i32]) -> RationalFunction {
        self.terms
            .get(shift)
            .cloned()
            .unwrap_or_else(|| RationalFunction::zero(self.alphabet.len()))
    }

    fn add_term(&mut self, shift: Vec<i32>, c: RationalFunction) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&shift) {
            Some(old) => {
                let s = &*old + &c;
                if s.is_zero() {
                    self.terms.remove(&shift);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(shift, c);
            }
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.alphabet != other.alphabet {
            return Err(Error::Shape("shift operators over different alphabets".into()));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.add_term(a.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &crate::exact::Rational) -> Self {
        let mut out = Self::zero(&self.alphabet);
        for (a, d) in &self.terms {
            out.add_term(a.clone(), d.scale(c));
        }
        out
    }

    /// Normal-ordered product `(c φ^a)(d φ^b) = c · d(x + a) · φ^{a+b}`.
    pub fn try_compose(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(&self.alphabet);
        for (a, c) in &self.terms {
            for (b, d) in &other.terms {
                let moved = translate(d, a);
                let sum: Vec<i32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.add_term(sum, c * &moved);
            }
        }
        Ok(out)
    }

    pub fn compose(&self, other: &Self) -> Self {
        self.try_compose(other).expect("shift operators over different alphabets")
    }

    /// `Σ c_a · f(x + a)`.
    pub fn apply(&self, f: &RationalFunction) -> RationalFunction {
        let mut out = RationalFunction::zero(self.alphabet.len());
        for (a, c) in &self.terms {
            out = &out + &(c * &translate(f, a));
        }
        out
    }
}

/// `f(x + a)`.
pub fn translate(f: &RationalFunction, shift: &[i32]) -> RationalFunction {
    if shift.iter().all(|&s| s == 0) {
        return f.clone();
    }
    let n = f.nvars();
    let images: Vec<Polynomial> = (0..n)
        .map(|k| &Polynomial::var(n, k) + &Polynomial::from_int(n, shift[k] as i64))
        .collect();
    f.substitute(&images).expect("translation keeps denominators nonzero")
}

impl fmt::Display for ShiftOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let name = |i: usize| self.alphabet.name(i);
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(a, c)| {
                let phis: Vec<String> = a
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e != 0)
                    .map(|(k, &e)| {
                        let (i, j) = self.alphabet.position(k);
                        if e == 1 {
                            format!("phi{i}_{j}")
                        } else {
                            format!("phi{i}_{j}^{e}")
                        }
                    })
                    .collect();
                let coeff = format!("({})", c.format_with(&name));
                if phis.is_empty() {
                    coeff
                } else {
                    format!("{coeff}*{}", phis.join("*"))
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}
