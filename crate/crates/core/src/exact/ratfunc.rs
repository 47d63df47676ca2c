//! Rational functions in lowest terms.
//!
//! The denominator is stored as a product of monic, pairwise coprime factors
//! with multiplicities. Denominators built from differences of variables stay
//! products of linear factors, where coprimality and cancellation reduce to
//! equality and exact-division tests; general gcds are only needed once a
//! nonlinear factor appears.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::gcd::gcd;
use super::perm::Perm;
use super::polynomial::Polynomial;
use super::rational::Rational;
use crate::error::{Error, Result};

type Factors = BTreeMap<Polynomial, u32>;

#[derive(Clone, Debug)]
pub struct RationalFunction {
    num: Polynomial,
    den: Factors,
}

fn is_linear(p: &Polynomial) -> bool {
    p.degree() == Some(1)
}

/// `p = lc · monic`.
fn split_monic(p: &Polynomial) -> (Rational, Polynomial) {
    let lc = p.leading_coefficient();
    if lc.is_one() {
        (lc, p.clone())
    } else {
        let m = p.scale(&lc.recip());
        (lc, m)
    }
}

/// Common factor of two monic nonconstant polynomials, if nontrivial.
fn common_factor(f: &Polynomial, g: &Polynomial) -> Option<Polynomial> {
    match (is_linear(f), is_linear(g)) {
        (true, true) => None,
        (false, true) => f.div_exact(g).map(|_| g.clone()),
        (true, false) => g.div_exact(f).map(|_| f.clone()),
        (false, false) => {
            let h = gcd(f, g);
            (!h.is_constant()).then_some(h)
        }
    }
}

/// Multiplies the factored product by `g^k`, keeping factors coprime.
fn insert_factor(base: &mut Factors, g: Polynomial, k: u32) {
    if k == 0 || g.is_constant() {
        return;
    }
    if let Some(e) = base.get_mut(&g) {
        *e += k;
        return;
    }
    let hit = base
        .keys()
        .find_map(|f| common_factor(f, &g).map(|h| (f.clone(), h)));
    match hit {
        None => {
            base.insert(g, k);
        }
        Some((f, h)) => {
            let kf = base.remove(&f).unwrap();
            let f2 = f.div_exact(&h).expect("common factor divides").monic();
            let g2 = g.div_exact(&h).expect("common factor divides").monic();
            insert_factor(base, h, kf + k);
            insert_factor(base, f2, kf);
            insert_factor(base, g2, k);
        }
    }
}

/// Cancels common factors of `num` and the factored denominator.
fn cancel(mut num: Polynomial, mut base: Factors) -> (Polynomial, Factors) {
    if num.is_zero() {
        return (num, Factors::new());
    }
    'outer: loop {
        let keys: Vec<Polynomial> = base.keys().cloned().collect();
        for f in keys {
            let mut k = base[&f];
            while k > 0 {
                match num.div_exact(&f) {
                    Some(q) => {
                        num = q;
                        k -= 1;
                    }
                    None => break,
                }
            }
            if k == 0 {
                base.remove(&f);
                continue;
            }
            base.insert(f.clone(), k);
            if !is_linear(&f) {
                let h = gcd(&num, &f);
                if !h.is_constant() {
                    base.remove(&f);
                    let rest = f.div_exact(&h).expect("gcd divides").monic();
                    insert_factor(&mut base, h, k);
                    insert_factor(&mut base, rest, k);
                    continue 'outer;
                }
            }
        }
        return (num, base);
    }
}

/// Every factor of `a` absent from `b` is coprime to every factor of `b`
/// absent from `a`.
fn jointly_coprime(a: &Factors, b: &Factors) -> bool {
    a.keys()
        .filter(|f| !b.contains_key(*f))
        .all(|f| b.keys().filter(|g| !a.contains_key(*g)).all(|g| common_factor(f, g).is_none()))
}

fn expand(nvars: usize, base: &Factors) -> Polynomial {
    base.iter()
        .fold(Polynomial::one(nvars), |acc, (f, &k)| &acc * &f.pow(k))
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        Self::from_factors(num, vec![den])
    }

    /// `num / Π factors`.
    pub fn from_factors(num: Polynomial, factors: Vec<Polynomial>) -> Result<Self> {
        let n = num.nvars();
        let mut num = num;
        let mut base = Factors::new();
        for f in factors {
            if f.nvars() != n {
                return Err(Error::VariableCount {
                    left: n,
                    right: f.nvars(),
                });
            }
            if f.is_zero() {
                return Err(Error::Invalid("zero denominator".into()));
            }
            let (lc, m) = split_monic(&f);
            num = num.scale(&lc.recip());
            insert_factor(&mut base, m, 1);
        }
        let (num, den) = cancel(num, base);
        Ok(RationalFunction { num, den })
    }

    pub fn from_poly(p: Polynomial) -> Self {
        RationalFunction {
            num: p,
            den: Factors::new(),
        }
    }

    pub fn zero(nvars: usize) -> Self {
        Self::from_poly(Polynomial::zero(nvars))
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_poly(Polynomial::one(nvars))
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::from_poly(Polynomial::constant(nvars, c))
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    /// The expanded monic denominator.
    pub fn denominator(&self) -> Polynomial {
        expand(self.nvars(), &self.den)
    }

    /// Monic pairwise coprime denominator factors with multiplicities.
    pub fn denominator_factors(&self) -> impl Iterator<Item = (&Polynomial, u32)> {
        self.den.iter().map(|(f, &k)| (f, k))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    pub fn as_polynomial(&self) -> Option<Polynomial> {
        self.den.is_empty().then(|| self.num.clone())
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.nvars() != other.nvars() {
            return Err(Error::VariableCount {
                left: self.nvars(),
                right: other.nvars(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.den == other.den {
            let (num, den) = cancel(&self.num + &other.num, self.den.clone());
            return Ok(RationalFunction { num, den });
        }
        let n = self.nvars();
        if jointly_coprime(&self.den, &other.den) {
            let mut lcm = self.den.clone();
            for (f, &k) in &other.den {
                let e = lcm.entry(f.clone()).or_insert(0);
                *e = (*e).max(k);
            }
            let cofactor = |d: &Factors| {
                lcm.iter().fold(Polynomial::one(n), |acc, (f, &k)| {
                    let have = d.get(f).copied().unwrap_or(0);
                    if k > have {
                        &acc * &f.pow(k - have)
                    } else {
                        acc
                    }
                })
            };
            let num = &(&self.num * &cofactor(&self.den)) + &(&other.num * &cofactor(&other.den));
            let (num, den) = cancel(num, lcm);
            return Ok(RationalFunction { num, den });
        }
        let mut base = self.den.clone();
        for (f, &k) in &other.den {
            insert_factor(&mut base, f.clone(), k);
        }
        let num = &(&self.num * &other.denominator()) + &(&other.num * &self.denominator());
        let (num, den) = cancel(num, base);
        Ok(RationalFunction { num, den })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.nvars()));
        }
        let (n1, d2) = cancel(self.num.clone(), other.den.clone());
        let (n2, d1) = cancel(other.num.clone(), self.den.clone());
        let mut base = d1;
        for (f, k) in d2 {
            insert_factor(&mut base, f, k);
        }
        Ok(RationalFunction { num: &n1 * &n2, den: base })
    }

    pub fn mul_poly(&self, p: &Polynomial) -> Self {
        self * &Self::from_poly(p.clone())
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Invalid("reciprocal of zero".into()));
        }
        let (lc, m) = split_monic(&self.num);
        let mut den = Factors::new();
        insert_factor(&mut den, m, 1);
        Ok(RationalFunction {
            num: self.denominator().scale(&lc.recip()),
            den,
        })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars());
        }
        RationalFunction {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        if e == 0 {
            return Self::one(self.nvars());
        }
        RationalFunction {
            num: self.num.pow(e),
            den: self.den.iter().map(|(f, &k)| (f.clone(), k * e)).collect(),
        }
    }

    /// Applies an injective relabeling of variables to every factor.
    fn relabel(&self, map: impl Fn(&Polynomial) -> Polynomial) -> Self {
        let mut num = map(&self.num);
        let mut den = Factors::new();
        for (f, &k) in &self.den {
            let (lc, m) = split_monic(&map(f));
            if !lc.is_one() {
                num = num.scale(&lc.recip().pow(k as i32));
            }
            den.insert(m, k);
        }
        RationalFunction { num, den }
    }

    pub fn permute(&self, w: &Perm) -> Self {
        if w.is_identity() {
            return self.clone();
        }
        self.relabel(|p| p.permute(w))
    }

    pub fn swap_vars(&self, k: usize, l: usize) -> Self {
        self.relabel(|p| p.swap_vars(k, l))
    }

    pub fn embed(&self, nvars: usize, map: &[usize]) -> Self {
        self.relabel(|p| p.embed(nvars, map))
    }

    /// Substitutes polynomials for the variables.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Self> {
        let mut num = self.num.substitute(images);
        let mut base = Factors::new();
        for (f, &k) in &self.den {
            let g = f.substitute(images);
            if g.is_zero() {
                return Err(Error::Invalid("substitution annihilates the denominator".into()));
            }
            let (lc, m) = split_monic(&g);
            num = num.scale(&lc.recip().pow(k as i32));
            insert_factor(&mut base, m, k);
        }
        let (num, den) = cancel(num, base);
        Ok(RationalFunction { num, den })
    }

    /// Equality by cross-multiplication of expanded forms.
    pub fn cross_equal(&self, other: &Self) -> bool {
        self.nvars() == other.nvars() && &self.num * &other.denominator() == &other.num * &self.denominator()
    }

    /// Lowest terms recomputed from the expanded form with a full gcd.
    pub fn gcd_normal_form(&self) -> (Polynomial, Polynomial) {
        let den = self.denominator();
        if self.num.is_zero() {
            return (self.num.clone(), Polynomial::one(self.nvars()));
        }
        let g = gcd(&self.num, &den);
        let num = self.num.div_exact(&g).expect("gcd divides");
        let den = den.div_exact(&g).expect("gcd divides");
        let (lc, den) = split_monic(&den);
        (num.scale(&lc.recip()), den)
    }

    pub fn format_with(&self, name: &dyn Fn(usize) -> String) -> String {
        if self.den.is_empty() {
            self.num.format_with(name)
        } else {
            format!("({})/({})", self.num.format_with(name), self.denominator().format_with(name))
        }
    }

    /// Parses `poly` or `(poly)/(poly)`.
    pub fn parse(text: &str, nvars: usize) -> Result<Self> {
        let t = text.trim();
        if let Some(rest) = t.strip_prefix('(') {
            if let Some(idx) = rest.find(")/(") {
                let num = Polynomial::parse(&rest[..idx], nvars)?;
                let den_text = rest[idx + 3..]
                    .strip_suffix(')')
                    .ok_or_else(|| Error::Parse(format!("unbalanced parentheses in {t:?}")))?;
                let den = Polynomial::parse(den_text, nvars)?;
                return Self::new(num, den);
            }
        }
        Ok(Self::from_poly(Polynomial::parse(t, nvars)?))
    }
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        // Lowest terms with a monic denominator are unique, so numerators
        // must agree; factorizations of the denominator may still differ.
        self.num == other.num && (self.den == other.den || self.denominator() == other.denominator())
    }
}

impl Eq for RationalFunction {}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with(&|i| format!("Y{}", i + 1)))
    }
}

impl From<Polynomial> for RationalFunction {
    fn from(p: Polynomial) -> Self {
        Self::from_poly(p)
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: Self) -> RationalFunction {
        self.try_add(rhs).expect("rational function addition")
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: Self) -> RationalFunction {
        self.try_add(&-rhs).expect("rational function subtraction")
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: Self) -> RationalFunction {
        self.try_mul(rhs).expect("rational function multiplication")
    }
}

impl Div for &RationalFunction {
    type Output = RationalFunction;
    fn div(self, rhs: Self) -> RationalFunction {
        self * &rhs.recip().expect("division by zero")
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}
