//! Shift operators realizing `gl_{n+1}` on the triangular alphabet, and the
//! comparison of their translated summands with ladder diagrams.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{Polynomial, Rational, RationalFunction};
use crate::klrw::Word;
use crate::operators::{Alphabet, ShiftOperator};
use crate::weights::{chi_plus, word_of_gt_weight, GTWeight};

use super::action::Ladder;
use super::merge::LadderContext;

fn check_index(n: usize, i: usize) -> Result<()> {
    if i == 0 || i > n {
        return Err(Error::Invalid(format!("index {i} outside 1..={n}")));
    }
    Ok(())
}

fn shift_of(al: &Alphabet, i: usize, j: usize, e: i32) -> Vec<i32> {
    let mut shift = vec![0; al.len()];
    shift[al.index(i, j)] = e;
    shift
}

/// `X^±_i = ∓ Σ_j Π_k (x_{i,j} - x_{i±1,k}) / Π_{k≠j} (x_{i,j} - x_{i,k}) · φ_{i,j}^{±1}`.
fn ogz(n: usize, i: usize, raising: bool) -> Result<ShiftOperator> {
    check_index(n, i)?;
    let al = Alphabet::triangular(n + 1);
    let nv = al.len();
    let (other, e, sign) = if raising { (i + 1, 1, -1) } else { (i - 1, -1, 1) };
    let mut op = ShiftOperator::zero(&al);
    for j in 1..=i {
        let xij = al.var(i, j);
        let mut num = Polynomial::from_int(nv, sign);
        for k in 1..=other {
            num = &num * &(&xij - &al.var(other, k));
        }
        let factors = (1..=i).filter(|&k| k != j).map(|k| &xij - &al.var(i, k)).collect();
        let c = RationalFunction::from_factors(num, factors)?;
        op = op.try_add(&ShiftOperator::term(&al, c, shift_of(&al, i, j, e)))?;
    }
    Ok(op)
}

pub fn ogz_raising(n: usize, i: usize) -> Result<ShiftOperator> {
    ogz(n, i, true)
}

pub fn ogz_lowering(n: usize, i: usize) -> Result<ShiftOperator> {
    ogz(n, i, false)
}

fn indices_with(row: &[i64], value: i64) -> Vec<usize> {
    (0..row.len()).filter(|&q| row[q] == value).collect()
}

/// The summand of `X^+_n` over `J = {j : row_j = i + 1}` with the factors
/// outside `J` dropped from the denominators, `(x_{n,j} - i - 1)^s` and `p`
/// inserted. `p` must be a symmetric polynomial in `{x_{n,q} : row_q = i}`.
pub fn x_ips(n: usize, i: i64, p: &Polynomial, s: u32, row: &[i64]) -> Result<ShiftOperator> {
    if n == 0 || row.len() != n {
        return Err(Error::Shape(format!("row of length {} for n = {n}", row.len())));
    }
    let al = Alphabet::triangular(n + 1);
    let nv = al.len();
    if p.nvars() != nv {
        return Err(Error::VariableCount {
            left: p.nvars(),
            right: nv,
        });
    }
    let alphabet: Vec<usize> = indices_with(row, i).into_iter().map(|q| al.index(n, q + 1)).collect();
    if (0..nv).any(|v| p.uses_var(v) && !alphabet.contains(&v)) || !p.is_symmetric(&alphabet) {
        return Err(Error::NotInvariant(format!("p in the alphabet of entries equal to {i}")));
    }
    let big_j = indices_with(row, i + 1);
    let mut op = ShiftOperator::zero(&al);
    for &j in &big_j {
        let xj = al.var(n, j + 1);
        let mut num = Polynomial::from_int(nv, -1);
        for k in 1..=n + 1 {
            num = &num * &(&xj - &al.var(n + 1, k));
        }
        num = &num * &(&xj - &Polynomial::from_int(nv, i + 1)).pow(s);
        num = &num * p;
        let factors = big_j.iter().filter(|&&q| q != j).map(|&q| &xj - &al.var(n, q + 1)).collect();
        let c = RationalFunction::from_factors(num, factors)?;
        op = op.try_add(&ShiftOperator::term(&al, c, shift_of(&al, n, j + 1, 1)))?;
    }
    Ok(op)
}

/// How many factors of `C = Π_k (Y_{n,j} + λ_{n,j} - x_{n+1,k})` to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CFactor {
    Full,
    /// Drops the factor `k = n + 1`.
    DropLast,
}

#[derive(Clone, Debug, Serialize)]
pub struct TermReport {
    /// One-based index of the red whose variable is shifted.
    pub j: usize,
    pub holds: bool,
    pub translated: String,
    pub ladder: String,
    pub c: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct IntertwinerReport {
    pub holds: bool,
    pub sign: i64,
    pub bottom: String,
    pub top: String,
    /// Degree of the diagram below the merge; the comparison ignores grading shifts.
    pub diagram_degree: Option<i64>,
    pub terms: Vec<TermReport>,
}

/// The `k`-th occurrence of letter `r` in `w` is the variable `x_{r,k}`.
fn strand_alphabet_map(w: &Word, al: &Alphabet) -> Vec<usize> {
    let mut seen = vec![0usize; al.nrows() + 1];
    w.letters()
        .iter()
        .map(|&r| {
            let r = r as usize;
            seen[r] += 1;
            al.index(r, seen[r])
        })
        .collect()
}

/// Compares, for each `j` with `λ'_{n,j} = i + 1`, the coefficient of
/// `φ_{n,j}` in `x_ips` under `x_{n,q} = Y_{n,q} + λ'_{n,q}` with `C` times
/// the coefficient of the matching coset in the ladder carrying `s` dots on
/// the rung and `p` on the other reds labelled `i`, up to the sign
/// `(-1)^{|J|-1}` from the orientation of `Δ`.
pub fn check_intertwiner(
    lambda: &GTWeight,
    lambda_prime: &GTWeight,
    i: i64,
    p: &Polynomial,
    s: u32,
    c_factor: CFactor,
) -> Result<IntertwinerReport> {
    let n = lambda.n();
    if n == 0 || lambda_prime.n() != n {
        return Err(Error::Shape("weights must have the same positive number of rows".into()));
    }
    if lambda.rows()[..n - 1] != lambda_prime.rows()[..n - 1] {
        return Err(Error::Shape("weights must agree below the top row".into()));
    }
    let row = lambda.row(n);
    let row_prime = lambda_prime.row(n);
    if chi_plus(row, i).as_deref() != Some(row_prime) {
        return Err(Error::Shape(format!("top rows {row:?} and {row_prime:?} do not differ by raising {i}")));
    }
    let al = Alphabet::triangular(n + 1);
    let nv = al.len();
    let xips = x_ips(n, i, p, s, row_prime)?;

    let ctx = LadderContext::new(row, i, 1)?;
    let bottom = word_of_gt_weight(lambda);
    let top = word_of_gt_weight(lambda_prime);
    let ladder = Ladder::new(ctx.clone(), n as u32, (1..n).collect(), &bottom, &top)?;
    let strands = ladder.nstrands();
    let bottom_reds = ladder.bottom_reds();
    let top_reds = ladder.top_reds();
    let rung = ctx.rung().start;

    // Y^s on the rung times p at the bottom, with x_{n,q} = Y_q + λ'_{n,q}.
    let mut images = vec![Polynomial::zero(strands); nv];
    for q in 0..n {
        images[al.index(n, q + 1)] = &Polynomial::var(strands, bottom_reds[q]) + &Polynomial::from_int(strands, row_prime[q]);
    }
    let g = &Polynomial::var(strands, bottom_reds[rung]).pow(s) * &p.substitute(&images);
    let bare = ladder.bare_diagram()?;
    let diagram = bare.multiply(&ladder.polynomial_on(ladder.bottom(), &g)?);
    let action = if diagram.is_zero() {
        crate::operators::PermOperator::zero(strands)
    } else {
        ladder.action(&diagram)?.neg()
    };

    let top_map = strand_alphabet_map(ladder.top(), &al);
    let shift: Vec<i32> = (0..nv)
        .map(|v| match al.position(v) {
            (r, q) if r == n => row_prime[q - 1] as i32,
            _ => 0,
        })
        .collect();
    let big_j = indices_with(row_prime, i + 1);
    let sign: i64 = if big_j.len() % 2 == 1 { 1 } else { -1 };
    let name = |v: usize| al.name(v);
    let mut terms = Vec::new();
    for &j in &big_j {
        let translated = crate::operators::shift_op::translate(&xips.coefficient(&shift_of(&al, n, j + 1, 1)), &shift);
        let coset = action
            .terms()
            .find(|(w, _)| w.image(bottom_reds[rung]) == top_reds[j])
            .map(|(_, c)| c.embed(nv, &top_map))
            .unwrap_or_else(|| RationalFunction::zero(nv));
        let factors = match c_factor {
            CFactor::Full => n + 1,
            CFactor::DropLast => n,
        };
        let yj = al.var(n, j + 1);
        let mut c = Polynomial::from_int(nv, sign);
        for k in 1..=factors {
            c = &c * &(&(&yj + &Polynomial::from_int(nv, row_prime[j])) - &al.var(n + 1, k));
        }
        let expected = coset.mul_poly(&c);
        terms.push(TermReport {
            j: j + 1,
            holds: translated == expected,
            translated: translated.format_with(&name),
            ladder: coset.format_with(&name),
            c: c.format_with(&name),
        });
    }
    Ok(IntertwinerReport {
        holds: terms.iter().all(|t| t.holds),
        sign,
        bottom: bottom.to_string(),
        top: top.to_string(),
        diagram_degree: diagram.degree(),
        terms,
    })
}

/// Weakly increasing rows of length `k` with entries in `lo..=hi`.
fn increasing_rows(k: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for mut row in increasing_rows(k - 1, lo, hi) {
        let start = row.last().copied().unwrap_or(lo);
        for x in start..=hi {
            row.push(x);
            out.push(row.clone());
            row.pop();
        }
    }
    out
}

/// Every `(λ, λ')` with `n` rows of entries in `lo..=hi` where `λ'` raises
/// an entry `i` of the top row of `λ` to `i + 1`.
pub fn raising_pairs(n: usize, i: i64, lo: i64, hi: i64) -> Vec<(GTWeight, GTWeight)> {
    let mut weights: Vec<Vec<Vec<i64>>> = vec![vec![]];
    for k in 1..=n {
        let rows = increasing_rows(k, lo, hi);
        weights = weights
            .into_iter()
            .flat_map(|w| {
                rows.iter().map(move |r| {
                    let mut w = w.clone();
                    w.push(r.clone());
                    w
                })
            })
            .collect();
    }
    weights
        .into_iter()
        .filter_map(|rows| {
            let top = chi_plus(rows.last()?, i)?;
            let mut raised = rows.clone();
            *raised.last_mut()? = top;
            Some((GTWeight::new(rows).ok()?, GTWeight::new(raised).ok()?))
        })
        .collect()
}

/// `e_k` in the variables `x_{n,q}` with `row_q = i`.
pub fn elementary_in_block(n: usize, row: &[i64], i: i64, k: usize) -> Polynomial {
    let al = Alphabet::triangular(n + 1);
    let vars: Vec<usize> = indices_with(row, i).into_iter().map(|q| al.index(n, q + 1)).collect();
    crate::exact::polynomial::elementary_symmetric(al.len(), &vars, k)
}

/// Every shift in `op` is zero.
pub fn is_shift_free(op: &ShiftOperator) -> bool {
    op.terms().all(|(a, _)| a.iter().all(|&x| x == 0))
}

/// `[A, B] = AB - BA`.
pub fn commutator(a: &ShiftOperator, b: &ShiftOperator) -> ShiftOperator {
    a.compose(b).try_add(&b.compose(a).scale(&Rational::from_integer((-1).into()))).expect("same alphabet")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gt(rows: &[&[i64]]) -> GTWeight {
        GTWeight::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn raising_pairs_counts() {
        // Top rows (0, x) with x in 0..=2 raise the last 0; first rows are free.
        assert_eq!(raising_pairs(2, 0, 0, 2).len(), 3 * 3);
        assert!(raising_pairs(1, 5, 0, 2).is_empty());
        for (l, lp) in raising_pairs(2, 1, 0, 2) {
            assert_eq!(chi_plus(l.row(2), 1).as_deref(), Some(lp.row(2)));
        }
    }

    #[test]
    fn single_row_raising() {
        let x = ogz_raising(1, 1).unwrap();
        let al = Alphabet::triangular(2);
        let c = &(&(&al.var(1, 1) - &al.var(2, 1)) * &(&al.var(1, 1) - &al.var(2, 2))) * &Polynomial::from_int(3, -1);
        let expected = ShiftOperator::term(&al, c.into(), shift_of(&al, 1, 1, 1));
        assert_eq!(x, expected);
        assert!(ogz_raising(1, 2).is_err());
    }

    #[test]
    fn commutators_are_shift_free() {
        for i in 1..=2 {
            let c = commutator(&ogz_raising(2, i).unwrap(), &ogz_lowering(2, i).unwrap());
            assert!(!c.is_zero());
            assert!(is_shift_free(&c), "[X+_{i}, X-_{i}] = {c}");
        }
        let mixed = commutator(&ogz_raising(2, 1).unwrap(), &ogz_lowering(2, 2).unwrap());
        assert!(mixed.is_zero(), "{mixed}");
    }

    #[test]
    fn x_ips_localizes_raising() {
        let n = 2;
        let al = Alphabet::triangular(n + 1);
        let row = [0, 1];
        let one = Polynomial::one(al.len());
        let summand = x_ips(n, 0, &one, 0, &row).unwrap();
        let full = ogz_raising(n, n).unwrap();
        let shift = shift_of(&al, 2, 2, 1);
        let outside = RationalFunction::new(one.clone(), &al.var(2, 2) - &al.var(2, 1)).unwrap();
        assert_eq!(&summand.coefficient(&shift) * &outside, full.coefficient(&shift));
        assert_eq!(summand.terms().count(), 1);

        let dotted = x_ips(n, 0, &one, 1, &row).unwrap();
        let factor = &al.var(2, 2) - &Polynomial::from_int(al.len(), 1);
        assert_eq!(dotted.coefficient(&shift), summand.coefficient(&shift).mul_poly(&factor));
        assert!(x_ips(n, 3, &one, 0, &row).unwrap().is_zero());
        assert!(x_ips(n, 0, &al.var(2, 2), 0, &row).is_err());
    }

    #[test]
    fn intertwiner_single_row() {
        let lambda = gt(&[&[2]]);
        let lambda_prime = gt(&[&[3]]);
        let one = Polynomial::one(3);
        for s in 0..=2 {
            let r = check_intertwiner(&lambda, &lambda_prime, 2, &one, s, CFactor::Full).unwrap();
            assert!(r.holds, "{r:?}");
            assert!(!check_intertwiner(&lambda, &lambda_prime, 2, &one, s, CFactor::DropLast).unwrap().holds);
        }
    }

    #[test]
    fn intertwiner_two_rows() {
        let one = Polynomial::one(6);
        for s in 0..=2 {
            let r = check_intertwiner(&gt(&[&[1], &[0, 2]]), &gt(&[&[1], &[1, 2]]), 0, &one, s, CFactor::Full).unwrap();
            assert!(r.holds, "{r:?}");
        }
        // A second red labelled 0 carries the symmetric polynomial.
        let lambda = gt(&[&[5], &[0, 0]]);
        let lambda_prime = gt(&[&[5], &[0, 1]]);
        for k in 0..=1 {
            let p = elementary_in_block(2, lambda_prime.row(2), 0, k);
            for s in 0..=2 {
                let r = check_intertwiner(&lambda, &lambda_prime, 0, &p, s, CFactor::Full).unwrap();
                assert!(r.holds, "{r:?}");
            }
        }
        // Two reds end up labelled 2.
        let lambda = gt(&[&[1], &[1, 2]]);
        let lambda_prime = gt(&[&[1], &[2, 2]]);
        let p = Polynomial::one(6);
        let r = check_intertwiner(&lambda, &lambda_prime, 1, &p, 1, CFactor::Full).unwrap();
        assert!(r.holds, "{r:?}");
        assert_eq!(r.terms.len(), 2);
        assert_eq!(r.sign, -1);
        assert!(!check_intertwiner(&lambda, &lambda_prime, 1, &p, 1, CFactor::DropLast).unwrap().holds);
    }
}
