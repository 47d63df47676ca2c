//! Exhaustive check of the local relations in the polynomial representation.

use serde::Serialize;

use super::element::{AlgebraElement, CrossingSign};
use super::problem::Problem;
use super::word::Word;
use crate::error::Result;
use crate::exact::{rational::rat, Polynomial};
use crate::operators::PermOperator;

#[derive(Clone, Debug, Serialize)]
pub struct RelationCheck {
    pub relation: &'static str,
    pub word: String,
    pub positions: Vec<usize>,
    /// Some strand taking part in the relation is red.
    pub involves_red: bool,
    pub holds: bool,
}

/// The problem whose letter counts are those of `w` (all `chi` entries zero).
pub fn problem_of_word(m: u32, w: &Word) -> Problem {
    let counts = w.counts(m);
    let n = counts[m as usize - 1];
    Problem::new(m, counts[..m as usize - 1].to_vec(), vec![0; n]).expect("counts give a valid problem")
}

/// Crossings at positions `ks`, applied bottom to top starting from `w`.
pub fn crossings(p: &Problem, w: &Word, ks: &[usize], sign: CrossingSign) -> Result<AlgebraElement> {
    let mut acc = AlgebraElement::idempotent(p, w)?;
    let mut cur = w.clone();
    for &k in ks {
        let c = AlgebraElement::crossing_with(p, &cur, k, sign)?;
        cur = cur.swapped(k);
        acc = c.multiply(&acc);
    }
    Ok(acc)
}

fn poly_element(w: &Word, f: Polynomial, degree: i64) -> AlgebraElement {
    AlgebraElement::from_operator(w.clone(), w.clone(), PermOperator::multiplication(f), degree)
}

struct Suite<'a> {
    p: &'a Problem,
    w: &'a Word,
    sign: CrossingSign,
    out: &'a mut Vec<RelationCheck>,
}

impl Suite<'_> {
    fn record(&mut self, relation: &'static str, positions: Vec<usize>, lhs: AlgebraElement, rhs: AlgebraElement) {
        // Crossings at `k` touch strands `k, k + 1`; a distant dot sits on
        // one strand; the triple relation spans three.
        let strands: Vec<usize> = match (relation, positions.as_slice()) {
            ("triple", &[k]) => vec![k, k + 1, k + 2],
            ("distant-dot", &[k, t]) => vec![k, k + 1, t],
            _ => positions.iter().flat_map(|&k| [k, k + 1]).collect(),
        };
        let letters = self.w.letters();
        let involves_red = strands.iter().any(|&t| self.p.is_red(letters[t]));
        self.out.push(RelationCheck {
            relation,
            word: self.w.to_string(),
            positions,
            involves_red,
            holds: lhs == rhs,
        });
    }

    fn psi(&self, ks: &[usize]) -> AlgebraElement {
        crossings(self.p, self.w, ks, self.sign).expect("crossing of a valid word")
    }

    fn dot(&self, w: &Word, k: usize) -> AlgebraElement {
        AlgebraElement::dot(self.p, w, k).expect("dot on a valid word")
    }

    fn run(&mut self) {
        let p = self.p;
        let w = self.w;
        let l = w.letters();
        let len = l.len();
        let red = |k: usize| p.is_red(l[k]);
        let n = p.num_strands();
        let e = AlgebraElement::idempotent(p, w).expect("valid word");

        for k in 0..len.saturating_sub(1) {
            if red(k) && red(k + 1) {
                continue;
            }
            let (i, j) = (l[k], l[k + 1]);
            let top = w.swapped(k);
            let psi = self.psi(&[k]);
            if i == j {
                let a = psi.multiply(&self.dot(w, k)).try_sub(&self.dot(&top, k + 1).multiply(&psi)).unwrap();
                self.record("nil-hecke", vec![k], a, e.clone());
                let b = self.dot(&top, k).multiply(&psi).try_sub(&psi.multiply(&self.dot(w, k + 1))).unwrap();
                self.record("nil-hecke", vec![k], b, e.clone());
            } else {
                let a = self.dot(&top, k).multiply(&psi);
                self.record("dot-slide", vec![k], a, psi.multiply(&self.dot(w, k + 1)));
                let b = self.dot(&top, k + 1).multiply(&psi);
                self.record("dot-slide", vec![k], b, psi.multiply(&self.dot(w, k)));
            }

            let (yk, yk1) = (Polynomial::var(n, k), Polynomial::var(n, k + 1));
            let rhs = if i == j {
                AlgebraElement::zero(n)
            } else if i + 1 == j {
                poly_element(w, &yk1 - &yk, 2)
            } else if i == j + 1 {
                poly_element(w, &yk - &yk1, 2)
            } else {
                e.clone()
            };
            self.record("bigon", vec![k], self.psi(&[k, k]), rhs);

            for t in 0..len {
                if t != k && t != k + 1 {
                    let a = self.dot(&top, t).multiply(&psi);
                    self.record("distant-dot", vec![k, t], a, psi.multiply(&self.dot(w, t)));
                }
            }
            for t in k + 2..len.saturating_sub(1) {
                if red(t) && red(t + 1) {
                    continue;
                }
                self.record("distant-crossings", vec![k, t], self.psi(&[k, t]), self.psi(&[t, k]));
            }
        }

        for k in 0..len.saturating_sub(2) {
            if (k..k + 3).filter(|&t| red(t)).count() > 1 {
                continue;
            }
            let (i, j, kk) = (l[k], l[k + 1], l[k + 2]);
            let lhs = self.psi(&[k, k + 1, k]).try_sub(&self.psi(&[k + 1, k, k + 1])).unwrap();
            let rhs = if i == kk && i == j + 1 {
                e.clone()
            } else if i == kk && i + 1 == j {
                e.scale(&rat(-1))
            } else {
                AlgebraElement::zero(n)
            };
            self.record("triple", vec![k], lhs, rhs);
        }
    }
}

/// Checks every local relation on every word over `1..=m` (`2 ≤ m ≤ max_m`)
/// of length `2..=max_len`, with label `m` red.
pub fn relation_suite(max_m: u32, max_len: usize, sign: CrossingSign) -> Vec<RelationCheck> {
    let mut out = Vec::new();
    for m in 2..=max_m {
        for len in 2..=max_len {
            for letters in all_words(m, len) {
                let w = Word::from_letters(&letters);
                let p = problem_of_word(m, &w);
                Suite {
                    p: &p,
                    w: &w,
                    sign,
                    out: &mut out,
                }
                .run();
            }
        }
    }
    out
}

/// Relation checks on one total word.
pub fn relations_on_word(p: &Problem, w: &Word, sign: CrossingSign) -> Result<Vec<RelationCheck>> {
    w.check(p)?;
    let mut out = Vec::new();
    Suite {
        p,
        w: &w.totalization(),
        sign,
        out: &mut out,
    }
    .run();
    Ok(out)
}

fn all_words(m: u32, len: usize) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (1..=m).map(move |l| {
                    let mut v = w.clone();
                    v.push(l);
                    v
                })
            })
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relations_hold_for_small_words() {
        let checks = relation_suite(2, 3, CrossingSign::Consistent);
        let failed: Vec<_> = checks.iter().filter(|c| !c.holds).collect();
        assert!(failed.is_empty(), "{failed:?}");
        for rel in ["nil-hecke", "dot-slide", "bigon", "distant-dot", "triple"] {
            assert!(checks.iter().any(|c| c.relation == rel), "{rel} not exercised");
        }
    }

    #[test]
    fn displayed_sign_breaks_bigon() {
        let checks = relation_suite(2, 2, CrossingSign::Displayed);
        assert!(checks.iter().any(|c| c.relation == "bigon" && !c.holds));
    }
}
