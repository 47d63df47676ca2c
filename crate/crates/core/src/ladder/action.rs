//! Ladder diagrams acting between polynomial representations on words.

use crate::error::{Error, Result};
use crate::exact::Polynomial;
use crate::klrw::{AlgebraElement, Problem, Word};
use crate::operators::PermOperator;

use super::merge::LadderContext;

/// A ladder from a `χ`-parabolic word at the bottom to a `χ'`-parabolic word
/// at the top with the same letters.
#[derive(Clone, Debug)]
pub struct Ladder {
    ctx: LadderContext,
    bottom_problem: Problem,
    top_problem: Problem,
    bottom: Word,
    top: Word,
}

impl Ladder {
    pub fn new(ctx: LadderContext, m: u32, v: Vec<usize>, bottom: &Word, top: &Word) -> Result<Self> {
        let bottom_problem = Problem::new(m, v.clone(), ctx.chi().to_vec())?;
        let top_problem = Problem::new(m, v, ctx.chi_prime().to_vec())?;
        bottom.check(&bottom_problem)?;
        top.check(&top_problem)?;
        if !bottom.is_chi_parabolic(&bottom_problem) {
            return Err(Error::InvalidWord(format!("{bottom} is not parabolic for {:?}", ctx.chi())));
        }
        if !top.is_chi_parabolic(&top_problem) {
            return Err(Error::InvalidWord(format!("{top} is not parabolic for {:?}", ctx.chi_prime())));
        }
        Ok(Ladder {
            ctx,
            bottom_problem,
            top_problem,
            bottom: bottom.totalization(),
            top: top.totalization(),
        })
    }

    pub fn context(&self) -> &LadderContext {
        &self.ctx
    }

    pub fn bottom(&self) -> &Word {
        &self.bottom
    }

    pub fn top(&self) -> &Word {
        &self.top
    }

    pub fn nstrands(&self) -> usize {
        self.bottom.len()
    }

    pub fn bottom_problem(&self) -> &Problem {
        &self.bottom_problem
    }

    pub fn top_problem(&self) -> &Problem {
        &self.top_problem
    }

    pub fn bottom_reds(&self) -> Vec<usize> {
        self.bottom.red_positions(self.bottom_problem.m)
    }

    pub fn top_reds(&self) -> Vec<usize> {
        self.top.red_positions(self.top_problem.m)
    }

    /// The diagram moving strands from the bottom word to the top word
    /// along leftmost-first crossings, with no other decoration.
    pub fn bare_diagram(&self) -> Result<AlgebraElement> {
        let p = &self.bottom_problem;
        let target = self.top.letters();
        let mut current = self.bottom.clone();
        let mut out = AlgebraElement::idempotent(p, &current)?;
        for k in 0..target.len() {
            let letters = current.letters();
            if letters[k] == target[k] {
                continue;
            }
            let from = (k..letters.len()).find(|&q| letters[q] == target[k]).expect("same letters");
            for q in (k..from).rev() {
                let x = AlgebraElement::crossing(p, &current, q)?;
                current = current.swapped(q);
                out = x.multiply(&out);
            }
        }
        Ok(out)
    }

    /// Merge at the top, embedded in the strand variables.
    pub fn merge_operator(&self) -> PermOperator {
        self.ctx.merge_operator().embed(self.nstrands(), &self.top_reds())
    }

    /// The merge through red crossings, embedded at the top.
    pub fn expanded_merge_operator(&self) -> PermOperator {
        self.ctx.expanded_merge_operator().embed(self.nstrands(), &self.top_reds())
    }

    /// `merge ∘ diagram ∘ split` as an operator; `diagram` must run from
    /// the bottom word to the top word.
    pub fn action(&self, diagram: &AlgebraElement) -> Result<PermOperator> {
        self.check_diagram(diagram)?;
        Ok(self.merge_operator().compose(&diagram.op()))
    }

    fn check_diagram(&self, diagram: &AlgebraElement) -> Result<()> {
        let ends = diagram.source().zip(diagram.target());
        match ends {
            Some((s, t)) if s.totalization() == self.bottom && t.totalization() == self.top => Ok(()),
            _ => Err(Error::Invalid("malformed rung: diagram does not run between the ladder words".into())),
        }
    }

    fn symmetric_at(f: &Polynomial, reds: &[usize], blocks: &[std::ops::Range<usize>]) -> bool {
        blocks
            .iter()
            .all(|b| f.is_symmetric(&b.clone().map(|k| reds[k]).collect::<Vec<_>>()))
    }

    /// Applies the ladder to an `S_χ`-invariant polynomial in the strand
    /// variables of the bottom word.
    pub fn apply(&self, diagram: &AlgebraElement, f: &Polynomial) -> Result<Polynomial> {
        self.check_diagram(diagram)?;
        if !Self::symmetric_at(f, &self.bottom_reds(), &self.ctx.blocks()) {
            return Err(Error::NotInvariant("input to split".into()));
        }
        let g = diagram
            .apply(f)
            .as_polynomial()
            .ok_or_else(|| Error::Invalid("malformed rung: diagram left a denominator".into()))?;
        if !Self::symmetric_at(&g, &self.top_reds(), &self.ctx.blocks_common()) {
            return Err(Error::Invalid("malformed rung: diagram breaks the rung symmetry".into()));
        }
        let out = self.merge_operator().apply(&g);
        Ok(out.as_polynomial().expect("merge of an invariant polynomial is a polynomial"))
    }

    /// Compares `merge ∘ diagram` with the red-crossing form of the merge on
    /// the image of the bottom block projector.
    pub fn matches_expanded(&self, diagram: &AlgebraElement) -> Result<bool> {
        let op = self.action(diagram)?;
        let projector = self.ctx.block_projector().embed(self.nstrands(), &self.bottom_reds());
        let left = op.compose(&projector);
        let right = self.expanded_merge_operator().compose(&diagram.op()).compose(&projector);
        Ok(left == right)
    }

    /// Multiplication by `f` in the strand variables, as a diagram on `w`.
    pub fn polynomial_on(&self, w: &Word, f: &Polynomial) -> Result<AlgebraElement> {
        let degree = f.degree().map_or(0, |d| 2 * d as i64);
        if f.nvars() != self.nstrands() {
            return Err(Error::VariableCount {
                left: f.nvars(),
                right: self.nstrands(),
            });
        }
        Ok(AlgebraElement::from_operator(w.clone(), w.clone(), PermOperator::multiplication(f.clone()), degree))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::polynomial::elementary_symmetric;

    fn ladder() -> Ladder {
        let ctx = LadderContext::new(&[0, 0, 1], 0, 1).unwrap();
        let bottom = Word::parse("2^2,1,2").unwrap();
        let top = Word::parse("2,1,2^2").unwrap();
        Ladder::new(ctx, 2, vec![1], &bottom, &top).unwrap()
    }

    #[test]
    fn bare_ladder_is_merge_after_crossing() {
        let l = ladder();
        let d = l.bare_diagram().unwrap();
        assert_eq!(d.target().unwrap(), l.top());
        // Reds at strands 0,1,3 at the bottom; the rung (red 1) moves past the black.
        let f = &elementary_symmetric(4, &[0, 1], 1) + &Polynomial::var(4, 3);
        let out = l.apply(&d, &f).unwrap();
        let reds = l.top_reds();
        assert_eq!(reds, vec![0, 2, 3]);
        assert!(out.is_symmetric(&[2, 3]));
        assert!(l.matches_expanded(&d).unwrap());
    }

    #[test]
    fn dot_on_black_commutes() {
        let l = ladder();
        let d = l.bare_diagram().unwrap();
        let dot = AlgebraElement::dot(l.bottom_problem(), l.bottom(), 2).unwrap();
        let dotted = d.multiply(&dot);
        assert!(l.matches_expanded(&dotted).unwrap());
        let f = Polynomial::var(4, 3);
        let y = Polynomial::var(4, 1);
        let left = l.apply(&dotted, &f).unwrap();
        let right = l.apply(&d, &f).unwrap();
        assert_eq!(left, &right * &y);
    }

    #[test]
    fn rejects_bad_inputs() {
        let l = ladder();
        let d = l.bare_diagram().unwrap();
        assert!(l.apply(&d, &Polynomial::var(4, 0)).is_err());
        let wrong = AlgebraElement::idempotent(l.bottom_problem(), l.bottom()).unwrap();
        assert!(l.action(&wrong).is_err());
    }
}
