//! Split and merge of red strands on polynomials in the red variables.

use std::ops::Range;

use crate::error::{Error, Result};
use crate::exact::{Monomial, Perm, Polynomial, Rational, RationalFunction};
use crate::klrw::element::longest_divided_difference;
use crate::klrw::problem::blocks_of;
use crate::operators::PermOperator;
use crate::weights::chi_plus_power;

/// `χ' = χ^{+i^a}`: the last `a` entries equal to `i` form the rung and are
/// raised to `i + 1`, joining the reds already labelled `i + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LadderContext {
    chi: Vec<i64>,
    chi_prime: Vec<i64>,
    i: i64,
    rung: Range<usize>,
    target: Range<usize>,
}

impl LadderContext {
    pub fn new(chi: &[i64], i: i64, a: usize) -> Result<Self> {
        if a == 0 {
            return Err(Error::Invalid("ladder multiplicity must be at least 1".into()));
        }
        let chi_prime = chi_plus_power(chi, i, a)
            .ok_or_else(|| Error::Invalid(format!("{chi:?} has fewer than {a} entries equal to {i}")))?;
        let end = chi.iter().rposition(|&c| c == i).expect("entry exists") + 1;
        let target_end = chi.iter().rposition(|&c| c == i + 1).map_or(end, |k| k + 1);
        Ok(LadderContext {
            chi: chi.to_vec(),
            chi_prime,
            i,
            rung: end - a..end,
            target: end..target_end,
        })
    }

    pub fn chi(&self) -> &[i64] {
        &self.chi
    }

    pub fn chi_prime(&self) -> &[i64] {
        &self.chi_prime
    }

    pub fn i(&self) -> i64 {
        self.i
    }

    pub fn a(&self) -> usize {
        self.rung.len()
    }

    pub fn n(&self) -> usize {
        self.chi.len()
    }

    /// Red indices (zero-based) of the rung.
    pub fn rung(&self) -> Range<usize> {
        self.rung.clone()
    }

    /// Red indices of the reds labelled `i + 1` before the merge.
    pub fn target(&self) -> Range<usize> {
        self.target.clone()
    }

    /// Rung and target together: the `i + 1` block of `χ'`.
    pub fn merged_block(&self) -> Range<usize> {
        self.rung.start..self.target.end
    }

    pub fn blocks(&self) -> Vec<Range<usize>> {
        blocks_of(&self.chi)
    }

    pub fn blocks_prime(&self) -> Vec<Range<usize>> {
        blocks_of(&self.chi_prime)
    }

    /// Blocks of `S_{χ,χ'} = S_χ ∩ S_{χ'}`.
    pub fn blocks_common(&self) -> Vec<Range<usize>> {
        let keys: Vec<i64> = self
            .chi
            .iter()
            .zip(&self.chi_prime)
            .map(|(&c, &d)| 2 * c + (d - c))
            .collect();
        blocks_of(&keys)
    }

    /// `Δ = Π (Y_k - Y_l)` over `k` in the target and `l` in the rung.
    pub fn delta(&self) -> Polynomial {
        let n = self.n();
        let mut d = Polynomial::one(n);
        for k in self.target() {
            for l in self.rung() {
                d = &d * &(&Polynomial::var(n, k) - &Polynomial::var(n, l));
            }
        }
        d
    }

    /// Minimal length representatives of `S_{χ'} / S_{χ,χ'}`: the rung is
    /// sent increasingly onto each `a`-subset of the merged block, the target
    /// increasingly onto its complement.
    pub fn coset_representatives(&self) -> Vec<Perm> {
        let block: Vec<usize> = self.merged_block().collect();
        let a = self.a();
        let mut out = Vec::new();
        for chosen in subsets(block.len(), a) {
            let mut images: Vec<usize> = (0..self.n()).collect();
            let rest: Vec<usize> = (0..block.len()).filter(|t| !chosen.contains(t)).collect();
            for (r, &t) in self.rung().zip(&chosen) {
                images[r] = block[t];
            }
            for (r, &t) in self.target().zip(&rest) {
                images[r] = block[t];
            }
            out.push(Perm::from_images(images).expect("bijection"));
        }
        out
    }

    /// `f ↦ Σ_σ f^σ / Δ^σ` as an operator on the red variables.
    pub fn merge_operator(&self) -> PermOperator {
        let delta = self.delta();
        let mut op = PermOperator::zero(self.n());
        for sigma in self.coset_representatives() {
            let c = RationalFunction::new(Polynomial::one(self.n()), delta.permute(&sigma)).expect("Δ is nonzero");
            op = op.try_add(&PermOperator::term(c, sigma)).expect("same ring");
        }
        op
    }

    /// The merge realized by red crossings:
    /// `(-1)^{ab} ∂_{w_0} · Y_R^{δ} Y_T^{δ}` on the merged block.
    pub fn expanded_merge_operator(&self) -> PermOperator {
        let n = self.n();
        let mut e = vec![0u32; n];
        for range in [self.rung(), self.target()] {
            let len = range.len();
            for (t, k) in range.enumerate() {
                e[k] = (len - 1 - t) as u32;
            }
        }
        let mono = PermOperator::multiplication(Polynomial::monomial(Rational::from_integer(1.into()), Monomial(e)));
        let block = self.merged_block();
        let op = longest_divided_difference(n, block.start, block.len()).compose(&mono);
        if (self.a() * self.target.len()) % 2 == 1 {
            op.neg()
        } else {
            op
        }
    }

    /// `∂_{w_0}^R Y_R^δ ∂_{w_0}^T Y_T^δ`, which fixes `S_{χ,χ'}`-invariants
    /// in the rung and target variables and lands in them.
    pub fn block_projector(&self) -> PermOperator {
        let n = self.n();
        let mut op = PermOperator::identity(n);
        for range in [self.rung(), self.target()] {
            let mut e = vec![0u32; n];
            let len = range.len();
            for (t, k) in range.clone().enumerate() {
                e[k] = (len - 1 - t) as u32;
            }
            let mono = PermOperator::multiplication(Polynomial::monomial(Rational::from_integer(1.into()), Monomial(e)));
            op = op.compose(&longest_divided_difference(n, range.start, len)).compose(&mono);
        }
        op
    }

    fn check_ring(&self, f: &Polynomial) -> Result<()> {
        if f.nvars() != self.n() {
            return Err(Error::VariableCount {
                left: f.nvars(),
                right: self.n(),
            });
        }
        Ok(())
    }

    /// The inclusion of `S_χ`-invariants into `S_{χ,χ'}`-invariants.
    pub fn split(&self, f: &Polynomial) -> Result<Polynomial> {
        self.check_ring(f)?;
        if let Some(b) = self.blocks().into_iter().find(|b| !f.is_symmetric(&b.clone().collect::<Vec<_>>())) {
            return Err(Error::NotInvariant(format!("reds {b:?}")));
        }
        Ok(f.clone())
    }

    /// `Σ_σ f^σ / Δ^σ` for an `S_{χ,χ'}`-invariant `f`.
    pub fn merge(&self, f: &Polynomial) -> Result<Polynomial> {
        self.check_ring(f)?;
        if let Some(b) = self.blocks_common().into_iter().find(|b| !f.is_symmetric(&b.clone().collect::<Vec<_>>())) {
            return Err(Error::NotInvariant(format!("reds {b:?}")));
        }
        // Every Δ^σ divides the Vandermonde V of the merged block, so the
        // sum is N / V with N = Σ f^σ (V / Δ^σ); integrality is V | N.
        let n = self.n();
        let block: Vec<usize> = self.merged_block().collect();
        let mut vandermonde = Polynomial::one(n);
        for (t, &k) in block.iter().enumerate() {
            for &l in &block[..t] {
                vandermonde = &vandermonde * &(&Polynomial::var(n, k) - &Polynomial::var(n, l));
            }
        }
        let delta = self.delta();
        let mut numerator = Polynomial::zero(n);
        for sigma in self.coset_representatives() {
            let cofactor = vandermonde.div_exact(&delta.permute(&sigma)).expect("Δ^σ divides the Vandermonde");
            numerator = &numerator + &(&f.permute(&sigma) * &cofactor);
        }
        Ok(numerator
            .div_exact(&vandermonde)
            .expect("merge of an invariant polynomial is a polynomial"))
    }
}

/// Increasing `k`-subsets of `0..n`, in lexicographic order.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for x in start..n {
            if n - x < k - current.len() {
                break;
            }
            current.push(x);
            rec(x + 1, n, k, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}
