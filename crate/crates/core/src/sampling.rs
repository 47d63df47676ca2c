//! Random inputs for property checks and the command line.

use rand::Rng;

use crate::exact::rational::rat;
use crate::exact::{Monomial, Perm, Polynomial};

/// A polynomial with up to `terms` monomials of total degree at most
/// `max_degree` and small integer coefficients.
pub fn random_polynomial<R: Rng>(rng: &mut R, nvars: usize, max_degree: u32, terms: usize) -> Polynomial {
    let picked = (0..terms).map(|_| {
        let mut budget = rng.gen_range(0..=max_degree);
        let mut exps = vec![0u32; nvars];
        while budget > 0 && nvars > 0 {
            exps[rng.gen_range(0..nvars)] += 1;
            budget -= 1;
        }
        (Monomial(exps), rat(rng.gen_range(-3..=3)))
    });
    Polynomial::from_terms(nvars, picked)
}

/// Sum of `f` over every permutation of the variables within each block.
pub fn symmetrize(f: &Polynomial, blocks: &[std::ops::Range<usize>]) -> Polynomial {
    let n = f.nvars();
    let mut acc = f.clone();
    for b in blocks {
        let mut sum = Polynomial::zero(n);
        for local in Perm::all(b.len()) {
            let mut images: Vec<usize> = (0..n).collect();
            for (k, v) in b.clone().enumerate() {
                images[v] = b.start + local.image(k);
            }
            sum = &sum + &acc.permute(&Perm::from_images(images).expect("block permutation"));
        }
        acc = sum;
    }
    acc
}

/// A random polynomial symmetric in each block.
pub fn random_invariant<R: Rng>(rng: &mut R, nvars: usize, blocks: &[std::ops::Range<usize>], max_degree: u32) -> Polynomial {
    symmetrize(&random_polynomial(rng, nvars, max_degree, 3), blocks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn symmetrized_polynomials_are_symmetric() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..20 {
            let f = random_invariant(&mut rng, 5, &[0..2, 2..5], 3);
            assert!(f.is_symmetric(&[0, 1]) && f.is_symmetric(&[2, 3, 4]));
            assert!(f.degree().unwrap_or(0) <= 3);
        }
    }
}
