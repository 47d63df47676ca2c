//! Shared proptest strategies.
#![allow(dead_code)]

use proptest::prelude::*;

use klrw_core::exact::rational::rat;
use klrw_core::exact::{Monomial, Perm, Polynomial, RationalFunction};
use klrw_core::operators::PermOperator;

/// Polynomials in `nvars` variables of total degree at most `max_degree`.
pub fn polynomial(nvars: usize, max_degree: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec(0..=max_degree, nvars), -5i64..=5), 0..=max_terms).prop_map(move |terms| {
        Polynomial::from_terms(
            nvars,
            terms.into_iter().map(|(mut e, c)| {
                // Trim from the right until the degree bound holds.
                let mut k = e.len();
                while e.iter().sum::<u32>() > max_degree {
                    k -= 1;
                    e[k] = e[k].saturating_sub(e.iter().sum::<u32>() - max_degree);
                }
                (Monomial(e), rat(c))
            }),
        )
    })
}

/// Up to `max_factors` factors `Y_i - Y_j + c` or `Y_i + c`.
pub fn linear_factors(nvars: usize, max_factors: usize) -> impl Strategy<Value = Vec<Polynomial>> {
    prop::collection::vec((0..nvars, 0..nvars, -2i64..=2), 0..=max_factors).prop_map(move |factors| {
        factors
            .into_iter()
            .map(|(i, j, c)| {
                let shift = Polynomial::from_int(nvars, c);
                if i == j {
                    &Polynomial::var(nvars, i) + &shift
                } else {
                    &(&Polynomial::var(nvars, i) - &Polynomial::var(nvars, j)) + &shift
                }
            })
            .collect()
    })
}

/// The expanded product of some linear factors.
pub fn denominator(nvars: usize, max_factors: usize) -> impl Strategy<Value = Polynomial> {
    linear_factors(nvars, max_factors).prop_map(move |fs| fs.iter().fold(Polynomial::one(nvars), |acc, f| &acc * f))
}

/// Rational functions whose denominators are products of linear factors, as
/// the operators produce them.
pub fn rational_function(nvars: usize, max_factors: usize) -> impl Strategy<Value = RationalFunction> {
    (polynomial(nvars, 3, 3), linear_factors(nvars, max_factors))
        .prop_map(|(n, fs)| RationalFunction::from_factors(n, fs).expect("nonzero factors"))
}

pub fn perm(n: usize) -> impl Strategy<Value = Perm> {
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|images| Perm::from_images(images).expect("shuffle is a bijection"))
}

pub fn perm_operator(nvars: usize, max_terms: usize) -> impl Strategy<Value = PermOperator> {
    prop::collection::vec((rational_function(nvars, 1), perm(nvars)), 1..=max_terms).prop_map(move |terms| {
        terms
            .into_iter()
            .fold(PermOperator::zero(nvars), |acc, (c, w)| acc.try_add(&PermOperator::term(c, w)).expect("same ring"))
    })
}
