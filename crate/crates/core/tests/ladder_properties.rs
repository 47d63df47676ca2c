//! Merges, splits and ladder bimodules on random invariant inputs.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use klrw_core::exact::Polynomial;
use klrw_core::klrw::{AlgebraElement, Word};
use klrw_core::ladder::{Ladder, LadderContext};
use klrw_core::operators::PermOperator;
use klrw_core::sampling::{random_invariant, random_polynomial, symmetrize};

/// `(χ, i, a)` with blocks of at most three reds.
fn context() -> impl Strategy<Value = LadderContext> {
    prop::sample::select(vec![
        (vec![0, 1], 0, 1),
        (vec![0, 0, 1], 0, 2),
        (vec![0, 0, 1, 1], 0, 1),
        (vec![0, 1, 1, 1], 0, 1),
        (vec![0, 0, 0, 1, 1], 0, 2),
        (vec![-1, 0, 1, 1, 2], 0, 1),
        (vec![2, 2, 3, 3, 3], 2, 2),
    ])
    .prop_map(|(chi, i, a)| LadderContext::new(&chi, i, a).unwrap())
}

fn ranges_to_vecs(blocks: &[std::ops::Range<usize>]) -> Vec<Vec<usize>> {
    blocks.iter().map(|b| b.clone().collect()).collect()
}

fn homogeneous_part(f: &Polynomial, d: u32) -> Polynomial {
    Polynomial::from_terms(f.nvars(), f.terms().filter(|(m, _)| m.degree() == d).map(|(m, c)| (m.clone(), c.clone())))
}

/// Reds at 0, 1, 3; the rung is the second `0`, which joins the `1` on top.
fn ladder() -> Ladder {
    let ctx = LadderContext::new(&[0, 0, 1], 0, 1).unwrap();
    let bottom = Word::parse("2^2,1,2").unwrap();
    let top = Word::parse("2,1,2^2").unwrap();
    Ladder::new(ctx, 2, vec![1], &bottom, &top).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn merge_is_polynomial_and_symmetric(ctx in context(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_invariant(&mut rng, ctx.n(), &ctx.blocks_common(), 4);
        let g = ctx.merge(&f).unwrap();
        for b in ranges_to_vecs(&ctx.blocks_prime()) {
            prop_assert!(g.is_symmetric(&b), "{} -> {}", f, g);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn merge_lowers_degree_by_the_rung_crossings(ctx in context(), seed in any::<u64>(), d in 0u32..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = homogeneous_part(&random_invariant(&mut rng, ctx.n(), &ctx.blocks(), 4), d);
        let split = ctx.split(&f).unwrap();
        prop_assert_eq!(&split, &f);
        // Symmetrizing an invariant only rescales it.
        let again = symmetrize(&f, &ctx.blocks());
        prop_assert_eq!(ctx.split(&again).unwrap(), again.clone());
        let g = ctx.merge(&split).unwrap();
        let drop = (ctx.a() * ctx.target().len()) as u32;
        if !g.is_zero() {
            prop_assert!(g.is_homogeneous());
            prop_assert_eq!(g.degree(), Some(d - drop));
        }
        if d < drop {
            prop_assert!(g.is_zero());
        }
    }

    #[test]
    fn ladder_action_is_bimodule_linear(seed in any::<u64>()) {
        let l = ladder();
        let n = l.nstrands();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let bottom_reds = l.bottom_reds();
        let top_reds = l.top_reds();
        let blocks_at = |reds: &[usize], blocks: Vec<std::ops::Range<usize>>| -> Vec<std::ops::Range<usize>> {
            blocks.into_iter().map(|b| reds[b.start]..reds[b.end - 1] + 1).collect()
        };
        // Symmetric in the red blocks on each side; anything on the black strand.
        let q = symmetrize(&random_polynomial(&mut rng, n, 2, 3), &blocks_at(&bottom_reds, l.context().blocks()));
        let p = symmetrize(&random_polynomial(&mut rng, n, 2, 3), &blocks_at(&top_reds, l.context().blocks_prime()));
        let d = l.bare_diagram().unwrap();
        let dressed = l
            .polynomial_on(l.top(), &p)
            .unwrap()
            .multiply(&d)
            .multiply(&l.polynomial_on(l.bottom(), &q).unwrap());
        prop_assume!(!dressed.is_zero());
        let lhs = l.action(&dressed).unwrap();
        let rhs = PermOperator::multiplication(p).compose(&l.action(&d).unwrap()).compose(&PermOperator::multiplication(q));
        prop_assert_eq!(lhs, rhs);
        let dot = AlgebraElement::dot(l.bottom_problem(), l.bottom(), 2).unwrap();
        prop_assert!(l.matches_expanded(&d.multiply(&dot)).unwrap());
    }
}
