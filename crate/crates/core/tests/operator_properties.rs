//! Property tests for twisted group ring and shift operators.

mod common;

use common::{perm_operator, polynomial, rational_function};
use proptest::prelude::*;

use klrw_core::exact::RationalFunction;
use klrw_core::operators::{Alphabet, ShiftOperator};

fn shift_operator() -> impl Strategy<Value = ShiftOperator> {
    // x_{1,1}, x_{2,1}, x_{2,2}
    let al = Alphabet::triangular(2);
    prop::collection::vec((rational_function(3, 2), prop::collection::vec(-1i32..=1, 3)), 1..=3).prop_map(move |terms| {
        terms.into_iter().fold(ShiftOperator::zero(&al), |acc, (c, a)| {
            acc.try_add(&ShiftOperator::term(&al, c, a)).expect("same alphabet")
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn perm_composition_is_associative(a in perm_operator(3, 2), b in perm_operator(3, 2), c in perm_operator(3, 2)) {
        prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
    }

    #[test]
    fn perm_action_is_a_homomorphism(a in perm_operator(4, 2), b in perm_operator(4, 2), f in polynomial(4, 3, 3)) {
        prop_assert_eq!(a.compose(&b).apply(&f), a.apply_rational(&b.apply(&f)));
    }

    #[test]
    fn shift_composition_is_associative(a in shift_operator(), b in shift_operator(), c in shift_operator()) {
        prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
    }

    #[test]
    fn shift_action_is_a_homomorphism(a in shift_operator(), b in shift_operator(), f in polynomial(3, 3, 3)) {
        let f = RationalFunction::from_poly(f);
        prop_assert_eq!(a.compose(&b).apply(&f), a.apply(&b.apply(&f)));
    }
}
