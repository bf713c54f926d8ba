//! The Hopf *-algebra O(SU_q(2)) in PBW normal form.
//!
//! Generators `α, β` with
//! `αβ = qβα, αβ* = qβ*α, ββ* = β*β, α*α + ββ* = 1, αα* + q²ββ* = 1`.
//! The normal-form basis is `α^a β^b β*^c` together with `α*^a β^b β*^c`
//! (`a > 0`); `q` is a formal real parameter fixed by `*`.

mod element;
mod hopf;
mod monomial;
mod specialize;
mod suite;
mod word;

pub use element::{Coefficient, HElement, DEFAULT_TERM_BUDGET};
pub use hopf::{
    antipode, antipode_left_convolution, antipode_right_convolution, coproduct,
    coproduct_generator, counit, HTensor,
};
pub use monomial::{pbw_product, Generator, Pbw};
pub use specialize::{eval_q, mul_at, star_at};
pub use suite::{property_suite, random_element, SuiteCheck, SuiteReport, SUITE_NAMES};
pub use word::{normal_form, word_normal_form, FreeExpr};

/// The five defining relations as `(lhs, rhs)` word pairs with coefficients.
pub fn defining_relations() -> Vec<(FreeExpr, FreeExpr)> {
    use crate::laurent::QLaurent;
    use crate::rational::Rational;
    use Generator::*;
    let one = QLaurent::one;
    vec![
        (vec![(one(), vec![Alpha, Beta])], vec![(QLaurent::q_pow(1), vec![Beta, Alpha])]),
        (
            vec![(one(), vec![Alpha, BetaStar])],
            vec![(QLaurent::q_pow(1), vec![BetaStar, Alpha])],
        ),
        (vec![(one(), vec![Beta, BetaStar])], vec![(one(), vec![BetaStar, Beta])]),
        (
            vec![(one(), vec![AlphaStar, Alpha]), (one(), vec![Beta, BetaStar])],
            vec![(one(), vec![])],
        ),
        (
            vec![
                (one(), vec![Alpha, AlphaStar]),
                (QLaurent::monomial(Rational::ONE, 2), vec![Beta, BetaStar]),
            ],
            vec![(one(), vec![])],
        ),
    ]
}

/// Star-conjugate of a free expression: reverse each word, star each letter.
pub fn star_free(expr: &FreeExpr) -> FreeExpr {
    expr.iter()
        .map(|(c, w)| (c.clone(), w.iter().rev().map(|g| g.star()).collect()))
        .collect()
}
