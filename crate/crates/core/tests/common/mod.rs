//! Oracles and generators shared by the integration targets.

#![allow(dead_code)]

use std::collections::BTreeMap;

use dashu_int::IBig;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::RngExt;

use qinstanton_core::{Generator, HElement, Pbw, QLaurent, Rational, RingMatrix};
use Generator::*;

pub fn q_mono(c: i64, e: i32) -> QLaurent {
    QLaurent::monomial(Rational::from_int(c), e)
}

/// Rewrite rule for an adjacent pair that is not in PBW order.
fn rewrite(pair: (Generator, Generator)) -> Option<Vec<(QLaurent, Vec<Generator>)>> {
    Some(match pair {
        (Beta, Alpha) => vec![(q_mono(1, -1), vec![Alpha, Beta])],
        (BetaStar, Alpha) => vec![(q_mono(1, -1), vec![Alpha, BetaStar])],
        (BetaStar, Beta) => vec![(q_mono(1, 0), vec![Beta, BetaStar])],
        (Beta, AlphaStar) => vec![(q_mono(1, 1), vec![AlphaStar, Beta])],
        (BetaStar, AlphaStar) => vec![(q_mono(1, 1), vec![AlphaStar, BetaStar])],
        (AlphaStar, Alpha) => vec![(q_mono(1, 0), vec![]), (q_mono(-1, 0), vec![Beta, BetaStar])],
        (Alpha, AlphaStar) => vec![(q_mono(1, 0), vec![]), (q_mono(-1, 2), vec![Beta, BetaStar])],
        _ => return None,
    })
}

fn word_to_pbw(w: &[Generator]) -> Pbw {
    let count = |g| w.iter().filter(|x| **x == g).count();
    let (a, a_star) = (count(Alpha) as i32, count(AlphaStar) as i32);
    assert!(a == 0 || a_star == 0, "irreducible word mixes α and α*");
    Pbw::new(a - a_star, count(Beta) as u32, count(BetaStar) as u32)
}

/// Normal form by naive leftmost rewriting of free words, independent of the
/// closed-form monomial product.
pub fn rewrite_normal_form(expr: &[(QLaurent, Vec<Generator>)]) -> BTreeMap<Pbw, QLaurent> {
    let mut pending: Vec<(QLaurent, Vec<Generator>)> = expr.to_vec();
    let mut done: BTreeMap<Pbw, QLaurent> = BTreeMap::new();
    while let Some((c, w)) = pending.pop() {
        if c.is_zero() {
            continue;
        }
        let hit = (0..w.len().saturating_sub(1)).find_map(|i| rewrite((w[i], w[i + 1])).map(|r| (i, r)));
        match hit {
            Some((i, replacement)) => {
                for (rc, rw) in replacement {
                    let mut nw = w[..i].to_vec();
                    nw.extend(rw);
                    nw.extend_from_slice(&w[i + 2..]);
                    pending.push((c.mul(&rc), nw));
                }
            }
            None => {
                let slot = done.entry(word_to_pbw(&w)).or_default();
                slot.add_assign_ref(&c);
            }
        }
    }
    done.retain(|_, c| !c.is_zero());
    done
}

pub fn terms_of(x: &HElement) -> BTreeMap<Pbw, QLaurent> {
    x.terms().map(|(m, c)| (*m, c.clone())).collect()
}

pub fn generator() -> impl Strategy<Value = Generator> {
    prop_oneof![Just(Alpha), Just(AlphaStar), Just(Beta), Just(BetaStar)]
}

pub fn word(max_len: usize) -> impl Strategy<Value = Vec<Generator>> {
    prop::collection::vec(generator(), 0..=max_len)
}

pub fn free_expr(max_len: usize) -> impl Strategy<Value = Vec<(QLaurent, Vec<Generator>)>> {
    prop::collection::vec(((-4i64..=4), (-2i32..=2), word(max_len)), 1..4)
        .prop_map(|ts| ts.into_iter().map(|(c, e, w)| (q_mono(c, e), w)).collect())
}

/// Elements with at most `terms` monomials of degree at most `degree`.
pub fn element(terms: usize, degree: i32) -> impl Strategy<Value = HElement> {
    prop::collection::vec(
        ((-degree..=degree), 0..=degree as u32, 0..=degree as u32, -3i64..=3, -2i32..=2),
        1..=terms,
    )
    .prop_map(|ts| {
        let mut x = HElement::zero();
        for (k, b, c, r, e) in ts {
            x.add_term(Pbw::new(k, b, c), &q_mono(r, e));
        }
        x
    })
}

pub fn random_int_matrix(rng: &mut StdRng, n: usize) -> RingMatrix<IBig> {
    RingMatrix::from_fn(n, |_, _| IBig::from(rng.random_range(-6i64..=6)))
}

pub fn int_matrix(n: usize) -> impl Strategy<Value = RingMatrix<IBig>> {
    prop::collection::vec(-6i64..=6, n * n).prop_map(move |xs| {
        RingMatrix::from_fn(n, |i, j| IBig::from(xs[i * n + j]))
    })
}
