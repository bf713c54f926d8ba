//! Lifts of the unitary `U` along `B₁ → H` and the instanton idempotents.

use super::{BPoly, Piece, Piecewise};
use crate::error::{Error, Result};
use crate::qalgebra::{eval_q, Generator, HElement};
use crate::rational::Rational;
use crate::ring::{HAlgebra, QAlgebra, Ring, SpecializedAlgebra};
use crate::ringmat::{milnor_block, RingMatrix};

/// Largest `|n|` accepted by front ends unless configured otherwise.
pub const DEFAULT_CHARGE_LIMIT: u32 = 8;

/// `ōα(t) = α` on `[0, ½]` and `(2t - 1) + 2(1 - t)α` on `[½, 1]`.
pub fn o_alpha<R: HAlgebra>(ring: &Piecewise<R>) -> BPoly<R::Elem> {
    lifted(ring, Generator::Alpha, true)
}

/// `ōβ(t) = β` on `[0, ½]` and `2(1 - t)β` on `[½, 1]`.
pub fn o_beta<R: HAlgebra>(ring: &Piecewise<R>) -> BPoly<R::Elem> {
    lifted(ring, Generator::Beta, false)
}

/// Right piece `(2t - 1)·[unital] + 2(1 - t)x`.
fn lifted<R: HAlgebra>(ring: &Piecewise<R>, g: Generator, unital: bool) -> BPoly<R::Elem> {
    let h = &ring.base;
    let x = h.generator(g);
    let two_x = h.add(&x, &x);
    let (c0, c1) = if unital {
        let two = h.from_int(2);
        (h.sub(&two_x, &h.one()), h.sub(&two, &two_x))
    } else {
        (two_x.clone(), h.neg(&two_x))
    };
    ring.from_pieces(vec![x], vec![c0, c1])
}

fn scale_q<R: HAlgebra>(ring: &Piecewise<R>, x: &BPoly<R::Elem>) -> Result<BPoly<R::Elem>> {
    let q = ring.constant(ring.base.q());
    ring.mul(&q, x)
}

/// `c = [[ōα, -q ōβ*], [ōβ, ōα*]]`, a lift of `U`.
pub fn lift_c<R: HAlgebra + Sync>(ring: &Piecewise<R>) -> Result<RingMatrix<BPoly<R::Elem>>> {
    let a = o_alpha(ring);
    let b = o_beta(ring);
    let a_star = ring.star(&a)?;
    let b_star = ring.star(&b)?;
    let top_right = ring.neg(&scale_q(ring, &b_star)?);
    Ok(RingMatrix::from_rows(vec![vec![a, top_right], vec![b, a_star]]))
}

/// `d = [[ōα*, ōβ*], [-q ōβ, ōα]] = c*`, a lift of `U⁻¹ = U*`.
pub fn lift_d<R: HAlgebra + Sync>(ring: &Piecewise<R>) -> Result<RingMatrix<BPoly<R::Elem>>> {
    let a = o_alpha(ring);
    let b = o_beta(ring);
    let a_star = ring.star(&a)?;
    let b_star = ring.star(&b)?;
    let bottom_left = ring.neg(&scale_q(ring, &b)?);
    Ok(RingMatrix::from_rows(vec![vec![a_star, b_star], vec![bottom_left, a]]))
}

type BMatrix<R> = RingMatrix<BPoly<<R as Ring>::Elem>>;

/// Lifts `(cₙ, dₙ)` of `Uⁿ` and `U⁻ⁿ`: `(cⁿ, dⁿ)` for `n ≥ 0` and
/// `(d^|n|, c^|n|)` for `n < 0`.
pub fn make_lifts<R: HAlgebra + Sync>(
    ring: &Piecewise<R>,
    n: i64,
) -> Result<(BMatrix<R>, BMatrix<R>)> {
    let c = lift_c(ring)?;
    let d = lift_d(ring)?;
    let m = u32::try_from(n.unsigned_abs()).map_err(|_| Error::DegreeExceeded {
        degree: u32::MAX,
        limit: DEFAULT_CHARGE_LIMIT,
    })?;
    let (cn, dn) = (c.pow(ring, m)?, d.pow(ring, m)?);
    Ok(if n >= 0 { (cn, dn) } else { (dn, cn) })
}

/// The charge `-n` instanton idempotent `pₙ ∈ M₄(B)`.
///
/// Both pieces come from the patching formula applied to the lifts; the
/// result is checked against the constant `B₀`-leg `diag(1, 1, 0, 0)` at the
/// gluing point. Budget overflows are reported with the charge and the
/// entry degree `4|n|` that was attempted.
pub fn instanton_idempotent<R: HAlgebra + Sync>(
    ring: &Piecewise<R>,
    n: i64,
) -> Result<RingMatrix<BPoly<R::Elem>>> {
    let charge = u32::try_from(n.unsigned_abs()).unwrap_or(u32::MAX);
    let budget_err = |e: Error| match e {
        Error::BudgetExceeded { terms, budget } => Error::InstantonBudget {
            charge,
            degree: charge.saturating_mul(4),
            terms,
            budget,
        },
        e => e,
    };
    let (c, d) = make_lifts(ring, n).map_err(budget_err)?;
    let p = milnor_block(ring, &c, &d).map_err(budget_err)?;
    let leg = RingMatrix::diag_projection(&ring.base, 2 * c.dim(), c.dim());
    let half = Rational::new(1, 2);
    for (i, e) in p.entries().iter().enumerate() {
        let at_half = ring.eval_piece(e, Piece::Left, &half);
        if !ring.base.eq(&at_half, &leg.entries()[i]) {
            return Err(Error::Invariant(format!(
                "entry {i} does not match the constant leg at t = 1/2"
            )));
        }
    }
    Ok(p)
}

/// Coefficientwise substitution `q ↦ q0`.
pub fn specialize_matrix(
    p: &RingMatrix<BPoly<HElement>>,
    target: &Piecewise<SpecializedAlgebra>,
) -> Result<RingMatrix<BPoly<HElement<Rational>>>> {
    let source = Piecewise::new(QAlgebra::default());
    let q0 = target.base.q0.clone();
    p.try_map(|e| source.map(target, e, |x| eval_q(x, &q0)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> Piecewise<QAlgebra> {
        Piecewise::new(QAlgebra::default())
    }

    fn unitary_u() -> RingMatrix<HElement> {
        let q = HElement::scalar(crate::QLaurent::q_pow(1));
        let b_star = HElement::generator(Generator::BetaStar);
        RingMatrix::from_rows(vec![
            vec![HElement::generator(Generator::Alpha), q.mul(&b_star).neg()],
            vec![
                HElement::generator(Generator::Beta),
                HElement::generator(Generator::AlphaStar),
            ],
        ])
    }

    fn at(
        b: &Piecewise<QAlgebra>,
        m: &RingMatrix<BPoly<HElement>>,
        t: &Rational,
    ) -> RingMatrix<HElement> {
        m.try_map(|e| b.eval(e, t)).unwrap()
    }

    #[test]
    fn zero_charge_lifts_are_identity() {
        let b = ring();
        let (c, d) = make_lifts(&b, 0).unwrap();
        let id = RingMatrix::identity(&b, 2);
        assert_eq!(c, id);
        assert_eq!(d, id);
    }

    #[test]
    fn lifts_reproduce_u_powers_on_left_piece() {
        let b = ring();
        let h = QAlgebra::default();
        let u = unitary_u();
        let u_star = u.star(&h).unwrap();
        let id = RingMatrix::identity(&h, 2);
        // U is unitary, so U* is the inverse the lifts must reproduce.
        assert_eq!(u_star.mul(&h, &u).unwrap(), id);
        assert_eq!(u.mul(&h, &u_star).unwrap(), id);
        let (c1, _) = make_lifts(&b, 1).unwrap();
        assert_eq!(at(&b, &c1, &Rational::new(1, 2)), u);
        let (c2, d2) = make_lifts(&b, 2).unwrap();
        let u2 = u.pow(&h, 2).unwrap();
        let u2_inv = u_star.pow(&h, 2).unwrap();
        for k in [0, 1, 3, 5] {
            let t = Rational::new(k, 10);
            assert_eq!(at(&b, &c2, &t), u2);
            assert_eq!(at(&b, &d2, &t), u2_inv);
            assert_eq!(at(&b, &d2, &t).mul(&h, &at(&b, &c2, &t)).unwrap(), id);
        }
        let (cm, dm) = make_lifts(&b, -2).unwrap();
        let t = Rational::new(1, 4);
        assert_eq!(at(&b, &cm, &t), u2_inv);
        assert_eq!(at(&b, &dm, &t), u2);
        assert_eq!(at(&b, &cm, &Rational::ONE), id);
        assert_eq!(at(&b, &dm, &Rational::ONE), id);
    }

    #[test]
    fn charge_zero_is_constant_projection() {
        let b = ring();
        let p = instanton_idempotent(&b, 0).unwrap();
        assert_eq!(p, RingMatrix::diag_projection(&b, 4, 2));
    }

    #[test]
    fn charge_one_blocks() {
        let b = ring();
        let p = instanton_idempotent(&b, 1).unwrap();
        let proj = RingMatrix::diag_projection(&QAlgebra::default(), 4, 2);
        for e in p.entries() {
            assert!(e.left.len() <= 1);
        }
        assert_eq!(p.map(|e| b.eval(e, &Rational::new(1, 3)).unwrap()), proj);
        assert_eq!(p.map(|e| b.eval(e, &Rational::ONE).unwrap()), proj);
        // right piece agrees with the block formula evaluated pointwise
        let c = lift_c(&b).unwrap();
        let d = lift_d(&b).unwrap();
        let h = QAlgebra::default();
        let t = Rational::new(3, 4);
        let q = milnor_block(&h, &at(&b, &c, &t), &at(&b, &d, &t)).unwrap();
        assert_eq!(at(&b, &p, &t), q);
    }

    #[test]
    fn budget_overflow_reports_degree() {
        let b = Piecewise::new(QAlgebra { budget: 10 });
        match instanton_idempotent(&b, 3) {
            Err(Error::InstantonBudget { charge, degree, .. }) => {
                assert_eq!((charge, degree), (3, 12));
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
