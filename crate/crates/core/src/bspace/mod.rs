//! The fibre product `B = B₀ ×_H B₁` at the piecewise-polynomial level.
//!
//! An element is a pair of polynomials in `t` with coefficients in (a
//! specialisation of) O(SU_q(2)): `left` is valid on `[0, ½]`, `right` on
//! `[½, 1]`. Elements of `B` additionally agree at `½` and are scalar at
//! `t = 0` and `t = 1`; those conditions are checked, not enforced, because
//! intermediate products need not satisfy them.

mod certificate;
mod fiber;
mod instanton;

pub use certificate::{verify, CheckResult, Certificate, QMode, CHECK_NAMES, SCHEMA_VERSION};
pub use fiber::classical_fiber;
pub use instanton::{
    instanton_idempotent, lift_c, lift_d, make_lifts, o_alpha, o_beta, specialize_matrix,
    DEFAULT_CHARGE_LIMIT,
};

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::ring::{HAlgebra, Ring};

/// Piecewise polynomial in `t`; `left[j]`, `right[j]` multiply `t^j`.
///
/// Neither vector has trailing zeros, so equal polynomials compare equal.
#[derive(Clone, Debug, PartialEq)]
pub struct BPoly<E> {
    pub left: Vec<E>,
    pub right: Vec<E>,
}

impl<E> BPoly<E> {
    /// Highest `t`-degree over both pieces; `0` for constants and zero.
    pub fn t_degree(&self) -> usize {
        self.left.len().max(self.right.len()).saturating_sub(1)
    }
}

/// Which piece of `[0, 1]` a polynomial belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Piece {
    Left,
    Right,
}

/// The ring of [`BPoly`] over a coefficient ring `R`.
#[derive(Clone, Debug, Default)]
pub struct Piecewise<R> {
    pub base: R,
}

impl<R: Ring> Piecewise<R> {
    pub fn new(base: R) -> Self {
        Piecewise { base }
    }

    fn trim(&self, mut v: Vec<R::Elem>) -> Vec<R::Elem> {
        while v.last().is_some_and(|x| self.base.is_zero(x)) {
            v.pop();
        }
        v
    }

    pub fn from_pieces(&self, left: Vec<R::Elem>, right: Vec<R::Elem>) -> BPoly<R::Elem> {
        BPoly {
            left: self.trim(left),
            right: self.trim(right),
        }
    }

    /// The `t`-independent element `e` on both pieces.
    pub fn constant(&self, e: R::Elem) -> BPoly<R::Elem> {
        self.from_pieces(vec![e.clone()], vec![e])
    }

    pub fn map<S: Ring>(
        &self,
        target: &Piecewise<S>,
        x: &BPoly<R::Elem>,
        f: impl Fn(&R::Elem) -> Result<S::Elem>,
    ) -> Result<BPoly<S::Elem>> {
        let left = x.left.iter().map(&f).collect::<Result<Vec<_>>>()?;
        let right = x.right.iter().map(&f).collect::<Result<Vec<_>>>()?;
        Ok(target.from_pieces(left, right))
    }

    fn add_polys(&self, a: &[R::Elem], b: &[R::Elem]) -> Vec<R::Elem> {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|j| match (a.get(j), b.get(j)) {
                (Some(x), Some(y)) => self.base.add(x, y),
                (Some(x), None) | (None, Some(x)) => x.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        self.trim(out)
    }

    fn mul_polys(&self, a: &[R::Elem], b: &[R::Elem]) -> Result<Vec<R::Elem>> {
        if a.is_empty() || b.is_empty() {
            return Ok(Vec::new());
        }
        let mut out = vec![self.base.zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if self.base.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                let p = self.base.mul(x, y)?;
                out[i + j] = self.base.add(&out[i + j], &p);
            }
        }
        Ok(self.trim(out))
    }

    fn eq_polys(&self, a: &[R::Elem], b: &[R::Elem]) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| self.base.eq(x, y))
    }
}

impl<R: HAlgebra> Piecewise<R> {
    /// Formal evaluation of one piece's polynomial at any rational `t0`.
    pub fn eval_piece(&self, x: &BPoly<R::Elem>, piece: Piece, t0: &Rational) -> R::Elem {
        let coeffs = match piece {
            Piece::Left => &x.left,
            Piece::Right => &x.right,
        };
        let mut acc = self.base.zero();
        for c in coeffs.iter().rev() {
            acc = self.base.add(&self.base.scale_rational(&acc, t0), c);
        }
        acc
    }

    /// Point evaluation on the piece containing `t0 ∈ [0, 1]`; `t0 = ½` uses
    /// the left piece.
    pub fn eval(&self, x: &BPoly<R::Elem>, t0: &Rational) -> Result<R::Elem> {
        let half = Rational::new(1, 2);
        if t0.signum() < 0 || *t0 > Rational::ONE {
            return Err(Error::OutOfRange(t0.to_string()));
        }
        let piece = match t0.cmp(&half) {
            Ordering::Greater => Piece::Right,
            _ => Piece::Left,
        };
        Ok(self.eval_piece(x, piece, t0))
    }

    /// `left(½) = right(½)`.
    pub fn is_continuous(&self, x: &BPoly<R::Elem>) -> bool {
        let half = Rational::new(1, 2);
        self.base.eq(
            &self.eval_piece(x, Piece::Left, &half),
            &self.eval_piece(x, Piece::Right, &half),
        )
    }

    /// `left(0)` and `right(1)` are scalar multiples of `1`.
    pub fn has_scalar_boundary(&self, x: &BPoly<R::Elem>) -> bool {
        self.base
            .is_scalar(&self.eval_piece(x, Piece::Left, &Rational::ZERO))
            && self
                .base
                .is_scalar(&self.eval_piece(x, Piece::Right, &Rational::ONE))
    }

    /// Continuity plus scalar boundary values.
    pub fn is_element(&self, x: &BPoly<R::Elem>) -> bool {
        self.is_continuous(x) && self.has_scalar_boundary(x)
    }

    /// Number of (`t`-power, basis monomial) pairs with a nonzero coefficient.
    pub fn term_count(&self, x: &BPoly<R::Elem>) -> usize {
        x.left
            .iter()
            .chain(&x.right)
            .map(|c| self.base.term_count(c))
            .sum()
    }

    /// Canonical text `[0,1/2]: <poly> ; [1/2,1]: <poly>` with each piece
    /// written as `(<coeff>)*t^j` in ascending powers.
    pub fn render(&self, x: &BPoly<R::Elem>) -> String {
        format!(
            "[0,1/2]: {} ; [1/2,1]: {}",
            self.render_poly(&x.left),
            self.render_poly(&x.right)
        )
    }

    fn render_poly(&self, p: &[R::Elem]) -> String {
        let parts: Vec<String> = p
            .iter()
            .enumerate()
            .filter(|(_, c)| !self.base.is_zero(c))
            .map(|(j, c)| {
                let c = self.base.render(c);
                match j {
                    0 => format!("({c})"),
                    1 => format!("({c})*t"),
                    j => format!("({c})*t^{j}"),
                }
            })
            .collect();
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

impl<R: Ring> Ring for Piecewise<R> {
    type Elem = BPoly<R::Elem>;

    fn zero(&self) -> Self::Elem {
        BPoly {
            left: Vec::new(),
            right: Vec::new(),
        }
    }

    fn one(&self) -> Self::Elem {
        self.constant(self.base.one())
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        BPoly {
            left: self.add_polys(&a.left, &b.left),
            right: self.add_polys(&a.right, &b.right),
        }
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        BPoly {
            left: a.left.iter().map(|x| self.base.neg(x)).collect(),
            right: a.right.iter().map(|x| self.base.neg(x)).collect(),
        }
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(BPoly {
            left: self.mul_polys(&a.left, &b.left)?,
            right: self.mul_polys(&a.right, &b.right)?,
        })
    }

    fn eq(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.eq_polys(&a.left, &b.left) && self.eq_polys(&a.right, &b.right)
    }

    /// `t` is real, so the involution acts coefficientwise.
    fn star(&self, a: &Self::Elem) -> Result<Self::Elem> {
        Ok(BPoly {
            left: a
                .left
                .iter()
                .map(|x| self.base.star(x))
                .collect::<Result<_>>()?,
            right: a
                .right
                .iter()
                .map(|x| self.base.star(x))
                .collect::<Result<_>>()?,
        })
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.left.is_empty() && a.right.is_empty()
    }

    fn from_int(&self, n: i64) -> Self::Elem {
        self.constant(self.base.from_int(n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qalgebra::{Generator, HElement};
    use crate::ring::QAlgebra;

    fn ring() -> Piecewise<QAlgebra> {
        Piecewise::new(QAlgebra::default())
    }

    fn t(p: i64, r: i64) -> Rational {
        Rational::new(p, r)
    }

    #[test]
    fn endpoint_values_of_the_lifts() {
        let b = ring();
        let a = o_alpha(&b);
        let be = o_beta(&b);
        let alpha = HElement::generator(Generator::Alpha);
        let beta = HElement::generator(Generator::Beta);
        assert_eq!(b.eval(&a, &Rational::ZERO).unwrap(), alpha);
        assert_eq!(b.eval(&a, &Rational::ONE).unwrap(), HElement::one());
        assert_eq!(b.eval(&be, &t(3, 4)).unwrap(), beta.scale_rational(&t(1, 2)));
        for k in 0..=10 {
            assert_eq!(b.eval(&a, &t(k, 20)).unwrap(), alpha);
        }
        // the lifts are continuous but not elements of B: ōα(0) = α
        assert!(b.is_continuous(&a) && b.is_continuous(&be));
        assert!(!b.has_scalar_boundary(&a));
    }

    #[test]
    fn eval_rejects_out_of_range() {
        let b = ring();
        let a = o_alpha(&b);
        assert!(matches!(b.eval(&a, &t(-1, 3)), Err(Error::OutOfRange(_))));
        assert!(matches!(b.eval(&a, &t(4, 3)), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn unit_and_trimming() {
        let b = ring();
        let a = o_alpha(&b);
        assert!(b.eq(&b.mul(&b.one(), &a).unwrap(), &a));
        let z = b.sub(&a, &a);
        assert!(b.is_zero(&z));
        assert_eq!(z, b.zero());
    }

    #[test]
    fn continuity_is_detected() {
        let b = ring();
        let x = b.from_pieces(vec![HElement::one()], vec![HElement::zero()]);
        assert!(!b.is_continuous(&x));
        assert!(b.has_scalar_boundary(&x));
        let y = b.from_pieces(
            vec![HElement::generator(Generator::Beta)],
            vec![HElement::generator(Generator::Beta)],
        );
        assert!(b.is_continuous(&y));
        assert!(!b.has_scalar_boundary(&y));
    }

    #[test]
    fn render_format() {
        let b = ring();
        assert_eq!(
            b.render(&o_alpha(&b)),
            "[0,1/2]: (a) ; [1/2,1]: (-1 + 2*a) + (2 - 2*a)*t"
        );
        assert_eq!(b.render(&b.zero()), "[0,1/2]: 0 ; [1/2,1]: 0");
    }
}
