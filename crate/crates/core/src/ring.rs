//! A minimal ring interface and the concrete rings used across the crate.
//!
//! Rings are values: a ring object carries whatever context its elements
//! need (a specialised `q`, a term budget) and the elements are plain data.

use std::fmt;

use dashu_int::IBig;

use crate::error::{Error, Result};
use crate::laurent::QLaurent;
use crate::qalgebra::{mul_at, star_at, Generator, HElement, DEFAULT_TERM_BUDGET};
use crate::rational::Rational;

pub trait Ring {
    type Elem: Clone + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Fallible so that symbolic rings can enforce a size budget.
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
    fn eq(&self, a: &Self::Elem, b: &Self::Elem) -> bool;

    /// Optional involution; rings without one return [`Error::NoStar`].
    fn star(&self, _a: &Self::Elem) -> Result<Self::Elem> {
        Err(Error::NoStar)
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        self.eq(a, &self.zero())
    }

    #[allow(clippy::wrong_self_convention)]
    fn from_int(&self, n: i64) -> Self::Elem {
        let mut acc = self.zero();
        let mut base = self.one();
        let mut k = n.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            base = self.add(&base, &base);
            k >>= 1;
        }
        if n < 0 {
            self.neg(&acc)
        } else {
            acc
        }
    }
}

/// The integers, with the trivial involution.
#[derive(Clone, Copy, Debug, Default)]
pub struct Integers;

impl Ring for Integers {
    type Elem = IBig;

    fn zero(&self) -> IBig {
        IBig::ZERO
    }
    fn one(&self) -> IBig {
        IBig::ONE
    }
    fn add(&self, a: &IBig, b: &IBig) -> IBig {
        a + b
    }
    fn neg(&self, a: &IBig) -> IBig {
        -a
    }
    fn mul(&self, a: &IBig, b: &IBig) -> Result<IBig> {
        Ok(a * b)
    }
    fn eq(&self, a: &IBig, b: &IBig) -> bool {
        a == b
    }
    fn star(&self, a: &IBig) -> Result<IBig> {
        Ok(a.clone())
    }
    fn from_int(&self, n: i64) -> IBig {
        IBig::from(n)
    }
}

/// O(SU_q(2)) over Laurent polynomials in a formal `q`.
#[derive(Clone, Copy, Debug)]
pub struct QAlgebra {
    pub budget: usize,
}

impl Default for QAlgebra {
    fn default() -> Self {
        QAlgebra {
            budget: DEFAULT_TERM_BUDGET,
        }
    }
}

impl Ring for QAlgebra {
    type Elem = HElement;

    fn zero(&self) -> HElement {
        HElement::zero()
    }
    fn one(&self) -> HElement {
        HElement::one()
    }
    fn add(&self, a: &HElement, b: &HElement) -> HElement {
        a.add(b)
    }
    fn neg(&self, a: &HElement) -> HElement {
        a.neg()
    }
    fn mul(&self, a: &HElement, b: &HElement) -> Result<HElement> {
        a.try_mul(b, self.budget)
    }
    fn eq(&self, a: &HElement, b: &HElement) -> bool {
        a == b
    }
    fn star(&self, a: &HElement) -> Result<HElement> {
        Ok(a.star())
    }
    fn is_zero(&self, a: &HElement) -> bool {
        a.is_zero()
    }
    fn from_int(&self, n: i64) -> HElement {
        HElement::scalar(QLaurent::from_int(n))
    }
}

/// O(SU_{q0}(2)) for a fixed nonzero rational `q0`.
#[derive(Clone, Debug)]
pub struct SpecializedAlgebra {
    pub q0: Rational,
    pub budget: usize,
}

impl SpecializedAlgebra {
    pub fn new(q0: Rational) -> Result<Self> {
        if q0.is_zero() {
            return Err(Error::ZeroQ);
        }
        Ok(SpecializedAlgebra {
            q0,
            budget: DEFAULT_TERM_BUDGET,
        })
    }
}

impl Ring for SpecializedAlgebra {
    type Elem = HElement<Rational>;

    fn zero(&self) -> Self::Elem {
        HElement::zero()
    }
    fn one(&self) -> Self::Elem {
        HElement::one()
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.add(b)
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.neg()
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        mul_at(a, b, &self.q0, self.budget)
    }
    fn eq(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        a == b
    }
    fn star(&self, a: &Self::Elem) -> Result<Self::Elem> {
        Ok(star_at(a, &self.q0))
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_zero()
    }
    fn from_int(&self, n: i64) -> Self::Elem {
        HElement::scalar(Rational::from_int(n))
    }
}

/// Rings whose elements live in (a specialisation of) O(SU_q(2)): they can
/// be scaled by rationals and tested for being scalar multiples of `1`.
pub trait HAlgebra: Ring {
    fn generator(&self, g: Generator) -> Self::Elem;
    /// The deformation parameter as a ring element.
    fn q(&self) -> Self::Elem;
    fn scale_rational(&self, a: &Self::Elem, r: &Rational) -> Self::Elem;
    fn is_scalar(&self, a: &Self::Elem) -> bool;
    fn term_count(&self, a: &Self::Elem) -> usize;
    fn render(&self, a: &Self::Elem) -> String;
}

impl HAlgebra for QAlgebra {
    fn generator(&self, g: Generator) -> HElement {
        HElement::generator(g)
    }
    fn q(&self) -> HElement {
        HElement::scalar(QLaurent::q_pow(1))
    }
    fn scale_rational(&self, a: &HElement, r: &Rational) -> HElement {
        a.scale_rational(r)
    }
    fn is_scalar(&self, a: &HElement) -> bool {
        a.is_scalar().is_some()
    }
    fn term_count(&self, a: &HElement) -> usize {
        a.len()
    }
    fn render(&self, a: &HElement) -> String {
        a.to_string()
    }
}

impl HAlgebra for SpecializedAlgebra {
    fn generator(&self, g: Generator) -> Self::Elem {
        HElement::generator(g)
    }
    fn q(&self) -> Self::Elem {
        HElement::scalar(self.q0.clone())
    }
    fn scale_rational(&self, a: &Self::Elem, r: &Rational) -> Self::Elem {
        a.scale_rational(r)
    }
    fn is_scalar(&self, a: &Self::Elem) -> bool {
        a.is_scalar().is_some()
    }
    fn term_count(&self, a: &Self::Elem) -> usize {
        a.len()
    }
    fn render(&self, a: &Self::Elem) -> String {
        a.to_string()
    }
}
