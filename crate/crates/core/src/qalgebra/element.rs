use std::collections::{BTreeMap, HashMap};
use std::fmt;

use super::monomial::{for_each_product_term, Generator, Pbw};
use crate::error::{Error, Result};
use crate::laurent::QLaurent;
use crate::rational::Rational;

/// Default cap on the number of PBW terms any single product may produce.
pub const DEFAULT_TERM_BUDGET: usize = 1_000_000;

/// Coefficient field of an [`HElement`]: formal Laurent polynomials in `q`
/// or exact rationals after `q` has been specialised.
pub trait Coefficient: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_assign(&mut self, other: &Self);
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn scale(&self, r: &Rational) -> Self;
    /// Whether the printed form needs parentheses inside a product.
    fn is_compound(&self) -> bool;
}

impl Coefficient for QLaurent {
    fn zero() -> Self {
        QLaurent::zero()
    }
    fn one() -> Self {
        QLaurent::one()
    }
    fn is_zero(&self) -> bool {
        QLaurent::is_zero(self)
    }
    fn add_assign(&mut self, other: &Self) {
        self.add_assign_ref(other)
    }
    fn mul(&self, other: &Self) -> Self {
        QLaurent::mul(self, other)
    }
    fn neg(&self) -> Self {
        QLaurent::neg(self)
    }
    fn scale(&self, r: &Rational) -> Self {
        QLaurent::scale(self, r)
    }
    fn is_compound(&self) -> bool {
        self.len() > 1
    }
}

impl Coefficient for Rational {
    fn zero() -> Self {
        Rational::ZERO
    }
    fn one() -> Self {
        Rational::ONE
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn add_assign(&mut self, other: &Self) {
        *self += other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, r: &Rational) -> Self {
        self * r
    }
    fn is_compound(&self) -> bool {
        false
    }
}

/// An element of O(SU_q(2)) in PBW normal form.
///
/// `C = QLaurent` is the generic-`q` algebra; `C = Rational` holds elements
/// after substituting a rational value for `q` (see [`super::eval_q`]).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HElement<C = QLaurent> {
    terms: BTreeMap<Pbw, C>,
}

impl<C: Coefficient> Default for HElement<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coefficient> HElement<C> {
    pub fn zero() -> Self {
        HElement {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::scalar(C::one())
    }

    pub fn scalar(c: C) -> Self {
        Self::term(Pbw::UNIT, c)
    }

    pub fn term(m: Pbw, c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        HElement { terms }
    }

    pub fn monomial(m: Pbw) -> Self {
        Self::term(m, C::one())
    }

    pub fn generator(g: Generator) -> Self {
        Self::monomial(g.monomial())
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Pbw, C)>) -> Self {
        let mut out = Self::zero();
        for (m, c) in terms {
            out.add_term(m, &c);
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Pbw, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Pbw) -> Option<&C> {
        self.terms.get(m)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.keys().map(Pbw::degree).max().unwrap_or(0)
    }

    /// Largest power of `β` plus `β*` in any term.
    pub fn beta_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.b + m.c).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, m: Pbw, c: &C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                x.add_assign(c);
                if x.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let (mut big, small) = if self.len() >= other.len() {
            (self.clone(), other)
        } else {
            (other.clone(), self)
        };
        for (m, c) in &small.terms {
            big.add_term(*m, c);
        }
        big
    }

    pub fn neg(&self) -> Self {
        HElement {
            terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// `λ · x` for a coefficient `λ`.
    pub fn scale(&self, lambda: &C) -> Self {
        if lambda.is_zero() {
            return Self::zero();
        }
        HElement {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, lambda.mul(c)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        HElement {
            terms: self.terms.iter().map(|(m, c)| (*m, c.scale(r))).collect(),
        }
    }

    /// The coefficient of the unit when no other monomial occurs.
    pub fn is_scalar(&self) -> Option<C> {
        match self.terms.len() {
            0 => Some(C::zero()),
            1 => self.terms.get(&Pbw::UNIT).cloned(),
            _ => None,
        }
    }

    pub fn map_coeffs<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> HElement<D> {
        HElement {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, f(c)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    /// Product in normal form. `structure` turns the `q`-dependent structure
    /// constants of the PBW multiplication table into coefficients.
    pub(crate) fn mul_with(
        &self,
        other: &Self,
        budget: usize,
        structure: impl Fn(i32, &QLaurent) -> C,
    ) -> Result<Self> {
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero());
        }
        let mut acc: HashMap<Pbw, C> = HashMap::with_capacity(self.len() * other.len());
        for (mx, cx) in &self.terms {
            for (my, cy) in &other.terms {
                let cxy = cx.mul(cy);
                for_each_product_term(mx, my, |m, shift, s| {
                    let c = cxy.mul(&structure(shift, s));
                    acc.entry(m)
                        .and_modify(|x| x.add_assign(&c))
                        .or_insert(c);
                });
                if acc.len() > budget {
                    return Err(Error::BudgetExceeded {
                        terms: acc.len(),
                        budget,
                    });
                }
            }
        }
        let terms: BTreeMap<Pbw, C> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        if terms.len() > budget {
            return Err(Error::BudgetExceeded {
                terms: terms.len(),
                budget,
            });
        }
        Ok(HElement { terms })
    }

    /// Antilinear antihomomorphism fixing real coefficients.
    pub(crate) fn star_with(&self, structure: impl Fn(i32) -> C) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let (sm, shift) = m.star();
            out.add_term(sm, &c.mul(&structure(shift)));
        }
        out
    }
}

impl HElement<QLaurent> {
    /// Generic-`q` product with an explicit term budget.
    pub fn try_mul(&self, other: &Self, budget: usize) -> Result<Self> {
        self.mul_with(other, budget, |shift, s| s.shift(shift))
    }

    /// Generic-`q` product under [`DEFAULT_TERM_BUDGET`]; panics on overflow.
    pub fn mul(&self, other: &Self) -> Self {
        self.try_mul(other, DEFAULT_TERM_BUDGET)
            .expect("product exceeds default term budget")
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    pub fn star(&self) -> Self {
        self.star_with(QLaurent::q_pow)
    }

    pub fn q_scale(&self, e: i32) -> Self {
        self.scale(&QLaurent::q_pow(e))
    }
}

impl<C: Coefficient> fmt::Display for HElement<C> {
    /// Canonical text: `coeff*a^k*b^m*B^n` terms in monomial order joined by
    /// ` + ` / ` - `. Compound coefficients are parenthesised.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let mut text = c.to_string();
            let mut negative = false;
            if !c.is_compound() {
                if let Some(rest) = text.strip_prefix('-') {
                    negative = true;
                    text = rest.to_string();
                }
            }
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            let coeff = if c.is_compound() {
                format!("({text})")
            } else {
                text
            };
            if m.is_unit() {
                write!(f, "{coeff}")?;
            } else if coeff == "1" {
                write!(f, "{m}")?;
            } else {
                write!(f, "{coeff}*{m}")?;
            }
        }
        Ok(())
    }
}

impl<C: Coefficient> fmt::Debug for HElement<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HElement({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type H = HElement;

    fn a() -> H {
        H::generator(Generator::Alpha)
    }
    fn b() -> H {
        H::generator(Generator::Beta)
    }
    fn bs() -> H {
        H::generator(Generator::BetaStar)
    }

    #[test]
    fn unit_law_and_commuting_betas() {
        let x = a().add(&b().mul(&bs())).q_scale(2);
        assert_eq!(H::one().mul(&x), x);
        assert_eq!(x.mul(&H::one()), x);
        assert_eq!(b().mul(&bs()), bs().mul(&b()));
    }

    #[test]
    fn alpha_beta_q_commute() {
        assert_eq!(a().mul(&b()), b().mul(&a()).q_scale(1));
    }

    #[test]
    fn star_examples() {
        assert_eq!(a().star(), H::generator(Generator::AlphaStar));
        // (αβ)* = q α*β*
        let ab = a().mul(&b());
        let expect = H::term(Pbw::new(-1, 0, 1), QLaurent::q_pow(1));
        assert_eq!(ab.star(), expect);
        assert_eq!(ab.star().star(), ab);
    }

    #[test]
    fn scalar_detection() {
        let three = H::scalar(QLaurent::from_int(3));
        assert_eq!(three.is_scalar(), Some(QLaurent::from_int(3)));
        assert_eq!(a().is_scalar(), None);
        let astar_a = a().star().mul(&a());
        assert_eq!(astar_a.add(&b().mul(&bs())).is_scalar(), Some(QLaurent::one()));
    }

    #[test]
    fn budget_is_enforced() {
        let x = a().add(&b()).add(&bs()).add(&a().star());
        let x4 = x.pow(4);
        assert!(matches!(
            x4.try_mul(&x4, 10),
            Err(Error::BudgetExceeded { budget: 10, .. })
        ));
    }

    #[test]
    fn canonical_text() {
        let x = a()
            .mul(&b())
            .q_scale(-1)
            .sub(&H::scalar(QLaurent::from_int(2)))
            .add(&bs().scale(&QLaurent::from_terms([(0, Rational::ONE), (2, Rational::ONE)])));
        assert_eq!(x.to_string(), "-2 + (1 + q^2)*B + q^-1*a*b");
    }
}
