//! Counit, coproduct and antipode of O(SU_q(2)).

use std::collections::BTreeMap;
use std::fmt;

use super::element::{HElement, DEFAULT_TERM_BUDGET};
use super::monomial::{pbw_product, Generator, Pbw};
use crate::error::{Error, Result};
use crate::laurent::QLaurent;
use crate::rational::Rational;

/// Element of `H ⊗ H` with both legs in PBW normal form.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct HTensor {
    terms: BTreeMap<(Pbw, Pbw), QLaurent>,
}

impl HTensor {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::simple(Pbw::UNIT, Pbw::UNIT, QLaurent::one())
    }

    /// `c · x ⊗ y` for basis monomials.
    pub fn simple(x: Pbw, y: Pbw, c: QLaurent) -> Self {
        let mut t = Self::zero();
        t.add_term((x, y), &c);
        t
    }

    /// `x ⊗ y` for arbitrary elements.
    pub fn tensor(x: &HElement, y: &HElement) -> Self {
        let mut t = Self::zero();
        for (mx, cx) in x.terms() {
            for (my, cy) in y.terms() {
                t.add_term((*mx, *my), &cx.mul(cy));
            }
        }
        t
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Pbw, Pbw), &QLaurent)> {
        self.terms.iter()
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

    fn add_term(&mut self, key: (Pbw, Pbw), c: &QLaurent) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(key).or_default();
        slot.add_assign_ref(c);
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, &c.neg());
        }
        out
    }

    /// Product in the tensor-product algebra, `(x⊗y)(x'⊗y') = xx' ⊗ yy'`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let mut out = Self::zero();
        for ((x1, y1), c1) in &self.terms {
            for ((x2, y2), c2) in &other.terms {
                let c12 = c1.mul(c2);
                let left = pbw_product(x1, x2);
                let right = pbw_product(y1, y2);
                for (mx, cx) in &left {
                    let cx = c12.mul(cx);
                    for (my, cy) in &right {
                        out.add_term((*mx, *my), &cx.mul(cy));
                    }
                }
                if out.len() > DEFAULT_TERM_BUDGET {
                    return Err(Error::BudgetExceeded {
                        terms: out.len(),
                        budget: DEFAULT_TERM_BUDGET,
                    });
                }
            }
        }
        Ok(out)
    }

    /// Applies `f ⊗ g` for linear maps given on basis monomials.
    pub fn map_legs(
        &self,
        f: impl Fn(&Pbw) -> HElement,
        g: impl Fn(&Pbw) -> HElement,
    ) -> Self {
        let mut out = Self::zero();
        for ((x, y), c) in &self.terms {
            let fx = f(x);
            let gy = g(y);
            for (mx, cx) in fx.terms() {
                let cx = c.mul(cx);
                for (my, cy) in gy.terms() {
                    out.add_term((*mx, *my), &cx.mul(cy));
                }
            }
        }
        out
    }

    /// Multiplication map `m : H ⊗ H → H`.
    pub fn multiply(&self) -> HElement {
        let mut out = HElement::zero();
        for ((x, y), c) in &self.terms {
            for (m, s) in pbw_product(x, y) {
                out.add_term(m, &c.mul(&s));
            }
        }
        out
    }

    /// `(ε ⊗ id)`.
    pub fn counit_left(&self) -> HElement {
        let mut out = HElement::zero();
        for ((x, y), c) in &self.terms {
            out.add_term(*y, &c.mul(&counit_monomial(x)));
        }
        out
    }

    /// `(id ⊗ ε)`.
    pub fn counit_right(&self) -> HElement {
        let mut out = HElement::zero();
        for ((x, y), c) in &self.terms {
            out.add_term(*x, &c.mul(&counit_monomial(y)));
        }
        out
    }
}

impl fmt::Display for HTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((x, y), c)| format!("({c})*{x}⊗{y}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for HTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HTensor({self})")
    }
}

fn counit_monomial(m: &Pbw) -> QLaurent {
    // ε(α) = ε(α*) = 1, ε(β) = ε(β*) = 0
    if m.b == 0 && m.c == 0 {
        QLaurent::one()
    } else {
        QLaurent::zero()
    }
}

/// The counit `ε`, an algebra map to the coefficient ring.
pub fn counit(x: &HElement) -> QLaurent {
    let mut acc = QLaurent::zero();
    for (m, c) in x.terms() {
        acc.add_assign_ref(&c.mul(&counit_monomial(m)));
    }
    acc
}

/// `Δ` on a generator:
/// `Δ(α) = α⊗α - qβ*⊗β`, `Δ(β) = β⊗α + α*⊗β` and their stars.
pub fn coproduct_generator(g: Generator) -> HTensor {
    use Generator::*;
    let m = |g: Generator| g.monomial();
    let mq = QLaurent::monomial(Rational::from_int(-1), 1);
    match g {
        Alpha => HTensor::simple(m(Alpha), m(Alpha), QLaurent::one())
            .add(&HTensor::simple(m(BetaStar), m(Beta), mq)),
        AlphaStar => HTensor::simple(m(AlphaStar), m(AlphaStar), QLaurent::one())
            .add(&HTensor::simple(m(Beta), m(BetaStar), mq)),
        Beta => HTensor::simple(m(Beta), m(Alpha), QLaurent::one())
            .add(&HTensor::simple(m(AlphaStar), m(Beta), QLaurent::one())),
        BetaStar => HTensor::simple(m(BetaStar), m(AlphaStar), QLaurent::one())
            .add(&HTensor::simple(m(Alpha), m(BetaStar), QLaurent::one())),
    }
}

/// `Δ`, extended multiplicatively from the generators.
pub fn coproduct(x: &HElement) -> Result<HTensor> {
    let mut out = HTensor::zero();
    for (m, c) in x.terms() {
        let mut t = HTensor::simple(Pbw::UNIT, Pbw::UNIT, c.clone());
        for g in m.word() {
            t = t.mul(&coproduct_generator(g))?;
        }
        out = out.add(&t);
    }
    Ok(out)
}

/// `S` on a basis monomial. As an antihomomorphism,
/// `S(α^k β^b β*^c) = S(β*)^c S(β)^b S(α)^k` with `S(α) = α*`,
/// `S(β) = -qβ`, `S(β*) = -q^{-1}β*`, `S(α*) = α`.
fn antipode_monomial(m: &Pbw) -> HElement {
    let mut acc = HElement::one();
    for g in m.word().into_iter().rev() {
        let image = match g {
            Generator::Alpha => HElement::generator(Generator::AlphaStar),
            Generator::AlphaStar => HElement::generator(Generator::Alpha),
            Generator::Beta => HElement::term(
                Pbw::new(0, 1, 0),
                QLaurent::monomial(Rational::from_int(-1), 1),
            ),
            Generator::BetaStar => HElement::term(
                Pbw::new(0, 0, 1),
                QLaurent::monomial(Rational::from_int(-1), -1),
            ),
        };
        acc = acc.mul(&image);
    }
    acc
}

/// The antipode `S`.
pub fn antipode(x: &HElement) -> HElement {
    let mut out = HElement::zero();
    for (m, c) in x.terms() {
        out = out.add(&antipode_monomial(m).scale(c));
    }
    out
}

/// `m ∘ (S ⊗ id) ∘ Δ`.
pub fn antipode_left_convolution(x: &HElement) -> Result<HElement> {
    Ok(coproduct(x)?
        .map_legs(|m| antipode(&HElement::monomial(*m)), |m| HElement::monomial(*m))
        .multiply())
}

/// `m ∘ (id ⊗ S) ∘ Δ`.
pub fn antipode_right_convolution(x: &HElement) -> Result<HElement> {
    Ok(coproduct(x)?
        .map_legs(|m| HElement::monomial(*m), |m| antipode(&HElement::monomial(*m)))
        .multiply())
}

#[cfg(test)]
mod tests {
    use super::*;
    use Generator::*;

    #[test]
    fn coproduct_of_alpha_matches_formula() {
        let d = coproduct(&HElement::generator(Alpha)).unwrap();
        let expect = HTensor::simple(Pbw::new(1, 0, 0), Pbw::new(1, 0, 0), QLaurent::one()).add(
            &HTensor::simple(
                Pbw::new(0, 0, 1),
                Pbw::new(0, 1, 0),
                QLaurent::monomial(Rational::from_int(-1), 1),
            ),
        );
        assert_eq!(d, expect);
    }

    #[test]
    fn antipode_on_betas() {
        let s_beta = antipode(&HElement::generator(Beta));
        assert_eq!(s_beta, HElement::generator(Beta).scale(&QLaurent::monomial(Rational::from_int(-1), 1)));
        let s_betastar = antipode(&HElement::generator(BetaStar));
        assert_eq!(
            s_betastar,
            HElement::generator(BetaStar).scale(&QLaurent::monomial(Rational::from_int(-1), -1))
        );
        assert_eq!(antipode(&HElement::generator(Alpha)), HElement::generator(AlphaStar));
    }

    #[test]
    fn unit_axioms() {
        assert_eq!(coproduct(&HElement::one()).unwrap(), HTensor::one());
        assert_eq!(counit(&HElement::one()), QLaurent::one());
        assert_eq!(antipode(&HElement::one()), HElement::one());
    }

    #[test]
    fn counit_on_generators() {
        assert_eq!(counit(&HElement::generator(Alpha)), QLaurent::one());
        assert!(counit(&HElement::generator(Beta)).is_zero());
    }
}
