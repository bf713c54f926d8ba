//! Substituting a rational value for `q`.

use num_complex::Complex64;

use super::element::HElement;
use crate::error::{Error, Result};
use crate::laurent::QLaurent;
use crate::rational::Rational;

/// `x` with `q ↦ q0` in every coefficient. The PBW basis is the same for
/// every nonzero `q0`, so the result is still in normal form.
pub fn eval_q(x: &HElement, q0: &Rational) -> Result<HElement<Rational>> {
    if q0.is_zero() {
        return Err(Error::ZeroQ);
    }
    Ok(x.map_coeffs(|c| c.eval(q0).expect("q0 checked nonzero")))
}

/// Product in O(SU_{q0}(2)).
pub fn mul_at(
    x: &HElement<Rational>,
    y: &HElement<Rational>,
    q0: &Rational,
    budget: usize,
) -> Result<HElement<Rational>> {
    if q0.is_zero() {
        return Err(Error::ZeroQ);
    }
    x.mul_with(y, budget, |shift, s: &QLaurent| {
        s.shift(shift).eval(q0).expect("q0 checked nonzero")
    })
}

/// Involution in O(SU_{q0}(2)).
pub fn star_at(x: &HElement<Rational>, q0: &Rational) -> HElement<Rational> {
    x.star_with(|shift| q0.pow(shift).expect("q0 nonzero"))
}

impl HElement<Rational> {
    /// Value at the point `(α, β) = (a0, b0)` of `SU(2)`; meaningful for the
    /// commutative specialisation `q = 1`.
    pub fn eval_point(&self, a0: Complex64, b0: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in self.terms() {
            let a = if m.k >= 0 { a0 } else { a0.conj() };
            let v = a.powu(m.k.unsigned_abs()) * b0.powu(m.b) * b0.conj().powu(m.c);
            acc += v * c.to_f64();
        }
        acc
    }
}
