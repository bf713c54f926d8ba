//! Free `*`-words and their reduction to PBW normal form.

use super::element::HElement;
use super::monomial::Generator;
use crate::error::Result;
use crate::laurent::QLaurent;

/// A finite linear combination of words in `α, α*, β, β*`.
pub type FreeExpr = Vec<(QLaurent, Vec<Generator>)>;

/// Reduces a free expression to its unique PBW normal form.
///
/// Each word is multiplied out generator by generator; the result is checked
/// against `budget` after every product.
pub fn normal_form(expr: &[(QLaurent, Vec<Generator>)], budget: usize) -> Result<HElement> {
    let mut out = HElement::zero();
    for (coeff, word) in expr {
        let mut acc = HElement::scalar(coeff.clone());
        for g in word {
            acc = acc.try_mul(&HElement::generator(*g), budget)?;
        }
        out = out.add(&acc);
    }
    Ok(out)
}

/// Normal form of a single word with unit coefficient.
pub fn word_normal_form(word: &[Generator], budget: usize) -> Result<HElement> {
    normal_form(&[(QLaurent::one(), word.to_vec())], budget)
}
