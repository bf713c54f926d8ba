use num_complex::Complex64;
use serde::Serialize;

use super::{commutator_f, rep_of_matrix, v_unitary, TruncOp, TruncRep};
use crate::error::{Error, Result};
use crate::laurent::QLaurent;
use crate::qalgebra::{Generator, HElement};
use crate::ring::QAlgebra;
use crate::ringmat::RingMatrix;

/// `U = [[α, -qβ*], [β, α*]]`.
pub fn unitary_u() -> RingMatrix<HElement> {
    let q_b_star =
        HElement::generator(Generator::BetaStar).scale(&QLaurent::q_pow(1));
    RingMatrix::from_rows(vec![
        vec![HElement::generator(Generator::Alpha), q_b_star.neg()],
        vec![
            HElement::generator(Generator::Beta),
            HElement::generator(Generator::AlphaStar),
        ],
    ])
}

/// `Uⁿ`, with `U⁻¹ = U*`.
pub fn u_power(n: i64) -> Result<RingMatrix<HElement>> {
    let h = QAlgebra::default();
    let u = unitary_u();
    let base = if n >= 0 { u } else { u.star(&h)? };
    base.pow(&h, n.unsigned_abs() as u32)
}

/// Smallest `N` for which the `n`-window holds every pairing summand of a
/// unitary whose entries shift `n` by at most `degree`.
pub fn required_window(k: u32, degree: u32) -> usize {
    2 * (k as usize + 2) * (degree as usize + 1)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PairingValue {
    /// `Tr((u⁻¹ - 1)[F̃,u]([F̃,u⁻¹][F̃,u])^k)`.
    pub trace: f64,
    /// `(-1)^k 2^{-(2k+1)}` times the trace.
    pub value: f64,
    /// Estimated bound on the `m`-truncation error of `value`.
    pub error_bound: f64,
}

/// The pairing expression for operators `u`, `u⁻¹` already on the truncated
/// space. Returns `(trace, value)`.
pub fn pairing_of_ops(u: &TruncOp, u_inv: &TruncOp, k: u32, rep: &TruncRep) -> (f64, f64) {
    let id = TruncOp::identity(rep, u.blocks());
    let fu = commutator_f(u, rep);
    let fu_inv = commutator_f(u_inv, rep);
    let pair = fu_inv.compose(&fu);
    let mut x = u_inv.sub(&id).compose(&fu);
    for _ in 0..k {
        x = x.compose(&pair);
    }
    let tr: Complex64 = x.trace();
    let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    let value = sign * tr.re / 2f64.powi(2 * k as i32 + 1);
    (tr.re, value)
}

fn is_unitary(u: &RingMatrix<HElement>) -> Result<bool> {
    let h = QAlgebra::default();
    let id = RingMatrix::identity(&h, u.dim());
    let us = u.star(&h)?;
    Ok(us.mul(&h, u)? == id && u.mul(&h, &us)? == id)
}

/// Heuristic `C·q₀^{2(M+1-2s)}` where `s` is the largest `m`-shift a chain
/// of `2k + 3` factors can realise and `C` collects operator-norm bounds.
fn truncation_bound(rep: &TruncRep, k: u32, shift: usize, norm: f64, blocks: usize) -> f64 {
    let factors = 2 * k as i32 + 3;
    let s = shift * factors as usize;
    let exponent = (rep.m_max() + 1).saturating_sub(2 * s) as i32;
    let c = 2f64.powi(factors) * norm.max(1.0).powi(factors) * blocks as f64
        * (2 * rep.n_max() + 1) as f64
        / (1.0 - rep.q0() * rep.q0());
    c * rep.q0().powi(2 * exponent) / 2f64.powi(2 * k as i32 + 1)
}

/// The odd Chern pairing of a unitary matrix over O(SU_q(2)).
///
/// Unitarity is checked exactly at generic `q` first; `u⁻¹` is taken to be
/// `u*`.
pub fn odd_pairing(u: &RingMatrix<HElement>, k: u32, rep: &TruncRep) -> Result<PairingValue> {
    if !is_unitary(u)? {
        return Err(Error::NotUnitary);
    }
    let degree = u.entries().iter().map(HElement::beta_degree).max().unwrap_or(0);
    let required = required_window(k, degree);
    if rep.n_max() < required {
        return Err(Error::WindowTooSmall {
            required,
            given: rep.n_max(),
        });
    }
    let h = QAlgebra::default();
    let op = rep_of_matrix(u, rep);
    let op_inv = rep_of_matrix(&u.star(&h)?, rep);
    let (trace, value) = pairing_of_ops(&op, &op_inv, k, rep);
    let shift = u.entries().iter().map(HElement::max_degree).max().unwrap_or(0) as usize;
    let norm = u
        .entries()
        .iter()
        .map(|e| e.terms().map(|(_, c)| c.eval_f64(rep.q0()).abs()).sum::<f64>())
        .fold(0.0, f64::max);
    Ok(PairingValue {
        trace,
        value,
        error_bound: truncation_bound(rep, k, shift, norm, u.dim()),
    })
}

/// `Tr((U⁻¹ - 1)[F̃,U]([F̃,U⁻¹][F̃,U])^k)` for the generator `U`.
pub fn trace_term(k: u32, rep: &TruncRep) -> Result<f64> {
    Ok(odd_pairing(&unitary_u(), k, rep)?.trace)
}

/// Pairing report in the order it is serialised.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairingReport {
    pub u_descriptor: String,
    pub n: i64,
    pub k: u32,
    pub q0: f64,
    #[serde(rename = "M")]
    pub m_cutoff: usize,
    #[serde(rename = "N")]
    pub n_window: usize,
    pub value: f64,
    pub error_bound: f64,
    pub nearest_integer: i64,
}

/// Pairing of `Uⁿ` on a window sized from its degree `|n|`.
pub fn pairing_u_power(n: i64, k: u32, q0: f64, m_cutoff: usize) -> Result<PairingReport> {
    let n_window = required_window(k, n.unsigned_abs() as u32);
    let rep = TruncRep::new(q0, m_cutoff, n_window)?;
    let v = odd_pairing(&u_power(n)?, k, &rep)?;
    Ok(PairingReport {
        u_descriptor: if n == 1 { "U".into() } else { format!("U^{n}") },
        n,
        k,
        q0,
        m_cutoff,
        n_window,
        value: v.value,
        error_bound: v.error_bound,
        nearest_integer: v.value.round() as i64,
    })
}

/// Pairing of `V = β e(0) + (1 - e(0))`.
pub fn pairing_v(k: u32, q0: f64, m_cutoff: usize) -> Result<PairingReport> {
    let n_window = required_window(k, 1);
    let rep = TruncRep::new(q0, m_cutoff, n_window)?;
    let v = v_unitary(&rep);
    let (_, value) = pairing_of_ops(&v, &v.adjoint(), k, &rep);
    Ok(PairingReport {
        u_descriptor: "V".into(),
        n: 1,
        k,
        q0,
        m_cutoff,
        n_window,
        value,
        // V involves no q-weights, so the m-cutoff introduces no error
        error_bound: 0.0,
        nearest_integer: value.round() as i64,
    })
}
