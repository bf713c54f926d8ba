//! Numerical index pairings with the odd Fredholm module of O(SU_q(2)) and
//! the classical winding degree.
//!
//! The Hilbert space `ℓ²(N) ⊗ ℓ²(Z)` is truncated to `0 ≤ m ≤ M`,
//! `|n| ≤ N`. Since `F` is diagonal in `n` and the generators shift `n` by at
//! most one, every pairing summand is supported in a finite `n`-range; the
//! window is sized so that this range is covered and the only truncation
//! error comes from the `m`-cutoff, where it is `O(q₀^{2M})`.

mod op;
mod pairing;
mod winding;

pub use op::TruncOp;
pub use pairing::{
    odd_pairing, pairing_of_ops, pairing_u_power, pairing_v, required_window, trace_term,
    u_power, unitary_u, PairingReport, PairingValue,
};
pub use winding::{winding_degree, WindingReport, DEFAULT_RESOLUTION, MIN_RESOLUTION};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qalgebra::{HElement, Pbw};
use crate::ringmat::RingMatrix;

/// Truncation data: `q₀ ∈ (0, 1)`, cutoffs `M`, `N` and `λ_m = √(1 - q₀^{2m})`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncRep {
    q0: f64,
    m_max: usize,
    n_max: usize,
    lambda: Vec<f64>,
    q_pow: Vec<f64>,
}

impl TruncRep {
    pub fn new(q0: f64, m_max: usize, n_max: usize) -> Result<Self> {
        if !(q0 > 0.0 && q0 < 1.0) {
            return Err(Error::InvalidTruncation(format!(
                "q0 = {q0} must lie strictly between 0 and 1"
            )));
        }
        if m_max == 0 {
            return Err(Error::InvalidTruncation("M must be positive".into()));
        }
        let q_pow: Vec<f64> = (0..=m_max + 1).map(|m| q0.powi(m as i32)).collect();
        let lambda = q_pow.iter().map(|p| (1.0 - p * p).sqrt()).collect();
        Ok(TruncRep {
            q0,
            m_max,
            n_max,
            lambda,
            q_pow,
        })
    }

    pub fn q0(&self) -> f64 {
        self.q0
    }

    pub fn m_max(&self) -> usize {
        self.m_max
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn lambda(&self, m: usize) -> f64 {
        self.lambda[m]
    }

    pub(crate) fn block_dim(&self) -> usize {
        (self.m_max + 1) * (2 * self.n_max + 1)
    }

    /// `π(α^k β^b β*^c) e_{m,n} = w · e_{m',n'}`, or `None` when the image
    /// leaves the truncated basis.
    pub fn monomial_action(&self, x: &Pbw, m: usize, n: i64) -> Option<(usize, i64, f64)> {
        let shift = x.b as i64 - x.c as i64;
        let n2 = n + shift;
        if n2.unsigned_abs() as usize > self.n_max {
            return None;
        }
        // β and β* act diagonally in m with weight q^m each
        let mut w = self.q_pow[m].powi((x.b + x.c) as i32);
        let mut m2 = m;
        if x.k > 0 {
            for _ in 0..x.k {
                if m2 == 0 {
                    return None;
                }
                w *= self.lambda[m2];
                m2 -= 1;
            }
        } else {
            for _ in 0..x.k.unsigned_abs() {
                if m2 == self.m_max {
                    return None;
                }
                m2 += 1;
                w *= self.lambda[m2];
            }
        }
        Some((m2, n2, w))
    }
}

/// `π(x)` on the truncated space; coefficients are evaluated at `q₀`.
pub fn rep_of(x: &HElement, rep: &TruncRep) -> TruncOp {
    rep_of_matrix(&RingMatrix::from_rows(vec![vec![x.clone()]]), rep)
}

/// `π(u)` on `C^r ⊗` the truncated space for an `r × r` matrix `u`.
pub fn rep_of_matrix(u: &RingMatrix<HElement>, rep: &TruncRep) -> TruncOp {
    let r = u.dim();
    let terms: Vec<Vec<(Pbw, f64)>> = u
        .entries()
        .iter()
        .map(|e| e.terms().map(|(m, c)| (*m, c.eval_f64(rep.q0))).collect())
        .collect();
    let shape = TruncOp::zero(rep, r);
    TruncOp::from_columns(rep, r, |j| {
        let (bj, m, n) = shape.coords(j);
        let mut col = Vec::new();
        for bi in 0..r {
            for (x, c) in &terms[bi * r + bj] {
                if let Some((m2, n2, w)) = rep.monomial_action(x, m, n) {
                    col.push((shape.index(bi, m2, n2), Complex64::new(c * w, 0.0)));
                }
            }
        }
        col
    })
}

/// `sign(n)` with `sign(0) = +1`.
pub fn sign(n: i64) -> f64 {
    if n >= 0 {
        1.0
    } else {
        -1.0
    }
}

/// `F̃ = diag(F, …, F)` with `F e_{m,n} = sign(n) e_{m,n}`.
pub fn sign_f(rep: &TruncRep, blocks: usize) -> TruncOp {
    let shape = TruncOp::zero(rep, blocks);
    TruncOp::from_columns(rep, blocks, |j| {
        let (_, _, n) = shape.coords(j);
        vec![(j, Complex64::new(sign(n), 0.0))]
    })
}

/// `[F̃, x]`, computed entrywise as `(sign(n_i) - sign(n_j)) x_ij`.
pub fn commutator_f(x: &TruncOp, rep: &TruncRep) -> TruncOp {
    TruncOp::from_columns(rep, x.blocks(), |j| {
        let sj = sign(x.coords(j).2);
        x.column(j)
            .iter()
            .map(|(i, v)| (*i, v * (sign(x.coords(*i).2) - sj)))
            .collect()
    })
}

/// The spectral projection `e(0)` of `β*β` onto `{0}`: `e(0) e_{m,n} = δ_{m,0} e_{m,n}`.
pub fn e_zero(rep: &TruncRep) -> TruncOp {
    let shape = TruncOp::zero(rep, 1);
    TruncOp::from_columns(rep, 1, |j| {
        if shape.coords(j).1 == 0 {
            vec![(j, Complex64::new(1.0, 0.0))]
        } else {
            Vec::new()
        }
    })
}

/// `V = β e(0) + (1 - e(0))`: `e_{0,n} ↦ e_{0,n+1}` and the identity for
/// `m ≠ 0`. The image of `e_{0,N}` leaves the window and is dropped.
pub fn v_unitary(rep: &TruncRep) -> TruncOp {
    let shape = TruncOp::zero(rep, 1);
    TruncOp::from_columns(rep, 1, |j| {
        let (_, m, n) = shape.coords(j);
        if m != 0 {
            vec![(j, Complex64::new(1.0, 0.0))]
        } else if n < rep.n_max as i64 {
            vec![(shape.index(0, 0, n + 1), Complex64::new(1.0, 0.0))]
        } else {
            Vec::new()
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qalgebra::{defining_relations, normal_form, Generator};

    fn rep() -> TruncRep {
        TruncRep::new(0.5, 20, 6).unwrap()
    }

    fn g(x: Generator) -> HElement {
        HElement::generator(x)
    }

    fn basis(op: &TruncOp, m: usize, n: i64) -> Vec<Complex64> {
        let mut v = vec![Complex64::default(); op.dim()];
        v[op.index(0, m, n)] = Complex64::new(1.0, 0.0);
        v
    }

    #[test]
    fn truncation_is_validated() {
        assert!(TruncRep::new(1.0, 10, 3).is_err());
        assert!(TruncRep::new(0.0, 10, 3).is_err());
        let r = rep();
        assert_eq!(r.lambda(0), 0.0);
        assert!((1..=20).all(|m| r.lambda(m) > r.lambda(m - 1) && r.lambda(m) < 1.0));
    }

    #[test]
    fn generator_actions() {
        let r = rep();
        let a = rep_of(&g(Generator::Alpha), &r);
        let v = a.apply(&basis(&a, 3, 2));
        assert!((v[a.index(0, 2, 2)].re - r.lambda(3)).abs() < 1e-15);
        let b = rep_of(&g(Generator::Beta), &r);
        let v = b.apply(&basis(&b, 3, 2));
        assert!((v[b.index(0, 3, 3)].re - 0.125).abs() < 1e-15);
        // β*β is diagonal with eigenvalue q^{2m}
        let bb = rep_of(&g(Generator::BetaStar).mul(&g(Generator::Beta)), &r);
        for m in 0..=20 {
            for n in -5..=5 {
                let j = bb.index(0, m, n);
                assert_eq!(bb.column(j).len(), 1);
                assert!((bb.get(j, j).re - 0.25f64.powi(m as i32)).abs() < 1e-15);
            }
        }
        assert_eq!(rep_of(&HElement::one(), &r), TruncOp::identity(&r, 1));
    }

    #[test]
    fn relations_hold_in_the_interior() {
        let r = rep();
        for (lhs, rhs) in defining_relations() {
            let l = normal_form(&lhs, usize::MAX).unwrap();
            let rr = normal_form(&rhs, usize::MAX).unwrap();
            // compose generator images literally rather than via the normal form
            let word_op = |expr: &crate::qalgebra::FreeExpr| {
                let mut acc = TruncOp::zero(&r, 1);
                for (c, w) in expr {
                    let mut op = TruncOp::identity(&r, 1);
                    for x in w {
                        op = op.compose(&rep_of(&g(*x), &r));
                    }
                    acc = acc.add(&op.scale(Complex64::new(c.eval_f64(0.5), 0.0)));
                }
                acc
            };
            let diff = word_op(&lhs).sub(&word_op(&rhs));
            let nf_diff = rep_of(&l.sub(&rr), &r);
            for j in 0..diff.dim() {
                let (_, m, n) = diff.coords(j);
                if m + 2 <= r.m_max() && n.abs() + 2 <= r.n_max() as i64 {
                    assert!(diff.column(j).iter().all(|(_, x)| x.norm() < 1e-14));
                    assert!(nf_diff.column(j).is_empty());
                }
            }
        }
    }

    #[test]
    fn commutator_with_beta() {
        let r = rep();
        let b = rep_of(&g(Generator::Beta), &r);
        let f = commutator_f(&b, &r);
        for j in 0..f.dim() {
            let (_, m, n) = f.coords(j);
            if n == -1 {
                let x = f.get(f.index(0, m, 0), j);
                assert!((x.re - 2.0 * 0.5f64.powi(m as i32)).abs() < 1e-15);
                assert_eq!(f.column(j).len(), 1);
            } else {
                assert!(f.column(j).is_empty());
            }
        }
        let bb = rep_of(&g(Generator::BetaStar).mul(&g(Generator::Beta)), &r);
        assert_eq!(commutator_f(&bb, &r).nnz(), 0);
        assert_eq!(commutator_f(&TruncOp::identity(&r, 2), &r).nnz(), 0);
        // F is an involution commuting with itself
        let sf = sign_f(&r, 1);
        assert_eq!(sf.compose(&sf), TruncOp::identity(&r, 1));
    }

    #[test]
    fn v_shift() {
        let r = rep();
        let v = v_unitary(&r);
        let out = v.apply(&basis(&v, 0, 3));
        assert_eq!(out[v.index(0, 0, 4)], Complex64::new(1.0, 0.0));
        let out = v.apply(&basis(&v, 2, 3));
        assert_eq!(out[v.index(0, 2, 3)], Complex64::new(1.0, 0.0));
        // agrees with β e(0) + 1 - e(0)
        let e0 = e_zero(&r);
        let id = TruncOp::identity(&r, 1);
        let built = rep_of(&g(Generator::Beta), &r).compose(&e0).add(&id.sub(&e0));
        assert_eq!(built, v);
        // unitary away from the window edge
        let vv = v.adjoint().compose(&v);
        let ww = v.compose(&v.adjoint());
        for j in 0..v.dim() {
            let (_, _, n) = v.coords(j);
            if n.abs() < r.n_max() as i64 {
                assert_eq!(vv.column(j), &[(j, Complex64::new(1.0, 0.0))]);
                assert_eq!(ww.column(j), &[(j, Complex64::new(1.0, 0.0))]);
            }
        }
    }
}
