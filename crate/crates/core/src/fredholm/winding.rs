//! Degree of `x ↦ (x₀ I + i Σ x_k σ_k)ⁿ` on `S³`.
//!
//! In coordinates `x = (cos ψ, sin ψ cos θ, sin ψ sin θ cos φ, sin ψ sin θ sin φ)`
//! the degree of `g` is `(1/8π²) ∫ tr(A_ψ [A_θ, A_φ]) dψ dθ dφ` with
//! `A = g⁻¹ ∂g`, which is the normalised pullback of `tr((g⁻¹dg)³)/24π²`.
//! The orientation `(ψ, θ, φ)` gives the identity map degree `+1`.

use std::f64::consts::PI;

use nalgebra::Matrix2;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::sum::{ordered_sum, NeumaierSum};

/// Cells per factor of `π` on the smallest grid accepted.
pub const MIN_RESOLUTION: usize = 4;
pub const DEFAULT_RESOLUTION: usize = 32;

type M2 = Matrix2<Complex64>;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WindingReport {
    pub n: i64,
    pub resolution: usize,
    pub value: f64,
    pub nearest_integer: i64,
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `x₀ I + i(x₁σ₁ + x₂σ₂ + x₃σ₃)`.
fn quaternion(x: [f64; 4]) -> M2 {
    Matrix2::new(
        c(x[0], x[3]),
        c(x[2], x[1]),
        c(-x[2], x[1]),
        c(x[0], -x[3]),
    )
}

/// `(X, ∂_ψ X, ∂_θ X, ∂_φ X)`; `X` is linear in `x`, so the derivatives are
/// the same map applied to the coordinate derivatives.
fn frame(psi: f64, theta: f64, phi: f64) -> [M2; 4] {
    let (sp, cp) = psi.sin_cos();
    let (st, ct) = theta.sin_cos();
    let (sf, cf) = phi.sin_cos();
    [
        quaternion([cp, sp * ct, sp * st * cf, sp * st * sf]),
        quaternion([-sp, cp * ct, cp * st * cf, cp * st * sf]),
        quaternion([0.0, -sp * st, sp * ct * cf, sp * ct * sf]),
        quaternion([0.0, 0.0, -sp * st * sf, sp * st * cf]),
    ]
}

/// `gᵐ` and its derivative by the product rule
/// `d(Xᵐ) = Σ_j Xʲ dX X^{m-1-j}`.
fn power_with_derivatives(x: &M2, dx: &[M2; 3], m: u32) -> (M2, [M2; 3]) {
    let mut powers = vec![M2::identity()];
    for j in 1..=m as usize {
        powers.push(powers[j - 1] * x);
    }
    let d = dx.map(|da| {
        (0..m as usize)
            .map(|j| powers[j] * da * powers[m as usize - 1 - j])
            .fold(M2::zeros(), |acc, t| acc + t)
    });
    (powers[m as usize], d)
}

fn integrand(n: i64, psi: f64, theta: f64, phi: f64) -> f64 {
    let [x, dp, dt, df] = frame(psi, theta, phi);
    let (x, d) = if n >= 0 {
        (x, [dp, dt, df])
    } else {
        (x.adjoint(), [dp.adjoint(), dt.adjoint(), df.adjoint()])
    };
    let (g, [gp, gt, gf]) = power_with_derivatives(&x, &d, n.unsigned_abs() as u32);
    let g_inv = g.adjoint();
    let (a, b, cc) = (g_inv * gp, g_inv * gt, g_inv * gf);
    (a * (b * cc - cc * b)).trace().re
}

/// Midpoint-rule degree on an `r × r × 2r` grid over
/// `[0, π] × [0, π] × [0, 2π]`.
pub fn winding_degree(n: i64, resolution: usize) -> Result<WindingReport> {
    if resolution < MIN_RESOLUTION {
        return Err(Error::ResolutionTooSmall {
            given: resolution,
            minimum: MIN_RESOLUTION,
        });
    }
    let h = PI / resolution as f64;
    let slices: Vec<f64> = (0..resolution)
        .into_par_iter()
        .map(|i| {
            let psi = (i as f64 + 0.5) * h;
            let mut s = NeumaierSum::new();
            for j in 0..resolution {
                let theta = (j as f64 + 0.5) * h;
                for l in 0..2 * resolution {
                    let phi = (l as f64 + 0.5) * h;
                    s.add(integrand(n, psi, theta, phi));
                }
            }
            s.value()
        })
        .collect();
    let value = ordered_sum(&slices) * h * h * h / (8.0 * PI * PI);
    Ok(WindingReport {
        n,
        resolution,
        value,
        nearest_integer: value.round() as i64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quaternion_is_special_unitary() {
        let x = quaternion([0.5, 0.5, -0.5, 0.5]);
        assert!((x.adjoint() * x - M2::identity()).norm() < 1e-15);
        assert!((x.determinant() - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn product_rule_matches_difference_quotient() {
        let (p, t, f) = (0.7, 1.1, 2.3);
        let [x, dp, dt, df] = frame(p, t, f);
        let (_, [gp, _, _]) = power_with_derivatives(&x, &[dp, dt, df], 3);
        let e = 1e-6;
        let fwd = frame(p + e, t, f)[0].pow(3);
        let bwd = frame(p - e, t, f)[0].pow(3);
        assert!(((fwd - bwd) / c(2.0 * e, 0.0) - gp).norm() < 1e-8);
    }

    #[test]
    fn small_degrees() {
        assert!(winding_degree(0, 8).unwrap().value.abs() < 1e-12);
        let one = winding_degree(1, 16).unwrap();
        assert_eq!(one.nearest_integer, 1);
        assert!((one.value - 1.0).abs() < 0.05);
        assert!(matches!(
            winding_degree(1, 2),
            Err(Error::ResolutionTooSmall { .. })
        ));
    }
}
