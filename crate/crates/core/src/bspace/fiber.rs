//! Point evaluation of the commutative specialisation `q = 1`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{BPoly, Piecewise};
use crate::error::{Error, Result};
use crate::qalgebra::{eval_q, HElement};
use crate::rational::Rational;
use crate::ring::QAlgebra;
use crate::ringmat::RingMatrix;

const SPHERE_TOL: f64 = 1e-12;

/// The complex matrix `p(t0)` at `q = 1` and the point `(α, β) = (a0, b0)` of
/// `SU(2) ≅ S³`.
pub fn classical_fiber(
    p: &RingMatrix<BPoly<HElement>>,
    t0: &Rational,
    a0: Complex64,
    b0: Complex64,
) -> Result<DMatrix<Complex64>> {
    let norm = a0.norm_sqr() + b0.norm_sqr();
    if (norm - 1.0).abs() > SPHERE_TOL {
        return Err(Error::NotOnSphere(norm));
    }
    let ring = Piecewise::new(QAlgebra::default());
    let n = p.dim();
    let mut out = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let h = ring.eval(p.get(i, j), t0)?;
            out[(i, j)] = eval_q(&h, &Rational::ONE)?.eval_point(a0, b0);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bspace::instanton_idempotent;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn projection() -> DMatrix<Complex64> {
        DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            c(1.0, 0.0),
            c(1.0, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
        ]))
    }

    #[test]
    fn charge_zero_and_left_piece() {
        let b = Piecewise::new(QAlgebra::default());
        let p0 = instanton_idempotent(&b, 0).unwrap();
        let m = classical_fiber(&p0, &Rational::new(2, 3), c(0.6, 0.0), c(0.0, 0.8)).unwrap();
        assert!((m - projection()).norm() < 1e-15);
        let p1 = instanton_idempotent(&b, 1).unwrap();
        let m = classical_fiber(&p1, &Rational::new(1, 4), c(0.0, 1.0), c(0.0, 0.0)).unwrap();
        assert!((m - projection()).norm() < 1e-15);
    }

    #[test]
    fn rejects_points_off_the_sphere() {
        let b = Piecewise::new(QAlgebra::default());
        let p0 = instanton_idempotent(&b, 0).unwrap();
        let r = classical_fiber(&p0, &Rational::ONE, c(1.0, 0.0), c(0.1, 0.0));
        assert!(matches!(r, Err(Error::NotOnSphere(_))));
    }
}
