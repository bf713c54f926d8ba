//! Square matrices over a [`Ring`], the Whitehead lift of `diag(a, a⁻¹)` and
//! the Milnor patching idempotent.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ring::Ring;

/// Row-major `n × n` matrix of ring elements.
#[derive(Clone, Debug, PartialEq)]
pub struct RingMatrix<E> {
    n: usize,
    entries: Vec<E>,
}

fn check_dims(a: usize, b: usize) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { left: a, right: b })
    }
}

impl<E: Clone> RingMatrix<E> {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        RingMatrix { n, entries }
    }

    /// Panics unless every row has length `rows.len()`.
    pub fn from_rows(rows: Vec<Vec<E>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        RingMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.entries[i * self.n + j] = v;
    }

    pub fn entries(&self) -> &[E] {
        &self.entries
    }

    pub fn map<F: Clone>(&self, f: impl Fn(&E) -> F) -> RingMatrix<F> {
        RingMatrix {
            n: self.n,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn try_map<F: Clone>(&self, f: impl Fn(&E) -> Result<F>) -> Result<RingMatrix<F>> {
        Ok(RingMatrix {
            n: self.n,
            entries: self.entries.iter().map(f).collect::<Result<_>>()?,
        })
    }

    /// `[[a, b], [c, d]]` from four equally sized blocks.
    pub fn from_blocks(a: &Self, b: &Self, c: &Self, d: &Self) -> Result<Self> {
        let n = a.n;
        for m in [b, c, d] {
            check_dims(n, m.n)?;
        }
        Ok(Self::from_fn(2 * n, |i, j| {
            let blk = match (i < n, j < n) {
                (true, true) => a,
                (true, false) => b,
                (false, true) => c,
                (false, false) => d,
            };
            blk.get(i % n, j % n).clone()
        }))
    }

    /// Block `(bi, bj)` of size `size`.
    pub fn block(&self, bi: usize, bj: usize, size: usize) -> Self {
        Self::from_fn(size, |i, j| self.get(bi * size + i, bj * size + j).clone())
    }
}

impl<E: Clone + Send + Sync> RingMatrix<E> {
    pub fn identity<R: Ring<Elem = E>>(ring: &R, n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { ring.one() } else { ring.zero() })
    }

    pub fn zeros<R: Ring<Elem = E>>(ring: &R, n: usize) -> Self {
        Self::from_fn(n, |_, _| ring.zero())
    }

    /// `diag(I_k, 0_{n-k})`.
    pub fn diag_projection<R: Ring<Elem = E>>(ring: &R, n: usize, k: usize) -> Self {
        Self::from_fn(n, |i, j| {
            if i == j && i < k {
                ring.one()
            } else {
                ring.zero()
            }
        })
    }

    pub fn add<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Result<Self> {
        check_dims(self.n, other.n)?;
        Ok(RingMatrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| ring.add(a, b))
                .collect(),
        })
    }

    pub fn sub<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Result<Self> {
        check_dims(self.n, other.n)?;
        Ok(RingMatrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| ring.sub(a, b))
                .collect(),
        })
    }

    pub fn neg<R: Ring<Elem = E>>(&self, ring: &R) -> Self {
        self.map(|a| ring.neg(a))
    }

    /// Matrix product; entries are computed in parallel and assembled in
    /// row-major order.
    pub fn mul<R: Ring<Elem = E> + Sync>(&self, ring: &R, other: &Self) -> Result<Self> {
        check_dims(self.n, other.n)?;
        let n = self.n;
        let entries = (0..n * n)
            .into_par_iter()
            .map(|idx| {
                let (i, j) = (idx / n, idx % n);
                let mut acc = ring.zero();
                for k in 0..n {
                    let p = ring.mul(self.get(i, k), other.get(k, j))?;
                    acc = ring.add(&acc, &p);
                }
                Ok(acc)
            })
            .collect::<Result<Vec<E>>>()?;
        Ok(RingMatrix { n, entries })
    }

    pub fn pow<R: Ring<Elem = E> + Sync>(&self, ring: &R, e: u32) -> Result<Self> {
        let mut acc = Self::identity(ring, self.n);
        for _ in 0..e {
            acc = acc.mul(ring, self)?;
        }
        Ok(acc)
    }

    /// Conjugate transpose: transposes and stars every entry.
    pub fn star<R: Ring<Elem = E>>(&self, ring: &R) -> Result<Self> {
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(ring.star(self.get(j, i))?);
            }
        }
        Ok(RingMatrix { n, entries })
    }

    pub fn ring_eq<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> bool {
        self.n == other.n
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(a, b)| ring.eq(a, b))
    }

    pub fn is_zero<R: Ring<Elem = E>>(&self, ring: &R) -> bool {
        self.entries.iter().all(|a| ring.is_zero(a))
    }
}

/// Lift of the Whitehead factorisation
/// `diag(a, a⁻¹) = [[1,a],[0,1]] [[1,0],[-a⁻¹,1]] [[1,a],[0,1]] [[0,-1],[1,0]]`
/// along lifts `c` of `a` and `d` of `a⁻¹`:
///
/// ```text
/// C = [[(2 - cd)c, cd - 1], [1 - dc, d]]
/// D = [[d, 1 - dc], [cd - 1, (2 - cd)c]]
/// ```
///
/// `C` is a product of elementary matrices and `D = C⁻¹` for any `c, d`.
pub fn whitehead_lift<R, E>(
    ring: &R,
    c: &RingMatrix<E>,
    d: &RingMatrix<E>,
) -> Result<(RingMatrix<E>, RingMatrix<E>)>
where
    R: Ring<Elem = E> + Sync,
    E: Clone + Send + Sync,
{
    check_dims(c.dim(), d.dim())?;
    let n = c.dim();
    let id = RingMatrix::identity(ring, n);
    let two = id.add(ring, &id)?;
    let cd = c.mul(ring, d)?;
    let dc = d.mul(ring, c)?;
    let top_left = two.sub(ring, &cd)?.mul(ring, c)?;
    let cd_minus_1 = cd.sub(ring, &id)?;
    let one_minus_dc = id.sub(ring, &dc)?;
    let big_c = RingMatrix::from_blocks(&top_left, &cd_minus_1, &one_minus_dc, d)?;
    let big_d = RingMatrix::from_blocks(d, &one_minus_dc, &cd_minus_1, &top_left)?;
    Ok((big_c, big_d))
}

/// The `B₁`-leg of the patching idempotent
///
/// ```text
/// Q = [[c(2 - dc)d, c(2 - dc)(1 - dc)], [(1 - dc)d, (1 - dc)²]]
/// ```
///
/// built directly from the blocks.
pub fn milnor_block<R, E>(ring: &R, c: &RingMatrix<E>, d: &RingMatrix<E>) -> Result<RingMatrix<E>>
where
    R: Ring<Elem = E> + Sync,
    E: Clone + Send + Sync,
{
    check_dims(c.dim(), d.dim())?;
    let n = c.dim();
    let id = RingMatrix::identity(ring, n);
    let two = id.add(ring, &id)?;
    let dc = d.mul(ring, c)?;
    let one_minus_dc = id.sub(ring, &dc)?;
    let c_two = c.mul(ring, &two.sub(ring, &dc)?)?;
    let q11 = c_two.mul(ring, d)?;
    let q12 = c_two.mul(ring, &one_minus_dc)?;
    let q21 = one_minus_dc.mul(ring, d)?;
    let q22 = one_minus_dc.mul(ring, &one_minus_dc)?;
    RingMatrix::from_blocks(&q11, &q12, &q21, &q22)
}

/// The same idempotent as `C · diag(I_N, 0) · D`.
pub fn milnor_block_via_lift<R, E>(
    ring: &R,
    c: &RingMatrix<E>,
    d: &RingMatrix<E>,
) -> Result<RingMatrix<E>>
where
    R: Ring<Elem = E> + Sync,
    E: Clone + Send + Sync,
{
    let (big_c, big_d) = whitehead_lift(ring, c, d)?;
    let e = RingMatrix::diag_projection(ring, 2 * c.dim(), c.dim());
    big_c.mul(ring, &e)?.mul(ring, &big_d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Integers;
    use dashu_int::IBig;

    fn m(rows: &[&[i64]]) -> RingMatrix<IBig> {
        RingMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|x| IBig::from(*x)).collect())
                .collect(),
        )
    }

    #[test]
    fn trivial_lift_is_identity() {
        let one = m(&[&[1]]);
        let (c, d) = whitehead_lift(&Integers, &one, &one).unwrap();
        let id = RingMatrix::identity(&Integers, 2);
        assert_eq!(c, id);
        assert_eq!(d, id);
    }

    #[test]
    fn lift_of_two_and_zero() {
        // blocks evaluated by hand: (2 - 0)·2 = 4, cd - 1 = -1, 1 - dc = 1, d = 0
        let (c, d) = whitehead_lift(&Integers, &m(&[&[2]]), &m(&[&[0]])).unwrap();
        assert_eq!(c, m(&[&[4, -1], &[1, 0]]));
        assert_eq!(d, m(&[&[0, 1], &[-1, 4]]));
        assert_eq!(c.mul(&Integers, &d).unwrap(), RingMatrix::identity(&Integers, 2));
    }

    #[test]
    fn milnor_block_of_two_and_zero() {
        let q = milnor_block(&Integers, &m(&[&[2]]), &m(&[&[0]])).unwrap();
        assert_eq!(q, m(&[&[0, 4], &[0, 1]]));
        assert_eq!(q.mul(&Integers, &q).unwrap(), q);
    }

    #[test]
    fn invertible_lift_collapses_to_diag_projection() {
        let c = m(&[&[2, 1], &[1, 1]]);
        let d = m(&[&[1, -1], &[-1, 2]]);
        let q = milnor_block(&Integers, &c, &d).unwrap();
        assert_eq!(q, RingMatrix::diag_projection(&Integers, 4, 2));
    }

    #[test]
    fn dimension_mismatch() {
        let a = m(&[&[1]]);
        let b = m(&[&[1, 0], &[0, 1]]);
        assert!(matches!(
            whitehead_lift(&Integers, &a, &b),
            Err(Error::DimensionMismatch { left: 1, right: 2 })
        ));
        assert!(a.mul(&Integers, &b).is_err());
        assert!(a.add(&Integers, &b).is_err());
    }

    #[test]
    fn star_is_antihomomorphism_over_integers() {
        let x = m(&[&[1, 2], &[3, 4]]);
        let y = m(&[&[0, -1], &[5, 2]]);
        let lhs = x.mul(&Integers, &y).unwrap().star(&Integers).unwrap();
        let rhs = y
            .star(&Integers)
            .unwrap()
            .mul(&Integers, &x.star(&Integers).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(x.star(&Integers).unwrap().star(&Integers).unwrap(), x);
    }
}
