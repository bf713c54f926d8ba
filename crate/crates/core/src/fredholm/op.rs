use num_complex::Complex64;
use rayon::prelude::*;

use super::TruncRep;
use crate::sum::NeumaierSum;

/// Sparse operator on `C^r ⊗ span{e_{m,n} : 0 ≤ m ≤ M, |n| ≤ N}`.
///
/// Stored by columns; each column is sorted by row index with no explicit
/// zeros. The index of `(block, m, n)` is `block·(M+1)(2N+1) + m·(2N+1) + n + N`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncOp {
    m_max: usize,
    n_max: usize,
    blocks: usize,
    cols: Vec<Vec<(usize, Complex64)>>,
}

impl TruncOp {
    pub fn zero(rep: &TruncRep, blocks: usize) -> Self {
        let dim = blocks * rep.block_dim();
        TruncOp {
            m_max: rep.m_max(),
            n_max: rep.n_max(),
            blocks,
            cols: vec![Vec::new(); dim],
        }
    }

    pub fn identity(rep: &TruncRep, blocks: usize) -> Self {
        Self::from_columns(rep, blocks, |j| vec![(j, Complex64::new(1.0, 0.0))])
    }

    /// Builds column `j` from `f(j)`; duplicate rows are summed.
    pub fn from_columns(
        rep: &TruncRep,
        blocks: usize,
        f: impl Fn(usize) -> Vec<(usize, Complex64)> + Sync,
    ) -> Self {
        let dim = blocks * rep.block_dim();
        let cols = (0..dim).into_par_iter().map(|j| normalize(f(j))).collect();
        TruncOp {
            m_max: rep.m_max(),
            n_max: rep.n_max(),
            blocks,
            cols,
        }
    }

    pub fn dim(&self) -> usize {
        self.cols.len()
    }

    pub fn blocks(&self) -> usize {
        self.blocks
    }

    fn block_dim(&self) -> usize {
        (self.m_max + 1) * (2 * self.n_max + 1)
    }

    pub fn index(&self, block: usize, m: usize, n: i64) -> usize {
        block * self.block_dim() + m * (2 * self.n_max + 1) + (n + self.n_max as i64) as usize
    }

    /// `(block, m, n)` of a basis index.
    pub fn coords(&self, idx: usize) -> (usize, usize, i64) {
        let width = 2 * self.n_max + 1;
        let (block, rest) = (idx / self.block_dim(), idx % self.block_dim());
        (block, rest / width, (rest % width) as i64 - self.n_max as i64)
    }

    pub fn column(&self, j: usize) -> &[(usize, Complex64)] {
        &self.cols[j]
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        let col = &self.cols[j];
        col.binary_search_by_key(&i, |(r, _)| *r)
            .map(|p| col[p].1)
            .unwrap_or_default()
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    fn same_shape(&self, other: &Self) {
        assert!(
            self.m_max == other.m_max
                && self.n_max == other.n_max
                && self.blocks == other.blocks,
            "operators on different truncations"
        );
    }

    fn combine(&self, other: &Self, s: f64) -> Self {
        self.same_shape(other);
        let cols = self
            .cols
            .par_iter()
            .zip(&other.cols)
            .map(|(a, b)| {
                let mut v = a.clone();
                v.extend(b.iter().map(|(i, x)| (*i, x * s)));
                normalize(v)
            })
            .collect();
        TruncOp { cols, ..*self }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, 1.0)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, -1.0)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let cols = self
            .cols
            .iter()
            .map(|c| normalize(c.iter().map(|(i, x)| (*i, x * s)).collect()))
            .collect();
        TruncOp { cols, ..*self }
    }

    /// `self ∘ other`. Columns are computed independently, so the result
    /// does not depend on scheduling.
    pub fn compose(&self, other: &Self) -> Self {
        self.same_shape(other);
        let dim = self.dim();
        let cols = other
            .cols
            .par_iter()
            .map_init(
                || (vec![Complex64::default(); dim], Vec::new()),
                |(acc, touched), col| {
                    for (k, b) in col {
                        for (i, a) in &self.cols[*k] {
                            if acc[*i] == Complex64::default() {
                                touched.push(*i);
                            }
                            acc[*i] += a * b;
                        }
                    }
                    touched.sort_unstable();
                    touched.dedup();
                    let out: Vec<(usize, Complex64)> = touched
                        .iter()
                        .map(|i| (*i, std::mem::take(&mut acc[*i])))
                        .filter(|(_, x)| *x != Complex64::default())
                        .collect();
                    touched.clear();
                    out
                },
            )
            .collect();
        TruncOp { cols, ..*self }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut cols = vec![Vec::new(); self.dim()];
        for (j, col) in self.cols.iter().enumerate() {
            for (i, x) in col {
                cols[*i].push((j, x.conj()));
            }
        }
        TruncOp { cols, ..*self }
    }

    /// `Σ_i self[i,i]`, summed in index order with compensation.
    pub fn trace(&self) -> Complex64 {
        let mut re = NeumaierSum::new();
        let mut im = NeumaierSum::new();
        for j in 0..self.dim() {
            let x = self.get(j, j);
            re.add(x.re);
            im.add(x.im);
        }
        Complex64::new(re.value(), im.value())
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![Complex64::default(); self.dim()];
        for (j, x) in v.iter().enumerate() {
            if *x == Complex64::default() {
                continue;
            }
            for (i, a) in &self.cols[j] {
                out[*i] += a * x;
            }
        }
        out
    }

    /// Largest entry modulus; `0` for the zero operator.
    pub fn max_abs(&self) -> f64 {
        self.cols
            .iter()
            .flatten()
            .map(|(_, x)| x.norm())
            .fold(0.0, f64::max)
    }
}

fn normalize(mut v: Vec<(usize, Complex64)>) -> Vec<(usize, Complex64)> {
    v.sort_by_key(|(i, _)| *i);
    let mut out: Vec<(usize, Complex64)> = Vec::with_capacity(v.len());
    for (i, x) in v {
        match out.last_mut() {
            Some((j, y)) if *j == i => *y += x,
            _ => out.push((i, x)),
        }
    }
    out.retain(|(_, x)| *x != Complex64::default());
    out
}
