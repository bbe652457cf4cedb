//! Dense complex matrices with the elimination routines the rest of the crate
//! builds on: Gaussian elimination with partial pivoting for nullspaces and
//! inverses, and a scaling-and-squaring exponential for superoperators.

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::ops::{Index, IndexMut};

pub type C64 = Complex64;

#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>, // row-major
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![C64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn set_column(&mut self, j: usize, col: &[C64]) {
        assert_eq!(col.len(), self.rows);
        for i in 0..self.rows {
            self[(i, j)] = col[i];
        }
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn matvec(&self, x: &[C64]) -> Vec<C64> {
        assert_eq!(x.len(), self.cols, "matvec dimension mismatch");
        self.data
            .chunks_exact(self.cols)
            .map(|row| {
                let mut acc = C64::new(0.0, 0.0);
                for (a, b) in row.iter().zip(x.iter()) {
                    acc += a * b;
                }
                acc
            })
            .collect()
    }

    pub fn matmul(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.cols, other.rows, "matmul dimension mismatch");
        let mut out = CMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn add(&self, other: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(other.data.iter())
            .map(|(a, b)| a + b)
            .collect();
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, other: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(other.data.iter())
            .map(|(a, b)| a - b)
            .collect();
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, z: C64) -> CMatrix {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * z).collect(),
        }
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// exp(self) by scaling and squaring over a Taylor sum.
    pub fn exp(&self, term_tolerance: f64, max_terms: usize) -> Result<CMatrix> {
        assert_eq!(self.rows, self.cols);
        let norm = self.frobenius();
        let mut squarings = 0u32;
        let mut shrink = 1.0f64;
        while norm * shrink > 0.5 {
            shrink *= 0.5;
            squarings += 1;
        }
        let scaled = self.scale(C64::new(shrink, 0.0));
        let mut sum = CMatrix::identity(self.rows);
        let mut term = scaled.clone();
        let mut k = 1usize;
        loop {
            sum = sum.add(&term);
            if term.frobenius() <= term_tolerance * sum.frobenius() {
                break;
            }
            k += 1;
            if k > max_terms {
                return Err(Error::SeriesDivergence { max_terms });
            }
            term = term.matmul(&scaled).scale(C64::new(1.0 / k as f64, 0.0));
        }
        for _ in 0..squarings {
            sum = sum.matmul(&sum);
        }
        Ok(sum)
    }

    /// Inverse via Gauss–Jordan with partial pivoting. `None` when a pivot
    /// falls below `rel_tol` times the largest entry of the input.
    pub fn inverse(&self, rel_tol: f64) -> Option<CMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let scale = self.max_abs();
        if scale == 0.0 {
            return None;
        }
        let mut a = self.clone();
        let mut inv = CMatrix::identity(n);
        for col in 0..n {
            let pivot_row = (col..n)
                .max_by(|&p, &q| a[(p, col)].norm().total_cmp(&a[(q, col)].norm()))
                .unwrap();
            if a[(pivot_row, col)].norm() <= rel_tol * scale {
                return None;
            }
            if pivot_row != col {
                for j in 0..n {
                    let (x, y) = (a[(col, j)], a[(pivot_row, j)]);
                    a[(col, j)] = y;
                    a[(pivot_row, j)] = x;
                    let (x, y) = (inv[(col, j)], inv[(pivot_row, j)]);
                    inv[(col, j)] = y;
                    inv[(pivot_row, j)] = x;
                }
            }
            let p = a[(col, col)];
            for j in 0..n {
                a[(col, j)] /= p;
                inv[(col, j)] /= p;
            }
            for i in 0..n {
                if i == col {
                    continue;
                }
                let f = a[(i, col)];
                if f.re == 0.0 && f.im == 0.0 {
                    continue;
                }
                for j in 0..n {
                    let s = a[(col, j)];
                    a[(i, j)] -= f * s;
                    let s = inv[(col, j)];
                    inv[(i, j)] -= f * s;
                }
            }
        }
        Some(inv)
    }

    /// Orthonormal-ish basis of {v : Mv ≈ 0} for a (possibly rectangular)
    /// matrix, via row-reduced echelon form with partial pivoting. Pivots
    /// below `rel_tol · max|entry|` are treated as zero.
    pub fn nullspace_basis(&self, rel_tol: f64) -> Vec<Vec<C64>> {
        let (m, n) = (self.rows, self.cols);
        let scale = self.max_abs();
        if scale == 0.0 || m == 0 {
            return (0..n)
                .map(|j| {
                    let mut v = vec![C64::new(0.0, 0.0); n];
                    v[j] = C64::new(1.0, 0.0);
                    v
                })
                .collect();
        }
        let mut a = self.clone();
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        let mut rank = 0usize;
        for col in 0..n {
            if rank == m {
                break;
            }
            let pivot_row = (rank..m)
                .max_by(|&p, &q| a[(p, col)].norm().total_cmp(&a[(q, col)].norm()))
                .unwrap();
            if a[(pivot_row, col)].norm() <= rel_tol * scale {
                continue; // free column
            }
            if pivot_row != rank {
                for j in 0..n {
                    let (x, y) = (a[(rank, j)], a[(pivot_row, j)]);
                    a[(rank, j)] = y;
                    a[(pivot_row, j)] = x;
                }
            }
            let p = a[(rank, col)];
            for j in 0..n {
                a[(rank, j)] /= p;
            }
            for i in 0..m {
                if i == rank {
                    continue;
                }
                let f = a[(i, col)];
                if f.re == 0.0 && f.im == 0.0 {
                    continue;
                }
                for j in 0..n {
                    let s = a[(rank, j)];
                    a[(i, j)] -= f * s;
                }
            }
            pivots.push((rank, col));
            rank += 1;
        }
        let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
        let mut basis: Vec<Vec<C64>> = Vec::new();
        for f in 0..n {
            if pivot_cols.contains(&f) {
                continue;
            }
            let mut v = vec![C64::new(0.0, 0.0); n];
            v[f] = C64::new(1.0, 0.0);
            for &(r, c) in &pivots {
                v[c] = -a[(r, f)];
            }
            basis.push(v);
        }
        gram_schmidt(&mut basis);
        basis
    }
}

/// Modified Gram–Schmidt, in place. Input vectors are linearly independent by
/// construction, so no vector ever collapses; normalization keeps the pairwise
/// residual orthogonality at machine precision.
fn gram_schmidt(vectors: &mut [Vec<C64>]) {
    for i in 0..vectors.len() {
        for j in 0..i {
            let proj = dot(&vectors[j], &vectors[i]);
            for k in 0..vectors[i].len() {
                let s = vectors[j][k];
                vectors[i][k] -= proj * s;
            }
        }
        let norm = vectors[i].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 0.0 {
            for z in vectors[i].iter_mut() {
                *z /= norm;
            }
        }
    }
}

/// Hermitian inner product ⟨u, v⟩ = Σ conj(u_i)·v_i.
pub fn dot(u: &[C64], v: &[C64]) -> C64 {
    u.iter().zip(v.iter()).map(|(a, b)| a.conj() * b).sum()
}

impl Index<(usize, usize)> for CMatrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn identity_matvec_is_identity() {
        let m = CMatrix::identity(3);
        let x = vec![c(1.0, 2.0), c(-0.5, 0.0), c(0.0, 3.0)];
        assert_eq!(m.matvec(&x), x);
    }

    #[test]
    fn inverse_round_trip() {
        let m = CMatrix::from_fn(3, 3, |i, j| {
            c((i * 3 + j) as f64 + if i == j { 5.0 } else { 0.0 }, 0.3 * j as f64)
        });
        let inv = m.inverse(1e-12).expect("invertible");
        let prod = m.matmul(&inv);
        let err = prod.sub(&CMatrix::identity(3)).frobenius();
        assert!(err < 1e-12, "residual {err}");
    }

    #[test]
    fn singular_matrix_has_no_inverse() {
        let mut m = CMatrix::zeros(2, 2);
        m[(0, 0)] = c(1.0, 0.0);
        m[(0, 1)] = c(2.0, 0.0);
        m[(1, 0)] = c(2.0, 0.0);
        m[(1, 1)] = c(4.0, 0.0);
        assert!(m.inverse(1e-12).is_none());
    }

    #[test]
    fn nullspace_of_zero_is_everything() {
        let m = CMatrix::zeros(3, 3);
        assert_eq!(m.nullspace_basis(1e-10).len(), 3);
    }

    #[test]
    fn nullspace_of_identity_is_empty() {
        let m = CMatrix::identity(4);
        assert!(m.nullspace_basis(1e-10).is_empty());
    }

    #[test]
    fn nullspace_of_rank_one_outer_product() {
        // M = u v^T has rank 1 in 3 dimensions, so a 2-dimensional nullspace.
        let u = [c(1.0, 0.5), c(-2.0, 0.0), c(0.25, 1.0)];
        let v = [c(0.7, -0.1), c(1.0, 0.0), c(0.0, 2.0)];
        let m = CMatrix::from_fn(3, 3, |i, j| u[i] * v[j]);
        let basis = m.nullspace_basis(1e-10);
        assert_eq!(basis.len(), 2);
        for w in &basis {
            let mv = m.matvec(w);
            let r = mv.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            assert!(r <= 1e-10, "‖Mv‖ = {r}");
        }
        let ortho = dot(&basis[0], &basis[1]).norm();
        assert!(ortho <= 1e-8, "pairwise orthogonality {ortho}");
    }

    #[test]
    fn exp_of_zero_is_identity() {
        let m = CMatrix::zeros(3, 3);
        let e = m.exp(1e-15, 50).unwrap();
        assert_eq!(e, CMatrix::identity(3));
    }

    #[test]
    fn exp_group_inverse() {
        let m = CMatrix::from_fn(3, 3, |i, j| c(0.3 * (i as f64 - j as f64), 0.1 * (i + j) as f64));
        let e = m.exp(1e-15, 100).unwrap();
        let einv = m.scale(c(-1.0, 0.0)).exp(1e-15, 100).unwrap();
        let err = e.matmul(&einv).sub(&CMatrix::identity(3)).frobenius();
        assert!(err < 1e-12, "residual {err}");
    }
}
