//! Dense complex linear algebra.
//!
//! Everything the rest of the crate needs on small dense matrices: Kronecker
//! products, Hermitian eigendecomposition and exponentials, Haar-random
//! unitaries, partial traces, singular values, and quantum entropies. All
//! routines are pure functions; matrices are plain row-major buffers.
//!
//! Dimensions stay small by design (statevectors up to 2^12, density
//! matrices up to 2^8), so O(d^3) dense algorithms are used throughout.

mod eig;
mod haar;
mod svd;

pub use eig::{herm_eig, herm_expm};
pub use haar::haar_unitary;
pub use svd::{singular_values, svd_rank, trace_norm};

use crate::error::Error;
use crate::Result;

/// Complex double-precision scalar used everywhere in the crate.
pub type Complex64 = num_complex::Complex<f64>;

/// Shorthand for the complex zero.
pub const C_ZERO: Complex64 = Complex64::new(0.0, 0.0);
/// Shorthand for the complex one.
pub const C_ONE: Complex64 = Complex64::new(1.0, 0.0);
/// Shorthand for the imaginary unit.
pub const C_I: Complex64 = Complex64::new(0.0, 1.0);

/// Dense complex matrix, row-major storage.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix {
    /// Number of rows.
    pub rows: usize,
    /// Number of columns.
    pub cols: usize,
    /// Entries in row-major order; `data[r * cols + c]` is element (r, c).
    pub data: Vec<Complex64>,
}

impl CMatrix {
    /// Builds a matrix from row-major data.
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Self {
        assert_eq!(rows * cols, data.len(), "entry count must be rows*cols");
        CMatrix { rows, cols, data }
    }

    /// Zero matrix of the given shape.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix {
            rows,
            cols,
            data: vec![C_ZERO; rows * cols],
        }
    }

    /// Identity matrix of dimension `n`.
    pub fn identity(n: usize) -> Self {
        let mut m = CMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = C_ONE;
        }
        m
    }

    /// Builds a matrix by evaluating `f(row, col)`.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        CMatrix { rows, cols, data }
    }

    /// Element at (r, c).
    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.data[r * self.cols + c]
    }

    /// Sets element (r, c).
    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Complex64) {
        self.data[r * self.cols + c] = v;
    }

    /// True if the matrix is square.
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> CMatrix {
        let mut out = CMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.data[c * self.rows + r] = self.get(r, c).conj();
            }
        }
        out
    }

    /// Matrix product `self * other`.
    pub fn matmul(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.cols, other.rows, "matmul dimension mismatch");
        let (n, k, m) = (self.rows, self.cols, other.cols);
        let mut out = CMatrix::zeros(n, m);
        for i in 0..n {
            let row_out = &mut out.data[i * m..(i + 1) * m];
            for l in 0..k {
                let a = self.data[i * k + l];
                if a == C_ZERO {
                    continue;
                }
                let row_b = &other.data[l * m..(l + 1) * m];
                for (o, &b) in row_out.iter_mut().zip(row_b.iter()) {
                    *o += a * b;
                }
            }
        }
        out
    }

    /// Product `self† * other` without forming the adjoint.
    pub fn adjoint_matmul(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.rows, other.rows, "adjoint_matmul dimension mismatch");
        let (n, k, m) = (self.cols, self.rows, other.cols);
        let mut out = CMatrix::zeros(n, m);
        for l in 0..k {
            let row_a = &self.data[l * self.cols..(l + 1) * self.cols];
            let row_b = &other.data[l * m..(l + 1) * m];
            for i in 0..n {
                let a = row_a[i].conj();
                if a == C_ZERO {
                    continue;
                }
                let row_out = &mut out.data[i * m..(i + 1) * m];
                for (o, &b) in row_out.iter_mut().zip(row_b.iter()) {
                    *o += a * b;
                }
            }
        }
        out
    }

    /// Matrix-vector product.
    pub fn matvec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.cols, v.len(), "matvec dimension mismatch");
        let mut out = vec![C_ZERO; self.rows];
        for (r, o) in out.iter_mut().enumerate() {
            let row = &self.data[r * self.cols..(r + 1) * self.cols];
            let mut acc = C_ZERO;
            for (a, b) in row.iter().zip(v.iter()) {
                acc += a * b;
            }
            *o = acc;
        }
        out
    }

    /// Entrywise sum.
    pub fn add(&self, other: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        CMatrix::new(self.rows, self.cols, data)
    }

    /// Entrywise difference.
    pub fn sub(&self, other: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        CMatrix::new(self.rows, self.cols, data)
    }

    /// Scalar multiple.
    pub fn scale(&self, s: Complex64) -> CMatrix {
        CMatrix::new(self.rows, self.cols, self.data.iter().map(|a| a * s).collect())
    }

    /// Trace of a square matrix.
    pub fn trace(&self) -> Complex64 {
        assert!(self.is_square(), "trace of non-square matrix");
        (0..self.rows).map(|i| self.get(i, i)).sum()
    }

    /// Largest absolute value of any entry.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise deviation from another matrix.
    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest entrywise deviation from Hermitian symmetry.
    pub fn hermiticity_deviation(&self) -> f64 {
        assert!(self.is_square(), "hermiticity of non-square matrix");
        let mut dev = 0.0f64;
        for r in 0..self.rows {
            for c in r..self.cols {
                dev = dev.max((self.get(r, c) - self.get(c, r).conj()).norm());
            }
        }
        dev
    }

    /// True when `M = M†` within `tol` elementwise.
    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.is_square() && self.hermiticity_deviation() <= tol
    }

    /// True when `U†U = I` within `tol` elementwise.
    pub fn is_unitary(&self, tol: f64) -> bool {
        if !self.is_square() {
            return false;
        }
        let prod = self.adjoint_matmul(self);
        prod.max_abs_diff(&CMatrix::identity(self.rows)) <= tol
    }

    /// Extracts column `c` as a vector.
    pub fn column(&self, c: usize) -> Vec<Complex64> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }
}

/// Kronecker product `a ⊗ b`.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let rows = a.rows * b.rows;
    let cols = a.cols * b.cols;
    let mut out = CMatrix::zeros(rows, cols);
    for ra in 0..a.rows {
        for ca in 0..a.cols {
            let s = a.get(ra, ca);
            if s == C_ZERO {
                continue;
            }
            for rb in 0..b.rows {
                let dst_row = ra * b.rows + rb;
                let src = &b.data[rb * b.cols..(rb + 1) * b.cols];
                let dst =
                    &mut out.data[dst_row * cols + ca * b.cols..dst_row * cols + (ca + 1) * b.cols];
                for (d, &v) in dst.iter_mut().zip(src.iter()) {
                    *d = s * v;
                }
            }
        }
    }
    out
}

/// Traces out all subsystems not listed in `keep`.
///
/// `dims` gives the per-subsystem dimensions with subsystem 0 most
/// significant; `keep` must be strictly increasing. The output is ordered by
/// the kept subsystems in their original order.
pub fn partial_trace(rho: &CMatrix, keep: &[usize], dims: &[usize]) -> Result<CMatrix> {
    let d: usize = dims.iter().product();
    if !rho.is_square() || rho.rows != d {
        return Err(Error::InvalidDimension(format!(
            "partial_trace: matrix is {}x{} but subsystem dims give {}",
            rho.rows, rho.cols, d
        )));
    }
    if keep.windows(2).any(|w| w[0] >= w[1]) || keep.iter().any(|&k| k >= dims.len()) {
        return Err(Error::InvalidDimension(
            "partial_trace: keep set must be strictly increasing and within bounds".into(),
        ));
    }

    // Strides of each subsystem in the full index (subsystem 0 most significant).
    let n_sub = dims.len();
    let mut strides = vec![1usize; n_sub];
    for i in (0..n_sub.saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * dims[i + 1];
    }
    let traced: Vec<usize> = (0..n_sub).filter(|i| !keep.contains(i)).collect();
    let d_keep: usize = keep.iter().map(|&i| dims[i]).product::<usize>().max(1);
    let d_tr: usize = traced.iter().map(|&i| dims[i]).product::<usize>().max(1);

    // Offset of a packed index within the full space for a subsystem subset.
    let offset = |packed: usize, subs: &[usize]| -> usize {
        let mut rem = packed;
        let mut off = 0usize;
        for &s in subs.iter().rev() {
            off += (rem % dims[s]) * strides[s];
            rem /= dims[s];
        }
        off
    };

    let mut out = CMatrix::zeros(d_keep, d_keep);
    for a in 0..d_keep {
        let base_a = offset(a, keep);
        for b in 0..d_keep {
            let base_b = offset(b, keep);
            let mut acc = C_ZERO;
            for t in 0..d_tr {
                let off = offset(t, &traced);
                acc += rho.get(base_a + off, base_b + off);
            }
            out.set(a, b, acc);
        }
    }
    Ok(out)
}

/// Inner product `⟨a|b⟩` with conjugation on the left argument.
pub fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    assert_eq!(a.len(), b.len(), "inner product dimension mismatch");
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

/// Euclidean norm of a complex vector.
pub fn vec_norm(a: &[Complex64]) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Quantum relative entropy `S(ρ‖σ)` in bits.
///
/// Diverges when ρ has weight outside σ's support; that case is reported as
/// an error carrying the offending weight.
pub fn relative_entropy(rho: &CMatrix, sigma: &CMatrix) -> Result<f64> {
    assert_eq!(rho.rows, sigma.rows, "relative_entropy dimension mismatch");
    let (lr, vr) = herm_eig(rho)?;
    let (ls, vs) = herm_eig(sigma)?;
    // Support tolerance relative to the largest eigenvalue of each state.
    let tol_r = 1e-12 * lr.iter().fold(1.0f64, |m, &x| m.max(x.abs()));
    let tol_s = 1e-12 * ls.iter().fold(1.0f64, |m, &x| m.max(x.abs()));

    // Weight of rho outside sigma's support: sum over sigma's null vectors.
    let mut outside = 0.0;
    for (j, &sj) in ls.iter().enumerate() {
        if sj > tol_s {
            continue;
        }
        let col = vs.column(j);
        let rv = rho.matvec(&col);
        outside += inner(&col, &rv).re;
    }
    if outside > 1e-10 {
        return Err(Error::SupportMismatch { weight: outside });
    }

    // S = Σ_i p_i log2 p_i − Σ_{ij} p_i |⟨v_i|w_j⟩|² log2 q_j.
    let mut s = 0.0;
    for &p in &lr {
        if p > tol_r {
            s += p * p.log2();
        }
    }
    for (i, &p) in lr.iter().enumerate() {
        if p <= tol_r {
            continue;
        }
        let vi = vr.column(i);
        for (j, &q) in ls.iter().enumerate() {
            if q <= tol_s {
                continue;
            }
            let ov = inner(&vs.column(j), &vi).norm_sqr();
            if ov > 0.0 {
                s -= p * ov * q.log2();
            }
        }
    }
    Ok(s.max(0.0))
}

/// Sandwiched 2-Renyi relative entropy to the maximally mixed state, in bits.
///
/// `S₂(ρ‖I/d) = log₂(d · Tr[ρ²])`.
pub fn renyi2_relative_entropy(rho: &CMatrix, d: usize) -> f64 {
    assert!(rho.is_square() && rho.rows == d, "renyi2 dimension mismatch");
    let purity: f64 = rho.data.iter().map(|z| z.norm_sqr()).sum();
    (d as f64 * purity).log2()
}
