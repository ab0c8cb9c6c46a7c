//! Hermitian eigendecomposition and matrix exponentials.
//!
//! The solver reduces a complex Hermitian matrix to real symmetric
//! tridiagonal form with Householder reflections, phase-normalizes the
//! subdiagonal, and diagonalizes with the implicit-shift QL iteration,
//! accumulating the full unitary along the way.

use super::{CMatrix, Complex64, C_ONE, C_ZERO};
use crate::error::Error;
use crate::Result;

/// Hermiticity rejection tolerance, relative to the matrix scale.
const HERM_TOL: f64 = 1e-9;

/// Eigendecomposition of a Hermitian matrix.
///
/// Returns eigenvalues ascending and a unitary whose columns are the
/// matching eigenvectors, so `h = V diag(λ) V†`.
pub fn herm_eig(h: &CMatrix) -> Result<(Vec<f64>, CMatrix)> {
    if !h.is_square() || h.rows == 0 {
        return Err(Error::InvalidDimension(format!(
            "herm_eig needs a non-empty square matrix, got {}x{}",
            h.rows, h.cols
        )));
    }
    let dev = h.hermiticity_deviation();
    let scale = h.max_abs().max(1.0);
    if dev > HERM_TOL * scale {
        return Err(Error::NotHermitian { deviation: dev });
    }

    let n = h.rows;
    // Work on the symmetrized copy; kills float-level asymmetry.
    let mut a = CMatrix::from_fn(n, n, |r, c| (h.get(r, c) + h.get(c, r).conj()) * 0.5);
    let mut q = CMatrix::identity(n);

    // Householder reduction to Hermitian tridiagonal form.
    for k in 0..n.saturating_sub(2) {
        let xnorm2: f64 = (k + 1..n).map(|i| a.get(i, k).norm_sqr()).sum();
        if xnorm2 <= f64::MIN_POSITIVE {
            continue;
        }
        let xnorm = xnorm2.sqrt();
        let a0 = a.get(k + 1, k);
        let phase = if a0.norm() > 0.0 { a0 / a0.norm() } else { C_ONE };
        let alpha = -phase * xnorm;

        // v = x - alpha e_1, supported on rows k+1..n.
        let mut v = vec![C_ZERO; n];
        v[k + 1] = a0 - alpha;
        for (i, vi) in v.iter_mut().enumerate().take(n).skip(k + 2) {
            *vi = a.get(i, k);
        }
        let vnorm2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if vnorm2 <= f64::MIN_POSITIVE {
            continue;
        }
        let beta = 2.0 / vnorm2;

        // Two-sided update A <- H A H with H = I - beta v v†.
        // p = beta A v; K = beta/2 v†p; w = p - K v; A -= v w† + w v†.
        let mut p = vec![C_ZERO; n];
        for (r, pr) in p.iter_mut().enumerate().take(n).skip(k) {
            let mut acc = C_ZERO;
            for (j, vj) in v.iter().enumerate().take(n).skip(k + 1) {
                acc += a.get(r, j) * vj;
            }
            *pr = acc * beta;
        }
        let vp: Complex64 = v
            .iter()
            .zip(p.iter())
            .map(|(vi, pi)| vi.conj() * pi)
            .sum();
        let kay = vp * (beta / 2.0);
        let w: Vec<Complex64> = p.iter().zip(v.iter()).map(|(pi, vi)| pi - kay * vi).collect();
        for r in k..n {
            for c in k..n {
                let upd = v[r] * w[c].conj() + w[r] * v[c].conj();
                let cur = a.get(r, c);
                a.set(r, c, cur - upd);
            }
        }

        // Accumulate Q <- Q H (columns k+1..n affected).
        for r in 0..n {
            let mut acc = C_ZERO;
            for (j, vj) in v.iter().enumerate().take(n).skip(k + 1) {
                acc += q.get(r, j) * vj;
            }
            acc *= beta;
            for (j, vj) in v.iter().enumerate().take(n).skip(k + 1) {
                let cur = q.get(r, j);
                q.set(r, j, cur - acc * vj.conj());
            }
        }
    }

    // Phase-normalize the subdiagonal to make the tridiagonal matrix real.
    let mut d: Vec<f64> = (0..n).map(|i| a.get(i, i).re).collect();
    let mut e = vec![0.0f64; n];
    let mut dphase = vec![C_ONE; n];
    for i in 0..n.saturating_sub(1) {
        let s = a.get(i + 1, i);
        let mag = s.norm();
        if mag <= f64::MIN_POSITIVE {
            dphase[i + 1] = dphase[i];
            e[i] = 0.0;
        } else {
            dphase[i + 1] = s * dphase[i] / mag;
            e[i] = mag;
        }
    }
    for (i, ph) in dphase.iter().enumerate() {
        for r in 0..n {
            let cur = q.get(r, i);
            q.set(r, i, cur * ph);
        }
    }

    tql2(&mut d, &mut e, &mut q)?;

    // Sort ascending, permuting eigenvector columns to match.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[i].partial_cmp(&d[j]).unwrap());
    let eigenvalues: Vec<f64> = order.iter().map(|&i| d[i]).collect();
    let mut vectors = CMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        for r in 0..n {
            vectors.set(r, dst, q.get(r, src));
        }
    }
    Ok((eigenvalues, vectors))
}

/// Implicit-shift QL iteration for a real symmetric tridiagonal matrix.
///
/// `d` holds the diagonal, `e[i]` couples `d[i]` and `d[i+1]` (`e[n-1]` is a
/// sentinel). Plane rotations are accumulated into the columns of `q`.
fn tql2(d: &mut [f64], e: &mut [f64], q: &mut CMatrix) -> Result<()> {
    let n = d.len();
    if n == 0 {
        return Ok(());
    }
    e[n - 1] = 0.0;

    // Deflation floor at the overall matrix scale; a purely relative test
    // never fires on blocks whose diagonal has underflowed to zero, which
    // happens for rank-deficient Gram matrices.
    let scale = d
        .iter()
        .zip(e.iter())
        .map(|(di, ei)| di.abs() + ei.abs())
        .fold(f64::MIN_POSITIVE, f64::max);
    let floor = f64::EPSILON * scale;

    for l in 0..n {
        let mut iter = 0;
        loop {
            // Find the first negligible coupling at or after l.
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd || e[m].abs() <= floor {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(Error::NoConvergence(60));
            }

            // Wilkinson-style shift from the 2x2 corner.
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            let sr = if g >= 0.0 { r } else { -r };
            g = d[m] - d[l] + e[l] / (g + sr);
            let (mut s, mut c) = (1.0f64, 1.0f64);
            let mut p = 0.0f64;
            let mut underflow = false;

            for i in (l..m).rev() {
                let mut f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    // Rotation annihilated; deflate and restart this l.
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;

                // Rotate eigenvector columns i and i+1.
                for k in 0..n {
                    f = q.get(k, i + 1).re;
                    let fi = q.get(k, i + 1).im;
                    let zi = q.get(k, i);
                    q.set(
                        k,
                        i + 1,
                        Complex64::new(s * zi.re + c * f, s * zi.im + c * fi),
                    );
                    q.set(
                        k,
                        i,
                        Complex64::new(c * zi.re - s * f, c * zi.im - s * fi),
                    );
                }
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

/// Unitary exponential `e^{i h t}` of a Hermitian matrix.
pub fn herm_expm(h: &CMatrix, t: f64) -> Result<CMatrix> {
    let (vals, vecs) = herm_eig(h)?;
    let n = h.rows;
    // V diag(e^{i λ t}) V†.
    let mut scaled = vecs.clone();
    for (j, &lam) in vals.iter().enumerate() {
        let ph = Complex64::from_polar(1.0, lam * t);
        for r in 0..n {
            let cur = scaled.get(r, j);
            scaled.set(r, j, cur * ph);
        }
    }
    Ok(scaled.matmul(&vecs.adjoint()))
}
