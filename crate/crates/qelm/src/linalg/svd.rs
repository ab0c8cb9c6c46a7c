//! Singular values, numerical rank, and the trace norm.
//!
//! Singular values come from one-sided Jacobi rotations, which resolve small
//! singular values with high relative accuracy; forming the Gram matrix and
//! calling the eigensolver would lose anything below the square root of
//! machine epsilon relative to the largest value.

use super::{herm_eig, CMatrix, Complex64};

/// Orthogonality threshold for Jacobi sweeps.
const JACOBI_EPS: f64 = 1e-15;
/// Sweep cap; Jacobi converges quadratically, so this is generous.
const MAX_SWEEPS: usize = 60;

/// Singular values of a complex matrix, descending.
pub fn singular_values(m: &CMatrix) -> Vec<f64> {
    let small = m.rows.min(m.cols);
    if small == 0 {
        return Vec::new();
    }
    // Work on columns of the taller orientation; the adjoint has the same
    // singular values.
    let (rows, cols) = if m.rows >= m.cols {
        (m.rows, m.cols)
    } else {
        (m.cols, m.rows)
    };
    let mut c: Vec<Vec<Complex64>> = if m.rows >= m.cols {
        (0..cols).map(|j| m.column(j)).collect()
    } else {
        (0..cols)
            .map(|j| (0..rows).map(|i| m.get(j, i).conj()).collect())
            .collect()
    };

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for i in 0..cols.saturating_sub(1) {
            for j in i + 1..cols {
                let a: f64 = c[i].iter().map(|z| z.norm_sqr()).sum();
                let b: f64 = c[j].iter().map(|z| z.norm_sqr()).sum();
                if a <= 0.0 || b <= 0.0 {
                    continue;
                }
                let z: Complex64 = c[i]
                    .iter()
                    .zip(c[j].iter())
                    .map(|(x, y)| x.conj() * y)
                    .sum();
                let zn = z.norm();
                if zn <= JACOBI_EPS * (a * b).sqrt() {
                    continue;
                }
                rotated = true;
                // Phase-rotate column j so the pair's inner product is real
                // positive; column phases do not change singular values.
                let ph = (z / zn).conj();
                for y in c[j].iter_mut() {
                    *y *= ph;
                }
                // Real Jacobi rotation zeroing the off-diagonal of the 2x2
                // Gram [[a, zn], [zn, b]].
                let tau = (b - a) / (2.0 * zn);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let cs = 1.0 / (1.0 + t * t).sqrt();
                let sn = cs * t;
                for k in 0..rows {
                    let xi = c[i][k];
                    let xj = c[j][k];
                    c[i][k] = xi * cs - xj * sn;
                    c[j][k] = xi * sn + xj * cs;
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let mut sigma: Vec<f64> = c
        .iter()
        .map(|col| col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
        .collect();
    sigma.sort_by(|x, y| y.partial_cmp(x).unwrap());
    sigma
}

/// Number of singular values above `tol` times the largest one.
pub fn svd_rank(m: &CMatrix, tol: f64) -> usize {
    assert!(tol > 0.0, "rank tolerance must be positive");
    let sigma = singular_values(m);
    let smax = sigma.first().copied().unwrap_or(0.0);
    sigma.iter().filter(|&&s| s > tol * smax).count()
}

/// Trace norm (sum of singular values).
///
/// Hermitian inputs take the eigenvalue path, which is cheaper and exact for
/// the difference-of-states matrices this is used on.
pub fn trace_norm(m: &CMatrix) -> f64 {
    if m.is_square() && m.rows > 0 {
        let scale = m.max_abs().max(1.0);
        if m.hermiticity_deviation() <= 1e-11 * scale {
            let (vals, _) = herm_eig(m).expect("hermitian by check above");
            return vals.iter().map(|v| v.abs()).sum();
        }
    }
    singular_values(m).iter().sum()
}
