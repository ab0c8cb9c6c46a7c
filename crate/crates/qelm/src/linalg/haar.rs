//! Haar-random unitary sampling.
//!
//! Samples a complex Ginibre matrix and orthonormalizes it with Householder
//! QR, then multiplies each column by the phase of the matching R diagonal
//! entry. Without the phase correction the QR convention would bias the
//! distribution; with it the output is exactly Haar.

use super::{CMatrix, Complex64, C_ONE, C_ZERO};
use crate::error::Error;
use crate::rng::SeedStream;
use crate::Result;

/// Samples a d-dimensional unitary from the Haar measure.
pub fn haar_unitary(d: usize, stream: &mut SeedStream) -> Result<CMatrix> {
    if d == 0 {
        return Err(Error::InvalidDimension("haar_unitary needs d >= 1".into()));
    }

    // Ginibre sample, stored column-major so reflector application is
    // contiguous.
    let mut a: Vec<Vec<Complex64>> = (0..d)
        .map(|_| {
            (0..d)
                .map(|_| Complex64::new(stream.normal(), stream.normal()))
                .collect()
        })
        .collect();

    // Householder QR; keep the reflectors and the R diagonal.
    let mut reflectors: Vec<(usize, Vec<Complex64>, f64)> = Vec::with_capacity(d);
    let mut rdiag = vec![C_ONE; d];
    for k in 0..d {
        let xnorm2: f64 = a[k][k..].iter().map(|z| z.norm_sqr()).sum();
        if xnorm2 <= f64::MIN_POSITIVE {
            // Ginibre matrices are full rank almost surely; a zero column
            // leaves this basis direction untouched.
            rdiag[k] = C_ONE;
            continue;
        }
        let xnorm = xnorm2.sqrt();
        let x0 = a[k][k];
        let phase = if x0.norm() > 0.0 { x0 / x0.norm() } else { C_ONE };
        let alpha = -phase * xnorm;

        let mut v = vec![C_ZERO; d];
        v[k] = x0 - alpha;
        v[k + 1..d].copy_from_slice(&a[k][k + 1..d]);
        let vnorm2: f64 = v[k..].iter().map(|z| z.norm_sqr()).sum();
        let beta = 2.0 / vnorm2;

        a[k][k] = alpha;
        for z in a[k][k + 1..d].iter_mut() {
            *z = C_ZERO;
        }
        rdiag[k] = alpha;
        for j in k + 1..d {
            apply_reflector(&mut a[j], &v, beta, k);
        }
        reflectors.push((k, v, beta));
    }

    // Q = H_0 H_1 ... H_{d-1} applied to the identity, reflectors in reverse.
    let mut q: Vec<Vec<Complex64>> = (0..d)
        .map(|j| {
            let mut col = vec![C_ZERO; d];
            col[j] = C_ONE;
            col
        })
        .collect();
    for (k, v, beta) in reflectors.iter().rev() {
        for col in q.iter_mut() {
            apply_reflector(col, v, *beta, *k);
        }
    }

    // Phase correction: U = Q diag(r_jj / |r_jj|).
    let mut out = CMatrix::zeros(d, d);
    for (j, col) in q.iter().enumerate() {
        let ph = if rdiag[j].norm() > 0.0 {
            rdiag[j] / rdiag[j].norm()
        } else {
            C_ONE
        };
        for (i, &z) in col.iter().enumerate() {
            out.set(i, j, z * ph);
        }
    }
    Ok(out)
}

/// Applies `(I - beta v v†)` to `col`, touching rows `k..` only.
fn apply_reflector(col: &mut [Complex64], v: &[Complex64], beta: f64, k: usize) {
    let mut w = C_ZERO;
    for (vi, ci) in v[k..].iter().zip(col[k..].iter()) {
        w += vi.conj() * ci;
    }
    if w == C_ZERO {
        return;
    }
    let wb = w * beta;
    for (vi, ci) in v[k..].iter().zip(col[k..].iter_mut()) {
        *ci -= wb * vi;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn output_is_unitary() {
        let mut stream = SeedStream::new(1);
        for &d in &[1usize, 2, 3, 8, 17] {
            let u = haar_unitary(d, &mut stream).unwrap();
            assert!(u.is_unitary(1e-10), "d={d}");
        }
    }

    #[test]
    fn rejects_zero_dimension() {
        let mut stream = SeedStream::new(1);
        assert!(haar_unitary(0, &mut stream).is_err());
    }

    #[test]
    fn deterministic_for_fixed_stream() {
        let mut s1 = SeedStream::new(99);
        let mut s2 = SeedStream::new(99);
        let u1 = haar_unitary(5, &mut s1).unwrap();
        let u2 = haar_unitary(5, &mut s2).unwrap();
        assert!(u1.max_abs_diff(&u2) == 0.0);
    }

    #[test]
    fn first_moment_matches_haar() {
        // E|U_00|^2 = 1/d at d=4, averaged over 10^4 samples.
        let d = 4;
        let n = 10_000;
        let mut stream = SeedStream::new(12345);
        let mut acc = 0.0;
        for _ in 0..n {
            let u = haar_unitary(d, &mut stream).unwrap();
            acc += u.get(0, 0).norm_sqr();
        }
        let mean = acc / n as f64;
        assert!((mean - 0.25).abs() < 0.01, "mean {mean}");
    }

    #[test]
    fn second_moment_matches_haar() {
        // E |<m|U|0>|^4 = 2/(d(d+1)) = 1/3 at d=2, over 10^5 samples.
        let n = 100_000;
        let mut stream = SeedStream::new(777);
        let mut acc = 0.0;
        for _ in 0..n {
            let u = haar_unitary(2, &mut stream).unwrap();
            acc += u.get(0, 0).norm_sqr().powi(2);
        }
        let mean = acc / n as f64;
        assert!((mean - 1.0 / 3.0).abs() < 0.01, "mean {mean}");
    }

    #[test]
    fn phase_distribution_is_not_biased() {
        // Without the R-diagonal fix, diagonal entries of Q cluster around
        // positive phase. Check the mean diagonal phase vanishes.
        let n = 4_000;
        let mut stream = SeedStream::new(31);
        let mut acc = C_ZERO;
        for _ in 0..n {
            let u = haar_unitary(3, &mut stream).unwrap();
            let z = u.get(0, 0);
            acc += z / z.norm();
        }
        let mean = acc / Complex64::new(n as f64, 0.0);
        assert!(mean.norm() < 0.05, "mean phase {mean}");
    }
}
