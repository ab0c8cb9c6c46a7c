//! Two-copy Haar twirl and the expressibility distance built on it.

use crate::error::Error;
use crate::Result;
use crate::linalg::{kron, trace_norm, CMatrix, Complex64};
use crate::rng::SeedStream;

use super::variance_unbiased;

/// Swap operator on two copies: S|i,j> = |j,i>.
pub fn swap_operator(d: usize) -> CMatrix {
    let mut s = CMatrix::zeros(d * d, d * d);
    for i in 0..d {
        for j in 0..d {
            s.set(j * d + i, i * d + j, Complex64::new(1.0, 0.0));
        }
    }
    s
}

/// Exact two-copy Haar average `E_U[(U ⊗ U) A (U ⊗ U)†] = c_I I + c_S S`.
///
/// The coefficients follow from taking traces against I and S:
/// `c_I = (Tr A - Tr[S A]/d) / (d² - 1)`, `c_S = (Tr[S A] - Tr A/d) / (d² - 1)`.
pub fn haar_twirl_two_copies(a: &CMatrix) -> CMatrix {
    let dd = a.rows;
    assert_eq!(a.rows, a.cols, "twirl needs a square operator");
    let d = (dd as f64).sqrt().round() as usize;
    assert_eq!(d * d, dd, "two-copy operator dimension must be a square");
    let s = swap_operator(d);
    let tr_a = a.trace();
    let tr_sa = s.matmul(a).trace();
    let denom = (d * d - 1) as f64;
    let c_i = (tr_a - tr_sa / d as f64) / denom;
    let c_s = (tr_sa - tr_a / d as f64) / denom;
    let mut out = s.scale(c_s);
    for i in 0..dd {
        let v = out.get(i, i) + c_i;
        out.set(i, i, v);
    }
    out
}

/// Monte Carlo estimate of the expressibility distance of a unitary ensemble.
#[derive(Debug, Clone)]
pub struct ExpressibilityEstimate {
    /// Trace-norm distance between the exact Haar two-copy moment and the
    /// ensemble's empirical two-copy moment.
    pub epsilon: f64,
    /// Batch-bootstrap standard error of the distance.
    pub stderr: f64,
    /// Number of ensemble samples.
    pub n_samples: usize,
}

/// Estimates `|| E_Haar[(UρU†)^{⊗2}] - E_ensemble[(UρU†)^{⊗2}] ||_1` by
/// sampling `n_mc` unitaries from the ensemble.
///
/// The error bar comes from a batch bootstrap: samples are grouped into up to
/// 50 batches, and the distance is recomputed over 200 resamples of the
/// batch sums.
pub fn expressibility_measure(
    rho0: &CMatrix,
    n_mc: usize,
    mut sampler: impl FnMut(&mut SeedStream) -> Result<CMatrix>,
    stream: &mut SeedStream,
) -> Result<ExpressibilityEstimate> {
    assert_eq!(rho0.rows, rho0.cols, "state must be square");
    if n_mc == 0 {
        return Err(Error::Config("expressibility needs at least one sample".into()));
    }
    let d = rho0.rows;
    if d > 64 {
        return Err(Error::Budget(format!(
            "two-copy moment at dimension {d} exceeds the dense budget"
        )));
    }
    let target = haar_twirl_two_copies(&kron(rho0, rho0));

    let n_batches = n_mc.min(50);
    let mut batch_sums = vec![CMatrix::zeros(d * d, d * d); n_batches];
    let mut batch_counts = vec![0usize; n_batches];
    for i in 0..n_mc {
        let u = sampler(stream)?;
        assert_eq!(u.rows, d, "sampled unitary has the wrong dimension");
        let sigma = u.matmul(rho0).matmul(&u.adjoint());
        let two = kron(&sigma, &sigma);
        let b = i * n_batches / n_mc;
        batch_sums[b] = batch_sums[b].add(&two);
        batch_counts[b] += 1;
    }

    let mut total = CMatrix::zeros(d * d, d * d);
    for s in &batch_sums {
        total = total.add(s);
    }
    let mean = total.scale(Complex64::new(1.0 / n_mc as f64, 0.0));
    let epsilon = trace_norm(&target.sub(&mean));

    let stderr = if n_batches < 2 {
        0.0
    } else {
        let resamples = 200;
        let mut values = Vec::with_capacity(resamples);
        for _ in 0..resamples {
            let mut acc = CMatrix::zeros(d * d, d * d);
            let mut n_eff = 0usize;
            for _ in 0..n_batches {
                let idx = stream.below(n_batches);
                acc = acc.add(&batch_sums[idx]);
                n_eff += batch_counts[idx];
            }
            if n_eff == 0 {
                continue;
            }
            let m = acc.scale(Complex64::new(1.0 / n_eff as f64, 0.0));
            values.push(trace_norm(&target.sub(&m)));
        }
        if values.len() < 2 {
            0.0
        } else {
            variance_unbiased(&values).sqrt()
        }
    };

    Ok(ExpressibilityEstimate {
        epsilon,
        stderr,
        n_samples: n_mc,
    })
}
