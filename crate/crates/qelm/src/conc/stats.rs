//! Monte Carlo statistics of readout Fourier coefficients over random
//! reservoirs, and the two-distribution hypothesis-testing simulation.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::Result;
use crate::linalg::{haar_unitary, Complex64};
use crate::pauli::PauliString;
use crate::rng::SeedStream;

use super::{mean, variance_unbiased};

/// Empirical moments of the coefficient entries `a_uv = α ⟨u,0|U†OU|v,0⟩`
/// over Haar-random reservoirs, with their exact Haar expectations.
///
/// The designated index pairs are (0,1) off-diagonal, (0,0) and (1,1)
/// diagonal, and (2,3) as a second disjoint off-diagonal pair.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HaarStatsReport {
    /// Reservoir samples.
    pub n_samples: usize,
    /// Full register dimension 2^n.
    pub dim: usize,
    /// Common coefficient weight α = 1/2^{n_A}.
    pub alpha: f64,
    /// Mean of the (0,1) entry as (re, im); expectation is zero.
    pub mean_offdiag: (f64, f64),
    /// Standard error of `mean_offdiag`.
    pub mean_offdiag_se: f64,
    /// Mean of the (0,0) entry; expectation is zero.
    pub mean_diag: f64,
    /// Standard error of `mean_diag`.
    pub mean_diag_se: f64,
    /// Sample variance of the (0,1) entry.
    pub var_offdiag: f64,
    /// Exact Haar value α² d/(d²−1).
    pub var_offdiag_expected: f64,
    /// Sample variance of the (0,0) entry.
    pub var_diag: f64,
    /// Exact Haar value α²/(d+1).
    pub var_diag_expected: f64,
    /// Sample covariance of the (0,0) and (1,1) entries.
    pub cov_diag: f64,
    /// Exact Haar value −α²/(d²−1).
    pub cov_diag_expected: f64,
    /// Sample covariance of the (0,1) and (2,3) entries as (re, im);
    /// expectation is zero for disjoint index pairs.
    pub cov_distinct: (f64, f64),
    /// Standard error of `cov_distinct`.
    pub cov_distinct_se: f64,
}

/// Applies a Pauli string to a vector: `out = O v`.
fn pauli_apply(obs: &PauliString, v: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); v.len()];
    for (i, &amp) in v.iter().enumerate() {
        let (j, phase) = obs.action(i);
        out[j] += phase * amp;
    }
    out
}

/// Inner product `⟨a|b⟩` with the left argument conjugated.
fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Unbiased covariance of two real samples.
fn covariance(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    assert!(a.len() >= 2);
    let ma = mean(a);
    let mb = mean(b);
    a.iter()
        .zip(b)
        .map(|(&x, &y)| (x - ma) * (y - mb))
        .sum::<f64>()
        / (a.len() - 1) as f64
}

/// Samples Haar-random reservoirs and reports the empirical moments of four
/// designated coefficient entries against their exact Haar values.
///
/// The initial accessible state is the uniform superposition, so every
/// basis-pair weight is α = 1/2^{n_A}; the observable must be a non-identity
/// Pauli string on the full register.
pub fn haar_coefficient_stats(
    n_a: usize,
    n_h: usize,
    obs: &PauliString,
    n_samples: usize,
    seed: u64,
) -> Result<HaarStatsReport> {
    if n_a < 2 {
        return Err(Error::Config(
            "coefficient statistics need at least 4 accessible basis states".into(),
        ));
    }
    let n = n_a + n_h;
    if n > 6 {
        return Err(Error::Budget(format!(
            "sampling dense Haar reservoirs on {n} qubits is over budget"
        )));
    }
    if obs.n_qubits() != n {
        return Err(Error::InvalidDimension(format!(
            "observable acts on {} qubits, register has {n}",
            obs.n_qubits()
        )));
    }
    if obs.to_string().chars().all(|c| c == 'I') {
        return Err(Error::Config("observable must not be the identity".into()));
    }
    if n_samples < 2 {
        return Err(Error::Config("need at least two samples".into()));
    }

    let d = 1usize << n;
    let alpha = 1.0 / (1usize << n_a) as f64;
    let mut stream = SeedStream::new(seed).substream("coefficient-stats", 0);

    // Per-sample values of the designated entries.
    let mut a01_re = Vec::with_capacity(n_samples);
    let mut a01_im = Vec::with_capacity(n_samples);
    let mut a00 = Vec::with_capacity(n_samples);
    let mut a11 = Vec::with_capacity(n_samples);
    let mut a23_re = Vec::with_capacity(n_samples);
    let mut a23_im = Vec::with_capacity(n_samples);

    let columns: Vec<usize> = [0usize, 1, 2, 3].iter().map(|&u| u << n_h).collect();
    for _ in 0..n_samples {
        let u_r = haar_unitary(d, &mut stream)?;
        let w: Vec<Vec<Complex64>> = columns.iter().map(|&c| u_r.column(c)).collect();
        let ow: Vec<Vec<Complex64>> = w.iter().map(|col| pauli_apply(obs, col)).collect();
        let entry = |u: usize, v: usize| dot(&w[u], &ow[v]) * alpha;
        let e01 = entry(0, 1);
        a01_re.push(e01.re);
        a01_im.push(e01.im);
        a00.push(entry(0, 0).re);
        a11.push(entry(1, 1).re);
        let e23 = entry(2, 3);
        a23_re.push(e23.re);
        a23_im.push(e23.im);
    }

    let nf = n_samples as f64;
    let df = d as f64;
    // Complex variance: E|a − ā|² splits into the two real components.
    let var_offdiag = variance_unbiased(&a01_re) + variance_unbiased(&a01_im);
    let mean_offdiag = (mean(&a01_re), mean(&a01_im));
    let mean_offdiag_se = (var_offdiag / nf).sqrt();

    // Complex covariance E[(a−ā)(b−b̄)*] of the disjoint entries.
    let cross_re = covariance(&a01_re, &a23_re) + covariance(&a01_im, &a23_im);
    let cross_im = covariance(&a01_im, &a23_re) - covariance(&a01_re, &a23_im);
    // Both entries share the off-diagonal variance, so the covariance
    // estimator scatters like var/sqrt(N).
    let cov_distinct_se = (var_offdiag / nf.sqrt()).max(1e-300);

    Ok(HaarStatsReport {
        n_samples,
        dim: d,
        alpha,
        mean_offdiag,
        mean_offdiag_se,
        mean_diag: mean(&a00),
        mean_diag_se: (variance_unbiased(&a00) / nf).sqrt(),
        var_offdiag,
        var_offdiag_expected: alpha * alpha * df / (df * df - 1.0),
        var_diag: variance_unbiased(&a00),
        var_diag_expected: alpha * alpha / (df + 1.0),
        cov_diag: covariance(&a00, &a11),
        cov_diag_expected: -alpha * alpha / (df * df - 1.0),
        cov_distinct: (cross_re, cross_im),
        cov_distinct_se,
    })
}

/// Outcome of the two-distribution discrimination simulation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HypothesisReport {
    /// Bias of the structured distribution (probability of +1).
    pub p_true: f64,
    /// Samples shown to the decision rule per trial.
    pub n_samples_per_trial: usize,
    /// Number of simulated trials.
    pub n_trials: usize,
    /// Fraction of trials where the rule named the right distribution.
    pub success_rate: f64,
    /// Binomial standard error of the success rate.
    pub success_se: f64,
    /// Closed-form single-sample success probability ½ + |p − ½|/2.
    pub single_sample_success: f64,
}

/// Simulates discriminating a biased ±1 distribution from a fair one with
/// the likelihood-ratio rule.
///
/// Each trial picks the true distribution by a fair coin, draws the samples,
/// and decides from the sign of the log-likelihood ratio; ties go to the
/// fair distribution.
///
/// ```
/// use qelm::conc::hypothesis_test_sim;
///
/// let rep = hypothesis_test_sim(0.6, 1, 4000, 9).unwrap();
/// // One sample: optimal success is 1/2 + |p - 1/2| / 2 = 0.55.
/// assert!((rep.single_sample_success - 0.55).abs() < 1e-12);
/// assert!((rep.success_rate - 0.55).abs() < 0.02);
/// ```
pub fn hypothesis_test_sim(
    p_true: f64,
    n_samples_per_trial: usize,
    n_trials: usize,
    seed: u64,
) -> Result<HypothesisReport> {
    if !(0.0..=1.0).contains(&p_true) {
        return Err(Error::Config(format!("bias {p_true} outside [0, 1]")));
    }
    if n_samples_per_trial == 0 || n_trials == 0 {
        return Err(Error::Config("trial counts must be positive".into()));
    }
    let mut stream = SeedStream::new(seed).substream("hypothesis", 0);
    // Log-likelihood contributions of a +1 and a -1 sample.
    let lp = (p_true / 0.5).ln();
    let lm = ((1.0 - p_true) / 0.5).ln();
    let mut successes = 0usize;
    for _ in 0..n_trials {
        let truth_biased = stream.bernoulli(0.5);
        let p_plus = if truth_biased { p_true } else { 0.5 };
        let mut plus = 0usize;
        for _ in 0..n_samples_per_trial {
            if stream.bernoulli(p_plus) {
                plus += 1;
            }
        }
        let minus = n_samples_per_trial - plus;
        // llr > 0 decides the biased distribution; ties go to the fair one.
        let llr = plus as f64 * lp + minus as f64 * lm;
        let decide_biased = llr > 0.0;
        if decide_biased == truth_biased {
            successes += 1;
        }
    }
    let rate = successes as f64 / n_trials as f64;
    Ok(HypothesisReport {
        p_true,
        n_samples_per_trial,
        n_trials,
        success_rate: rate,
        success_se: (rate * (1.0 - rate) / n_trials as f64).sqrt(),
        single_sample_success: 0.5 + (p_true - 0.5).abs() / 2.0,
    })
}
