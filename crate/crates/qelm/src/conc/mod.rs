//! Concentration experiments: variance bounds, twirl statistics, noise decay.

mod bounds;
mod stats;
mod sweeps;
mod twirl;

pub use bounds::{
    encoding_bound, encoding_bound_trials, entanglement_bound_check, entanglement_bound_trials,
    global_measurement_bound, noise_bound, reservoir_bound, reservoir_bound_trials,
};
pub use stats::{haar_coefficient_stats, hypothesis_test_sim, HaarStatsReport, HypothesisReport};
pub use sweeps::{
    global_measurement_experiment, noise_concentration_experiment, var_over_inputs,
    var_over_reservoirs, GlobalMeasurementReport,
};
pub use twirl::{expressibility_measure, haar_twirl_two_copies, swap_operator, ExpressibilityEstimate};

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::Result;

/// Slack added to the right-hand side when deciding whether a bound held.
pub const BOUND_SLACK: f64 = 1e-9;

/// One evaluated inequality: measured left side, bound right side, verdict.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundReport {
    /// Short label for the inequality instance.
    pub label: String,
    /// Measured left-hand side.
    pub lhs: f64,
    /// Bound right-hand side.
    pub rhs: f64,
    /// Whether lhs <= rhs + slack; `None` when the bound does not apply.
    pub satisfied: Option<bool>,
}

impl BoundReport {
    /// Builds a report, deciding satisfaction with the standard slack.
    pub fn new(label: impl Into<String>, lhs: f64, rhs: f64) -> Self {
        let satisfied = if rhs.is_nan() {
            None
        } else {
            Some(lhs <= rhs + BOUND_SLACK)
        };
        BoundReport {
            label: label.into(),
            lhs,
            rhs,
            satisfied,
        }
    }

    /// Builds a report for a bound that does not apply (rhs undefined).
    pub fn inapplicable(label: impl Into<String>, lhs: f64) -> Self {
        BoundReport {
            label: label.into(),
            lhs,
            rhs: f64::NAN,
            satisfied: None,
        }
    }
}

/// Which concentration experiment a sweep row came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepQuantity {
    /// Variance of the readout over encoded inputs.
    InputVariance,
    /// Variance of the readout over random reservoirs at fixed input.
    ReservoirVariance,
    /// Deviation of a product readout from zero under shallow circuits.
    GlobalMeasurement,
    /// Distance of the readout from its noise fixed point.
    NoiseDecay,
}

impl SweepQuantity {
    /// Stable text tag used in CSV output.
    pub fn tag(&self) -> &'static str {
        match self {
            SweepQuantity::InputVariance => "input_variance",
            SweepQuantity::ReservoirVariance => "reservoir_variance",
            SweepQuantity::GlobalMeasurement => "global_measurement",
            SweepQuantity::NoiseDecay => "noise_decay",
        }
    }
}

/// Configuration for a concentration sweep.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    /// Which quantity to sweep.
    pub quantity: SweepQuantity,
    /// Accessible-register sizes to visit.
    pub n_a_values: Vec<usize>,
    /// Hidden-register size.
    #[serde(default)]
    pub n_h: usize,
    /// Circuit depths to visit (0 means a dense Haar reservoir).
    #[serde(default)]
    pub depths: Vec<usize>,
    /// Single-qubit depolarizing strengths to visit.
    #[serde(default)]
    pub noise_levels: Vec<f64>,
    /// Pauli observable prefix over the accessible qubits (default "ZZ",
    /// truncated to fit and padded with identities).
    #[serde(default)]
    pub observable: Option<String>,
    /// Samples per configuration.
    pub n_samples: usize,
    /// Master seed.
    pub seed: u64,
}

impl SweepConfig {
    /// Validates ranges and budgets before running.
    pub fn validate(&self) -> Result<()> {
        if self.n_a_values.is_empty() {
            return Err(Error::Config("n_a_values must be nonempty".into()));
        }
        if self.n_samples < 100 {
            return Err(Error::Config(
                "n_samples must be at least 100 for stable variance estimates".into(),
            ));
        }
        for &n_a in &self.n_a_values {
            if n_a == 0 {
                return Err(Error::Config("accessible register must be nonempty".into()));
            }
            if n_a + self.n_h > 12 {
                return Err(Error::Budget(format!(
                    "total register {} exceeds the 12-qubit dense budget",
                    n_a + self.n_h
                )));
            }
        }
        for &p in &self.noise_levels {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::Config(format!("noise level {p} outside [0, 1]")));
            }
        }
        Ok(())
    }
}

/// One output row of a concentration sweep.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepRow {
    /// Experiment tag.
    pub experiment: String,
    /// Accessible-register size.
    pub n_a: usize,
    /// Hidden-register size.
    pub n_h: usize,
    /// Circuit depth (0 for dense Haar reservoirs).
    pub depth: usize,
    /// Depolarizing strength (0 when noiseless).
    pub noise_p: f64,
    /// Seed actually used for this row.
    pub seed: u64,
    /// Number of samples behind the statistic.
    pub n_samples: usize,
    /// Name of the reported statistic.
    pub statistic: String,
    /// Measured value.
    pub value: f64,
    /// Bootstrap standard error of the value.
    pub stderr: f64,
    /// Theoretical bound for the value, NaN when none applies.
    pub bound: f64,
    /// Whether value <= bound + slack; `None` when no bound applies.
    pub satisfied: Option<bool>,
}

/// Mean of a sample.
pub(crate) fn mean(xs: &[f64]) -> f64 {
    assert!(!xs.is_empty());
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Unbiased sample variance.
pub(crate) fn variance_unbiased(xs: &[f64]) -> f64 {
    assert!(xs.len() >= 2);
    let m = mean(xs);
    xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (xs.len() - 1) as f64
}

/// Bootstrap standard error of a statistic over a sample.
pub(crate) fn bootstrap_se(
    xs: &[f64],
    statistic: impl Fn(&[f64]) -> f64,
    resamples: usize,
    stream: &mut crate::rng::SeedStream,
) -> f64 {
    assert!(!xs.is_empty());
    let mut values = Vec::with_capacity(resamples);
    let mut buf = vec![0.0; xs.len()];
    for _ in 0..resamples {
        for slot in buf.iter_mut() {
            *slot = xs[stream.below(xs.len())];
        }
        values.push(statistic(&buf));
    }
    if values.len() < 2 {
        return 0.0;
    }
    variance_unbiased(&values).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SeedStream;

    #[test]
    fn bound_report_respects_slack() {
        let r = BoundReport::new("x", 1.0 + 0.5e-9, 1.0);
        assert_eq!(r.satisfied, Some(true));
        let r = BoundReport::new("x", 1.0 + 1e-6, 1.0);
        assert_eq!(r.satisfied, Some(false));
        let r = BoundReport::new("x", 1.0, f64::NAN);
        assert_eq!(r.satisfied, None);
    }

    #[test]
    fn mean_and_variance_match_hand_values() {
        let xs = [1.0, 2.0, 3.0, 4.0];
        assert!((mean(&xs) - 2.5).abs() < 1e-15);
        // Sum of squared deviations 5.0 over n-1 = 3.
        assert!((variance_unbiased(&xs) - 5.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn bootstrap_se_shrinks_with_sample_size() {
        let mut stream = SeedStream::new(11);
        let small: Vec<f64> = (0..20).map(|_| stream.uniform()).collect();
        let large: Vec<f64> = (0..2000).map(|_| stream.uniform()).collect();
        let mut s1 = stream.substream("boot", 0);
        let mut s2 = stream.substream("boot", 1);
        let se_small = bootstrap_se(&small, mean, 200, &mut s1);
        let se_large = bootstrap_se(&large, mean, 200, &mut s2);
        assert!(se_large < se_small);
    }

    #[test]
    fn sweep_config_validation_catches_bad_inputs() {
        let base = SweepConfig {
            quantity: SweepQuantity::InputVariance,
            n_a_values: vec![2],
            n_h: 1,
            depths: vec![0],
            noise_levels: vec![],
            observable: None,
            n_samples: 100,
            seed: 1,
        };
        assert!(base.validate().is_ok());
        let mut bad = base.clone();
        bad.n_a_values = vec![];
        assert!(bad.validate().is_err());
        let mut bad = base.clone();
        bad.n_samples = 99;
        assert!(bad.validate().is_err());
        let mut bad = base.clone();
        bad.n_a_values = vec![13];
        assert!(bad.validate().is_err());
        let mut bad = base.clone();
        bad.noise_levels = vec![1.5];
        assert!(bad.validate().is_err());
    }
}
