//! Strict JSON experiment configs with dotted-path overrides.
//!
//! Every batch experiment is described by a single JSON object whose
//! `experiment` field selects the schema. Unknown keys are rejected so a
//! typo never silently falls back to a default, and the resolved config is
//! embedded verbatim in the run manifest for provenance.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::encoding::EncodingScheme;
use crate::error::Error;
use crate::reservoir::ReservoirKind;
use crate::Result;

fn default_true() -> bool {
    true
}

fn default_tol() -> f64 {
    1e-10
}

fn default_lambda() -> f64 {
    1e-10
}

fn default_n_test() -> usize {
    200
}

/// A fully resolved experiment description, tagged by `experiment`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "experiment", rename_all = "snake_case")]
pub enum ExperimentConfig {
    /// Exact Fourier spectrum of one readout, with a DFT cross-check.
    Spectrum(SpectrumConfig),
    /// Average active-frequency count across reservoirs and register sizes.
    Richness(RichnessConfig),
    /// Ridge-trained models on a band-limited target, swept over M.
    Train(TrainConfig),
    /// Rank of the Fourier coefficient matrix against its ceiling.
    Expressivity(ExpressivityConfig),
    /// Concentration measurements: variances, bound checks, noise decay.
    Concentration(ConcentrationConfig),
    /// Empirical moments of Haar-reservoir Fourier coefficients.
    Haarstats(HaarStatsConfig),
    /// Biased-coin discrimination success rates.
    Hypothesis(HypothesisConfig),
    /// Classical surrogates replaying a trained model's spectrum.
    Surrogate(SurrogateConfig),
}

/// Config for the `spectrum` experiment.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectrumConfig {
    /// Accessible qubits carrying the input.
    pub n_a: usize,
    /// Hidden qubits appended in |0>.
    #[serde(default)]
    pub n_h: usize,
    /// Encoding family; must have a product generator.
    pub encoding: EncodingScheme,
    /// Reservoir family on the full register.
    pub reservoir: ReservoirKind,
    /// Pauli string on all n_a + n_h qubits, e.g. "ZIII".
    pub observable: String,
    /// Also extract the spectrum by DFT and report the deviation per row.
    #[serde(default = "default_true")]
    pub dft_check: bool,
    /// Master seed (recorded; the run itself is seed-free unless the
    /// reservoir embeds one).
    #[serde(default)]
    pub seed: u64,
    /// Output directory; the --out flag takes precedence.
    #[serde(default)]
    pub out: Option<String>,
}

/// Config for the `richness` experiment.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RichnessConfig {
    /// Accessible register sizes to visit.
    pub n_a_values: Vec<usize>,
    /// Hidden qubits appended in |0>.
    #[serde(default)]
    pub n_h: usize,
    /// Encoding family; must have a product generator.
    pub encoding: EncodingScheme,
    /// Reservoir families compared side by side.
    pub reservoirs: Vec<ReservoirKind>,
    /// Relative threshold for counting a coefficient as active.
    #[serde(default = "default_tol")]
    pub tol: f64,
    /// Master seed (recorded only).
    #[serde(default)]
    pub seed: u64,
    /// Output directory; the --out flag takes precedence.
    #[serde(default)]
    pub out: Option<String>,
}

/// Config for the `train` experiment.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrainConfig {
    /// Accessible qubits carrying the input.
    pub n_a: usize,
    /// Hidden qubits appended in |0>.
    #[serde(default)]
    pub n_h: usize,
    /// Encoding family.
    pub encoding: EncodingScheme,
    /// Reservoir family on the full register.
    pub reservoir: ReservoirKind,
    /// Observable counts M to sweep; observables are drawn from the seed.
    pub m_values: Vec<usize>,
    /// Band limit of the random trigonometric target.
    pub target_k: usize,
    /// Training points, equidistant on [0, 2pi].
    pub n_train: usize,
    /// Held-out points, offset midpoints of the same interval.
    #[serde(default = "default_n_test")]
    pub n_test: usize,
    /// Ridge regularization strength.
    #[serde(default = "default_lambda")]
    pub lambda: f64,
    /// Master seed for target coefficients and observable draws.
    #[serde(default)]
    pub seed: u64,
    /// Output directory; the --out flag takes precedence.
    #[serde(default)]
    pub out: Option<String>,
}

/// Config for the `expressivity` experiment.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpressivityConfig {
    /// Accessible qubits carrying the input.
    pub n_a: usize,
    /// Hidden qubits appended in |0>.
    #[serde(default)]
    pub n_h: usize,
    /// Encoding family; must have a product generator.
    pub encoding: EncodingScheme,
    /// Reservoir family on the full register.
    pub reservoir: ReservoirKind,
    /// Observable counts M to sweep; prefixes of one drawn sequence.
    pub m_values: Vec<usize>,
    /// Master seed for the observable draws.
    #[serde(default)]
    pub seed: u64,
    /// Output directory; the --out flag takes precedence.
    #[serde(default)]
    pub out: Option<String>,
}

/// Config for the `concentration` experiment, tagged by `kind`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConcentrationConfig {
    /// Readout variance over inputs per (n_A, depth) grid point.
    Encoding(VarianceSweepConfig),
    /// Readout variance over resampled reservoirs at a fixed input.
    Reservoir(VarianceSweepConfig),
    /// Randomized pure/mixed-state checks of the entanglement distance bound.
    Entanglement(EntanglementConfig),
    /// Product-measurement second moment against its per-qubit bound.
    Global(GlobalConfig),
    /// Distance to the noise fixed point versus circuit depth.
    Noise(NoiseConfig),
}

/// Grid config shared by the encoding and reservoir variance sweeps.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VarianceSweepConfig {
    /// Accessible register sizes to visit.
    pub n_a_values: Vec<usize>,
    /// Hidden qubits appended in |0>.
    #[serde(default)]
    pub n_h: usize,
    /// Circuit depths to visit (0 means a dense Haar reservoir; input
    /// sweeps need depth >= 1).
    pub depths: Vec<usize>,
    /// Pauli prefix over the accessible qubits (default "ZZ").
    #[serde(default)]
    pub observable: Option<String>,
    /// Samples per grid point (at least 100).
    pub n_samples: usize,
    /// Master seed.
    #[serde(default)]
    pub seed: u64,
    /// Output directory; the --out flag takes precedence.
    #[serde(default)]
    pub out: Option<String>,
}

/// Config for the entanglement bound trial suite.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntanglementConfig {
    /// Randomized trials to run.
    pub n_trials: usize,
    /// Master seed.
    #[serde(default)]
    pub seed: u64,
    /// Output directory; the --out flag takes precedence.
    #[serde(default)]
    pub out: Option<String>,
}

/// Config for the global product-measurement experiment.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GlobalConfig {
    /// Encoded qubits (each carries an independent input).
    pub n_a: usize,
    /// Extra qubits fixed in |0> before the projector.
    #[serde(default)]
    pub n_h: usize,
    /// Per-qubit encoding depth (0 draws fresh Haar gates per sample).
    #[serde(default)]
    pub depth: usize,
    /// Input samples (at least 100).
    pub n_samples: usize,
    /// Master seed.
    #[serde(default)]
    pub seed: u64,
    /// Output directory; the --out flag takes precedence.
    #[serde(default)]
    pub out: Option<String>,
}

/// Config for the noise-decay experiment.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NoiseConfig {
    /// Accessible qubits (1..=8).
    pub n_a: usize,
    /// Hidden qubits appended in |0>.
    #[serde(default)]
    pub n_h: usize,
    /// Encoding depths L to record.
    pub depths: Vec<usize>,
    /// Depolarizing strengths p in [0, 1].
    pub noise_levels: Vec<f64>,
    /// Inputs per (L, p) cell.
    pub n_inputs: usize,
    /// Master seed.
    #[serde(default)]
    pub seed: u64,
    /// Output directory; the --out flag takes precedence.
    #[serde(default)]
    pub out: Option<String>,
}

/// Config for the `haarstats` experiment.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HaarStatsConfig {
    /// Accessible qubits (at least 2, for four embedded columns).
    pub n_a: usize,
    /// Hidden qubits appended in |0>.
    #[serde(default)]
    pub n_h: usize,
    /// Pauli string on all n_a + n_h qubits.
    pub observable: String,
    /// Haar reservoir samples (at least 100).
    pub n_samples: usize,
    /// Master seed.
    #[serde(default)]
    pub seed: u64,
    /// Output directory; the --out flag takes precedence.
    #[serde(default)]
    pub out: Option<String>,
}

/// Config for the `hypothesis` experiment.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HypothesisConfig {
    /// Heads probability of the biased alternative, in (0, 1).
    pub p_true: f64,
    /// Samples per trial, one row each.
    pub n_samples_values: Vec<usize>,
    /// Monte Carlo trials per row (at least 100).
    pub n_trials: usize,
    /// Master seed.
    #[serde(default)]
    pub seed: u64,
    /// Output directory; the --out flag takes precedence.
    #[serde(default)]
    pub out: Option<String>,
}

/// Config for the `surrogate` experiment.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurrogateConfig {
    /// Accessible qubits carrying the input.
    pub n_a: usize,
    /// Hidden qubits appended in |0>.
    #[serde(default)]
    pub n_h: usize,
    /// Encoding family; must have a product generator.
    pub encoding: EncodingScheme,
    /// Reservoir family on the full register.
    pub reservoir: ReservoirKind,
    /// Observables measured by the machine being surrogated.
    pub m: usize,
    /// Band limit of the training target.
    pub target_k: usize,
    /// Training points for the quantum model.
    pub n_train: usize,
    /// Points of the model's own output the surrogates fit.
    pub n_fit: usize,
    /// Unseen evaluation points.
    pub n_eval: usize,
    /// Sampled frequencies for the reduced surrogate (default |Omega|/5,
    /// at least 1).
    #[serde(default)]
    pub rff_k: Option<usize>,
    /// Ridge regularization strength.
    #[serde(default = "default_lambda")]
    pub lambda: f64,
    /// Master seed.
    #[serde(default)]
    pub seed: u64,
    /// Output directory; the --out flag takes precedence.
    #[serde(default)]
    pub out: Option<String>,
}

fn cfg_err(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}

fn budget_err(msg: impl Into<String>) -> Error {
    Error::Budget(msg.into())
}

/// Checks that a register fits the dense-simulation budget.
fn check_register(n_a: usize, n_h: usize, cap: usize) -> Result<()> {
    if n_a == 0 {
        return Err(cfg_err("n_a must be at least 1"));
    }
    if n_a + n_h > cap {
        return Err(budget_err(format!(
            "register n_a + n_h = {} exceeds the {cap}-qubit budget for this experiment",
            n_a + n_h
        )));
    }
    Ok(())
}

/// Spectra require a product generator and a bounded frequency count.
fn check_spectral_encoding(scheme: &EncodingScheme, n_a: usize) -> Result<()> {
    if matches!(scheme, EncodingScheme::Layered { .. }) {
        return Err(cfg_err(
            "layered encodings have no product generator spectrum; use pauli_reupload or exponential",
        ));
    }
    if matches!(scheme, EncodingScheme::Exponential) && n_a > 6 {
        return Err(budget_err(format!(
            "exponential encoding at n_a = {n_a} carries 3^{n_a} frequencies; capped at n_a = 6"
        )));
    }
    Ok(())
}

fn check_observable(text: &str, n_total: usize) -> Result<()> {
    let p: crate::pauli::PauliString = text.parse()?;
    if p.n_qubits() != n_total {
        return Err(cfg_err(format!(
            "observable {text:?} acts on {} qubits, register has {n_total}",
            p.n_qubits()
        )));
    }
    Ok(())
}

impl ExperimentConfig {
    /// Parses a config from JSON text, mapping schema violations to
    /// field-level config errors.
    pub fn from_json(text: &str) -> Result<ExperimentConfig> {
        let value: Value =
            serde_json::from_str(text).map_err(|e| cfg_err(format!("config is not JSON: {e}")))?;
        Self::from_value(value)
    }

    /// Parses a config from a JSON value.
    pub fn from_value(value: Value) -> Result<ExperimentConfig> {
        serde_json::from_value(value).map_err(|e| cfg_err(format!("config rejected: {e}")))
    }

    /// The experiment tag used in file names and the manifest.
    pub fn name(&self) -> &'static str {
        match self {
            ExperimentConfig::Spectrum(_) => "spectrum",
            ExperimentConfig::Richness(_) => "richness",
            ExperimentConfig::Train(_) => "train",
            ExperimentConfig::Expressivity(_) => "expressivity",
            ExperimentConfig::Concentration(_) => "concentration",
            ExperimentConfig::Haarstats(_) => "haarstats",
            ExperimentConfig::Hypothesis(_) => "hypothesis",
            ExperimentConfig::Surrogate(_) => "surrogate",
        }
    }

    /// Artifact file stem; concentration runs append their kind.
    pub fn artifact_stem(&self) -> String {
        match self {
            ExperimentConfig::Concentration(c) => {
                let kind = match c {
                    ConcentrationConfig::Encoding(_) => "encoding",
                    ConcentrationConfig::Reservoir(_) => "reservoir",
                    ConcentrationConfig::Entanglement(_) => "entanglement",
                    ConcentrationConfig::Global(_) => "global",
                    ConcentrationConfig::Noise(_) => "noise",
                };
                format!("concentration_{kind}")
            }
            other => other.name().to_string(),
        }
    }

    /// The master seed recorded in the manifest.
    pub fn seed(&self) -> u64 {
        match self {
            ExperimentConfig::Spectrum(c) => c.seed,
            ExperimentConfig::Richness(c) => c.seed,
            ExperimentConfig::Train(c) => c.seed,
            ExperimentConfig::Expressivity(c) => c.seed,
            ExperimentConfig::Concentration(ConcentrationConfig::Encoding(c)) => c.seed,
            ExperimentConfig::Concentration(ConcentrationConfig::Reservoir(c)) => c.seed,
            ExperimentConfig::Concentration(ConcentrationConfig::Entanglement(c)) => c.seed,
            ExperimentConfig::Concentration(ConcentrationConfig::Global(c)) => c.seed,
            ExperimentConfig::Concentration(ConcentrationConfig::Noise(c)) => c.seed,
            ExperimentConfig::Haarstats(c) => c.seed,
            ExperimentConfig::Hypothesis(c) => c.seed,
            ExperimentConfig::Surrogate(c) => c.seed,
        }
    }

    /// Output directory requested inside the config, if any.
    pub fn out(&self) -> Option<&str> {
        let o = match self {
            ExperimentConfig::Spectrum(c) => &c.out,
            ExperimentConfig::Richness(c) => &c.out,
            ExperimentConfig::Train(c) => &c.out,
            ExperimentConfig::Expressivity(c) => &c.out,
            ExperimentConfig::Concentration(ConcentrationConfig::Encoding(c)) => &c.out,
            ExperimentConfig::Concentration(ConcentrationConfig::Reservoir(c)) => &c.out,
            ExperimentConfig::Concentration(ConcentrationConfig::Entanglement(c)) => &c.out,
            ExperimentConfig::Concentration(ConcentrationConfig::Global(c)) => &c.out,
            ExperimentConfig::Concentration(ConcentrationConfig::Noise(c)) => &c.out,
            ExperimentConfig::Haarstats(c) => &c.out,
            ExperimentConfig::Hypothesis(c) => &c.out,
            ExperimentConfig::Surrogate(c) => &c.out,
        };
        o.as_deref()
    }

    /// Validates ranges and budgets before any allocation happens.
    pub fn validate(&self) -> Result<()> {
        match self {
            ExperimentConfig::Spectrum(c) => {
                check_register(c.n_a, c.n_h, 10)?;
                check_spectral_encoding(&c.encoding, c.n_a)?;
                check_observable(&c.observable, c.n_a + c.n_h)
            }
            ExperimentConfig::Richness(c) => {
                if c.n_a_values.is_empty() || c.reservoirs.is_empty() {
                    return Err(cfg_err("n_a_values and reservoirs must be nonempty"));
                }
                for &n_a in &c.n_a_values {
                    check_register(n_a, c.n_h, 10)?;
                    check_spectral_encoding(&c.encoding, n_a)?;
                    if n_a > 6 {
                        return Err(budget_err(format!(
                            "richness enumerates 4^{n_a} observables; capped at n_a = 6"
                        )));
                    }
                }
                if c.tol <= 0.0 {
                    return Err(cfg_err("tol must be positive"));
                }
                Ok(())
            }
            ExperimentConfig::Train(c) => {
                check_register(c.n_a, c.n_h, 10)?;
                if c.m_values.is_empty() {
                    return Err(cfg_err("m_values must be nonempty"));
                }
                let budget = 4usize.saturating_pow((c.n_a + c.n_h) as u32) - 1;
                for &m in &c.m_values {
                    if m == 0 || m > budget {
                        return Err(cfg_err(format!(
                            "m = {m} outside 1..={budget} distinct non-identity observables"
                        )));
                    }
                }
                if c.target_k == 0 {
                    return Err(cfg_err("target_k must be at least 1"));
                }
                if c.n_train < 2 || c.n_test < 2 {
                    return Err(cfg_err("n_train and n_test must be at least 2"));
                }
                if !(c.lambda >= 0.0) {
                    return Err(cfg_err("lambda must be nonnegative"));
                }
                Ok(())
            }
            ExperimentConfig::Expressivity(c) => {
                check_register(c.n_a, c.n_h, 10)?;
                check_spectral_encoding(&c.encoding, c.n_a)?;
                if c.m_values.is_empty() {
                    return Err(cfg_err("m_values must be nonempty"));
                }
                let budget = 4usize.saturating_pow((c.n_a + c.n_h) as u32) - 1;
                for &m in &c.m_values {
                    if m == 0 || m > budget {
                        return Err(cfg_err(format!(
                            "m = {m} outside 1..={budget} distinct non-identity observables"
                        )));
                    }
                }
                Ok(())
            }
            ExperimentConfig::Concentration(kind) => kind.validate(),
            ExperimentConfig::Haarstats(c) => {
                if c.n_a < 2 {
                    return Err(cfg_err(
                        "haarstats tracks four embedded columns; n_a must be at least 2",
                    ));
                }
                check_register(c.n_a, c.n_h, 6)?;
                if c.n_samples < 100 {
                    return Err(cfg_err("n_samples must be at least 100"));
                }
                check_observable(&c.observable, c.n_a + c.n_h)
            }
            ExperimentConfig::Hypothesis(c) => {
                if !(c.p_true > 0.0 && c.p_true < 1.0) {
                    return Err(cfg_err("p_true must lie strictly inside (0, 1)"));
                }
                if c.n_samples_values.is_empty() || c.n_samples_values.contains(&0) {
                    return Err(cfg_err("n_samples_values must be nonempty and positive"));
                }
                if c.n_trials < 100 {
                    return Err(cfg_err("n_trials must be at least 100"));
                }
                let work: usize = c.n_samples_values.iter().sum::<usize>() * c.n_trials;
                if work > 100_000_000 {
                    return Err(budget_err(format!(
                        "total coin flips {work} exceed the 1e8 budget"
                    )));
                }
                Ok(())
            }
            ExperimentConfig::Surrogate(c) => {
                check_register(c.n_a, c.n_h, 10)?;
                check_spectral_encoding(&c.encoding, c.n_a)?;
                if c.n_a > 5 && matches!(c.encoding, EncodingScheme::Exponential) {
                    return Err(budget_err(
                        "surrogate design matrices are capped at n_a = 5 for the exponential scheme",
                    ));
                }
                let budget = 4usize.saturating_pow((c.n_a + c.n_h) as u32) - 1;
                if c.m == 0 || c.m > budget {
                    return Err(cfg_err(format!(
                        "m = {} outside 1..={budget} distinct non-identity observables",
                        c.m
                    )));
                }
                if c.target_k == 0 {
                    return Err(cfg_err("target_k must be at least 1"));
                }
                if c.n_train < 2 || c.n_fit < 2 || c.n_eval < 1 {
                    return Err(cfg_err("n_train, n_fit need >= 2 points and n_eval >= 1"));
                }
                if c.rff_k == Some(0) {
                    return Err(cfg_err("rff_k must be at least 1 when given"));
                }
                if !(c.lambda >= 0.0) {
                    return Err(cfg_err("lambda must be nonnegative"));
                }
                Ok(())
            }
        }
    }

    /// The built-in desk-scale preset for a subcommand name.
    pub fn preset(name: &str) -> Option<ExperimentConfig> {
        let cfg = match name {
            "spectrum" => ExperimentConfig::Spectrum(SpectrumConfig {
                n_a: 2,
                n_h: 2,
                encoding: EncodingScheme::Exponential,
                reservoir: ReservoirKind::Haar { seed: 7 },
                observable: "ZIII".into(),
                dft_check: true,
                seed: 7,
                out: None,
            }),
            "richness" => ExperimentConfig::Richness(RichnessConfig {
                n_a_values: vec![2, 3],
                n_h: 2,
                encoding: EncodingScheme::Exponential,
                reservoirs: vec![ReservoirKind::Identity, ReservoirKind::Haar { seed: 7 }],
                tol: default_tol(),
                seed: 7,
                out: None,
            }),
            "train" => ExperimentConfig::Train(TrainConfig {
                n_a: 2,
                n_h: 1,
                encoding: EncodingScheme::Exponential,
                reservoir: ReservoirKind::Haar { seed: 7 },
                m_values: vec![2, 4, 6, 9, 12],
                target_k: 4,
                n_train: 64,
                n_test: default_n_test(),
                lambda: default_lambda(),
                seed: 7,
                out: None,
            }),
            "expressivity" => ExperimentConfig::Expressivity(ExpressivityConfig {
                n_a: 2,
                n_h: 1,
                encoding: EncodingScheme::Exponential,
                reservoir: ReservoirKind::Haar { seed: 7 },
                m_values: vec![1, 3, 5, 7, 9, 12],
                seed: 7,
                out: None,
            }),
            "concentration" => {
                ExperimentConfig::Concentration(ConcentrationConfig::Encoding(
                    VarianceSweepConfig {
                        n_a_values: vec![2, 3, 4],
                        n_h: 1,
                        depths: vec![8],
                        observable: None,
                        n_samples: 300,
                        seed: 7,
                        out: None,
                    },
                ))
            }
            "haarstats" => ExperimentConfig::Haarstats(HaarStatsConfig {
                n_a: 2,
                n_h: 1,
                observable: "ZZI".into(),
                n_samples: 800,
                seed: 7,
                out: None,
            }),
            "hypothesis" => ExperimentConfig::Hypothesis(HypothesisConfig {
                p_true: 0.6,
                n_samples_values: vec![1, 4, 16],
                n_trials: 20_000,
                seed: 7,
                out: None,
            }),
            "surrogate" => ExperimentConfig::Surrogate(SurrogateConfig {
                n_a: 3,
                n_h: 1,
                encoding: EncodingScheme::Exponential,
                reservoir: ReservoirKind::Haar { seed: 7 },
                m: 20,
                target_k: 5,
                n_train: 120,
                n_fit: 81,
                n_eval: 200,
                rff_k: None,
                lambda: default_lambda(),
                seed: 7,
                out: None,
            }),
            _ => return None,
        };
        Some(cfg)
    }
}

/// Splits `key=value`, parses the value as JSON (falling back to a string),
/// and writes it at the dotted path inside `root`.
pub fn apply_override(root: &mut Value, assignment: &str) -> Result<()> {
    let (path, raw) = assignment
        .split_once('=')
        .ok_or_else(|| cfg_err(format!("override {assignment:?} is not KEY=VALUE")))?;
    if path.is_empty() {
        return Err(cfg_err("override key is empty"));
    }
    let value: Value = serde_json::from_str(raw).unwrap_or(Value::String(raw.to_string()));
    let mut node = root;
    let segments: Vec<&str> = path.split('.').collect();
    for (i, seg) in segments.iter().enumerate() {
        let last = i + 1 == segments.len();
        if let Ok(idx) = seg.parse::<usize>() {
            let arr = node.as_array_mut().ok_or_else(|| {
                cfg_err(format!("override path {path:?}: segment {seg:?} indexes a non-array"))
            })?;
            if idx >= arr.len() {
                return Err(cfg_err(format!(
                    "override path {path:?}: index {idx} out of bounds (len {})",
                    arr.len()
                )));
            }
            if last {
                arr[idx] = value;
                return Ok(());
            }
            node = &mut arr[idx];
        } else {
            let obj = node.as_object_mut().ok_or_else(|| {
                cfg_err(format!("override path {path:?}: segment {seg:?} keys a non-object"))
            })?;
            if last {
                obj.insert(seg.to_string(), value);
                return Ok(());
            }
            node = obj
                .get_mut(*seg)
                .ok_or_else(|| cfg_err(format!("override path {path:?}: missing key {seg:?}")))?;
        }
    }
    unreachable!("loop returns on the last segment");
}

impl ConcentrationConfig {
    fn validate(&self) -> Result<()> {
        match self {
            ConcentrationConfig::Encoding(c) | ConcentrationConfig::Reservoir(c) => {
                if c.depths.is_empty() {
                    return Err(cfg_err("depths must be nonempty"));
                }
                if matches!(self, ConcentrationConfig::Encoding(_)) && c.depths.contains(&0) {
                    return Err(cfg_err("input-variance sweeps need encoding depths >= 1"));
                }
                c.to_sweep(crate::conc::SweepQuantity::InputVariance).validate()
            }
            ConcentrationConfig::Entanglement(c) => {
                if c.n_trials == 0 {
                    return Err(cfg_err("n_trials must be at least 1"));
                }
                if c.n_trials > 10_000 {
                    return Err(budget_err("n_trials is capped at 10000"));
                }
                Ok(())
            }
            ConcentrationConfig::Global(c) => {
                check_register(c.n_a, c.n_h, 24)?;
                if c.n_samples < 100 {
                    return Err(cfg_err("n_samples must be at least 100"));
                }
                Ok(())
            }
            ConcentrationConfig::Noise(c) => {
                check_register(c.n_a, c.n_h, 12)?;
                if c.n_a > 8 {
                    return Err(budget_err(
                        "noise decay runs density matrices; n_a is capped at 8",
                    ));
                }
                if c.depths.is_empty() || c.noise_levels.is_empty() {
                    return Err(cfg_err("depths and noise_levels must be nonempty"));
                }
                if c.depths.contains(&0) {
                    return Err(cfg_err("depths must be at least 1"));
                }
                for &p in &c.noise_levels {
                    if !(0.0..=1.0).contains(&p) {
                        return Err(cfg_err(format!("noise level {p} outside [0, 1]")));
                    }
                }
                if c.n_inputs == 0 {
                    return Err(cfg_err("n_inputs must be at least 1"));
                }
                Ok(())
            }
        }
    }
}

impl VarianceSweepConfig {
    /// Converts to the library sweep config with the given quantity.
    pub fn to_sweep(&self, quantity: crate::conc::SweepQuantity) -> crate::conc::SweepConfig {
        crate::conc::SweepConfig {
            quantity,
            n_a_values: self.n_a_values.clone(),
            n_h: self.n_h,
            depths: self.depths.clone(),
            noise_levels: Vec::new(),
            observable: self.observable.clone(),
            n_samples: self.n_samples,
            seed: self.seed,
        }
    }
}
