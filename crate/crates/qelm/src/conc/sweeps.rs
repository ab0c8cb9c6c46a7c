//! Grid experiments: variance over inputs, variance over reservoirs, product
//! pipelines under computational-basis readout, and noisy encoding decay.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::encoding::{EncodingScheme, EncodingSpec, LayeredCircuit};
use crate::error::Error;
use crate::Result;
use crate::fourier::embedded_columns;
use crate::linalg::{haar_unitary, CMatrix, Complex64};
use crate::pauli::PauliString;
use crate::reservoir::apply_layered_random_sv;
use crate::rng::SeedStream;
use crate::state::{DensityMatrix, NoiseSpec, StateVector};

use super::bounds::{global_measurement_bound, noise_bound};
use super::twirl::expressibility_measure;
use super::{
    bootstrap_se, mean, variance_unbiased, BoundReport, SweepConfig, SweepQuantity, SweepRow,
    BOUND_SLACK,
};

/// Bootstrap resample count for per-row standard errors.
const RESAMPLES: usize = 200;

/// Pauli observable from a config prefix: the prefix covers the leading
/// accessible qubits, everything after it is identity.
fn observable_from_prefix(prefix: Option<&str>, n_a: usize, n_total: usize) -> Result<PauliString> {
    let raw = prefix.unwrap_or("ZZ");
    let mut text: String = raw.chars().take(n_a).collect();
    if text.is_empty() {
        return Err(Error::Config("observable prefix is empty".into()));
    }
    while text.len() < n_total {
        text.push('I');
    }
    text.parse::<PauliString>()
}

/// Haar-random pure state, sampled directly from normalized Gaussian
/// amplitudes.
fn haar_state(n: usize, stream: &mut SeedStream) -> StateVector {
    let d = 1usize << n;
    let mut amps: Vec<Complex64> = (0..d)
        .map(|_| Complex64::new(stream.normal(), stream.normal()))
        .collect();
    let norm = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    for a in amps.iter_mut() {
        *a /= norm;
    }
    StateVector::from_amps(amps)
}

/// Entrywise trace product `Tr[A B]` without forming the matrix product.
fn trace_product(a: &CMatrix, b: &CMatrix) -> Complex64 {
    assert_eq!(a.cols, b.rows, "trace product dimension mismatch");
    assert_eq!(a.rows, b.cols, "trace product dimension mismatch");
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..a.rows {
        for j in 0..a.cols {
            acc += a.get(i, j) * b.get(j, i);
        }
    }
    acc
}

/// Variance of the readout over encoded inputs, per (n_A, depth) grid point.
///
/// Each grid point fixes a depth-L re-uploading encoding and a Haar
/// reservoir, then estimates the unbiased variance of `⟨O⟩_x` over inputs
/// drawn uniformly from [-π, π]. The rows carry no bound column; the
/// inequality checks live in the dedicated trial suites.
pub fn var_over_inputs(cfg: &SweepConfig) -> Result<Vec<SweepRow>> {
    cfg.validate()?;
    if cfg.depths.is_empty() || cfg.depths.contains(&0) {
        return Err(Error::Config(
            "input-variance sweeps need explicit encoding depths >= 1".into(),
        ));
    }
    let mut rows = Vec::new();
    for &n_a in &cfg.n_a_values {
        for &depth in &cfg.depths {
            let n = n_a + cfg.n_h;
            let mut stream = SeedStream::new(cfg.seed)
                .substream("var-inputs", n_a as u64)
                .substream("depth", depth as u64);
            let circuit = LayeredCircuit::new(n_a, depth, stream.below(1usize << 48) as u64);
            let u_r = haar_unitary(1usize << n, &mut stream)?;
            let obs = observable_from_prefix(cfg.observable.as_deref(), n_a, n)?;

            let values: Vec<f64> = (0..cfg.n_samples)
                .map(|_| {
                    let x = stream.uniform_in(-PI, PI);
                    let mut sv = StateVector::plus(n_a);
                    circuit.apply_sv(&mut sv, x);
                    if cfg.n_h > 0 {
                        sv = sv.tensor(&StateVector::basis(cfg.n_h, 0));
                    }
                    sv.apply_unitary(&u_r);
                    sv.expectation_pauli(&obs)
                })
                .collect();
            let value = variance_unbiased(&values);
            let stderr = bootstrap_se(&values, variance_unbiased, RESAMPLES, &mut stream);
            rows.push(SweepRow {
                experiment: SweepQuantity::InputVariance.tag().into(),
                n_a,
                n_h: cfg.n_h,
                depth,
                noise_p: 0.0,
                seed: cfg.seed,
                n_samples: cfg.n_samples,
                statistic: "variance_unbiased".into(),
                value,
                stderr,
                bound: f64::NAN,
                satisfied: None,
            });
        }
    }
    Ok(rows)
}

/// Variance of the readout over resampled reservoirs at a fixed input, per
/// (n_A, depth) grid point. Depth 0 draws exact Haar reservoirs; positive
/// depths draw layered random circuits.
///
/// Rows come in pairs: the unbiased variance compared against the exact
/// Haar-ensemble value, and the sample mean compared against `Tr[O]/2ⁿ`.
/// Both bound columns are reference values, not inequalities, so the
/// satisfied flag stays empty.
pub fn var_over_reservoirs(cfg: &SweepConfig) -> Result<Vec<SweepRow>> {
    cfg.validate()?;
    if cfg.depths.is_empty() {
        return Err(Error::Config("reservoir sweeps need at least one depth".into()));
    }
    let mut rows = Vec::new();
    for &n_a in &cfg.n_a_values {
        for &depth in &cfg.depths {
            let n = n_a + cfg.n_h;
            let d = 1usize << n;
            let mut stream = SeedStream::new(cfg.seed)
                .substream("var-reservoirs", n_a as u64)
                .substream("depth", depth as u64);
            let obs = observable_from_prefix(cfg.observable.as_deref(), n_a, n)?;
            let spec = EncodingSpec::new(EncodingScheme::PauliReupload, n_a);
            let x = stream.uniform_in(-PI, PI);
            let mut psi = StateVector::plus(n_a);
            psi.apply_unitary(&spec.encode(x));
            if cfg.n_h > 0 {
                psi = psi.tensor(&StateVector::basis(cfg.n_h, 0));
            }

            let values: Vec<f64> = (0..cfg.n_samples)
                .map(|_| {
                    let out = if depth == 0 {
                        // A Haar unitary applied to any fixed pure state is a
                        // Haar-random state; sample it directly.
                        haar_state(n, &mut stream)
                    } else {
                        let mut sv = psi.clone();
                        apply_layered_random_sv(&mut sv, depth, &mut stream);
                        sv
                    };
                    out.expectation_pauli(&obs)
                })
                .collect();

            let dense = obs.matrix();
            let tr = dense.trace().re;
            let tr_sq = dense.matmul(&dense).trace().re;
            let df = d as f64;
            let haar_var = (tr * tr + tr_sq) / (df * (df + 1.0)) - (tr / df) * (tr / df);

            let var = variance_unbiased(&values);
            let var_se = bootstrap_se(&values, variance_unbiased, RESAMPLES, &mut stream);
            rows.push(SweepRow {
                experiment: SweepQuantity::ReservoirVariance.tag().into(),
                n_a,
                n_h: cfg.n_h,
                depth,
                noise_p: 0.0,
                seed: cfg.seed,
                n_samples: cfg.n_samples,
                statistic: "variance_unbiased".into(),
                value: var,
                stderr: var_se,
                bound: haar_var,
                satisfied: None,
            });

            let m = mean(&values);
            let m_se = bootstrap_se(&values, mean, RESAMPLES, &mut stream);
            rows.push(SweepRow {
                experiment: SweepQuantity::ReservoirVariance.tag().into(),
                n_a,
                n_h: cfg.n_h,
                depth,
                noise_p: 0.0,
                seed: cfg.seed,
                n_samples: cfg.n_samples,
                statistic: "mean".into(),
                value: m,
                stderr: m_se,
                bound: tr / df,
                satisfied: None,
            });
        }
    }
    Ok(rows)
}

/// Result of one product-pipeline readout-concentration experiment.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GlobalMeasurementReport {
    /// Accessible qubits (each with its own input component).
    pub n_a: usize,
    /// Hidden qubits (constant overlap factors).
    pub n_h: usize,
    /// Per-qubit encoding depth; 0 means fresh Haar gates per sample.
    pub depth: usize,
    /// Input samples.
    pub n_samples: usize,
    /// Product of hidden-qubit overlap factors.
    pub alpha: f64,
    /// Empirical second moment of the readout.
    pub second_moment: f64,
    /// Bootstrap standard error of the second moment.
    pub second_moment_se: f64,
    /// Unbiased variance of the readout.
    pub variance: f64,
    /// Exact second moment for per-qubit Haar encodings: alpha² (1/3)^{n_A}.
    pub haar_second_moment: f64,
    /// Per-qubit expressibility distances of the input ensembles.
    pub per_qubit_eps: Vec<f64>,
    /// Second-moment inequality check.
    pub bound: BoundReport,
}

/// Runs the product-pipeline experiment: per-qubit encodings with
/// independent inputs, a product of fixed single-qubit reservoir gates, and
/// a computational-basis projector readout.
///
/// Everything factorizes over qubits, so the cost is linear in the register
/// size. The second moment is checked against
/// `alpha · ∏_k G(eps_k)` with per-qubit expressibility distances estimated
/// from the same input samples.
///
/// ```
/// use qelm::conc::global_measurement_experiment;
///
/// // Depth 0 draws a fresh Haar gate per qubit and sample.
/// let rep = global_measurement_experiment(2, 0, 0, 500, 1).unwrap();
/// assert_eq!(rep.bound.satisfied, Some(true));
/// // Two Haar qubits: the squared projector mean sits near (1/3)^2.
/// assert!((rep.second_moment - 1.0 / 9.0).abs() < 0.02);
/// ```
pub fn global_measurement_experiment(
    n_a: usize,
    n_h: usize,
    depth: usize,
    n_samples: usize,
    seed: u64,
) -> Result<GlobalMeasurementReport> {
    if n_a == 0 {
        return Err(Error::Config("need at least one accessible qubit".into()));
    }
    if n_a + n_h > 24 {
        return Err(Error::Budget(format!(
            "register of {} qubits exceeds the product-pipeline budget",
            n_a + n_h
        )));
    }
    if n_samples < 2 {
        return Err(Error::Config("need at least two samples".into()));
    }
    let n = n_a + n_h;
    let mut stream = SeedStream::new(seed).substream("global-measurement", 0);

    // Fixed single-qubit reservoir gates and measurement target bits.
    let gates: Vec<CMatrix> = (0..n)
        .map(|_| haar_unitary(2, &mut stream))
        .collect::<Result<_>>()?;
    let target: Vec<usize> = (0..n).map(|_| stream.below(2)).collect();
    let mut alpha = 1.0;
    for j in n_a..n {
        alpha *= gates[j].get(target[j], 0).norm_sqr();
    }

    let circuits: Vec<Option<LayeredCircuit>> = (0..n_a)
        .map(|_| {
            if depth == 0 {
                None
            } else {
                Some(LayeredCircuit::new(
                    1,
                    depth,
                    stream.below(1usize << 48) as u64,
                ))
            }
        })
        .collect();

    // Per-sample, per-qubit encodings; keep them for the expressibility
    // replay below.
    let mut encoders: Vec<Vec<CMatrix>> = vec![Vec::with_capacity(n_samples); n_a];
    let mut readouts = Vec::with_capacity(n_samples);
    for _ in 0..n_samples {
        let mut value = alpha;
        for k in 0..n_a {
            let u = match &circuits[k] {
                None => haar_unitary(2, &mut stream)?,
                Some(c) => c.unitary(stream.uniform_in(-PI, PI)),
            };
            let col = (u.get(0, 0), u.get(1, 0));
            let w0 = gates[k].get(target[k], 0) * col.0 + gates[k].get(target[k], 1) * col.1;
            value *= w0.norm_sqr();
            encoders[k].push(u);
        }
        readouts.push(value);
    }

    let squares: Vec<f64> = readouts.iter().map(|v| v * v).collect();
    let second_moment = mean(&squares);
    let second_moment_se = bootstrap_se(&squares, mean, RESAMPLES, &mut stream);
    let variance = variance_unbiased(&readouts);

    let rho0 = DensityMatrix::basis(1, 0).mat;
    let mut per_qubit_eps = Vec::with_capacity(n_a);
    for enc in encoders.iter() {
        let mut idx = 0usize;
        let est = expressibility_measure(
            &rho0,
            n_samples,
            |_| {
                let u = enc[idx].clone();
                idx += 1;
                Ok(u)
            },
            &mut stream,
        )?;
        per_qubit_eps.push(est.epsilon);
    }

    let bound = global_measurement_bound(alpha, &per_qubit_eps, second_moment);
    Ok(GlobalMeasurementReport {
        n_a,
        n_h,
        depth,
        n_samples,
        alpha,
        second_moment,
        second_moment_se,
        variance,
        haar_second_moment: alpha * alpha * (1.0f64 / 3.0).powi(n_a as i32),
        per_qubit_eps,
        bound,
    })
}

/// Distance of the readout from its noise fixed point under an L-layered
/// encoding with per-qubit Pauli noise before, between, and after the
/// layers.
///
/// The readout observable is Z on the first qubit, pulled back through a
/// fixed Haar reservoir onto the accessible register. For each noise
/// strength `p` and depth `L` the rows report the mean, median, and max over
/// inputs of `|⟨O⟩_x − Tr[Õ]/2^{n_A}|`, each against the decay bound
/// (vacuous at p = 0).
pub fn noise_concentration_experiment(
    n_a: usize,
    n_h: usize,
    l_values: &[usize],
    p_values: &[f64],
    n_x: usize,
    seed: u64,
) -> Result<Vec<SweepRow>> {
    if n_a == 0 || n_a > 8 {
        return Err(Error::Budget(
            "noisy evolution needs 1..=8 accessible qubits".into(),
        ));
    }
    if n_a + n_h > 12 {
        return Err(Error::Budget(format!(
            "total register {} exceeds the 12-qubit dense budget",
            n_a + n_h
        )));
    }
    if l_values.is_empty() || l_values.contains(&0) {
        return Err(Error::Config("depth grid must be nonempty with L >= 1".into()));
    }
    if p_values.is_empty() {
        return Err(Error::Config("noise grid must be nonempty".into()));
    }
    if n_x < 2 {
        return Err(Error::Config("need at least two input samples".into()));
    }
    let n = n_a + n_h;
    let d_a = 1usize << n_a;
    let l_max = *l_values.iter().max().unwrap();

    let mut stream = SeedStream::new(seed).substream("noise-decay", 0);
    let u_r = haar_unitary(1usize << n, &mut stream)?;
    let obs = observable_from_prefix(Some("Z"), n_a, n)?;
    let w = embedded_columns(&u_r, d_a);
    let tilde_o = w.adjoint_matmul(&obs.apply_left(&w));
    let mu = tilde_o.trace().re / d_a as f64;
    let op_norm = {
        let (eigs, _) = crate::linalg::herm_eig(&tilde_o)?;
        eigs.iter().fold(0.0f64, |acc, &e| acc.max(e.abs()))
    };
    let rho_init = DensityMatrix::plus(n_a);
    let s2_bits = rho_init.renyi2_vs_maximally_mixed();

    // Depths share one circuit: the L-layer encoding is the first L layers
    // of the deepest one, so a single pass records every requested depth.
    let circuit = LayeredCircuit::new(n_a, l_max, stream.below(1usize << 48) as u64);
    let xs: Vec<f64> = (0..n_x).map(|_| stream.uniform_in(-PI, PI)).collect();

    let mut rows = Vec::new();
    for &p in p_values {
        let noise = NoiseSpec::depolarizing(p)?;
        let q = noise.q();
        // distances[li] collects |<O>_x - mu| over x for depth l_values[li].
        let mut distances: Vec<Vec<f64>> = vec![Vec::with_capacity(n_x); l_values.len()];
        for &x in &xs {
            let mut rho = rho_init.clone();
            for k in 0..n_a {
                rho.pauli_noise(&noise, k);
            }
            for l in 1..=l_max {
                circuit.apply_layer_dm(&mut rho, l - 1, x);
                for k in 0..n_a {
                    rho.pauli_noise(&noise, k);
                }
                if let Some(li) = l_values.iter().position(|&v| v == l) {
                    let val = trace_product(&tilde_o, &rho.mat).re;
                    distances[li].push((val - mu).abs());
                }
            }
        }
        for (li, &l) in l_values.iter().enumerate() {
            let dists = &distances[li];
            let bound = noise_bound(op_norm, q, l, s2_bits);
            let median = {
                let mut sorted = dists.clone();
                sorted.sort_by(f64::total_cmp);
                sorted[sorted.len() / 2]
            };
            let stats: [(&str, f64, fn(&[f64]) -> f64); 3] = [
                ("mean_abs_distance", mean(dists), mean),
                ("median_abs_distance", median, |v| {
                    let mut s = v.to_vec();
                    s.sort_by(f64::total_cmp);
                    s[s.len() / 2]
                }),
                ("max_abs_distance", dists.iter().fold(0.0, |a, &b| a.max(b)), |v| {
                    v.iter().fold(0.0, |a, &b| a.max(b))
                }),
            ];
            for (name, value, statistic) in stats {
                let stderr = bootstrap_se(dists, statistic, RESAMPLES, &mut stream);
                let satisfied = if bound.is_nan() {
                    None
                } else {
                    Some(value <= bound + BOUND_SLACK)
                };
                rows.push(SweepRow {
                    experiment: SweepQuantity::NoiseDecay.tag().into(),
                    n_a,
                    n_h,
                    depth: l,
                    noise_p: p,
                    seed,
                    n_samples: n_x,
                    statistic: name.into(),
                    value,
                    stderr,
                    bound,
                    satisfied,
                });
            }
        }
    }
    Ok(rows)
}
