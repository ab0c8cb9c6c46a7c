//! End-to-end machine: pipeline evaluation, linear training, scoring, and
//! classical surrogates.
//!
//! A model owns a frozen encoding, a realized reservoir, an initial state,
//! and a list of Pauli observables. The only trained parameters are the
//! linear readout weights, fitted by ridge regression on expectation values.

use std::collections::HashSet;
use std::io::{BufRead, Write as IoWrite};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::encoding::EncodingSpec;
use crate::error::Error;
use crate::fourier::{spectrum_direct_pauli, FourierSpectrum, FrequencySet, GROUPING_TOL};
use crate::linalg::{herm_eig, CMatrix, Complex64, C_ZERO};
use crate::pauli::PauliString;
use crate::reservoir::ReservoirSpec;
use crate::rng::SeedStream;
use crate::state::{sample_shots, DensityMatrix, StateVector};
use crate::Result;

/// Cutoff below which a squared singular value is treated as zero in the
/// minimum-norm solve.
const RANK_TOL: f64 = 1e-12;

/// Solves the ridge problem `argmin |phi theta - y|^2 + lambda |theta|^2`
/// through the normal equations, falling back to the minimum-norm solution
/// on rank deficiency at `lambda = 0`.
pub fn ridge_solve(phi: &CMatrix, y: &[f64], lambda: f64) -> Vec<f64> {
    assert_eq!(phi.rows, y.len(), "design matrix and targets disagree");
    assert!(lambda >= 0.0, "ridge weight must be nonnegative");
    let p = phi.cols;
    let g = phi.adjoint_matmul(phi);
    let mut rhs = vec![C_ZERO; p];
    for (l, &yl) in y.iter().enumerate() {
        for c in 0..p {
            rhs[c] += phi.get(l, c).conj() * yl;
        }
    }
    let (eigs, v) = herm_eig(&g).expect("Gram matrix is Hermitian by construction");
    let s_max = eigs.iter().fold(0.0f64, |m, &s| m.max(s.abs()));
    let mut theta = vec![C_ZERO; p];
    for (i, &s) in eigs.iter().enumerate() {
        // Gram eigenvalues are squared singular values; clamp float dust.
        let s = s.max(0.0);
        let gain = if lambda > 0.0 {
            1.0 / (s + lambda)
        } else if s > RANK_TOL * s_max && s > 0.0 {
            1.0 / s
        } else {
            continue;
        };
        let mut proj = C_ZERO;
        for r in 0..p {
            proj += v.get(r, i).conj() * rhs[r];
        }
        let scaled = proj * gain;
        for r in 0..p {
            theta[r] += v.get(r, i) * scaled;
        }
    }
    theta.into_iter().map(|t| t.re).collect()
}

/// Coefficient of determination `1 - SS_res / SS_tot`.
pub fn r2_score(predictions: &[f64], targets: &[f64]) -> Result<f64> {
    if predictions.len() != targets.len() || targets.len() < 2 {
        return Err(Error::InvalidDimension(format!(
            "r2_score needs two equal-length series, got {} and {}",
            predictions.len(),
            targets.len()
        )));
    }
    let mean = targets.iter().sum::<f64>() / targets.len() as f64;
    let ss_tot: f64 = targets.iter().map(|t| (t - mean).powi(2)).sum();
    if ss_tot <= 1e-300 {
        return Err(Error::ConstantTargets);
    }
    let ss_res: f64 = predictions
        .iter()
        .zip(targets)
        .map(|(p, t)| (p - t).powi(2))
        .sum();
    Ok(1.0 - ss_res / ss_tot)
}

/// Serialized form of a trained model.
#[derive(Serialize, Deserialize)]
struct ModelFile {
    encoding: EncodingSpec,
    reservoir: ReservoirSpec,
    observables: Vec<String>,
    eta: Vec<f64>,
    eta0: f64,
    seed: u64,
    shots: Option<u64>,
}

/// A quantum extreme learning machine with a trained linear readout.
#[derive(Clone, Debug)]
pub struct QelmModel {
    /// Input encoding acting on the accessible register.
    pub encoding: EncodingSpec,
    /// Fixed scrambling dynamics on the full register.
    pub reservoir: ReservoirSpec,
    /// Initial accessible-register state, `|+...+>` by default.
    pub rho0: DensityMatrix,
    /// Shots per expectation value for sampled readouts; exact when absent.
    pub shots: Option<u64>,
    observables: Vec<PauliString>,
    u_r: CMatrix,
    eta: Vec<f64>,
    eta0: f64,
    seed: u64,
    pure_prep: Option<StateVector>,
}

impl QelmModel {
    /// Builds a model with `m` observables drawn with the default seed 0.
    pub fn new(encoding: EncodingSpec, reservoir: ReservoirSpec, m: usize) -> Result<Self> {
        Self::with_seed(encoding, reservoir, m, 0)
    }

    /// Builds a model with `m` distinct non-identity Pauli observables on
    /// the full register, drawn without replacement from `seed`.
    pub fn with_seed(
        encoding: EncodingSpec,
        reservoir: ReservoirSpec,
        m: usize,
        seed: u64,
    ) -> Result<Self> {
        let n = reservoir.n_total;
        let budget = 4usize.saturating_pow(n as u32) - 1;
        if m == 0 || m > budget {
            return Err(Error::InvalidDimension(format!(
                "need between 1 and {budget} observables on {n} qubits, got {m}"
            )));
        }
        let mut stream = SeedStream::new(seed).substream("observables", 0);
        let mut seen = HashSet::new();
        let mut observables = Vec::with_capacity(m);
        while observables.len() < m {
            let p = PauliString::random_non_identity(n, &mut stream);
            if seen.insert(p.to_string()) {
                observables.push(p);
            }
        }
        Self::assemble(encoding, reservoir, observables, seed)
    }

    /// Builds a model around an explicit observable list.
    pub fn with_observables(
        encoding: EncodingSpec,
        reservoir: ReservoirSpec,
        observables: Vec<PauliString>,
    ) -> Result<Self> {
        if observables.is_empty() {
            return Err(Error::InvalidDimension(
                "need at least one observable".into(),
            ));
        }
        Self::assemble(encoding, reservoir, observables, 0)
    }

    fn assemble(
        encoding: EncodingSpec,
        reservoir: ReservoirSpec,
        observables: Vec<PauliString>,
        seed: u64,
    ) -> Result<Self> {
        let n = reservoir.n_total;
        if encoding.n_accessible > n {
            return Err(Error::InvalidDimension(format!(
                "encoding acts on {} qubits but the register has {n}",
                encoding.n_accessible
            )));
        }
        for p in &observables {
            if p.n_qubits() != n {
                return Err(Error::InvalidDimension(format!(
                    "observable {p} acts on {} qubits, register has {n}",
                    p.n_qubits()
                )));
            }
        }
        let u_r = reservoir.realize()?;
        let rho0 = DensityMatrix::plus(encoding.n_accessible);
        let m = observables.len();
        let mut model = QelmModel {
            encoding,
            reservoir,
            rho0,
            shots: None,
            observables,
            u_r,
            eta: vec![0.0; m],
            eta0: 0.0,
            seed,
            pure_prep: None,
        };
        model.refresh_pure_prep();
        Ok(model)
    }

    /// Replaces the initial accessible-register state.
    pub fn set_initial_state(&mut self, rho0: DensityMatrix) -> Result<()> {
        if rho0.dim() != self.encoding.dim() {
            return Err(Error::InvalidDimension(format!(
                "initial state has dimension {}, encoding needs {}",
                rho0.dim(),
                self.encoding.dim()
            )));
        }
        self.rho0 = rho0;
        self.refresh_pure_prep();
        Ok(())
    }

    /// Caches the eigenvector of a pure initial state so readouts can run
    /// on state vectors instead of density matrices.
    fn refresh_pure_prep(&mut self) {
        self.pure_prep = None;
        if (self.rho0.purity() - 1.0).abs() < 1e-12 {
            if let Ok((eigs, v)) = herm_eig(&self.rho0.mat) {
                let top = eigs.len() - 1;
                if (eigs[top] - 1.0).abs() < 1e-10 {
                    let amps: Vec<Complex64> =
                        (0..self.rho0.dim()).map(|r| v.get(r, top)).collect();
                    self.pure_prep = Some(StateVector::from_amps(amps));
                }
            }
        }
    }

    /// The observable list.
    pub fn observables(&self) -> &[PauliString] {
        &self.observables
    }

    /// Number of observables M.
    pub fn m(&self) -> usize {
        self.observables.len()
    }

    /// The trained weights (per-observable vector, intercept).
    pub fn weights(&self) -> (&[f64], f64) {
        (&self.eta, self.eta0)
    }

    /// The realized reservoir unitary.
    pub fn reservoir_unitary(&self) -> &CMatrix {
        &self.u_r
    }

    /// Exact expectation values of every observable at input `x`.
    pub fn readout_vector(&self, x: f64) -> Vec<f64> {
        let d_a = self.encoding.dim();
        let d = self.u_r.rows;
        let n_h_dim = d / d_a;
        let u = self.encoding.encode(x);
        if let Some(prep) = &self.pure_prep {
            let mut psi = prep.clone();
            psi.apply_unitary(&u);
            if n_h_dim > 1 {
                let n_h = n_h_dim.trailing_zeros() as usize;
                psi = psi.tensor(&StateVector::basis(n_h, 0));
            }
            psi.apply_unitary(&self.u_r);
            return self
                .observables
                .iter()
                .map(|p| psi.expectation_pauli(p))
                .collect();
        }
        let rho_x = u.matmul(&self.rho0.mat).matmul(&u.adjoint());
        let full = if n_h_dim == 1 {
            rho_x
        } else {
            let mut hidden = CMatrix::zeros(n_h_dim, n_h_dim);
            hidden.set(0, 0, Complex64::new(1.0, 0.0));
            crate::linalg::kron(&rho_x, &hidden)
        };
        let tilde = u_r_conjugate(&self.u_r, &full);
        self.observables
            .iter()
            .map(|p| {
                let mut acc = C_ZERO;
                for j in 0..d {
                    let (t, phase) = p.action(j);
                    acc += phase * tilde.get(j, t);
                }
                acc.re
            })
            .collect()
    }

    /// Shot-sampled expectation values at input `x`, using `self.shots`.
    pub fn readout_vector_sampled(&self, x: f64, stream: &mut SeedStream) -> Result<Vec<f64>> {
        let shots = self.shots.ok_or(Error::ZeroShots)?;
        let exact = self.readout_vector(x);
        exact
            .into_iter()
            .map(|e| sample_shots(e, shots as usize, stream))
            .collect()
    }

    /// The trained prediction `eta0 + sum_k eta_k <O_k>_x`.
    pub fn predict(&self, x: f64) -> f64 {
        let readout = self.readout_vector(x);
        self.eta0
            + self
                .eta
                .iter()
                .zip(readout.iter())
                .map(|(w, r)| w * r)
                .sum::<f64>()
    }

    /// Fits the readout weights by ridge regression on exact expectation
    /// values; `lambda = 0` falls back to the minimum-norm solution when
    /// the design is rank deficient.
    pub fn train(&mut self, data: &[(f64, f64)], lambda: f64) -> Result<()> {
        if data.is_empty() {
            return Err(Error::InvalidDimension(
                "training needs at least one pair".into(),
            ));
        }
        let m = self.m();
        let mut phi = CMatrix::zeros(data.len(), m + 1);
        let mut y = Vec::with_capacity(data.len());
        for (l, &(x, target)) in data.iter().enumerate() {
            phi.set(l, 0, Complex64::new(1.0, 0.0));
            for (k, r) in self.readout_vector(x).into_iter().enumerate() {
                phi.set(l, k + 1, Complex64::new(r, 0.0));
            }
            y.push(target);
        }
        let theta = ridge_solve(&phi, &y, lambda);
        self.eta0 = theta[0];
        self.eta = theta[1..].to_vec();
        Ok(())
    }

    /// Fourier spectrum of the trained prediction function: the weighted
    /// sum of per-observable spectra plus the intercept at frequency zero.
    pub fn spectrum(&self) -> Result<FourierSpectrum> {
        let mut combined: Option<Vec<(f64, Complex64)>> = None;
        for (k, p) in self.observables.iter().enumerate() {
            let s = spectrum_direct_pauli(&self.rho0, &self.encoding, &self.u_r, p)?;
            let scaled: Vec<(f64, Complex64)> = s
                .entries()
                .iter()
                .map(|&(w, a)| (w, a * self.eta[k]))
                .collect();
            combined = Some(match combined {
                None => scaled,
                Some(mut acc) => {
                    assert_eq!(acc.len(), scaled.len(), "shared frequency set");
                    for (dst, src) in acc.iter_mut().zip(scaled.iter()) {
                        dst.1 += src.1;
                    }
                    acc
                }
            });
        }
        let mut entries = combined.expect("at least one observable");
        for e in entries.iter_mut() {
            if e.0.abs() <= GROUPING_TOL {
                e.1 += self.eta0;
            }
        }
        Ok(FourierSpectrum::new(
            "model".into(),
            GROUPING_TOL,
            entries,
        ))
    }

    /// Serializes the model (encoding, reservoir, observables, weights) to
    /// JSON. The initial state is not persisted; loading restores the
    /// default `|+...+>` preparation.
    pub fn save(&self, path: &Path) -> Result<()> {
        let file = ModelFile {
            encoding: self.encoding.clone(),
            reservoir: self.reservoir.clone(),
            observables: self.observables.iter().map(|p| p.to_string()).collect(),
            eta: self.eta.clone(),
            eta0: self.eta0,
            seed: self.seed,
            shots: self.shots,
        };
        let mut out = std::fs::File::create(path)?;
        out.write_all(serde_json::to_string_pretty(&file)?.as_bytes())?;
        out.write_all(b"\n")?;
        Ok(())
    }

    /// Restores a model saved with [`QelmModel::save`].
    pub fn load(path: &Path) -> Result<QelmModel> {
        let text = std::fs::read_to_string(path)?;
        let file: ModelFile = serde_json::from_str(&text)?;
        let observables = file
            .observables
            .iter()
            .map(|s| s.parse::<PauliString>())
            .collect::<Result<Vec<_>>>()?;
        let mut model = Self::assemble(file.encoding, file.reservoir, observables, file.seed)?;
        if file.eta.len() != model.m() {
            return Err(Error::InvalidDimension(format!(
                "model file carries {} weights for {} observables",
                file.eta.len(),
                model.m()
            )));
        }
        model.eta = file.eta;
        model.eta0 = file.eta0;
        model.shots = file.shots;
        Ok(model)
    }
}

/// Conjugates `rho` by the reservoir unitary.
fn u_r_conjugate(u_r: &CMatrix, rho: &CMatrix) -> CMatrix {
    u_r.matmul(rho).matmul(&u_r.adjoint())
}

/// A classical trigonometric predictor fitted by ridge regression.
#[derive(Clone, Debug)]
pub struct FourierSurrogate {
    /// Positive frequencies carried by the feature map.
    pub freqs: Vec<f64>,
    /// Weights: intercept, then (cos, sin) pairs per frequency.
    pub theta: Vec<f64>,
}

impl FourierSurrogate {
    /// Evaluates the fitted series at `x`.
    pub fn predict(&self, x: f64) -> f64 {
        let mut acc = self.theta[0];
        for (i, &w) in self.freqs.iter().enumerate() {
            acc += self.theta[1 + 2 * i] * (w * x).cos();
            acc += self.theta[2 + 2 * i] * (w * x).sin();
        }
        acc
    }
}

/// Builds the trigonometric design matrix for the given positive
/// frequencies: intercept, then (cos wx, sin wx) per frequency.
fn trig_design(freqs: &[f64], xs: &[f64]) -> CMatrix {
    CMatrix::from_fn(xs.len(), 1 + 2 * freqs.len(), |l, c| {
        let v = if c == 0 {
            1.0
        } else {
            let w = freqs[(c - 1) / 2];
            if (c - 1) % 2 == 0 {
                (w * xs[l]).cos()
            } else {
                (w * xs[l]).sin()
            }
        };
        Complex64::new(v, 0.0)
    })
}

/// Fits the complete real Fourier basis of a frequency set to the data.
///
/// Any machine whose readouts live on `omega` is a linear combination of
/// these features, so with enough well-spread samples the surrogate
/// reproduces it exactly.
///
/// ```
/// use qelm::fourier::FrequencySet;
/// use qelm::model::full_fourier_surrogate;
///
/// let omega = FrequencySet::from_values(vec![-1.0, 0.0, 1.0]);
/// let data: Vec<(f64, f64)> = (0..16)
///     .map(|k| {
///         let x = k as f64 * 0.4;
///         (x, 0.3 + x.cos())
///     })
///     .collect();
/// let surrogate = full_fourier_surrogate(&omega, &data, 1e-12).unwrap();
/// let err = (surrogate.predict(2.2) - (0.3 + 2.2f64.cos())).abs();
/// assert!(err < 1e-8);
/// ```
pub fn full_fourier_surrogate(
    omega: &FrequencySet,
    data: &[(f64, f64)],
    lambda: f64,
) -> Result<FourierSurrogate> {
    if data.is_empty() {
        return Err(Error::InvalidDimension(
            "surrogate needs at least one pair".into(),
        ));
    }
    let freqs: Vec<f64> = omega
        .freqs()
        .iter()
        .copied()
        .filter(|&w| w > GROUPING_TOL)
        .collect();
    let xs: Vec<f64> = data.iter().map(|p| p.0).collect();
    let ys: Vec<f64> = data.iter().map(|p| p.1).collect();
    let phi = trig_design(&freqs, &xs);
    let theta = ridge_solve(&phi, &ys, lambda);
    Ok(FourierSurrogate { freqs, theta })
}

/// Random-Fourier-features surrogate: samples `k` frequencies proportional
/// to `weights` and fits the sampled trigonometric features.
///
/// `weights` pairs each candidate frequency with a nonnegative sampling
/// weight, typically the spectral magnitude of a model being surrogated.
pub fn rff_surrogate(
    weights: &[(f64, f64)],
    k: usize,
    data: &[(f64, f64)],
    lambda: f64,
    stream: &mut SeedStream,
) -> Result<FourierSurrogate> {
    if k == 0 || data.is_empty() {
        return Err(Error::InvalidDimension(
            "need k >= 1 sampled frequencies and nonempty data".into(),
        ));
    }
    for &(w, weight) in weights {
        if weight < 0.0 {
            return Err(Error::Config(format!(
                "negative sampling weight {weight} at frequency {w}"
            )));
        }
    }
    let probs: Vec<f64> = weights.iter().map(|p| p.1).collect();
    let mut freqs = Vec::with_capacity(k);
    for _ in 0..k {
        let idx = stream.weighted_index(&probs).ok_or(Error::AllZeroWeights)?;
        freqs.push(weights[idx].0.abs());
    }
    let xs: Vec<f64> = data.iter().map(|p| p.0).collect();
    let ys: Vec<f64> = data.iter().map(|p| p.1).collect();
    let phi = trig_design(&freqs, &xs);
    let theta = ridge_solve(&phi, &ys, lambda);
    Ok(FourierSurrogate { freqs, theta })
}

/// A random band-limited trigonometric target function.
///
/// Coefficients of `cos(kx)` and `sin(kx)` for `k = 1..=k_max` are drawn
/// uniformly from `[-1, 1]`.
#[derive(Clone, Debug)]
pub struct BandLimitedTarget {
    /// Largest integer frequency present.
    pub k_max: usize,
    cos_coeffs: Vec<f64>,
    sin_coeffs: Vec<f64>,
}

impl BandLimitedTarget {
    /// Draws a target with the given cutoff from `seed`.
    pub fn new(k_max: usize, seed: u64) -> Self {
        let mut stream = SeedStream::new(seed).substream("band-limited-target", 0);
        let cos_coeffs = (0..k_max).map(|_| stream.uniform_in(-1.0, 1.0)).collect();
        let sin_coeffs = (0..k_max).map(|_| stream.uniform_in(-1.0, 1.0)).collect();
        BandLimitedTarget {
            k_max,
            cos_coeffs,
            sin_coeffs,
        }
    }

    /// Evaluates the target at `x`.
    pub fn eval(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for k in 1..=self.k_max {
            acc += self.cos_coeffs[k - 1] * (k as f64 * x).cos();
            acc += self.sin_coeffs[k - 1] * (k as f64 * x).sin();
        }
        acc
    }

    /// Samples the target at `n` equidistant points on `[0, x_max]`.
    pub fn sample_equidistant(&self, n: usize, x_max: f64) -> Vec<(f64, f64)> {
        assert!(n >= 2, "need at least two sample points");
        (0..n)
            .map(|l| {
                let x = x_max * l as f64 / (n - 1) as f64;
                (x, self.eval(x))
            })
            .collect()
    }
}

/// Writes (x, y) pairs as CSV with header `x,y`.
pub fn save_dataset_csv(path: &Path, pairs: &[(f64, f64)]) -> Result<()> {
    let mut out = std::fs::File::create(path)?;
    writeln!(out, "x,y")?;
    for &(x, y) in pairs {
        writeln!(out, "{:.16e},{:.16e}", x, y)?;
    }
    Ok(())
}

/// Reads (x, y) pairs from CSV written by [`save_dataset_csv`].
pub fn load_dataset_csv(path: &Path) -> Result<Vec<(f64, f64)>> {
    let file = std::fs::File::open(path)?;
    let mut pairs = Vec::new();
    for (i, line) in std::io::BufReader::new(file).lines().enumerate() {
        let line = line?;
        if i == 0 {
            if line.trim() != "x,y" {
                return Err(Error::Config(format!(
                    "dataset header is {:?}, expected \"x,y\"",
                    line.trim()
                )));
            }
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        let mut parts = line.split(',');
        let parse = |s: Option<&str>| -> Result<f64> {
            s.and_then(|v| v.trim().parse::<f64>().ok())
                .ok_or_else(|| Error::Config(format!("bad dataset row {:?}", line)))
        };
        let x = parse(parts.next())?;
        let y = parse(parts.next())?;
        pairs.push((x, y));
    }
    Ok(pairs)
}
