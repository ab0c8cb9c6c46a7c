//! Analytic variance and distance bounds, plus randomized trial suites that
//! check each inequality against direct simulation.

use std::f64::consts::{LN_2, PI};

use crate::encoding::{EncodingScheme, EncodingSpec};
use crate::Result;
use crate::fourier::embedded_columns;
use crate::linalg::{haar_unitary, herm_eig, relative_entropy, CMatrix};
use crate::pauli::PauliString;
use crate::reservoir::{apply_layered_random_sv, layered_random_unitary};
use crate::rng::SeedStream;
use crate::state::{DensityMatrix, StateVector};

use super::twirl::expressibility_measure;
use super::{variance_unbiased, BoundReport};

/// Operator norm of a Hermitian matrix: the largest eigenvalue magnitude.
fn op_norm_hermitian(m: &CMatrix) -> f64 {
    let (eigs, _) = herm_eig(m).expect("Hermitian eigensolve");
    eigs.iter().fold(0.0f64, |acc, &e| acc.max(e.abs()))
}

/// Variance bound for the readout over encoded inputs.
///
/// With `Õ` the observable pulled back through the reservoir onto the
/// accessible register (dimension d) and `eps1` the expressibility distance
/// of the encoding ensemble, the bound is
/// `(Tr[Õ]² + Tr[Õ²]) / (d(d+1)) + eps1 · ‖Õ‖∞²`.
pub fn encoding_bound(tilde_o: &CMatrix, eps1: f64, measured_var: f64) -> BoundReport {
    assert_eq!(tilde_o.rows, tilde_o.cols, "pulled-back observable is square");
    let d = tilde_o.rows as f64;
    let tr = tilde_o.trace().re;
    let tr_sq = tilde_o.matmul(tilde_o).trace().re;
    let first = (tr * tr + tr_sq) / (d * (d + 1.0));
    let norm = op_norm_hermitian(tilde_o);
    BoundReport::new("encoding-variance", measured_var, first + eps1 * norm * norm)
}

/// Variance bound for the readout over random reservoirs at fixed input.
///
/// Same shape as the encoding bound but on the full register, with the bare
/// observable: `(Tr[O]² + Tr[O²]) / (d(d+1)) + eps1 · ‖O‖∞²`.
pub fn reservoir_bound(obs: &CMatrix, eps1: f64, measured_var: f64) -> BoundReport {
    assert_eq!(obs.rows, obs.cols, "observable is square");
    let d = obs.rows as f64;
    let tr = obs.trace().re;
    let tr_sq = obs.matmul(obs).trace().re;
    let first = (tr * tr + tr_sq) / (d * (d + 1.0));
    let norm = op_norm_hermitian(obs);
    BoundReport::new("reservoir-variance", measured_var, first + eps1 * norm * norm)
}

/// Deviation bound from local purity: a readout on a subset of qubits can
/// sit far from its maximally mixed value only if the reduced state carries
/// that much relative entropy.
///
/// lhs = |Tr[O ρ_k] − Tr[O]/2^k|, rhs = ‖O‖∞ √(2 ln 2 · S(ρ_k ‖ I/2^k)).
pub fn entanglement_bound_check(
    state: &DensityMatrix,
    obs_local: &CMatrix,
    subset: &[usize],
) -> Result<BoundReport> {
    assert!(!subset.is_empty(), "subset must be nonempty");
    assert!(
        subset.windows(2).all(|w| w[0] < w[1]),
        "subset must be strictly increasing"
    );
    assert!(
        *subset.last().unwrap() < state.n_qubits,
        "subset index out of range"
    );
    let dk = 1usize << subset.len();
    assert_eq!(obs_local.rows, dk, "observable must live on the subset");
    assert!(
        obs_local.hermiticity_deviation() < 1e-9,
        "observable must be Hermitian"
    );

    let reduced = state.reduce(subset)?;
    let tr_o = obs_local.trace().re;
    let lhs = (obs_local.matmul(&reduced.mat).trace().re - tr_o / dk as f64).abs();
    let mixed = CMatrix::identity(dk).scale((1.0 / dk as f64).into());
    let s_bits = relative_entropy(&reduced.mat, &mixed)?;
    let rhs = op_norm_hermitian(obs_local) * (2.0 * LN_2 * s_bits).sqrt();
    Ok(BoundReport::new("entanglement", lhs, rhs))
}

/// Second-moment bound for a product pipeline measured in the computational
/// basis: `E[⟨O⟩²] ≤ alpha · ∏_k G(eps_k)` with
/// `G(eps) = (1/3 + eps(eps + √(4/3)))^{1/2}`.
pub fn global_measurement_bound(
    alpha: f64,
    per_qubit_eps: &[f64],
    second_moment: f64,
) -> BoundReport {
    let mut rhs = alpha;
    for &eps in per_qubit_eps {
        rhs *= (1.0 / 3.0 + eps * (eps + (4.0f64 / 3.0).sqrt())).sqrt();
    }
    BoundReport::new("global-measurement", second_moment, rhs)
}

/// Distance bound from the noise fixed point after `layers` noisy
/// encoding layers: `‖Õ‖∞ · ((1/b) q^{b(L+1)} s2)^{1/2}` with
/// `b = 1/(2 ln 2)`.
///
/// Returns NaN when `q >= 1` (the bound does not decay and is vacuous).
///
/// ```
/// use qelm::conc::noise_bound;
///
/// let shallow = noise_bound(1.0, 0.9, 2, 6.0);
/// let deep = noise_bound(1.0, 0.9, 12, 6.0);
/// assert!(deep < shallow, "more noisy layers tighten the pin");
/// assert!(noise_bound(1.0, 1.0, 2, 6.0).is_nan());
/// ```
pub fn noise_bound(op_norm: f64, q: f64, layers: usize, s2_bits: f64) -> f64 {
    if q >= 1.0 {
        return f64::NAN;
    }
    let b = 1.0 / (2.0 * LN_2);
    op_norm * ((1.0 / b) * q.powf(b * (layers + 1) as f64) * s2_bits).sqrt()
}

/// Draws a random encoding scheme for trial suites.
fn random_scheme(stream: &mut SeedStream) -> EncodingScheme {
    match stream.below(3) {
        0 => EncodingScheme::PauliReupload,
        1 => EncodingScheme::Exponential,
        _ => EncodingScheme::Layered {
            layers: 1 + stream.below(4),
            seed: stream.below(1usize << 48) as u64,
        },
    }
}

/// Runs randomized encoding-variance trials and checks each against its
/// bound.
///
/// Each trial draws a random register size, encoding, reservoir, and Pauli
/// observable, then measures the readout variance and the encoding
/// expressibility distance from the same inputs, so the inequality is
/// checked with every estimated quantity on its proof-side footing.
///
/// ```
/// use qelm::conc::encoding_bound_trials;
///
/// for r in encoding_bound_trials(3, 300, 1).unwrap() {
///     assert_eq!(r.satisfied, Some(true), "{}: {} > {}", r.label, r.lhs, r.rhs);
/// }
/// ```
pub fn encoding_bound_trials(
    n_trials: usize,
    n_samples: usize,
    seed: u64,
) -> Result<Vec<BoundReport>> {
    assert!(n_samples >= 2, "variance needs at least two samples");
    let mut reports = Vec::with_capacity(n_trials);
    for t in 0..n_trials {
        let mut stream = SeedStream::new(seed).substream("encoding-bound", t as u64);
        let n_a = 1 + stream.below(3);
        let n_h = stream.below(2);
        let n = n_a + n_h;
        let d_a = 1usize << n_a;

        let spec = EncodingSpec::new(random_scheme(&mut stream), n_a);
        let circuit = spec.realize_layered();
        let u_r = haar_unitary(1usize << n, &mut stream)?;
        let obs = PauliString::random_non_identity(n, &mut stream);
        let w = embedded_columns(&u_r, d_a);
        let tilde_o = w.adjoint_matmul(&obs.apply_left(&w));

        let rho0 = DensityMatrix::plus(n_a).mat;
        let encoders: Vec<CMatrix> = (0..n_samples)
            .map(|_| {
                let x = stream.uniform_in(-PI, PI);
                match &circuit {
                    Some(c) => c.unitary(x),
                    None => spec.encode(x),
                }
            })
            .collect();
        let values: Vec<f64> = encoders
            .iter()
            .map(|u| {
                let sigma = u.matmul(&rho0).matmul(&u.adjoint());
                tilde_o.matmul(&sigma).trace().re
            })
            .collect();
        let measured = variance_unbiased(&values);

        // Replay the identical unitaries into the expressibility estimate so
        // the variance and the distance describe the same empirical ensemble.
        let mut idx = 0usize;
        let est = expressibility_measure(
            &rho0,
            n_samples,
            |_| {
                let u = encoders[idx].clone();
                idx += 1;
                Ok(u)
            },
            &mut stream,
        )?;
        let mut report = encoding_bound(&tilde_o, est.epsilon, measured);
        report.label = format!("encoding-variance-{t}");
        reports.push(report);
    }
    Ok(reports)
}

/// Runs randomized reservoir-variance trials and checks each against its
/// bound, resampling the reservoir at a fixed input.
pub fn reservoir_bound_trials(
    n_trials: usize,
    n_samples: usize,
    seed: u64,
) -> Result<Vec<BoundReport>> {
    assert!(n_samples >= 2, "variance needs at least two samples");
    let mut reports = Vec::with_capacity(n_trials);
    for t in 0..n_trials {
        let mut stream = SeedStream::new(seed).substream("reservoir-bound", t as u64);
        let n_a = 1 + stream.below(2);
        let n_h = stream.below(2);
        let n = n_a + n_h;
        let d = 1usize << n;

        let spec = EncodingSpec::new(random_scheme(&mut stream), n_a);
        let x = stream.uniform_in(-PI, PI);
        let mut psi = StateVector::plus(n_a);
        psi.apply_unitary(&spec.encode(x));
        if n_h > 0 {
            psi = psi.tensor(&StateVector::basis(n_h, 0));
        }
        let psi_mat = psi.to_density().mat;

        let obs = PauliString::random_non_identity(n, &mut stream);
        let dense_obs = obs.matrix();

        let layered_depth = match stream.below(2) {
            0 => None,
            _ => Some(1 + stream.below(3)),
        };
        let reservoirs: Vec<CMatrix> = (0..n_samples)
            .map(|_| match layered_depth {
                None => haar_unitary(d, &mut stream),
                Some(depth) => Ok(layered_random_unitary(n, depth, &mut stream)),
            })
            .collect::<Result<_>>()?;
        let values: Vec<f64> = reservoirs
            .iter()
            .map(|u| {
                let out = StateVector::from_amps(u.matvec(&psi.amps));
                out.expectation_pauli(&obs)
            })
            .collect();
        let measured = variance_unbiased(&values);

        let mut idx = 0usize;
        let est = expressibility_measure(
            &psi_mat,
            n_samples,
            |_| {
                let u = reservoirs[idx].clone();
                idx += 1;
                Ok(u)
            },
            &mut stream,
        )?;
        let mut report = reservoir_bound(&dense_obs, est.epsilon, measured);
        report.label = format!("reservoir-variance-{t}");
        reports.push(report);
    }
    Ok(reports)
}

/// Runs randomized local-readout deviation trials on pure and mixed states
/// prepared by random circuits.
pub fn entanglement_bound_trials(n_trials: usize, seed: u64) -> Result<Vec<BoundReport>> {
    let mut reports = Vec::with_capacity(n_trials);
    for t in 0..n_trials {
        let mut stream = SeedStream::new(seed).substream("entanglement-bound", t as u64);
        let n = 2 + stream.below(4);
        let depth = 1 + stream.below(3);

        let draw_pure = |stream: &mut SeedStream| {
            let mut sv = StateVector::basis(n, stream.below(1usize << n));
            apply_layered_random_sv(&mut sv, depth, stream);
            sv.to_density()
        };
        let state = if stream.below(2) == 0 {
            draw_pure(&mut stream)
        } else {
            let a = draw_pure(&mut stream);
            let b = draw_pure(&mut stream);
            let half = (0.5f64).into();
            DensityMatrix::new(a.mat.scale(half).add(&b.mat.scale(half)))?
        };

        let k = 1 + (stream.below(2)).min(n - 1);
        let mut subset: Vec<usize> = Vec::new();
        while subset.len() < k {
            let q = stream.below(n);
            if !subset.contains(&q) {
                subset.push(q);
            }
        }
        subset.sort_unstable();
        let obs_local = PauliString::random_non_identity(k, &mut stream).matrix();

        let mut report = entanglement_bound_check(&state, &obs_local, &subset)?;
        report.label = format!("entanglement-{t}");
        reports.push(report);
    }
    Ok(reports)
}
