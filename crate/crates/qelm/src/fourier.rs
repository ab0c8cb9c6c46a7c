//! Fourier analysis of readout functions.
//!
//! Every readout of a product-encoded machine is a trigonometric polynomial
//! `<O>_x = sum_w a_w e^{iwx}` whose frequencies are differences of encoding
//! generator eigenvalues. This module computes the frequency set, extracts
//! the coefficients exactly by grouping matrix elements, cross-checks them
//! against a discrete Fourier transform, scores spectral richness over the
//! full Pauli family, and assembles the expressivity matrix A whose rank
//! bounds what the machine can fit.

use crate::encoding::EncodingSpec;
use crate::error::Error;
use crate::linalg::{self, kron, CMatrix, Complex64, C_ZERO};
use crate::pauli::PauliString;
use crate::state::DensityMatrix;
use crate::Result;

/// Tolerance for merging nearby eigenvalue differences into one frequency.
pub const GROUPING_TOL: f64 = 1e-9;
/// Default relative threshold for calling a coefficient nonzero.
pub const RICHNESS_TOL: f64 = 1e-10;
/// Absolute dust floor: exact-arithmetic spectra of dead observables leave
/// float residue around 1e-16 which must not count as signal.
const COEFF_DUST: f64 = 1e-12;

/// Sorted, deduplicated set of readout frequencies.
#[derive(Clone, Debug, PartialEq)]
pub struct FrequencySet {
    freqs: Vec<f64>,
}

impl FrequencySet {
    /// Builds a set from arbitrary values, sorting and merging within the
    /// grouping tolerance.
    pub fn from_values(mut values: Vec<f64>) -> Self {
        values.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let mut freqs: Vec<f64> = Vec::new();
        for v in values {
            match freqs.last() {
                Some(&last) if (v - last).abs() <= GROUPING_TOL => {}
                _ => freqs.push(v),
            }
        }
        FrequencySet { freqs }
    }

    /// Frequency set of a product encoding: all sums over qubits of one
    /// per-qubit eigenvalue difference each.
    ///
    /// ```
    /// use qelm::encoding::{EncodingScheme, EncodingSpec};
    /// use qelm::fourier::FrequencySet;
    ///
    /// let spec = EncodingSpec::new(EncodingScheme::Exponential, 2);
    /// let omega = FrequencySet::from_encoding(&spec).unwrap();
    /// // Ternary generator spacings tile every integer in [-4, 4].
    /// assert_eq!(omega.len(), 9);
    /// assert_eq!(omega.omega_max(), 4.0);
    /// ```
    pub fn from_encoding(spec: &EncodingSpec) -> Result<Self> {
        let pairs = spec
            .per_qubit_eigs()
            .ok_or(Error::NotProductEncoding("frequency_set"))?;
        let mut acc = vec![0.0f64];
        for &(lo, hi) in &pairs {
            let beta = hi - lo;
            let mut next = Vec::with_capacity(acc.len() * 3);
            for &s in &acc {
                next.push(s - beta);
                next.push(s);
                next.push(s + beta);
            }
            acc = FrequencySet::from_values(next).freqs;
        }
        Ok(FrequencySet { freqs: acc })
    }

    /// Frequency set from explicit generator eigenvalues: all pairwise
    /// differences.
    pub fn from_generator_eigenvalues(eigs: &[f64]) -> Self {
        let mut diffs = Vec::with_capacity(eigs.len() * eigs.len());
        for &a in eigs {
            for &b in eigs {
                diffs.push(a - b);
            }
        }
        FrequencySet::from_values(diffs)
    }

    /// The frequencies, ascending.
    pub fn freqs(&self) -> &[f64] {
        &self.freqs
    }

    /// Number of frequencies.
    pub fn len(&self) -> usize {
        self.freqs.len()
    }

    /// True when the set is empty (never the case for a valid encoding).
    pub fn is_empty(&self) -> bool {
        self.freqs.is_empty()
    }

    /// Number of non-negative frequencies.
    pub fn nonnegative_count(&self) -> usize {
        self.freqs.iter().filter(|&&w| w >= -GROUPING_TOL).count()
    }

    /// Largest frequency.
    pub fn omega_max(&self) -> f64 {
        self.freqs.last().copied().unwrap_or(0.0)
    }

    /// True when the set contains `w` within the grouping tolerance.
    pub fn contains(&self, w: f64) -> bool {
        self.freqs
            .binary_search_by(|f| f.partial_cmp(&w).unwrap())
            .map(|_| true)
            .unwrap_or_else(|i| {
                (i < self.freqs.len() && (self.freqs[i] - w).abs() <= GROUPING_TOL)
                    || (i > 0 && (self.freqs[i - 1] - w).abs() <= GROUPING_TOL)
            })
    }

    /// True when the set is symmetric about zero and contains zero.
    pub fn is_symmetric(&self) -> bool {
        self.contains(0.0) && self.freqs.iter().all(|&w| self.contains(-w))
    }
}

/// Frequency vectors of a multivariate encoding: per-component eigenvalue
/// differences combined over all components.
///
/// Each element of `per_component_eigs` lists the generator eigenvalues of
/// one input component; the result is the set of difference vectors, sorted
/// lexicographically.
pub fn multivariate_frequency_set(per_component_eigs: &[Vec<f64>]) -> Vec<Vec<f64>> {
    assert!(
        !per_component_eigs.is_empty(),
        "need at least one input component"
    );
    let per_axis: Vec<Vec<f64>> = per_component_eigs
        .iter()
        .map(|eigs| FrequencySet::from_generator_eigenvalues(eigs).freqs.clone())
        .collect();
    let mut out: Vec<Vec<f64>> = vec![Vec::new()];
    for axis in &per_axis {
        let mut next = Vec::with_capacity(out.len() * axis.len());
        for head in &out {
            for &w in axis {
                let mut v = head.clone();
                v.push(w);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// Exact Fourier spectrum of one readout function.
///
/// Entries cover the complete frequency set of the configuration, including
/// frequencies whose coefficient is zero.
#[derive(Clone, Debug)]
pub struct FourierSpectrum {
    /// Label of the observable this spectrum belongs to.
    pub observable_id: String,
    /// Grouping tolerance the extraction used.
    pub tol: f64,
    /// (frequency, coefficient) pairs, ascending in frequency.
    entries: Vec<(f64, Complex64)>,
}

impl FourierSpectrum {
    /// Builds a spectrum from (frequency, coefficient) pairs.
    pub fn new(observable_id: String, tol: f64, mut entries: Vec<(f64, Complex64)>) -> Self {
        entries.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        FourierSpectrum {
            observable_id,
            tol,
            entries,
        }
    }

    /// The (frequency, coefficient) pairs, ascending in frequency.
    pub fn entries(&self) -> &[(f64, Complex64)] {
        &self.entries
    }

    /// The frequencies carried by this spectrum.
    pub fn frequencies(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.0).collect()
    }

    /// Coefficient at frequency `w` (zero when absent).
    pub fn coeff(&self, w: f64) -> Complex64 {
        for &(f, a) in &self.entries {
            if (f - w).abs() <= 1e-6 {
                return a;
            }
        }
        C_ZERO
    }

    /// Evaluates `sum_w a_w e^{iwx}`; the imaginary part must vanish.
    pub fn eval(&self, x: f64) -> f64 {
        let mut acc = C_ZERO;
        for &(w, a) in &self.entries {
            acc += a * Complex64::from_polar(1.0, w * x);
        }
        acc.re
    }

    /// Largest coefficient magnitude.
    pub fn max_abs_coeff(&self) -> f64 {
        self.entries.iter().map(|e| e.1.norm()).fold(0.0, f64::max)
    }

    /// Number of coefficients above `rel_tol` times the largest magnitude.
    pub fn nonzero_count(&self, rel_tol: f64) -> usize {
        let max = self.max_abs_coeff();
        self.entries
            .iter()
            .filter(|e| {
                let m = e.1.norm();
                m > rel_tol * max && m > COEFF_DUST
            })
            .count()
    }

    /// Largest violation of `a_{-w} = conj(a_w)`.
    pub fn conjugate_symmetry_deviation(&self) -> f64 {
        let mut dev = 0.0f64;
        for &(w, a) in &self.entries {
            let b = self.coeff(-w);
            dev = dev.max((a - b.conj()).norm());
        }
        dev
    }

    /// Largest coefficient difference against another spectrum, compared
    /// over the union of their frequencies.
    pub fn max_coeff_deviation(&self, other: &FourierSpectrum) -> f64 {
        let mut dev = 0.0f64;
        for &(w, a) in &self.entries {
            dev = dev.max((a - other.coeff(w)).norm());
        }
        for &(w, b) in &other.entries {
            dev = dev.max((self.coeff(w) - b).norm());
        }
        dev
    }
}

/// Columns of `u_r` at the accessible basis indices, i.e. the images
/// `U_R |i, 0...0>`.
pub(crate) fn embedded_columns(u_r: &CMatrix, d_a: usize) -> CMatrix {
    let d = u_r.rows;
    let d_h = d / d_a;
    let mut w = CMatrix::zeros(d, d_a);
    for i in 0..d_a {
        let src = i * d_h;
        for r in 0..d {
            w.set(r, i, u_r.get(r, src));
        }
    }
    w
}

/// Shared spectrum assembly: groups `alpha[u,v] * s[v,u]` by the eigenvalue
/// difference `lambda_u - lambda_v`.
fn spectrum_from_matrix_elements(
    alpha: &CMatrix,
    eigs: &[f64],
    s: &CMatrix,
    observable_id: String,
) -> FourierSpectrum {
    let d_a = eigs.len();
    let mut pairs: Vec<(f64, Complex64)> = Vec::with_capacity(d_a * d_a);
    for u in 0..d_a {
        for v in 0..d_a {
            let w = eigs[u] - eigs[v];
            let coeff = alpha.get(u, v) * s.get(v, u);
            pairs.push((w, coeff));
        }
    }
    pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let mut entries: Vec<(f64, Complex64)> = Vec::new();
    for (w, c) in pairs {
        match entries.last_mut() {
            Some(last) if (w - last.0).abs() <= GROUPING_TOL => last.1 += c,
            _ => entries.push((w, c)),
        }
    }
    FourierSpectrum::new(observable_id, GROUPING_TOL, entries)
}

/// Validates the spectrum-extraction inputs and returns
/// (generator eigenvalues, embedded columns W).
fn spectrum_inputs(
    rho0: &DensityMatrix,
    spec: &EncodingSpec,
    u_r: &CMatrix,
) -> Result<(Vec<f64>, CMatrix)> {
    let eigs = spec
        .generator_eigenvalues()
        .ok_or(Error::NotProductEncoding("spectrum_direct"))?;
    let d_a = spec.dim();
    if rho0.dim() != d_a {
        return Err(Error::InvalidDimension(format!(
            "initial state has dimension {}, encoding needs {}",
            rho0.dim(),
            d_a
        )));
    }
    if !u_r.is_square() || u_r.rows % d_a != 0 || u_r.rows == 0 {
        return Err(Error::InvalidDimension(format!(
            "reservoir is {}x{}, not a multiple of the accessible dimension {}",
            u_r.rows, u_r.cols, d_a
        )));
    }
    Ok((eigs, embedded_columns(u_r, d_a)))
}

/// Exact Fourier coefficients of `<O>_x` for a dense observable.
///
/// Groups the matrix elements `alpha[u,v] <v,0|U_R† O U_R|u,0>` by the
/// eigenvalue difference `lambda_u - lambda_v`. The resulting series
/// reproduces the readout exactly; the DFT extractor provides the
/// independent cross-check.
pub fn spectrum_direct(
    rho0: &DensityMatrix,
    spec: &EncodingSpec,
    u_r: &CMatrix,
    obs: &CMatrix,
) -> Result<FourierSpectrum> {
    let (eigs, w) = spectrum_inputs(rho0, spec, u_r)?;
    if obs.rows != u_r.rows || obs.cols != u_r.cols {
        return Err(Error::InvalidDimension(format!(
            "observable is {}x{}, reservoir space is {}",
            obs.rows, obs.cols, u_r.rows
        )));
    }
    let s = w.adjoint_matmul(&obs.matmul(&w));
    Ok(spectrum_from_matrix_elements(
        &rho0.mat,
        &eigs,
        &s,
        "observable".into(),
    ))
}

/// Exact Fourier coefficients of `<P>_x` for a Pauli-string observable on
/// the full register, using the string's permutation structure.
///
/// ```
/// use qelm::encoding::{EncodingScheme, EncodingSpec};
/// use qelm::fourier::{expectation_at, spectrum_dft, spectrum_direct_pauli};
/// use qelm::pauli::PauliString;
/// use qelm::reservoir::{ReservoirKind, ReservoirSpec};
/// use qelm::state::DensityMatrix;
///
/// let spec = EncodingSpec::new(EncodingScheme::PauliReupload, 2);
/// let rho0 = DensityMatrix::plus(2);
/// let u_r = ReservoirSpec::new(ReservoirKind::Haar { seed: 3 }, 2)
///     .realize()
///     .unwrap();
/// let obs: PauliString = "XZ".parse().unwrap();
///
/// let direct = spectrum_direct_pauli(&rho0, &spec, &u_r, &obs).unwrap();
/// // Independent extractor: sample the readout and take a DFT.
/// let dense = obs.matrix();
/// let dft = spectrum_dft(|x| expectation_at(&rho0, &spec, &u_r, &dense, x), 2);
/// assert!(direct.max_coeff_deviation(&dft) < 1e-10);
/// ```
pub fn spectrum_direct_pauli(
    rho0: &DensityMatrix,
    spec: &EncodingSpec,
    u_r: &CMatrix,
    obs: &PauliString,
) -> Result<FourierSpectrum> {
    let (eigs, w) = spectrum_inputs(rho0, spec, u_r)?;
    let d = 1usize << obs.n_qubits();
    if d != u_r.rows {
        return Err(Error::InvalidDimension(format!(
            "Pauli string acts on dimension {}, reservoir space is {}",
            d, u_r.rows
        )));
    }
    let s = w.adjoint_matmul(&obs.apply_left(&w));
    Ok(spectrum_from_matrix_elements(
        &rho0.mat,
        &eigs,
        &s,
        obs.to_string(),
    ))
}

/// Reference evaluation of `<O>_x` through the full density-matrix pipeline.
///
/// Deliberately avoids the grouped-coefficient path: encode, attach the
/// hidden register, conjugate by the reservoir, take the trace. Used as the
/// independent route when cross-checking spectra.
pub fn expectation_at(
    rho0: &DensityMatrix,
    spec: &EncodingSpec,
    u_r: &CMatrix,
    obs: &CMatrix,
    x: f64,
) -> f64 {
    let d_a = rho0.dim();
    let d = u_r.rows;
    assert_eq!(d % d_a, 0, "reservoir dimension mismatch");
    let d_h = d / d_a;
    let u = spec.encode(x);
    let rho_x = u.matmul(&rho0.mat).matmul(&u.adjoint());
    let full = if d_h == 1 {
        rho_x
    } else {
        let mut hidden = CMatrix::zeros(d_h, d_h);
        hidden.set(0, 0, Complex64::new(1.0, 0.0));
        kron(&rho_x, &hidden)
    };
    let tilde = u_r.matmul(&full).matmul(&u_r.adjoint());
    // Tr[O rho] without re-validating the density matrix at every x.
    let mut acc = C_ZERO;
    for i in 0..d {
        for j in 0..d {
            acc += obs.get(i, j) * tilde.get(j, i);
        }
    }
    acc.re
}

/// Fourier coefficients of a 2pi-periodic readout by discrete Fourier
/// transform on `2*omega_max + 1` equispaced points.
///
/// Exact for band-limited inputs with integer frequencies up to `omega_max`;
/// aliasing beyond that is the caller's responsibility.
pub fn spectrum_dft(readout: impl Fn(f64) -> f64, omega_max: usize) -> FourierSpectrum {
    let n = 2 * omega_max + 1;
    let tau = 2.0 * std::f64::consts::PI;
    let samples: Vec<f64> = (0..n).map(|t| readout(tau * t as f64 / n as f64)).collect();
    let mut entries = Vec::with_capacity(n);
    for k in 0..n {
        let w = k as f64 - omega_max as f64;
        let mut acc = C_ZERO;
        for (t, &f) in samples.iter().enumerate() {
            let angle = -w * tau * t as f64 / n as f64;
            acc += Complex64::from_polar(f, angle);
        }
        entries.push((w, acc / n as f64));
    }
    FourierSpectrum::new("dft".into(), GROUPING_TOL, entries)
}

/// Spectral richness of a reservoir: the average number of active
/// frequencies over all accessible-space Pauli observables.
///
/// Returns `(raw, normalized)`: raw is the plain average count, normalized
/// divides by the frequency-set size.
///
/// ```
/// use qelm::encoding::{EncodingScheme, EncodingSpec};
/// use qelm::fourier::richness;
/// use qelm::linalg::CMatrix;
/// use qelm::state::DensityMatrix;
///
/// let spec = EncodingSpec::new(EncodingScheme::Exponential, 1);
/// let rho0 = DensityMatrix::plus(1);
/// // A do-nothing reservoir leaves most observables spectrally sparse:
/// // averaged over {I, X, Y, Z} only 1.25 of the 3 frequencies light up.
/// let (raw, normalized) = richness(&spec, &CMatrix::identity(2), &rho0, 1e-10).unwrap();
/// assert!((raw - 1.25).abs() < 1e-12);
/// assert!((normalized - 1.25 / 3.0).abs() < 1e-12);
/// ```
pub fn richness(
    spec: &EncodingSpec,
    u_r: &CMatrix,
    rho0: &DensityMatrix,
    tol: f64,
) -> Result<(f64, f64)> {
    let n_a = spec.n_accessible;
    if n_a > 6 {
        return Err(Error::Budget(format!(
            "richness enumerates 4^{n_a} Pauli observables; n_accessible is capped at 6"
        )));
    }
    let d = u_r.rows;
    let d_a = spec.dim();
    if d % d_a != 0 || d == 0 {
        return Err(Error::InvalidDimension(format!(
            "reservoir dimension {} incompatible with {} accessible qubits",
            d, n_a
        )));
    }
    let n_h = (d / d_a).trailing_zeros() as usize;
    let omega = FrequencySet::from_encoding(spec)?;
    let m = 4usize.pow(n_a as u32);
    let mut total = 0usize;
    for code in 0..m {
        let p = PauliString::from_code(code, n_a).embed(n_h);
        let spectrum = spectrum_direct_pauli(rho0, spec, u_r, &p)?;
        total += spectrum.nonzero_count(tol);
    }
    let raw = total as f64 / m as f64;
    Ok((raw, raw / omega.len() as f64))
}

/// Expressivity analysis of a set of readout spectra.
#[derive(Clone, Debug)]
pub struct ExpressivityReport {
    /// Coefficient matrix with one row per frequency, one column per
    /// observable.
    pub matrix_a: CMatrix,
    /// Numerical rank of `matrix_a`.
    pub rank: usize,
    /// Number of observables M.
    pub m: usize,
    /// Number of frequencies.
    pub omega_count: usize,
    /// Pauli budget 4^{n_O} of the measured register.
    pub pauli_budget: usize,
    /// The bound min(M, |Omega|, 4^{n_O}).
    pub bound: usize,
    /// True when the rank attains the bound.
    pub saturated: bool,
}

/// Assembles the coefficient matrix `A[w,k] = a_w^{(k)}` and reports its
/// rank against the bound `min(M, |Omega|, 4^{n_O})`.
///
/// ```
/// use qelm::encoding::{EncodingScheme, EncodingSpec};
/// use qelm::fourier::{expressivity_report, spectrum_direct_pauli};
/// use qelm::pauli::PauliString;
/// use qelm::reservoir::{ReservoirKind, ReservoirSpec};
/// use qelm::state::DensityMatrix;
///
/// let spec = EncodingSpec::new(EncodingScheme::PauliReupload, 1);
/// let rho0 = DensityMatrix::plus(1);
/// let u_r = ReservoirSpec::new(ReservoirKind::Haar { seed: 5 }, 2)
///     .realize()
///     .unwrap();
/// let spectra: Vec<_> = ["XI", "YZ", "ZZ"]
///     .iter()
///     .map(|s| {
///         let p: PauliString = s.parse().unwrap();
///         spectrum_direct_pauli(&rho0, &spec, &u_r, &p).unwrap()
///     })
///     .collect();
///
/// let report = expressivity_report(&spectra, 2).unwrap();
/// assert_eq!(report.bound, 3); // min(M = 3, |Omega| = 3, 4^2 = 16)
/// assert!(report.rank <= report.bound);
/// ```
pub fn expressivity_report(
    spectra: &[FourierSpectrum],
    n_o: usize,
) -> Result<ExpressivityReport> {
    if spectra.is_empty() {
        return Err(Error::InvalidDimension(
            "expressivity_report needs at least one spectrum".into(),
        ));
    }
    let ref_freqs = spectra[0].frequencies();
    for s in &spectra[1..] {
        let fs = s.frequencies();
        let same = fs.len() == ref_freqs.len()
            && fs
                .iter()
                .zip(ref_freqs.iter())
                .all(|(a, b)| (a - b).abs() <= GROUPING_TOL);
        if !same {
            return Err(Error::FrequencySetMismatch(format!(
                "spectrum {:?} carries {} frequencies, expected {}",
                s.observable_id,
                fs.len(),
                ref_freqs.len()
            )));
        }
    }
    let omega_count = ref_freqs.len();
    let m = spectra.len();
    let matrix_a = CMatrix::from_fn(omega_count, m, |r, k| spectra[k].entries()[r].1);
    let rank = linalg::svd_rank(&matrix_a, 1e-9);
    let pauli_budget = 4usize.saturating_pow(n_o as u32);
    let bound = m.min(omega_count).min(pauli_budget);
    Ok(ExpressivityReport {
        saturated: rank == bound,
        matrix_a,
        rank,
        m,
        omega_count,
        pauli_budget,
        bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encoding::EncodingScheme;
    use crate::reservoir::{ReservoirKind, ReservoirSpec};
    use crate::rng::SeedStream;

    fn pauli_spec(n: usize) -> EncodingSpec {
        EncodingSpec::new(EncodingScheme::PauliReupload, n)
    }

    fn expo_spec(n: usize) -> EncodingSpec {
        EncodingSpec::new(EncodingScheme::Exponential, n)
    }

    #[test]
    fn pauli_frequency_set_is_integer_ladder() {
        let fs = FrequencySet::from_encoding(&pauli_spec(3)).unwrap();
        let expect: Vec<f64> = (-3..=3).map(|k| k as f64).collect();
        assert_eq!(fs.len(), 7);
        for (a, b) in fs.freqs().iter().zip(expect.iter()) {
            assert!((a - b).abs() < 1e-12);
        }
        assert!(fs.is_symmetric());
    }

    #[test]
    fn exponential_frequency_set_fills_integers() {
        let fs = FrequencySet::from_encoding(&expo_spec(2)).unwrap();
        let expect: Vec<f64> = (-4..=4).map(|k| k as f64).collect();
        assert_eq!(fs.len(), 9);
        for (a, b) in fs.freqs().iter().zip(expect.iter()) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn single_qubit_set_is_three_frequencies() {
        let fs = FrequencySet::from_generator_eigenvalues(&[-0.35, 0.35]);
        assert_eq!(fs.len(), 3);
        assert!((fs.freqs()[0] + 0.7).abs() < 1e-12);
        assert!(fs.freqs()[1].abs() < 1e-12);
        assert!((fs.freqs()[2] - 0.7).abs() < 1e-12);
    }

    #[test]
    fn frequency_count_laws_hold_up_to_six_qubits() {
        for n in 1..=6usize {
            let pauli = FrequencySet::from_encoding(&pauli_spec(n)).unwrap();
            assert_eq!(pauli.nonnegative_count(), n + 1, "pauli n={n}");
            assert_eq!(pauli.len(), 2 * n + 1);

            let expo = FrequencySet::from_encoding(&expo_spec(n)).unwrap();
            let half = (3usize.pow(n as u32) - 1) / 2;
            assert_eq!(expo.nonnegative_count(), 1 + half, "expo n={n}");
            assert_eq!(expo.len(), 3usize.pow(n as u32));
            assert!(expo.is_symmetric());
        }
    }

    #[test]
    fn generic_eigenvalues_reach_the_maximum_count() {
        // Fully generic generator spectra have no difference collisions, so
        // the number of non-negative frequencies is 1 + (4^n - 2^n)/2.
        // Per-qubit (product) generators cannot reach this: their
        // differences collapse onto the 3^n lattice combinations.
        let mut stream = SeedStream::new(2024);
        for n in 1..=3usize {
            let eigs: Vec<f64> = (0..1usize << n).map(|_| stream.uniform()).collect();
            let fs = FrequencySet::from_generator_eigenvalues(&eigs);
            let expect = 1 + (4usize.pow(n as u32) - 2usize.pow(n as u32)) / 2;
            assert_eq!(fs.nonnegative_count(), expect, "n={n}");
        }
    }

    #[test]
    fn multivariate_set_enumerates_vector_differences() {
        let two = multivariate_frequency_set(&[vec![-0.5, 0.5], vec![-0.5, 0.5]]);
        assert_eq!(two.len(), 9);
        assert!(two.contains(&vec![1.0, -1.0]));
        assert!(two.contains(&vec![0.0, 0.0]));

        let one = multivariate_frequency_set(&[vec![-0.5, 0.5]]);
        let scalar = FrequencySet::from_generator_eigenvalues(&[-0.5, 0.5]);
        assert_eq!(one.len(), scalar.len());

        let degenerate = multivariate_frequency_set(&[vec![0.7, 0.7]]);
        assert_eq!(degenerate, vec![vec![0.0]]);
    }

    #[test]
    fn dft_of_cosine() {
        let s = spectrum_dft(|x| x.cos(), 3);
        assert!((s.coeff(1.0) - Complex64::new(0.5, 0.0)).norm() < 1e-12);
        assert!((s.coeff(-1.0) - Complex64::new(0.5, 0.0)).norm() < 1e-12);
        assert!(s.coeff(0.0).norm() < 1e-12);
        assert!(s.coeff(2.0).norm() < 1e-12);
        assert!(s.conjugate_symmetry_deviation() < 1e-12);
    }

    #[test]
    fn dft_of_constant_and_sine() {
        let c = spectrum_dft(|_| 0.75, 2);
        assert!((c.coeff(0.0) - Complex64::new(0.75, 0.0)).norm() < 1e-12);
        assert!(c.nonzero_count(1e-10) == 1);

        let s = spectrum_dft(|x| x.sin(), 2);
        assert!((s.coeff(1.0) - Complex64::new(0.0, -0.5)).norm() < 1e-12);
        assert!((s.coeff(-1.0) - Complex64::new(0.0, 0.5)).norm() < 1e-12);
    }

    #[test]
    fn single_qubit_spectra_match_bloch_oracle() {
        // One re-uploaded qubit, no reservoir, |+> start: <X> = cos x,
        // <Y> = sin x, <Z> = 0. Brute-force 2x2 evaluation fixes these.
        let spec = pauli_spec(1);
        let rho0 = DensityMatrix::plus(1);
        let u_r = CMatrix::identity(2);

        let x_spec = spectrum_direct_pauli(&rho0, &spec, &u_r, &"X".parse().unwrap()).unwrap();
        assert!((x_spec.coeff(1.0) - Complex64::new(0.5, 0.0)).norm() < 1e-12);
        assert!((x_spec.coeff(-1.0) - Complex64::new(0.5, 0.0)).norm() < 1e-12);
        assert!(x_spec.coeff(0.0).norm() < 1e-14);

        let y_spec = spectrum_direct_pauli(&rho0, &spec, &u_r, &"Y".parse().unwrap()).unwrap();
        assert!((y_spec.coeff(1.0) - Complex64::new(0.0, -0.5)).norm() < 1e-12);

        let z_spec = spectrum_direct_pauli(&rho0, &spec, &u_r, &"Z".parse().unwrap()).unwrap();
        assert!(z_spec.max_abs_coeff() < 1e-14, "Z readout is identically 0");

        let i_spec = spectrum_direct_pauli(&rho0, &spec, &u_r, &"I".parse().unwrap()).unwrap();
        assert!((i_spec.coeff(0.0) - Complex64::new(1.0, 0.0)).norm() < 1e-14);
        assert_eq!(i_spec.nonzero_count(1e-10), 1);
    }

    #[test]
    fn spectrum_series_reproduces_readout() {
        let spec = expo_spec(2);
        let rho0 = DensityMatrix::plus(2);
        let res = ReservoirSpec::new(ReservoirKind::Haar { seed: 41 }, 3);
        let u_r = res.realize().unwrap();
        let obs: PauliString = "ZXI".parse().unwrap();
        let spectrum = spectrum_direct_pauli(&rho0, &spec, &u_r, &obs).unwrap();
        let dense = obs.matrix();
        for &x in &[0.0, 0.3, 1.7, 4.4] {
            let direct = expectation_at(&rho0, &spec, &u_r, &dense, x);
            assert!(
                (spectrum.eval(x) - direct).abs() < 1e-10,
                "x={x}: {} vs {direct}",
                spectrum.eval(x)
            );
        }
        assert!(spectrum.conjugate_symmetry_deviation() < 1e-10);
    }

    #[test]
    fn direct_and_dft_spectra_agree() {
        let spec = pauli_spec(2);
        let rho0 = DensityMatrix::plus(2);
        let res = ReservoirSpec::chaotic(3, 10.0);
        let u_r = res.realize().unwrap();
        let obs: PauliString = "YZI".parse().unwrap();
        let direct = spectrum_direct_pauli(&rho0, &spec, &u_r, &obs).unwrap();
        let dense = obs.matrix();
        let dft = spectrum_dft(|x| expectation_at(&rho0, &spec, &u_r, &dense, x), 2);
        assert!(
            direct.max_coeff_deviation(&dft) < 1e-10,
            "deviation {}",
            direct.max_coeff_deviation(&dft)
        );
    }

    #[test]
    fn spectrum_rejects_layered_encoding() {
        let spec = EncodingSpec::new(EncodingScheme::Layered { layers: 2, seed: 1 }, 2);
        let rho0 = DensityMatrix::plus(2);
        let u_r = CMatrix::identity(4);
        let err = spectrum_direct(&rho0, &spec, &u_r, &CMatrix::identity(4));
        assert!(matches!(err, Err(Error::NotProductEncoding(_))));
    }

    #[test]
    fn richness_of_identity_reservoir_single_qubit() {
        // Counts per observable: I -> 1 (w=0), X -> 2 (w=+-1), Y -> 2,
        // Z -> 0 (readout identically zero). Average = 5/4.
        let spec = pauli_spec(1);
        let rho0 = DensityMatrix::plus(1);
        let u_r = CMatrix::identity(2);
        let (raw, normalized) = richness(&spec, &u_r, &rho0, RICHNESS_TOL).unwrap();
        assert!((raw - 1.25).abs() < 1e-12, "raw {raw}");
        assert!((normalized - 1.25 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn richness_rejects_oversized_register() {
        let spec = pauli_spec(7);
        let rho0 = DensityMatrix::plus(7);
        let u_r = CMatrix::identity(128);
        assert!(matches!(
            richness(&spec, &u_r, &rho0, RICHNESS_TOL),
            Err(Error::Budget(_))
        ));
    }

    #[test]
    fn expressivity_rank_bound_and_saturation() {
        let spec = expo_spec(2);
        let rho0 = DensityMatrix::plus(2);
        let n_total = 3;
        let u_r = ReservoirSpec::new(ReservoirKind::Haar { seed: 7 }, n_total)
            .realize()
            .unwrap();
        let mut stream = SeedStream::new(55);
        let mut seen = std::collections::HashSet::new();
        let mut spectra = Vec::new();
        while spectra.len() < 5 {
            let p = PauliString::random_non_identity(n_total, &mut stream);
            if seen.insert(p.to_string()) {
                spectra.push(spectrum_direct_pauli(&rho0, &spec, &u_r, &p).unwrap());
            }
        }
        let report = expressivity_report(&spectra, n_total).unwrap();
        assert_eq!(report.omega_count, 9);
        assert_eq!(report.m, 5);
        assert_eq!(report.bound, 5);
        assert_eq!(report.rank, 5, "Haar reservoir saturates the bound");
        assert!(report.saturated);

        // A duplicated column cannot raise the rank.
        let mut dup = spectra.clone();
        dup.push(spectra[0].clone());
        let with_dup = expressivity_report(&dup, n_total).unwrap();
        assert_eq!(with_dup.rank, 5);
        assert!(!with_dup.saturated);
    }

    #[test]
    fn expressivity_single_observable() {
        let spec = pauli_spec(1);
        let rho0 = DensityMatrix::plus(1);
        let u_r = CMatrix::identity(2);
        let s = spectrum_direct_pauli(&rho0, &spec, &u_r, &"X".parse().unwrap()).unwrap();
        let report = expressivity_report(&[s], 1).unwrap();
        assert_eq!(report.rank, 1);
        assert_eq!(report.bound, 1);
    }

    #[test]
    fn expressivity_rejects_mismatched_frequency_sets() {
        let rho1 = DensityMatrix::plus(1);
        let s1 = spectrum_direct_pauli(&rho1, &pauli_spec(1), &CMatrix::identity(2), &"X".parse().unwrap())
            .unwrap();
        let rho2 = DensityMatrix::plus(2);
        let s2 = spectrum_direct_pauli(&rho2, &pauli_spec(2), &CMatrix::identity(4), &"XI".parse().unwrap())
            .unwrap();
        assert!(matches!(
            expressivity_report(&[s1, s2], 1),
            Err(Error::FrequencySetMismatch(_))
        ));
    }
}
