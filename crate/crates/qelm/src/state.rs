//! Quantum states, expectation values, shot noise, and Pauli channels.
//!
//! Pure states live in [`StateVector`] (up to 12 qubits), mixed states in
//! [`DensityMatrix`] (up to 8 qubits). Gates are applied with O(d) / O(d^2)
//! kernels so the noise experiments never form full-space unitaries.

use crate::error::Error;
use crate::linalg::{self, CMatrix, Complex64, C_ONE, C_ZERO};
use crate::pauli::PauliString;
use crate::rng::SeedStream;
use crate::Result;

/// Largest qubit count handled as a statevector.
pub const MAX_STATEVECTOR_QUBITS: usize = 12;
/// Largest qubit count handled as a density matrix.
pub const MAX_DENSITY_QUBITS: usize = 8;

/// Bit of qubit `k` within basis index `i` (qubit 0 most significant).
#[inline]
pub fn qubit_bit(i: usize, k: usize, n: usize) -> usize {
    (i >> (n - 1 - k)) & 1
}

/// Pure state of `n` qubits.
#[derive(Clone, Debug)]
pub struct StateVector {
    /// Number of qubits.
    pub n_qubits: usize,
    /// Amplitudes, length 2^n.
    pub amps: Vec<Complex64>,
}

impl StateVector {
    /// Computational basis state `|index>`.
    pub fn basis(n_qubits: usize, index: usize) -> Self {
        let d = 1usize << n_qubits;
        assert!(index < d, "basis index out of range");
        let mut amps = vec![C_ZERO; d];
        amps[index] = C_ONE;
        StateVector { n_qubits, amps }
    }

    /// Uniform superposition `|+>^{⊗n}`.
    pub fn plus(n_qubits: usize) -> Self {
        let d = 1usize << n_qubits;
        let a = Complex64::new(1.0 / (d as f64).sqrt(), 0.0);
        StateVector {
            n_qubits,
            amps: vec![a; d],
        }
    }

    /// State from explicit amplitudes; must have power-of-two length.
    pub fn from_amps(amps: Vec<Complex64>) -> Self {
        let d = amps.len();
        assert!(d.is_power_of_two(), "amplitude count must be 2^n");
        StateVector {
            n_qubits: d.trailing_zeros() as usize,
            amps,
        }
    }

    /// Hilbert-space dimension.
    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    /// Squared norm.
    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Tensor product `self ⊗ other`.
    pub fn tensor(&self, other: &StateVector) -> StateVector {
        let mut amps = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.amps {
            for b in &other.amps {
                amps.push(a * b);
            }
        }
        StateVector {
            n_qubits: self.n_qubits + other.n_qubits,
            amps,
        }
    }

    /// Applies a full-space unitary.
    pub fn apply_unitary(&mut self, u: &CMatrix) {
        assert_eq!(u.cols, self.dim(), "apply_unitary dimension mismatch");
        self.amps = u.matvec(&self.amps);
    }

    /// Applies a 2x2 gate to qubit `k`.
    pub fn apply_single_qubit_gate(&mut self, u: &CMatrix, k: usize) {
        assert_eq!((u.rows, u.cols), (2, 2));
        assert!(k < self.n_qubits, "qubit index out of range");
        let bit = 1usize << (self.n_qubits - 1 - k);
        let d = self.dim();
        let (u00, u01, u10, u11) = (u.get(0, 0), u.get(0, 1), u.get(1, 0), u.get(1, 1));
        for i in 0..d {
            if i & bit != 0 {
                continue;
            }
            let j = i | bit;
            let a = self.amps[i];
            let b = self.amps[j];
            self.amps[i] = u00 * a + u01 * b;
            self.amps[j] = u10 * a + u11 * b;
        }
    }

    /// Applies CNOT with the given control and target qubits.
    pub fn apply_cnot(&mut self, control: usize, target: usize) {
        assert!(control != target, "control and target must differ");
        let n = self.n_qubits;
        let cbit = 1usize << (n - 1 - control);
        let tbit = 1usize << (n - 1 - target);
        for i in 0..self.dim() {
            if i & cbit != 0 && i & tbit == 0 {
                self.amps.swap(i, i | tbit);
            }
        }
    }

    /// Expectation value of a Pauli string, O(d).
    pub fn expectation_pauli(&self, p: &PauliString) -> f64 {
        assert_eq!(p.n_qubits(), self.n_qubits, "pauli dimension mismatch");
        let mut acc = C_ZERO;
        for (i, &amp) in self.amps.iter().enumerate() {
            let (j, phase) = p.action(i);
            acc += self.amps[j].conj() * phase * amp;
        }
        acc.re
    }

    /// Density-matrix representation `|psi><psi|`.
    pub fn to_density(&self) -> DensityMatrix {
        let d = self.dim();
        let mat = CMatrix::from_fn(d, d, |r, c| self.amps[r] * self.amps[c].conj());
        DensityMatrix {
            n_qubits: self.n_qubits,
            mat,
        }
    }
}

/// Mixed state of `n` qubits.
#[derive(Clone, Debug)]
pub struct DensityMatrix {
    /// Number of qubits.
    pub n_qubits: usize,
    /// The 2^n x 2^n matrix.
    pub mat: CMatrix,
}

impl DensityMatrix {
    /// Wraps a matrix after checking Hermiticity and unit trace.
    ///
    /// Positivity is checked separately by [`DensityMatrix::validate`]; it
    /// costs a full eigendecomposition.
    pub fn new(mat: CMatrix) -> Result<Self> {
        if !mat.is_square() || !mat.rows.is_power_of_two() {
            return Err(Error::InvalidDimension(format!(
                "density matrix must be square with power-of-two dimension, got {}x{}",
                mat.rows, mat.cols
            )));
        }
        let dev = mat.hermiticity_deviation();
        if dev > 1e-10 {
            return Err(Error::NotHermitian { deviation: dev });
        }
        let tr = mat.trace();
        if (tr.re - 1.0).abs() > 1e-10 || tr.im.abs() > 1e-10 {
            return Err(Error::InvalidDimension(format!(
                "density matrix trace is {tr}, expected 1"
            )));
        }
        Ok(DensityMatrix {
            n_qubits: mat.rows.trailing_zeros() as usize,
            mat,
        })
    }

    /// Pure state `|index><index|`.
    pub fn basis(n_qubits: usize, index: usize) -> Self {
        StateVector::basis(n_qubits, index).to_density()
    }

    /// Product state `|+><+|^{⊗n}`; every matrix entry equals 1/2^n.
    pub fn plus(n_qubits: usize) -> Self {
        StateVector::plus(n_qubits).to_density()
    }

    /// Maximally mixed state `I/2^n`.
    pub fn maximally_mixed(n_qubits: usize) -> Self {
        let d = 1usize << n_qubits;
        DensityMatrix {
            n_qubits,
            mat: CMatrix::identity(d).scale(Complex64::new(1.0 / d as f64, 0.0)),
        }
    }

    /// Hilbert-space dimension.
    pub fn dim(&self) -> usize {
        self.mat.rows
    }

    /// Purity `Tr[rho^2]`.
    pub fn purity(&self) -> f64 {
        self.mat.data.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Full invariant check: Hermitian, unit trace, positive semidefinite.
    pub fn validate(&self) -> Result<()> {
        let dev = self.mat.hermiticity_deviation();
        if dev > 1e-10 {
            return Err(Error::NotHermitian { deviation: dev });
        }
        let tr = self.mat.trace();
        if (tr.re - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidDimension(format!(
                "trace {} deviates from 1",
                tr.re
            )));
        }
        let (vals, _) = linalg::herm_eig(&self.mat)?;
        if vals[0] < -1e-10 {
            return Err(Error::InvalidDimension(format!(
                "negative eigenvalue {}",
                vals[0]
            )));
        }
        Ok(())
    }

    /// Conjugates by a full-space unitary: `rho -> U rho U†`.
    pub fn apply_unitary(&mut self, u: &CMatrix) {
        assert_eq!(u.cols, self.dim(), "apply_unitary dimension mismatch");
        self.mat = u.matmul(&self.mat).matmul(&u.adjoint());
    }

    /// Applies a 2x2 gate to qubit `k`: row mix then conjugate column mix.
    pub fn apply_single_qubit_gate(&mut self, u: &CMatrix, k: usize) {
        assert_eq!((u.rows, u.cols), (2, 2));
        assert!(k < self.n_qubits, "qubit index out of range");
        let bit = 1usize << (self.n_qubits - 1 - k);
        let d = self.dim();
        let (u00, u01, u10, u11) = (u.get(0, 0), u.get(0, 1), u.get(1, 0), u.get(1, 1));
        // Rows: rho <- U rho.
        for r in 0..d {
            if r & bit != 0 {
                continue;
            }
            let r1 = r | bit;
            for c in 0..d {
                let a = self.mat.get(r, c);
                let b = self.mat.get(r1, c);
                self.mat.set(r, c, u00 * a + u01 * b);
                self.mat.set(r1, c, u10 * a + u11 * b);
            }
        }
        // Columns: rho <- rho U†.
        let (c00, c01, c10, c11) = (u00.conj(), u01.conj(), u10.conj(), u11.conj());
        for c in 0..d {
            if c & bit != 0 {
                continue;
            }
            let c1 = c | bit;
            for r in 0..d {
                let a = self.mat.get(r, c);
                let b = self.mat.get(r, c1);
                self.mat.set(r, c, a * c00 + b * c01);
                self.mat.set(r, c1, a * c10 + b * c11);
            }
        }
    }

    /// Applies CNOT as a basis permutation on rows and columns.
    pub fn apply_cnot(&mut self, control: usize, target: usize) {
        assert!(control != target, "control and target must differ");
        let n = self.n_qubits;
        let cbit = 1usize << (n - 1 - control);
        let tbit = 1usize << (n - 1 - target);
        let d = self.dim();
        let perm = |i: usize| if i & cbit != 0 { i ^ tbit } else { i };
        let mut out = CMatrix::zeros(d, d);
        for r in 0..d {
            let pr = perm(r);
            for c in 0..d {
                out.set(pr, perm(c), self.mat.get(r, c));
            }
        }
        self.mat = out;
    }

    /// Reduced state on the listed qubits (strictly increasing).
    pub fn reduce(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let dims = vec![2usize; self.n_qubits];
        let mat = linalg::partial_trace(&self.mat, keep, &dims)?;
        Ok(DensityMatrix {
            n_qubits: keep.len(),
            mat,
        })
    }

    /// Von Neumann entropy in bits.
    pub fn entropy_bits(&self) -> f64 {
        let (vals, _) = linalg::herm_eig(&self.mat).expect("density matrix is hermitian");
        let mut s = 0.0;
        for &p in &vals {
            if p > 1e-14 {
                s -= p * p.log2();
            }
        }
        s
    }

    /// Relative entropy `S(self ‖ sigma)` in bits.
    pub fn relative_entropy(&self, sigma: &DensityMatrix) -> Result<f64> {
        linalg::relative_entropy(&self.mat, &sigma.mat)
    }

    /// Sandwiched 2-Renyi relative entropy to `I/d`, in bits.
    pub fn renyi2_vs_maximally_mixed(&self) -> f64 {
        linalg::renyi2_relative_entropy(&self.mat, self.dim())
    }

    /// Expectation value of a Hermitian observable, `Tr[O rho]`.
    pub fn expectation(&self, obs: &CMatrix) -> Result<f64> {
        if obs.rows != self.dim() || obs.cols != self.dim() {
            return Err(Error::InvalidDimension(format!(
                "observable is {}x{}, state dimension {}",
                obs.rows,
                obs.cols,
                self.dim()
            )));
        }
        // Tr[O rho] = sum_{ij} O[i,j] rho[j,i].
        let d = self.dim();
        let mut acc = C_ZERO;
        for i in 0..d {
            for j in 0..d {
                acc += obs.get(i, j) * self.mat.get(j, i);
            }
        }
        assert!(
            acc.im.abs() <= 1e-10 * acc.re.abs().max(1.0),
            "expectation has imaginary part {}; observable not Hermitian?",
            acc.im
        );
        Ok(acc.re)
    }

    /// Expectation value of a Pauli string, O(d^2).
    pub fn expectation_pauli(&self, p: &PauliString) -> f64 {
        assert_eq!(p.n_qubits(), self.n_qubits, "pauli dimension mismatch");
        // Tr[P rho] = sum_j phase(j) rho[j, t(j)].
        let mut acc = C_ZERO;
        for j in 0..self.dim() {
            let (t, phase) = p.action(j);
            acc += phase * self.mat.get(j, t);
        }
        acc.re
    }

    /// Applies a Pauli channel to qubit `k`.
    pub fn pauli_noise(&mut self, noise: &NoiseSpec, k: usize) {
        assert!(k < self.n_qubits, "qubit index out of range");
        let bit = 1usize << (self.n_qubits - 1 - k);
        let d = self.dim();
        // Matrix-element form of the channel on qubit k:
        //   populations mix with weights (1±q_z)/2,
        //   coherences mix with weights (q_x±q_y)/2.
        let az = 0.5 * (1.0 + noise.q_z);
        let bz = 0.5 * (1.0 - noise.q_z);
        let cxy = 0.5 * (noise.q_x + noise.q_y);
        let dxy = 0.5 * (noise.q_x - noise.q_y);
        for r in 0..d {
            if r & bit != 0 {
                continue;
            }
            let r1 = r | bit;
            for c in 0..d {
                if c & bit != 0 {
                    continue;
                }
                let c1 = c | bit;
                let p00 = self.mat.get(r, c);
                let p01 = self.mat.get(r, c1);
                let p10 = self.mat.get(r1, c);
                let p11 = self.mat.get(r1, c1);
                self.mat.set(r, c, az * p00 + bz * p11);
                self.mat.set(r1, c1, bz * p00 + az * p11);
                self.mat.set(r, c1, cxy * p01 + dxy * p10);
                self.mat.set(r1, c, dxy * p01 + cxy * p10);
            }
        }
    }
}

/// Single-qubit Pauli channel in the transfer picture.
///
/// Maps X -> q_x X, Y -> q_y Y, Z -> q_z Z and leaves the identity fixed.
#[derive(Clone, Copy, Debug)]
pub struct NoiseSpec {
    /// Damping factor for the X Bloch component.
    pub q_x: f64,
    /// Damping factor for the Y Bloch component.
    pub q_y: f64,
    /// Damping factor for the Z Bloch component.
    pub q_z: f64,
}

impl NoiseSpec {
    /// Builds a channel, rejecting parameter sets that are not completely
    /// positive.
    pub fn new(q_x: f64, q_y: f64, q_z: f64) -> Result<Self> {
        // Kraus weights of a Pauli channel; CP iff all are non-negative.
        let weights = [
            0.25 * (1.0 + q_x + q_y + q_z),
            0.25 * (1.0 + q_x - q_y - q_z),
            0.25 * (1.0 - q_x + q_y - q_z),
            0.25 * (1.0 - q_x - q_y + q_z),
        ];
        for &w in &weights {
            if w < -1e-12 {
                return Err(Error::NotCompletelyPositive { weight: w });
            }
        }
        Ok(NoiseSpec { q_x, q_y, q_z })
    }

    /// Depolarizing channel with probability `p`: all factors equal 1-p.
    pub fn depolarizing(p: f64) -> Result<Self> {
        NoiseSpec::new(1.0 - p, 1.0 - p, 1.0 - p)
    }

    /// Characteristic damping factor `q = max(|q_x|, |q_y|, |q_z|)`.
    pub fn q(&self) -> f64 {
        self.q_x.abs().max(self.q_y.abs()).max(self.q_z.abs())
    }
}

/// Empirical mean of `n_shots` ±1 measurements with the given expectation.
pub fn sample_shots(expval: f64, n_shots: usize, stream: &mut SeedStream) -> Result<f64> {
    if n_shots == 0 {
        return Err(Error::ZeroShots);
    }
    assert!(
        (-1.0 - 1e-9..=1.0 + 1e-9).contains(&expval),
        "expectation {expval} outside [-1, 1]"
    );
    let p_plus = (0.5 * (1.0 + expval)).clamp(0.0, 1.0);
    let mut plus = 0usize;
    for _ in 0..n_shots {
        if stream.bernoulli(p_plus) {
            plus += 1;
        }
    }
    let minus = n_shots - plus;
    Ok((plus as f64 - minus as f64) / n_shots as f64)
}

/// Projector `|m><m|` onto a computational basis state.
pub fn global_projector(bits: &[bool]) -> CMatrix {
    assert!(!bits.is_empty(), "projector needs at least one qubit");
    let n = bits.len();
    let mut index = 0usize;
    for (k, &b) in bits.iter().enumerate() {
        if b {
            index |= 1 << (n - 1 - k);
        }
    }
    let d = 1usize << n;
    let mut m = CMatrix::zeros(d, d);
    m.set(index, index, C_ONE);
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::Letter;

    #[test]
    fn expectation_of_z_on_basis_states() {
        let z: PauliString = "Z".parse().unwrap();
        let zero = DensityMatrix::basis(1, 0);
        assert!((zero.expectation(&z.matrix()).unwrap() - 1.0).abs() < 1e-14);
        assert!((zero.expectation_pauli(&z) - 1.0).abs() < 1e-14);
        let one = DensityMatrix::basis(1, 1);
        assert!((one.expectation_pauli(&z) + 1.0).abs() < 1e-14);
    }

    #[test]
    fn expectation_of_x_on_plus_state() {
        let x: PauliString = "X".parse().unwrap();
        let plus = DensityMatrix::plus(1);
        assert!((plus.expectation_pauli(&x) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn maximally_mixed_kills_non_identity_paulis() {
        let mm = DensityMatrix::maximally_mixed(3);
        for code in 1..64 {
            let p = PauliString::from_code(code, 3);
            assert!(mm.expectation_pauli(&p).abs() < 1e-14, "{p}");
            assert!(mm.expectation(&p.matrix()).unwrap().abs() < 1e-14, "{p}");
        }
    }

    #[test]
    fn expectation_rejects_dimension_mismatch() {
        let rho = DensityMatrix::plus(2);
        let z: PauliString = "Z".parse().unwrap();
        assert!(rho.expectation(&z.matrix()).is_err());
    }

    #[test]
    fn expectation_is_linear_in_observable() {
        let rho = DensityMatrix::plus(2);
        let p1: PauliString = "XZ".parse().unwrap();
        let p2: PauliString = "YY".parse().unwrap();
        let (a, b) = (0.7, -1.3);
        let combo = p1.matrix().scale(Complex64::new(a, 0.0)).add(&p2.matrix().scale(Complex64::new(b, 0.0)));
        let lhs = rho.expectation(&combo).unwrap();
        let rhs = a * rho.expectation_pauli(&p1) + b * rho.expectation_pauli(&p2);
        assert!((lhs - rhs).abs() < 1e-10);
    }

    #[test]
    fn shot_sampling_extremes_are_deterministic() {
        let mut stream = SeedStream::new(4);
        assert_eq!(sample_shots(1.0, 17, &mut stream).unwrap(), 1.0);
        assert_eq!(sample_shots(-1.0, 17, &mut stream).unwrap(), -1.0);
        assert!(matches!(
            sample_shots(0.5, 0, &mut stream),
            Err(Error::ZeroShots)
        ));
    }

    #[test]
    fn shot_sampling_concentrates_at_binomial_rate() {
        let mut stream = SeedStream::new(10);
        let n = 1_000_000;
        let est = sample_shots(0.0, n, &mut stream).unwrap();
        // 3 sigma = 3/sqrt(N) = 0.003.
        assert!(est.abs() < 0.004, "estimate {est}");
    }

    #[test]
    fn identity_channel_is_identity() {
        let mut rho = DensityMatrix::plus(2);
        let before = rho.clone();
        let noise = NoiseSpec::new(1.0, 1.0, 1.0).unwrap();
        rho.pauli_noise(&noise, 0);
        assert!(rho.mat.max_abs_diff(&before.mat) < 1e-14);
    }

    #[test]
    fn depolarizing_contracts_bloch_vector() {
        let q = 0.8;
        let noise = NoiseSpec::new(q, q, q).unwrap();
        let mut rho = DensityMatrix::basis(1, 0);
        rho.pauli_noise(&noise, 0);
        // diag((1+q)/2, (1-q)/2).
        assert!((rho.mat.get(0, 0).re - 0.9).abs() < 1e-14);
        assert!((rho.mat.get(1, 1).re - 0.1).abs() < 1e-14);

        // n applications scale the Bloch radius by q^n.
        let mut plus = DensityMatrix::plus(1);
        let x: PauliString = "X".parse().unwrap();
        for reps in 1..=4 {
            plus.pauli_noise(&noise, 0);
            let r = plus.expectation_pauli(&x);
            assert!((r - q.powi(reps)).abs() < 1e-12, "reps {reps} radius {r}");
        }
    }

    #[test]
    fn anisotropic_channel_scales_each_component() {
        let noise = NoiseSpec::new(0.9, 0.8, 0.85).unwrap();
        // State with all three Bloch components nonzero.
        let mat = CMatrix::new(
            2,
            2,
            vec![
                Complex64::new(0.7, 0.0),
                Complex64::new(0.2, -0.15),
                Complex64::new(0.2, 0.15),
                Complex64::new(0.3, 0.0),
            ],
        );
        let mut rho = DensityMatrix::new(mat).unwrap();
        let bloch = |r: &DensityMatrix| {
            let x: PauliString = "X".parse().unwrap();
            let y: PauliString = "Y".parse().unwrap();
            let z: PauliString = "Z".parse().unwrap();
            (
                r.expectation_pauli(&x),
                r.expectation_pauli(&y),
                r.expectation_pauli(&z),
            )
        };
        let (bx, by, bz) = bloch(&rho);
        rho.pauli_noise(&noise, 0);
        let (ax, ay, az) = bloch(&rho);
        assert!((ax - 0.9 * bx).abs() < 1e-12);
        assert!((ay - 0.8 * by).abs() < 1e-12);
        assert!((az - 0.85 * bz).abs() < 1e-12);
        rho.validate().unwrap();
    }

    #[test]
    fn noise_on_embedded_qubit_leaves_others_alone() {
        // X2 expectation survives noise on qubit 0 untouched.
        let noise = NoiseSpec::depolarizing(0.3).unwrap();
        let mut rho = DensityMatrix::plus(3);
        rho.pauli_noise(&noise, 0);
        let x_on_1: PauliString = "IXI".parse().unwrap();
        assert!((rho.expectation_pauli(&x_on_1) - 1.0).abs() < 1e-12);
        let x_on_0: PauliString = "XII".parse().unwrap();
        assert!((rho.expectation_pauli(&x_on_0) - 0.7).abs() < 1e-12);
        rho.validate().unwrap();
    }

    #[test]
    fn cp_violation_rejected() {
        // q = (1, 1, -1) gives Kraus weight (1+1-1-1)/4 ... = -1/2 < 0 on the
        // Y component combination.
        assert!(NoiseSpec::new(1.0, -1.0, 1.0).is_err());
        assert!(NoiseSpec::new(1.0, 1.0, -0.99).is_err());
        assert!(NoiseSpec::new(0.0, 0.0, 0.0).is_ok());
        assert!(NoiseSpec::depolarizing(0.2).is_ok());
    }

    #[test]
    fn noise_decreases_purity_toward_maximally_mixed() {
        let noise = NoiseSpec::depolarizing(0.25).unwrap();
        let mut rho = DensityMatrix::plus(2);
        let mut last = rho.purity();
        for _ in 0..5 {
            rho.pauli_noise(&noise, 0);
            rho.pauli_noise(&noise, 1);
            let p = rho.purity();
            assert!(p < last + 1e-12, "purity should not increase");
            assert!(p >= 0.25 - 1e-12, "purity floor is 1/2^n");
            last = p;
        }
    }

    #[test]
    fn global_projector_examples() {
        let bits = [true, false, true];
        let proj = global_projector(&bits);
        assert!((proj.trace().re - 1.0).abs() < 1e-14);
        // |101> has index 5.
        let state = DensityMatrix::basis(3, 5);
        assert!((state.expectation(&proj).unwrap() - 1.0).abs() < 1e-14);
        let mm = DensityMatrix::maximally_mixed(3);
        assert!((mm.expectation(&proj).unwrap() - 0.125).abs() < 1e-14);
    }

    #[test]
    fn gates_match_dense_conjugation() {
        let mut stream = SeedStream::new(20);
        let u = crate::linalg::haar_unitary(2, &mut stream).unwrap();
        let mut rho = DensityMatrix::plus(2);
        let mut dense = rho.clone();
        rho.apply_single_qubit_gate(&u, 1);
        let full = crate::linalg::kron(&CMatrix::identity(2), &u);
        dense.apply_unitary(&full);
        assert!(rho.mat.max_abs_diff(&dense.mat) < 1e-12);

        // CNOT(0,1) on a statevector versus dense matrix.
        let mut sv = StateVector::plus(2);
        sv.apply_single_qubit_gate(&u, 0);
        let mut sv2 = sv.clone();
        sv.apply_cnot(0, 1);
        let cnot = {
            let mut m = CMatrix::zeros(4, 4);
            m.set(0, 0, C_ONE);
            m.set(1, 1, C_ONE);
            m.set(3, 2, C_ONE);
            m.set(2, 3, C_ONE);
            m
        };
        sv2.apply_unitary(&cnot);
        let diff: f64 = sv
            .amps
            .iter()
            .zip(&sv2.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        assert!(diff < 1e-12);
    }

    #[test]
    fn reduce_traces_out_hidden_qubits() {
        let rho = DensityMatrix::plus(3);
        let reduced = rho.reduce(&[0, 1]).unwrap();
        let expect = DensityMatrix::plus(2);
        assert!(reduced.mat.max_abs_diff(&expect.mat) < 1e-12);
    }

    #[test]
    fn entropy_examples() {
        assert!(DensityMatrix::basis(2, 1).entropy_bits().abs() < 1e-9);
        let mm = DensityMatrix::maximally_mixed(3);
        assert!((mm.entropy_bits() - 3.0).abs() < 1e-9);
        assert!((mm.renyi2_vs_maximally_mixed()).abs() < 1e-12);
        assert!((DensityMatrix::plus(2).renyi2_vs_maximally_mixed() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn pauli_letters_expose_structure() {
        let p: PauliString = "XIZY".parse().unwrap();
        assert_eq!(p.letters()[0], Letter::X);
        assert_eq!(p.weight(), 3);
    }
}
