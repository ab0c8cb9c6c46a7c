//! Data-encoding unitaries.
//!
//! Classical data enters the machine through `U(x) = e^{iHx}` acting on the
//! accessible qubits. For the product schemes the generator is a sum of
//! single-qubit terms `H_k = -beta_k sigma_z / 2`, so the unitary is diagonal
//! and fully described by the per-qubit eigenvalue pairs (-beta_k/2,
//! +beta_k/2). The layered scheme re-uploads `x` through a depth-L circuit
//! instead and has no product structure.

use crate::linalg::{CMatrix, Complex64};
use crate::rng::SeedStream;
use crate::state::{DensityMatrix, StateVector};
use serde::{Deserialize, Serialize};

/// Which encoding family a spec realizes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EncodingScheme {
    /// Identical Pauli rotations: beta_k = 1 on every qubit.
    PauliReupload,
    /// Geometrically growing generators: beta_k = 3^{k-1}.
    Exponential,
    /// Depth-L re-uploading circuit with fixed random rotation angles.
    Layered {
        /// Number of layers L.
        layers: usize,
        /// Seed fixing the rotation angles.
        seed: u64,
    },
}

/// Encoding family plus the number of accessible qubits.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EncodingSpec {
    /// The encoding family.
    pub scheme: EncodingScheme,
    /// Number of accessible (encoded) qubits.
    pub n_accessible: usize,
}

impl EncodingSpec {
    /// Builds a spec; `n_accessible` must be at least 1.
    pub fn new(scheme: EncodingScheme, n_accessible: usize) -> Self {
        assert!(n_accessible >= 1, "need at least one accessible qubit");
        if let EncodingScheme::Layered { layers, .. } = scheme {
            assert!(layers >= 1, "layered encoding needs at least one layer");
        }
        EncodingSpec {
            scheme,
            n_accessible,
        }
    }

    /// Accessible-space dimension 2^{n_A}.
    pub fn dim(&self) -> usize {
        1usize << self.n_accessible
    }

    /// True for the schemes with a product generator.
    pub fn is_product(&self) -> bool {
        !matches!(self.scheme, EncodingScheme::Layered { .. })
    }

    /// Generator eigenvalue pair (bit 0, bit 1) for each qubit, or `None`
    /// for the layered scheme.
    pub fn per_qubit_eigs(&self) -> Option<Vec<(f64, f64)>> {
        let betas: Vec<f64> = match self.scheme {
            EncodingScheme::PauliReupload => vec![1.0; self.n_accessible],
            EncodingScheme::Exponential => (0..self.n_accessible)
                .map(|k| 3f64.powi(k as i32))
                .collect(),
            EncodingScheme::Layered { .. } => return None,
        };
        Some(betas.iter().map(|b| (-b / 2.0, b / 2.0)).collect())
    }

    /// Generator eigenvalue for each accessible basis state.
    ///
    /// Entry `i` is the sum of per-qubit eigenvalues selected by the bits of
    /// `i` (qubit 0 most significant), so `U(x) = diag(e^{i lambda_i x})`.
    pub fn generator_eigenvalues(&self) -> Option<Vec<f64>> {
        let pairs = self.per_qubit_eigs()?;
        let n = self.n_accessible;
        let d = self.dim();
        let mut eigs = vec![0.0; d];
        for (i, e) in eigs.iter_mut().enumerate() {
            for (k, &(lo, hi)) in pairs.iter().enumerate() {
                let bit = (i >> (n - 1 - k)) & 1;
                *e += if bit == 0 { lo } else { hi };
            }
        }
        Some(eigs)
    }

    /// Encoding unitary at input `x`.
    pub fn encode(&self, x: f64) -> CMatrix {
        match &self.scheme {
            EncodingScheme::Layered { layers, seed } => {
                LayeredCircuit::new(self.n_accessible, *layers, *seed).unitary(x)
            }
            _ => {
                let eigs = self.generator_eigenvalues().expect("product scheme");
                let d = self.dim();
                let mut m = CMatrix::zeros(d, d);
                for (i, &lam) in eigs.iter().enumerate() {
                    m.set(i, i, Complex64::from_polar(1.0, lam * x));
                }
                m
            }
        }
    }

    /// Circuit form of a layered spec, `None` for product schemes.
    pub fn realize_layered(&self) -> Option<LayeredCircuit> {
        match self.scheme {
            EncodingScheme::Layered { layers, seed } => {
                Some(LayeredCircuit::new(self.n_accessible, layers, seed))
            }
            _ => None,
        }
    }
}

/// Depth-L re-uploading circuit with frozen random rotation angles.
///
/// Layer `l` applies `R_y(theta_lk) R_z(x) R_y(phi_lk)` to every qubit `k`,
/// then a CNOT chain over neighbors. Angles are drawn once from the seed at
/// construction; `x` re-enters in every layer.
#[derive(Clone, Debug)]
pub struct LayeredCircuit {
    n: usize,
    layers: usize,
    /// angles[l][k] = (theta, phi).
    angles: Vec<Vec<(f64, f64)>>,
}

impl LayeredCircuit {
    /// Draws the rotation angles for an `n`-qubit, depth-`layers` circuit.
    pub fn new(n: usize, layers: usize, seed: u64) -> Self {
        assert!(n >= 1 && layers >= 1);
        let mut stream = SeedStream::new(seed).substream("layered-encoding-angles", 0);
        let tau = 2.0 * std::f64::consts::PI;
        let angles = (0..layers)
            .map(|_| {
                (0..n)
                    .map(|_| (stream.uniform_in(0.0, tau), stream.uniform_in(0.0, tau)))
                    .collect()
            })
            .collect();
        LayeredCircuit { n, layers, angles }
    }

    /// Number of qubits.
    pub fn n_qubits(&self) -> usize {
        self.n
    }

    /// Depth in layers.
    pub fn layers(&self) -> usize {
        self.layers
    }

    /// The single-qubit rotation of layer `l` on qubit `k` at input `x`.
    pub fn rotation(&self, l: usize, k: usize, x: f64) -> CMatrix {
        let (theta, phi) = self.angles[l][k];
        ry(theta).matmul(&rz(x)).matmul(&ry(phi))
    }

    /// Applies layer `l` to a statevector: rotations, then the CNOT chain.
    pub fn apply_layer_sv(&self, sv: &mut StateVector, l: usize, x: f64) {
        assert_eq!(sv.n_qubits, self.n);
        for k in 0..self.n {
            sv.apply_single_qubit_gate(&self.rotation(l, k, x), k);
        }
        for k in 0..self.n.saturating_sub(1) {
            sv.apply_cnot(k, k + 1);
        }
    }

    /// Applies layer `l` to a density matrix.
    pub fn apply_layer_dm(&self, rho: &mut DensityMatrix, l: usize, x: f64) {
        assert_eq!(rho.n_qubits, self.n);
        for k in 0..self.n {
            rho.apply_single_qubit_gate(&self.rotation(l, k, x), k);
        }
        for k in 0..self.n.saturating_sub(1) {
            rho.apply_cnot(k, k + 1);
        }
    }

    /// Applies the full circuit to a statevector.
    pub fn apply_sv(&self, sv: &mut StateVector, x: f64) {
        for l in 0..self.layers {
            self.apply_layer_sv(sv, l, x);
        }
    }

    /// Dense unitary of the full circuit at input `x`.
    pub fn unitary(&self, x: f64) -> CMatrix {
        let d = 1usize << self.n;
        let mut m = CMatrix::zeros(d, d);
        for col in 0..d {
            let mut sv = StateVector::basis(self.n, col);
            self.apply_sv(&mut sv, x);
            for (row, &amp) in sv.amps.iter().enumerate() {
                m.set(row, col, amp);
            }
        }
        m
    }
}

/// Rotation `R_y(theta) = e^{-i theta Y / 2}`.
pub fn ry(theta: f64) -> CMatrix {
    let (s, c) = (theta / 2.0).sin_cos();
    CMatrix::new(
        2,
        2,
        vec![
            Complex64::new(c, 0.0),
            Complex64::new(-s, 0.0),
            Complex64::new(s, 0.0),
            Complex64::new(c, 0.0),
        ],
    )
}

/// Rotation `R_z(x) = e^{-i x Z / 2}`.
pub fn rz(x: f64) -> CMatrix {
    let mut m = CMatrix::zeros(2, 2);
    m.set(0, 0, Complex64::from_polar(1.0, -x / 2.0));
    m.set(1, 1, Complex64::from_polar(1.0, x / 2.0));
    m
}
