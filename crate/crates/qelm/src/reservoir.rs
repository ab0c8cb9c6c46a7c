//! Reservoir unitaries on the full accessible-plus-hidden register.
//!
//! The reservoir is the fixed scrambling step between encoding and
//! measurement. Four kinds: no reservoir, Ising Hamiltonian evolution in its
//! integrable and chaotic regimes, exact Haar random, and layered random
//! circuits.

use crate::linalg::{self, CMatrix, Complex64};
use crate::rng::SeedStream;
use crate::state::StateVector;
use crate::Result;
use serde::{Deserialize, Serialize};

/// Which reservoir family a spec realizes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReservoirKind {
    /// No reservoir; the identity map.
    Identity,
    /// Evolution `e^{-i H t}` under the open-boundary Ising Hamiltonian
    /// `H = J sum Z_i Z_{i+1} + B_z sum Z_i + B_x sum X_i`.
    Ising {
        /// Nearest-neighbor coupling J.
        j: f64,
        /// Transverse field B_x.
        bx: f64,
        /// Longitudinal field B_z.
        bz: f64,
        /// Evolution time t.
        t: f64,
    },
    /// Exact Haar-random unitary, fixed by the seed.
    Haar {
        /// Seed selecting the sample.
        seed: u64,
    },
    /// Depth-L circuit of Haar-random single-qubit gates and CNOT chains.
    LayeredRandom {
        /// Number of layers L.
        layers: usize,
        /// Seed selecting the gates.
        seed: u64,
    },
}

/// Reservoir family plus the total register size.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReservoirSpec {
    /// The reservoir family.
    pub kind: ReservoirKind,
    /// Total number of qubits n = n_A + n_H.
    pub n_total: usize,
}

/// Default Ising evolution time; long enough for chaotic scrambling.
pub const DEFAULT_ISING_TIME: f64 = 10.0;

impl ReservoirSpec {
    /// Builds a spec; `n_total` must be at least 1.
    pub fn new(kind: ReservoirKind, n_total: usize) -> Self {
        assert!(n_total >= 1, "reservoir needs at least one qubit");
        if let ReservoirKind::LayeredRandom { layers, .. } = kind {
            assert!(layers >= 1, "layered reservoir needs at least one layer");
        }
        ReservoirSpec { kind, n_total }
    }

    /// Integrable Ising preset: J = -1, B_x = 0, B_z = 1.
    pub fn integrable(n_total: usize, t: f64) -> Self {
        ReservoirSpec::new(
            ReservoirKind::Ising {
                j: -1.0,
                bx: 0.0,
                bz: 1.0,
                t,
            },
            n_total,
        )
    }

    /// Chaotic Ising preset: J = -1, B_x = 0.7, B_z = 1.5.
    pub fn chaotic(n_total: usize, t: f64) -> Self {
        ReservoirSpec::new(
            ReservoirKind::Ising {
                j: -1.0,
                bx: 0.7,
                bz: 1.5,
                t,
            },
            n_total,
        )
    }

    /// Register dimension 2^n.
    pub fn dim(&self) -> usize {
        1usize << self.n_total
    }

    /// Realizes the reservoir as a dense unitary.
    ///
    /// Identity and Ising kinds are fully deterministic; Haar and
    /// LayeredRandom are deterministic given their embedded seed.
    pub fn realize(&self) -> Result<CMatrix> {
        let d = self.dim();
        match &self.kind {
            ReservoirKind::Identity => Ok(CMatrix::identity(d)),
            ReservoirKind::Ising { j, bx, bz, t } => {
                let h = ising_hamiltonian(self.n_total, *j, *bx, *bz);
                // e^{-iHt}.
                linalg::herm_expm(&h, -t)
            }
            ReservoirKind::Haar { seed } => {
                let mut stream = SeedStream::new(*seed).substream("haar-reservoir", 0);
                linalg::haar_unitary(d, &mut stream)
            }
            ReservoirKind::LayeredRandom { layers, seed } => {
                let mut stream = SeedStream::new(*seed).substream("layered-reservoir", 0);
                Ok(layered_random_unitary(self.n_total, *layers, &mut stream))
            }
        }
    }
}

/// Open-boundary Ising Hamiltonian
/// `J sum_{i<n} Z_i Z_{i+1} + B_z sum_i Z_i + B_x sum_i X_i`.
pub fn ising_hamiltonian(n: usize, j: f64, bx: f64, bz: f64) -> CMatrix {
    assert!(n >= 1, "need at least one site");
    let d = 1usize << n;
    let mut h = CMatrix::zeros(d, d);
    let zsign = |i: usize, k: usize| -> f64 {
        if (i >> (n - 1 - k)) & 1 == 0 {
            1.0
        } else {
            -1.0
        }
    };
    for i in 0..d {
        let mut diag = 0.0;
        for k in 0..n.saturating_sub(1) {
            diag += j * zsign(i, k) * zsign(i, k + 1);
        }
        for k in 0..n {
            diag += bz * zsign(i, k);
        }
        h.set(i, i, Complex64::new(diag, 0.0));
        if bx != 0.0 {
            for k in 0..n {
                let flipped = i ^ (1 << (n - 1 - k));
                let cur = h.get(flipped, i);
                h.set(flipped, i, cur + Complex64::new(bx, 0.0));
            }
        }
    }
    h
}

/// Applies a freshly drawn depth-L random circuit (Haar single-qubit gates
/// plus CNOT chains) directly to a statevector, without forming the matrix.
pub fn apply_layered_random_sv(sv: &mut StateVector, layers: usize, stream: &mut SeedStream) {
    assert!(layers >= 1);
    let n = sv.n_qubits;
    for _ in 0..layers {
        for k in 0..n {
            let g = linalg::haar_unitary(2, stream).expect("d=2 is valid");
            sv.apply_single_qubit_gate(&g, k);
        }
        for k in 0..n.saturating_sub(1) {
            sv.apply_cnot(k, k + 1);
        }
    }
}

/// Depth-L circuit: each layer applies a Haar-random 2x2 gate per qubit,
/// then a CNOT chain over neighbors.
pub fn layered_random_unitary(n: usize, layers: usize, stream: &mut SeedStream) -> CMatrix {
    assert!(n >= 1 && layers >= 1);
    // Draw all gates first so the unitary assembly order cannot perturb the
    // stream consumption order.
    let gates: Vec<Vec<CMatrix>> = (0..layers)
        .map(|_| {
            (0..n)
                .map(|_| linalg::haar_unitary(2, stream).expect("d=2 is valid"))
                .collect()
        })
        .collect();
    let d = 1usize << n;
    let mut m = CMatrix::zeros(d, d);
    for col in 0..d {
        let mut sv = StateVector::basis(n, col);
        for layer in &gates {
            for (k, g) in layer.iter().enumerate() {
                sv.apply_single_qubit_gate(g, k);
            }
            for k in 0..n.saturating_sub(1) {
                sv.apply_cnot(k, k + 1);
            }
        }
        for (row, &amp) in sv.amps.iter().enumerate() {
            m.set(row, col, amp);
        }
    }
    m
}
