//! Pauli-string observables.
//!
//! A Pauli string acts on computational basis states as a bit-flip
//! permutation times a phase, so expectation values and products need O(d)
//! work instead of dense matrix algebra. Qubit 0 is the leftmost letter and
//! the most significant bit of a basis index.

use crate::linalg::{CMatrix, Complex64, C_ZERO};
use crate::error::Error;
use crate::rng::SeedStream;
use crate::Result;
use std::fmt;
use std::str::FromStr;

/// One tensor factor of a Pauli string.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Letter {
    /// Identity.
    I,
    /// Pauli X.
    X,
    /// Pauli Y.
    Y,
    /// Pauli Z.
    Z,
}

/// Tensor product of single-qubit Pauli operators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PauliString {
    letters: Vec<Letter>,
    /// Basis-index bits flipped by the string (X and Y letters).
    xmask: usize,
    /// Bits contributing a (-1)^bit sign (Y and Z letters).
    signmask: usize,
    /// Number of Y letters; contributes a global factor i^{n_Y}.
    n_y: usize,
}

impl PauliString {
    /// Builds a string from per-qubit letters.
    pub fn new(letters: Vec<Letter>) -> Self {
        assert!(!letters.is_empty(), "Pauli string needs at least one qubit");
        let n = letters.len();
        let mut xmask = 0usize;
        let mut signmask = 0usize;
        let mut n_y = 0usize;
        for (k, &l) in letters.iter().enumerate() {
            let bit = 1usize << (n - 1 - k);
            match l {
                Letter::I => {}
                Letter::X => xmask |= bit,
                Letter::Y => {
                    xmask |= bit;
                    signmask |= bit;
                    n_y += 1;
                }
                Letter::Z => signmask |= bit,
            }
        }
        PauliString {
            letters,
            xmask,
            signmask,
            n_y,
        }
    }

    /// All-identity string on `n` qubits.
    pub fn identity(n: usize) -> Self {
        PauliString::new(vec![Letter::I; n])
    }

    /// Decodes index `code` (base-4 digits I,X,Y,Z; qubit 0 most significant)
    /// into a string on `n` qubits. Enumerates all 4^n strings as
    /// `0..4^n`.
    pub fn from_code(code: usize, n: usize) -> Self {
        let mut letters = vec![Letter::I; n];
        let mut rem = code;
        for k in (0..n).rev() {
            letters[k] = match rem % 4 {
                0 => Letter::I,
                1 => Letter::X,
                2 => Letter::Y,
                _ => Letter::Z,
            };
            rem /= 4;
        }
        assert_eq!(rem, 0, "code out of range for {n} qubits");
        PauliString::new(letters)
    }

    /// Uniformly random non-identity string on `n` qubits.
    pub fn random_non_identity(n: usize, stream: &mut SeedStream) -> Self {
        let code = 1 + stream.below(4usize.pow(n as u32) - 1);
        PauliString::from_code(code, n)
    }

    /// Number of qubits.
    pub fn n_qubits(&self) -> usize {
        self.letters.len()
    }

    /// Per-qubit letters, leftmost = qubit 0.
    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    /// True when every letter is the identity.
    pub fn is_identity(&self) -> bool {
        self.letters.iter().all(|&l| l == Letter::I)
    }

    /// Number of non-identity letters.
    pub fn weight(&self) -> usize {
        self.letters.iter().filter(|&&l| l != Letter::I).count()
    }

    /// Extends the string with identity letters on `extra` more qubits.
    pub fn embed(&self, extra: usize) -> PauliString {
        let mut letters = self.letters.clone();
        letters.extend(std::iter::repeat(Letter::I).take(extra));
        PauliString::new(letters)
    }

    /// Action on a basis state: `P|i> = phase * |j>`.
    #[inline]
    pub fn action(&self, i: usize) -> (usize, Complex64) {
        let j = i ^ self.xmask;
        let sign = if ((i & self.signmask).count_ones() & 1) == 1 {
            -1.0
        } else {
            1.0
        };
        let phase = match self.n_y % 4 {
            0 => Complex64::new(sign, 0.0),
            1 => Complex64::new(0.0, sign),
            2 => Complex64::new(-sign, 0.0),
            _ => Complex64::new(0.0, -sign),
        };
        (j, phase)
    }

    /// Dense matrix realization, dimension 2^n.
    pub fn matrix(&self) -> CMatrix {
        let d = 1usize << self.n_qubits();
        let mut m = CMatrix::zeros(d, d);
        for col in 0..d {
            let (row, phase) = self.action(col);
            m.set(row, col, phase);
        }
        m
    }

    /// Product `P * M` in O(d * cols) using the permutation structure.
    pub fn apply_left(&self, m: &CMatrix) -> CMatrix {
        let d = 1usize << self.n_qubits();
        assert_eq!(m.rows, d, "apply_left dimension mismatch");
        let mut out = CMatrix::zeros(m.rows, m.cols);
        for i in 0..d {
            // Row i of P*M is phase(src) * row src of M, where P|src> hits |i>.
            let src = i ^ self.xmask;
            let (_, phase) = self.action(src);
            let src_row = &m.data[src * m.cols..(src + 1) * m.cols];
            let dst_row = &mut out.data[i * m.cols..(i + 1) * m.cols];
            for (d_, &s) in dst_row.iter_mut().zip(src_row.iter()) {
                *d_ = phase * s;
            }
        }
        out
    }

    /// Action on a statevector: `P |psi>` in O(d).
    pub fn apply_vec(&self, psi: &[Complex64]) -> Vec<Complex64> {
        let d = 1usize << self.n_qubits();
        assert_eq!(psi.len(), d, "apply_vec dimension mismatch");
        let mut out = vec![C_ZERO; d];
        for (i, &amp) in psi.iter().enumerate() {
            let (j, phase) = self.action(i);
            out[j] = phase * amp;
        }
        out
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            let c = match l {
                Letter::I => 'I',
                Letter::X => 'X',
                Letter::Y => 'Y',
                Letter::Z => 'Z',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::PauliParse {
                input: s.into(),
                reason: "empty string".into(),
            });
        }
        let mut letters = Vec::with_capacity(s.len());
        for ch in s.chars() {
            letters.push(match ch {
                'I' | 'i' => Letter::I,
                'X' | 'x' => Letter::X,
                'Y' | 'y' => Letter::Y,
                'Z' | 'z' => Letter::Z,
                other => {
                    return Err(Error::PauliParse {
                        input: s.into(),
                        reason: format!("unexpected character {other:?}"),
                    })
                }
            });
        }
        Ok(PauliString::new(letters))
    }
}
