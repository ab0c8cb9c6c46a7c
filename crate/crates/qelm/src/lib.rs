//! Simulation laboratory for quantum extreme learning machines.
//!
//! A quantum extreme learning machine (QELM) feeds a classical input `x`
//! through a fixed encoding unitary, scrambles the result with an untrained
//! reservoir, measures a set of observables, and fits only a linear readout
//! on top of those expectation values. Everything quantum is frozen; training
//! is ridge regression.
//!
//! The crate exposes the full pipeline plus the analysis tools that explain
//! when such a machine works and when it cannot:
//!
//! - exact Fourier spectra of the model function and a DFT cross-check
//!   ([`fourier`]),
//! - the rank bound on expressivity and spectral richness of reservoirs
//!   ([`fourier::expressivity_report`], [`fourier::richness`]),
//! - concentration diagnostics for encodings, reservoirs, global
//!   measurements, and hardware noise ([`conc`]),
//! - classical surrogates that replay the model's frequency content
//!   ([`model`]).
//!
//! # Quick start
//!
//! Train a two-qubit machine on a band-limited target and inspect its
//! spectrum:
//!
//! ```
//! use qelm::encoding::{EncodingScheme, EncodingSpec};
//! use qelm::reservoir::{ReservoirKind, ReservoirSpec};
//! use qelm::model::QelmModel;
//!
//! let enc = EncodingSpec::new(EncodingScheme::Exponential, 2);
//! let res = ReservoirSpec::new(ReservoirKind::Haar { seed: 7 }, 2);
//! // 9 observables: enough to span all 9 frequencies of this encoding.
//! let mut model = QelmModel::new(enc, res, 9).unwrap();
//!
//! let xs: Vec<f64> = (0..48).map(|t| t as f64 * 0.13).collect();
//! let data: Vec<(f64, f64)> = xs.iter().map(|&x| (x, x.sin())).collect();
//! model.train(&data, 1e-10).unwrap();
//!
//! let err = (model.predict(0.35) - 0.35f64.sin()).abs();
//! assert!(err < 1e-6, "sin is inside the model's frequency span");
//! ```
//!
//! All randomness flows from explicit seeds through [`rng::SeedStream`];
//! every experiment in the CLI is reproducible byte-for-byte.

#![warn(missing_docs)]

pub mod conc;
pub mod config;
pub mod encoding;
pub mod error;
pub mod fourier;
pub mod linalg;
pub mod model;
pub mod pauli;
pub mod reservoir;
pub mod rng;
pub mod runner;
pub mod state;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
