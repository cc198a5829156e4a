//! Simulator for logical qubits encoded in the time–frequency phase space of
//! comb-referenced single photons.
//!
//! The crate models the full desk-scale stack of such an encoding:
//!
//! - [`algebra`] — the dimensionless (τ, Ω) phase space, Weyl displacement
//!   composition, the √π stabilizer/logical lattice, and conversion to
//!   physical delays and frequency shifts via comb parameters;
//! - [`grid`] — finite-energy comb-of-Gaussians grid states, their
//!   wavefunctions, exact Wigner functions and marginals, plus the driven
//!   supermode weight normalization;
//! - [`noise`] — the anisotropic Gaussian displacement channel,
//!   bit-reproducible seeded sampling, and the mapping from laboratory noise
//!   budgets (timing jitter, spectral noise) to dimensionless widths;
//! - [`decoder`] — nearest-lattice decoding, the closed-form half-cell
//!   failure probability and its Monte Carlo estimator, and failure maps
//!   over channel widths;
//! - [`correction`] — syndrome extraction/recovery cycles with Pauli-frame
//!   tracking, against the uncorrected accumulation baseline;
//! - [`feasibility`] — physical lattice scales, resolution/bandwidth margin
//!   checks, actuator response models, and multiplexing plans.
//!
//! Every Monte Carlo entry point takes an explicit seed and derives one
//! random stream per trial (or per map cell), so results are bit-identical
//! across runs, platforms, and thread counts.

pub mod algebra;
pub mod correction;
pub mod decoder;
pub mod error;
pub mod feasibility;
pub mod grid;
pub mod noise;
pub mod special;

pub use error::{Error, Result};
