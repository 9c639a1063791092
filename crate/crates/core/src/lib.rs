//! Bound states of a particle whose mass follows `m(x) = m (1 + gamma x)^-2`,
//! the profile produced by a position-dependent displacement operator, in the
//! potential `V(x) = A/x^2 - B/x`.
//!
//! The crate is organised bottom-up:
//!
//! - [`model`]: units, potential, mass profile, deformed derivative, presets.
//! - [`specfun`]: Gamma/Beta/Pochhammer, Gauss hypergeometric `2F1`, quadrature.
//! - [`spectrum`]: closed-form energies, exponent and hypergeometric parameters,
//!   branch bookkeeping, limit formulas.
//! - [`wavefunction`]: `phi(z) = N z^p (z-1)^q 2F1(-n, b; c; z)`, numeric
//!   normalization and the analytic normalization chain with pole reporting.
//! - [`verifier`]: finite-difference eigenvalues of the deformed Hamiltonian by
//!   Sturm-sequence bisection, independent of every closed form.
//! - [`cli`]: tables, sweeps and CSV output behind the `pdm-spectra` binary.

// `!(x > 0.0)` is used deliberately so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod model;
pub mod specfun;
pub mod spectrum;
pub mod verifier;
pub mod wavefunction;

pub use error::{Error, Result};
pub use model::{Deformation, MoleculePreset, PotentialParams, UnitSystem};
pub use spectrum::{energy_analytic, SpectrumEntry};
pub use wavefunction::WavefunctionSpec;
