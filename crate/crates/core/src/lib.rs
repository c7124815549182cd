//! # imkit
//!
//! Numerical toolkit for the resource theory of imaginarity.
//!
//! A state is *real* when its density matrix has only real entries in the
//! reference basis. This crate provides:
//!
//! - [`linalg`]: dense complex-matrix kernels (Hermitian eigensolver, PSD square
//!   root, trace and Hilbert-Schmidt norms, principal-minor sums).
//! - [`states`]: validated density matrices, pure states, Bloch vectors,
//!   orthonormal bases (qubit and qutrit MUB catalogs), random ensembles and
//!   real operations.
//! - [`measures`]: imaginarity measures built on the real part state
//!   `Re(rho) = (rho + rho*) / 2`, fidelity-based and entropic, with qubit fast
//!   paths.
//! - [`relations`]: bound and complementarity checks returning [`BoundReport`]s,
//!   brute-force oracles and seeded ensemble audits.

#![forbid(unsafe_code)]

pub mod error;
pub mod linalg;
pub mod measures;
pub mod relations;
pub mod states;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, EigenDecomposition};
pub use measures::MeasurePanel;
pub use relations::{AuditConfig, BoundReport, CheckKind, EnsembleAudit, Relation, Tolerances};
pub use states::{
    BlochVector, DensityMatrix, OrthonormalBasis, PureState, RealOperation, RealProjectorSet,
};

/// Complex scalar used throughout the crate.
pub type C64 = num_complex::Complex64;
