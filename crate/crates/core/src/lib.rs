//! Exact diagonalization toolkit for one-dimensional Bose-Hubbard chains with
//! nearest-neighbor and frustrating next-nearest-neighbor hopping.
//!
//! The crate covers the full pipeline from basis enumeration to observables:
//!
//! * [`fock`]: number-conserving occupation bases with combinatorial ranking.
//! * [`hamiltonian`]: sparse Hamiltonian assembly in CSR form.
//! * [`eigensolver`]: Lanczos ground-state solver plus a dense cross-check path.
//! * [`momentum`]: one-body density matrix, momentum distribution and its entropy.
//! * [`correlators`]: chiral and dimer order-parameter correlators.
//! * [`entanglement`]: Schmidt spectra, half-chain entropy, geometric multipartite
//!   entanglement over bipartitions.
//! * [`dimer`]: analytic perfect-dimer product state and its closed-form correlators.
//!
//! All public site indices are 1-based (site `1`..`M`); basis indices are 0-based.

pub mod correlators;
pub mod dimer;
pub mod eigensolver;
pub mod entanglement;
pub mod fock;
pub mod hamiltonian;
pub mod momentum;

mod error;
mod hops;

pub use error::{Error, Result};
