//! Concrete realizations of the hybrid algebra.
//!
//! The apparatus lives on a periodic `(a, b)` grid where `a`, `b` act by
//! multiplication and the tilde generators by Fourier spectral derivatives.
//! The quantum factor is a truncated Fock space, a `q` grid (`omega = 0`)
//! or a spin-1/2. Operators are stored as sums of axis-local actions and
//! can be materialized densely for small instances.

mod error;
mod grid;
mod operator;
mod quantum;
mod state;

pub use error::RepresentationError;
pub use grid::{GridSpec, SpectralAxis};
pub use operator::{
    assemble, build_classical_rep, ClassicalGrid, ExpectationCache, MatrixOperator, Representation, DENSE_LIMIT,
};
pub use quantum::{build_quantum_fock, build_spin, FockSpec, QuantumSector};
pub use state::{expectation, gaussian_state, GaussianSpec, HybridState, QuantumInit};

pub(crate) use grid::filter_axis;
pub(crate) use operator::{apply_quantum, tilde_symbol_sign};
