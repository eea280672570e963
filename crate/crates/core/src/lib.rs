//! Consistent measurement of quantum observables with a classical pointer.
//!
//! The classical apparatus is treated in the Koopman-von Neumann picture, as
//! a Hilbert-space system whose Liouvillian generators do not commute with
//! its coordinates. This crate provides
//!
//! * [`algebra`]: exact normal-ordered algebra of the hybrid generators,
//!   Heisenberg equations of motion and the observability test;
//! * [`representation`]: grid, Fock and spin realizations of that algebra;
//! * [`propagator`]: Strang split-operator evolution and a dense
//!   matrix-exponential oracle;
//! * [`scenarios`]: the free apparatus and the momentum, energy and spin
//!   meters, with pointer readout and EOM reports;
//! * [`cli`]: configuration files and the `kvn` command-line front end.

pub mod algebra;
pub mod cli;
pub mod propagator;
pub mod representation;
pub mod scenarios;
