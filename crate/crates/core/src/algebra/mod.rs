//! Exact symbolic algebra of the hybrid quantum-classical generators.
//!
//! The classical apparatus is described by a commuting pair `(a, b)` with
//! `[b, a]_PB = 1` together with the Liouvillian generators
//! `at = i[a, .]_PB` and `bt = i[b, .]_PB`. The quantum sector is either an
//! oscillator `(q, p)` or a spin-1/2 `(s1, s2, s3)`. All arithmetic is over
//! exact complex rationals, so identities are decided by equality.

mod classical;
mod error;
mod generator;
mod poly;
mod scalar;
mod structure;
mod text;

pub use classical::{poisson_bracket, tilde_lift, tilde_lift_operator, ClassicalPoly};
pub use error::AlgebraError;
pub use generator::{GeneratorId, Sector};
pub use poly::{is_observable, Monomial, OperatorPoly, Word};
pub use scalar::{
    imag_unit, int, parse_rational, rational, rational_from_f64, rational_to_f64, real, scalar,
    scalar_one, to_c64, Rational, Scalar,
};
pub use structure::{
    adjoint, check_jacobi, commutator, generator_triples, heisenberg_rhs, normal_order,
    printed_relations, relation_failures, Algebra, PrintedRelation, StructureTable,
};

/// Shorthand for the single-generator polynomial.
pub fn gen(g: GeneratorId) -> OperatorPoly {
    OperatorPoly::generator(g)
}
