//! Exact verification engine for δ-polynomials (h*-polynomials) of lattice
//! polytopes.
//!
//! The δ-polynomial of a lattice polytope is computed along three independent
//! routes and cross-checked coefficient by coefficient:
//!
//! 1. **Counting**: exact lattice-point counts of the dilates, pushed through
//!    the binomial transform of the Ehrhart series numerator ([`ehrhart`]).
//! 2. **Box decomposition**: a regular lattice triangulation's box points,
//!    graded by age and paired with link h-vectors ([`boxdecomp`]).
//! 3. **Graded ring**: Hilbert function of the deformed group ring of the
//!    triangulation's cone fan, modulo its degree-one linear relations
//!    ([`orbring`]).
//!
//! On top of the three routes, [`monotone`] verifies coefficientwise
//! monotonicity of δ for nested pairs `Q ⊆ P`, together with the per-face
//! link h-vector comparisons, the monomial restriction homomorphism, and
//! degreewise surjectivity of the induced map on graded quotients.
//!
//! All arithmetic is exact; there is no floating point in the crate.

pub mod boxdecomp;
pub mod ehrhart;
pub mod error;
pub mod exact;
pub mod monotone;
pub mod orbring;
mod par;
pub mod poly;
pub mod polytope;
#[cfg(test)]
pub(crate) mod testfix;
pub mod triangulation;

pub use error::{Error, Result};
pub use exact::{Int, IntVector, Rat};
pub use poly::IntPoly;
pub use polytope::LatticePolytope;
pub use triangulation::LatticeTriangulation;
