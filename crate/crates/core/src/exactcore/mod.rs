//! Exact arithmetic: ℚ and ℚ(i) scalars, sparse polynomials, gcd, resultants
//! and fraction-free linear algebra.

pub mod gcd;
pub mod matrix;
mod modrank;
pub mod poly;
pub mod resultant;
pub mod scalar;

pub use gcd::{content_in, poly_gcd, poly_gcd_many, squarefree_part};
pub use matrix::{rank_kernel, row_space, rref, Matrix, PolyMatrix, Rref};
pub use poly::{binomial, default_names, monomials_of_degree, Exps, Mono, MultiPoly};
pub use resultant::{discriminant, resultant_univ};
pub use scalar::{Field, ParseScalarError, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,
}
