//! Foliations on ℙⁿ given by twisted forms on the affine cone: bookkeeping,
//! constructors, first-integral solvers and the degree ≤ 1 classification.

mod classify;
pub(crate) mod construct;
mod solve;
mod spec;

pub use classify::{classify_low_degree, Case1, Case2, Classification};
pub use construct::{deformation_limit_check, linear_pullback_check, make_linear_pullback, make_log_family, DeformationReport};
pub use solve::{
    closed_one_form_check, essential_variables, invariante_theta, invariante_theta_cleared, map_component_solve,
    tangent_form_solve,
};
pub use spec::{degree_of, singular_divisorial_part, DegreeRoute, FoliationSpec};

use crate::extalg::ExtError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FolError {
    #[error("form is not annihilated by the radial field")]
    NotRadiallyAnnihilated,
    #[error("coefficients are not homogeneous")]
    NotHomogeneous,
    #[error("form is not integrable")]
    NotIntegrable,
    #[error("coefficients share a common factor")]
    GcdNotOne,
    #[error("random linear embedding was degenerate")]
    DegenerateEmbedding,
    #[error("residues violate Σ λᵢ dᵢ = 0")]
    ResidueConstraintViolated,
    #[error("input polynomials must be nonzero and homogeneous")]
    InhomogeneousInput,
    #[error("projection matrix is rank deficient")]
    RankDeficientProjection,
    #[error("denominator is zero")]
    ZeroDenominator,
    #[error("foliation degree exceeds 1")]
    NotLowDegree,
    #[error("classification incomplete: {0}")]
    ClassificationIncomplete(String),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("zero form")]
    ZeroForm,
    #[error(transparent)]
    Ext(#[from] ExtError),
}
