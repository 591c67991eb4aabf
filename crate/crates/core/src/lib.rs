//! Exact computation with codimension-one (and higher) foliations on
//! projective space and on the smooth 3-dimensional quadric.

pub mod exactcore;
pub mod extalg;
pub mod foliation;
pub mod liealg;
pub mod moduli;
pub mod pencil;
pub mod quadvariety;
pub mod rng;

pub use exactcore::{Matrix, MultiPoly, Scalar};
