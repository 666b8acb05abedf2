//! Exact computer algebra for the line geometry of projective 3-space.
//!
//! The crate works on the Klein quadric model of the Grassmannian of lines:
//! sparse polynomials in the six Plücker coordinates with exact rational
//! coefficients, the Cayley bracket and Plücker Laplacian, harmonic
//! decomposition with canonical representatives, a Gröbner-basis engine for
//! effective ideal membership, and construction/classification of Chow
//! forms of space curves.

pub mod chow;
pub mod error;
pub mod groebner;
pub mod harmonic;
pub mod klein;
pub mod polyring;

pub use error::{Error, Result};
pub use klein::{
    bracket, euler_check, gradient, hessian, hessian_apply, klein_quadric, laplacian, pairing,
    polarity, product_rule_check, HessianForm, PlueckerVector,
};
pub use polyring::parse::parse_poly;
pub use polyring::{int, rat, MonomialOrder, MultiPoly, Scalar, VarSet};
