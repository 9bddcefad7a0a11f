//! Polynomial families generated by three-term recurrences and by
//! (az+b)-weighted combinations of Chebyshev polynomials: sequence
//! generation in floating or exact rational arithmetic, complex root
//! solving with certification, trigonometric root parameterizations,
//! non-hyperbolicity witness constructions, and parameter-region scans.

pub mod error;
pub mod poly;
pub mod polyseq;
pub mod rootfinder;
pub mod scalar;
pub mod scan;
pub mod thetasolver;
pub mod witness;

pub mod acceptance;

pub use error::{Error, Result};
pub use poly::{FloatPoly, Polynomial, RatPoly};
pub use polyseq::FamilyParams;
pub use scalar::Coeff;
