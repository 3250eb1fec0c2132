pub mod chern;
pub mod error;
pub mod expr;
pub mod fgl;
pub mod generators;
pub mod linalg;
pub mod numth;
pub mod partition;
pub mod poly;
pub mod regseq;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::{Field, Fp, Rational, Scalar};

/// Polynomial over the rationals in the `CP_i` basis.
pub type Poly = poly::GradedPoly<Rational>;
/// Univariate truncated series with rational polynomial coefficients.
pub type Series = poly::TruncSeries<Rational>;
