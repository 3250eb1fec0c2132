//! Exact sparse polynomials in the weighted generators `CP_i` and truncated
//! power series over them.

mod graded;
mod monomial;
mod series;

pub use graded::GradedPoly;
pub use monomial::{monomials_of_weight, Monomial};
pub use series::{MvSeries, TruncSeries};

/// Serializes any value through its `Display` form.
pub fn ser_display<T: std::fmt::Display, S: serde::Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}
