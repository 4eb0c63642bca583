//! Exact coefficient arithmetic: bivariate polynomials in the markers `t` and
//! `q`, and truncated power series in `x` whose coefficients are such
//! polynomials.

mod fixed_point;
mod poly2;
mod series;

pub use fixed_point::fixed_point_solve;
pub use poly2::{Marker, Poly2};
pub use series::Series;

/// Arbitrary-precision rational number; always kept in lowest terms with a
/// positive denominator.
pub type ExactRational = num_rational::BigRational;

pub(crate) fn rat(n: i64) -> ExactRational {
    ExactRational::from_integer(n.into())
}
