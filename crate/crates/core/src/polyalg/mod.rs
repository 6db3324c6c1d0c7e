//! Exact arithmetic: rationals, multivariate polynomials, truncated series and
//! quadratic field elements.

pub mod monomial;
pub mod multipoly;
pub mod quad;
pub mod rat;
pub mod series;
pub mod text;

pub use monomial::{grevlex_cmp, monomials_of_weight, Monomial, MonomialOrder};
pub use multipoly::{MultiPoly, Ring};
pub use quad::{parse_point, QuadExt};
pub use rat::Rat;
pub use series::TruncSeries;
pub use text::{format_poly, parse_poly};
