//! Univariate real roots: Sturm counting, root isolation and resultants.

mod resultant;
mod sturm;
mod unipoly;

pub use resultant::{resultant, resultant_coeffs, resultant_in, Domain};
pub use sturm::{cauchy_bound, isolate_roots, refine, sturm_count, sturm_sequence, IntervalReport, RootInterval};
pub use unipoly::UniPoly;

/// The degree-16 polynomial whose real roots give the degree-9 weak points,
/// as shipped in `data/p16.poly`.
pub const P16_TEXT: &str = include_str!("../../data/p16.poly");

/// SHA-256 of `data/p16.poly`.
pub const P16_SHA256: &str = "9d87724f5c7beaecead20af6046f57e91cebdcbf806a7de69a3a06b75fbf5e27";

pub fn p16() -> UniPoly {
    UniPoly::parse(P16_TEXT).expect("shipped data parses")
}
