//! Concrete maps: orbit counting, staircase perturbations and half-return maps.

mod halfreturn;
mod maps;
mod orbits;
mod staircase;

pub use halfreturn::{geometric_grid, HalfReturnFit, HalfReturnProbe};
pub use maps::{two_step_sign, ConcreteMap};
pub use orbits::{count_2periodic, orientation_preserving_null, revalidate, NullReport, Orbit, OrbitReport, ScanOptions, Window};
pub use staircase::{staircase, StaircaseOptions, StaircaseReport, StaircaseStep};
