pub mod budget;
pub mod certify;
pub mod cli;
pub mod dynamics;
pub mod error;
pub mod ideals;
pub mod linalg;
pub mod polyalg;
pub mod realroots;
pub mod stability;

pub use budget::Budget;
pub use error::{Error, Result};
