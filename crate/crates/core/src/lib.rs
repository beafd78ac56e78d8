pub mod base_curve;
pub mod cli;
pub mod constructions;
pub mod decimal;
pub mod error;
pub mod etale;
pub mod gf2;
pub mod parity;
pub mod quadratic;
pub mod ramified;
pub mod report;
pub mod verify;

pub use error::{Error, Result};
pub use parity::Parity;
