pub mod atomic;
pub mod cli;
pub mod cylindrical;
pub mod error;
pub mod kinematics;
pub mod planewave;
pub mod specfun;
pub mod units;
pub mod validation;
pub mod vortex;

pub use error::{Error, Result};
