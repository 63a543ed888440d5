pub mod dynamics;
pub mod error;
pub mod estimates;
pub mod gauge;
pub mod io;
pub mod norms;
pub mod spectral;

pub use error::{Error, Result};
