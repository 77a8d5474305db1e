pub mod classic;
pub mod cli;
pub mod error;
pub mod infinitesimal;
pub mod instrument;
pub mod matrix;
pub mod monoid;
pub mod random;
pub mod rational;
pub mod scalars;
pub mod spectral;
pub mod unpack;

mod dense;

pub use error::{Error, Result};
