pub mod body;
pub mod cli;
pub mod error;
pub mod exact;
pub mod illum;
pub mod scenarios;
pub mod sets;

pub use error::{Error, Result};
