pub mod classify;
pub mod enumerate;
pub mod error;
pub mod group;
pub mod isometry;
pub mod lattice;
pub mod report;

pub use error::{Error, Result};
