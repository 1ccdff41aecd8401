pub mod certificate;
pub mod cli;
pub mod covers;
pub mod cube;
pub mod edges;
pub mod error;
pub mod grid;
mod iso;
pub mod isometry;
pub mod modpart;
pub mod solver;

pub use error::{Error, Result};
