//! Maximum number of lines of a d-dimensional n-grid that spell a word.

pub mod bounds;
pub mod codec;
pub mod constructions;
pub mod error;
pub mod grid;
pub mod lines;
pub mod occurrence;
pub mod solver;
pub mod symmetry;
pub mod unfold;
pub mod verify;
pub mod word;

pub use error::{Error, Result};
