//! Characters and Kostant homology of oscillator modules via Howe duality,
//! in exact arithmetic with degree truncation.

pub mod cli;
pub mod error;
pub mod finite_chars;
pub mod howe;
pub mod partition;
pub mod series;
pub mod symfunc;
pub mod weights;
pub mod weyl;

pub use error::{Error, Result};
