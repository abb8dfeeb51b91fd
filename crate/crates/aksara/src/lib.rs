//! File formats and command-line interface for the `aksara-core` pipeline.
//!
//! The core crate is `no_std`; everything that touches the filesystem,
//! environment or process lives here.

pub mod bpe_file;
pub mod cli;
pub mod emit;
pub mod error;
pub mod formats;
pub mod tables;

pub use error::{Error, Result};
