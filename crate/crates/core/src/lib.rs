//! Exact verification engine for Yangian and degenerate affine Hecke actions.

pub mod cli;
pub mod envelope;
pub mod error;
pub mod exact;
pub mod hecke;
pub mod modules;
pub mod olshanski;
pub mod perm;
pub mod report;
pub mod smash;
pub mod weyl;
pub mod yangian;
pub mod zhelobenko;

pub use error::{Error, Result};
