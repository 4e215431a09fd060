//! File formats and the `dofnet` command line on top of `dofnet-core`.

pub mod cli;
pub mod format;
pub mod render;

pub use dofnet_core as core;
