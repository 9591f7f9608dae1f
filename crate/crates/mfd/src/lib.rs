//! File formats, structured verdicts and the command layer of the `mfd`
//! tool, on top of [`mfd_core`].

#![allow(clippy::result_large_err)]

pub mod commands;
pub mod decide;
pub mod files;
pub mod verdict;

pub use commands::{Options, Output};
pub use decide::decide_concurrent;
