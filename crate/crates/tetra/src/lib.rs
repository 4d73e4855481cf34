//! IO, benchmark harness and reporting on top of [`tetra_core`].
//!
//! * [`pgm`] / [`io`]: binary PGM (bit-exact) and PNG input.
//! * [`bench`]: the corpus protocol (downsample, upscale, time, score).
//! * [`report`]: CSV/JSON bundles, SVG bar charts and ordering summaries.
//! * [`cli`]: the `tetra` command line.

pub mod bench;
pub mod chart;
pub mod checks;
pub mod cli;
mod error;
pub mod io;
pub mod pgm;
pub mod report;

pub use crate::error::{Error, Result};
pub use tetra_core;
