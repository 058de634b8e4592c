#![allow(clippy::needless_range_loop)]

pub mod cli;
pub mod error;
pub mod gram;
pub mod linalg;
pub mod polarize;
pub mod polycore;
pub mod reduce;
pub mod sos;
pub mod synth;

pub use error::{Error, Result};
