//! File formats, Monte Carlo harnesses and the `specphase` command-line tool
//! built on [`specphase_core`].

pub mod cli;
pub mod experiment;
pub mod io;
pub mod sweep;

pub use specphase_core as core;
