//! File formats, benchmark harness and command-line front end for
//! [`partcount_core`].

pub mod backend;
pub mod bench;
pub mod circuit_text;
pub mod cli;
pub mod csv_out;
pub mod dump;
pub mod io;

pub use partcount_core as core;
