//! Library half of the `dicke` binary: argument types, serialized report
//! documents and the command runners.

pub mod args;
pub mod commands;
pub mod report;

pub use args::Cli;
pub use commands::{run, Outcome};
