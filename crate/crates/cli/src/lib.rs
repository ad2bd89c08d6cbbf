//! Library side of the command line tool: file schemas, command
//! implementations, benchmark suites, and the SVG renderer. The binary in
//! `main.rs` is a thin argument parser over these.

pub mod bench;
pub mod commands;
pub mod error;
pub mod formats;
pub mod generate;
pub mod svg;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Json,
    Table,
}
