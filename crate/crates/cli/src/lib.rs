//! Library half of the `pentagram` command: input parsing, reports, SVG
//! output and the command implementations.

pub mod commands;
pub mod input;
pub mod report;
pub mod svg;
