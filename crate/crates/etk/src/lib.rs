//! File formats, report rendering and the command-line front end for
//! `etk-core`.

pub mod cli;
pub mod json;
pub mod report;
