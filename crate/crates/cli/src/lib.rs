//! Command-line front end for zetaforge.

pub mod commands;
pub mod error;
pub mod input;
pub mod report;
