//! Library surface of the command-line front end, split out so integration
//! tests can reach the embedded reference table and row logic.

pub mod commands;
pub mod expected;
pub mod report;
