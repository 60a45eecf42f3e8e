//! Command-line front end for `vanishing-core`: germ files, reports and the
//! reproducibility suite.

pub mod commands;
pub mod germ;
pub mod report;
pub mod suite;
