//! Text formats, reports and the command-line front end for
//! [`regioncalc_core`].

pub mod cli;
pub mod format;
pub mod report;
