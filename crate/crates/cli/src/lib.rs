//! Library side of the torsam command line tool.

pub mod fuzz;
pub mod report;
pub mod scenarios;
pub mod textio;
