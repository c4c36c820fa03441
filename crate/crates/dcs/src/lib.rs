//! Text formats, benchmark harness and command-line front end for
//! [`dcs_core`].

pub mod bench;
pub mod cli;
pub mod format;

pub use format::{
    parse_outcome, parse_system, parse_timing, serialize_outcome, serialize_record,
    serialize_system, serialize_timing, OutcomeRecord, ParseDiagnostic, ParsedSystem, Severity,
};
