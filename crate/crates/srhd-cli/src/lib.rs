//! Batch driver for the `srhd` solver: configuration parsing, CSV outputs
//! and the `run`, `sweep`, `compare` and `reference` commands.

pub mod commands;
pub mod config;
pub mod output;

use srhd::Error;

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILURE: u8 = 1;
pub const EXIT_CONFIG: u8 = 2;
pub const EXIT_RECOVERY: u8 = 3;
pub const EXIT_RELAXATION: u8 = 4;

/// Process exit status for an error.
pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Config(_) => EXIT_CONFIG,
        Error::Recovery { .. } => EXIT_RECOVERY,
        Error::Relaxation { .. } => EXIT_RELAXATION,
        Error::Domain(_) | Error::Invariant(_) | Error::Io(_) => EXIT_FAILURE,
    }
}
