//! Verification harness on top of `mimo-select-core`: seeded random
//! ensembles for the capacity bounds, identity sweeps on random Gram forms,
//! and tightness probes on structured channels. The `mimo-select` binary is
//! a thin JSON front end over these runners.

pub mod identity;
pub mod seed;
pub mod tight;
pub mod verify;

use mimo_select_core::Error;

/// Version tag embedded in every JSON document the harness emits.
pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_OK: i32 = 0;
/// A bound or identity was violated.
pub const EXIT_VIOLATION: i32 = 1;
/// Invalid input: bad arguments, unreadable or malformed files, numerical
/// domain failures.
pub const EXIT_INVALID: i32 = 2;
/// A work cap was exceeded.
pub const EXIT_CAP: i32 = 3;

pub fn exit_code_for_error(e: &Error) -> i32 {
    match e {
        Error::EnumerationCap { .. } => EXIT_CAP,
        _ => EXIT_INVALID,
    }
}
