//! Batch front end for `semimodel-core`: parses session files, runs one
//! pipeline command, and emits a deterministic report that is itself a
//! valid session (results as blocks, verdicts as `#` comments).

mod commands;
mod report;
pub mod session;

pub use commands::{run_command, run_on_text, Bounds, Command, Outcome, SessionConfig};

/// Process exit status for an error: 1 for a refused certificate (such as
/// non-involutive input), 2 for unusable input.
pub fn exit_code(e: &semimodel_core::Error) -> i32 {
    match e {
        semimodel_core::Error::Invalid(_) | semimodel_core::Error::Bound(_) => 1,
        _ => 2,
    }
}
