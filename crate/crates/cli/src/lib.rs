//! Library side of the `schemelink` command-line tool.

pub mod commands;
pub mod input;
pub mod output;
pub mod selftest;

use schemelink_core::Error;

/// Exit status for a failed command: 2 for bad input, 3 for an unmet
/// precondition, 4 when a randomized search ran out of attempts.
pub fn exit_code(err: &anyhow::Error) -> i32 {
    let core = err.chain().find_map(|e| e.downcast_ref::<Error>());
    match core {
        Some(Error::RetryBudgetExhausted { .. }) => 4,
        Some(
            Error::NotArithmeticallyGorenstein
            | Error::NotLocallyGorenstein
            | Error::NotSubscheme
            | Error::RawMode
            | Error::MissingContext(_)
            | Error::NotSocleElement,
        ) => 3,
        _ => 2,
    }
}
