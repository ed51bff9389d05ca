//! Problem-file front end for the special-primes engine.

mod commands;
mod problem;

pub use commands::{run_command, Command, CommandError};
pub use problem::{parse_module, parse_problem, ProblemError, ProblemFile};
