//! Library side of the `prequant` command-line tool: group-name parsing and
//! the subcommand implementations, kept separate from argument handling so
//! they can be tested without spawning processes.

pub mod commands;
pub mod group_spec;

pub use commands::{Format, Outcome};
pub use group_spec::{GroupSpec, SpecError};
