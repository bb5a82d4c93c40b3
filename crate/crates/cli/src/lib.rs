//! Front end of the `etaprove` command: the identity language and the
//! subcommands built on `eta-core`.

pub mod commands;
pub mod lower;
pub mod syntax;

pub use commands::{Outcome, ProveOptions, EXIT_INPUT, EXIT_NOT_APPLICABLE, EXIT_PROVED, EXIT_REFUTED};
pub use lower::{parse_combo, parse_identity, parse_product, Identity, InputError, LowerError};
pub use syntax::{parse_expr, parse_program, Pos, SyntaxError};
