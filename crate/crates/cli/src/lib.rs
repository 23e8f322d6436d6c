//! Instance files and the `decide` / `witness` / `class` / `verify` commands
//! behind the `wreathcc` binary.

pub mod commands;
pub mod error;
pub mod instance;

pub use commands::{cmd_class, cmd_decide, cmd_verify, cmd_witness, Outcome, Record};
pub use error::CliError;
pub use instance::{parse_instance, Budgets, GroupDesc, InstanceSpec, OmegaDesc};

/// Reads and parses an instance file.
pub fn load_instance(path: &std::path::Path) -> Result<InstanceSpec, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        reason: e.to_string(),
    })?;
    parse_instance(&text)
}
