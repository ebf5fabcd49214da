//! Plain-text edge lists, CSV tables and JSON documents.

mod csv;
mod edgelist;
mod number;

pub use self::csv::{read_csv, write_csv, Table};
pub use edgelist::{parse_edge_list, read_edge_list, render_edge_list, write_edge_list};
pub use number::{format_real, round_real};

use std::fs;
use std::path::Path;

use serde::Serialize;

use crate::error::{CliError, Result};

/// Pretty JSON with a trailing newline. Floats should already be rounded with
/// [`round_real`] so that files stay stable across platforms.
pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    write_text(path, &text)
}

pub(crate) fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| CliError::io(path, e))
}

pub(crate) fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}
