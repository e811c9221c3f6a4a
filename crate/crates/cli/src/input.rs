use std::fs;
use std::io::Read;
use std::path::Path;

use quasigroup::table::TableJson;
use quasigroup::{parse_table, Error, QuasigroupTable};

use crate::report::InputDigest;

pub enum InputError {
    Io(String),
    Table(Error),
}

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            InputError::Io(msg) => f.write_str(msg),
            InputError::Table(e) => write!(f, "{e}"),
        }
    }
}

/// Reads a table from a path (`-` for stdin), in the text format or the
/// JSON mirror, and feeds the raw bytes to `digest`.
pub fn read_table(path: &Path, digest: &mut InputDigest) -> Result<QuasigroupTable, InputError> {
    let text = if path.as_os_str() == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| InputError::Io(format!("stdin: {e}")))?;
        buf
    } else {
        fs::read_to_string(path).map_err(|e| InputError::Io(format!("{}: {e}", path.display())))?
    };
    digest.add(text.as_bytes());
    parse_any(&text).map_err(InputError::Table)
}

fn parse_any(text: &str) -> Result<QuasigroupTable, Error> {
    if text.trim_start().starts_with('{') {
        let raw: TableJson =
            serde_json::from_str(text).map_err(|e| Error::MalformedInput(e.to_string()))?;
        QuasigroupTable::try_from(raw)
    } else {
        parse_table(text)
    }
}
