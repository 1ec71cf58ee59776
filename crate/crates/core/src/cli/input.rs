//! Reading JSON inputs with byte offsets for syntax errors and JSON
//! pointers for schema errors.

use serde::de::DeserializeOwned;
use serde_json::error::Category;

use super::CliError;

/// Byte offset of a 1-based (line, column) position.
fn byte_offset(text: &str, line: usize, column: usize) -> usize {
    let start: usize = text
        .split_inclusive('\n')
        .take(line.saturating_sub(1))
        .map(str::len)
        .sum();
    start + column.saturating_sub(1)
}

fn pointer(path: &serde_path_to_error::Path) -> String {
    use serde_path_to_error::Segment;
    let mut out = String::new();
    for seg in path.iter() {
        out.push('/');
        match seg {
            Segment::Seq { index } => out.push_str(&index.to_string()),
            Segment::Map { key } => out.push_str(&key.replace('~', "~0").replace('/', "~1")),
            Segment::Enum { variant } => out.push_str(variant),
            Segment::Unknown => out.push('?'),
        }
    }
    out
}

fn malformed(source: &str, text: &str, e: &serde_json::Error) -> CliError {
    CliError::Input(format!(
        "{source}: malformed JSON at byte {}: {e}",
        byte_offset(text, e.line(), e.column())
    ))
}

pub fn parse<T: DeserializeOwned>(source: &str, text: &str) -> Result<T, CliError> {
    let mut de = serde_json::Deserializer::from_str(text);
    let value: T = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let path = pointer(e.path());
        let inner = e.into_inner();
        match inner.classify() {
            Category::Data => {
                let path = if path.is_empty() {
                    "/".to_string()
                } else {
                    path
                };
                CliError::Input(format!("{source}: schema violation at {path}: {inner}"))
            }
            _ => malformed(source, text, &inner),
        }
    })?;
    de.end().map_err(|e| malformed(source, text, &e))?;
    Ok(value)
}

pub fn read<T: DeserializeOwned>(path: &str) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {path}: {e}")))?;
    parse(path, &text)
}
