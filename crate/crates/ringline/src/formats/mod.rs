//! Text formats: table rings, designs, codes and field witnesses.
//!
//! All formats are line based. `#` starts a comment, blank lines are
//! ignored, and anything not described by the grammar is an error.

pub mod code;
pub mod design;
pub mod table;
pub mod witness;

/// A format error at a 1-based line.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct FormatError {
    /// Offending line; 0 for end of input.
    pub line: usize,
    /// What went wrong.
    pub message: String,
}

pub(crate) fn err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError {
        line,
        message: message.into(),
    }
}

/// Non-blank lines with comments removed, paired with line numbers.
pub(crate) fn content_lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .filter_map(|(i, l)| {
            let l = l.split('#').next().unwrap_or("").trim();
            (!l.is_empty()).then_some((i + 1, l))
        })
        .collect()
}

pub(crate) fn parse_ids(line: usize, text: &str) -> Result<Vec<u32>, FormatError> {
    text.split_whitespace()
        .map(|tok| {
            tok.parse::<u32>()
                .map_err(|_| err(line, format!("`{tok}` is not a point id")))
        })
        .collect()
}

/// Reads `key=value` from a header token.
pub(crate) fn header_value(line: usize, token: Option<&str>, key: &str) -> Result<usize, FormatError> {
    let tok = token.ok_or_else(|| err(line, format!("missing `{key}=`")))?;
    let value = tok
        .strip_prefix(key)
        .and_then(|r| r.strip_prefix('='))
        .ok_or_else(|| err(line, format!("expected `{key}=<n>`, found `{tok}`")))?;
    value
        .parse()
        .map_err(|_| err(line, format!("`{value}` is not a number")))
}
