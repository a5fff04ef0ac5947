//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by loaders, generators, metrics and the regression study.
#[derive(Debug, Error)]
pub enum Error {
    #[error("failed to read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    /// Malformed JSON. `offset` is the byte offset of the failure point.
    #[error("malformed JSON in {path} at byte {offset} (line {line}, column {column}): {message}")]
    JsonParse {
        path: String,
        offset: usize,
        line: usize,
        column: usize,
        message: String,
    },

    /// Structurally valid JSON that violates the expected schema.
    #[error("schema error in {path}: {message}")]
    Schema { path: String, message: String },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("no matches for template {0}")]
    NoTemplateMatches(String),

    #[error("cannot realize template {template}: {message}")]
    Realization { template: String, message: String },

    #[error("number {0} outside supported range [0, 99]")]
    NumberOutOfRange(i64),

    /// RAD is undefined when no original question was answered correctly.
    #[error("RAD undefined: no correctly answered examples in the reference set")]
    UndefinedRad,

    #[error("pairing mismatch: {0}")]
    PairingMismatch(String),

    #[error("correctness mode error: {0}")]
    Mode(String),

    #[error("prediction missing for question id {0}")]
    MissingPrediction(u64),

    #[error("paired set is empty")]
    EmptyPairedSet,

    #[error("cannot compute mean over zero judgments")]
    EmptyJudgments,

    #[error("missing evaluation report for model {model} on set {member}")]
    MissingReport { model: String, member: String },

    #[error("design matrix is rank deficient (offending columns: {0})")]
    SingularDesign(String),

    #[error("not enough rows to fit: {rows} rows for {features} features")]
    InsufficientRows { rows: usize, features: usize },

    #[error("prior map does not cover question type {0:?} and has no default")]
    MissingPriorType(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn io(path: &std::path::Path, source: std::io::Error) -> Self {
        Error::Io {
            path: path.display().to_string(),
            source,
        }
    }

    pub(crate) fn schema(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Schema {
            path: path.into(),
            message: message.into(),
        }
    }

    /// Builds a [`Error::JsonParse`] from a `serde_json` error, converting the
    /// reported line/column position into a byte offset within `text`.
    pub(crate) fn json_parse(path: impl Into<String>, text: &str, err: &serde_json::Error) -> Self {
        let line = err.line();
        let column = err.column();
        let offset = byte_offset(text, line, column);
        Error::JsonParse {
            path: path.into(),
            offset,
            line,
            column,
            message: err.to_string(),
        }
    }
}

/// Converts a 1-based line and column into a byte offset.
fn byte_offset(text: &str, line: usize, column: usize) -> usize {
    if line == 0 {
        return 0;
    }
    let mut remaining = line - 1;
    let mut offset = 0;
    for (idx, byte) in text.bytes().enumerate() {
        if remaining == 0 {
            break;
        }
        if byte == b'\n' {
            remaining -= 1;
            offset = idx + 1;
        }
    }
    offset + column.saturating_sub(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn byte_offset_first_line() {
        assert_eq!(byte_offset("abc", 1, 2), 1);
    }

    #[test]
    fn byte_offset_later_line() {
        // "ab\ncd" -> line 2, column 1 is the byte after the newline.
        assert_eq!(byte_offset("ab\ncd", 2, 1), 3);
        assert_eq!(byte_offset("ab\ncd", 2, 2), 4);
    }
}
