//! The `.lca` presentation format and the builtin algebra library.
//!
//! ```text
//! algebra virasoro {
//!   param c;
//!   generator L : even;
//!   central C;
//!   bracket [L, L] = (D + 2*lam) L + (1/12)*lam^3*c*C;
//! }
//! ```

mod builtins;
mod lexer;
mod parser;

use std::fmt;

use serde::Serialize;

pub use builtins::{builtin, BUILTIN_NAMES};
pub use parser::{parse_algebra, parse_element, parse_file};

/// Half-open byte range with the 1-based line and column of its start.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SourceSpan {
    pub start: usize,
    pub end: usize,
    pub line: usize,
    pub column: usize,
}

impl SourceSpan {
    pub fn new(start: usize, end: usize, line: usize, column: usize) -> Self {
        debug_assert!(start <= end);
        SourceSpan {
            start,
            end,
            line,
            column,
        }
    }

    /// Span from the start of `self` to the end of `other`.
    pub fn to(self, other: SourceSpan) -> SourceSpan {
        SourceSpan {
            end: other.end.max(self.start),
            ..self
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ErrorKind {
    Syntax,
    UnknownGenerator,
    ParityMismatch,
    DuplicateBracket,
    TorsionMisuse,
    ParameterUndeclared,
}

impl fmt::Display for ErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ErrorKind::Syntax => "syntax",
            ErrorKind::UnknownGenerator => "unknown-generator",
            ErrorKind::ParityMismatch => "parity-mismatch",
            ErrorKind::DuplicateBracket => "duplicate-bracket",
            ErrorKind::TorsionMisuse => "torsion-misuse",
            ErrorKind::ParameterUndeclared => "parameter-undeclared",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParseError {
    pub span: SourceSpan,
    pub kind: ErrorKind,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}: {}: {}",
            self.span.line, self.span.column, self.kind, self.message
        )
    }
}

impl std::error::Error for ParseError {}

impl ParseError {
    /// Renders the error with the offending source line and a caret marker.
    pub fn render(&self, src: &str, path: &str) -> String {
        let line = src.lines().nth(self.span.line.saturating_sub(1)).unwrap_or("");
        let width = src
            .get(self.span.start..self.span.end)
            .map(|s| s.chars().take_while(|&c| c != '\n').count())
            .unwrap_or(1)
            .max(1);
        format!(
            "{path}:{}:{}: error[{}]: {}\n  | {line}\n  | {}{}",
            self.span.line,
            self.span.column,
            self.kind,
            self.message,
            " ".repeat(self.span.column.saturating_sub(1)),
            "^".repeat(width)
        )
    }
}
