//! Source positions attached to tokens, AST nodes and diagnostics.

use std::fmt;

/// A position in the script source. Line and column are 1-based,
/// `byte_offset` is the 0-based offset into the source text.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SourceSpan {
    pub line: u32,
    pub column: u32,
    pub byte_offset: usize,
}

impl SourceSpan {
    pub fn new(line: u32, column: u32, byte_offset: usize) -> Self {
        debug_assert!(line >= 1 && column >= 1);
        SourceSpan {
            line,
            column,
            byte_offset,
        }
    }

    /// Position of the first character in a source.
    pub fn start() -> Self {
        SourceSpan::new(1, 1, 0)
    }
}

impl Default for SourceSpan {
    fn default() -> Self {
        SourceSpan::start()
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.column)
    }
}
