//! Lexer, parser and AST for the DFSL language.

pub mod ast;
pub mod lexer;
pub mod parser;
pub mod token;

pub use ast::ScriptAst;
pub use lexer::{tokenize, LexError};
pub use parser::{parse_script, ParseError};
pub use token::{render_tokens, Token, TokenKind};

use crate::span::SourceSpan;

/// Any error produced while turning script text into an AST.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FrontendError {
    #[error(transparent)]
    Lex(#[from] LexError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

impl FrontendError {
    pub fn span(&self) -> SourceSpan {
        match self {
            FrontendError::Lex(e) => e.span(),
            FrontendError::Parse(e) => e.span,
        }
    }
}

/// Tokenizes and parses script text in one step.
pub fn parse_source(source: &str) -> Result<ScriptAst, FrontendError> {
    let tokens = tokenize(source)?;
    Ok(parse_script(&tokens)?)
}

/// Renders a frontend error as a single diagnostic line with the source
/// position and a short snippet of the offending line.
pub fn parse_error_report(err: &FrontendError, source: &str) -> String {
    let span = err.span();
    let mut report = format!("error: {err} at {span}");
    if let Some(line) = source.lines().nth(span.line.saturating_sub(1) as usize) {
        let snippet: String = line.trim().chars().take(60).collect();
        if !snippet.is_empty() {
            report.push_str(&format!("\n  near: {snippet}"));
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_includes_position_and_snippet() {
        let src = "$a := {\n  %x = getBit @ ;\n};";
        let err = parse_source(src).unwrap_err();
        let report = parse_error_report(&err, src);
        assert!(report.contains("line 2"), "{report}");
        assert!(report.contains("near: %x = getBit @ ;"), "{report}");
    }

    #[test]
    fn lex_errors_flow_through() {
        let err = parse_source("$a = \"oops").unwrap_err();
        assert!(matches!(err, FrontendError::Lex(_)));
        let report = parse_error_report(&err, "$a = \"oops");
        assert!(report.contains("line 1"), "{report}");
    }
}
