//! Lexical tokens.

use std::fmt;

use crate::span::SourceSpan;

/// Token categories produced by the lexer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenKind {
    /// Unsigned integer or real literal.
    Number,
    /// Identifier or reserved word, stored lowercase.
    Word,
    /// `$name`, stored lowercase without the sigil.
    DomainName,
    /// `%name`, stored lowercase without the sigil.
    SubDomainName,
    /// Double-quoted string, stored without the quotes.
    StringLit,
    /// `=`, `:=`, arithmetic, comparison and logical operators, `~`, `@`.
    Operator,
    /// `;`, `,`, `:`, parentheses and braces.
    Punct,
}

/// Numeric payload of a `Number` token.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NumberValue {
    UInt(u64),
    Real(f64),
}

/// One lexical unit. `text` holds the normalized lexeme: words and names
/// are case-folded, numbers are re-rendered canonically, strings lose
/// their quotes.
#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub kind: TokenKind,
    pub text: String,
    /// Set when `kind == Number`.
    pub number_value: Option<NumberValue>,
    /// Count of hex digits when the literal was hexadecimal, 0 otherwise.
    pub hex_digit_count: u32,
    pub span: SourceSpan,
}

impl Token {
    /// The lexeme as it would appear in source: sigils and quotes restored.
    pub fn render(&self) -> String {
        match self.kind {
            TokenKind::DomainName => format!("${}", self.text),
            TokenKind::SubDomainName => format!("%{}", self.text),
            TokenKind::StringLit => format!("\"{}\"", self.text),
            _ => self.text.clone(),
        }
    }

    pub fn is_word(&self, word: &str) -> bool {
        self.kind == TokenKind::Word && self.text == word
    }

    pub fn is_operator(&self, op: &str) -> bool {
        self.kind == TokenKind::Operator && self.text == op
    }

    pub fn is_punct(&self, p: &str) -> bool {
        self.kind == TokenKind::Punct && self.text == p
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Joins rendered lexemes with single spaces.
pub fn render_tokens(tokens: &[Token]) -> String {
    tokens
        .iter()
        .map(Token::render)
        .collect::<Vec<_>>()
        .join(" ")
}
