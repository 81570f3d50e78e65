//! Scanner turning DFSL source text into tokens.
//!
//! Comments (`//` to end of line) and whitespace produce no tokens. Word,
//! domain and sub-domain lexemes are case-insensitive and stored lowercase.

use crate::span::SourceSpan;

use super::token::{NumberValue, Token, TokenKind};

/// Error found while scanning.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LexError {
    #[error("unterminated string literal")]
    UnterminatedString { span: SourceSpan },
    #[error("stray character {ch:?}")]
    StrayCharacter { ch: char, span: SourceSpan },
    #[error("malformed number: {detail}")]
    MalformedNumber { detail: String, span: SourceSpan },
}

impl LexError {
    pub fn span(&self) -> SourceSpan {
        match self {
            LexError::UnterminatedString { span }
            | LexError::StrayCharacter { span, .. }
            | LexError::MalformedNumber { span, .. } => *span,
        }
    }
}

/// Scans `source` into tokens, stopping at the first error.
pub fn tokenize(source: &str) -> Result<Vec<Token>, LexError> {
    Scanner::new(source).run()
}

struct Scanner<'s> {
    source: &'s str,
    bytes: &'s [u8],
    pos: usize,
    line: u32,
    column: u32,
}

impl<'s> Scanner<'s> {
    fn new(source: &'s str) -> Self {
        Scanner {
            source,
            bytes: source.as_bytes(),
            pos: 0,
            line: 1,
            column: 1,
        }
    }

    fn run(mut self) -> Result<Vec<Token>, LexError> {
        let mut tokens = Vec::new();
        loop {
            self.skip_trivia();
            if self.at_end() {
                return Ok(tokens);
            }
            tokens.push(self.next_token()?);
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.bytes.len()
    }

    fn peek(&self) -> u8 {
        if self.at_end() {
            0
        } else {
            self.bytes[self.pos]
        }
    }

    fn peek_at(&self, ahead: usize) -> u8 {
        *self.bytes.get(self.pos + ahead).unwrap_or(&0)
    }

    /// Advances over one char, maintaining line/column. Columns count
    /// characters, not bytes.
    fn advance(&mut self) -> char {
        let ch = self.source[self.pos..].chars().next().unwrap();
        self.pos += ch.len_utf8();
        if ch == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        ch
    }

    fn here(&self) -> SourceSpan {
        SourceSpan::new(self.line, self.column, self.pos)
    }

    fn skip_trivia(&mut self) {
        loop {
            match self.peek() {
                b' ' | b'\t' | b'\r' | b'\n' => {
                    self.advance();
                }
                b'/' if self.peek_at(1) == b'/' => {
                    while !self.at_end() && self.peek() != b'\n' {
                        self.advance();
                    }
                }
                _ => return,
            }
        }
    }

    fn next_token(&mut self) -> Result<Token, LexError> {
        let span = self.here();
        let ch = self.peek();
        match ch {
            b'0'..=b'9' => self.number(span),
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                let text = self.ident_tail();
                Ok(self.simple(TokenKind::Word, text, span))
            }
            b'$' => {
                self.advance();
                let text = self.sigil_name('$', span)?;
                Ok(self.simple(TokenKind::DomainName, text, span))
            }
            b'%' => {
                // A lone % is the remainder operator.
                if is_ident_byte(self.peek_at(1)) {
                    self.advance();
                    let text = self.sigil_name('%', span)?;
                    Ok(self.simple(TokenKind::SubDomainName, text, span))
                } else {
                    self.advance();
                    Ok(self.simple(TokenKind::Operator, "%".into(), span))
                }
            }
            b'"' => self.string(span),
            _ => self.operator_or_punct(span),
        }
    }

    fn simple(&self, kind: TokenKind, text: String, span: SourceSpan) -> Token {
        Token {
            kind,
            text,
            number_value: None,
            hex_digit_count: 0,
            span,
        }
    }

    fn ident_tail(&mut self) -> String {
        let start = self.pos;
        while is_ident_byte(self.peek()) {
            self.advance();
        }
        self.source[start..self.pos].to_lowercase()
    }

    fn sigil_name(&mut self, sigil: char, span: SourceSpan) -> Result<String, LexError> {
        if !is_ident_byte(self.peek()) {
            return Err(LexError::StrayCharacter { ch: sigil, span });
        }
        Ok(self.ident_tail())
    }

    fn string(&mut self, span: SourceSpan) -> Result<Token, LexError> {
        self.advance(); // opening quote
        let start = self.pos;
        loop {
            if self.at_end() || self.peek() == b'\n' {
                return Err(LexError::UnterminatedString { span });
            }
            if self.peek() == b'"' {
                let text = self.source[start..self.pos].to_string();
                self.advance();
                return Ok(self.simple(TokenKind::StringLit, text, span));
            }
            self.advance();
        }
    }

    fn number(&mut self, span: SourceSpan) -> Result<Token, LexError> {
        if self.peek() == b'0' && matches!(self.peek_at(1), b'x' | b'X') {
            return self.hex_number(span);
        }
        let start = self.pos;
        while self.peek().is_ascii_digit() {
            self.advance();
        }
        let mut is_real = false;
        if self.peek() == b'.' && self.peek_at(1).is_ascii_digit() {
            is_real = true;
            self.advance();
            while self.peek().is_ascii_digit() {
                self.advance();
            }
        }
        if matches!(self.peek(), b'e' | b'E') {
            let mut ahead = 1;
            if matches!(self.peek_at(1), b'+' | b'-') {
                ahead = 2;
            }
            if self.peek_at(ahead).is_ascii_digit() {
                is_real = true;
                for _ in 0..ahead {
                    self.advance();
                }
                while self.peek().is_ascii_digit() {
                    self.advance();
                }
            }
        }
        self.check_literal_boundary(span)?;
        let lexeme = &self.source[start..self.pos];
        if is_real {
            let value: f64 = lexeme.parse().map_err(|_| LexError::MalformedNumber {
                detail: format!("invalid real literal `{lexeme}`"),
                span,
            })?;
            if !value.is_finite() {
                return Err(LexError::MalformedNumber {
                    detail: format!("real literal `{lexeme}` out of range"),
                    span,
                });
            }
            Ok(self.number_token(NumberValue::Real(value), 0, span))
        } else {
            let value: u64 = lexeme.parse().map_err(|_| LexError::MalformedNumber {
                detail: format!("integer literal `{lexeme}` out of range"),
                span,
            })?;
            Ok(self.number_token(NumberValue::UInt(value), 0, span))
        }
    }

    fn hex_number(&mut self, span: SourceSpan) -> Result<Token, LexError> {
        self.advance(); // 0
        self.advance(); // x
        let start = self.pos;
        while self.peek().is_ascii_hexdigit() {
            self.advance();
        }
        let digits = self.pos - start;
        if digits == 0 {
            return Err(LexError::MalformedNumber {
                detail: "hex digits required after `0x`".into(),
                span,
            });
        }
        if digits > 16 {
            return Err(LexError::MalformedNumber {
                detail: "hex literal wider than 64 bits".into(),
                span,
            });
        }
        self.check_literal_boundary(span)?;
        let value = u64::from_str_radix(&self.source[start..self.pos], 16).unwrap();
        Ok(self.number_token(NumberValue::UInt(value), digits as u32, span))
    }

    /// A number must not run straight into an identifier ("0x12g", "12abc").
    fn check_literal_boundary(&self, span: SourceSpan) -> Result<(), LexError> {
        if is_ident_byte(self.peek()) {
            return Err(LexError::MalformedNumber {
                detail: "identifier character immediately after number".into(),
                span,
            });
        }
        Ok(())
    }

    fn number_token(&self, value: NumberValue, hex_digits: u32, span: SourceSpan) -> Token {
        Token {
            kind: TokenKind::Number,
            text: canonical_number(value, hex_digits),
            number_value: Some(value),
            hex_digit_count: hex_digits,
            span,
        }
    }

    fn operator_or_punct(&mut self, span: SourceSpan) -> Result<Token, LexError> {
        let two = [self.peek(), self.peek_at(1)];
        let double = matches!(&two, b":=" | b"==" | b"!=" | b"<=" | b">=" | b"&&" | b"||");
        if double {
            let text: String = [self.advance(), self.advance()].iter().collect();
            return Ok(self.simple(TokenKind::Operator, text, span));
        }
        let kind = match self.peek() {
            b'=' | b'+' | b'-' | b'*' | b'/' | b'<' | b'>' | b'!' | b'~' | b'@' => {
                TokenKind::Operator
            }
            b';' | b',' | b':' | b'(' | b')' | b'{' | b'}' => TokenKind::Punct,
            _ => {
                let ch = self.source[self.pos..].chars().next().unwrap();
                return Err(LexError::StrayCharacter { ch, span });
            }
        };
        let text = self.advance().to_string();
        Ok(self.simple(kind, text, span))
    }
}

fn is_ident_byte(b: u8) -> bool {
    b.is_ascii_alphanumeric() || b == b'_'
}

/// Canonical spelling used for `Token::text` and `render`.
fn canonical_number(value: NumberValue, hex_digits: u32) -> String {
    match value {
        NumberValue::UInt(v) if hex_digits > 0 => {
            format!("0x{:0width$x}", v, width = hex_digits as usize)
        }
        NumberValue::UInt(v) => v.to_string(),
        NumberValue::Real(v) => {
            let s = v.to_string();
            if s.contains('.') || s.contains('e') || s.contains('E') {
                s
            } else {
                format!("{s}.0")
            }
        }
    }
}
