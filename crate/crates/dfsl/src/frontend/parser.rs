//! Recursive descent parser building a [`ScriptAst`] from tokens.
//!
//! Keywords are matched case-insensitively (the lexer already folds word
//! tokens). The first error aborts the parse; there is no recovery.

use crate::span::SourceSpan;

use super::ast::*;
use super::token::{NumberValue, Token, TokenKind};

/// Syntax error with an expected-token description.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{message}")]
pub struct ParseError {
    pub message: String,
    pub span: SourceSpan,
}

type PResult<T> = Result<T, ParseError>;

/// Hard cap on grammar nesting so hostile input cannot blow the stack.
/// Each level costs around ten recursive calls in the expression grammar,
/// so this keeps the parser comfortably inside small test-thread stacks.
const MAX_NEST_DEPTH: u32 = 64;

const READ_VERBS: &[(&str, ReadVerb)] = &[
    ("getbit", ReadVerb::GetBit),
    ("seebit", ReadVerb::SeeBit),
    ("getbyte", ReadVerb::GetBytes),
    ("getbytes", ReadVerb::GetBytes),
    ("seebyte", ReadVerb::SeeBytes),
    ("seebytes", ReadVerb::SeeBytes),
];

/// Parses a token list produced by [`super::lexer::tokenize`].
pub fn parse_script(tokens: &[Token]) -> PResult<ScriptAst> {
    let mut parser = Parser {
        tokens,
        pos: 0,
        depth: 0,
    };
    parser.script()
}

struct Parser<'t> {
    tokens: &'t [Token],
    pos: usize,
    depth: u32,
}

impl<'t> Parser<'t> {
    fn peek(&self) -> Option<&'t Token> {
        self.tokens.get(self.pos)
    }

    fn peek2(&self) -> Option<&'t Token> {
        self.tokens.get(self.pos + 1)
    }

    fn bump(&mut self) -> &'t Token {
        let t = &self.tokens[self.pos];
        self.pos += 1;
        t
    }

    /// Span for end-of-input diagnostics: the last token seen.
    fn eof_span(&self) -> SourceSpan {
        self.tokens
            .last()
            .map(|t| t.span)
            .unwrap_or_else(SourceSpan::start)
    }

    fn error_here(&self, expected: &str) -> ParseError {
        match self.peek() {
            Some(t) => ParseError {
                message: format!("expected {expected}, found `{t}`"),
                span: t.span,
            },
            None => ParseError {
                message: format!("expected {expected}, found end of input"),
                span: self.eof_span(),
            },
        }
    }

    fn check_op(&self, op: &str) -> bool {
        self.peek().is_some_and(|t| t.is_operator(op))
    }

    fn check_punct(&self, p: &str) -> bool {
        self.peek().is_some_and(|t| t.is_punct(p))
    }

    fn check_word(&self, w: &str) -> bool {
        self.peek().is_some_and(|t| t.is_word(w))
    }

    fn eat_op(&mut self, op: &str) -> bool {
        if self.check_op(op) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn eat_punct(&mut self, p: &str) -> bool {
        if self.check_punct(p) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn eat_word(&mut self, w: &str) -> bool {
        if self.check_word(w) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_op(&mut self, op: &str) -> PResult<&'t Token> {
        if self.check_op(op) {
            Ok(self.bump())
        } else {
            Err(self.error_here(&format!("`{op}`")))
        }
    }

    fn expect_punct(&mut self, p: &str) -> PResult<&'t Token> {
        if self.check_punct(p) {
            Ok(self.bump())
        } else {
            Err(self.error_here(&format!("`{p}`")))
        }
    }

    fn nest<T>(&mut self, f: impl FnOnce(&mut Self) -> PResult<T>) -> PResult<T> {
        self.depth += 1;
        if self.depth > MAX_NEST_DEPTH {
            return Err(ParseError {
                message: "nesting too deep".into(),
                span: self
                    .peek()
                    .map(|t| t.span)
                    .unwrap_or_else(|| self.eof_span()),
            });
        }
        let result = f(self);
        self.depth -= 1;
        result
    }

    // === top level ===

    fn script(&mut self) -> PResult<ScriptAst> {
        let mut items = Vec::new();
        while self.peek().is_some() {
            items.push(self.top_level_item()?);
        }
        Ok(ScriptAst { items })
    }

    fn top_level_item(&mut self) -> PResult<TopLevelItem> {
        let tok = self.peek().unwrap();
        if tok.kind != TokenKind::DomainName {
            return Err(self.error_here("a domain binding or definition (`$name`)"));
        }
        let span = tok.span;
        let domain_name = self.bump().text.clone();
        if self.eat_op(":=") {
            Ok(TopLevelItem::Def(self.domain_def(domain_name, span)?))
        } else if self.eat_op("=") {
            Ok(TopLevelItem::Binding(
                self.domain_binding(domain_name, span)?,
            ))
        } else {
            Err(self.error_here("`=` or `:=`"))
        }
    }

    fn domain_binding(&mut self, domain_name: String, span: SourceSpan) -> PResult<DomainBinding> {
        let init = if self.check_word("getfile") {
            let gf_span = self.bump().span;
            self.expect_op("<")?;
            let path = match self.peek() {
                Some(t) if t.kind == TokenKind::StringLit => self.bump().text.clone(),
                _ => return Err(self.error_here("a quoted file path")),
            };
            self.expect_op(">")?;
            Expr {
                kind: ExprKind::GetFile(path),
                span: gf_span,
            }
        } else {
            self.expr()?
        };
        self.expect_punct(";")?;
        Ok(DomainBinding {
            domain_name,
            init,
            span,
        })
    }

    fn domain_def(&mut self, domain_name: String, span: SourceSpan) -> PResult<DomainDef> {
        self.expect_punct("{")?;
        let mut body = Vec::new();
        while !self.check_punct("}") {
            if self.peek().is_none() {
                return Err(self.error_here("`}` closing the structure body"));
            }
            body.push(self.body_item()?);
        }
        self.bump(); // }
        let where_block = if self.eat_word("where") {
            self.expect_punct("{")?;
            let stmts = self.stmt_list_until_brace()?;
            self.expect_punct("}")?;
            Some(stmts)
        } else {
            None
        };
        self.eat_punct(";");
        Ok(DomainDef {
            domain_name,
            body,
            where_block,
            span,
        })
    }

    fn body_item(&mut self) -> PResult<BodyItem> {
        let tok = self.peek().unwrap();
        if tok.kind == TokenKind::SubDomainName && self.peek2().is_some_and(|t| t.is_operator("="))
        {
            let span = tok.span;
            let subdomain_name = self.bump().text.clone();
            self.bump(); // =
            let rvalue = self.field_rvalue()?;
            self.expect_punct(";")?;
            Ok(BodyItem::Field(FieldStmt {
                subdomain_name,
                rvalue,
                span,
            }))
        } else {
            Ok(BodyItem::Inline(self.stmt()?))
        }
    }

    /// Rvalue of a field statement: a link to another domain, or any
    /// expression (typically a read command).
    fn field_rvalue(&mut self) -> PResult<Expr> {
        if let Some(t) = self.peek() {
            if t.kind == TokenKind::DomainName {
                let span = t.span;
                let name = self.bump().text.clone();
                return Ok(Expr {
                    kind: ExprKind::DomainRef(name),
                    span,
                });
            }
        }
        self.expr()
    }

    // === statements ===

    fn stmt_list_until_brace(&mut self) -> PResult<Vec<Stmt>> {
        let mut stmts = Vec::new();
        while !self.check_punct("}") {
            if self.peek().is_none() {
                return Err(self.error_here("`}`"));
            }
            stmts.push(self.stmt()?);
        }
        Ok(stmts)
    }

    /// A `{ ... }` block or a single statement.
    fn branch(&mut self) -> PResult<Vec<Stmt>> {
        if self.eat_punct("{") {
            let stmts = self.stmt_list_until_brace()?;
            self.expect_punct("}")?;
            Ok(stmts)
        } else {
            Ok(vec![self.stmt()?])
        }
    }

    fn stmt(&mut self) -> PResult<Stmt> {
        self.nest(Self::stmt_inner)
    }

    fn stmt_inner(&mut self) -> PResult<Stmt> {
        let tok = match self.peek() {
            Some(t) => t,
            None => return Err(self.error_here("a statement")),
        };
        let span = tok.span;
        if tok.kind == TokenKind::Word {
            match tok.text.as_str() {
                "print" | "println" => return self.print_stmt(span),
                "if" => return self.if_stmt(span),
                "switch" => return self.switch_stmt(span),
                "while" => return self.while_stmt(span),
                "do" => return self.do_while_stmt(span),
                "for" => return self.for_stmt(span),
                "break" => {
                    return Err(ParseError {
                        message: "`break` is only allowed at the end of a switch case".into(),
                        span,
                    })
                }
                "else" | "case" | "default" | "where" => return Err(self.error_here("a statement")),
                _ => {}
            }
        }
        if tok.kind == TokenKind::SubDomainName && self.peek2().is_some_and(|t| t.is_operator("="))
        {
            let subdomain_name = self.bump().text.clone();
            self.bump(); // =
            let expr = self.expr()?;
            self.expect_punct(";")?;
            return Ok(Stmt {
                kind: StmtKind::Assign {
                    subdomain_name,
                    expr,
                },
                span,
            });
        }
        let expr = self.expr()?;
        self.expect_punct(";")?;
        Ok(Stmt {
            kind: StmtKind::ExprStmt(expr),
            span,
        })
    }

    fn print_stmt(&mut self, span: SourceSpan) -> PResult<Stmt> {
        let newline = self.bump().text == "println";
        self.expect_punct("(")?;
        let mut args = Vec::new();
        if !self.check_punct(")") {
            loop {
                args.push(self.expr()?);
                if !self.eat_punct(",") {
                    break;
                }
            }
        }
        self.expect_punct(")")?;
        self.expect_punct(";")?;
        Ok(Stmt {
            kind: StmtKind::Print { args, newline },
            span,
        })
    }

    fn if_stmt(&mut self, span: SourceSpan) -> PResult<Stmt> {
        self.bump(); // if
        self.expect_punct("(")?;
        let cond = self.expr()?;
        self.expect_punct(")")?;
        let then_block = self.branch()?;
        let else_block = if self.eat_word("else") {
            Some(self.branch()?)
        } else {
            None
        };
        self.eat_punct(";");
        Ok(Stmt {
            kind: StmtKind::If {
                cond,
                then_block,
                else_block,
            },
            span,
        })
    }

    fn switch_stmt(&mut self, span: SourceSpan) -> PResult<Stmt> {
        self.bump(); // switch
        self.expect_punct("(")?;
        let scrutinee = self.expr()?;
        self.expect_punct(")")?;
        self.expect_punct("{")?;
        let mut cases = Vec::new();
        let mut default_block = None;
        loop {
            if self.eat_punct("}") {
                break;
            }
            if self.eat_word("case") {
                if default_block.is_some() {
                    return Err(ParseError {
                        message: "`default` must be the last clause in a switch".into(),
                        span: self
                            .peek()
                            .map(|t| t.span)
                            .unwrap_or_else(|| self.eof_span()),
                    });
                }
                let value = self.expr()?;
                self.expect_punct(":")?;
                let (block, has_break) = self.case_body()?;
                cases.push(SwitchCase {
                    value,
                    block,
                    has_break,
                });
            } else if self.eat_word("default") {
                if default_block.is_some() {
                    return Err(ParseError {
                        message: "duplicate `default` clause".into(),
                        span,
                    });
                }
                self.expect_punct(":")?;
                let (block, _) = self.case_body()?;
                default_block = Some(block);
            } else {
                return Err(self.error_here("`case`, `default` or `}`"));
            }
        }
        self.eat_punct(";");
        Ok(Stmt {
            kind: StmtKind::Switch {
                scrutinee,
                cases,
                default_block,
            },
            span,
        })
    }

    /// Statements of one case arm, up to `break;`, the next label or `}`.
    fn case_body(&mut self) -> PResult<(Vec<Stmt>, bool)> {
        let mut block = Vec::new();
        loop {
            if self.check_punct("}") || self.check_word("case") || self.check_word("default") {
                return Ok((block, false));
            }
            if self.eat_word("break") {
                self.expect_punct(";")?;
                return Ok((block, true));
            }
            if self.peek().is_none() {
                return Err(self.error_here("`}` closing the switch"));
            }
            block.push(self.stmt()?);
        }
    }

    fn while_stmt(&mut self, span: SourceSpan) -> PResult<Stmt> {
        self.bump(); // while
        self.expect_punct("(")?;
        let cond = self.expr()?;
        self.expect_punct(")")?;
        let block = self.branch()?;
        self.eat_punct(";");
        Ok(Stmt {
            kind: StmtKind::While { cond, block },
            span,
        })
    }

    fn do_while_stmt(&mut self, span: SourceSpan) -> PResult<Stmt> {
        self.bump(); // do
        self.expect_punct("{")?;
        let block = self.stmt_list_until_brace()?;
        self.expect_punct("}")?;
        if !self.eat_word("while") {
            return Err(self.error_here("`while` after the do block"));
        }
        self.expect_punct("(")?;
        let cond = self.expr()?;
        self.expect_punct(")")?;
        self.expect_punct(";")?;
        Ok(Stmt {
            kind: StmtKind::DoWhile { block, cond },
            span,
        })
    }

    fn for_stmt(&mut self, span: SourceSpan) -> PResult<Stmt> {
        self.bump(); // for
        self.expect_punct("(")?;
        let init = if self.check_punct(";") {
            None
        } else {
            Some(Box::new(self.simple_stmt()?))
        };
        self.expect_punct(";")?;
        let cond = if self.check_punct(";") {
            None
        } else {
            Some(self.expr()?)
        };
        self.expect_punct(";")?;
        let step = if self.check_punct(")") {
            None
        } else {
            Some(Box::new(self.simple_stmt()?))
        };
        self.expect_punct(")")?;
        let block = self.branch()?;
        self.eat_punct(";");
        Ok(Stmt {
            kind: StmtKind::For {
                init,
                cond,
                step,
                block,
            },
            span,
        })
    }

    /// Assignment or expression without a trailing `;`, as used in for
    /// headers.
    fn simple_stmt(&mut self) -> PResult<Stmt> {
        let tok = self.peek().ok_or_else(|| self.error_here("a statement"))?;
        let span = tok.span;
        if tok.kind == TokenKind::SubDomainName && self.peek2().is_some_and(|t| t.is_operator("="))
        {
            let subdomain_name = self.bump().text.clone();
            self.bump(); // =
            let expr = self.expr()?;
            Ok(Stmt {
                kind: StmtKind::Assign {
                    subdomain_name,
                    expr,
                },
                span,
            })
        } else {
            let expr = self.expr()?;
            Ok(Stmt {
                kind: StmtKind::ExprStmt(expr),
                span,
            })
        }
    }

    // === expressions ===

    fn expr(&mut self) -> PResult<Expr> {
        self.binary_level(0)
    }

    /// Precedence climbing over the binary operator tiers; level 4 is the
    /// additive tier used by read command operands.
    fn binary_level(&mut self, level: usize) -> PResult<Expr> {
        const TIERS: &[&[(&str, BinaryOp)]] = &[
            &[("||", BinaryOp::Or)],
            &[("&&", BinaryOp::And)],
            &[("==", BinaryOp::Eq), ("!=", BinaryOp::Ne)],
            &[
                ("<", BinaryOp::Lt),
                ("<=", BinaryOp::Le),
                (">", BinaryOp::Gt),
                (">=", BinaryOp::Ge),
            ],
            &[("+", BinaryOp::Add), ("-", BinaryOp::Sub)],
            &[
                ("*", BinaryOp::Mul),
                ("/", BinaryOp::Div),
                ("%", BinaryOp::Rem),
            ],
        ];
        if level == TIERS.len() {
            return self.unary();
        }
        let mut lhs = self.binary_level(level + 1)?;
        'outer: loop {
            for (sym, op) in TIERS[level] {
                if self.check_op(sym) {
                    let op_span = self.bump().span;
                    let rhs = self.binary_level(level + 1)?;
                    lhs = Expr {
                        kind: ExprKind::Binary {
                            op: *op,
                            lhs: Box::new(lhs),
                            rhs: Box::new(rhs),
                        },
                        span: op_span,
                    };
                    continue 'outer;
                }
            }
            return Ok(lhs);
        }
    }

    /// Additive-tier expression: operand position of read commands, so that
    /// `getBit 15 ~ 9` and `getBit %ihl - 5` parse while comparisons stay
    /// outside the command.
    fn additive(&mut self) -> PResult<Expr> {
        self.binary_level(4)
    }

    fn unary(&mut self) -> PResult<Expr> {
        self.nest(|p| {
            for (sym, op) in [("!", UnaryOp::Not), ("-", UnaryOp::Neg)] {
                if p.check_op(sym) {
                    let span = p.bump().span;
                    let operand = p.unary()?;
                    return Ok(Expr {
                        kind: ExprKind::Unary {
                            op,
                            operand: Box::new(operand),
                        },
                        span,
                    });
                }
            }
            p.primary()
        })
    }

    fn primary(&mut self) -> PResult<Expr> {
        let tok = match self.peek() {
            Some(t) => t,
            None => return Err(self.error_here("an expression")),
        };
        let span = tok.span;
        match tok.kind {
            TokenKind::Number => {
                let t = self.bump();
                let kind = match t.number_value.unwrap() {
                    NumberValue::UInt(v) => ExprKind::UIntLit {
                        value: v,
                        hex_digits: t.hex_digit_count,
                    },
                    NumberValue::Real(v) => ExprKind::RealLit(v),
                };
                Ok(Expr { kind, span })
            }
            TokenKind::StringLit => {
                let text = self.bump().text.clone();
                Ok(Expr {
                    kind: ExprKind::StringLit(text),
                    span,
                })
            }
            TokenKind::SubDomainName => {
                let name = self.bump().text.clone();
                Ok(Expr {
                    kind: ExprKind::SubDomainRef(name),
                    span,
                })
            }
            TokenKind::Punct if tok.is_punct("(") => {
                self.bump();
                let inner = self.expr()?;
                self.expect_punct(")")?;
                Ok(Expr {
                    kind: inner.kind,
                    span,
                })
            }
            TokenKind::Word => {
                if let Some(verb) = read_verb(&tok.text) {
                    return self.read_command(verb, span);
                }
                if tok.text == "getfile" {
                    return Err(ParseError {
                        message: "`getFile` is only allowed as a data binding initializer".into(),
                        span,
                    });
                }
                Err(self.error_here("an expression"))
            }
            TokenKind::DomainName => Err(ParseError {
                message: "a domain reference is only allowed as a field's right-hand side".into(),
                span,
            }),
            _ => Err(self.error_here("an expression")),
        }
    }

    fn read_command(&mut self, verb: ReadVerb, span: SourceSpan) -> PResult<Expr> {
        self.bump(); // verb
        let form = if self.check_op("@") {
            if verb.is_byte_unit() {
                return Err(ParseError {
                    message: format!("`@position` form is not defined for `{}`", verb.name()),
                    span,
                });
            }
            self.bump();
            let position = Box::new(self.additive()?);
            let count = if self.eat_punct(",") {
                Some(Box::new(self.additive()?))
            } else {
                None
            };
            ReadForm::At { position, count }
        } else if self.starts_expression() {
            let first = self.additive()?;
            if self.check_op("~") {
                if verb.is_byte_unit() {
                    return Err(ParseError {
                        message: format!(
                            "`start ~ stop` form is not defined for `{}`",
                            verb.name()
                        ),
                        span,
                    });
                }
                self.bump();
                let stop = Box::new(self.additive()?);
                ReadForm::Range {
                    start: Box::new(first),
                    stop,
                }
            } else {
                ReadForm::Count(Some(Box::new(first)))
            }
        } else {
            ReadForm::Count(None)
        };
        Ok(Expr {
            kind: ExprKind::Read(ReadCommand { verb, form, span }),
            span,
        })
    }

    /// Could the current token begin an expression operand?
    fn starts_expression(&self) -> bool {
        match self.peek() {
            Some(t) => match t.kind {
                TokenKind::Number | TokenKind::StringLit | TokenKind::SubDomainName => true,
                TokenKind::Punct => t.is_punct("("),
                TokenKind::Operator => t.is_operator("!") || t.is_operator("-"),
                TokenKind::Word => read_verb(&t.text).is_some(),
                TokenKind::DomainName => false,
            },
            None => false,
        }
    }
}

fn read_verb(word: &str) -> Option<ReadVerb> {
    READ_VERBS
        .iter()
        .find(|(name, _)| *name == word)
        .map(|(_, verb)| *verb)
}
