//! Parse tree for DFSL scripts.
//!
//! Body item order is preserved exactly as written: the sequence of fields
//! is the physical layout of the stream.

use crate::span::SourceSpan;

/// A whole script: data bindings and structure definitions in source order.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ScriptAst {
    pub items: Vec<TopLevelItem>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum TopLevelItem {
    Binding(DomainBinding),
    Def(DomainDef),
}

/// `$name = init ;` — attaches raw data to a domain.
#[derive(Debug, Clone, PartialEq)]
pub struct DomainBinding {
    pub domain_name: String,
    pub init: Expr,
    pub span: SourceSpan,
}

/// `$name := { body } [where { stmts }] [;]`
#[derive(Debug, Clone, PartialEq)]
pub struct DomainDef {
    pub domain_name: String,
    pub body: Vec<BodyItem>,
    pub where_block: Option<Vec<Stmt>>,
    pub span: SourceSpan,
}

/// An entry in a structure body: either a sub-domain field or an inline
/// statement executed while parsing (casual interpretation).
#[derive(Debug, Clone, PartialEq)]
pub enum BodyItem {
    Field(FieldStmt),
    Inline(Stmt),
}

/// `%name = rvalue ;`
#[derive(Debug, Clone, PartialEq)]
pub struct FieldStmt {
    pub subdomain_name: String,
    pub rvalue: Expr,
    pub span: SourceSpan,
}

/// Read command verbs of the bit extraction engine. The `See` verbs
/// preview without moving the bit pointer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReadVerb {
    GetBit,
    SeeBit,
    GetBytes,
    SeeBytes,
}

impl ReadVerb {
    pub fn is_peek(self) -> bool {
        matches!(self, ReadVerb::SeeBit | ReadVerb::SeeBytes)
    }

    pub fn is_byte_unit(self) -> bool {
        matches!(self, ReadVerb::GetBytes | ReadVerb::SeeBytes)
    }

    pub fn name(self) -> &'static str {
        match self {
            ReadVerb::GetBit => "getbit",
            ReadVerb::SeeBit => "seebit",
            ReadVerb::GetBytes => "getbytes",
            ReadVerb::SeeBytes => "seebytes",
        }
    }
}

/// Addressing form of a read command. `At` and `Range` use significance
/// indexing and are only legal for the bit verbs.
#[derive(Debug, Clone, PartialEq)]
pub enum ReadForm {
    /// `verb [count]` — missing count means one unit.
    Count(Option<Box<Expr>>),
    /// `verb @position [, count]`
    At {
        position: Box<Expr>,
        count: Option<Box<Expr>>,
    },
    /// `verb start ~ stop`
    Range { start: Box<Expr>, stop: Box<Expr> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReadCommand {
    pub verb: ReadVerb,
    pub form: ReadForm,
    pub span: SourceSpan,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinaryOp {
    Add,
    Sub,
    Mul,
    Div,
    Rem,
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
    And,
    Or,
}

impl BinaryOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinaryOp::Add => "+",
            BinaryOp::Sub => "-",
            BinaryOp::Mul => "*",
            BinaryOp::Div => "/",
            BinaryOp::Rem => "%",
            BinaryOp::Eq => "==",
            BinaryOp::Ne => "!=",
            BinaryOp::Lt => "<",
            BinaryOp::Le => "<=",
            BinaryOp::Gt => ">",
            BinaryOp::Ge => ">=",
            BinaryOp::And => "&&",
            BinaryOp::Or => "||",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnaryOp {
    Not,
    Neg,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: SourceSpan,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExprKind {
    UIntLit {
        value: u64,
        hex_digits: u32,
    },
    RealLit(f64),
    StringLit(String),
    SubDomainRef(String),
    Binary {
        op: BinaryOp,
        lhs: Box<Expr>,
        rhs: Box<Expr>,
    },
    Unary {
        op: UnaryOp,
        operand: Box<Expr>,
    },
    Read(ReadCommand),
    /// Only legal as a field statement rvalue.
    DomainRef(String),
    /// Only legal as a domain binding init.
    GetFile(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Stmt {
    pub kind: StmtKind,
    pub span: SourceSpan,
}

#[derive(Debug, Clone, PartialEq)]
pub enum StmtKind {
    Print {
        args: Vec<Expr>,
        newline: bool,
    },
    If {
        cond: Expr,
        then_block: Vec<Stmt>,
        else_block: Option<Vec<Stmt>>,
    },
    Switch {
        scrutinee: Expr,
        cases: Vec<SwitchCase>,
        default_block: Option<Vec<Stmt>>,
    },
    While {
        cond: Expr,
        block: Vec<Stmt>,
    },
    DoWhile {
        block: Vec<Stmt>,
        cond: Expr,
    },
    For {
        init: Option<Box<Stmt>>,
        cond: Option<Expr>,
        step: Option<Box<Stmt>>,
        block: Vec<Stmt>,
    },
    Assign {
        subdomain_name: String,
        expr: Expr,
    },
    ExprStmt(Expr),
}

/// One `case value: stmts [break;]` arm. Without `break` execution falls
/// through to the next arm.
#[derive(Debug, Clone, PartialEq)]
pub struct SwitchCase {
    pub value: Expr,
    pub block: Vec<Stmt>,
    pub has_break: bool,
}

impl ScriptAst {
    /// Field statements of the named domain in body order; `None` when the
    /// domain has no definition.
    pub fn def(&self, name: &str) -> Option<&DomainDef> {
        self.items.iter().find_map(|item| match item {
            TopLevelItem::Def(d) if d.domain_name == name => Some(d),
            _ => None,
        })
    }
}
