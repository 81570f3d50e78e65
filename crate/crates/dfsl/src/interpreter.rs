//! Depth-first execution of analyzed scripts over their bound data streams.

use std::collections::HashMap;
use std::fmt;
use std::path::PathBuf;
use std::rc::Rc;

use crate::bitstream::{BitCursor, BitSource, BitsValue, BitstreamError, FieldBits};
use crate::frontend::ast::*;
use crate::semantics::DomainTable;
use crate::span::SourceSpan;

/// Runtime value of a sub-domain or expression.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    UInt(u64),
    Real(f64),
    Str(String),
    Bytes(Vec<u8>),
    Bool(bool),
    /// A linked structure's parse result.
    StructRef(Rc<ResultNode>),
}

impl Value {
    fn kind_name(&self) -> &'static str {
        match self {
            Value::UInt(_) => "unsigned integer",
            Value::Real(_) => "real",
            Value::Str(_) => "string",
            Value::Bytes(_) => "byte string",
            Value::Bool(_) => "boolean",
            Value::StructRef(_) => "structure",
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::UInt(v) => write!(f, "{v}"),
            Value::Real(v) => write!(f, "{v}"),
            Value::Str(s) => write!(f, "{s}"),
            Value::Bytes(bytes) => {
                write!(f, "0x")?;
                for b in bytes {
                    write!(f, "{b:02x}")?;
                }
                Ok(())
            }
            Value::Bool(b) => write!(f, "{}", if *b { 1 } else { 0 }),
            Value::StructRef(node) => {
                write!(f, "[struct {}, {} bits]", node.name, node.width_bits)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResultKind {
    Field,
    Domain,
}

/// One node of the parse result: a read field leaf or a structure with
/// children.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultNode {
    pub name: String,
    pub kind: ResultKind,
    /// Field leaves carry the value that was read.
    pub value: Option<Value>,
    pub offset_bits: u64,
    pub width_bits: u64,
    pub children: Vec<ResultNode>,
    /// For structures, the definition they were produced from.
    pub source_domain: Option<String>,
}

impl ResultNode {
    /// Depth-first leaf fields, in read order.
    pub fn leaves(&self) -> Vec<&ResultNode> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves<'a>(&'a self, out: &mut Vec<&'a ResultNode>) {
        match self.kind {
            ResultKind::Field => out.push(self),
            ResultKind::Domain => {
                for child in &self.children {
                    child.collect_leaves(out);
                }
            }
        }
    }
}

/// Everything a run produced.
#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    /// One tree per executed domain, in table order.
    pub roots: Vec<ResultNode>,
    /// Output of `print`/`println`, in execution order.
    pub printed_output: String,
    /// Final cursor positions, summed over executed domains.
    pub bits_consumed: u64,
    /// Stream sizes, summed over executed domains.
    pub stream_bits: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExecErrorKind {
    Stream(BitstreamError),
    UnboundVariable { name: String },
    TypeError { detail: String },
    DivisionByZero,
    Arithmetic { detail: String },
    InvalidBinding { name: String, detail: String },
    LoopLimitExceeded { limit: u64 },
    DepthLimit,
}

impl fmt::Display for ExecErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExecErrorKind::Stream(e) => write!(f, "{e}"),
            ExecErrorKind::UnboundVariable { name } => {
                write!(f, "variable `%{name}` is not defined")
            }
            ExecErrorKind::TypeError { detail } => write!(f, "type error: {detail}"),
            ExecErrorKind::DivisionByZero => write!(f, "division by zero"),
            ExecErrorKind::Arithmetic { detail } => write!(f, "{detail}"),
            ExecErrorKind::InvalidBinding { name, detail } => {
                write!(f, "invalid data binding for `${name}`: {detail}")
            }
            ExecErrorKind::LoopLimitExceeded { limit } => {
                write!(f, "loop iteration limit exceeded ({limit} iterations)")
            }
            ExecErrorKind::DepthLimit => write!(f, "structure nesting too deep"),
        }
    }
}

/// Runtime failure, with the structure instantiation path and source
/// position when known.
#[derive(Debug, Clone, PartialEq)]
pub struct ExecError {
    pub kind: ExecErrorKind,
    pub span: Option<SourceSpan>,
    pub domain_path: Vec<String>,
}

impl fmt::Display for ExecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)?;
        if !self.domain_path.is_empty() {
            let path: Vec<String> = self.domain_path.iter().map(|n| format!("${n}")).collect();
            write!(f, " (in {})", path.join(" -> "))?;
        }
        if let Some(span) = self.span {
            write!(f, " at {span}")?;
        }
        Ok(())
    }
}

impl std::error::Error for ExecError {}

/// Knobs for one run.
#[derive(Debug, Clone)]
pub struct ExecOptions {
    /// Replaces the first executed domain's bound data.
    pub data_override: Option<BitSource>,
    /// Base directory for relative `getFile` paths.
    pub file_base: Option<PathBuf>,
    /// Total loop iterations allowed across the whole run.
    pub loop_limit: u64,
}

impl Default for ExecOptions {
    fn default() -> Self {
        ExecOptions {
            data_override: None,
            file_base: None,
            loop_limit: 10_000_000,
        }
    }
}

const MAX_DOMAIN_DEPTH: usize = 500;

type Env = HashMap<String, Value>;

/// Runs every executable domain in the table and collects the results.
pub fn execute(table: &DomainTable, opts: &ExecOptions) -> Result<RunReport, ExecError> {
    let mut exec = Executor {
        table,
        opts,
        output: String::new(),
        path: Vec::new(),
        loop_ticks: 0,
    };
    let mut roots = Vec::new();
    let mut bits_consumed = 0;
    let mut stream_bits = 0;
    for (index, entry) in table.executable_roots().into_iter().enumerate() {
        let binding = entry.binding.as_ref().unwrap();
        let source = match (&opts.data_override, index) {
            (Some(source), 0) => source.clone(),
            _ => source_from_binding(binding, opts)?,
        };
        let def = entry.def.clone().unwrap();
        let mut cursor = BitCursor::new(&source);
        let node = exec.exec_domain(&entry.name, &def, &mut cursor)?;
        bits_consumed += cursor.position();
        stream_bits += source.total_bits();
        roots.push(node);
    }
    Ok(RunReport {
        roots,
        printed_output: exec.output,
        bits_consumed,
        stream_bits,
    })
}

/// Materializes a binding's data: a hex literal's exact digits, or a file.
fn source_from_binding(
    binding: &DomainBinding,
    opts: &ExecOptions,
) -> Result<BitSource, ExecError> {
    let invalid = |detail: &str| ExecError {
        kind: ExecErrorKind::InvalidBinding {
            name: binding.domain_name.clone(),
            detail: detail.into(),
        },
        span: Some(binding.init.span),
        domain_path: vec![binding.domain_name.clone()],
    };
    match &binding.init.kind {
        ExprKind::UIntLit { value, hex_digits } => {
            if *hex_digits == 0 {
                return Err(invalid(
                    "data must be written as a hex literal so its bit width is explicit",
                ));
            }
            Ok(BitSource::from_u64_hex(*value, *hex_digits))
        }
        ExprKind::GetFile(path) => {
            let mut resolved = PathBuf::from(path);
            if resolved.is_relative() {
                if let Some(base) = &opts.file_base {
                    resolved = base.join(resolved);
                }
            }
            BitSource::from_file(&resolved).map_err(|e| ExecError {
                kind: ExecErrorKind::Stream(e),
                span: Some(binding.init.span),
                domain_path: vec![binding.domain_name.clone()],
            })
        }
        _ => Err(invalid("data must be a hex literal or a getFile command")),
    }
}

struct Executor<'t> {
    table: &'t DomainTable,
    opts: &'t ExecOptions,
    output: String,
    path: Vec<String>,
    loop_ticks: u64,
}

impl Executor<'_> {
    fn fail(&self, kind: ExecErrorKind, span: Option<SourceSpan>) -> ExecError {
        ExecError {
            kind,
            span,
            domain_path: self.path.clone(),
        }
    }

    fn tick(&mut self, span: SourceSpan) -> Result<(), ExecError> {
        self.loop_ticks += 1;
        if self.loop_ticks > self.opts.loop_limit {
            return Err(self.fail(
                ExecErrorKind::LoopLimitExceeded {
                    limit: self.opts.loop_limit,
                },
                Some(span),
            ));
        }
        Ok(())
    }

    fn exec_domain(
        &mut self,
        instance: &str,
        def: &DomainDef,
        cursor: &mut BitCursor,
    ) -> Result<ResultNode, ExecError> {
        if self.path.len() >= MAX_DOMAIN_DEPTH {
            return Err(self.fail(ExecErrorKind::DepthLimit, Some(def.span)));
        }
        self.path.push(def.domain_name.clone());
        let result = self.exec_domain_inner(instance, def, cursor);
        self.path.pop();
        result
    }

    fn exec_domain_inner(
        &mut self,
        instance: &str,
        def: &DomainDef,
        cursor: &mut BitCursor,
    ) -> Result<ResultNode, ExecError> {
        let mut env = Env::new();
        let entry_offset = cursor.position();
        let mut children = Vec::new();
        for item in &def.body {
            match item {
                BodyItem::Field(field) => {
                    self.exec_field(field, &mut env, cursor, &mut children)?
                }
                BodyItem::Inline(stmt) => self.exec_stmt(stmt, &mut env, cursor)?,
            }
        }
        if let Some(stmts) = &def.where_block {
            for stmt in stmts {
                self.exec_stmt(stmt, &mut env, cursor)?;
            }
        }
        let width_bits = children.iter().map(|c| c.width_bits).sum();
        let offset_bits = children
            .first()
            .map(|c| c.offset_bits)
            .unwrap_or(entry_offset);
        Ok(ResultNode {
            name: instance.to_owned(),
            kind: ResultKind::Domain,
            value: None,
            offset_bits,
            width_bits,
            children,
            source_domain: Some(def.domain_name.clone()),
        })
    }

    /// A field statement either reads bits into the result tree, descends
    /// into a linked structure, or just derives a value.
    fn exec_field(
        &mut self,
        field: &FieldStmt,
        env: &mut Env,
        cursor: &mut BitCursor,
        children: &mut Vec<ResultNode>,
    ) -> Result<(), ExecError> {
        match &field.rvalue.kind {
            ExprKind::DomainRef(target) => {
                // existence and definedness were checked during analysis
                let def = self.table.get(target).unwrap().def.clone().unwrap();
                let node = self.exec_domain(&field.subdomain_name, &def, cursor)?;
                env.insert(
                    field.subdomain_name.clone(),
                    Value::StructRef(Rc::new(node.clone())),
                );
                children.push(node);
            }
            ExprKind::Read(cmd) if !cmd.verb.is_peek() => {
                let bits = self.run_read(cmd, env, cursor)?;
                let value = bits_to_value(&bits);
                children.push(ResultNode {
                    name: field.subdomain_name.clone(),
                    kind: ResultKind::Field,
                    value: Some(value.clone()),
                    offset_bits: bits.offset_bits,
                    width_bits: bits.width_bits,
                    children: Vec::new(),
                    source_domain: None,
                });
                env.insert(field.subdomain_name.clone(), value);
            }
            _ => {
                // peeks and derived values bind the name without adding to
                // the result tree
                let value = self.eval(&field.rvalue, env, cursor)?;
                env.insert(field.subdomain_name.clone(), value);
            }
        }
        Ok(())
    }

    fn exec_block(
        &mut self,
        block: &[Stmt],
        env: &mut Env,
        cursor: &mut BitCursor,
    ) -> Result<(), ExecError> {
        for stmt in block {
            self.exec_stmt(stmt, env, cursor)?;
        }
        Ok(())
    }

    fn exec_stmt(
        &mut self,
        stmt: &Stmt,
        env: &mut Env,
        cursor: &mut BitCursor,
    ) -> Result<(), ExecError> {
        match &stmt.kind {
            StmtKind::Print { args, newline } => {
                for arg in args {
                    let value = self.eval(arg, env, cursor)?;
                    self.output.push_str(&value.to_string());
                }
                if *newline {
                    self.output.push('\n');
                }
            }
            StmtKind::If {
                cond,
                then_block,
                else_block,
            } => {
                let value = self.eval(cond, env, cursor)?;
                if self.truthy(&value, cond.span)? {
                    self.exec_block(then_block, env, cursor)?;
                } else if let Some(block) = else_block {
                    self.exec_block(block, env, cursor)?;
                }
            }
            StmtKind::Switch {
                scrutinee,
                cases,
                default_block,
            } => {
                let subject = self.eval(scrutinee, env, cursor)?;
                let mut matched = false;
                for case in cases {
                    if !matched {
                        let label = self.eval(&case.value, env, cursor)?;
                        matched = self.values_equal(&subject, &label, case.value.span)?;
                    }
                    if matched {
                        self.exec_block(&case.block, env, cursor)?;
                        if case.has_break {
                            return Ok(());
                        }
                    }
                }
                // here on fallthrough past the last case or on no match;
                // both run the default clause
                if let Some(block) = default_block {
                    self.exec_block(block, env, cursor)?;
                }
            }
            StmtKind::While { cond, block } => loop {
                let value = self.eval(cond, env, cursor)?;
                if !self.truthy(&value, cond.span)? {
                    break;
                }
                self.exec_block(block, env, cursor)?;
                self.tick(stmt.span)?;
            },
            StmtKind::DoWhile { block, cond } => loop {
                self.exec_block(block, env, cursor)?;
                let value = self.eval(cond, env, cursor)?;
                if !self.truthy(&value, cond.span)? {
                    break;
                }
                self.tick(stmt.span)?;
            },
            StmtKind::For {
                init,
                cond,
                step,
                block,
            } => {
                if let Some(init) = init {
                    self.exec_stmt(init, env, cursor)?;
                }
                loop {
                    if let Some(cond) = cond {
                        let value = self.eval(cond, env, cursor)?;
                        if !self.truthy(&value, cond.span)? {
                            break;
                        }
                    }
                    self.exec_block(block, env, cursor)?;
                    if let Some(step) = step {
                        self.exec_stmt(step, env, cursor)?;
                    }
                    self.tick(stmt.span)?;
                }
            }
            StmtKind::Assign {
                subdomain_name,
                expr,
            } => {
                let value = self.eval(expr, env, cursor)?;
                env.insert(subdomain_name.clone(), value);
            }
            StmtKind::ExprStmt(expr) => {
                self.eval(expr, env, cursor)?;
            }
        }
        Ok(())
    }

    fn eval(
        &mut self,
        expr: &Expr,
        env: &mut Env,
        cursor: &mut BitCursor,
    ) -> Result<Value, ExecError> {
        match &expr.kind {
            ExprKind::UIntLit { value, .. } => Ok(Value::UInt(*value)),
            ExprKind::RealLit(value) => Ok(Value::Real(*value)),
            ExprKind::StringLit(text) => Ok(Value::Str(text.clone())),
            ExprKind::SubDomainRef(name) => env.get(name).cloned().ok_or_else(|| {
                self.fail(
                    ExecErrorKind::UnboundVariable { name: name.clone() },
                    Some(expr.span),
                )
            }),
            ExprKind::Unary { op, operand } => {
                let value = self.eval(operand, env, cursor)?;
                match op {
                    UnaryOp::Not => Ok(Value::Bool(!self.truthy(&value, expr.span)?)),
                    UnaryOp::Neg => match value {
                        Value::Real(r) => Ok(Value::Real(-r)),
                        other => Err(self.type_error(
                            format!("cannot negate a {}", other.kind_name()),
                            expr.span,
                        )),
                    },
                }
            }
            ExprKind::Binary { op, lhs, rhs } => self.eval_binary(*op, lhs, rhs, env, cursor),
            ExprKind::Read(cmd) => {
                let bits = self.run_read(cmd, env, cursor)?;
                Ok(bits_to_value(&bits))
            }
            ExprKind::DomainRef(_) | ExprKind::GetFile(_) => {
                Err(self.type_error("this expression is not usable as a value".into(), expr.span))
            }
        }
    }

    fn eval_binary(
        &mut self,
        op: BinaryOp,
        lhs: &Expr,
        rhs: &Expr,
        env: &mut Env,
        cursor: &mut BitCursor,
    ) -> Result<Value, ExecError> {
        // && and || short-circuit, skipping the right side entirely
        if matches!(op, BinaryOp::And | BinaryOp::Or) {
            let left = self.eval(lhs, env, cursor)?;
            let left_true = self.truthy(&left, lhs.span)?;
            return match (op, left_true) {
                (BinaryOp::And, false) => Ok(Value::Bool(false)),
                (BinaryOp::Or, true) => Ok(Value::Bool(true)),
                _ => {
                    let right = self.eval(rhs, env, cursor)?;
                    Ok(Value::Bool(self.truthy(&right, rhs.span)?))
                }
            };
        }
        let a = self.eval(lhs, env, cursor)?;
        let b = self.eval(rhs, env, cursor)?;
        let span = lhs.span;
        match op {
            BinaryOp::Eq => Ok(Value::Bool(self.values_equal(&a, &b, span)?)),
            BinaryOp::Ne => Ok(Value::Bool(!self.values_equal(&a, &b, span)?)),
            BinaryOp::Lt | BinaryOp::Le | BinaryOp::Gt | BinaryOp::Ge => {
                let ordering = match (&a, &b) {
                    (Value::UInt(x), Value::UInt(y)) => x.partial_cmp(y),
                    _ => match (as_f64(&a), as_f64(&b)) {
                        (Some(x), Some(y)) => x.partial_cmp(&y),
                        _ => {
                            return Err(self.type_error(
                                format!("cannot order {} and {}", a.kind_name(), b.kind_name()),
                                span,
                            ))
                        }
                    },
                };
                let ordering = ordering.ok_or_else(|| {
                    self.fail(
                        ExecErrorKind::Arithmetic {
                            detail: "comparison with a NaN value".into(),
                        },
                        Some(span),
                    )
                })?;
                Ok(Value::Bool(match op {
                    BinaryOp::Lt => ordering.is_lt(),
                    BinaryOp::Le => ordering.is_le(),
                    BinaryOp::Gt => ordering.is_gt(),
                    BinaryOp::Ge => ordering.is_ge(),
                    _ => unreachable!(),
                }))
            }
            BinaryOp::Add | BinaryOp::Sub | BinaryOp::Mul | BinaryOp::Div | BinaryOp::Rem => {
                self.arith(op, &a, &b, span)
            }
            BinaryOp::And | BinaryOp::Or => unreachable!(),
        }
    }

    fn arith(
        &self,
        op: BinaryOp,
        a: &Value,
        b: &Value,
        span: SourceSpan,
    ) -> Result<Value, ExecError> {
        if let (Value::UInt(x), Value::UInt(y)) = (a, b) {
            let result = match op {
                BinaryOp::Add => x.checked_add(*y).ok_or("unsigned addition overflowed"),
                BinaryOp::Sub => x
                    .checked_sub(*y)
                    .ok_or("unsigned subtraction went below zero"),
                BinaryOp::Mul => x
                    .checked_mul(*y)
                    .ok_or("unsigned multiplication overflowed"),
                BinaryOp::Div if *y == 0 => {
                    return Err(self.fail(ExecErrorKind::DivisionByZero, Some(span)))
                }
                BinaryOp::Div => Ok(x / y),
                BinaryOp::Rem if *y == 0 => {
                    return Err(self.fail(ExecErrorKind::DivisionByZero, Some(span)))
                }
                BinaryOp::Rem => Ok(x % y),
                _ => unreachable!(),
            };
            return result.map(Value::UInt).map_err(|detail| {
                self.fail(
                    ExecErrorKind::Arithmetic {
                        detail: detail.into(),
                    },
                    Some(span),
                )
            });
        }
        match (as_f64(a), as_f64(b)) {
            (Some(x), Some(y)) => {
                if matches!(op, BinaryOp::Div | BinaryOp::Rem) && y == 0.0 {
                    return Err(self.fail(ExecErrorKind::DivisionByZero, Some(span)));
                }
                Ok(Value::Real(match op {
                    BinaryOp::Add => x + y,
                    BinaryOp::Sub => x - y,
                    BinaryOp::Mul => x * y,
                    BinaryOp::Div => x / y,
                    BinaryOp::Rem => x % y,
                    _ => unreachable!(),
                }))
            }
            _ => Err(self.type_error(
                format!(
                    "cannot apply `{}` to {} and {}",
                    op.symbol(),
                    a.kind_name(),
                    b.kind_name()
                ),
                span,
            )),
        }
    }

    fn values_equal(&self, a: &Value, b: &Value, span: SourceSpan) -> Result<bool, ExecError> {
        match (a, b) {
            (Value::UInt(x), Value::UInt(y)) => Ok(x == y),
            (Value::Str(x), Value::Str(y)) => Ok(x == y),
            (Value::Bytes(x), Value::Bytes(y)) => Ok(x == y),
            (Value::Bool(x), Value::Bool(y)) => Ok(x == y),
            (Value::Real(_) | Value::UInt(_), Value::Real(_) | Value::UInt(_)) => {
                Ok(as_f64(a) == as_f64(b))
            }
            _ => Err(self.type_error(
                format!("cannot compare {} with {}", a.kind_name(), b.kind_name()),
                span,
            )),
        }
    }

    fn truthy(&self, value: &Value, span: SourceSpan) -> Result<bool, ExecError> {
        match value {
            Value::Bool(b) => Ok(*b),
            Value::UInt(v) => Ok(*v != 0),
            Value::Real(v) => Ok(*v != 0.0),
            other => Err(self.type_error(
                format!("a {} is not usable as a condition", other.kind_name()),
                span,
            )),
        }
    }

    fn type_error(&self, detail: String, span: SourceSpan) -> ExecError {
        self.fail(ExecErrorKind::TypeError { detail }, Some(span))
    }

    /// Evaluates a read command's operands and performs the read or peek.
    fn run_read(
        &mut self,
        cmd: &ReadCommand,
        env: &mut Env,
        cursor: &mut BitCursor,
    ) -> Result<FieldBits, ExecError> {
        let operand =
            |exec: &mut Self, expr: &Expr, what: &str, env: &mut Env, cursor: &mut BitCursor| {
                let value = exec.eval(expr, env, cursor)?;
                match value {
                    Value::UInt(v) => Ok(v),
                    other => Err(exec.type_error(
                        format!(
                            "the {what} of a read command must be an unsigned integer, not a {}",
                            other.kind_name()
                        ),
                        expr.span,
                    )),
                }
            };
        let peek = cmd.verb.is_peek();
        let result = match (&cmd.form, cmd.verb.is_byte_unit()) {
            (ReadForm::Count(count), false) => {
                let n = match count {
                    Some(c) => operand(self, c, "count", env, cursor)?,
                    None => 1,
                };
                if peek {
                    cursor.peek_bits(n)
                } else {
                    cursor.read_bits(n)
                }
            }
            (ReadForm::Count(count), true) => {
                let n = match count {
                    Some(c) => operand(self, c, "count", env, cursor)?,
                    None => 1,
                };
                if peek {
                    cursor.peek_bytes(n)
                } else {
                    cursor.read_bytes(n)
                }
            }
            (ReadForm::At { position, count }, false) => {
                let p = operand(self, position, "position", env, cursor)?;
                let n = match count {
                    Some(c) => operand(self, c, "count", env, cursor)?,
                    None => 1,
                };
                if peek {
                    cursor.peek_bits_at(p, n)
                } else {
                    cursor.read_bits_at(p, n)
                }
            }
            (ReadForm::Range { start, stop }, false) => {
                let s = operand(self, start, "range start", env, cursor)?;
                let t = operand(self, stop, "range stop", env, cursor)?;
                if peek {
                    cursor.peek_range(s, t)
                } else {
                    cursor.read_range(s, t)
                }
            }
            // the parser rejects positioned forms for byte verbs
            (ReadForm::At { .. } | ReadForm::Range { .. }, true) => unreachable!(),
        };
        result.map_err(|e| self.fail(ExecErrorKind::Stream(e), Some(cmd.span)))
    }
}

fn bits_to_value(bits: &FieldBits) -> Value {
    match &bits.value {
        BitsValue::UInt(v) => Value::UInt(*v),
        BitsValue::Bytes(b) => Value::Bytes(b.clone()),
    }
}

fn as_f64(value: &Value) -> Option<f64> {
    match value {
        Value::UInt(v) => Some(*v as f64),
        Value::Real(v) => Some(*v),
        _ => None,
    }
}
