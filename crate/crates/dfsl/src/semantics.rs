//! Static analysis over a parsed script: the domain table, link validation,
//! cycle rejection, size propagation and structure elaboration.

use std::collections::HashMap;
use std::rc::Rc;

use indexmap::IndexMap;

use crate::frontend::ast::*;
use crate::span::SourceSpan;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SemanticError {
    #[error("structure `${name}` is defined more than once")]
    DuplicateDefinition { name: String, span: SourceSpan },
    #[error("field `%{field}` of `${domain}` links to `${name}`, which has no definition")]
    UnresolvedDomain {
        name: String,
        domain: String,
        field: String,
        span: SourceSpan,
    },
    #[error("structure links form a cycle: {}", render_cycle(path))]
    CycleDetected { path: Vec<String> },
}

fn render_cycle(path: &[String]) -> String {
    path.iter()
        .map(|n| format!("${n}"))
        .collect::<Vec<_>>()
        .join(" -> ")
}

/// Whether a structure consumes a statically known number of bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SizeAnnotation {
    Fixed(u64),
    #[default]
    Dynamic,
}

impl SizeAnnotation {
    pub fn fixed_bits(self) -> Option<u64> {
        match self {
            SizeAnnotation::Fixed(n) => Some(n),
            SizeAnnotation::Dynamic => None,
        }
    }
}

/// Everything known about one domain name.
#[derive(Debug, Clone)]
pub struct DomainEntry {
    pub name: String,
    /// Last data binding in script order, if any (later bindings replace
    /// earlier ones).
    pub binding: Option<Rc<DomainBinding>>,
    pub def: Option<Rc<DomainDef>>,
    pub size: SizeAnnotation,
}

/// Domain entries in first-occurrence order.
#[derive(Debug, Clone, Default)]
pub struct DomainTable {
    entries: IndexMap<String, DomainEntry>,
}

impl DomainTable {
    pub fn get(&self, name: &str) -> Option<&DomainEntry> {
        self.entries.get(name)
    }

    pub fn entries(&self) -> impl Iterator<Item = &DomainEntry> {
        self.entries.values()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Domains that both carry data and have a structure, in table order;
    /// these are the ones a run executes.
    pub fn executable_roots(&self) -> Vec<&DomainEntry> {
        self.entries
            .values()
            .filter(|e| e.binding.is_some() && e.def.is_some())
            .collect()
    }

    fn entry_mut(&mut self, name: &str) -> &mut DomainEntry {
        self.entries
            .entry(name.to_owned())
            .or_insert_with(|| DomainEntry {
                name: name.to_owned(),
                binding: None,
                def: None,
                size: SizeAnnotation::default(),
            })
    }
}

/// Builds and fully analyzes the domain table: duplicate and link checks,
/// cycle rejection, then size propagation.
pub fn analyze(ast: &ScriptAst) -> Result<DomainTable, SemanticError> {
    let mut table = build_table(ast)?;
    validate_links(&table)?;
    let order = check_cycles(&table)?;
    compute_sizes(&mut table, &order);
    Ok(table)
}

/// Collects bindings and definitions. Later bindings replace earlier ones;
/// a second definition for the same name is an error.
pub fn build_table(ast: &ScriptAst) -> Result<DomainTable, SemanticError> {
    let mut table = DomainTable::default();
    for item in &ast.items {
        match item {
            TopLevelItem::Binding(b) => {
                table.entry_mut(&b.domain_name).binding = Some(Rc::new(b.clone()));
            }
            TopLevelItem::Def(d) => {
                let entry = table.entry_mut(&d.domain_name);
                if entry.def.is_some() {
                    return Err(SemanticError::DuplicateDefinition {
                        name: d.domain_name.clone(),
                        span: d.span,
                    });
                }
                entry.def = Some(Rc::new(d.clone()));
            }
        }
    }
    Ok(table)
}

/// Every `%field = $domain` link must target a defined structure.
pub fn validate_links(table: &DomainTable) -> Result<(), SemanticError> {
    for entry in table.entries() {
        let Some(def) = &entry.def else { continue };
        for item in &def.body {
            let BodyItem::Field(field) = item else {
                continue;
            };
            let ExprKind::DomainRef(target) = &field.rvalue.kind else {
                continue;
            };
            let defined = table.get(target).is_some_and(|e| e.def.is_some());
            if !defined {
                return Err(SemanticError::UnresolvedDomain {
                    name: target.clone(),
                    domain: entry.name.clone(),
                    field: field.subdomain_name.clone(),
                    span: field.rvalue.span,
                });
            }
        }
    }
    Ok(())
}

fn links_of(def: &DomainDef) -> impl Iterator<Item = &str> {
    def.body.iter().filter_map(|item| match item {
        BodyItem::Field(f) => match &f.rvalue.kind {
            ExprKind::DomainRef(name) => Some(name.as_str()),
            _ => None,
        },
        BodyItem::Inline(_) => None,
    })
}

/// Rejects cyclic link graphs; on success returns definition names in
/// dependency order (linked structures before the structures using them).
pub fn check_cycles(table: &DomainTable) -> Result<Vec<String>, SemanticError> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        InProgress,
        Done,
    }
    let graph: HashMap<&str, Vec<&str>> = table
        .entries()
        .filter_map(|e| e.def.as_deref().map(|d| (e.name.as_str(), d)))
        .map(|(name, def)| (name, links_of(def).collect()))
        .collect();
    let mut marks: HashMap<&str, Mark> = HashMap::new();
    let mut order = Vec::new();
    for root in graph.keys() {
        if marks.contains_key(root) {
            continue;
        }
        let mut stack: Vec<(&str, usize)> = vec![(root, 0)];
        marks.insert(root, Mark::InProgress);
        while let Some((name, idx)) = stack.last_mut() {
            let links = &graph[*name];
            if let Some(&next) = links.get(*idx) {
                *idx += 1;
                match marks.get(next) {
                    None => {
                        marks.insert(next, Mark::InProgress);
                        stack.push((next, 0));
                    }
                    Some(Mark::InProgress) => {
                        let from = stack.iter().position(|(n, _)| *n == next).unwrap();
                        let mut path: Vec<String> =
                            stack[from..].iter().map(|(n, _)| n.to_string()).collect();
                        path.push(next.to_string());
                        return Err(SemanticError::CycleDetected { path });
                    }
                    Some(Mark::Done) => {}
                }
            } else {
                marks.insert(name, Mark::Done);
                order.push(name.to_string());
                stack.pop();
            }
        }
    }
    Ok(order)
}

/// Constant folding for read-command operands: unsigned literals combined
/// with `+ - * / %`. Anything else is not a constant.
pub fn const_eval(expr: &Expr) -> Option<u64> {
    match &expr.kind {
        ExprKind::UIntLit { value, .. } => Some(*value),
        ExprKind::Binary { op, lhs, rhs } => {
            let a = const_eval(lhs)?;
            let b = const_eval(rhs)?;
            match op {
                BinaryOp::Add => a.checked_add(b),
                BinaryOp::Sub => a.checked_sub(b),
                BinaryOp::Mul => a.checked_mul(b),
                BinaryOp::Div => a.checked_div(b),
                BinaryOp::Rem => a.checked_rem(b),
                _ => None,
            }
        }
        _ => None,
    }
}

/// Bits a direct read command consumes, when statically known. Peeking
/// verbs consume nothing; a missing count means one unit.
fn read_width(cmd: &ReadCommand) -> Option<u64> {
    if cmd.verb.is_peek() {
        return Some(0);
    }
    let unit = if cmd.verb.is_byte_unit() { 8 } else { 1 };
    match &cmd.form {
        ReadForm::Count(None) => Some(unit),
        ReadForm::Count(Some(count)) => const_eval(count)?.checked_mul(unit),
        ReadForm::At { count, .. } => match count {
            None => Some(1),
            Some(c) => const_eval(c),
        },
        ReadForm::Range { start, stop } => {
            let s = const_eval(start)?;
            let t = const_eval(stop)?;
            (s >= t).then(|| s - t + 1)
        }
    }
}

fn expr_consumes(expr: &Expr) -> bool {
    match &expr.kind {
        ExprKind::Read(cmd) => !cmd.verb.is_peek(),
        ExprKind::Binary { lhs, rhs, .. } => expr_consumes(lhs) || expr_consumes(rhs),
        ExprKind::Unary { operand, .. } => expr_consumes(operand),
        _ => false,
    }
}

fn stmt_consumes(stmt: &Stmt) -> bool {
    let block_consumes = |block: &[Stmt]| block.iter().any(stmt_consumes);
    match &stmt.kind {
        StmtKind::Print { args, .. } => args.iter().any(expr_consumes),
        StmtKind::If {
            cond,
            then_block,
            else_block,
        } => {
            expr_consumes(cond)
                || block_consumes(then_block)
                || else_block.as_deref().is_some_and(block_consumes)
        }
        StmtKind::Switch {
            scrutinee,
            cases,
            default_block,
        } => {
            expr_consumes(scrutinee)
                || cases
                    .iter()
                    .any(|c| expr_consumes(&c.value) || block_consumes(&c.block))
                || default_block.as_deref().is_some_and(block_consumes)
        }
        StmtKind::While { cond, block } | StmtKind::DoWhile { block, cond } => {
            expr_consumes(cond) || block_consumes(block)
        }
        StmtKind::For {
            init,
            cond,
            step,
            block,
        } => {
            init.as_deref().is_some_and(stmt_consumes)
                || cond.as_ref().is_some_and(expr_consumes)
                || step.as_deref().is_some_and(stmt_consumes)
                || block_consumes(block)
        }
        StmtKind::Assign { expr, .. } | StmtKind::ExprStmt(expr) => expr_consumes(expr),
    }
}

/// Fills in size annotations; `order` must list linked definitions before
/// their users, as produced by [`check_cycles`].
pub fn compute_sizes(table: &mut DomainTable, order: &[String]) {
    for name in order {
        let entry = &table.entries[name.as_str()];
        let Some(def) = entry.def.clone() else {
            continue;
        };
        let size = def_size(table, &def);
        table.entries[name.as_str()].size = size;
    }
}

fn def_size(table: &DomainTable, def: &DomainDef) -> SizeAnnotation {
    let mut total: u64 = 0;
    for item in &def.body {
        let width = match item {
            BodyItem::Field(field) => match &field.rvalue.kind {
                ExprKind::Read(cmd) => read_width(cmd),
                ExprKind::DomainRef(target) => table.get(target).unwrap().size.fixed_bits(),
                // computed field: fixed only while nothing inside consumes
                _ if !expr_consumes(&field.rvalue) => Some(0),
                _ => None,
            },
            BodyItem::Inline(stmt) if !stmt_consumes(stmt) => Some(0),
            BodyItem::Inline(_) => None,
        };
        match width.and_then(|w| total.checked_add(w)) {
            Some(new_total) => total = new_total,
            None => return SizeAnnotation::Dynamic,
        }
    }
    let where_consumes = def
        .where_block
        .as_deref()
        .is_some_and(|stmts| stmts.iter().any(stmt_consumes));
    if where_consumes {
        return SizeAnnotation::Dynamic;
    }
    SizeAnnotation::Fixed(total)
}

// === elaboration ===

/// A definition with fixed-size links flattened into their field lists.
#[derive(Debug, Clone, PartialEq)]
pub struct ElaboratedDomain {
    pub name: String,
    pub size: SizeAnnotation,
    pub fields: Vec<ElaboratedField>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ElaboratedField {
    pub name: String,
    pub kind: ElaboratedFieldKind,
    /// Statically known bit width, when there is one.
    pub width: Option<u64>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ElaboratedFieldKind {
    /// Direct read command.
    Read,
    /// Derived value; consumes nothing.
    Computed,
    /// Fixed-size link, flattened.
    Inlined {
        domain: String,
        children: Vec<ElaboratedField>,
    },
    /// Link left opaque: dynamically sized (or too deep to flatten).
    Link { domain: String },
}

/// Depth at which flattening stops and leaves a plain link instead.
const MAX_INLINE_DEPTH: u32 = 500;

/// Flattens `name`'s structure; `None` when it has no definition.
pub fn elaborate(table: &DomainTable, name: &str) -> Option<ElaboratedDomain> {
    let entry = table.get(name)?;
    let def = entry.def.as_deref()?;
    Some(ElaboratedDomain {
        name: entry.name.clone(),
        size: entry.size,
        fields: elaborate_fields(table, def, 0),
    })
}

fn elaborate_fields(table: &DomainTable, def: &DomainDef, depth: u32) -> Vec<ElaboratedField> {
    let mut fields = Vec::new();
    for item in &def.body {
        let BodyItem::Field(field) = item else {
            continue;
        };
        let elaborated = match &field.rvalue.kind {
            ExprKind::Read(cmd) => ElaboratedField {
                name: field.subdomain_name.clone(),
                kind: ElaboratedFieldKind::Read,
                width: read_width(cmd),
            },
            ExprKind::DomainRef(target) => {
                let target_entry = table.get(target).unwrap();
                match target_entry.size {
                    SizeAnnotation::Fixed(bits) if depth < MAX_INLINE_DEPTH => ElaboratedField {
                        name: field.subdomain_name.clone(),
                        kind: ElaboratedFieldKind::Inlined {
                            domain: target.clone(),
                            children: elaborate_fields(
                                table,
                                target_entry.def.as_deref().unwrap(),
                                depth + 1,
                            ),
                        },
                        width: Some(bits),
                    },
                    _ => ElaboratedField {
                        name: field.subdomain_name.clone(),
                        kind: ElaboratedFieldKind::Link {
                            domain: target.clone(),
                        },
                        width: target_entry.size.fixed_bits(),
                    },
                }
            }
            _ => ElaboratedField {
                name: field.subdomain_name.clone(),
                kind: ElaboratedFieldKind::Computed,
                width: if expr_consumes(&field.rvalue) {
                    None
                } else {
                    Some(0)
                },
            },
        };
        fields.push(elaborated);
    }
    fields
}

/// Renders every definition's elaborated structure, for `--dump-fields`
/// style inspection of the table.
pub fn render_elaboration(table: &DomainTable) -> String {
    let mut out = String::new();
    for entry in table.entries() {
        if entry.def.is_none() {
            continue;
        }
        let domain = elaborate(table, &entry.name).unwrap();
        out.push_str(&format!(
            "${} [{}]\n",
            domain.name,
            render_size(domain.size)
        ));
        render_fields(&domain.fields, 1, &mut out);
    }
    out
}

fn render_size(size: SizeAnnotation) -> String {
    match size {
        SizeAnnotation::Fixed(bits) => format!("fixed, {bits} bits"),
        SizeAnnotation::Dynamic => "dynamic".into(),
    }
}

fn render_width(width: Option<u64>) -> String {
    match width {
        Some(bits) => format!("{bits} bits"),
        None => "? bits".into(),
    }
}

fn render_fields(fields: &[ElaboratedField], indent: usize, out: &mut String) {
    for field in fields {
        let pad = "  ".repeat(indent);
        match &field.kind {
            ElaboratedFieldKind::Read => {
                out.push_str(&format!(
                    "{pad}%{} = read [{}]\n",
                    field.name,
                    render_width(field.width)
                ));
            }
            ElaboratedFieldKind::Computed => {
                out.push_str(&format!(
                    "{pad}%{} = computed [{}]\n",
                    field.name,
                    render_width(field.width)
                ));
            }
            ElaboratedFieldKind::Inlined { domain, children } => {
                out.push_str(&format!(
                    "{pad}%{} = ${domain} [{}]\n",
                    field.name,
                    render_width(field.width)
                ));
                render_fields(children, indent + 1, out);
            }
            ElaboratedFieldKind::Link { domain } => {
                out.push_str(&format!(
                    "{pad}%{} = ${domain} [{}]\n",
                    field.name,
                    render_width(field.width)
                ));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::parse_source;

    fn analyzed(src: &str) -> DomainTable {
        analyze(&parse_source(src).unwrap()).unwrap()
    }

    fn size_of(table: &DomainTable, name: &str) -> SizeAnnotation {
        table.get(name).unwrap().size
    }

    const PMD: &str = r#"
        $PMD3 = 0x9351;
        $PMD3 := {
          %TxPowerValue = getBit 15 ~ 11;
          %TxPowerMode = getBit 10 ~ 9;
          %SBM = getBit @8, 1;
          %SUpstream = getBit @7, 1;
          %ChinaLoop = getBit @6, 1;
          %OLDisable = getBit @5, 1;
          %ROLDisable = getBit @4, 1;
          %HybridSelect = getBit @3, 4;
        };
    "#;

    const ICMP_DEFS: &str = r#"
        $ICMP_response = getFile < "icmp.dat">;
        $ICMP_response := {
          %Ether_header = $Ether_header;
          %IP_header = $IP_header;
          %ICMP_header = $ICMP_header;
        }
        $Ether_header := {
          %destination = $MAC_address;
          %source = $MAC_address;
          %type = getByte 2;
        }
        $MAC_address := {
          %vendor = getByte 3;
          %serialNumber = getByte 3;
        }
        $IP_header := {
          %version = getBit 4;
          %IHL = getBit 4;
          %TOS = getByte;
          %identification = getByte 2;
          %flag0 = getBit;
          %flag1 = getBit;
          %flag2 = getBit;
          %offset = getBit 13;
          %time2live = getByte;
          %protocol = getByte;
          %checksum = getByte 2;
          %source = $ipAddress;
          %destination = $ipAddress;
        }
        $ipAddress := {
          %first = getByte;
          %second = getByte;
          %third = getByte;
          %forth = getByte;
        }
        $ICMP_header := {
          %Type = getByte;
          %code = getByte;
          %checksum = getByte 2;
        }
    "#;

    #[test]
    fn pmd_register_is_fixed_16() {
        let table = analyzed(PMD);
        assert_eq!(size_of(&table, "pmd3"), SizeAnnotation::Fixed(16));
    }

    #[test]
    fn icmp_sizes_propagate_through_links() {
        let table = analyzed(ICMP_DEFS);
        assert_eq!(size_of(&table, "mac_address"), SizeAnnotation::Fixed(48));
        assert_eq!(size_of(&table, "ipaddress"), SizeAnnotation::Fixed(32));
        assert_eq!(size_of(&table, "ether_header"), SizeAnnotation::Fixed(112));
        assert_eq!(size_of(&table, "ip_header"), SizeAnnotation::Fixed(144));
        assert_eq!(size_of(&table, "icmp_header"), SizeAnnotation::Fixed(32));
        assert_eq!(size_of(&table, "icmp_response"), SizeAnnotation::Fixed(288));
    }

    #[test]
    fn count_from_variable_makes_size_dynamic() {
        let table =
            analyzed("$tlv := { %type = getBit 4; %len = getBit 4; %payload = getByte %len; };");
        assert_eq!(size_of(&table, "tlv"), SizeAnnotation::Dynamic);
    }

    #[test]
    fn dynamic_link_poisons_the_user() {
        let table = analyzed(
            "$inner := { %n = getByte %k; };
             $outer := { %a = getBit 8; %b = $inner; };",
        );
        assert_eq!(size_of(&table, "outer"), SizeAnnotation::Dynamic);
    }

    #[test]
    fn peeks_and_pure_computation_stay_fixed() {
        let table = analyzed(
            "$a := {
               %probe = seeBit 8;
               %x = getBit 8;
               %twice = %x * 2;
             } where {
               println(\"x = \", %x);
               if (seeBit 4 == 0) { println(\"pad\"); };
             };",
        );
        assert_eq!(size_of(&table, "a"), SizeAnnotation::Fixed(8));
    }

    #[test]
    fn consuming_read_in_where_block_is_dynamic() {
        let table = analyzed("$a := { %x = getBit 8; } where { %extra = getBit 4; };");
        assert_eq!(size_of(&table, "a"), SizeAnnotation::Dynamic);
    }

    #[test]
    fn consuming_read_in_inline_statement_is_dynamic() {
        let table = analyzed("$a := { %x = getBit 8; if (%x == 0) { %y = getBit 8; }; };");
        assert_eq!(size_of(&table, "a"), SizeAnnotation::Dynamic);
    }

    #[test]
    fn constant_expressions_fold_in_widths() {
        let table = analyzed("$a := { %x = getBit (2 + 3) * 4; };");
        assert_eq!(size_of(&table, "a"), SizeAnnotation::Fixed(20));
    }

    #[test]
    fn duplicate_definition_rejected() {
        let err = analyze(&parse_source("$a := { }; $a := { };").unwrap()).unwrap_err();
        assert!(matches!(err, SemanticError::DuplicateDefinition { ref name, .. } if name == "a"));
    }

    #[test]
    fn later_binding_wins() {
        let table = analyzed("$a = 0x01; $a = 0x02; $a := { %x = getBit 8; };");
        let binding = table.get("a").unwrap().binding.as_ref().unwrap();
        assert!(matches!(
            binding.init.kind,
            ExprKind::UIntLit { value: 2, .. }
        ));
    }

    #[test]
    fn unresolved_link_rejected() {
        let err = analyze(&parse_source("$a = 0x01; $a := { %x = $b; };").unwrap()).unwrap_err();
        match err {
            SemanticError::UnresolvedDomain {
                name,
                domain,
                field,
                ..
            } => {
                assert_eq!(name, "b");
                assert_eq!(domain, "a");
                assert_eq!(field, "x");
            }
            other => panic!("expected unresolved domain, got {other:?}"),
        }
        // a binding alone does not make a linkable structure
        let err = analyze(&parse_source("$b = 0x01; $a := { %x = $b; };").unwrap()).unwrap_err();
        assert!(matches!(err, SemanticError::UnresolvedDomain { .. }));
    }

    #[test]
    fn cycles_rejected() {
        let err = analyze(&parse_source("$a := { %x = $a; };").unwrap()).unwrap_err();
        assert!(
            matches!(err, SemanticError::CycleDetected { ref path } if path == &["a", "a"]),
            "{err:?}"
        );
        let err = analyze(
            &parse_source("$a := { %x = $b; }; $b := { %y = $c; }; $c := { %z = $a; };").unwrap(),
        )
        .unwrap_err();
        let SemanticError::CycleDetected { path } = err else {
            panic!("expected cycle");
        };
        assert_eq!(path.len(), 4);
        assert_eq!(path.first(), path.last());
    }

    #[test]
    fn executable_roots_follow_first_occurrence_order() {
        let table = analyzed(
            "$b = 0x01; $b := { %x = getBit 8; };
             $a = 0x02; $a := { %y = getBit 8; };
             $lib := { %z = getBit 8; };",
        );
        let roots: Vec<_> = table
            .executable_roots()
            .iter()
            .map(|e| e.name.as_str())
            .collect();
        assert_eq!(roots, vec!["b", "a"]);
    }

    #[test]
    fn elaboration_flattens_fixed_links() {
        let table = analyzed(ICMP_DEFS);
        let root = elaborate(&table, "icmp_response").unwrap();
        assert_eq!(root.size, SizeAnnotation::Fixed(288));
        assert_eq!(root.fields.len(), 3);
        let ElaboratedFieldKind::Inlined { domain, children } = &root.fields[0].kind else {
            panic!("expected inlined link");
        };
        assert_eq!(domain, "ether_header");
        assert_eq!(children.len(), 3);
        let ElaboratedFieldKind::Inlined { domain, children } = &children[0].kind else {
            panic!("expected nested inlined link");
        };
        assert_eq!(domain, "mac_address");
        assert_eq!(children[0].name, "vendor");
        assert_eq!(children[0].width, Some(24));
    }

    #[test]
    fn elaboration_leaves_dynamic_links_opaque() {
        let table = analyzed(
            "$inner := { %n = getByte %k; };
             $outer := { %b = $inner; };",
        );
        let outer = elaborate(&table, "outer").unwrap();
        assert!(matches!(
            outer.fields[0].kind,
            ElaboratedFieldKind::Link { .. }
        ));
    }

    #[test]
    fn rendering_mentions_sizes_and_nesting() {
        let table = analyzed(ICMP_DEFS);
        let text = render_elaboration(&table);
        assert!(text.contains("$icmp_response [fixed, 288 bits]"), "{text}");
        assert!(text.contains("      %vendor = read [24 bits]"), "{text}");
        assert!(text.contains("$mac_address [fixed, 48 bits]"), "{text}");
    }

    #[test]
    fn deep_link_chains_do_not_overflow() {
        let mut src = String::from("$d0 := { %x = getBit 1; };\n");
        for i in 1..=2000 {
            src.push_str(&format!("$d{i} := {{ %x = $d{} ; }};\n", i - 1));
        }
        let table = analyzed(&src);
        assert_eq!(size_of(&table, "d2000"), SizeAnnotation::Fixed(1));
        // flattening stops at the inline depth cap instead of recursing away
        let elaborated = elaborate(&table, "d2000").unwrap();
        assert_eq!(elaborated.size, SizeAnnotation::Fixed(1));
    }
}
