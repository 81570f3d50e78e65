//! Text and XML rendering of run results.
//!
//! The XML shape is a stable output contract:
//!
//! ```xml
//! <?xml version="1.0" encoding="UTF-8"?>
//! <dfsl-parse script="NAME" stream-bits="W">
//!   <domain name="...">
//!     <field name="..." offset="O" width="B" value="V"/>
//!     <domain name="...">...</domain>
//!   </domain>
//! </dfsl-parse>
//! ```
//!
//! Offsets are absolute bit offsets into the stream; values are decimal for
//! integer fields and `0x…` hex for byte-string fields; child order is read
//! order.

use crate::interpreter::{ResultKind, ResultNode, RunReport, Value};

/// Serializes a report as the `dfsl-parse` XML document.
pub fn to_xml(report: &RunReport, script_name: &str) -> String {
    let mut out = String::from("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    out.push_str(&format!(
        "<dfsl-parse script=\"{}\" stream-bits=\"{}\">\n",
        xml_escape(script_name),
        report.stream_bits
    ));
    for root in &report.roots {
        write_node(root, 1, &mut out);
    }
    out.push_str("</dfsl-parse>\n");
    out
}

fn write_node(node: &ResultNode, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match node.kind {
        ResultKind::Field => {
            out.push_str(&format!(
                "{pad}<field name=\"{}\" offset=\"{}\" width=\"{}\" value=\"{}\"/>\n",
                xml_escape(&node.name),
                node.offset_bits,
                node.width_bits,
                xml_escape(&field_value_text(node)),
            ));
        }
        ResultKind::Domain if node.children.is_empty() => {
            out.push_str(&format!(
                "{pad}<domain name=\"{}\"/>\n",
                xml_escape(&node.name)
            ));
        }
        ResultKind::Domain => {
            out.push_str(&format!(
                "{pad}<domain name=\"{}\">\n",
                xml_escape(&node.name)
            ));
            for child in &node.children {
                write_node(child, depth + 1, out);
            }
            out.push_str(&format!("{pad}</domain>\n"));
        }
    }
}

fn field_value_text(node: &ResultNode) -> String {
    match &node.value {
        Some(Value::UInt(v)) => v.to_string(),
        Some(Value::Bytes(bytes)) => {
            let mut text = String::from("0x");
            for b in bytes {
                text.push_str(&format!("{b:02x}"));
            }
            text
        }
        Some(other) => other.to_string(),
        None => String::new(),
    }
}

fn xml_escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for ch in text.chars() {
        match ch {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            _ => out.push(ch),
        }
    }
    out
}

/// Renders the captured print output, optionally followed by one
/// `name = value` line per leaf field in read order.
pub fn to_text(report: &RunReport, include_field_dump: bool) -> String {
    let mut out = report.printed_output.clone();
    if include_field_dump {
        for root in &report.roots {
            for leaf in root.leaves() {
                out.push_str(&format!("{} = {}\n", leaf.name, field_value_text(leaf)));
            }
        }
    }
    out
}

/// One `<field>` element's data, both as emitted and as read back.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldTuple {
    pub name: String,
    pub offset: u64,
    pub width: u64,
    pub value: String,
}

/// The report-side field tuples, for comparison against [`xml_field_tuples`].
pub fn report_field_tuples(report: &RunReport) -> Vec<FieldTuple> {
    report
        .roots
        .iter()
        .flat_map(|root| root.leaves())
        .map(|leaf| FieldTuple {
            name: leaf.name.clone(),
            offset: leaf.offset_bits,
            width: leaf.width_bits,
            value: field_value_text(leaf),
        })
        .collect()
}

const MAX_XML_DEPTH: usize = 1000;

/// Checks well-formedness plus the `dfsl-parse` schema: required attributes
/// present, integer attributes parseable, only known elements.
pub fn validate_xml(doc: &str) -> Result<(), String> {
    let tree = roxmltree::Document::parse(doc).map_err(|e| format!("not well-formed XML: {e}"))?;
    let root = tree.root_element();
    if root.tag_name().name() != "dfsl-parse" {
        return Err(format!(
            "root element must be dfsl-parse, found {}",
            root.tag_name().name()
        ));
    }
    if root.attribute("script").is_none() {
        return Err("dfsl-parse element is missing the script attribute".into());
    }
    uint_attribute(&root, "stream-bits")?;
    for child in root.children().filter(roxmltree::Node::is_element) {
        check_element(&child, 0)?;
    }
    Ok(())
}

fn check_element(node: &roxmltree::Node, depth: usize) -> Result<(), String> {
    if depth > MAX_XML_DEPTH {
        return Err("domain elements nest too deeply".into());
    }
    match node.tag_name().name() {
        "domain" => {
            if node.attribute("name").is_none() {
                return Err("domain element is missing the name attribute".into());
            }
            for child in node.children().filter(roxmltree::Node::is_element) {
                check_element(&child, depth + 1)?;
            }
            Ok(())
        }
        "field" => {
            let name = node
                .attribute("name")
                .ok_or("field element is missing the name attribute")?;
            uint_attribute(node, "offset")?;
            uint_attribute(node, "width")?;
            let value = node
                .attribute("value")
                .ok_or_else(|| format!("field `{name}` is missing the value attribute"))?;
            let valid_value = value.chars().all(|c| c.is_ascii_digit())
                || (value.len() > 2
                    && value.starts_with("0x")
                    && value[2..].chars().all(|c| c.is_ascii_hexdigit()));
            if value.is_empty() || !valid_value {
                return Err(format!(
                    "field `{name}` has a malformed value attribute: `{value}`"
                ));
            }
            if node.children().any(|c| c.is_element()) {
                return Err(format!("field `{name}` must be empty"));
            }
            Ok(())
        }
        other => Err(format!("unexpected element `{other}`")),
    }
}

fn uint_attribute(node: &roxmltree::Node, attr: &str) -> Result<u64, String> {
    let text = node.attribute(attr).ok_or_else(|| {
        format!(
            "{} element is missing the {attr} attribute",
            node.tag_name().name()
        )
    })?;
    text.parse::<u64>()
        .map_err(|_| format!("attribute {attr}=\"{text}\" is not an unsigned integer"))
}

/// Reads the `(name, offset, width, value)` tuples back out of a document,
/// depth-first — the inverse view of [`to_xml`] for round-trip checks.
pub fn xml_field_tuples(doc: &str) -> Result<Vec<FieldTuple>, String> {
    validate_xml(doc)?;
    let tree = roxmltree::Document::parse(doc).unwrap();
    let mut tuples = Vec::new();
    collect_fields(&tree.root_element(), &mut tuples);
    Ok(tuples)
}

fn collect_fields(node: &roxmltree::Node, out: &mut Vec<FieldTuple>) {
    for child in node.children().filter(roxmltree::Node::is_element) {
        if child.tag_name().name() == "field" {
            out.push(FieldTuple {
                name: child.attribute("name").unwrap().to_owned(),
                offset: child.attribute("offset").unwrap().parse().unwrap(),
                width: child.attribute("width").unwrap().parse().unwrap(),
                value: child.attribute("value").unwrap().to_owned(),
            });
        } else {
            collect_fields(&child, out);
        }
    }
}
