//! Interpreter for DFSL, a scripting language that describes the physical
//! bit-level layout of binary data streams.
//!
//! A script names *domains* (`$name`) and gives each a structure of
//! *sub-domains* (`%name`) read in physical order, plus optional
//! interpretation logic. Given a data binding — a hex literal or a file —
//! the interpreter extracts the described bit fields, runs the script's
//! statements, and renders the parsed structure as text and XML.
//!
//! ```
//! let script = r#"
//!     $PMD3 = 0x9351;
//!     $PMD3 := {
//!       %TxPowerValue = getBit 15 ~ 11;
//!       %TxPowerMode  = getBit 10 ~ 9;
//!     };
//! "#;
//! let ast = dfsl::frontend::parse_source(script).unwrap();
//! let table = dfsl::semantics::analyze(&ast).unwrap();
//! let report = dfsl::interpreter::execute(&table, &Default::default()).unwrap();
//! let first = report.roots[0].leaves()[0].clone();
//! assert_eq!(first.value, Some(dfsl::interpreter::Value::UInt(18)));
//! ```
//!
//! The pipeline has four stages, one module each: [`frontend`] turns text
//! into an AST, [`semantics`] builds the domain table and size annotations,
//! [`interpreter`] executes reads over a [`bitstream::BitCursor`], and
//! [`emitter`] renders the result. [`cli`] wires them into the `dfsl`
//! binary.

pub mod bitstream;
pub mod cli;
pub mod emitter;
pub mod frontend;
pub mod interpreter;
pub mod semantics;
pub mod span;

pub use bitstream::{BitCursor, BitSource, BitstreamError};
pub use emitter::{
    report_field_tuples, to_text, to_xml, validate_xml, xml_field_tuples, FieldTuple,
};
pub use frontend::{parse_source, FrontendError};
pub use interpreter::{execute, ExecError, ExecOptions, ResultNode, RunReport, Value};
pub use semantics::{analyze, DomainTable, SemanticError, SizeAnnotation};
pub use span::SourceSpan;
