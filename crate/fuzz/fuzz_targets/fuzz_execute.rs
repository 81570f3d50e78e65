//! Whole pipeline on split fuzz input: a script plus a data stream. Any
//! outcome short of a panic or runaway loop is acceptable, and successful
//! runs must round-trip through the XML emitter.

#![no_main]

use libfuzzer_sys::fuzz_target;

use dfsl::{
    analyze, execute, parse_source, report_field_tuples, to_xml, validate_xml, xml_field_tuples,
    BitSource, ExecOptions,
};

fuzz_target!(|input: (&str, &[u8])| {
    let (script, data) = input;
    if script.len() > 4096 || data.len() > 1024 {
        return;
    }
    let Ok(ast) = parse_source(script) else {
        return;
    };
    // Never let fuzz input touch the real filesystem.
    let reads_files = ast.items.iter().any(|item| {
        matches!(
            item,
            dfsl::frontend::ast::TopLevelItem::Binding(b)
                if matches!(b.init.kind, dfsl::frontend::ast::ExprKind::GetFile(_))
        )
    });
    if reads_files {
        return;
    }
    let Ok(table) = analyze(&ast) else {
        return;
    };
    let opts = ExecOptions {
        data_override: Some(BitSource::from_bytes(data.to_vec())),
        file_base: None,
        loop_limit: 10_000,
    };
    let Ok(report) = execute(&table, &opts) else {
        return;
    };
    let xml = to_xml(&report, "fuzz");
    validate_xml(&xml).expect("emitted XML failed its own validator");
    let round_tripped = xml_field_tuples(&xml).expect("emitted XML lost its field tuples");
    assert_eq!(round_tripped, report_field_tuples(&report));
});
