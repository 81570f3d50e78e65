//! Cross-module properties: lexer/renderer agreement, case folding,
//! analysis determinism, and whole-pipeline reads against a per-bit
//! reference.

use proptest::prelude::*;

use dfsl::bitstream::BitSource;
use dfsl::frontend::{parse_source, render_tokens, tokenize, Token};
use dfsl::interpreter::{execute, ExecOptions, Value};
use dfsl::semantics::analyze;

/// The comparable part of a token: everything but its span.
fn spanless(t: &Token) -> impl PartialEq + std::fmt::Debug + '_ {
    (&t.kind, &t.text, &t.number_value, t.hex_digit_count)
}

fn word() -> impl Strategy<Value = String> {
    "[a-z][a-z0-9_]{0,8}"
}

fn lexeme() -> impl Strategy<Value = String> {
    prop_oneof![
        word(),
        word().prop_map(|w| format!("${w}")),
        word().prop_map(|w| format!("%{w}")),
        any::<u64>().prop_map(|n| n.to_string()),
        (1u32..=16, any::<u64>()).prop_map(|(d, v)| {
            let kept = if d == 16 { v } else { v & ((1 << (4 * d)) - 1) };
            format!("0x{kept:0w$x}", w = d as usize)
        }),
        (any::<u32>(), any::<u32>()).prop_map(|(a, b)| format!("{a}.{b}")),
        "[a-zA-Z0-9 _.,:!?+/-]{0,12}".prop_map(|s| format!("\"{s}\"")),
        prop::sample::select(vec![
            "==", "!=", "<=", ">=", "&&", "||", "<", ">", "+", "-", "*", "/", "%", "!", "~", "@",
            "=", ":=",
        ])
        .prop_map(str::to_string),
        prop::sample::select(vec![";", ",", ":", "(", ")", "{", "}"]).prop_map(str::to_string),
    ]
}

proptest! {
    /// Rendering a token stream and scanning it again is the identity,
    /// spans aside.
    #[test]
    fn tokens_survive_render_round_trip(lexemes in prop::collection::vec(lexeme(), 0..40)) {
        let source = lexemes.join(" ");
        let Ok(first) = tokenize(&source) else {
            // Junk-string lexemes can open an unterminated quote mid-soup;
            // only well-lexed inputs are in scope.
            return Ok(());
        };
        let rendered = render_tokens(&first);
        let second = tokenize(&rendered).expect("rendered tokens must re-lex");
        prop_assert_eq!(first.len(), second.len());
        for (a, b) in first.iter().zip(&second) {
            prop_assert_eq!(spanless(a), spanless(b));
        }
    }
}

/// A little structure generator: field widths for one domain.
fn field_widths() -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(1u64..=64, 1..8)
}

fn script_for_widths(widths: &[u64]) -> String {
    let mut body = String::new();
    for (i, w) in widths.iter().enumerate() {
        body.push_str(&format!("  %f{i} = getBit {w};\n"));
    }
    format!("$d = 0x00;\n$d := {{\n{body}}};\n")
}

fn bit_at(bytes: &[u8], offset: u64) -> u64 {
    ((bytes[(offset / 8) as usize] >> (7 - offset % 8)) & 1) as u64
}

fn fold_bits(bytes: &[u8], offset: u64, width: u64) -> u64 {
    (0..width).fold(0, |acc, k| (acc << 1) | bit_at(bytes, offset + k))
}

proptest! {
    /// ASCII case never changes what a script means.
    #[test]
    fn parsing_ignores_ascii_case(widths in field_widths(), seed in any::<u64>()) {
        // Splice some mixed-case noise into names and keywords.
        let script = script_for_widths(&widths)
            .replace("getBit", if seed % 2 == 0 { "GETBIT" } else { "GetBit" })
            .replace("$d", "$D");
        let upper = script.to_uppercase();
        let a = parse_source(&script).unwrap();
        let b = parse_source(&upper).unwrap();
        prop_assert_eq!(a, b);
    }

    /// Analysis is a pure function of the AST.
    #[test]
    fn analysis_is_deterministic(widths in field_widths()) {
        let script = script_for_widths(&widths);
        let ast = parse_source(&script).unwrap();
        let t1 = analyze(&ast).unwrap();
        let t2 = analyze(&ast).unwrap();
        let shape = |t: &dfsl::semantics::DomainTable| {
            t.entries().map(|e| (e.name.clone(), e.size)).collect::<Vec<_>>()
        };
        prop_assert_eq!(shape(&t1), shape(&t2));
        let total: u64 = widths.iter().sum();
        prop_assert_eq!(t1.get("d").unwrap().size.fixed_bits(), Some(total));
    }

    /// Every field a generated script extracts matches folding the stream
    /// one bit at a time.
    #[test]
    fn extraction_matches_per_bit_reference(
        widths in field_widths(),
        fill in prop::collection::vec(any::<u8>(), 64),
    ) {
        let total: u64 = widths.iter().sum();
        let nbytes = (total as usize).div_ceil(8);
        let bytes = fill[..nbytes].to_vec();

        let script = script_for_widths(&widths);
        let table = analyze(&parse_source(&script).unwrap()).unwrap();
        let opts = ExecOptions {
            data_override: Some(BitSource::from_bytes(bytes.clone())),
            ..Default::default()
        };
        let report = execute(&table, &opts).unwrap();

        let leaves: Vec<_> = report.roots.iter().flat_map(|r| r.leaves()).collect();
        prop_assert_eq!(leaves.len(), widths.len());
        let mut offset = 0;
        for (leaf, &w) in leaves.iter().zip(&widths) {
            prop_assert_eq!(leaf.offset_bits, offset);
            prop_assert_eq!(leaf.width_bits, w);
            prop_assert_eq!(&leaf.value, &Some(Value::UInt(fold_bits(&bytes, offset, w))));
            offset += w;
        }
        prop_assert_eq!(report.bits_consumed, total);
    }
}
