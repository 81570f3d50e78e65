//! Full frontend over arbitrary text: errors are fine, panics are not.

#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(source) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(ast) = dfsl::frontend::parse_source(source) {
        // Whatever parses must also survive analysis (errors allowed).
        let _ = dfsl::semantics::analyze(&ast);
    }
});
