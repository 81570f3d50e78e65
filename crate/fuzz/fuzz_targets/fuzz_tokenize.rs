//! The scanner must reject or accept any byte soup without panicking.

#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(source) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(tokens) = dfsl::frontend::tokenize(source) {
        // Rendered tokens must stay lexable: the scanner and the renderer
        // agree on what a lexeme looks like.
        let rendered = dfsl::frontend::render_tokens(&tokens);
        let again = dfsl::frontend::tokenize(&rendered)
            .expect("rendering valid tokens produced unlexable text");
        assert_eq!(tokens.len(), again.len());
    }
});
