//! The XML validator sees attacker-controlled documents; it must only ever
//! return Ok or Err.

#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(doc) = std::str::from_utf8(data) else {
        return;
    };
    if dfsl::validate_xml(doc).is_ok() {
        // Anything the validator accepts must yield tuples, too.
        dfsl::xml_field_tuples(doc).expect("validated document must enumerate fields");
    }
});
