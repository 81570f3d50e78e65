//! Hex decoding plus cursor reads driven by untrusted text.

#![no_main]

use libfuzzer_sys::fuzz_target;

use dfsl::{BitCursor, BitSource};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(source) = BitSource::from_hex_str(text) else {
        return;
    };
    let total = source.total_bits();
    assert_eq!(total % 4, 0, "hex decoding must yield whole nibbles");

    // Probe the cursor with positions derived from the input itself.
    let mut cursor = BitCursor::new(&source);
    let mut probe: u64 = 0x9e37_79b9_7f4a_7c15;
    for &b in data.iter().take(64) {
        probe = probe.rotate_left(7) ^ b as u64;
        let count = 1 + probe % 64;
        let position = probe.wrapping_mul(31) % total.max(1);
        let _ = cursor.read_bits(count);
        let _ = cursor.peek_bits_at(position, count);
        let _ = cursor.read_bits_at(position, count);
        let _ = cursor.read_range(position, position / 2);
        let _ = cursor.read_bytes(count);
    }
});
