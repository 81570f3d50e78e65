//! Bit-addressed access to a binary stream.
//!
//! A stream of `W` bits is indexed two ways: by *offset* (0 at the first,
//! most significant bit of the first byte) and by *significance position*
//! (`W - 1` at that same bit, 0 at the last). Read commands in scripts use
//! significance positions; the cursor tracks plain offsets.

use std::path::Path;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BitstreamError {
    #[error(
        "bit stream exhausted: need {count} bit(s) at offset {position}, \
         but the stream holds {total_bits}"
    )]
    StreamExhausted {
        position: u64,
        count: u64,
        total_bits: u64,
    },
    #[error("invalid read count {count}: must be between 1 and 64 bits")]
    InvalidCount { count: u64 },
    #[error("bit position {position} is outside the stream (size {total_bits} bits)")]
    PositionOutOfRange { position: u64, total_bits: u64 },
    #[error("invalid bit range {start} ~ {stop}: start must not be below stop")]
    InvalidRange { start: u64, stop: u64 },
    #[error("malformed hex data: {detail}")]
    MalformedHex { detail: String },
    #[error("cannot read data file `{path}`: {message}")]
    Io { path: String, message: String },
}

/// Immutable binary stream plus its exact bit length.
///
/// The length need not be a whole number of bytes: a hex string with an odd
/// digit count contributes a trailing half byte, padded low.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitSource {
    bytes: Vec<u8>,
    total_bits: u64,
}

impl BitSource {
    pub fn from_bytes(bytes: Vec<u8>) -> Self {
        let total_bits = bytes.len() as u64 * 8;
        BitSource { bytes, total_bits }
    }

    /// Builds a stream from hex digits; ASCII whitespace between digits is
    /// ignored. Each digit contributes four bits.
    pub fn from_hex_str(hex: &str) -> Result<Self, BitstreamError> {
        let mut bytes = Vec::new();
        let mut digits: u64 = 0;
        let mut pending: Option<u8> = None;
        for ch in hex.chars() {
            if ch.is_ascii_whitespace() {
                continue;
            }
            let nibble = ch
                .to_digit(16)
                .ok_or_else(|| BitstreamError::MalformedHex {
                    detail: format!("`{ch}` is not a hex digit"),
                })? as u8;
            digits += 1;
            match pending.take() {
                Some(high) => bytes.push((high << 4) | nibble),
                None => pending = Some(nibble),
            }
        }
        if digits == 0 {
            return Err(BitstreamError::MalformedHex {
                detail: "empty hex string".into(),
            });
        }
        if let Some(high) = pending {
            bytes.push(high << 4);
        }
        Ok(BitSource {
            bytes,
            total_bits: digits * 4,
        })
    }

    /// Builds a stream from a hex literal's value and written digit count,
    /// so `0x9351` yields exactly 16 bits.
    pub fn from_u64_hex(value: u64, hex_digits: u32) -> Self {
        debug_assert!((1..=16).contains(&hex_digits));
        let total_bits = hex_digits as u64 * 4;
        let nbytes = total_bits.div_ceil(8) as usize;
        let padded = value << (nbytes as u64 * 8 - total_bits);
        let bytes = padded.to_be_bytes()[8 - nbytes..].to_vec();
        BitSource { bytes, total_bits }
    }

    pub fn from_file(path: &Path) -> Result<Self, BitstreamError> {
        let bytes = std::fs::read(path).map_err(|e| BitstreamError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Ok(Self::from_bytes(bytes))
    }

    pub fn total_bits(&self) -> u64 {
        self.total_bits
    }

    pub fn bytes(&self) -> &[u8] {
        &self.bytes
    }

    /// Number of whole bits in `[offset, offset + count)` still inside the
    /// stream, as an exhaustion check.
    fn check_window(&self, offset: u64, count: u64) -> Result<(), BitstreamError> {
        let end = offset.saturating_add(count);
        if end > self.total_bits {
            return Err(BitstreamError::StreamExhausted {
                position: offset,
                count,
                total_bits: self.total_bits,
            });
        }
        Ok(())
    }

    /// Assembles up to 64 bits starting at `offset`, most significant first.
    fn extract_u64(&self, offset: u64, count: u64) -> u64 {
        debug_assert!((1..=64).contains(&count));
        debug_assert!(offset + count <= self.total_bits);
        let first = (offset / 8) as usize;
        let last = ((offset + count - 1) / 8) as usize;
        let mut window: u128 = 0;
        for &b in &self.bytes[first..=last] {
            window = (window << 8) | b as u128;
        }
        let window_bits = (last - first + 1) as u64 * 8;
        let shifted = window >> (window_bits - (offset % 8) - count);
        let mask = if count == 64 {
            u64::MAX as u128
        } else {
            (1u128 << count) - 1
        };
        (shifted & mask) as u64
    }

    /// Copies `count` whole bytes starting at bit `offset`, re-aligning when
    /// the offset is not byte-aligned.
    fn extract_bytes(&self, offset: u64, count: u64) -> Vec<u8> {
        debug_assert!(offset + count * 8 <= self.total_bits);
        let first = (offset / 8) as usize;
        let shift = (offset % 8) as u32;
        if shift == 0 {
            return self.bytes[first..first + count as usize].to_vec();
        }
        (0..count as usize)
            .map(|i| {
                let hi = self.bytes[first + i] << shift;
                let lo = self.bytes[first + i + 1] >> (8 - shift);
                hi | lo
            })
            .collect()
    }
}

/// Value carried out of a single read, together with its location.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BitsValue {
    /// Reads of 64 bits or fewer, assembled most significant bit first.
    UInt(u64),
    /// Byte reads wider than eight bytes.
    Bytes(Vec<u8>),
}

/// One field's worth of bits: its value and where it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldBits {
    pub value: BitsValue,
    pub offset_bits: u64,
    pub width_bits: u64,
}

/// Read position over a [`BitSource`].
///
/// `position` counts bits consumed from the front; sequential reads start
/// there. Positioned reads (`@p`, `s ~ t`) move the cursor just past the
/// field they read, and peeking variants never move it.
#[derive(Debug, Clone)]
pub struct BitCursor<'a> {
    source: &'a BitSource,
    position: u64,
}

impl<'a> BitCursor<'a> {
    pub fn new(source: &'a BitSource) -> Self {
        BitCursor {
            source,
            position: 0,
        }
    }

    pub fn source(&self) -> &'a BitSource {
        self.source
    }

    pub fn position(&self) -> u64 {
        self.position
    }

    pub fn remaining(&self) -> u64 {
        self.source.total_bits - self.position
    }

    /// Converts a significance position to a plain offset.
    fn offset_of(&self, position: u64) -> Result<u64, BitstreamError> {
        let total = self.source.total_bits;
        if position >= total {
            return Err(BitstreamError::PositionOutOfRange {
                position,
                total_bits: total,
            });
        }
        Ok(total - 1 - position)
    }

    fn bits_at_offset(&self, offset: u64, count: u64) -> Result<FieldBits, BitstreamError> {
        if count == 0 || count > 64 {
            return Err(BitstreamError::InvalidCount { count });
        }
        self.source.check_window(offset, count)?;
        Ok(FieldBits {
            value: BitsValue::UInt(self.source.extract_u64(offset, count)),
            offset_bits: offset,
            width_bits: count,
        })
    }

    pub fn read_bits(&mut self, count: u64) -> Result<FieldBits, BitstreamError> {
        let field = self.bits_at_offset(self.position, count)?;
        self.position = field.offset_bits + field.width_bits;
        Ok(field)
    }

    pub fn peek_bits(&self, count: u64) -> Result<FieldBits, BitstreamError> {
        self.bits_at_offset(self.position, count)
    }

    pub fn read_bits_at(&mut self, position: u64, count: u64) -> Result<FieldBits, BitstreamError> {
        let field = self.peek_bits_at(position, count)?;
        self.position = field.offset_bits + field.width_bits;
        Ok(field)
    }

    pub fn peek_bits_at(&self, position: u64, count: u64) -> Result<FieldBits, BitstreamError> {
        let offset = self.offset_of(position)?;
        self.bits_at_offset(offset, count)
    }

    /// Reads the inclusive significance range `start ~ stop`.
    pub fn read_range(&mut self, start: u64, stop: u64) -> Result<FieldBits, BitstreamError> {
        let field = self.peek_range(start, stop)?;
        self.position = field.offset_bits + field.width_bits;
        Ok(field)
    }

    pub fn peek_range(&self, start: u64, stop: u64) -> Result<FieldBits, BitstreamError> {
        if start < stop {
            return Err(BitstreamError::InvalidRange { start, stop });
        }
        let offset = self.offset_of(start)?;
        self.bits_at_offset(offset, start - stop + 1)
    }

    fn bytes_at_offset(&self, offset: u64, count: u64) -> Result<FieldBits, BitstreamError> {
        if count == 0 {
            return Err(BitstreamError::InvalidCount { count });
        }
        let width = count
            .checked_mul(8)
            .ok_or(BitstreamError::InvalidCount { count })?;
        if count <= 8 {
            let mut field = self.bits_at_offset(offset, width)?;
            field.width_bits = width;
            return Ok(field);
        }
        self.source.check_window(offset, width)?;
        Ok(FieldBits {
            value: BitsValue::Bytes(self.source.extract_bytes(offset, count)),
            offset_bits: offset,
            width_bits: width,
        })
    }

    pub fn read_bytes(&mut self, count: u64) -> Result<FieldBits, BitstreamError> {
        let field = self.bytes_at_offset(self.position, count)?;
        self.position = field.offset_bits + field.width_bits;
        Ok(field)
    }

    pub fn peek_bytes(&self, count: u64) -> Result<FieldBits, BitstreamError> {
        self.bytes_at_offset(self.position, count)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Reference extraction: one bit at a time, independent of the windowed
    /// implementation above.
    fn oracle_u64(bytes: &[u8], offset: u64, count: u64) -> u64 {
        (0..count).fold(0u64, |acc, i| {
            let o = offset + i;
            let bit = (bytes[(o / 8) as usize] >> (7 - (o % 8))) & 1;
            (acc << 1) | bit as u64
        })
    }

    fn oracle_bytes(bytes: &[u8], offset: u64, count: u64) -> Vec<u8> {
        (0..count)
            .map(|i| oracle_u64(bytes, offset + i * 8, 8) as u8)
            .collect()
    }

    fn uint(field: &FieldBits) -> u64 {
        match field.value {
            BitsValue::UInt(v) => v,
            ref other => panic!("expected UInt, got {other:?}"),
        }
    }

    #[test]
    fn hex_literal_stream_has_exact_width() {
        let s = BitSource::from_u64_hex(0x9351, 4);
        assert_eq!(s.total_bits(), 16);
        assert_eq!(s.bytes(), &[0x93, 0x51]);
    }

    #[test]
    fn pmd_register_fields() {
        // 0x9351 = 1001 0011 0101 0001
        let s = BitSource::from_u64_hex(0x9351, 4);
        let mut c = BitCursor::new(&s);
        assert_eq!(uint(&c.read_range(15, 11).unwrap()), 18);
        assert_eq!(c.position(), 5);
        assert_eq!(uint(&c.read_range(10, 9).unwrap()), 1);
        assert_eq!(uint(&c.read_bits_at(8, 1).unwrap()), 1);
        assert_eq!(uint(&c.read_bits_at(7, 1).unwrap()), 0);
        assert_eq!(uint(&c.read_bits_at(6, 1).unwrap()), 1);
        assert_eq!(uint(&c.read_bits_at(5, 1).unwrap()), 0);
        assert_eq!(uint(&c.read_bits_at(4, 1).unwrap()), 1);
        assert_eq!(uint(&c.read_bits_at(3, 4).unwrap()), 1);
        assert_eq!(c.position(), 16);
        assert_eq!(c.remaining(), 0);
    }

    #[test]
    fn sequential_reads_match_positioned_reads() {
        let s = BitSource::from_u64_hex(0x9351, 4);
        let mut seq = BitCursor::new(&s);
        seq.read_bits(5).unwrap();
        let v = uint(&seq.read_bits(2).unwrap());
        let mut pos = BitCursor::new(&s);
        assert_eq!(uint(&pos.read_range(10, 9).unwrap()), v);
    }

    #[test]
    fn peeks_do_not_move_the_cursor() {
        let s = BitSource::from_bytes(vec![0xDE, 0xAD, 0xBE, 0xEF]);
        let mut c = BitCursor::new(&s);
        let p = c.peek_bits(8).unwrap();
        assert_eq!(c.position(), 0);
        let r = c.read_bits(8).unwrap();
        assert_eq!(p, r);
        assert_eq!(c.position(), 8);
        c.peek_bits_at(15, 4).unwrap();
        c.peek_range(15, 8).unwrap();
        c.peek_bytes(2).unwrap();
        assert_eq!(c.position(), 8);
    }

    #[test]
    fn exhaustion_and_bounds() {
        let s = BitSource::from_bytes(vec![0xAB]);
        let mut c = BitCursor::new(&s);
        assert!(matches!(
            c.read_bits(9),
            Err(BitstreamError::StreamExhausted {
                position: 0,
                count: 9,
                total_bits: 8
            })
        ));
        assert!(matches!(
            c.read_bits_at(8, 1),
            Err(BitstreamError::PositionOutOfRange {
                position: 8,
                total_bits: 8
            })
        ));
        // position 2 has only 3 bits at or below it
        assert!(matches!(
            c.read_bits_at(2, 4),
            Err(BitstreamError::StreamExhausted { .. })
        ));
        assert!(matches!(
            c.read_range(3, 5),
            Err(BitstreamError::InvalidRange { start: 3, stop: 5 })
        ));
        assert!(matches!(
            c.read_bits(0),
            Err(BitstreamError::InvalidCount { count: 0 })
        ));
        assert!(matches!(
            c.read_bits(65),
            Err(BitstreamError::InvalidCount { count: 65 })
        ));
        assert_eq!(c.position(), 0, "failed reads must not move the cursor");
    }

    #[test]
    fn odd_hex_digits_pad_low() {
        let s = BitSource::from_hex_str("abc").unwrap();
        assert_eq!(s.total_bits(), 12);
        assert_eq!(s.bytes(), &[0xAB, 0xC0]);
        let mut c = BitCursor::new(&s);
        assert_eq!(uint(&c.read_bits(12).unwrap()), 0xABC);
        assert!(c.read_bits(1).is_err());
    }

    #[test]
    fn hex_parsing_accepts_spaces_and_rejects_junk() {
        let s = BitSource::from_hex_str("08 00 20\n86").unwrap();
        assert_eq!(s.bytes(), &[0x08, 0x00, 0x20, 0x86]);
        assert!(matches!(
            BitSource::from_hex_str("0x12"),
            Err(BitstreamError::MalformedHex { .. })
        ));
        assert!(matches!(
            BitSource::from_hex_str(""),
            Err(BitstreamError::MalformedHex { .. })
        ));
    }

    #[test]
    fn byte_reads_split_small_and_large() {
        let data: Vec<u8> = (0u8..32).collect();
        let s = BitSource::from_bytes(data.clone());
        let mut c = BitCursor::new(&s);
        let small = c.read_bytes(4).unwrap();
        assert_eq!(small.value, BitsValue::UInt(0x00010203));
        assert_eq!(small.width_bits, 32);
        let large = c.read_bytes(10).unwrap();
        assert_eq!(large.value, BitsValue::Bytes(data[4..14].to_vec()));
        assert_eq!(large.offset_bits, 32);
        assert_eq!(large.width_bits, 80);
        assert!(matches!(
            c.read_bytes(0),
            Err(BitstreamError::InvalidCount { count: 0 })
        ));
    }

    #[test]
    fn unaligned_byte_reads_match_oracle() {
        let data: Vec<u8> = vec![0b1011_0010, 0b0111_0001, 0b1100_1010, 0xFF];
        let s = BitSource::from_bytes(data.clone());
        let mut c = BitCursor::new(&s);
        c.read_bits(3).unwrap();
        let f = c.read_bytes(2).unwrap();
        assert_eq!(f.value, BitsValue::UInt(oracle_u64(&data, 3, 16)));
    }

    #[test]
    fn overflow_guards() {
        let s = BitSource::from_bytes(vec![0; 8]);
        let mut c = BitCursor::new(&s);
        assert!(c.read_bytes(u64::MAX / 4).is_err());
    }

    proptest! {
        #[test]
        fn windowed_extraction_matches_per_bit_oracle(
            data in proptest::collection::vec(any::<u8>(), 1..64),
            offset_seed in any::<u64>(),
            count_seed in 1u64..=64,
        ) {
            let total = data.len() as u64 * 8;
            let count = count_seed.min(total);
            let offset = offset_seed % (total - count + 1);
            let s = BitSource::from_bytes(data.clone());
            let c = BitCursor::new(&s);
            let got = match c.peek_bits_at(total - 1 - offset, count).unwrap().value {
                BitsValue::UInt(v) => v,
                _ => unreachable!(),
            };
            prop_assert_eq!(got, oracle_u64(&data, offset, count));
        }

        #[test]
        fn large_byte_reads_match_per_bit_oracle(
            data in proptest::collection::vec(any::<u8>(), 16..48),
            offset_seed in any::<u64>(),
            count in 9u64..=12,
        ) {
            let total = data.len() as u64 * 8;
            let offset = offset_seed % (total - count * 8 + 1);
            let s = BitSource::from_bytes(data.clone());
            let mut c = BitCursor::new(&s);
            // advance the cursor bit by bit to the target offset
            for _ in 0..offset { c.read_bits(1).unwrap(); }
            let got = match c.read_bytes(count).unwrap().value {
                BitsValue::Bytes(b) => b,
                _ => unreachable!(),
            };
            prop_assert_eq!(got, oracle_bytes(&data, offset, count));
            prop_assert_eq!(c.position(), offset + count * 8);
        }

        #[test]
        fn split_reads_concatenate(
            data in proptest::collection::vec(any::<u8>(), 8..16),
            a in 1u64..=32,
            b in 1u64..=32,
        ) {
            let s = BitSource::from_bytes(data);
            let mut whole = BitCursor::new(&s);
            let combined = match whole.read_bits(a + b).unwrap().value {
                BitsValue::UInt(v) => v,
                _ => unreachable!(),
            };
            let mut split = BitCursor::new(&s);
            let va = match split.read_bits(a).unwrap().value {
                BitsValue::UInt(v) => v, _ => unreachable!(),
            };
            let vb = match split.read_bits(b).unwrap().value {
                BitsValue::UInt(v) => v, _ => unreachable!(),
            };
            prop_assert_eq!(combined, (va << b) | vb);
            prop_assert_eq!(split.position(), whole.position());
        }

        #[test]
        fn round_trip_hex(data in proptest::collection::vec(any::<u8>(), 1..32)) {
            let hex: String = data.iter().map(|b| format!("{b:02x}")).collect();
            let s = BitSource::from_hex_str(&hex).unwrap();
            prop_assert_eq!(s.bytes(), &data[..]);
            prop_assert_eq!(s.total_bits(), data.len() as u64 * 8);
        }
    }
}
