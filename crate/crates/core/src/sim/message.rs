use serde::{Deserialize, Serialize};

/// A message payload with an exact bit length. Bits are packed MSB-first.
///
/// The empty message (zero bits) is a real message; not sending anything is
/// expressed by leaving the outbox slot empty.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Message {
    payload: Vec<u8>,
    bit_len: usize,
}

impl Message {
    pub fn empty() -> Self {
        Message::default()
    }

    /// Rebuilds a message from raw parts; `None` if the byte count does not
    /// match the bit length.
    pub fn from_parts(payload: Vec<u8>, bit_len: usize) -> Option<Self> {
        (payload.len() == bit_len.div_ceil(8)).then_some(Message { payload, bit_len })
    }

    pub fn bit_len(&self) -> usize {
        self.bit_len
    }

    pub fn payload(&self) -> &[u8] {
        &self.payload
    }

    pub fn reader(&self) -> BitReader<'_> {
        BitReader { msg: self, pos: 0 }
    }
}

#[derive(Debug, Default)]
pub struct MessageBuilder {
    payload: Vec<u8>,
    bit_len: usize,
}

impl MessageBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends the low `width` bits of `value`. Panics if `value` does not
    /// fit in `width` bits.
    pub fn push(&mut self, value: u64, width: u32) -> &mut Self {
        assert!(width <= 64);
        assert!(
            width == 64 || value >> width == 0,
            "value {value} does not fit in {width} bits"
        );
        for k in (0..width).rev() {
            let bit = (value >> k) & 1;
            if self.bit_len.is_multiple_of(8) {
                self.payload.push(0);
            }
            if bit == 1 {
                let last = self.payload.last_mut().expect("byte allocated above");
                *last |= 0x80 >> (self.bit_len % 8);
            }
            self.bit_len += 1;
        }
        self
    }

    pub fn flag(&mut self, on: bool) -> &mut Self {
        self.push(on as u64, 1)
    }

    /// [`push`](Self::push) for values up to 128 bits.
    pub fn push_wide(&mut self, value: u128, width: u32) -> &mut Self {
        assert!(width <= 128);
        assert!(width == 128 || value >> width == 0, "value {value} does not fit in {width} bits");
        let hi = width.saturating_sub(64);
        if hi > 0 {
            self.push((value >> 64) as u64, hi);
        }
        self.push(value as u64, width - hi)
    }

    pub fn finish(&mut self) -> Message {
        Message {
            payload: std::mem::take(&mut self.payload),
            bit_len: std::mem::take(&mut self.bit_len),
        }
    }
}

pub struct BitReader<'a> {
    msg: &'a Message,
    pos: usize,
}

impl BitReader<'_> {
    /// Reads `width` bits. Panics when reading past the end, which only
    /// happens if sender and receiver disagree on the layout.
    pub fn read(&mut self, width: u32) -> u64 {
        assert!(
            self.pos + width as usize <= self.msg.bit_len,
            "read past end of {}-bit message",
            self.msg.bit_len
        );
        let mut v = 0u64;
        for _ in 0..width {
            let byte = self.msg.payload[self.pos / 8];
            let bit = (byte >> (7 - self.pos % 8)) & 1;
            v = (v << 1) | bit as u64;
            self.pos += 1;
        }
        v
    }

    pub fn flag(&mut self) -> bool {
        self.read(1) == 1
    }

    pub fn read_wide(&mut self, width: u32) -> u128 {
        let hi = width.saturating_sub(64);
        let top = if hi > 0 { self.read(hi) as u128 } else { 0 };
        (top << (width - hi)) | self.read(width - hi) as u128
    }

    pub fn remaining(&self) -> usize {
        self.msg.bit_len - self.pos
    }
}
