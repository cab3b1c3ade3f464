use std::fmt;
use std::ops::Deref;

use crate::error::{Error, Result};

/// An immutable byte string. Positions handed in and out are 1-based.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Text {
    bytes: Box<[u8]>,
}

impl Text {
    pub fn new(bytes: impl Into<Vec<u8>>) -> Self {
        Self {
            bytes: bytes.into().into_boxed_slice(),
        }
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes
    }

    pub fn len(&self) -> usize {
        self.bytes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bytes.is_empty()
    }

    /// Byte at 1-based position `pos`.
    pub fn at(&self, pos: usize) -> Result<u8> {
        self.check_pos(pos)?;
        Ok(self.bytes[pos - 1])
    }

    /// Copy of the 1-based inclusive range `start..=end`.
    pub fn substring(&self, start: usize, end: usize) -> Result<Text> {
        self.check_span(start, end)?;
        Ok(Text::new(&self.bytes[start - 1..end]))
    }

    /// Copy of the suffix starting at 1-based position `start`.
    pub fn suffix(&self, start: usize) -> Result<Text> {
        self.check_pos(start)?;
        Ok(Text::new(&self.bytes[start - 1..]))
    }

    pub(crate) fn require_nonempty(&self) -> Result<()> {
        if self.is_empty() {
            Err(Error::EmptyText)
        } else {
            Ok(())
        }
    }

    pub(crate) fn check_pos(&self, pos: usize) -> Result<()> {
        if pos == 0 || pos > self.len() {
            Err(Error::PositionOutOfRange { pos, len: self.len() })
        } else {
            Ok(())
        }
    }

    pub(crate) fn check_span(&self, start: usize, end: usize) -> Result<()> {
        if start == 0 || start > end || end > self.len() {
            Err(Error::SpanOutOfRange {
                start,
                end,
                len: self.len(),
            })
        } else {
            Ok(())
        }
    }
}

impl Deref for Text {
    type Target = [u8];

    fn deref(&self) -> &[u8] {
        &self.bytes
    }
}

impl From<&str> for Text {
    fn from(s: &str) -> Self {
        Text::new(s.as_bytes())
    }
}

impl From<&[u8]> for Text {
    fn from(s: &[u8]) -> Self {
        Text::new(s)
    }
}

impl From<Vec<u8>> for Text {
    fn from(v: Vec<u8>) -> Self {
        Text::new(v)
    }
}

impl fmt::Debug for Text {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Text({:?})", String::from_utf8_lossy(&self.bytes))
    }
}

impl fmt::Display for Text {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&String::from_utf8_lossy(&self.bytes))
    }
}
