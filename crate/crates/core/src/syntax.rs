//! Small hand-rolled cursor for the text syntax of sequences and elements.
//!
//! Grammar:
//!
//! ```text
//! seq   := '[' nats? ('|' nats)? ']'
//! nats  := nat (',' nat)*
//! elem  := 'x(' nat ',' (nat | 'w') ')' | 's' seq | 't' seq
//! ```
//!
//! Whitespace is allowed between tokens. Every error carries the byte offset
//! into the original input.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error at byte {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(offset: usize, message: impl fmt::Display) -> Self {
        ParseError {
            offset,
            message: message.to_string(),
        }
    }
}

pub(crate) struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    pub(crate) fn pos(&self) -> usize {
        self.pos
    }

    pub(crate) fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    pub(crate) fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    pub(crate) fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("'{c}'")))
        }
    }

    pub(crate) fn unexpected(&self, wanted: &str) -> ParseError {
        match self.peek() {
            Some(found) => ParseError::new(self.pos, format!("expected {wanted}, found '{found}'")),
            None => ParseError::new(self.pos, format!("expected {wanted}, found end of input")),
        }
    }

    /// Parses a positive natural number.
    pub(crate) fn nat(&mut self) -> Result<u64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.unexpected("a positive natural number"));
        }
        let value: u64 = self.src[start..self.pos]
            .parse()
            .map_err(|_| ParseError::new(start, "number out of range"))?;
        if value == 0 {
            return Err(ParseError::new(start, "entries must be positive (>= 1)"));
        }
        Ok(value)
    }

    /// Comma separated naturals, possibly empty, stopping before `stop` chars.
    pub(crate) fn nat_list(&mut self, stops: &[char]) -> Result<Vec<u64>, ParseError> {
        let mut out = Vec::new();
        self.skip_ws();
        if matches!(self.peek(), Some(c) if stops.contains(&c)) {
            return Ok(out);
        }
        loop {
            out.push(self.nat()?);
            if !self.eat(',') {
                break;
            }
        }
        Ok(out)
    }

    pub(crate) fn finish(&mut self) -> Result<(), ParseError> {
        self.skip_ws();
        if self.pos == self.src.len() {
            Ok(())
        } else {
            Err(self.unexpected("end of input"))
        }
    }
}
