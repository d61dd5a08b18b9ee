//! Text formats: presentations, joint presentations, witnesses, barcodes
//! and block lists.
//!
//! All formats are line based. `#` starts a comment; blank lines are ignored.

pub mod barcode;
pub mod blocks;
pub mod fpres;
pub mod joint;
pub mod rational;
pub mod witness;

use std::fmt;

/// A parse error with its 1-based line number.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "end of input: {}", self.message)
        } else {
            write!(f, "line {}: {}", self.line, self.message)
        }
    }
}

impl FormatError {
    pub fn new(line: usize, message: impl Into<String>) -> Self {
        FormatError {
            line,
            message: message.into(),
        }
    }
}

/// Significant lines with their numbers, comments stripped.
pub(crate) struct Lines<'a> {
    inner: std::iter::Peekable<Box<dyn Iterator<Item = (usize, &'a str)> + 'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    pub fn new(text: &'a str) -> Self {
        let it: Box<dyn Iterator<Item = (usize, &'a str)> + 'a> = Box::new(
            text.lines()
                .enumerate()
                .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
                .filter(|(_, l)| !l.is_empty()),
        );
        Lines {
            inner: it.peekable(),
            last: 0,
        }
    }

    pub fn next_line(&mut self) -> Option<(usize, &'a str)> {
        let next = self.inner.next();
        if let Some((n, _)) = next {
            self.last = n;
        }
        next
    }

    /// The next line, which must start with `keyword`; returns the rest.
    pub fn expect(&mut self, keyword: &str) -> Result<(usize, Vec<&'a str>), FormatError> {
        let Some((n, line)) = self.next_line() else {
            return Err(FormatError::new(0, format!("expected '{}'", keyword)));
        };
        let mut tokens = line.split_whitespace();
        if tokens.next() != Some(keyword) {
            return Err(FormatError::new(n, format!("expected '{}', found '{}'", keyword, line)));
        }
        Ok((n, tokens.collect()))
    }

    /// `keyword <value>` with a single unsigned integer value.
    pub fn expect_count(&mut self, keyword: &str) -> Result<(usize, u64), FormatError> {
        let (n, rest) = self.expect(keyword)?;
        match rest.as_slice() {
            [v] => v
                .parse::<u64>()
                .map(|v| (n, v))
                .map_err(|_| FormatError::new(n, format!("invalid {} '{}'", keyword, v))),
            _ => Err(FormatError::new(n, format!("'{}' takes one value", keyword))),
        }
    }

    pub fn finish(&mut self) -> Result<(), FormatError> {
        match self.next_line() {
            None => Ok(()),
            Some((n, l)) => Err(FormatError::new(n, format!("unexpected trailing line '{}'", l))),
        }
    }
}
