//! Line-oriented reports.
//!
//! Text form:
//!
//! ```text
//! report match-dist
//! value: 1/2 (0.500000)
//! lines: 1377
//! ```
//!
//! The tabular form has the same records with a tab between key and value.
//! Keys never contain whitespace, `:` or tabs; values never contain newlines.

use multipers_core::{ExtRational, Rational};

use crate::format::rational::{decimal, exact_and_decimal, format_rational};
use crate::format::FormatError;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum EmitFormat {
    #[default]
    Text,
    Tabular,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub title: String,
    pub entries: Vec<(String, String)>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report {
            title: title.into(),
            entries: Vec::new(),
        }
    }

    pub fn push(&mut self, key: &str, value: impl ToString) -> &mut Self {
        debug_assert!(!key.contains(|c: char| c.is_whitespace() || c == ':'));
        let value = value.to_string().replace(['\n', '\t'], " ");
        self.entries.push((key.to_string(), value));
        self
    }

    pub fn rational(&mut self, key: &str, r: &Rational) -> &mut Self {
        self.push(key, format!("{} ({})", format_rational(r), decimal(r, 6)))
    }

    pub fn ext(&mut self, key: &str, r: &ExtRational) -> &mut Self {
        self.push(key, exact_and_decimal(r))
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn render(&self, format: EmitFormat) -> String {
        let sep = match format {
            EmitFormat::Text => ": ",
            EmitFormat::Tabular => "\t",
        };
        let head = match format {
            EmitFormat::Text => " ",
            EmitFormat::Tabular => "\t",
        };
        let mut out = format!("report{}{}\n", head, self.title);
        for (k, v) in &self.entries {
            out.push_str(k);
            out.push_str(sep);
            out.push_str(v);
            out.push('\n');
        }
        out
    }
}

/// Parses either rendering back into a report.
pub fn parse_report(text: &str) -> Result<Report, FormatError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let Some((_, head)) = lines.next() else {
        return Err(FormatError::new(0, "empty report"));
    };
    let (tabular, title) = if let Some(t) = head.strip_prefix("report\t") {
        (true, t)
    } else if let Some(t) = head.strip_prefix("report ") {
        (false, t)
    } else {
        return Err(FormatError::new(1, "expected 'report <title>'"));
    };
    let mut report = Report::new(title);
    for (n, line) in lines {
        let split = if tabular {
            line.split_once('\t')
        } else {
            line.split_once(": ")
        };
        let Some((k, v)) = split else {
            return Err(FormatError::new(n, format!("malformed record '{}'", line)));
        };
        if k.is_empty() || k.contains(char::is_whitespace) {
            return Err(FormatError::new(n, format!("malformed key '{}'", k)));
        }
        report.entries.push((k.to_string(), v.to_string()));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use multipers_core::rational::rat;

    #[test]
    fn round_trips() {
        let mut r = Report::new("demo");
        r.rational("value", &rat(1, 3)).ext("upper", &ExtRational::Infinite).push("status", "PASS");
        for f in [EmitFormat::Text, EmitFormat::Tabular] {
            let text = r.render(f);
            assert_eq!(parse_report(&text).unwrap(), r);
        }
        assert_eq!(r.get("value"), Some("1/3 (0.333333)"));
        assert_eq!(parse_report("report x\nbad\n").unwrap_err().line, 2);
    }
}
