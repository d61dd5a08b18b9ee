//! Barcode files: one `bar <birth> <death|inf> <multiplicity>` line per
//! distinct bar, sorted by `(birth, death)`.

use multipers_core::fibered::{Bar, Barcode};

use super::rational::{format_ext, format_rational, parse_ext, parse_rational};
use super::{FormatError, Lines};

pub fn parse_barcode(text: &str) -> Result<Barcode, FormatError> {
    let mut lines = Lines::new(text);
    let mut bars = Vec::new();
    while let Some((n, line)) = lines.next_line() {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let [tag, birth, death, mult] = tokens.as_slice() else {
            return Err(FormatError::new(n, "expected 'bar <birth> <death|inf> <multiplicity>'"));
        };
        if *tag != "bar" {
            return Err(FormatError::new(n, format!("expected 'bar', found '{}'", tag)));
        }
        let birth = parse_rational(birth).map_err(|m| FormatError::new(n, m))?;
        let death = parse_ext(death).map_err(|m| FormatError::new(n, m))?;
        let mult: usize = mult
            .parse()
            .map_err(|_| FormatError::new(n, format!("invalid multiplicity '{}'", mult)))?;
        let bar = Bar::new(birth, death);
        if bar.is_empty() {
            return Err(FormatError::new(n, "bar must have birth < death"));
        }
        bars.extend(std::iter::repeat_n(bar, mult));
    }
    Ok(Barcode::new(bars))
}

pub fn serialize_barcode(b: &Barcode) -> String {
    b.with_multiplicity()
        .into_iter()
        .map(|(bar, m)| {
            format!(
                "bar {} {} {}\n",
                format_rational(&bar.birth),
                format_ext(&bar.death),
                m
            )
        })
        .collect()
}
