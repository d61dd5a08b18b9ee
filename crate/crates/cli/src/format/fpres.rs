//! The FPRES presentation format.
//!
//! ```text
//! fpres 1
//! field 2
//! params 2
//! generators 2
//! g a 1/1 0/1
//! g b 0/1 1/1
//! relations 1
//! r 1/1 1/1 ; 1:0 1:1
//! ```

use multipers_core::linalg::Column;
use multipers_core::{Error, Generator, Grade, Presentation, PrimeField, Relation};

use super::rational::{format_rational, parse_rational};
use super::{FormatError, Lines};

/// One FPRES block before validation, with the line of every relation.
pub(crate) struct RawBlock {
    pub field: PrimeField,
    pub dim: usize,
    pub generators: Vec<Generator>,
    pub relations: Vec<Relation>,
    pub relation_lines: Vec<usize>,
    pub header_line: usize,
}

fn parse_grade(tokens: &[&str], dim: usize, line: usize) -> Result<Grade, FormatError> {
    if tokens.len() != dim {
        return Err(FormatError::new(
            line,
            format!("expected {} coordinates, found {}", dim, tokens.len()),
        ));
    }
    tokens
        .iter()
        .map(|t| parse_rational(t).map_err(|e| FormatError::new(line, e)))
        .collect::<Result<Vec<_>, _>>()
        .map(Grade::new)
}

pub(crate) fn parse_block(lines: &mut Lines<'_>) -> Result<RawBlock, FormatError> {
    let (header_line, version) = lines.expect("fpres")?;
    if version != ["1"] {
        return Err(FormatError::new(header_line, "unsupported fpres version"));
    }
    let (n, p) = lines.expect_count("field")?;
    if p > u32::MAX as u64 {
        return Err(FormatError::new(n, format!("characteristic {} exceeds 2^32", p)));
    }
    let field = PrimeField::new(p).map_err(|e| FormatError::new(n, e.to_string()))?;
    let (n, dim) = lines.expect_count("params")?;
    if dim == 0 {
        return Err(FormatError::new(n, "params must be positive"));
    }
    let dim = dim as usize;

    let (_, k) = lines.expect_count("generators")?;
    let mut generators = Vec::with_capacity(k as usize);
    for _ in 0..k {
        let (n, rest) = lines.expect("g")?;
        let Some((label, coords)) = rest.split_first() else {
            return Err(FormatError::new(n, "generator line needs a label"));
        };
        generators.push(Generator::new(*label, parse_grade(coords, dim, n)?));
    }

    let (_, m) = lines.expect_count("relations")?;
    let mut relations = Vec::with_capacity(m as usize);
    let mut relation_lines = Vec::with_capacity(m as usize);
    for _ in 0..m {
        let (n, rest) = lines.expect("r")?;
        let Some(split) = rest.iter().position(|t| *t == ";") else {
            return Err(FormatError::new(n, "relation line needs ';' before its column"));
        };
        let grade = parse_grade(&rest[..split], dim, n)?;
        let mut entries = Vec::new();
        for term in &rest[split + 1..] {
            let bad = || FormatError::new(n, format!("invalid term '{}'", term));
            let (c, i) = term.split_once(':').ok_or_else(bad)?;
            let c: u64 = c.parse().map_err(|_| bad())?;
            let i: usize = i.parse().map_err(|_| bad())?;
            if c >= p {
                return Err(FormatError::new(n, format!("coefficient {} not in 0..{}", c, p)));
            }
            entries.push((i, c as i64));
        }
        relations.push(Relation::new(grade, Column::from_entries(&field, entries)));
        relation_lines.push(n);
    }
    Ok(RawBlock {
        field,
        dim,
        generators,
        relations,
        relation_lines,
        header_line,
    })
}

/// Maps a validation error to the line of the offending relation.
pub(crate) fn locate(err: Error, relation_lines: &[usize], fallback: usize) -> FormatError {
    match err {
        Error::RelationBelowGenerator { relation, generator } => FormatError::new(
            relation_lines.get(relation).copied().unwrap_or(fallback),
            format!(
                "relation {} is not homogeneous: its grade is not above generator {}",
                relation, generator
            ),
        ),
        Error::GeneratorIndexOutOfRange { relation, index, count } => FormatError::new(
            relation_lines.get(relation).copied().unwrap_or(fallback),
            format!("relation {} refers to generator {} of {}", relation, index, count),
        ),
        other => FormatError::new(fallback, other.to_string()),
    }
}

impl RawBlock {
    pub fn into_presentation(self) -> Result<Presentation, FormatError> {
        Presentation::new(self.dim, self.field, self.generators, self.relations)
            .map_err(|e| locate(e, &self.relation_lines, self.header_line))
    }
}

pub fn parse_fpres(text: &str) -> Result<Presentation, FormatError> {
    let mut lines = Lines::new(text);
    let block = parse_block(&mut lines)?;
    lines.finish()?;
    block.into_presentation()
}

pub(crate) fn write_block(
    out: &mut String,
    field: PrimeField,
    dim: usize,
    generators: &[Generator],
    relations: &[Relation],
) {
    use std::fmt::Write;
    let grade = |g: &Grade| {
        g.coords()
            .iter()
            .map(format_rational)
            .collect::<Vec<_>>()
            .join(" ")
    };
    let _ = writeln!(out, "fpres 1");
    let _ = writeln!(out, "field {}", field.characteristic());
    let _ = writeln!(out, "params {}", dim);
    let _ = writeln!(out, "generators {}", generators.len());
    for (i, g) in generators.iter().enumerate() {
        let label = if g.label.is_empty() || g.label.contains(char::is_whitespace) || g.label.contains('#') {
            format!("x{}", i)
        } else {
            g.label.clone()
        };
        let _ = writeln!(out, "g {} {}", label, grade(&g.grade));
    }
    let _ = writeln!(out, "relations {}", relations.len());
    for r in relations {
        let _ = write!(out, "r {} ;", grade(&r.grade));
        for &(i, c) in r.column.entries() {
            let _ = write!(out, " {}:{}", c, i);
        }
        out.push('\n');
    }
}

pub fn serialize_fpres(p: &Presentation) -> String {
    let mut out = String::new();
    write_block(&mut out, p.field(), p.dim(), p.generators(), p.relations());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const SQUARE: &str = "\
fpres 1
field 3
params 2
# unit square
generators 1
g a 0 0
relations 2
r 1 0 ; 1:0
r 0 1 ; 2:0
";

    #[test]
    fn parses_and_round_trips() {
        let p = parse_fpres(SQUARE).unwrap();
        assert_eq!(p.generators().len(), 1);
        assert_eq!(p.relations()[1].column.get(0), 2);
        let text = serialize_fpres(&p);
        assert_eq!(parse_fpres(&text).unwrap(), p);
        assert_eq!(serialize_fpres(&parse_fpres(&text).unwrap()), text);
    }

    #[test]
    fn reports_line_numbers() {
        let bad = SQUARE.replace("r 0 1 ; 2:0", "r 0 1 ; 3:0");
        assert_eq!(parse_fpres(&bad).unwrap_err().line, 9);
        let bad = SQUARE.replace("g a 0 0", "g a 0");
        assert_eq!(parse_fpres(&bad).unwrap_err().line, 6);
        let bad = SQUARE.replace("field 3", "field 4");
        assert_eq!(parse_fpres(&bad).unwrap_err().line, 2);
        let bad = SQUARE.replace("r 1 0 ; 1:0", "r 1 0 ; 1:5");
        assert_eq!(parse_fpres(&bad).unwrap_err().line, 8);
    }

    #[test]
    fn rejects_inhomogeneous_relation() {
        let bad = SQUARE.replace("r 0 1 ; 2:0", "r 0 -1 ; 2:0");
        let err = parse_fpres(&bad).unwrap_err();
        assert_eq!(err.line, 9);
        assert!(err.message.contains("relation 1"), "{}", err.message);
    }

    #[test]
    fn zero_column_relation() {
        let text = SQUARE.replace("r 0 1 ; 2:0", "r 0 1 ;");
        let p = parse_fpres(&text).unwrap();
        assert!(p.relations()[1].column.is_zero());
        assert_eq!(parse_fpres(&serialize_fpres(&p)).unwrap(), p);
    }
}
