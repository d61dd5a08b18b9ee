//! Interleaving witness files.
//!
//! ```text
//! witness 1/1
//! f 0 -> 1:0
//! g 0 -> 1:0 1:1
//! ```
//!
//! `f` lines map generators of the first module to the second, `g` lines the
//! reverse. Generators without a line map to zero.

use multipers_core::functors::InterleavingWitness;
use multipers_core::linalg::Column;
use multipers_core::PrimeField;

use super::rational::{format_rational, parse_rational};
use super::{FormatError, Lines};

/// Parses against known generator counts of the two modules.
pub fn parse_witness(
    text: &str,
    first: usize,
    second: usize,
    field: PrimeField,
) -> Result<InterleavingWitness, FormatError> {
    let mut lines = Lines::new(text);
    let (n, eps) = lines.expect("witness")?;
    let epsilon = match eps.as_slice() {
        [e] => parse_rational(e).map_err(|m| FormatError::new(n, m))?,
        _ => return Err(FormatError::new(n, "'witness' takes one value")),
    };
    if epsilon < num_traits::Zero::zero() {
        return Err(FormatError::new(n, "epsilon must be nonnegative"));
    }
    let mut forward: Vec<Option<Column>> = vec![None; first];
    let mut backward: Vec<Option<Column>> = vec![None; second];
    let p = field.characteristic();
    while let Some((n, line)) = lines.next_line() {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let (slots, source_count, target_count) = match tokens.first() {
            Some(&"f") => (&mut forward, first, second),
            Some(&"g") => (&mut backward, second, first),
            _ => return Err(FormatError::new(n, format!("expected 'f' or 'g', found '{}'", line))),
        };
        if tokens.len() < 3 || tokens[2] != "->" {
            return Err(FormatError::new(n, "expected '<f|g> <generator> -> <terms>'"));
        }
        let source: usize = tokens[1]
            .parse()
            .map_err(|_| FormatError::new(n, format!("invalid generator '{}'", tokens[1])))?;
        if source >= source_count {
            return Err(FormatError::new(n, format!("generator {} of {}", source, source_count)));
        }
        let mut entries = Vec::new();
        for term in &tokens[3..] {
            let bad = || FormatError::new(n, format!("invalid term '{}'", term));
            let (c, j) = term.split_once(':').ok_or_else(bad)?;
            let c: u64 = c.parse().map_err(|_| bad())?;
            let j: usize = j.parse().map_err(|_| bad())?;
            if c >= p {
                return Err(FormatError::new(n, format!("coefficient {} not in 0..{}", c, p)));
            }
            if j >= target_count {
                return Err(FormatError::new(n, format!("target generator {} of {}", j, target_count)));
            }
            entries.push((j, c as i64));
        }
        if slots[source].is_some() {
            return Err(FormatError::new(n, format!("generator {} mapped twice", source)));
        }
        slots[source] = Some(Column::from_entries(&field, entries));
    }
    Ok(InterleavingWitness {
        epsilon,
        forward: forward.into_iter().map(Option::unwrap_or_default).collect(),
        backward: backward.into_iter().map(Option::unwrap_or_default).collect(),
    })
}

pub fn serialize_witness(w: &InterleavingWitness) -> String {
    use std::fmt::Write;
    let mut out = format!("witness {}\n", format_rational(&w.epsilon));
    for (tag, cols) in [("f", &w.forward), ("g", &w.backward)] {
        for (i, c) in cols.iter().enumerate() {
            let _ = write!(out, "{} {} ->", tag, i);
            for &(j, v) in c.entries() {
                let _ = write!(out, " {}:{}", v, j);
            }
            out.push('\n');
        }
    }
    out
}
