//! Block lists: header `blocks 1`, then `blk <oo|co|oc|cc> <a> <b|inf>` lines.

use multipers_core::blocks::{Block, BlockKind};
use multipers_core::ExtRational;

use super::rational::{format_rational, parse_ext, parse_rational};
use super::{FormatError, Lines};

pub fn parse_blocks(text: &str) -> Result<Vec<Block>, FormatError> {
    let mut lines = Lines::new(text);
    let (n, version) = lines.expect("blocks")?;
    if version != ["1"] {
        return Err(FormatError::new(n, "unsupported blocks version"));
    }
    let mut out = Vec::new();
    while let Some((n, line)) = lines.next_line() {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let ["blk", kind, a, b] = tokens.as_slice() else {
            return Err(FormatError::new(n, "expected 'blk <kind> <a> <b|inf>'"));
        };
        let kind = BlockKind::from_tag(kind)
            .ok_or_else(|| FormatError::new(n, format!("unknown block kind '{}'", kind)))?;
        let a = parse_rational(a).map_err(|m| FormatError::new(n, m))?;
        let b = parse_ext(b).map_err(|m| FormatError::new(n, m))?;
        out.push(Block::new(kind, a, b).map_err(|e| FormatError::new(n, e.to_string()))?);
    }
    Ok(out)
}

pub fn serialize_blocks(blocks: &[Block]) -> String {
    let mut out = String::from("blocks 1\n");
    for b in blocks {
        out.push_str(&format!(
            "blk {} {} {}\n",
            b.kind().tag(),
            format_rational(b.a()),
            format_rational(b.b())
        ));
    }
    out
}

/// Extended rectangles print as `rect <x0> <y0> <x1|inf> <y1|inf>`.
pub fn format_rectangle(r: &multipers_core::blocks::ExtendedRectangle) -> String {
    let ext = |e: &ExtRational| super::rational::format_ext(e);
    format!(
        "rect {} {} {} {}",
        format_rational(r.lower.coord(0)),
        format_rational(r.lower.coord(1)),
        ext(&r.upper[0]),
        ext(&r.upper[1])
    )
}
