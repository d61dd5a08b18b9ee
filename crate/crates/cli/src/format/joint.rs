//! Joint presentations: an `epsilon` header followed by two FPRES blocks.
//! Columns in both blocks index the concatenated generator list, `M` first.

use multipers_core::functors::JointPresentation;

use super::fpres::{locate, parse_block, write_block};
use super::rational::{format_rational, parse_rational};
use super::{FormatError, Lines};

pub fn parse_joint(text: &str) -> Result<JointPresentation, FormatError> {
    let mut lines = Lines::new(text);
    let (n, version) = lines.expect("joint")?;
    if version != ["1"] {
        return Err(FormatError::new(n, "unsupported joint version"));
    }
    let (n, eps) = lines.expect("epsilon")?;
    let eps = match eps.as_slice() {
        [e] => parse_rational(e).map_err(|m| FormatError::new(n, m))?,
        _ => return Err(FormatError::new(n, "'epsilon' takes one value")),
    };
    let m = parse_block(&mut lines)?;
    let q = parse_block(&mut lines)?;
    lines.finish()?;
    if m.field != q.field || m.dim != q.dim {
        return Err(FormatError::new(q.header_line, "blocks disagree on field or params"));
    }
    let mut relation_lines = m.relation_lines.clone();
    relation_lines.extend(&q.relation_lines);
    JointPresentation::new(
        m.dim,
        m.field,
        eps,
        m.generators,
        q.generators,
        m.relations,
        q.relations,
    )
    .map_err(|e| locate(e, &relation_lines, n))
}

pub fn serialize_joint(j: &JointPresentation) -> String {
    let mut out = format!("joint 1\nepsilon {}\n", format_rational(j.epsilon()));
    write_block(&mut out, j.field(), j.dim(), j.m_generators(), j.m_relations());
    write_block(&mut out, j.field(), j.dim(), j.n_generators(), j.n_relations());
    out
}
