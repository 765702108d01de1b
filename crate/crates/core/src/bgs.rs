//! The BGS text format for groups, spaces, actions, fields and binary
//! operations.
//!
//! ```text
//! # comment to end of line
//! GROUP z2
//! ORDER 2
//! TABLE
//! 0 1
//! 1 0
//! END
//! SPACE 3
//! ACTION z2          # |G| slices of m rows, group-index order, m from the last SPACE
//! 0 1 2
//! ...
//! END
//! FIELD
//! ORDER 3
//! ADD
//! ...
//! MUL
//! ...
//! END
//! OP                 # m rows of m entries
//! ...
//! END
//! ```
//!
//! Every table is validated by its owning module on load. Groups whose
//! identity is not at index 0 are renumbered (and actions over them permuted
//! to match); fields are renumbered so zero is 0 and one is 1.

use std::collections::HashMap;
use std::fmt::Write;

use crate::action::BinaryAction;
use crate::binop::BinaryOp;
use crate::error::{Error, Result};
use crate::field::FiniteField;
use crate::group::FiniteGroup;

pub const HEADER: &str = "# BGS: 0-based indices; group identity = 0; field zero = 0, one = 1";

#[derive(Debug, Clone, PartialEq)]
pub enum Block {
    Group { name: String, group: FiniteGroup },
    Space(usize),
    Action { group: String, action: BinaryAction },
    Field(FiniteField),
    Op(BinaryOp),
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct BgsDocument {
    pub blocks: Vec<Block>,
}

impl BgsDocument {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push_group(&mut self, name: &str, group: &FiniteGroup) {
        self.blocks.push(Block::Group { name: name.to_string(), group: group.clone() });
    }

    /// Append a GROUP, SPACE and ACTION block for `action`.
    pub fn push_action(&mut self, group_name: &str, action: &BinaryAction) {
        self.push_group(group_name, action.group());
        self.blocks.push(Block::Space(action.space_size()));
        self.blocks
            .push(Block::Action { group: group_name.to_string(), action: action.clone() });
    }

    pub fn push_field(&mut self, field: &FiniteField) {
        self.blocks.push(Block::Field(field.clone()));
    }

    pub fn groups(&self) -> impl Iterator<Item = (&str, &FiniteGroup)> {
        self.blocks.iter().filter_map(|b| match b {
            Block::Group { name, group } => Some((name.as_str(), group)),
            _ => None,
        })
    }

    pub fn actions(&self) -> impl Iterator<Item = &BinaryAction> {
        self.blocks.iter().filter_map(|b| match b {
            Block::Action { action, .. } => Some(action),
            _ => None,
        })
    }

    pub fn fields(&self) -> impl Iterator<Item = &FiniteField> {
        self.blocks.iter().filter_map(|b| match b {
            Block::Field(f) => Some(f),
            _ => None,
        })
    }

    pub fn ops(&self) -> impl Iterator<Item = &BinaryOp> {
        self.blocks.iter().filter_map(|b| match b {
            Block::Op(op) => Some(op),
            _ => None,
        })
    }
}

struct Lines<'a> {
    lines: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty())
            .collect();
        Lines { lines, pos: 0 }
    }

    fn next(&mut self, context: &str) -> Result<(usize, &'a str)> {
        let last = self.lines.last().map_or(1, |l| l.0);
        let item = self.lines.get(self.pos).copied().ok_or_else(|| Error::Parse {
            line: last,
            message: format!("unexpected end of input in {context}"),
        })?;
        self.pos += 1;
        Ok(item)
    }

    fn peek(&self) -> Option<(usize, &'a str)> {
        self.lines.get(self.pos).copied()
    }

    fn expect(&mut self, keyword: &str, context: &str) -> Result<usize> {
        let (line, text) = self.next(context)?;
        if text != keyword {
            return Err(Error::Parse { line, message: format!("expected {keyword}, found {text:?}") });
        }
        Ok(line)
    }

    /// `KEYWORD <number>`.
    fn expect_count(&mut self, keyword: &str, context: &str) -> Result<usize> {
        let (line, text) = self.next(context)?;
        let mut parts = text.split_whitespace();
        if parts.next() != Some(keyword) {
            return Err(Error::Parse { line, message: format!("expected {keyword} <n>, found {text:?}") });
        }
        parse_count(parts, line)
    }

    fn row(&mut self, width: Option<usize>, context: &str) -> Result<(usize, Vec<usize>)> {
        let (line, text) = self.next(context)?;
        let row = parse_row(text, line)?;
        if let Some(w) = width {
            if row.len() != w {
                return Err(Error::Parse {
                    line,
                    message: format!("row has {} entries, expected {w}", row.len()),
                });
            }
        }
        Ok((line, row))
    }

    fn rows(&mut self, count: usize, width: usize, context: &str) -> Result<Vec<Vec<usize>>> {
        (0..count).map(|_| self.row(Some(width), context).map(|r| r.1)).collect()
    }
}

fn parse_count<'a>(mut parts: impl Iterator<Item = &'a str>, line: usize) -> Result<usize> {
    let n = parts
        .next()
        .and_then(|t| t.parse::<usize>().ok())
        .filter(|&n| n > 0)
        .ok_or_else(|| Error::Parse { line, message: "expected a positive integer".into() })?;
    if parts.next().is_some() {
        return Err(Error::Parse { line, message: "trailing tokens".into() });
    }
    Ok(n)
}

fn parse_row(text: &str, line: usize) -> Result<Vec<usize>> {
    text.split_whitespace()
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| Error::Parse { line, message: format!("expected an integer, found {t:?}") })
        })
        .collect()
}

fn at_line(line: usize) -> impl Fn(Error) -> Error {
    move |e| match e {
        Error::Parse { .. } | Error::Validation { .. } => e,
        Error::Shape(message) => Error::Parse { line, message },
        other => Error::Validation { line, message: other.to_string() },
    }
}

/// Parse a BGS document, validating every table.
pub fn parse_bgs(text: &str) -> Result<BgsDocument> {
    let mut lines = Lines::new(text);
    let mut doc = BgsDocument::new();
    let mut groups: HashMap<String, (FiniteGroup, Vec<usize>)> = HashMap::new();
    let mut space: Option<usize> = None;

    while let Some((line, text)) = lines.peek() {
        lines.pos += 1;
        let mut parts = text.split_whitespace();
        let keyword = parts.next().unwrap_or("");
        match keyword {
            "GROUP" => {
                let name = parts.next().ok_or_else(|| Error::Parse {
                    line,
                    message: "GROUP needs a name".into(),
                })?;
                if parts.next().is_some() {
                    return Err(Error::Parse { line, message: "trailing tokens".into() });
                }
                let n = lines.expect_count("ORDER", "GROUP")?;
                lines.expect("TABLE", "GROUP")?;
                let table = lines.rows(n, n, "GROUP")?;
                lines.expect("END", "GROUP")?;
                let (group, relabel) = FiniteGroup::from_table(&table).map_err(at_line(line))?;
                groups.insert(name.to_string(), (group.clone(), relabel));
                doc.blocks.push(Block::Group { name: name.to_string(), group });
            }
            "SPACE" => {
                let m = parse_count(parts, line)?;
                space = Some(m);
                doc.blocks.push(Block::Space(m));
            }
            "ACTION" => {
                let name = parts.next().ok_or_else(|| Error::Parse {
                    line,
                    message: "ACTION needs a group name".into(),
                })?;
                let (group, relabel) = groups.get(name).cloned().ok_or_else(|| Error::Parse {
                    line,
                    message: format!("ACTION refers to unknown group {name:?}"),
                })?;
                let m = space.ok_or_else(|| Error::Parse {
                    line,
                    message: "ACTION before any SPACE block".into(),
                })?;
                let n = group.order();
                let rows = lines.rows(n * m, m, "ACTION")?;
                lines.expect("END", "ACTION")?;
                let mm = m * m;
                let mut table = vec![0; n * mm];
                for (old, slice) in rows.chunks(m).enumerate() {
                    let new = relabel[old];
                    for (x, row) in slice.iter().enumerate() {
                        table[new * mm + x * m..new * mm + (x + 1) * m].copy_from_slice(row);
                    }
                }
                let action = BinaryAction::from_flat(group, m, table).map_err(at_line(line))?;
                doc.blocks.push(Block::Action { group: name.to_string(), action });
            }
            "FIELD" => {
                if parts.next().is_some() {
                    return Err(Error::Parse { line, message: "trailing tokens".into() });
                }
                let q = lines.expect_count("ORDER", "FIELD")?;
                lines.expect("ADD", "FIELD")?;
                let add = lines.rows(q, q, "FIELD")?;
                lines.expect("MUL", "FIELD")?;
                let mul = lines.rows(q, q, "FIELD")?;
                lines.expect("END", "FIELD")?;
                let (field, _) =
                    FiniteField::from_tables_renumbered(&add, &mul).map_err(at_line(line))?;
                doc.blocks.push(Block::Field(field));
            }
            "OP" => {
                let (_, first) = lines.row(None, "OP")?;
                let m = first.len();
                let mut rows = vec![first];
                rows.extend(lines.rows(m - 1, m, "OP")?);
                lines.expect("END", "OP")?;
                let op = BinaryOp::from_rows(&rows).map_err(at_line(line))?;
                doc.blocks.push(Block::Op(op));
            }
            other => {
                return Err(Error::Parse { line, message: format!("unknown block keyword {other:?}") });
            }
        }
    }
    Ok(doc)
}

fn write_rows(out: &mut String, rows: &[Vec<usize>]) {
    for row in rows {
        let cells: Vec<String> = row.iter().map(usize::to_string).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
}

/// Canonical rendering: one header comment, single spaces, one row per line.
pub fn serialize_bgs(doc: &BgsDocument) -> String {
    if doc.blocks.is_empty() {
        return String::new();
    }
    let mut out = String::new();
    out.push_str(HEADER);
    out.push('\n');
    for block in &doc.blocks {
        match block {
            Block::Group { name, group } => {
                let _ = writeln!(out, "GROUP {name}\nORDER {}\nTABLE", group.order());
                write_rows(&mut out, &group.table());
                out.push_str("END\n");
            }
            Block::Space(m) => {
                let _ = writeln!(out, "SPACE {m}");
            }
            Block::Action { group, action } => {
                let _ = writeln!(out, "ACTION {group}");
                for slice in action.slices() {
                    write_rows(&mut out, &slice);
                }
                out.push_str("END\n");
            }
            Block::Field(field) => {
                let _ = writeln!(out, "FIELD\nORDER {}\nADD", field.order());
                write_rows(&mut out, &field.add_table());
                out.push_str("MUL\n");
                write_rows(&mut out, &field.mul_table());
                out.push_str("END\n");
            }
            Block::Op(op) => {
                out.push_str("OP\n");
                write_rows(&mut out, &op.rows());
                out.push_str("END\n");
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::gf;

    const ACT3: &str = "\
# the GF(3) action 2x + 2y
GROUP z2
ORDER 2
TABLE
0 1
1 0
END
SPACE 3
ACTION z2
0 1 2   # identity slice
0 1 2
0 1 2
0 2 1
2 1 0
1 0 2
END
";

    #[test]
    fn trivial_group_document() {
        let doc = parse_bgs("GROUP g\nORDER 1\nTABLE\n0\nEND").unwrap();
        assert_eq!(doc.blocks.len(), 1);
        let (name, g) = doc.groups().next().unwrap();
        assert_eq!(name, "g");
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn act3_loads() {
        let doc = parse_bgs(ACT3).unwrap();
        let a = doc.actions().next().unwrap();
        assert!(a.is_semitransitive() && a.distributive());
        assert_eq!(a.act(1, 1, 2), 0);
    }

    #[test]
    fn short_row_is_a_shape_error_at_its_line() {
        let text = ACT3.replace("2 1 0\n", "2 1\n");
        match parse_bgs(&text) {
            Err(Error::Parse { line, message }) => {
                assert_eq!(line, 14);
                assert!(message.contains("expected 3"), "{message}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn dangling_reference_and_invalid_tables() {
        let text = ACT3.replace("ACTION z2", "ACTION nope");
        assert!(matches!(parse_bgs(&text), Err(Error::Parse { line: 9, .. })));
        let text = ACT3.replace("SPACE 3\n", "");
        assert!(parse_bgs(&text).is_err());
        // breaks action condition 1
        let text = ACT3.replace("0 2 1\n", "0 1 1\n");
        assert!(matches!(parse_bgs(&text), Err(Error::Validation { line: 9, .. })));
        let bad_group = parse_bgs("GROUP g\nORDER 2\nTABLE\n0 1\n1 1\nEND\n");
        assert!(matches!(bad_group, Err(Error::Validation { line: 1, .. })));
        assert!(parse_bgs("BOGUS\n").is_err());
        assert!(parse_bgs("GROUP g\nORDER 2\nTABLE\n0 1\n").is_err());
    }

    #[test]
    fn identity_not_at_zero_is_renumbered() {
        let text = "GROUP g\nORDER 2\nTABLE\n1 0\n0 1\nEND\nSPACE 2\nACTION g\n1 0\n1 0\n0 1\n0 1\nEND\n";
        let doc = parse_bgs(text).unwrap();
        let a = doc.actions().next().unwrap();
        assert_eq!(a.slice(0).rows(), vec![vec![0, 1], vec![0, 1]]);
        assert_eq!(a.slice(1).rows(), vec![vec![1, 0], vec![1, 0]]);
    }

    #[test]
    fn field_block_rendering() {
        let mut doc = BgsDocument::new();
        doc.push_field(&gf(3, 1).unwrap());
        let text = serialize_bgs(&doc);
        let expected = format!(
            "{HEADER}\nFIELD\nORDER 3\nADD\n0 1 2\n1 2 0\n2 0 1\nMUL\n0 0 0\n0 1 2\n0 2 1\nEND\n"
        );
        assert_eq!(text, expected);
        assert_eq!(parse_bgs(&text).unwrap(), doc);
    }

    #[test]
    fn empty_document() {
        assert_eq!(serialize_bgs(&BgsDocument::new()), "");
        assert_eq!(parse_bgs("# nothing\n\n").unwrap(), BgsDocument::new());
    }

    #[test]
    fn serialization_is_idempotent() {
        let mut doc = parse_bgs(ACT3).unwrap();
        doc.blocks.push(Block::Op(crate::binop::identity_op(3)));
        doc.push_field(&gf(2, 2).unwrap());
        let once = serialize_bgs(&doc);
        let reparsed = parse_bgs(&once).unwrap();
        assert_eq!(reparsed, doc);
        assert_eq!(serialize_bgs(&reparsed), once);
    }
}
