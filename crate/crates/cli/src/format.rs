//! The algebra file grammar.
//!
//! ```text
//! # comment to end of line
//! name = z4_heap
//! kind = heap
//! size = 4
//!
//! [ternary]
//! <n blocks of n lines of n integers, blocks separated by blank lines;
//!  block index = first argument, line = second, column = third>
//!
//! [mul]
//! <n lines of n integers; line = left argument>
//! ```
//!
//! Required sections per kind: heap/semiheap need `[ternary]`;
//! near_truss_left/near_truss_right/truss need `[ternary]` and `[mul]`;
//! jring/ring need `[add]` and `[mul]`; group needs `[mul]`; skew_brace needs
//! `[star]` and `[circ]`. Derived kinds (group → heap, ring → truss,
//! skew_brace → near_truss) are converted on demand, not at parse time.

use std::fmt;

use trusskit_core::group::GroupView;
use trusskit_core::heap::{heap_from_group, Heap, Semiheap};
use trusskit_core::ideal::JRing;
use trusskit_core::truss::{
    near_truss_from_ring, near_truss_from_skew_brace, NearTruss, RingKind, Side, SkewBrace,
};
use trusskit_core::{BinaryTable, Limits, TernaryTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Semiheap,
    Heap,
    NearTrussLeft,
    NearTrussRight,
    Truss,
    JRing,
    Group,
    Ring,
    SkewBrace,
}

impl Kind {
    pub fn parse(token: &str) -> Option<Kind> {
        Some(match token {
            "semiheap" => Kind::Semiheap,
            "heap" => Kind::Heap,
            "near_truss_left" => Kind::NearTrussLeft,
            "near_truss_right" => Kind::NearTrussRight,
            "truss" => Kind::Truss,
            "jring" => Kind::JRing,
            "group" => Kind::Group,
            "ring" => Kind::Ring,
            "skew_brace" => Kind::SkewBrace,
            _ => return None,
        })
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Kind::Semiheap => "semiheap",
            Kind::Heap => "heap",
            Kind::NearTrussLeft => "near_truss_left",
            Kind::NearTrussRight => "near_truss_right",
            Kind::Truss => "truss",
            Kind::JRing => "jring",
            Kind::Group => "group",
            Kind::Ring => "ring",
            Kind::SkewBrace => "skew_brace",
        }
    }

    /// Required sections, in canonical serialization order.
    pub fn sections(&self) -> &'static [(&'static str, Arity)] {
        match self {
            Kind::Semiheap | Kind::Heap => &[("ternary", Arity::Ternary)],
            Kind::NearTrussLeft | Kind::NearTrussRight | Kind::Truss => {
                &[("ternary", Arity::Ternary), ("mul", Arity::Binary)]
            }
            Kind::JRing | Kind::Ring => &[("add", Arity::Binary), ("mul", Arity::Binary)],
            Kind::Group => &[("mul", Arity::Binary)],
            Kind::SkewBrace => &[("star", Arity::Binary), ("circ", Arity::Binary)],
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Arity {
    Binary,
    Ternary,
}

impl Arity {
    fn entries(&self, n: usize) -> usize {
        match self {
            Arity::Binary => n * n,
            Arity::Ternary => n * n * n,
        }
    }
}

/// Parse failure with 1-based position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    fn at(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "line {}, column {}: {}",
            self.line, self.column, self.message
        )
    }
}

#[derive(Debug, Clone)]
pub struct AlgebraFile {
    pub name: String,
    pub kind: Kind,
    pub size: usize,
    /// sections in canonical order, flat entries
    pub sections: Vec<(String, Vec<usize>)>,
}

pub fn parse_algebra(text: &str) -> Result<AlgebraFile, ParseError> {
    let mut name: Option<String> = None;
    let mut kind: Option<Kind> = None;
    let mut size: Option<usize> = None;
    let mut sections: Vec<(String, Vec<usize>)> = Vec::new();
    let mut current: Option<(String, Arity, Vec<usize>, usize)> = None; // name, arity, entries, header line
    let mut rows_in_block = 0usize;

    let close_section = |current: &mut Option<(String, Arity, Vec<usize>, usize)>,
                         sections: &mut Vec<(String, Vec<usize>)>,
                         size: usize|
     -> Result<(), ParseError> {
        if let Some((sname, arity, entries, header_line)) = current.take() {
            let expected = arity.entries(size);
            if entries.len() != expected {
                return Err(ParseError::at(
                    header_line,
                    1,
                    format!(
                        "section [{sname}] has {} entries, expected {expected}",
                        entries.len()
                    ),
                ));
            }
            sections.push((sname, entries));
        }
        Ok(())
    };

    for (index, raw_line) in text.lines().enumerate() {
        let lineno = index + 1;
        let line = match raw_line.find('#') {
            Some(cut) => &raw_line[..cut],
            None => raw_line,
        };
        let trimmed = line.trim();
        if trimmed.is_empty() {
            rows_in_block = 0; // block separator inside ternary sections
            continue;
        }

        if let Some(rest) = trimmed.strip_prefix('[') {
            let section_name = rest.strip_suffix(']').ok_or_else(|| {
                ParseError::at(lineno, 1, "section header must end with ']'")
            })?;
            let declared_kind = kind
                .ok_or_else(|| ParseError::at(lineno, 1, "kind must precede the first section"))?;
            let declared_size = size
                .ok_or_else(|| ParseError::at(lineno, 1, "size must precede the first section"))?;
            close_section(&mut current, &mut sections, declared_size)?;
            let arity = declared_kind
                .sections()
                .iter()
                .find(|(n, _)| *n == section_name)
                .map(|&(_, a)| a)
                .ok_or_else(|| {
                    ParseError::at(
                        lineno,
                        1,
                        format!("unknown section [{section_name}] for kind {declared_kind}"),
                    )
                })?;
            if sections.iter().any(|(n, _)| n == section_name) {
                return Err(ParseError::at(
                    lineno,
                    1,
                    format!("duplicate section [{section_name}]"),
                ));
            }
            current = Some((section_name.to_string(), arity, Vec::new(), lineno));
            rows_in_block = 0;
            continue;
        }

        if current.is_none() {
            // header line: key = value
            let (key, value) = trimmed.split_once('=').ok_or_else(|| {
                ParseError::at(lineno, 1, "expected `key = value` before the first section")
            })?;
            let key = key.trim();
            let value = value.trim();
            let value_column = line.find('=').map(|p| p + 2).unwrap_or(1);
            match key {
                "name" => name = Some(value.to_string()),
                "kind" => {
                    kind = Some(Kind::parse(value).ok_or_else(|| {
                        ParseError::at(lineno, value_column, format!("unknown kind {value:?}"))
                    })?)
                }
                "size" => {
                    let parsed: usize = value.parse().map_err(|_| {
                        ParseError::at(lineno, value_column, format!("bad size {value:?}"))
                    })?;
                    if parsed == 0 {
                        return Err(ParseError::at(
                            lineno,
                            value_column,
                            "size = 0: empty heap not representable",
                        ));
                    }
                    size = Some(parsed);
                }
                other => {
                    return Err(ParseError::at(
                        lineno,
                        1,
                        format!("unknown header key {other:?}"),
                    ))
                }
            }
            continue;
        }

        // a data row inside the current section
        let n = size.expect("sections require size");
        let (sname, arity, entries, _) = current.as_mut().expect("checked above");
        if *arity == Arity::Ternary && rows_in_block == n {
            return Err(ParseError::at(
                lineno,
                1,
                format!("block in [{sname}] has more than {n} rows; blocks are separated by blank lines"),
            ));
        }
        let mut row_len = 0usize;
        let mut cursor = 0usize;
        for token in line.split_whitespace() {
            let column = line[cursor..]
                .find(token)
                .map(|p| cursor + p + 1)
                .unwrap_or(1);
            cursor = column - 1 + token.len();
            let value: usize = token.parse().map_err(|_| {
                ParseError::at(lineno, column, format!("bad table entry {token:?}"))
            })?;
            if value >= n {
                return Err(ParseError::at(
                    lineno,
                    column,
                    format!("entry {value} out of range for size {n}"),
                ));
            }
            entries.push(value);
            row_len += 1;
        }
        if row_len != n {
            return Err(ParseError::at(
                lineno,
                1,
                format!("row has {row_len} entries, expected {n}"),
            ));
        }
        rows_in_block += 1;
    }

    let kind = kind.ok_or_else(|| ParseError::at(1, 1, "missing `kind = ...` header"))?;
    let size = size.ok_or_else(|| ParseError::at(1, 1, "missing `size = ...` header"))?;
    close_section(&mut current, &mut sections, size)?;
    for (required, _) in kind.sections() {
        if !sections.iter().any(|(n, _)| n == required) {
            return Err(ParseError::at(
                1,
                1,
                format!("missing section [{required}] for kind {kind}"),
            ));
        }
    }
    // keep canonical section order
    let mut ordered = Vec::new();
    for (required, _) in kind.sections() {
        let found = sections
            .iter()
            .find(|(n, _)| n == required)
            .expect("checked above");
        ordered.push(found.clone());
    }
    Ok(AlgebraFile {
        name: name.unwrap_or_else(|| "unnamed".to_string()),
        kind,
        size,
        sections: ordered,
    })
}

pub fn serialize_algebra(file: &AlgebraFile) -> String {
    let mut out = String::new();
    out.push_str(&format!("name = {}\n", file.name));
    out.push_str(&format!("kind = {}\n", file.kind));
    out.push_str(&format!("size = {}\n", file.size));
    let n = file.size;
    for (sname, entries) in &file.sections {
        out.push('\n');
        out.push_str(&format!("[{sname}]\n"));
        let ternary = entries.len() == n * n * n;
        let blocks = if ternary { n } else { 1 };
        for block in 0..blocks {
            if block > 0 {
                out.push('\n');
            }
            for row in 0..n {
                let start = (block * n + row) * n;
                let cells: Vec<String> = entries[start..start + n]
                    .iter()
                    .map(|v| v.to_string())
                    .collect();
                out.push_str(&cells.join(" "));
                out.push('\n');
            }
        }
    }
    out
}

impl AlgebraFile {
    pub fn from_tables(
        name: &str,
        kind: Kind,
        size: usize,
        tables: Vec<(&str, Vec<usize>)>,
    ) -> AlgebraFile {
        AlgebraFile {
            name: name.to_string(),
            kind,
            size,
            sections: tables
                .into_iter()
                .map(|(n, e)| (n.to_string(), e))
                .collect(),
        }
    }

    pub fn section(&self, name: &str) -> Option<&[usize]> {
        self.sections
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, e)| e.as_slice())
    }

    fn binary(&self, name: &str) -> trusskit_core::Result<BinaryTable> {
        let entries = self
            .section(name)
            .unwrap_or_else(|| panic!("section [{name}] checked at parse time"));
        BinaryTable::new(self.size, entries.to_vec())
    }

    /// The ternary table of this algebra, deriving it for group, ring,
    /// jring and skew-brace kinds.
    pub fn ternary_table(&self) -> trusskit_core::Result<TernaryTable> {
        match self.kind {
            Kind::Semiheap
            | Kind::Heap
            | Kind::NearTrussLeft
            | Kind::NearTrussRight
            | Kind::Truss => {
                TernaryTable::new(self.size, self.section("ternary").expect("parsed").to_vec())
            }
            Kind::Group => {
                let group = GroupView::from_table(self.binary("mul")?)?;
                Ok(heap_from_group(&group).table().clone())
            }
            Kind::Ring | Kind::JRing => {
                let add = GroupView::from_table(self.binary("add")?)?;
                TernaryTable::from_fn(self.size, |x, y, z| add.mul(add.mul(x, add.inv(y)), z))
            }
            Kind::SkewBrace => {
                let star = GroupView::from_table(self.binary("star")?)?;
                TernaryTable::from_fn(self.size, |x, y, z| star.mul(star.mul(x, star.inv(y)), z))
            }
        }
    }

    pub fn heap(&self, limits: &Limits) -> trusskit_core::Result<Heap> {
        Heap::new(self.ternary_table()?, limits)
    }

    pub fn semiheap(&self, limits: &Limits) -> trusskit_core::Result<Semiheap> {
        Semiheap::new(self.ternary_table()?, limits)
    }

    /// The near-truss view: direct for truss kinds, derived for ring and
    /// skew-brace files.
    pub fn near_truss(&self, limits: &Limits) -> trusskit_core::Result<NearTruss> {
        match self.kind {
            Kind::Truss => NearTruss::new(
                self.ternary_table()?,
                self.binary("mul")?,
                Side::Both,
                limits,
            ),
            Kind::NearTrussLeft => NearTruss::new(
                self.ternary_table()?,
                self.binary("mul")?,
                Side::Left,
                limits,
            ),
            Kind::NearTrussRight => NearTruss::new(
                self.ternary_table()?,
                self.binary("mul")?,
                Side::Right,
                limits,
            ),
            Kind::Ring => {
                let add = GroupView::from_table(self.binary("add")?)?;
                near_truss_from_ring(&add, &self.binary("mul")?, RingKind::Ring)
            }
            Kind::SkewBrace => near_truss_from_skew_brace(&self.skew_brace()?),
            other => Err(trusskit_core::Error::Unsupported(format!(
                "kind {other} has no near-truss view"
            ))),
        }
    }

    pub fn group_view(&self) -> trusskit_core::Result<GroupView> {
        match self.kind {
            Kind::Group => GroupView::from_table(self.binary("mul")?),
            Kind::Ring | Kind::JRing => GroupView::from_table(self.binary("add")?),
            other => Err(trusskit_core::Error::Unsupported(format!(
                "kind {other} has no group view"
            ))),
        }
    }

    pub fn jring(&self) -> trusskit_core::Result<JRing> {
        match self.kind {
            Kind::JRing | Kind::Ring => {
                let add = GroupView::from_table(self.binary("add")?)?;
                JRing::new(add, self.binary("mul")?)
            }
            other => Err(trusskit_core::Error::Unsupported(format!(
                "kind {other} has no J-ring view"
            ))),
        }
    }

    pub fn skew_brace(&self) -> trusskit_core::Result<SkewBrace> {
        match self.kind {
            Kind::SkewBrace => {
                let star = GroupView::from_table(self.binary("star")?)?;
                let circ = GroupView::from_table(self.binary("circ")?)?;
                SkewBrace::new(star, circ)
            }
            other => Err(trusskit_core::Error::Unsupported(format!(
                "kind {other} is not a skew brace"
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z4_HEAP: &str = "\
# the cyclic heap on four elements
name = z4_heap
kind = heap
size = 4

[ternary]
0 1 2 3
3 0 1 2
2 3 0 1
1 2 3 0

1 2 3 0
0 1 2 3
3 0 1 2
2 3 0 1

2 3 0 1
1 2 3 0
0 1 2 3
3 0 1 2

3 0 1 2
2 3 0 1
1 2 3 0
0 1 2 3
";

    #[test]
    fn parses_and_round_trips() {
        let file = parse_algebra(Z4_HEAP).unwrap();
        assert_eq!(file.name, "z4_heap");
        assert_eq!(file.kind, Kind::Heap);
        assert_eq!(file.size, 4);
        let table = file.ternary_table().unwrap();
        for x in 0..4usize {
            for y in 0..4usize {
                for z in 0..4usize {
                    assert_eq!(table.get(x, y, z), (x + 4 - y + z) % 4);
                }
            }
        }
        let text = serialize_algebra(&file);
        let reparsed = parse_algebra(&text).unwrap();
        assert_eq!(reparsed.sections, file.sections);
        assert_eq!(serialize_algebra(&reparsed), text);
    }

    #[test]
    fn reports_row_arity_mismatch_with_position() {
        let broken = Z4_HEAP.replace("3 0 1 2\n2 3 0 1\n1 2 3 0\n0 1 2 3\n", "3 0 1 2 3\n");
        let err = parse_algebra(&broken).unwrap_err();
        assert!(err.message.contains("expected 4"), "{err}");
    }

    #[test]
    fn rejects_out_of_range_and_zero_size() {
        let broken = Z4_HEAP.replace("0 1 2 3", "0 1 2 7");
        let err = parse_algebra(&broken).unwrap_err();
        assert!(err.message.contains("out of range"), "{err}");
        assert!(err.column > 1);

        let err = parse_algebra("kind = heap\nsize = 0\n").unwrap_err();
        assert!(err.message.contains("empty heap not representable"));
    }

    #[test]
    fn rejects_unknown_kind_and_missing_section() {
        let err = parse_algebra("kind = loop\nsize = 2\n").unwrap_err();
        assert!(err.message.contains("unknown kind"));

        let err = parse_algebra("kind = heap\nsize = 2\n").unwrap_err();
        assert!(err.message.contains("missing section [ternary]"));
    }

    #[test]
    fn group_file_derives_a_heap() {
        let text = "name = z4\nkind = group\nsize = 4\n\n[mul]\n0 1 2 3\n1 2 3 0\n2 3 0 1\n3 0 1 2\n";
        let file = parse_algebra(text).unwrap();
        let heap = file.heap(&Limits::default()).unwrap();
        assert_eq!(heap.get(1, 2, 3), 2);
        assert!(file.near_truss(&Limits::default()).is_err());
    }
}
