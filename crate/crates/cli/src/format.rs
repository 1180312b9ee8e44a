//! File formats.
//!
//! Functions use a line-oriented text format:
//!
//! ```text
//! n=2          n=1          grid=3x2
//! 0110         01           011
//!              10           110
//! ```
//!
//! A truth table is `n=<n>` followed by one line of `2^n` bits in input
//! order. A matrix is `n=<n>` followed by `2^n` rows of `2^n` bits, row `x`
//! belonging to Alice and column `y` to Bob. `grid=<W>x<H>` introduces a
//! general matrix with `H` rows of `W` bits, used for arbitrary cell regions.
//!
//! Trees, protocols and tilings are JSON documents tagged by `kind`; see
//! the README for the field list. Writers emit one canonical form, so equal
//! values serialize to identical bytes.

use std::fmt;

use cmpcc::boolfn::MAX_ARITY;
use cmpcc::fmatrix::MAX_MATRIX_ARITY;
use cmpcc::{
    ComparisonTree, FunctionMatrix, GeoRect, Party, Protocol, ProtocolNode, Query, Tile, Tiling,
    TreeNode, TruthTable,
};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// 1-based line and column, when the failure has a position.
    pub position: Option<(usize, usize)>,
    pub message: String,
}

impl ParseError {
    fn at(line: usize, column: usize, message: impl Into<String>) -> Self {
        Self {
            position: Some((line, column)),
            message: message.into(),
        }
    }

    fn whole(message: impl Into<String>) -> Self {
        Self {
            position: None,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.position {
            Some((line, column)) => write!(f, "line {line}, column {column}: {}", self.message),
            None => f.write_str(&self.message),
        }
    }
}

impl std::error::Error for ParseError {}

/// A tiling together with the grid it is meant to cover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TilingDoc {
    pub rows: usize,
    pub cols: usize,
    pub tiling: Tiling,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Table(TruthTable),
    Matrix(FunctionMatrix),
    Tree(ComparisonTree),
    Protocol(Protocol),
    Tiling(TilingDoc),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Table(_) => "table",
            Document::Matrix(_) => "matrix",
            Document::Tree(_) => "tree",
            Document::Protocol(_) => "protocol",
            Document::Tiling(_) => "tiling",
        }
    }
}

/// Parses any supported file, telling formats apart by their first line.
pub fn parse_document(text: &str) -> Result<Document, ParseError> {
    if text.trim_start().starts_with('{') {
        return parse_artifact(text);
    }
    let lines = data_lines(text);
    let Some(&(_, header)) = lines.first() else {
        return Err(ParseError::at(1, 1, "empty input"));
    };
    if header.starts_with("n=") && lines.len() == 2 {
        parse_table(text).map(Document::Table)
    } else {
        parse_matrix(text).map(Document::Matrix)
    }
}

/// Lines with their 1-based numbers, dropping trailing blank lines and `\r`.
fn data_lines(text: &str) -> Vec<(usize, &str)> {
    let mut lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.strip_suffix('\r').unwrap_or(l)))
        .collect();
    while lines.last().is_some_and(|(_, l)| l.trim().is_empty()) {
        lines.pop();
    }
    lines
}

fn parse_number<T: std::str::FromStr>(
    s: &str,
    line: usize,
    column: usize,
) -> Result<T, ParseError> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ParseError::at(
            line,
            column,
            format!("expected a number, found '{s}'"),
        ));
    }
    s.parse()
        .map_err(|_| ParseError::at(line, column, format!("number '{s}' is out of range")))
}

fn parse_arity(header: &str, line: usize, max: u32) -> Result<u32, ParseError> {
    let Some(rest) = header.strip_prefix("n=") else {
        return Err(ParseError::at(line, 1, "expected header 'n=<arity>'"));
    };
    let n: u32 = parse_number(rest, line, 3)?;
    if n == 0 || n > max {
        return Err(ParseError::at(
            line,
            3,
            format!("arity {n} outside 1..={max}"),
        ));
    }
    Ok(n)
}

fn parse_bits(row: &str, line: usize, width: usize, out: &mut Vec<bool>) -> Result<(), ParseError> {
    for (i, ch) in row.chars().enumerate() {
        if i == width {
            return Err(ParseError::at(
                line,
                i + 1,
                format!("expected {width} bits, line is longer"),
            ));
        }
        match ch {
            '0' => out.push(false),
            '1' => out.push(true),
            other => {
                return Err(ParseError::at(
                    line,
                    i + 1,
                    format!("expected '0' or '1', found '{other}'"),
                ))
            }
        }
    }
    let got = row.chars().count();
    if got < width {
        return Err(ParseError::at(
            line,
            got + 1,
            format!("expected {width} bits, found {got}"),
        ));
    }
    Ok(())
}

pub fn parse_table(text: &str) -> Result<TruthTable, ParseError> {
    let lines = data_lines(text);
    let Some(&(hl, header)) = lines.first() else {
        return Err(ParseError::at(1, 1, "empty input"));
    };
    let n = parse_arity(header, hl, MAX_ARITY)?;
    let Some(&(line, row)) = lines.get(1) else {
        return Err(ParseError::at(hl + 1, 1, "missing truth table line"));
    };
    if let Some(&(extra, _)) = lines.get(2) {
        return Err(ParseError::at(
            extra,
            1,
            "unexpected line after truth table",
        ));
    }
    let mut values = Vec::with_capacity(1 << n);
    parse_bits(row, line, 1 << n, &mut values)?;
    Ok(TruthTable::new(n, values).expect("length checked"))
}

pub fn parse_matrix(text: &str) -> Result<FunctionMatrix, ParseError> {
    let lines = data_lines(text);
    let Some(&(hl, header)) = lines.first() else {
        return Err(ParseError::at(1, 1, "empty input"));
    };
    let (rows, cols) = if let Some(rest) = header.strip_prefix("grid=") {
        let Some((w, h)) = rest.split_once('x') else {
            return Err(ParseError::at(hl, 6, "expected 'grid=<width>x<height>'"));
        };
        let cols: usize = parse_number(w, hl, 6)?;
        let rows: usize = parse_number(h, hl, 7 + w.len())?;
        if rows == 0 || cols == 0 {
            return Err(ParseError::at(hl, 6, "grid dimensions must be positive"));
        }
        (rows, cols)
    } else if header.starts_with("n=") {
        let n = parse_arity(header, hl, MAX_MATRIX_ARITY)?;
        (1usize << n, 1usize << n)
    } else {
        return Err(ParseError::at(
            hl,
            1,
            "expected header 'n=<arity>' or 'grid=<width>x<height>'",
        ));
    };
    let body = &lines[1..];
    if let Some(&(extra, _)) = body.get(rows) {
        return Err(ParseError::at(
            extra,
            1,
            format!("expected {rows} rows, found more"),
        ));
    }
    let mut bits = Vec::with_capacity(rows * cols);
    for &(line, row) in body {
        parse_bits(row, line, cols, &mut bits)?;
    }
    if body.len() < rows {
        let next = body.last().map_or(hl, |&(l, _)| l) + 1;
        return Err(ParseError::at(
            next,
            1,
            format!("expected {rows} rows, found {}", body.len()),
        ));
    }
    Ok(FunctionMatrix::new(rows, cols, bits).expect("shape checked"))
}

fn bit_char(b: bool) -> char {
    if b {
        '1'
    } else {
        '0'
    }
}

pub fn write_table(tt: &TruthTable) -> String {
    let row: String = tt.values().iter().map(|&b| bit_char(b)).collect();
    format!("n={}\n{row}\n", tt.arity())
}

/// Uses the `n=` header when the matrix is a function matrix, else `grid=`.
pub fn write_matrix(m: &FunctionMatrix) -> String {
    let mut out = match m.arity() {
        Some(n) => format!("n={n}\n"),
        None => format!("grid={}x{}\n", m.cols(), m.rows()),
    };
    for x in 0..m.rows() {
        out.extend(m.row(x).iter().map(|&b| bit_char(b)));
        out.push('\n');
    }
    out
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum ArtifactDoc {
    Tree {
        n: u32,
        root: TreeNodeDoc,
    },
    Protocol {
        n: u32,
        root: ProtocolNodeDoc,
    },
    Tiling {
        rows: usize,
        cols: usize,
        tiles: Vec<TileDoc>,
    },
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "node", rename_all = "lowercase", deny_unknown_fields)]
enum TreeNodeDoc {
    Leaf {
        output: u8,
    },
    Threshold {
        value: u32,
        zero: Box<TreeNodeDoc>,
        one: Box<TreeNodeDoc>,
    },
    Const0 {
        zero: Box<TreeNodeDoc>,
        one: Box<TreeNodeDoc>,
    },
}

#[derive(Clone, Copy, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum OwnerDoc {
    Alice,
    Bob,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "node", rename_all = "lowercase", deny_unknown_fields)]
enum ProtocolNodeDoc {
    Leaf {
        output: u8,
    },
    Threshold {
        owner: OwnerDoc,
        value: u32,
        zero: Box<ProtocolNodeDoc>,
        one: Box<ProtocolNodeDoc>,
    },
    Const0 {
        owner: OwnerDoc,
        zero: Box<ProtocolNodeDoc>,
        one: Box<ProtocolNodeDoc>,
    },
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TileDoc {
    x_lo: usize,
    x_hi: usize,
    y_lo: usize,
    y_hi: usize,
    color: u8,
}

fn output_bit(v: u8) -> Result<bool, ParseError> {
    match v {
        0 => Ok(false),
        1 => Ok(true),
        _ => Err(ParseError::whole(format!(
            "bit value must be 0 or 1, found {v}"
        ))),
    }
}

impl TreeNodeDoc {
    fn from_node(node: &TreeNode) -> Self {
        match node {
            TreeNode::Leaf(b) => TreeNodeDoc::Leaf { output: *b as u8 },
            TreeNode::Query { query, zero, one } => {
                let zero = Box::new(Self::from_node(zero));
                let one = Box::new(Self::from_node(one));
                match query {
                    Query::Threshold(value) => TreeNodeDoc::Threshold {
                        value: *value,
                        zero,
                        one,
                    },
                    Query::ConstZero => TreeNodeDoc::Const0 { zero, one },
                }
            }
        }
    }

    fn into_node(self) -> Result<TreeNode, ParseError> {
        Ok(match self {
            TreeNodeDoc::Leaf { output } => TreeNode::Leaf(output_bit(output)?),
            TreeNodeDoc::Threshold { value, zero, one } => {
                TreeNode::query(Query::Threshold(value), zero.into_node()?, one.into_node()?)
            }
            TreeNodeDoc::Const0 { zero, one } => {
                TreeNode::query(Query::ConstZero, zero.into_node()?, one.into_node()?)
            }
        })
    }
}

impl From<Party> for OwnerDoc {
    fn from(p: Party) -> Self {
        match p {
            Party::Alice => OwnerDoc::Alice,
            Party::Bob => OwnerDoc::Bob,
        }
    }
}

impl From<OwnerDoc> for Party {
    fn from(o: OwnerDoc) -> Self {
        match o {
            OwnerDoc::Alice => Party::Alice,
            OwnerDoc::Bob => Party::Bob,
        }
    }
}

impl ProtocolNodeDoc {
    fn from_node(node: &ProtocolNode) -> Self {
        match node {
            ProtocolNode::Leaf(b) => ProtocolNodeDoc::Leaf { output: *b as u8 },
            ProtocolNode::Query {
                owner,
                query,
                zero,
                one,
            } => {
                let owner = OwnerDoc::from(*owner);
                let zero = Box::new(Self::from_node(zero));
                let one = Box::new(Self::from_node(one));
                match query {
                    Query::Threshold(value) => ProtocolNodeDoc::Threshold {
                        owner,
                        value: *value,
                        zero,
                        one,
                    },
                    Query::ConstZero => ProtocolNodeDoc::Const0 { owner, zero, one },
                }
            }
        }
    }

    fn into_node(self) -> Result<ProtocolNode, ParseError> {
        Ok(match self {
            ProtocolNodeDoc::Leaf { output } => ProtocolNode::Leaf(output_bit(output)?),
            ProtocolNodeDoc::Threshold {
                owner,
                value,
                zero,
                one,
            } => ProtocolNode::query(
                owner.into(),
                Query::Threshold(value),
                zero.into_node()?,
                one.into_node()?,
            ),
            ProtocolNodeDoc::Const0 { owner, zero, one } => ProtocolNode::query(
                owner.into(),
                Query::ConstZero,
                zero.into_node()?,
                one.into_node()?,
            ),
        })
    }
}

fn json_error(e: serde_json::Error) -> ParseError {
    // serde_json reports line 0 for errors without a position.
    if e.line() == 0 {
        ParseError::whole(e.to_string())
    } else {
        let msg = e.to_string();
        let msg = match msg.rfind(" at line ") {
            Some(i) => msg[..i].to_string(),
            None => msg,
        };
        ParseError::at(e.line(), e.column(), msg)
    }
}

fn parse_artifact(text: &str) -> Result<Document, ParseError> {
    let doc: ArtifactDoc = serde_json::from_str(text).map_err(json_error)?;
    match doc {
        ArtifactDoc::Tree { n, root } => {
            check_arity(n)?;
            let tree = ComparisonTree::new(n, root.into_node()?)
                .map_err(|e| ParseError::whole(e.to_string()))?;
            Ok(Document::Tree(tree))
        }
        ArtifactDoc::Protocol { n, root } => {
            check_arity(n)?;
            let p = Protocol::new(n, root.into_node()?)
                .map_err(|e| ParseError::whole(e.to_string()))?;
            Ok(Document::Protocol(p))
        }
        ArtifactDoc::Tiling { rows, cols, tiles } => {
            if rows == 0 || cols == 0 {
                return Err(ParseError::whole("tiling grid must be non-empty"));
            }
            let mut out = Vec::with_capacity(tiles.len());
            for (i, t) in tiles.into_iter().enumerate() {
                let rect = GeoRect::try_new(t.x_lo, t.x_hi, t.y_lo, t.y_hi)
                    .filter(|r| r.fits(rows, cols))
                    .ok_or_else(|| {
                        ParseError::whole(format!(
                            "tile {i} is not a rectangle inside the {rows}x{cols} grid"
                        ))
                    })?;
                out.push(Tile {
                    rect,
                    color: output_bit(t.color)?,
                });
            }
            Ok(Document::Tiling(TilingDoc {
                rows,
                cols,
                tiling: Tiling::new(out),
            }))
        }
    }
}

fn check_arity(n: u32) -> Result<(), ParseError> {
    if n == 0 || n > MAX_ARITY {
        return Err(ParseError::whole(format!(
            "arity {n} outside 1..={MAX_ARITY}"
        )));
    }
    Ok(())
}

fn to_json(doc: &ArtifactDoc) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn write_tree(tree: &ComparisonTree) -> String {
    to_json(&ArtifactDoc::Tree {
        n: tree.arity(),
        root: TreeNodeDoc::from_node(tree.root()),
    })
}

pub fn write_protocol(p: &Protocol) -> String {
    to_json(&ArtifactDoc::Protocol {
        n: p.arity(),
        root: ProtocolNodeDoc::from_node(p.root()),
    })
}

pub fn write_tiling(doc: &TilingDoc) -> String {
    let mut tiles: Vec<&Tile> = doc.tiling.tiles.iter().collect();
    tiles.sort();
    to_json(&ArtifactDoc::Tiling {
        rows: doc.rows,
        cols: doc.cols,
        tiles: tiles
            .into_iter()
            .map(|t| TileDoc {
                x_lo: t.rect.x_lo,
                x_hi: t.rect.x_hi,
                y_lo: t.rect.y_lo,
                y_hi: t.rect.y_hi,
                color: t.color as u8,
            })
            .collect(),
    })
}

pub fn write_document(doc: &Document) -> String {
    match doc {
        Document::Table(t) => write_table(t),
        Document::Matrix(m) => write_matrix(m),
        Document::Tree(t) => write_tree(t),
        Document::Protocol(p) => write_protocol(p),
        Document::Tiling(t) => write_tiling(t),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_and_matrix_are_told_apart() {
        assert!(matches!(
            parse_document("n=2\n0110\n"),
            Ok(Document::Table(_))
        ));
        assert!(matches!(
            parse_document("n=1\n01\n10\n"),
            Ok(Document::Matrix(_))
        ));
        assert!(matches!(
            parse_document("grid=3x1\n010\n"),
            Ok(Document::Matrix(_))
        ));
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_document("n=2\n01x0\n").unwrap_err();
        assert_eq!(e.position, Some((2, 3)));
        let e = parse_document("n=2\n010\n").unwrap_err();
        assert_eq!(e.position, Some((2, 4)));
        let e = parse_document("n=1\n01\n10\n11\n").unwrap_err();
        assert_eq!(e.position, Some((4, 1)));
        let e = parse_document("n=2\n0110\n0110\n0110\n").unwrap_err();
        assert_eq!(e.position, Some((5, 1)));
        let e = parse_document("m=2\n0110\n").unwrap_err();
        assert_eq!(e.position, Some((1, 1)));
        let e = parse_document("n=99\n0110\n").unwrap_err();
        assert_eq!(e.position, Some((1, 3)));
        let e = parse_document("grid=3xq\n000\n").unwrap_err();
        assert_eq!(e.position, Some((1, 8)));
        let e =
            parse_document("{\n  \"kind\": \"tree\",\n  \"n\": 2,\n  \"root\": [\n}").unwrap_err();
        assert_eq!(e.position.map(|p| p.0), Some(5));
    }

    #[test]
    fn artifact_values_are_validated() {
        let bad_threshold = r#"{"kind":"tree","n":1,"root":{"node":"threshold","value":2,
            "zero":{"node":"leaf","output":0},"one":{"node":"leaf","output":1}}}"#;
        assert!(parse_document(bad_threshold).is_err());
        let bad_bit = r#"{"kind":"tree","n":1,"root":{"node":"leaf","output":2}}"#;
        assert!(parse_document(bad_bit).is_err());
        let bad_tile = r#"{"kind":"tiling","rows":2,"cols":2,
            "tiles":[{"x_lo":0,"x_hi":2,"y_lo":0,"y_hi":0,"color":1}]}"#;
        assert!(parse_document(bad_tile).is_err());
        let extra = r#"{"kind":"tree","n":1,"depth":3,"root":{"node":"leaf","output":0}}"#;
        assert!(parse_document(extra).is_err());
    }

    #[test]
    fn crlf_and_trailing_blank_lines_are_accepted() {
        let m = parse_matrix("n=1\r\n01\r\n10\r\n\r\n").unwrap();
        assert_eq!(write_matrix(&m), "n=1\n01\n10\n");
    }
}
