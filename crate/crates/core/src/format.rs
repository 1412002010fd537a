//! Line-oriented algebra file format.
//!
//! ```text
//! # comment
//! algebra mo2
//! size 6
//! elements 0 a a' b b' 1
//! op join binary
//! 0  a  a' b  b' 1
//! ...
//! op comp unary
//! 1 a' a b' b 0
//! const bottom 0
//! const top 1
//! ```
//!
//! A document holds any number of `algebra` blocks with distinct names.

use std::collections::HashSet;

use thiserror::Error;

use crate::table::{build_structure, Algebra, Carrier, Elem, Operation, RawOp};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}: {message}")]
    Semantic { line: usize, message: String },
}

impl ParseError {
    pub fn line(&self) -> usize {
        match self {
            ParseError::Syntax { line, .. } | ParseError::Semantic { line, .. } => *line,
        }
    }
}

/// One parsed structure and the line of its `algebra` header.
#[derive(Debug, Clone)]
pub struct ParsedStructure {
    pub algebra: Algebra,
    pub line: usize,
}

#[derive(Debug, Clone, Default)]
pub struct ParsedDocument {
    pub structures: Vec<ParsedStructure>,
}

impl PartialEq for ParsedDocument {
    fn eq(&self, other: &Self) -> bool {
        self.structures.len() == other.structures.len()
            && self
                .structures
                .iter()
                .zip(&other.structures)
                .all(|(a, b)| a.algebra == b.algebra)
    }
}

impl ParsedDocument {
    pub fn algebras(&self) -> impl Iterator<Item = &Algebra> {
        self.structures.iter().map(|s| &s.algebra)
    }

    pub fn into_algebras(self) -> Vec<Algebra> {
        self.structures.into_iter().map(|s| s.algebra).collect()
    }
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

struct Line<'a> {
    number: usize,
    tokens: Vec<Token<'a>>,
}

fn tokenize(text: &str) -> Vec<Line<'_>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let content = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let mut tokens = Vec::new();
        let mut start = None;
        for (pos, ch) in content.char_indices() {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some(pos),
                (true, Some(s)) => {
                    tokens.push(Token {
                        text: &content[s..pos],
                        column: content[..s].chars().count() + 1,
                    });
                    start = None;
                }
                _ => {}
            }
        }
        if let Some(s) = start {
            tokens.push(Token {
                text: &content[s..],
                column: content[..s].chars().count() + 1,
            });
        }
        if !tokens.is_empty() {
            out.push(Line {
                number: i + 1,
                tokens,
            });
        }
    }
    out
}

fn syntax(line: &Line<'_>, idx: usize, message: impl Into<String>) -> ParseError {
    let column = line
        .tokens
        .get(idx)
        .map(|t| t.column)
        .unwrap_or_else(|| line.tokens.last().map_or(1, |t| t.column + t.text.len()));
    ParseError::Syntax {
        line: line.number,
        column,
        message: message.into(),
    }
}

fn semantic(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Semantic {
        line,
        message: message.into(),
    }
}

fn expect_keyword(line: &Line<'_>, keyword: &str, arity: usize) -> Result<(), ParseError> {
    if line.tokens[0].text != keyword {
        return Err(syntax(
            line,
            0,
            format!("expected `{keyword}`, found `{}`", line.tokens[0].text),
        ));
    }
    if line.tokens.len() != arity + 1 {
        let idx = line.tokens.len().min(arity + 1);
        return Err(syntax(
            line,
            idx,
            format!("`{keyword}` takes {arity} argument(s)"),
        ));
    }
    Ok(())
}

/// Parse a document.
pub fn parse(text: &str) -> Result<ParsedDocument, ParseError> {
    let lines = tokenize(text);
    let mut pos = 0;
    let mut doc = ParsedDocument::default();
    let mut names = HashSet::new();
    while pos < lines.len() {
        let (structure, next) = parse_structure(&lines, pos)?;
        if !names.insert(structure.algebra.name().to_owned()) {
            return Err(semantic(
                structure.line,
                format!("duplicate algebra name `{}`", structure.algebra.name()),
            ));
        }
        doc.structures.push(structure);
        pos = next;
    }
    Ok(doc)
}

fn parse_structure(lines: &[Line<'_>], mut pos: usize) -> Result<(ParsedStructure, usize), ParseError> {
    let header = &lines[pos];
    expect_keyword(header, "algebra", 1)?;
    let name = header.tokens[1].text.to_owned();
    let start_line = header.number;
    pos += 1;

    let size_line = lines
        .get(pos)
        .ok_or_else(|| semantic(start_line, "missing `size` line"))?;
    expect_keyword(size_line, "size", 1)?;
    let n: usize = size_line.tokens[1]
        .text
        .parse()
        .map_err(|_| syntax(size_line, 1, "size must be a non-negative integer"))?;
    if n == 0 {
        return Err(semantic(size_line.number, "size must be at least 1"));
    }
    pos += 1;

    let elem_line = lines
        .get(pos)
        .ok_or_else(|| semantic(size_line.number, "missing `elements` line"))?;
    if elem_line.tokens[0].text != "elements" {
        return Err(syntax(elem_line, 0, "expected `elements`"));
    }
    let elem_names: Vec<&str> = elem_line.tokens[1..].iter().map(|t| t.text).collect();
    if elem_names.len() != n {
        return Err(semantic(
            elem_line.number,
            format!("expected {n} element names, found {}", elem_names.len()),
        ));
    }
    let carrier = Carrier::new(elem_names.iter().copied())
        .map_err(|e| semantic(elem_line.number, e.to_string()))?;
    pos += 1;

    let lookup = |line: &Line<'_>, idx: usize| -> Result<Elem, ParseError> {
        let tok = &line.tokens[idx];
        carrier.index_of(tok.text).ok_or_else(|| {
            semantic(line.number, format!("unknown element `{}`", tok.text))
        })
    };

    let mut ops: Vec<(String, RawOp)> = Vec::new();
    let mut op_lines: Vec<usize> = Vec::new();
    let mut consts: Vec<(String, Elem)> = Vec::new();
    while let Some(line) = lines.get(pos) {
        match line.tokens[0].text {
            "algebra" => break,
            "op" => {
                expect_keyword(line, "op", 2)?;
                let op_name = line.tokens[1].text.to_owned();
                if ops.iter().any(|(n, _)| *n == op_name) {
                    return Err(semantic(line.number, format!("duplicate op `{op_name}`")));
                }
                let rows_needed = match line.tokens[2].text {
                    "binary" => n,
                    "unary" => 1,
                    _ => return Err(syntax(line, 2, "arity must be `binary` or `unary`")),
                };
                let mut rows = Vec::with_capacity(rows_needed);
                for r in 0..rows_needed {
                    let row_line = lines.get(pos + 1 + r).ok_or_else(|| {
                        semantic(line.number, format!("op `{op_name}`: missing table rows"))
                    })?;
                    if matches!(row_line.tokens[0].text, "op" | "const" | "algebra") {
                        return Err(semantic(
                            row_line.number,
                            format!("op `{op_name}`: expected {rows_needed} row(s), found {r}"),
                        ));
                    }
                    if row_line.tokens.len() != n {
                        return Err(semantic(
                            row_line.number,
                            format!(
                                "op `{op_name}`: row has {} entries, expected {n}",
                                row_line.tokens.len()
                            ),
                        ));
                    }
                    let row = (0..n)
                        .map(|i| lookup(row_line, i))
                        .collect::<Result<Vec<_>, _>>()?;
                    rows.push(row);
                }
                let raw = if rows_needed == 1 && line.tokens[2].text == "unary" {
                    RawOp::Unary(rows.pop().expect("one row"))
                } else {
                    RawOp::Binary(rows)
                };
                ops.push((op_name, raw));
                op_lines.push(line.number);
                pos += 1 + rows_needed;
            }
            "const" => {
                expect_keyword(line, "const", 2)?;
                let c = line.tokens[1].text.to_owned();
                if consts.iter().any(|(n, _)| *n == c) {
                    return Err(semantic(line.number, format!("duplicate constant `{c}`")));
                }
                consts.push((c, lookup(line, 2)?));
                pos += 1;
            }
            _ => {
                return Err(syntax(
                    line,
                    0,
                    format!("unexpected `{}`", line.tokens[0].text),
                ))
            }
        }
    }
    let algebra = build_structure(name, carrier, ops, consts)
        .map_err(|e| semantic(start_line, e.to_string()))?;
    Ok((
        ParsedStructure {
            algebra,
            line: start_line,
        },
        pos,
    ))
}

/// Render one algebra block, columns aligned.
pub fn serialize_algebra(a: &Algebra) -> String {
    let c = a.carrier();
    let width = c.names().iter().map(|s| s.chars().count()).max().unwrap_or(1);
    let row = |entries: &mut dyn Iterator<Item = Elem>| -> String {
        let cells: Vec<String> = entries
            .map(|e| format!("{:<width$}", c.name(e)))
            .collect();
        cells.join(" ").trim_end().to_owned()
    };
    let mut out = String::new();
    out.push_str(&format!("algebra {}\n", a.name()));
    out.push_str(&format!("size {}\n", a.size()));
    out.push_str(&format!("elements {}\n", c.names().join(" ")));
    for (name, op) in a.ops() {
        match op {
            Operation::Binary(b) => {
                out.push_str(&format!("op {name} binary\n"));
                for r in b.rows() {
                    out.push_str(&row(&mut r.iter().copied()));
                    out.push('\n');
                }
            }
            Operation::Unary(u) => {
                out.push_str(&format!("op {name} unary\n"));
                out.push_str(&row(&mut u.as_slice().iter().copied()));
                out.push('\n');
            }
        }
    }
    for (name, v) in a.constants() {
        out.push_str(&format!("const {name} {}\n", c.name(*v)));
    }
    out
}

/// Render several algebras separated by blank lines.
pub fn serialize_document<'a>(algebras: impl IntoIterator<Item = &'a Algebra>) -> String {
    algebras
        .into_iter()
        .map(serialize_algebra)
        .collect::<Vec<_>>()
        .join("\n")
}
