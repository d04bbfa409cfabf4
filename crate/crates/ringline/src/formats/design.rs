//! Design files.
//!
//! ```text
//! [chain-geometry K="<spec>" R="<spec>"]
//! dd v=<n> t=<t>
//! classes
//! <one line of point ids per class>
//! blocks
//! <one line of point ids per block>
//! ```
//!
//! Point ids are 0-based and ascending within a class. Repeated blocks are
//! rejected.

use std::fmt::Write;

use ringline_core::designs::Design;
use ringline_core::Error;

use super::{content_lines, err, header_value, parse_ids, FormatError};

/// The ring specs behind a chain-geometry export.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainHeader {
    /// The subfield.
    pub field: String,
    /// The ring.
    pub ring: String,
}

/// A parsed design file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DesignFile {
    /// The incidence structure.
    pub design: Design,
    /// The strength recorded in the header.
    pub t: usize,
    /// Present for chain-geometry exports.
    pub chain: Option<ChainHeader>,
}

fn quoted<'a>(line: usize, rest: &'a str, key: &str) -> Result<(&'a str, &'a str), FormatError> {
    let rest = rest.trim_start();
    let body = rest
        .strip_prefix(key)
        .and_then(|r| r.strip_prefix("=\""))
        .ok_or_else(|| err(line, format!("expected {key}=\"...\"")))?;
    let end = body.find('"').ok_or_else(|| err(line, "unterminated quote"))?;
    Ok((&body[..end], &body[end + 1..]))
}

/// Parses a design file.
pub fn parse_design(text: &str) -> Result<DesignFile, FormatError> {
    // comments are not allowed inside quoted specs, which never contain `#`
    let lines = content_lines(text);
    let mut i = 0;
    let next = |i: &mut usize| -> Result<(usize, &str), FormatError> {
        let l = lines
            .get(*i)
            .copied()
            .ok_or_else(|| err(0, "unexpected end of input"))?;
        *i += 1;
        Ok(l)
    };

    let (mut ln, mut line) = next(&mut i)?;
    let chain = if let Some(rest) = line.strip_prefix("chain-geometry ") {
        let (field, rest) = quoted(ln, rest, "K")?;
        let (ring, rest) = quoted(ln, rest, "R")?;
        if !rest.trim().is_empty() {
            return Err(err(ln, "trailing text in chain-geometry header"));
        }
        let header = ChainHeader {
            field: field.to_string(),
            ring: ring.to_string(),
        };
        (ln, line) = next(&mut i)?;
        Some(header)
    } else {
        None
    };

    let mut words = line.split_whitespace();
    if words.next() != Some("dd") {
        return Err(err(ln, "expected `dd v=<n> t=<t>`"));
    }
    let v = header_value(ln, words.next(), "v")?;
    let t = header_value(ln, words.next(), "t")?;
    if let Some(w) = words.next() {
        return Err(err(ln, format!("unexpected `{w}` in header")));
    }

    let (ln, l) = next(&mut i)?;
    if l != "classes" {
        return Err(err(ln, "expected `classes`"));
    }
    let mut classes = Vec::new();
    let mut blocks_line = None;
    while i < lines.len() {
        let (ln, l) = lines[i];
        i += 1;
        if l == "blocks" {
            blocks_line = Some(ln);
            break;
        }
        let class = parse_ids(ln, l)?;
        if class.windows(2).any(|w| w[0] >= w[1]) {
            return Err(err(ln, "class point ids must be strictly increasing"));
        }
        classes.push(class);
    }
    let blocks_line = blocks_line.ok_or_else(|| err(0, "missing `blocks` section"))?;
    let mut blocks = Vec::new();
    for &(ln, l) in &lines[i..] {
        blocks.push(parse_ids(ln, l)?);
    }
    let design = Design::new(v, classes, blocks).map_err(|e| match e {
        Error::MalformedDesign(m) => err(blocks_line, m),
        other => err(blocks_line, other.to_string()),
    })?;
    Ok(DesignFile { design, t, chain })
}

/// Writes a design file.
pub fn write_design(design: &Design, t: usize, chain: Option<&ChainHeader>) -> String {
    let mut out = String::new();
    if let Some(c) = chain {
        writeln!(out, "chain-geometry K=\"{}\" R=\"{}\"", c.field, c.ring).unwrap();
    }
    writeln!(out, "dd v={} t={t}", design.v()).unwrap();
    let ids = |set: &[u32]| set.iter().map(u32::to_string).collect::<Vec<_>>().join(" ");
    writeln!(out, "classes").unwrap();
    for c in design.classes() {
        writeln!(out, "{}", ids(c)).unwrap();
    }
    writeln!(out, "blocks").unwrap();
    for b in design.blocks() {
        writeln!(out, "{}", ids(b)).unwrap();
    }
    out
}
