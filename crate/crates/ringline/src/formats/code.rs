//! Code files: a header `cwc n=<n> m=<m> k=<k>` and one word per line, symbols
//! separated by spaces.

use std::fmt::Write;

use ringline_core::codes::ConstantWeightCode;

use super::{content_lines, err, header_value, parse_ids, FormatError};

/// Writes a code file.
pub fn write_code(code: &ConstantWeightCode) -> String {
    let mut out = String::new();
    writeln!(out, "cwc n={} m={} k={}", code.n, code.m, code.k).unwrap();
    for w in &code.words {
        let syms: Vec<String> = w.iter().map(u32::to_string).collect();
        writeln!(out, "{}", syms.join(" ")).unwrap();
    }
    out
}

/// Parses a code file; word lengths and symbol ranges are checked.
pub fn parse_code(text: &str) -> Result<ConstantWeightCode, FormatError> {
    let lines = content_lines(text);
    let (ln, header) = *lines.first().ok_or_else(|| err(0, "empty file"))?;
    let mut words = header.split_whitespace();
    if words.next() != Some("cwc") {
        return Err(err(ln, "expected `cwc n=<n> m=<m> k=<k>`"));
    }
    let n = header_value(ln, words.next(), "n")?;
    let m = header_value(ln, words.next(), "m")?;
    let k = header_value(ln, words.next(), "k")?;
    if words.next().is_some() {
        return Err(err(ln, "trailing text in header"));
    }
    let mut out = Vec::new();
    for &(ln, l) in &lines[1..] {
        let w = parse_ids(ln, l)?;
        if w.len() != n {
            return Err(err(ln, format!("word has {} symbols, expected {n}", w.len())));
        }
        if let Some(s) = w.iter().find(|&&s| s as usize >= m) {
            return Err(err(ln, format!("symbol {s} is outside 0..{m}")));
        }
        out.push(w);
    }
    Ok(ConstantWeightCode { n, m, k, words: out })
}
