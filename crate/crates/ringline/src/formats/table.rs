//! Table rings.
//!
//! ```text
//! ring <n>
//! labels
//! <n labels, whitespace separated, possibly over several lines>
//! add
//! <n rows of n element indices>
//! mul
//! <n rows of n element indices>
//! ```

use std::fmt::Write;
use std::path::{Path, PathBuf};

use ringline_core::ring::{RawTables, RingTable, TableSource};

use super::{content_lines, err, FormatError};

/// Parses a table-ring file. Ring axioms are not checked here.
pub fn parse_table(text: &str) -> Result<RawTables, FormatError> {
    let lines = content_lines(text);
    let mut it = lines.into_iter().peekable();
    let (ln, header) = it.next().ok_or_else(|| err(0, "empty file"))?;
    let mut words = header.split_whitespace();
    if words.next() != Some("ring") {
        return Err(err(ln, "expected `ring <order>`"));
    }
    let n: usize = words
        .next()
        .and_then(|w| w.parse().ok())
        .filter(|&n| n > 0)
        .ok_or_else(|| err(ln, "expected a positive order after `ring`"))?;
    if words.next().is_some() {
        return Err(err(ln, "unexpected text after the order"));
    }

    let section = |name: &str, it: &mut std::iter::Peekable<std::vec::IntoIter<(usize, &str)>>| match it.next() {
        Some((_, l)) if l == name => Ok(()),
        Some((ln, l)) => Err(err(ln, format!("expected `{name}`, found `{l}`"))),
        None => Err(err(0, format!("missing `{name}` section"))),
    };

    section("labels", &mut it)?;
    let mut labels = Vec::with_capacity(n);
    while labels.len() < n {
        let (ln, l) = it.next().ok_or_else(|| err(0, format!("expected {n} labels")))?;
        for tok in l.split_whitespace() {
            if labels.len() == n {
                return Err(err(ln, format!("more than {n} labels")));
            }
            labels.push(tok.to_string());
        }
    }

    let matrix = |name: &str, it: &mut std::iter::Peekable<std::vec::IntoIter<(usize, &str)>>| {
        section(name, it)?;
        let mut rows = Vec::with_capacity(n);
        for r in 0..n {
            let (ln, l) = it
                .next()
                .ok_or_else(|| err(0, format!("{name} table has {r} rows, expected {n}")))?;
            let row: Vec<u32> = l
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| err(ln, format!("`{t}` is not an element index"))))
                .collect::<Result<_, _>>()?;
            if row.len() != n {
                return Err(err(ln, format!("{name} row has {} entries, expected {n}", row.len())));
            }
            rows.push(row);
        }
        Ok::<_, FormatError>(rows)
    };
    let add = matrix("add", &mut it)?;
    let mul = matrix("mul", &mut it)?;
    if let Some((ln, l)) = it.next() {
        return Err(err(ln, format!("trailing input `{l}`")));
    }
    Ok(RawTables { labels, add, mul })
}

/// Writes a ring in the table format.
pub fn write_table(ring: &RingTable) -> String {
    let raw = ring.to_raw();
    let mut out = String::new();
    writeln!(out, "ring {}", ring.order()).unwrap();
    writeln!(out, "labels").unwrap();
    writeln!(out, "{}", raw.labels.join(" ")).unwrap();
    for (name, t) in [("add", &raw.add), ("mul", &raw.mul)] {
        writeln!(out, "{name}").unwrap();
        for row in t {
            let cells: Vec<String> = row.iter().map(u32::to_string).collect();
            writeln!(out, "{}", cells.join(" ")).unwrap();
        }
    }
    out
}

/// Loads `table(path)` rings from disk, resolving relative paths against a
/// base directory.
#[derive(Debug, Clone)]
pub struct FsTables {
    base: PathBuf,
}

impl FsTables {
    /// Resolves relative paths against `base`.
    pub fn new(base: impl Into<PathBuf>) -> Self {
        FsTables { base: base.into() }
    }
}

impl TableSource for FsTables {
    fn load(&self, path: &str) -> Result<RawTables, String> {
        let p = Path::new(path);
        let full = if p.is_absolute() {
            p.to_path_buf()
        } else {
            self.base.join(p)
        };
        let text = std::fs::read_to_string(&full).map_err(|e| format!("{}: {e}", full.display()))?;
        parse_table(&text).map_err(|e| e.to_string())
    }
}
