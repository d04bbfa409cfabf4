//! Field witnesses for `--field <file>`:
//!
//! ```text
//! field <ring spec of a Galois field>
//! image <label of a ring element>
//! ```
//!
//! The image is that of the least element generating the field as a ring,
//! which for `GF(p^n)`, `n > 1`, is `t`.

use ringline_core::ring::RingSpec;

use super::{content_lines, err, FormatError};
use crate::parse::parse_ring_spec;

/// A parsed witness file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    /// The field.
    pub field: RingSpec,
    /// Label of the generator's image in the ring.
    pub image: String,
}

/// Parses a witness file.
pub fn parse_witness(text: &str) -> Result<Witness, FormatError> {
    let lines = content_lines(text);
    let mut field = None;
    let mut image = None;
    for (ln, l) in lines {
        let (key, value) = l
            .split_once(char::is_whitespace)
            .ok_or_else(|| err(ln, "expected `<key> <value>`"))?;
        let value = value.trim();
        match key {
            "field" if field.is_none() => {
                field = Some(parse_ring_spec(value).map_err(|e| err(ln, e.to_string()))?);
            }
            "image" if image.is_none() => {
                if value.contains(char::is_whitespace) {
                    return Err(err(ln, "element labels contain no whitespace"));
                }
                image = Some(value.to_string());
            }
            "field" | "image" => return Err(err(ln, format!("`{key}` given twice"))),
            other => return Err(err(ln, format!("unknown key `{other}`"))),
        }
    }
    Ok(Witness {
        field: field.ok_or_else(|| err(0, "missing `field`"))?,
        image: image.ok_or_else(|| err(0, "missing `image`"))?,
    })
}
