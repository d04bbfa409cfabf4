//! Recursive-descent parser for ring specs.
//!
//! ```text
//! spec := atom | "prod(" spec { "," spec } ")"
//! atom := "Z/" int | "GF(" int ")"
//!       | "dual(" spec "," "h=" int [ "," "frob=" int ] ")"
//!       | "mat(" int "," spec ")" | "ext(" spec "," "n=" int ")"
//!       | "table(" path ")"
//! ```
//!
//! Whitespace may separate tokens. `frob=0` (the default) gives untwisted
//! dual numbers.

use ringline_core::ring::{RingSpec, SpecError};

/// A syntax or parameter error at a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    /// Line of the offending token.
    pub line: usize,
    /// Column of the offending token, in characters.
    pub column: usize,
    /// What went wrong.
    pub message: String,
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

type PResult<T> = Result<T, ParseError>;

impl<'a> Parser<'a> {
    fn error_at(&self, pos: usize, message: impl Into<String>) -> ParseError {
        let before = &self.src[..pos];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> PResult<()> {
        if self.eat(token) {
            Ok(())
        } else {
            let found = self
                .rest()
                .chars()
                .next()
                .map_or("end of input".to_string(), |c| format!("`{c}`"));
            Err(self.error_at(self.pos, format!("expected `{token}`, found {found}")))
        }
    }

    fn int(&mut self) -> PResult<u64> {
        self.skip_ws();
        let start = self.pos;
        let digits = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return Err(self.error_at(start, "expected an integer"));
        }
        self.pos += digits;
        self.src[start..self.pos]
            .parse()
            .map_err(|_| self.error_at(start, "integer out of range"))
    }

    fn small_int(&mut self) -> PResult<u32> {
        self.skip_ws();
        let start = self.pos;
        let v = self.int()?;
        u32::try_from(v).map_err(|_| self.error_at(start, "integer out of range"))
    }

    fn check(&self, start: usize, spec: RingSpec) -> PResult<RingSpec> {
        shallow_validate(&spec).map_err(|e| self.error_at(start, e.to_string()))?;
        Ok(spec)
    }

    fn spec(&mut self) -> PResult<RingSpec> {
        self.skip_ws();
        let start = self.pos;
        if self.eat("Z/") {
            let m = self.int()?;
            self.check(start, RingSpec::Zmod(m))
        } else if self.eat("GF(") {
            let q = self.int()?;
            self.expect(")")?;
            self.check(start, RingSpec::GaloisField(q))
        } else if self.eat("dual(") {
            let base = self.spec()?;
            self.expect(",")?;
            self.expect("h=")?;
            let h = self.small_int()?;
            let frob = if self.eat(",") {
                self.expect("frob=")?;
                self.small_int()?
            } else {
                0
            };
            self.expect(")")?;
            let spec = if frob == 0 {
                RingSpec::DualNumbers {
                    base: Box::new(base),
                    h,
                }
            } else {
                RingSpec::TwistedDual {
                    base: Box::new(base),
                    h,
                    frobenius_power: frob,
                }
            };
            self.check(start, spec)
        } else if self.eat("mat(") {
            let m = self.small_int()?;
            self.expect(",")?;
            let base = self.spec()?;
            self.expect(")")?;
            self.check(
                start,
                RingSpec::MatrixRing {
                    m,
                    base: Box::new(base),
                },
            )
        } else if self.eat("ext(") {
            let base = self.spec()?;
            self.expect(",")?;
            self.expect("n=")?;
            let n = self.small_int()?;
            self.expect(")")?;
            self.check(
                start,
                RingSpec::Exterior {
                    base: Box::new(base),
                    n,
                },
            )
        } else if self.eat("prod(") {
            let mut factors = vec![self.spec()?];
            while self.eat(",") {
                factors.push(self.spec()?);
            }
            self.expect(")")?;
            self.check(start, RingSpec::Product(factors))
        } else if self.eat("table(") {
            let rest = self.rest();
            let end = rest
                .find(')')
                .ok_or_else(|| self.error_at(self.pos, "unterminated table path"))?;
            let path = rest[..end].trim();
            if path.is_empty() {
                return Err(self.error_at(self.pos, "empty table path"));
            }
            let spec = RingSpec::Table(path.to_string());
            self.pos += end + 1;
            Ok(spec)
        } else {
            Err(self.error_at(
                start,
                "expected a ring: Z/m, GF(q), dual(..), mat(..), ext(..), prod(..) or table(..)",
            ))
        }
    }
}

/// Checks the parameters of the outermost node only; children were checked
/// when they were parsed, at their own positions.
fn shallow_validate(spec: &RingSpec) -> Result<(), SpecError> {
    let leaf = || Box::new(RingSpec::Zmod(2));
    match spec {
        RingSpec::DualNumbers { h, .. } => RingSpec::DualNumbers { base: leaf(), h: *h }.validate(),
        RingSpec::MatrixRing { m, .. } => RingSpec::MatrixRing { m: *m, base: leaf() }.validate(),
        RingSpec::Exterior { n, .. } => RingSpec::Exterior { base: leaf(), n: *n }.validate(),
        RingSpec::Product(fs) => RingSpec::Product(fs.iter().map(|_| RingSpec::Zmod(2)).collect()).validate(),
        // leaves, and twisted duals whose base is itself a leaf
        other => other.validate(),
    }
}

/// Parses a complete ring spec; trailing input is an error.
pub fn parse_ring_spec(text: &str) -> Result<RingSpec, ParseError> {
    let mut p = Parser { src: text, pos: 0 };
    let spec = p.spec()?;
    p.skip_ws();
    if p.pos != text.len() {
        return Err(p.error_at(p.pos, "unexpected trailing input"));
    }
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(parse_ring_spec("Z/6").unwrap(), RingSpec::Zmod(6));
        assert_eq!(
            parse_ring_spec("dual(GF(4), h=2, frob=1)").unwrap(),
            RingSpec::TwistedDual {
                base: Box::new(RingSpec::GaloisField(4)),
                h: 2,
                frobenius_power: 1
            }
        );
        assert_eq!(
            parse_ring_spec("prod(GF(2), GF(3))").unwrap(),
            RingSpec::Product(vec![RingSpec::GaloisField(2), RingSpec::GaloisField(3)])
        );
        assert_eq!(
            parse_ring_spec(" mat( 2 ,GF(2) ) ").unwrap(),
            RingSpec::MatrixRing {
                m: 2,
                base: Box::new(RingSpec::GaloisField(2))
            }
        );
        assert_eq!(
            parse_ring_spec("table( rings/z4.ring )").unwrap(),
            RingSpec::Table("rings/z4.ring".into())
        );
        assert_eq!(
            parse_ring_spec("dual(GF(3), h=2, frob=0)").unwrap(),
            RingSpec::DualNumbers {
                base: Box::new(RingSpec::GaloisField(3)),
                h: 2
            }
        );
    }

    #[test]
    fn semantic_errors_have_positions() {
        let e = parse_ring_spec("prod(GF(2), GF(6))").unwrap_err();
        assert_eq!((e.line, e.column), (1, 13));
        assert!(e.message.contains("prime power"));
        let e = parse_ring_spec("dual(GF(4), h=2, frob=2)").unwrap_err();
        assert_eq!((e.line, e.column), (1, 1));
        assert!(e.message.contains("identity"));
        let e = parse_ring_spec("prod(Z/2,\n  dual(GF(2), h=1))").unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
        let e = parse_ring_spec("dual(Z/4, h=2, frob=1)").unwrap_err();
        assert!(e.message.contains("Galois field"));
    }

    #[test]
    fn syntax_errors() {
        for bad in [
            "",
            "Z/",
            "GF(4",
            "prod()",
            "dual(GF(2))",
            "Z/6 junk",
            "foo",
            "mat(2 GF(2))",
            "table()",
        ] {
            assert!(parse_ring_spec(bad).is_err(), "{bad:?} should fail");
        }
        let e = parse_ring_spec("Z/6 junk").unwrap_err();
        assert_eq!((e.line, e.column), (1, 5));
    }
}
