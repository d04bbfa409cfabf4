use alloc::string::String;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Elem, RingTable};

/// Rings up to this order have their axioms checked on every triple; larger
/// ones on a fixed-seed random sample.
pub const EXHAUSTIVE_AXIOM_LIMIT: usize = 256;

const SAMPLED_TRIPLES: usize = 10_000;
const SAMPLE_SEED: u64 = 0x5eed_a1a5;

/// Operation tables as read from a file, before any checking.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawTables {
    /// Element names.
    pub labels: Vec<String>,
    /// `add[a][b] = a + b`.
    pub add: Vec<Vec<Elem>>,
    /// `mul[a][b] = a · b`.
    pub mul: Vec<Vec<Elem>>,
}

/// The first ring axiom that fails, with a witness.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AxiomViolation {
    /// Tables of the wrong shape.
    #[error("table shape: {0}")]
    Shape(String),
    /// A table entry outside `0..order`.
    #[error("{table} table entry at ({a}, {b}) is {value}, out of range")]
    OutOfRange {
        /// `"add"` or `"mul"`.
        table: &'static str,
        /// Row.
        a: Elem,
        /// Column.
        b: Elem,
        /// Offending entry.
        value: Elem,
    },
    /// Two elements share a label.
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    /// No element acts as `0`.
    #[error("no additive identity")]
    NoZero,
    /// `a + b ≠ b + a`.
    #[error("addition not commutative: {0} + {1}")]
    AddNotCommutative(Elem, Elem),
    /// `(a + b) + c ≠ a + (b + c)`.
    #[error("addition not associative at ({0}, {1}, {2})")]
    AddNotAssociative(Elem, Elem, Elem),
    /// `a` has no additive inverse.
    #[error("element {0} has no additive inverse")]
    NoNegative(Elem),
    /// No element acts as a two-sided `1`.
    #[error("no multiplicative identity")]
    NoOne,
    /// `1 = 0`.
    #[error("the zero ring is excluded")]
    ZeroRing,
    /// `(ab)c ≠ a(bc)`.
    #[error("multiplication not associative at ({0}, {1}, {2})")]
    MulNotAssociative(Elem, Elem, Elem),
    /// `a(b + c) ≠ ab + ac`.
    #[error("left distributivity fails at ({0}, {1}, {2})")]
    LeftDistributivity(Elem, Elem, Elem),
    /// `(a + b)c ≠ ac + bc`.
    #[error("right distributivity fails at ({0}, {1}, {2})")]
    RightDistributivity(Elem, Elem, Elem),
}

/// Checks that `raw` describes a unital ring and returns it.
pub fn validate_ring_tables(raw: &RawTables) -> Result<RingTable, AxiomViolation> {
    let n = raw.labels.len();
    if n == 0 {
        return Err(AxiomViolation::Shape(String::from("a ring needs at least one element")));
    }
    let flatten = |t: &[Vec<Elem>], name: &'static str| -> Result<Vec<Elem>, AxiomViolation> {
        if t.len() != n || t.iter().any(|row| row.len() != n) {
            return Err(AxiomViolation::Shape(alloc::format!("{name} table is not {n}x{n}")));
        }
        let mut flat = Vec::with_capacity(n * n);
        for (a, row) in t.iter().enumerate() {
            for (b, &v) in row.iter().enumerate() {
                if v as usize >= n {
                    return Err(AxiomViolation::OutOfRange {
                        table: name,
                        a: a as Elem,
                        b: b as Elem,
                        value: v,
                    });
                }
                flat.push(v);
            }
        }
        Ok(flat)
    };
    let add = flatten(&raw.add, "add")?;
    let mul = flatten(&raw.mul, "mul")?;
    let mut seen = alloc::collections::BTreeSet::new();
    for l in &raw.labels {
        if !seen.insert(l.as_str()) {
            return Err(AxiomViolation::DuplicateLabel(l.clone()));
        }
    }
    let (zero, one) = check_axioms(n, &add, &mul)?;
    Ok(RingTable::from_trusted(raw.labels.clone(), add, mul, zero, one))
}

/// Checks the ring axioms on flat tables and returns `(zero, one)`.
pub(super) fn check_axioms(n: usize, add: &[Elem], mul: &[Elem]) -> Result<(Elem, Elem), AxiomViolation> {
    let ad = |a: Elem, b: Elem| add[a as usize * n + b as usize];
    let mu = |a: Elem, b: Elem| mul[a as usize * n + b as usize];
    let all = || 0..n as Elem;

    let zero = all()
        .find(|&z| all().all(|x| ad(z, x) == x && ad(x, z) == x))
        .ok_or(AxiomViolation::NoZero)?;
    for a in all() {
        for b in a + 1..n as Elem {
            if ad(a, b) != ad(b, a) {
                return Err(AxiomViolation::AddNotCommutative(a, b));
            }
        }
    }
    for a in all() {
        if !all().any(|b| ad(a, b) == zero) {
            return Err(AxiomViolation::NoNegative(a));
        }
    }
    let one = all()
        .find(|&e| all().all(|x| mu(e, x) == x && mu(x, e) == x))
        .ok_or(AxiomViolation::NoOne)?;
    if one == zero {
        return Err(AxiomViolation::ZeroRing);
    }

    let triple = |a: Elem, b: Elem, c: Elem| -> Result<(), AxiomViolation> {
        if ad(ad(a, b), c) != ad(a, ad(b, c)) {
            return Err(AxiomViolation::AddNotAssociative(a, b, c));
        }
        if mu(mu(a, b), c) != mu(a, mu(b, c)) {
            return Err(AxiomViolation::MulNotAssociative(a, b, c));
        }
        if mu(a, ad(b, c)) != ad(mu(a, b), mu(a, c)) {
            return Err(AxiomViolation::LeftDistributivity(a, b, c));
        }
        if mu(ad(a, b), c) != ad(mu(a, c), mu(b, c)) {
            return Err(AxiomViolation::RightDistributivity(a, b, c));
        }
        Ok(())
    };
    if n <= EXHAUSTIVE_AXIOM_LIMIT {
        for a in all() {
            for b in all() {
                for c in all() {
                    triple(a, b, c)?;
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
        for _ in 0..SAMPLED_TRIPLES {
            let a = rng.random_range(0..n as Elem);
            let b = rng.random_range(0..n as Elem);
            let c = rng.random_range(0..n as Elem);
            triple(a, b, c)?;
        }
    }
    Ok((zero, one))
}
