//! Exact finite rings given by operation tables.
//!
//! A [`RingTable`] stores the full addition and multiplication tables over
//! element indices `0..order`, together with derived data: the unit group,
//! inverses, the Jacobson radical, locality, commutativity and the
//! characteristic. Structured families (residue rings, Galois fields, dual and
//! twisted dual numbers, matrix rings, products, exterior algebras) are built
//! from a [`RingSpec`] by [`build_ring`]; arbitrary tables go through
//! [`validate_ring_tables`].

mod build;
mod gf;
mod spec;
mod structure;
mod validate;

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;

pub use build::{build_ring, build_ring_with, NoTables, TableSource};
pub use gf::least_irreducible;
pub use spec::{RingSpec, SpecError};
pub use structure::{gl2_order_formula, point_count_formula, RingHom, Signature};
pub use validate::{validate_ring_tables, AxiomViolation, RawTables, EXHAUSTIVE_AXIOM_LIMIT};

/// Index of a ring element in its table.
pub type Elem = u32;

/// A copy of a coefficient ring sitting inside a structured ring, e.g. the
/// constants `a + 0ε` of a ring of dual numbers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scalars {
    /// The coefficient ring.
    pub ring: Box<RingTable>,
    /// Its image: `map[x]` is the element of the big ring.
    pub map: Vec<Elem>,
}

/// A finite ring with exact tables and derived structural data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingTable {
    order: usize,
    zero: Elem,
    one: Elem,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    labels: Vec<String>,
    units: Vec<Elem>,
    inverse: Vec<Option<Elem>>,
    radical: Vec<Elem>,
    in_radical: Vec<bool>,
    commutative: bool,
    local: bool,
    characteristic: usize,
    scalars: Option<Scalars>,
}

impl RingTable {
    /// Assembles a ring from tables that are already known to satisfy the
    /// ring axioms, computing all derived data.
    pub(crate) fn from_trusted(labels: Vec<String>, add: Vec<Elem>, mul: Vec<Elem>, zero: Elem, one: Elem) -> Self {
        let order = labels.len();
        debug_assert_eq!(add.len(), order * order);
        debug_assert_eq!(mul.len(), order * order);
        let mut neg = alloc::vec![0; order];
        for a in 0..order {
            let row = &add[a * order..(a + 1) * order];
            let b = row.iter().position(|&x| x == zero).expect("additive inverse");
            neg[a] = b as Elem;
        }
        let mut ring = RingTable {
            order,
            zero,
            one,
            add,
            mul,
            neg,
            labels,
            units: Vec::new(),
            inverse: Vec::new(),
            radical: Vec::new(),
            in_radical: Vec::new(),
            commutative: false,
            local: false,
            characteristic: 0,
            scalars: None,
        };
        ring.derive();
        ring
    }

    fn derive(&mut self) {
        let n = self.order;
        let mut inverse = alloc::vec![None; n];
        for a in 0..n as Elem {
            if let Some(b) = (0..n as Elem).find(|&b| self.mul(a, b) == self.one) {
                // one-sided inverses are two-sided in a finite ring
                debug_assert_eq!(self.mul(b, a), self.one);
                inverse[a as usize] = Some(b);
            }
        }
        self.units = (0..n as Elem).filter(|&a| inverse[a as usize].is_some()).collect();
        self.inverse = inverse;

        let mut in_radical = alloc::vec![false; n];
        for b in 0..n as Elem {
            in_radical[b as usize] = (0..n as Elem).all(|a| {
                let x = self.sub(self.one, self.mul(a, b));
                self.inverse[x as usize].is_some()
            });
        }
        self.radical = (0..n as Elem).filter(|&b| in_radical[b as usize]).collect();
        self.in_radical = in_radical;

        self.commutative = (0..n as Elem).all(|a| (a + 1..n as Elem).all(|b| self.mul(a, b) == self.mul(b, a)));
        self.local = n - self.units.len() == self.radical.len();

        let mut x = self.one;
        let mut c = 1;
        while x != self.zero {
            x = self.add(x, self.one);
            c += 1;
        }
        self.characteristic = c;
    }

    pub(crate) fn with_scalars(mut self, scalars: Option<Scalars>) -> Self {
        self.scalars = scalars;
        self
    }

    /// Number of elements.
    pub fn order(&self) -> usize {
        self.order
    }

    /// Index of `0`.
    pub fn zero(&self) -> Elem {
        self.zero
    }

    /// Index of `1`.
    pub fn one(&self) -> Elem {
        self.one
    }

    /// All element indices.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        0..self.order as Elem
    }

    /// `a + b`.
    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a as usize * self.order + b as usize]
    }

    /// `a · b`.
    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a as usize * self.order + b as usize]
    }

    /// `−a`.
    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a as usize]
    }

    /// `a − b`.
    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    /// `a^e` with `a^0 = 1`.
    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        let mut acc = self.one;
        for _ in 0..e {
            acc = self.mul(acc, a);
        }
        acc
    }

    /// The element `1 + 1 + … + 1` (`k` summands).
    pub fn from_int(&self, k: u64) -> Elem {
        let mut acc = self.zero;
        for _ in 0..k % self.characteristic as u64 {
            acc = self.add(acc, self.one);
        }
        acc
    }

    /// Human-readable element names, indexed by element.
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Name of one element.
    pub fn label(&self, a: Elem) -> &str {
        &self.labels[a as usize]
    }

    /// Looks an element up by its label.
    pub fn find_label(&self, label: &str) -> Option<Elem> {
        self.labels.iter().position(|l| l == label).map(|i| i as Elem)
    }

    /// The unit group `R*`, ascending.
    pub fn units(&self) -> &[Elem] {
        &self.units
    }

    /// Whether `a ∈ R*`.
    #[inline]
    pub fn is_unit(&self, a: Elem) -> bool {
        self.inverse[a as usize].is_some()
    }

    /// The inverse of a unit.
    #[inline]
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        self.inverse[a as usize]
    }

    /// The Jacobson radical `{ b : 1 − ab ∈ R* for all a }`, ascending.
    pub fn radical(&self) -> &[Elem] {
        &self.radical
    }

    /// Whether `b ∈ rad R`.
    #[inline]
    pub fn in_radical(&self, b: Elem) -> bool {
        self.in_radical[b as usize]
    }

    /// Whether multiplication is commutative.
    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    /// Whether the non-units form an ideal.
    pub fn is_local(&self) -> bool {
        self.local
    }

    /// Whether every nonzero element is a unit.
    pub fn is_field(&self) -> bool {
        self.units.len() + 1 == self.order
    }

    /// Additive order of `1`.
    pub fn characteristic(&self) -> usize {
        self.characteristic
    }

    /// The coefficient ring embedded as constants, for structured families
    /// that have one.
    pub fn scalars(&self) -> Option<&Scalars> {
        self.scalars.as_ref()
    }

    /// The centre `Z(R)`.
    pub fn centre(&self) -> Vec<Elem> {
        self.elements()
            .filter(|&z| self.elements().all(|x| self.mul(z, x) == self.mul(x, z)))
            .collect()
    }

    /// The raw tables of this ring (labels, addition, multiplication).
    pub fn to_raw(&self) -> RawTables {
        let n = self.order;
        let rows = |t: &[Elem]| (0..n).map(|a| t[a * n..(a + 1) * n].to_vec()).collect();
        RawTables {
            labels: self.labels.clone(),
            add: rows(&self.add),
            mul: rows(&self.mul),
        }
    }
}

/// The unit group of `ring`.
pub fn units_of(ring: &RingTable) -> Vec<Elem> {
    ring.units().to_vec()
}

/// The Jacobson radical of `ring`.
pub fn jacobson_radical(ring: &RingTable) -> Vec<Elem> {
    ring.radical().to_vec()
}

/// Whether `ring` is local.
pub fn is_local(ring: &RingTable) -> bool {
    ring.is_local()
}

/// `R/rad R` together with the canonical epimorphism.
pub fn quotient_by_radical(ring: &RingTable) -> (RingTable, RingHom) {
    structure::quotient_by_radical(ring)
}

/// Wedderburn–Artin factors `(m, q)` of a ring with zero radical.
pub fn wedderburn_signature(ring: &RingTable) -> crate::Result<Signature> {
    structure::wedderburn_signature(ring)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::boxed::Box;
    use alloc::vec;

    fn ring(spec: RingSpec) -> RingTable {
        build_ring(&spec).unwrap()
    }

    fn gf(q: u64) -> Box<RingSpec> {
        Box::new(RingSpec::GaloisField(q))
    }

    #[test]
    fn z4_units_and_locality() {
        let r = ring(RingSpec::Zmod(4));
        assert_eq!(units_of(&r), vec![1, 3]);
        assert_eq!(jacobson_radical(&r), vec![0, 2]);
        assert!(is_local(&r));
        assert_eq!(r.characteristic(), 4);
    }

    #[test]
    fn quotient_of_gf3_dual() {
        let r = ring(RingSpec::DualNumbers { base: gf(3), h: 2 });
        let (q, hom) = quotient_by_radical(&r);
        assert_eq!(q.order(), 3);
        assert!(q.is_field());
        assert!(hom.is_homomorphism(&r, &q));
        assert_eq!(hom.kernel(&q), r.radical());
    }

    #[test]
    fn quotient_of_twisted_dual_drops_e() {
        let r = ring(RingSpec::TwistedDual {
            base: gf(4),
            h: 2,
            frobenius_power: 1,
        });
        let (q, hom) = quotient_by_radical(&r);
        assert_eq!(q.order(), 4);
        let x = r.find_label("t+(t+1)e").unwrap();
        assert_eq!(q.label(hom.apply(x)), "t");
    }

    #[test]
    fn signatures() {
        let z6 = ring(RingSpec::Zmod(6));
        let (q, _) = quotient_by_radical(&z6);
        assert_eq!(wedderburn_signature(&q).unwrap(), vec![(1, 2), (1, 3)]);
        assert_eq!(
            wedderburn_signature(&ring(RingSpec::GaloisField(9))).unwrap(),
            vec![(1, 9)]
        );
        let m2 = ring(RingSpec::MatrixRing { m: 2, base: gf(2) });
        assert_eq!(wedderburn_signature(&m2).unwrap(), vec![(2, 2)]);
        let z4 = ring(RingSpec::Zmod(4));
        assert_eq!(wedderburn_signature(&z4), Err(crate::Error::RadicalNonzero(2)));
    }

    #[test]
    fn subrings() {
        let r = ring(RingSpec::DualNumbers { base: gf(4), h: 2 });
        let consts = &r.scalars().unwrap().map;
        let (k, inc) = r.subring(consts).unwrap();
        assert!(k.is_field());
        assert!(inc.is_homomorphism(&k, &r));
        assert!(r.subring(&[0, 1, 2]).is_none());
        assert_eq!(r.generated_subring(&[]).len(), 2);
    }

    #[test]
    fn twist_does_not_commute_with_t() {
        let r = ring(RingSpec::TwistedDual {
            base: gf(4),
            h: 2,
            frobenius_power: 1,
        });
        let e = r.find_label("e").unwrap();
        let t = r.find_label("t").unwrap();
        // e·t = σ(t)·e = t²·e = (t+1)e
        assert_eq!(r.label(r.mul(e, t)), "(t+1)e");
        assert_eq!(r.label(r.mul(t, e)), "te");
    }
}
