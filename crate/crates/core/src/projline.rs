//! The projective line `P(R)` over a finite ring.
//!
//! Points are cyclic left submodules `R(a,b)` generated by admissible pairs.
//! Each point is stored by its canonical representative, the least pair in
//! its unit orbit `{ (ua, ub) : u ∈ R* }` under the lexicographic order of
//! element indices, and point ids follow the order of representatives.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::ring::{point_count_formula, quotient_by_radical, wedderburn_signature, Elem, RingHom, RingTable};
use crate::{Error, Limits, Result};

/// Index of a point in a [`ProjLine`].
pub type PointId = u32;

const NO_POINT: PointId = PointId::MAX;

/// Rings up to this order have admissibility double-checked by searching for
/// a completing invertible matrix.
pub const COMPLETION_CHECK_LIMIT: usize = 16;

/// Lines up to this many points have parallelism double-checked against the
/// definition through neighbourhoods.
pub const PARALLEL_CHECK_LIMIT: usize = 2000;

/// A point together with its canonical representative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PLinePoint {
    /// Canonical representative pair.
    pub rep: (Elem, Elem),
    /// Position in the line's point order.
    pub id: PointId,
}

/// Whether `ax + by = 1` is solvable.
pub fn is_unimodular(ring: &RingTable, (a, b): (Elem, Elem)) -> bool {
    let mut in_ar = vec![false; ring.order()];
    for x in ring.elements() {
        in_ar[ring.mul(a, x) as usize] = true;
    }
    ring.elements()
        .any(|y| in_ar[ring.sub(ring.one(), ring.mul(b, y)) as usize])
}

/// Whether `(x,y) ↦ x(a,b) + y(c,d)` is injective on `R²`, i.e. whether the
/// matrix with rows `(a,b)` and `(c,d)` is invertible.
pub fn rows_invertible(ring: &RingTable, (a, b): (Elem, Elem), (c, d): (Elem, Elem)) -> bool {
    let n = ring.order();
    let mut seen = vec![false; n * n];
    for x in ring.elements() {
        for y in ring.elements() {
            let u = ring.add(ring.mul(x, a), ring.mul(y, c));
            let v = ring.add(ring.mul(x, b), ring.mul(y, d));
            let code = u as usize * n + v as usize;
            if seen[code] {
                return false;
            }
            seen[code] = true;
        }
    }
    true
}

/// Whether `(a,b)` is the first row of some invertible matrix, by exhaustive
/// search over second rows.
pub fn completes_to_invertible(ring: &RingTable, pair: (Elem, Elem)) -> bool {
    ring.elements()
        .any(|c| ring.elements().any(|d| rows_invertible(ring, pair, (c, d))))
}

/// Whether `(a,b)` is admissible. For rings of order at most
/// [`COMPLETION_CHECK_LIMIT`] the answer is also obtained by matrix
/// completion, and a disagreement is reported as an internal error.
pub fn is_admissible(ring: &RingTable, pair: (Elem, Elem)) -> Result<bool> {
    let u = is_unimodular(ring, pair);
    if ring.order() <= COMPLETION_CHECK_LIMIT && completes_to_invertible(ring, pair) != u {
        return Err(Error::Internal(format!(
            "unimodular and admissible disagree on ({}, {})",
            ring.label(pair.0),
            ring.label(pair.1)
        )));
    }
    Ok(u)
}

/// The least pair in the unit orbit of an admissible pair.
pub fn canonical_point(ring: &RingTable, pair: (Elem, Elem)) -> Result<(Elem, Elem)> {
    if !is_unimodular(ring, pair) {
        return Err(Error::NotAdmissible(
            ring.label(pair.0).into(),
            ring.label(pair.1).into(),
        ));
    }
    Ok(unit_orbit_min(ring, pair))
}

fn unit_orbit_min(ring: &RingTable, (a, b): (Elem, Elem)) -> (Elem, Elem) {
    ring.units()
        .iter()
        .map(|&u| (ring.mul(u, a), ring.mul(u, b)))
        .min()
        .expect("1 is a unit")
}

/// Fixed-width bitset over point ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Bits(Vec<u64>);

impl Bits {
    fn new(len: usize) -> Self {
        Bits(vec![0; len.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    pub(crate) fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn is_subset(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &word)| {
            let mut rest = word;
            core::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(w * 64 + i)
            })
        })
    }
}

/// The projective line over a finite ring.
#[derive(Debug, Clone)]
pub struct ProjLine {
    ring: Arc<RingTable>,
    reps: Vec<(Elem, Elem)>,
    pair_point: Vec<PointId>,
    distant: Vec<Bits>,
    class_of: Vec<u32>,
    classes: Vec<Vec<PointId>>,
    quotient: Arc<RingTable>,
    to_quotient: RingHom,
}

impl ProjLine {
    /// Enumerates `P(R)` and computes the distant relation and parallel
    /// classes.
    pub fn build(ring: Arc<RingTable>, limits: &Limits) -> Result<Self> {
        let n = ring.order();
        if n > limits.ring_cap {
            return Err(Error::CapExceeded {
                what: "ring",
                size: n as u128,
                cap: limits.ring_cap as u128,
            });
        }
        let (quotient, to_quotient) = quotient_by_radical(&ring);
        let quotient = Arc::new(quotient);
        let (reps, pair_point) = enumerate_points(&ring)?;
        let distant = distant_relation(&ring, &reps);
        let mut line = ProjLine {
            ring,
            reps,
            pair_point,
            distant,
            class_of: Vec::new(),
            classes: Vec::new(),
            quotient,
            to_quotient,
        };
        line.parallel_classes_via_quotient(limits)?;
        if line.len() <= PARALLEL_CHECK_LIMIT {
            line.check_parallel_definition()?;
        }
        Ok(line)
    }

    fn parallel_classes_via_quotient(&mut self, limits: &Limits) -> Result<()> {
        let bar: Vec<u32> = if self.ring.radical().len() == 1 {
            (0..self.len() as u32).collect()
        } else {
            let qline = ProjLine::build(self.quotient.clone(), limits)?;
            self.reps
                .iter()
                .map(|&(a, b)| {
                    let pair = (self.to_quotient.apply(a), self.to_quotient.apply(b));
                    qline
                        .point_of(pair)
                        .ok_or_else(|| Error::Internal(String::from("image of an admissible pair is not admissible")))
                })
                .collect::<Result<_>>()?
        };
        let mut by_bar: BTreeMap<u32, Vec<PointId>> = BTreeMap::new();
        for (p, &b) in bar.iter().enumerate() {
            by_bar.entry(b).or_default().push(p as PointId);
        }
        let mut classes: Vec<Vec<PointId>> = by_bar.into_values().collect();
        classes.sort();
        let mut class_of = vec![0; self.len()];
        for (c, class) in classes.iter().enumerate() {
            for &p in class {
                class_of[p as usize] = c as u32;
            }
        }
        self.classes = classes;
        self.class_of = class_of;
        Ok(())
    }

    fn check_parallel_definition(&self) -> Result<()> {
        for p in 0..self.len() {
            for q in 0..self.len() {
                let by_def = self.distant[p].is_subset(&self.distant[q]);
                let by_quotient = self.class_of[p] == self.class_of[q];
                if by_def != by_quotient {
                    return Err(Error::Internal(format!(
                        "parallelism of points {p} and {q}: definition says {by_def}, quotient says {by_quotient}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// The coordinate ring.
    pub fn ring(&self) -> &Arc<RingTable> {
        &self.ring
    }

    /// `R/rad R`.
    pub fn quotient_ring(&self) -> &Arc<RingTable> {
        &self.quotient
    }

    /// Number of points.
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    /// Always false: `P(R)` contains `R(1,0)`.
    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// All points in id order.
    pub fn points(&self) -> impl Iterator<Item = PLinePoint> + '_ {
        self.reps
            .iter()
            .enumerate()
            .map(|(i, &rep)| PLinePoint { rep, id: i as PointId })
    }

    /// Canonical representative of a point.
    pub fn rep(&self, p: PointId) -> (Elem, Elem) {
        self.reps[p as usize]
    }

    /// `(a,b)` with element labels.
    pub fn point_label(&self, p: PointId) -> String {
        let (a, b) = self.rep(p);
        format!("({},{})", self.ring.label(a), self.ring.label(b))
    }

    /// The point `R(a,b)`, or `None` if the pair is not admissible.
    pub fn point_of(&self, (a, b): (Elem, Elem)) -> Option<PointId> {
        let id = self.pair_point[a as usize * self.ring.order() + b as usize];
        (id != NO_POINT).then_some(id)
    }

    /// `∞ = R(1,0)`.
    pub fn infinity(&self) -> PointId {
        self.point_of((self.ring.one(), self.ring.zero()))
            .expect("(1,0) is admissible")
    }

    /// The affine point `R(x,1)`.
    pub fn affine(&self, x: Elem) -> PointId {
        self.point_of((x, self.ring.one())).expect("(x,1) is admissible")
    }

    /// Number of admissible pairs in `R²`.
    pub fn admissible_pairs(&self) -> usize {
        self.pair_point.iter().filter(|&&p| p != NO_POINT).count()
    }

    /// Whether `p △ q`.
    pub fn distant(&self, p: PointId, q: PointId) -> bool {
        self.distant[p as usize].get(q as usize)
    }

    /// `∂(p)`, the points distant from `p`, ascending.
    pub fn neighbourhood(&self, p: PointId) -> Vec<PointId> {
        self.distant[p as usize].iter().map(|i| i as PointId).collect()
    }

    /// `|∂(p)|`.
    pub fn distant_degree(&self, p: PointId) -> usize {
        self.distant[p as usize].count()
    }

    /// Whether `p ∥ q`.
    pub fn parallel(&self, p: PointId, q: PointId) -> bool {
        self.class_of[p as usize] == self.class_of[q as usize]
    }

    /// Whether `∂(p) ⊆ ∂(q)`, the definition of `p ∥ q`.
    pub fn parallel_by_definition(&self, p: PointId, q: PointId) -> bool {
        self.distant[p as usize].is_subset(&self.distant[q as usize])
    }

    /// Parallel classes, each ascending, ordered by least member.
    pub fn parallel_classes(&self) -> &[Vec<PointId>] {
        &self.classes
    }

    /// Index of the parallel class of `p`.
    pub fn class_of(&self, p: PointId) -> u32 {
        self.class_of[p as usize]
    }

    /// Whether "not distant" is transitive.
    pub fn nondistant_is_equivalence(&self) -> bool {
        self.nondistant_witness().is_none()
    }

    /// Points `p, q, r` with `p ⧸△ q`, `q ⧸△ r` and `p △ r`, if any.
    pub fn nondistant_witness(&self) -> Option<(PointId, PointId, PointId)> {
        for q in 0..self.len() {
            for p in 0..self.len() {
                if self.distant[q].get(p) {
                    continue;
                }
                // p ⧸△ q; look for r ⧸△ q with r △ p
                for r in 0..self.len() {
                    if !self.distant[q].get(r) && self.distant[p].get(r) {
                        return Some((p as PointId, q as PointId, r as PointId));
                    }
                }
            }
        }
        None
    }
}

/// Builds `P(R)` with default limits.
pub fn build_line(ring: Arc<RingTable>) -> Result<ProjLine> {
    ProjLine::build(ring, &Limits::default())
}

/// Point representatives and, per pair code, the point it spans.
type PointTables = (Vec<(Elem, Elem)>, Vec<PointId>);

fn enumerate_points(ring: &RingTable) -> Result<PointTables> {
    let n = ring.order();
    let check_completion = n <= COMPLETION_CHECK_LIMIT;
    // right ideals aR as bitmasks, deduplicated, so unimodularity is decided
    // once per pair of principal right ideals
    let mut ideal_ids: BTreeMap<Vec<bool>, usize> = BTreeMap::new();
    let mut ideal_of = Vec::with_capacity(n);
    let mut ideals: Vec<Vec<bool>> = Vec::new();
    for a in ring.elements() {
        let mut mask = vec![false; n];
        for x in ring.elements() {
            mask[ring.mul(a, x) as usize] = true;
        }
        let next = ideals.len();
        let id = *ideal_ids.entry(mask.clone()).or_insert(next);
        if id == next {
            ideals.push(mask);
        }
        ideal_of.push(id);
    }
    let mut unimodular_cache: BTreeMap<(usize, usize), bool> = BTreeMap::new();
    let mut pair_point = vec![NO_POINT; n * n];
    let mut orbit_reps: Vec<(Elem, Elem)> = Vec::new();
    for a in ring.elements() {
        for b in ring.elements() {
            let key = (ideal_of[a as usize], ideal_of[b as usize]);
            let unimodular = *unimodular_cache.entry(key).or_insert_with(|| {
                let (ia, ib) = (&ideals[key.0], &ideals[key.1]);
                ring.elements()
                    .any(|z| ib[z as usize] && ia[ring.sub(ring.one(), z) as usize])
            });
            if check_completion && completes_to_invertible(ring, (a, b)) != unimodular {
                return Err(Error::Internal(format!(
                    "unimodular and admissible disagree on ({}, {})",
                    ring.label(a),
                    ring.label(b)
                )));
            }
            if !unimodular || pair_point[a as usize * n + b as usize] != NO_POINT {
                continue;
            }
            let tmp = orbit_reps.len() as PointId;
            let mut rep = (a, b);
            for &u in ring.units() {
                let p = (ring.mul(u, a), ring.mul(u, b));
                rep = rep.min(p);
                pair_point[p.0 as usize * n + p.1 as usize] = tmp;
            }
            orbit_reps.push(rep);
        }
    }
    let mut order: Vec<usize> = (0..orbit_reps.len()).collect();
    order.sort_by_key(|&i| orbit_reps[i]);
    let mut rename = vec![0; order.len()];
    for (new, &old) in order.iter().enumerate() {
        rename[old] = new as PointId;
    }
    for p in pair_point.iter_mut().filter(|p| **p != NO_POINT) {
        *p = rename[*p as usize];
    }
    let reps = order.iter().map(|&i| orbit_reps[i]).collect();
    Ok((reps, pair_point))
}

fn distant_relation(ring: &RingTable, reps: &[(Elem, Elem)]) -> Vec<Bits> {
    let m = reps.len();
    let mut rel = vec![Bits::new(m); m];
    if ring.is_commutative() {
        for (i, &(a, b)) in reps.iter().enumerate() {
            for (j, &(c, d)) in reps.iter().enumerate() {
                if ring.is_unit(ring.sub(ring.mul(a, d), ring.mul(b, c))) {
                    rel[i].set(j);
                }
            }
        }
        return rel;
    }
    // R(a,b) ∩ R(c,d) = {0} via sorted element codes of each submodule
    let n = ring.order() as u64;
    let zero_code = ring.zero() as u64 * n + ring.zero() as u64;
    let modules: Vec<Vec<u64>> = reps
        .iter()
        .map(|&(a, b)| {
            let mut codes: Vec<u64> = ring
                .elements()
                .map(|x| ring.mul(x, a) as u64 * n + ring.mul(x, b) as u64)
                .filter(|&c| c != zero_code)
                .collect();
            codes.sort_unstable();
            codes
        })
        .collect();
    for i in 0..m {
        for j in i + 1..m {
            if disjoint(&modules[i], &modules[j]) {
                rel[i].set(j);
                rel[j].set(i);
            }
        }
    }
    rel
}

fn disjoint(a: &[u64], b: &[u64]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            core::cmp::Ordering::Less => i += 1,
            core::cmp::Ordering::Greater => j += 1,
            core::cmp::Ordering::Equal => return false,
        }
    }
    true
}

/// `|P(R)|` from `|rad R|` and the Wedderburn signature of `R/rad R`.
pub fn count_points(ring: &RingTable) -> Result<u128> {
    let (q, _) = quotient_by_radical(ring);
    let sig = wedderburn_signature(&q)?;
    point_count_formula(ring.radical().len(), &sig)
        .ok_or_else(|| Error::Internal(String::from("point count overflows u128")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{build_ring, RingSpec};
    use alloc::boxed::Box;

    fn line(spec: RingSpec) -> ProjLine {
        build_line(Arc::new(build_ring(&spec).unwrap())).unwrap()
    }

    #[test]
    fn z6_line() {
        let l = line(RingSpec::Zmod(6));
        assert_eq!(l.len(), 12);
        assert_eq!(l.admissible_pairs(), 24);
        let r = l.ring().clone();
        assert!(is_unimodular(&r, (2, 3)));
        assert!(!is_unimodular(&r, (2, 2)));
        assert_eq!(canonical_point(&r, (5, 5)).unwrap(), (1, 1));
        assert!(canonical_point(&r, (2, 2)).is_err());
        assert!(!l.nondistant_is_equivalence());
        assert_eq!(count_points(&r).unwrap(), 12);
    }

    #[test]
    fn field_lines() {
        for q in [2, 3, 4, 5, 7, 8, 9] {
            let l = line(RingSpec::GaloisField(q));
            assert_eq!(l.len() as u64, q + 1);
            for p in 0..l.len() as PointId {
                for r in 0..l.len() as PointId {
                    assert_eq!(l.distant(p, r), p != r);
                }
            }
        }
    }

    #[test]
    fn gf3_unit_orbits() {
        let r = build_ring(&RingSpec::GaloisField(3)).unwrap();
        // 2·(2,1) = (1,2): one point, two representatives
        assert_eq!(canonical_point(&r, (2, 1)).unwrap(), (1, 2));
        assert_eq!(canonical_point(&r, (1, 2)).unwrap(), (1, 2));
        assert_ne!(
            canonical_point(&r, (1, 1)).unwrap(),
            canonical_point(&r, (1, 2)).unwrap()
        );
    }

    #[test]
    fn dual_numbers_parallel_classes() {
        let l = line(RingSpec::DualNumbers {
            base: Box::new(RingSpec::GaloisField(3)),
            h: 2,
        });
        assert_eq!(l.len(), 12);
        assert!(l.parallel_classes().iter().all(|c| c.len() == 3));
        assert!(l.nondistant_is_equivalence());
        for p in 0..12 {
            assert_eq!(l.distant_degree(p), 9);
            for q in 0..12 {
                assert_eq!(l.parallel(p, q), !l.distant(p, q));
            }
        }
    }

    #[test]
    fn matrix_ring_line_uses_module_test() {
        let l = line(RingSpec::MatrixRing {
            m: 2,
            base: Box::new(RingSpec::GaloisField(2)),
        });
        assert_eq!(l.len(), 35);
        let r = l.ring().clone();
        for p in 0..35 {
            for q in 0..35 {
                assert_eq!(l.distant(p, q), rows_invertible(&r, l.rep(p), l.rep(q)));
            }
        }
        assert!(!l.nondistant_is_equivalence());
    }

    #[test]
    fn infinity_and_affine_points() {
        let l = line(RingSpec::Zmod(4));
        assert_eq!(l.rep(l.infinity()), (1, 0));
        let inf = l.infinity();
        let mut affine: Vec<PointId> = (0..4).map(|x| l.affine(x)).collect();
        affine.sort();
        assert_eq!(affine, l.neighbourhood(inf));
    }

    #[test]
    fn bitset_iteration() {
        let mut b = Bits::new(130);
        for i in [0, 63, 64, 129] {
            b.set(i);
        }
        assert_eq!(b.iter().collect::<Vec<_>>(), [0, 63, 64, 129]);
        assert_eq!(b.count(), 4);
    }
}
