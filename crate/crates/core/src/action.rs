//! The action of `GL₂(R)` on `P(R)`.
//!
//! Group elements act on rows: `R(a,b)·γ = R((a,b)γ)`. The group itself is
//! only materialised for tiny rings; otherwise everything goes through the
//! generators `E₁₂(x)`, `E₂₁(x)`, `diag(u,1)`, `diag(1,u)` turned into point
//! permutations, orbit–stabiliser arithmetic and the order formula.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::projline::{rows_invertible, PointId, ProjLine};
use crate::ring::{gl2_order_formula, quotient_by_radical, wedderburn_signature, Elem, RingTable};
use crate::{Error, Result};

/// Rings up to this order get exhaustive `GL₂` enumeration.
pub const EXHAUSTIVE_GROUP_LIMIT: usize = 16;

/// Lines with more points are not tested for 3-transitivity.
pub const TRANSITIVITY_POINT_LIMIT: usize = 2000;

const TRIPLE_LIMIT: u128 = 10_000_000;

/// A `2 × 2` matrix `[[a, b], [c, d]]` over a ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mat2 {
    /// Row 1, column 1.
    pub a: Elem,
    /// Row 1, column 2.
    pub b: Elem,
    /// Row 2, column 1.
    pub c: Elem,
    /// Row 2, column 2.
    pub d: Elem,
}

impl Mat2 {
    /// The identity.
    pub fn identity(ring: &RingTable) -> Self {
        Self::diag(ring, ring.one(), ring.one())
    }

    /// `[[1, x], [0, 1]]`.
    pub fn e12(ring: &RingTable, x: Elem) -> Self {
        Mat2 {
            a: ring.one(),
            b: x,
            c: ring.zero(),
            d: ring.one(),
        }
    }

    /// `[[1, 0], [x, 1]]`.
    pub fn e21(ring: &RingTable, x: Elem) -> Self {
        Mat2 {
            a: ring.one(),
            b: ring.zero(),
            c: x,
            d: ring.one(),
        }
    }

    /// `[[u, 0], [0, v]]`.
    pub fn diag(ring: &RingTable, u: Elem, v: Elem) -> Self {
        Mat2 {
            a: u,
            b: ring.zero(),
            c: ring.zero(),
            d: v,
        }
    }

    /// `(x, y)·self`.
    pub fn apply_row(&self, ring: &RingTable, (x, y): (Elem, Elem)) -> (Elem, Elem) {
        (
            ring.add(ring.mul(x, self.a), ring.mul(y, self.c)),
            ring.add(ring.mul(x, self.b), ring.mul(y, self.d)),
        )
    }

    /// `self · other`.
    pub fn mul(&self, ring: &RingTable, o: &Mat2) -> Mat2 {
        let (a, b) = o.apply_row(ring, (self.a, self.b));
        let (c, d) = o.apply_row(ring, (self.c, self.d));
        Mat2 { a, b, c, d }
    }

    /// Whether the matrix is invertible: `det ∈ R*` for commutative rings,
    /// injectivity of the row map otherwise.
    pub fn is_invertible(&self, ring: &RingTable) -> bool {
        if ring.is_commutative() {
            ring.is_unit(ring.sub(ring.mul(self.a, self.d), ring.mul(self.b, self.c)))
        } else {
            rows_invertible(ring, (self.a, self.b), (self.c, self.d))
        }
    }

    fn code(&self, n: usize) -> u64 {
        [self.a, self.b, self.c, self.d]
            .iter()
            .fold(0u64, |acc, &x| acc * n as u64 + x as u64)
    }
}

/// The generating matrices `E₁₂(x)`, `E₂₁(x)` for `x ∈ R` and `diag(u,1)`,
/// `diag(1,u)` for `u ∈ R*`.
pub fn generator_matrices(ring: &RingTable) -> Vec<Mat2> {
    let mut gens = Vec::new();
    for x in ring.elements() {
        gens.push(Mat2::e12(ring, x));
        gens.push(Mat2::e21(ring, x));
    }
    for &u in ring.units() {
        gens.push(Mat2::diag(ring, u, ring.one()));
        gens.push(Mat2::diag(ring, ring.one(), u));
    }
    gens
}

/// The image of a point.
pub fn apply(line: &ProjLine, m: &Mat2, p: PointId) -> Result<PointId> {
    let ring = line.ring();
    if !m.is_invertible(ring) {
        return Err(Error::NotInvertible);
    }
    Ok(apply_unchecked(line, m, p))
}

fn apply_unchecked(line: &ProjLine, m: &Mat2, p: PointId) -> PointId {
    let image = m.apply_row(line.ring(), line.rep(p));
    line.point_of(image).expect("invertible matrices map points to points")
}

/// A permutation of point ids.
pub type Perm = Vec<PointId>;

/// The point permutation induced by `m`.
pub fn matrix_perm(line: &ProjLine, m: &Mat2) -> Result<Perm> {
    if !m.is_invertible(line.ring()) {
        return Err(Error::NotInvertible);
    }
    Ok((0..line.len() as PointId)
        .map(|p| apply_unchecked(line, m, p))
        .collect())
}

/// Distinct non-identity permutations induced by [`generator_matrices`], in
/// first-occurrence order.
pub fn generator_perms(line: &ProjLine) -> Vec<Perm> {
    let mut seen = BTreeSet::new();
    let identity: Perm = (0..line.len() as PointId).collect();
    seen.insert(identity);
    let mut perms = Vec::new();
    for m in generator_matrices(line.ring()) {
        let perm = matrix_perm(line, &m).expect("generators are invertible");
        if seen.insert(perm.clone()) {
            perms.push(perm);
        }
    }
    perms
}

fn orbit_impl(seeds: &[Vec<PointId>], perms: &[Perm], sort: bool, cap: usize) -> Result<Vec<Vec<PointId>>> {
    let mut seen: BTreeSet<Vec<PointId>> = BTreeSet::new();
    let mut queue = VecDeque::new();
    for s in seeds {
        let mut key = s.clone();
        if sort {
            key.sort_unstable();
        }
        if seen.insert(key.clone()) {
            queue.push_back(key);
        }
    }
    while let Some(block) = queue.pop_front() {
        for g in perms {
            let mut image: Vec<PointId> = block.iter().map(|&p| g[p as usize]).collect();
            if sort {
                image.sort_unstable();
            }
            if !seen.contains(&image) {
                if seen.len() >= cap {
                    return Err(Error::CapExceeded {
                        what: "orbit",
                        size: seen.len() as u128 + 1,
                        cap: cap as u128,
                    });
                }
                seen.insert(image.clone());
                queue.push_back(image);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// Closure of a set of blocks under the permutations. Blocks are keyed by
/// their sorted point ids; the result is sorted.
pub fn orbit(seeds: &[Vec<PointId>], perms: &[Perm], cap: usize) -> Result<Vec<Vec<PointId>>> {
    orbit_impl(seeds, perms, true, cap)
}

/// Orbit of an ordered tuple of points.
pub fn tuple_orbit(seed: &[PointId], perms: &[Perm], cap: usize) -> Result<Vec<Vec<PointId>>> {
    orbit_impl(&[seed.to_vec()], perms, false, cap)
}

/// `|GL₂(R)| = |rad R|⁴ · |GL₂(R/rad R)|`, the semisimple part from the
/// Wedderburn–Artin signature. For rings of order at most
/// [`EXHAUSTIVE_GROUP_LIMIT`] the value is confirmed by enumeration.
pub fn gl2_order(ring: &RingTable) -> Result<u128> {
    let (q, _) = quotient_by_radical(ring);
    let sig = wedderburn_signature(&q)?;
    let formula = gl2_order_formula(ring.radical().len(), &sig)
        .ok_or_else(|| Error::Internal(String::from("|GL2| overflows u128")))?;
    if ring.order() <= EXHAUSTIVE_GROUP_LIMIT {
        let counted = enumerate_gl2(ring)?.len() as u128;
        if counted != formula {
            return Err(Error::Internal(format!(
                "|GL2| formula gives {formula}, enumeration gives {counted}"
            )));
        }
    }
    Ok(formula)
}

/// Every invertible matrix, for rings of order at most
/// [`EXHAUSTIVE_GROUP_LIMIT`].
pub fn enumerate_gl2(ring: &RingTable) -> Result<Vec<Mat2>> {
    if ring.order() > EXHAUSTIVE_GROUP_LIMIT {
        return Err(Error::CapExceeded {
            what: "exhaustive GL2 enumeration (ring order)",
            size: ring.order() as u128,
            cap: EXHAUSTIVE_GROUP_LIMIT as u128,
        });
    }
    let mut out = Vec::new();
    for a in ring.elements() {
        for b in ring.elements() {
            for c in ring.elements() {
                for d in ring.elements() {
                    let m = Mat2 { a, b, c, d };
                    if m.is_invertible(ring) {
                        out.push(m);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// The subgroup of `GL₂(R)` generated by [`generator_matrices`], as a
/// sorted list, for rings of order at most [`EXHAUSTIVE_GROUP_LIMIT`].
pub fn generated_subgroup(ring: &RingTable) -> Result<Vec<Mat2>> {
    if ring.order() > EXHAUSTIVE_GROUP_LIMIT {
        return Err(Error::CapExceeded {
            what: "generated subgroup (ring order)",
            size: ring.order() as u128,
            cap: EXHAUSTIVE_GROUP_LIMIT as u128,
        });
    }
    let gens = generator_matrices(ring);
    let n = ring.order();
    let id = Mat2::identity(ring);
    let mut seen: BTreeMap<u64, Mat2> = BTreeMap::new();
    seen.insert(id.code(n), id);
    let mut queue = VecDeque::from([id]);
    while let Some(m) = queue.pop_front() {
        for g in &gens {
            let next = m.mul(ring, g);
            if let alloc::collections::btree_map::Entry::Vacant(e) = seen.entry(next.code(n)) {
                e.insert(next);
                queue.push_back(next);
            }
        }
    }
    let mut out: Vec<Mat2> = seen.into_values().collect();
    out.sort();
    Ok(out)
}

/// Whether the generators produce all of `GL₂(R)`; tiny rings only.
pub fn generators_span_gl2(ring: &RingTable) -> Result<bool> {
    let mut all = enumerate_gl2(ring)?;
    all.sort();
    Ok(generated_subgroup(ring)? == all)
}

/// `group_order / |orbit(block)|`, failing if the division is not exact.
pub fn stabiliser_order(block: &[PointId], perms: &[Perm], group_order: u128, cap: usize) -> Result<u128> {
    let len = orbit(&[block.to_vec()], perms, cap)?.len() as u128;
    if !group_order.is_multiple_of(len) {
        return Err(Error::StabiliserNotIntegral {
            group_order,
            orbit: len,
        });
    }
    Ok(group_order / len)
}

/// Number of ordered triples of mutually distant points.
pub fn count_distant_triples(line: &ProjLine) -> u128 {
    let mut count = 0u128;
    for p in 0..line.len() as PointId {
        for q in line.neighbourhood(p) {
            count += line.neighbourhood(q).iter().filter(|&&r| line.distant(p, r)).count() as u128;
        }
    }
    count
}

/// Whether the generators act transitively on ordered triples of mutually
/// distant points: the orbit of `(∞, 0, 1)` is compared with a direct count.
pub fn check_3_transitivity(line: &ProjLine, perms: &[Perm]) -> Result<bool> {
    if line.len() > TRANSITIVITY_POINT_LIMIT {
        return Err(Error::CapExceeded {
            what: "line for the 3-transitivity check",
            size: line.len() as u128,
            cap: TRANSITIVITY_POINT_LIMIT as u128,
        });
    }
    let total = count_distant_triples(line);
    if total > TRIPLE_LIMIT {
        return Err(Error::CapExceeded {
            what: "mutually distant triples",
            size: total,
            cap: TRIPLE_LIMIT,
        });
    }
    let ring = line.ring();
    let seed = [line.infinity(), line.affine(ring.zero()), line.affine(ring.one())];
    let orbit = tuple_orbit(&seed, perms, TRIPLE_LIMIT as usize)?;
    Ok(orbit.len() as u128 == total)
}
