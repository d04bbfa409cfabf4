use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::{Elem, RingTable};
use crate::combin::{checked_pow, prime_power};
use crate::{Error, Result};

/// A map between two rings, stored as a table over domain elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingHom {
    /// `map[x]` is the image of `x`.
    pub map: Vec<Elem>,
}

impl RingHom {
    /// Image of `x`.
    pub fn apply(&self, x: Elem) -> Elem {
        self.map[x as usize]
    }

    /// Whether the map preserves `0`, `1`, `+` and `·` from `dom` to `cod`.
    pub fn is_homomorphism(&self, dom: &RingTable, cod: &RingTable) -> bool {
        let f = |x: Elem| self.map[x as usize];
        self.map.len() == dom.order()
            && self.map.iter().all(|&y| (y as usize) < cod.order())
            && f(dom.zero()) == cod.zero()
            && f(dom.one()) == cod.one()
            && dom.elements().all(|a| {
                dom.elements()
                    .all(|b| f(dom.add(a, b)) == cod.add(f(a), f(b)) && f(dom.mul(a, b)) == cod.mul(f(a), f(b)))
            })
    }

    /// Whether distinct elements have distinct images.
    pub fn is_injective(&self) -> bool {
        let set: BTreeSet<_> = self.map.iter().collect();
        set.len() == self.map.len()
    }

    /// Elements mapped to zero of `cod`.
    pub fn kernel(&self, cod: &RingTable) -> Vec<Elem> {
        (0..self.map.len() as Elem)
            .filter(|&x| self.apply(x) == cod.zero())
            .collect()
    }
}

/// Wedderburn–Artin factors `(m, q)`, one per simple component `M_m(GF(q))`,
/// sorted ascending.
pub type Signature = Vec<(u32, u64)>;

pub(super) fn quotient_by_radical(ring: &RingTable) -> (RingTable, RingHom) {
    let n = ring.order();
    let mut coset = vec![Elem::MAX; n];
    let mut reps = Vec::new();
    for x in ring.elements() {
        if coset[x as usize] != Elem::MAX {
            continue;
        }
        let id = reps.len() as Elem;
        reps.push(x);
        for &r in ring.radical() {
            coset[ring.add(x, r) as usize] = id;
        }
    }
    let m = reps.len();
    let mut add = Vec::with_capacity(m * m);
    let mut mul = Vec::with_capacity(m * m);
    for &a in &reps {
        for &b in &reps {
            add.push(coset[ring.add(a, b) as usize]);
            mul.push(coset[ring.mul(a, b) as usize]);
        }
    }
    let labels = reps.iter().map(|&x| ring.labels()[x as usize].clone()).collect();
    let q = RingTable::from_trusted(
        labels,
        add,
        mul,
        coset[ring.zero() as usize],
        coset[ring.one() as usize],
    );
    (q, RingHom { map: coset })
}

impl RingTable {
    /// The subring on `elems`, if they contain `0` and `1` and are closed
    /// under `+`, `−` and `·`. Returns the subring and its inclusion map.
    pub fn subring(&self, elems: &[Elem]) -> Option<(RingTable, RingHom)> {
        let set: BTreeSet<Elem> = elems.iter().copied().collect();
        if !set.contains(&self.zero()) || !set.contains(&self.one()) {
            return None;
        }
        let list: Vec<Elem> = set.iter().copied().collect();
        let mut index = vec![Elem::MAX; self.order()];
        for (i, &x) in list.iter().enumerate() {
            index[x as usize] = i as Elem;
        }
        let m = list.len();
        let mut add = Vec::with_capacity(m * m);
        let mut mul = Vec::with_capacity(m * m);
        for &a in &list {
            if index[self.neg(a) as usize] == Elem::MAX {
                return None;
            }
            for &b in &list {
                let s = index[self.add(a, b) as usize];
                let p = index[self.mul(a, b) as usize];
                if s == Elem::MAX || p == Elem::MAX {
                    return None;
                }
                add.push(s);
                mul.push(p);
            }
        }
        let labels = list.iter().map(|&x| self.labels()[x as usize].clone()).collect();
        let sub = RingTable::from_trusted(
            labels,
            add,
            mul,
            index[self.zero() as usize],
            index[self.one() as usize],
        );
        Some((sub, RingHom { map: list }))
    }

    /// Smallest subring containing `gens`.
    pub fn generated_subring(&self, gens: &[Elem]) -> Vec<Elem> {
        let mut set: BTreeSet<Elem> = [self.zero(), self.one()].into_iter().collect();
        set.extend(gens.iter().copied());
        loop {
            let cur: Vec<Elem> = set.iter().copied().collect();
            let before = set.len();
            for &a in &cur {
                set.insert(self.neg(a));
                for &b in &cur {
                    set.insert(self.add(a, b));
                    set.insert(self.mul(a, b));
                }
            }
            if set.len() == before {
                return cur;
            }
        }
    }
}

pub(super) fn wedderburn_signature(ring: &RingTable) -> Result<Signature> {
    if ring.radical().len() != 1 {
        return Err(Error::RadicalNonzero(ring.radical().len()));
    }
    let centre = ring.centre();
    let idempotents: Vec<Elem> = centre
        .iter()
        .copied()
        .filter(|&e| e != ring.zero() && ring.mul(e, e) == e)
        .collect();
    // primitive: no other nonzero central idempotent f with fe = f
    let primitive: Vec<Elem> = idempotents
        .iter()
        .copied()
        .filter(|&e| idempotents.iter().all(|&f| f == e || ring.mul(f, e) != f))
        .collect();

    let mut total = ring.zero();
    for &e in &primitive {
        total = ring.add(total, e);
    }
    if total != ring.one() {
        return Err(Error::Internal(format!(
            "primitive central idempotents sum to {}, not 1",
            ring.label(total)
        )));
    }

    let mut sig = Vec::with_capacity(primitive.len());
    for &e in &primitive {
        let field: BTreeSet<Elem> = centre.iter().map(|&z| ring.mul(z, e)).collect();
        let block: BTreeSet<Elem> = ring.elements().map(|x| ring.mul(x, e)).collect();
        let q = field.len() as u64;
        if prime_power(q).is_none() {
            return Err(Error::Internal(format!(
                "central component of order {q} is not a field"
            )));
        }
        let mut m = 1u32;
        loop {
            match checked_pow(q as u128, m * m) {
                Some(size) if size == block.len() as u128 => break,
                Some(size) if size < block.len() as u128 => m += 1,
                _ => {
                    return Err(Error::Internal(format!(
                        "simple component of order {} is not a matrix ring over GF({q})",
                        block.len()
                    )))
                }
            }
        }
        sig.push((m, q));
    }
    sig.sort_unstable();
    Ok(sig)
}

fn gaussian_middle(m: u32, q: u128) -> Option<u128> {
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..m {
        num = num.checked_mul(checked_pow(q, 2 * m - i)? - 1)?;
        den = den.checked_mul(checked_pow(q, i + 1)? - 1)?;
    }
    Some(num / den)
}

fn gl_order(n: u32, q: u128) -> Option<u128> {
    let qn = checked_pow(q, n)?;
    let mut acc: u128 = 1;
    for i in 0..n {
        acc = acc.checked_mul(qn - checked_pow(q, i)?)?;
    }
    Some(acc)
}

/// `|P(R)|` from `|rad R|` and the signature of `R/rad R`, or `None` on
/// overflow.
pub fn point_count_formula(radical: usize, sig: &[(u32, u64)]) -> Option<u128> {
    sig.iter().try_fold(radical as u128, |acc, &(m, q)| {
        acc.checked_mul(gaussian_middle(m, q as u128)?)
    })
}

/// `|GL₂(R)|` from `|rad R|` and the signature of `R/rad R`, or `None` on
/// overflow.
pub fn gl2_order_formula(radical: usize, sig: &[(u32, u64)]) -> Option<u128> {
    let lift = checked_pow(radical as u128, 4)?;
    sig.iter()
        .try_fold(lift, |acc, &(m, q)| acc.checked_mul(gl_order(2 * m, q as u128)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_binomials() {
        assert_eq!(gaussian_middle(1, 5), Some(6));
        assert_eq!(gaussian_middle(2, 2), Some(35));
        assert_eq!(gaussian_middle(2, 3), Some(130));
    }

    #[test]
    fn general_linear_orders() {
        assert_eq!(gl_order(2, 2), Some(6));
        assert_eq!(gl_order(2, 3), Some(48));
        assert_eq!(gl_order(4, 2), Some(20160));
    }

    #[test]
    fn formulas_combine_factors() {
        assert_eq!(point_count_formula(1, &[(1, 2), (1, 3)]), Some(12));
        assert_eq!(gl2_order_formula(4, &[(1, 4)]), Some(46080));
    }
}
