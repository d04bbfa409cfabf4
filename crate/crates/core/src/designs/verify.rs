use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use super::{derive_lambda_i, DegreeWitness, Design, Params, Violation};
use crate::combin::{binomial, checked_pow, for_each_subset};
use crate::projline::PointId;
use crate::{Error, Result};

/// Upper bound on the number of transversal `t`-sets enumerated by
/// [`verify_dd`].
pub const SUBSET_LIMIT: u128 = 10_000_000;

/// Checks axioms A, B, D and C in that order and returns the certified
/// parameters, or the first violation with a witness.
pub fn verify_dd(design: &Design, t: usize) -> Result<Params> {
    if t == 0 {
        return Err(Error::MalformedDesign("t must be at least 1".into()));
    }
    let blocks = design.blocks();
    let first = blocks.first().ok_or(Violation::NoBlocks)?;
    let k = first.len();
    for block in blocks {
        let mut hit = alloc::vec![false; design.classes().len()];
        for &p in block {
            let c = design.class_of(p);
            if core::mem::replace(&mut hit[c as usize], true) {
                return Err(Violation::BlockNotTransversal {
                    block: block.clone(),
                    class: c,
                }
                .into());
            }
        }
        if block.len() != k {
            return Err(Violation::BlockSize {
                block: block.clone(),
                size: block.len(),
                expected: k,
            }
            .into());
        }
    }

    let classes = design.classes();
    let s = classes[0].len();
    if let Some(other) = classes.iter().position(|c| c.len() != s) {
        let degrees = design.degrees();
        let witness = degrees.iter().position(|&d| d != degrees[0]).map(|o| DegreeWitness {
            point: 0,
            blocks: degrees[0],
            other: o as PointId,
            other_blocks: degrees[o],
        });
        return Err(Violation::ClassSizes {
            class: 0,
            size: s,
            other: other as u32,
            other_size: classes[other].len(),
            degrees: witness,
        }
        .into());
    }

    let n = classes.len();
    if t > n {
        return Err(Violation::TooStrong { t, classes: n }.into());
    }
    if k < t {
        return Err(Violation::BlocksTooSmall { k, t }.into());
    }

    let total = transversal_count(n, s, t).ok_or(Error::CapExceeded {
        what: "transversal t-sets",
        size: u128::MAX,
        cap: SUBSET_LIMIT,
    })?;
    if total > SUBSET_LIMIT {
        return Err(Error::CapExceeded {
            what: "transversal t-sets",
            size: total,
            cap: SUBSET_LIMIT,
        });
    }

    let mut counts: BTreeMap<Vec<PointId>, u128> = BTreeMap::new();
    for block in blocks {
        for_each_subset(block, t, |sub| *counts.entry(sub.to_vec()).or_default() += 1);
    }
    let mut expected = None;
    let mut failure = None;
    let mut current = Vec::with_capacity(t);
    let mut used = alloc::vec![false; n];
    for_each_transversal(design, t, 0, &mut current, &mut used, &mut |set| {
        let count = counts.get(set).copied().unwrap_or(0);
        match expected {
            None => {
                expected = Some(count);
                true
            }
            Some(e) if e == count => true,
            Some(e) => {
                failure = Some(Violation::Lambda {
                    subset: set.to_vec(),
                    count,
                    expected: e,
                });
                false
            }
        }
    });
    if let Some(v) = failure {
        return Err(v.into());
    }
    let lambda_t = expected.expect("t <= number of classes, so a transversal t-set exists");
    if lambda_t == 0 {
        return Err(Violation::Lambda {
            subset: first[..t].to_vec(),
            count: 0,
            expected: 0,
        }
        .into());
    }

    let v = design.v();
    let mut lambdas = Vec::with_capacity(t + 1);
    for i in 0..=t {
        let l = derive_lambda_i(v, s, k, t, lambda_t, i);
        if !l.is_integer() {
            return Err(Error::Internal(format!("lambda_{i} = {l} is not an integer")));
        }
        lambdas.push(l.to_integer());
    }
    let b = blocks.len() as u128;
    if lambdas[0] != b {
        return Err(Error::Internal(format!("lambda_0 = {} but b = {b}", lambdas[0])));
    }
    let r = lambdas[1];
    if let Some(p) = design.degrees().iter().position(|&d| d as u128 != r) {
        return Err(Error::Internal(format!(
            "point {p} lies on a number of blocks other than r = {r}"
        )));
    }
    Ok(Params {
        t,
        s,
        k,
        lambda_t,
        v,
        b,
        r,
        lambdas,
        transversal: k == n,
    })
}

/// `C(n, t) · s^t`.
pub(crate) fn transversal_count(n: usize, s: usize, t: usize) -> Option<u128> {
    binomial(n as u64, t as u64).checked_mul(checked_pow(s as u128, t as u32)?)
}

/// Visits transversal `t`-sets in lexicographic order until `f` returns
/// false. Returns false if stopped early.
pub(crate) fn for_each_transversal(
    design: &Design,
    t: usize,
    start: usize,
    current: &mut Vec<PointId>,
    used: &mut [bool],
    f: &mut dyn FnMut(&[PointId]) -> bool,
) -> bool {
    if current.len() == t {
        return f(current);
    }
    let remaining = t - current.len();
    for p in start..design.v() {
        if design.v() - p < remaining {
            break;
        }
        let c = design.class_of(p as PointId) as usize;
        if used[c] {
            continue;
        }
        used[c] = true;
        current.push(p as PointId);
        let go_on = for_each_transversal(design, t, p + 1, current, used, f);
        current.pop();
        used[c] = false;
        if !go_on {
            return false;
        }
    }
    true
}

/// The largest `t` for which the design certifies, searched upwards from
/// `t = 1`, with its parameters. `None` if it does not certify at `t = 1`.
pub fn max_certified_t(design: &Design) -> Result<Option<Params>> {
    let mut best = None;
    for t in 1..=design.classes().len() {
        match verify_dd(design, t) {
            Ok(p) => best = Some(p),
            Err(Error::Violation(_)) => break,
            Err(e) => return Err(e),
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::super::tests::octahedron;
    use super::*;
    use alloc::vec;

    #[test]
    fn octahedron_certifies() {
        let d = octahedron();
        let p3 = verify_dd(&d, 3).unwrap();
        assert_eq!(alloc::format!("{p3}"), "3-(2,3,1)");
        assert_eq!((p3.v, p3.b, p3.r), (6, 8, 4));
        assert!(p3.transversal);
        let p2 = verify_dd(&d, 2).unwrap();
        assert_eq!(alloc::format!("{p2}"), "2-(2,3,2)");
        assert_eq!(max_certified_t(&d).unwrap().unwrap().t, 3);
    }

    #[test]
    fn counterexample_reports_degrees() {
        let d = Design::new(3, vec![vec![0], vec![1, 2]], vec![vec![0, 1], vec![0, 2]]).unwrap();
        let err = verify_dd(&d, 2).unwrap_err();
        let Error::Violation(Violation::ClassSizes { degrees: Some(w), .. }) = err else {
            panic!("unexpected {err:?}");
        };
        assert_eq!((w.point, w.blocks, w.other, w.other_blocks), (0, 2, 1, 1));
    }

    #[test]
    fn lambda_witness_is_first_deviation() {
        let mut faces = octahedron().blocks().to_vec();
        faces.pop();
        let d = Design::new(6, vec![vec![0, 1], vec![2, 3], vec![4, 5]], faces).unwrap();
        let err = verify_dd(&d, 3).unwrap_err();
        assert_eq!(
            err,
            Error::Violation(Violation::Lambda {
                subset: vec![1, 3, 5],
                count: 0,
                expected: 1
            })
        );
    }

    #[test]
    fn axiom_d_and_a() {
        assert!(matches!(
            verify_dd(&octahedron(), 4),
            Err(Error::Violation(Violation::TooStrong { t: 4, classes: 3 }))
        ));
        let d = Design::new(4, vec![vec![0, 1], vec![2, 3]], vec![vec![0, 1]]).unwrap();
        assert!(matches!(
            verify_dd(&d, 1),
            Err(Error::Violation(Violation::BlockNotTransversal { class: 0, .. }))
        ));
    }

    #[test]
    fn transversal_enumeration_order() {
        let d = octahedron();
        let mut seen = Vec::new();
        let mut cur = Vec::new();
        let mut used = vec![false; 3];
        for_each_transversal(&d, 2, 0, &mut cur, &mut used, &mut |s| {
            seen.push(s.to_vec());
            true
        });
        assert_eq!(seen.len(), 12);
        assert_eq!(seen[0], vec![0, 2]);
        let mut sorted = seen.clone();
        sorted.sort();
        assert_eq!(seen, sorted);
    }
}
