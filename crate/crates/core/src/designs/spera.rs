//! Block sets as group orbits of one base block.

use alloc::format;
use alloc::vec::Vec;

use num_rational::Ratio;

use super::verify::{for_each_transversal, transversal_count};
use super::{verify_dd, Design, Params, Violation};
use crate::action::{enumerate_gl2, gl2_order, matrix_perm, orbit, Perm, EXHAUSTIVE_GROUP_LIMIT};
use crate::chains::ChainGeometry;
use crate::combin::binomial;
use crate::projline::PointId;
use crate::{Error, Limits, Result};

/// How hypothesis (c), transitivity on class-transversal `t`-sets, is
/// established.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransitivityCheck {
    /// Compute the orbit of one transversal `t`-set and compare with the
    /// number of all of them.
    Orbit,
    /// Take it from 3-transitivity on mutually distant points; valid for
    /// radical parallelism over a local ring and `t ≤ 3`.
    AssumeLocalParallel,
}

/// Input to [`spera_construct`].
#[derive(Debug, Clone)]
pub struct SperaInput {
    /// Number of points.
    pub v: usize,
    /// Point classes.
    pub classes: Vec<Vec<PointId>>,
    /// Permutations generating the group `G`.
    pub generators: Vec<Perm>,
    /// `|G|`, if known.
    pub group_order: Option<u128>,
    /// `|G_{B₀}|` obtained independently of the orbit, if known.
    pub stabiliser_order: Option<u128>,
    /// `B₀`.
    pub base_block: Vec<PointId>,
    /// Target strength.
    pub t: usize,
    /// How to establish hypothesis (c).
    pub transitivity: TransitivityCheck,
    /// Maximal number of blocks.
    pub block_cap: usize,
}

/// Result of [`spera_construct`].
#[derive(Debug, Clone)]
pub struct SperaOutput {
    /// The design `(X, B₀^G, 𝒮)`.
    pub design: Design,
    /// Its certified parameters.
    pub params: Params,
    /// `λ_t` counted through the first transversal `t`-set.
    pub lambda_direct: u128,
    /// `λ_t = |G|·C(k,t) / (|G_{B₀}|·C(v/s,t)·s^t)`, when `|G|` is known.
    pub lambda_via_stabiliser: Option<Ratio<u128>>,
    /// `λ_t = b·C(k,t) / (C(v/s,t)·s^t)`.
    pub lambda_via_block_count: Ratio<u128>,
    /// `|G_{B₀}|` as used above.
    pub stabiliser_order: Option<u128>,
}

/// Builds the orbit design of `B₀` after checking the hypotheses: (a) the
/// generators preserve the classes, (b) classes have equal size, (c) the
/// group is transitive on class-transversal `t`-sets. `λ_t` is obtained
/// three ways and all must agree with the certified value.
pub fn spera_construct(input: &SperaInput) -> Result<SperaOutput> {
    let t = input.t;
    let skeleton = Design::new(input.v, input.classes.clone(), Vec::new())?;
    if input.base_block.iter().any(|&p| p as usize >= input.v) {
        return Err(Error::MalformedDesign("base block point out of range".into()));
    }
    if !skeleton.is_class_transversal(&input.base_block) {
        return Err(Violation::BaseBlockNotTransversal(input.base_block.clone()).into());
    }

    // (a)
    for (gi, g) in input.generators.iter().enumerate() {
        if g.len() != input.v {
            return Err(Error::MalformedDesign(format!("generator {gi} has the wrong degree")));
        }
        for class in skeleton.classes() {
            let target = skeleton.class_of(g[class[0] as usize]);
            if let Some(&q) = class.iter().find(|&&q| skeleton.class_of(g[q as usize]) != target) {
                return Err(Violation::NotInvariant {
                    generator: gi,
                    p: class[0],
                    q,
                }
                .into());
            }
        }
    }

    // (b)
    let classes = skeleton.classes();
    let s = classes[0].len();
    if let Some(other) = classes.iter().position(|c| c.len() != s) {
        let blocks = orbit(
            core::slice::from_ref(&input.base_block),
            &input.generators,
            input.block_cap,
        )?;
        let degrees = Design::new(input.v, input.classes.clone(), blocks)
            .map(|d| d.degrees())
            .ok()
            .and_then(|deg| {
                deg.iter().position(|&d| d != deg[0]).map(|o| super::DegreeWitness {
                    point: 0,
                    blocks: deg[0],
                    other: o as PointId,
                    other_blocks: deg[o],
                })
            });
        return Err(Violation::ClassSizes {
            class: 0,
            size: s,
            other: other as u32,
            other_size: classes[other].len(),
            degrees,
        }
        .into());
    }
    let n = classes.len();
    if t == 0 || t > n || t > input.base_block.len() {
        return Err(Error::MalformedDesign(format!(
            "need 1 <= t <= min(k, number of classes), got t = {t}"
        )));
    }
    let total = transversal_count(n, s, t).ok_or(Error::Internal("transversal count overflows".into()))?;

    // (c)
    match input.transitivity {
        TransitivityCheck::Orbit => {
            let mut first = None;
            let mut cur = Vec::new();
            let mut used = alloc::vec![false; n];
            for_each_transversal(&skeleton, t, 0, &mut cur, &mut used, &mut |set| {
                first = Some(set.to_vec());
                false
            });
            let first = first.expect("a transversal t-set exists");
            let cap = usize::try_from(total).unwrap_or(usize::MAX).saturating_add(1);
            let len = orbit(&[first], &input.generators, cap)?.len() as u128;
            if len != total {
                return Err(Violation::NotTransitive { orbit: len, total }.into());
            }
        }
        TransitivityCheck::AssumeLocalParallel => {
            if t > 3 {
                return Err(Error::MalformedDesign(
                    "transitivity can only be assumed for t <= 3".into(),
                ));
            }
        }
    }

    let blocks = orbit(
        core::slice::from_ref(&input.base_block),
        &input.generators,
        input.block_cap,
    )?;
    let design = Design::new(input.v, input.classes.clone(), blocks)?;
    let params = verify_dd(&design, t)?;

    let k = input.base_block.len();
    let b = design.b() as u128;
    let per_block = binomial(k as u64, t as u64);
    let lambda_via_block_count = Ratio::new(b * per_block, total);

    let mut first = None;
    let mut cur = Vec::new();
    let mut used = alloc::vec![false; n];
    for_each_transversal(&design, t, 0, &mut cur, &mut used, &mut |set| {
        first = Some(set.to_vec());
        false
    });
    let first = first.expect("a transversal t-set exists");
    let lambda_direct = design
        .blocks()
        .iter()
        .filter(|blk| first.iter().all(|p| blk.binary_search(p).is_ok()))
        .count() as u128;

    let stabiliser_order = match (input.group_order, input.stabiliser_order) {
        (Some(g), Some(st)) => {
            if g != st * b {
                return Err(Error::Internal(format!("|G| = {g} but |G_B0| * b = {st} * {b}")));
            }
            Some(st)
        }
        (Some(g), None) => {
            if g % b != 0 {
                return Err(Error::StabiliserNotIntegral {
                    group_order: g,
                    orbit: b,
                });
            }
            Some(g / b)
        }
        (None, st) => st,
    };
    let lambda_via_stabiliser = match (input.group_order, stabiliser_order) {
        (Some(g), Some(st)) => Some(Ratio::new(g * per_block, st * total)),
        _ => None,
    };

    let certified = Ratio::from_integer(params.lambda_t);
    let agree = lambda_direct == params.lambda_t
        && lambda_via_block_count == certified
        && lambda_via_stabiliser.is_none_or(|l| l == certified);
    if !agree {
        return Err(Error::Internal(format!(
            "lambda_t disagrees: certified {}, direct {lambda_direct}, block count {lambda_via_block_count}, stabiliser {lambda_via_stabiliser:?}",
            params.lambda_t
        )));
    }
    Ok(SperaOutput {
        design,
        params,
        lambda_direct,
        lambda_via_stabiliser,
        lambda_via_block_count,
        stabiliser_order,
    })
}

/// Transversal `t`-sets beyond which the orbit check of hypothesis (c) is
/// replaced by the local-ring argument.
const ORBIT_CHECK_LIMIT: u128 = 2_000_000;

/// Spera's construction on a chain geometry: points `P(R)`, classes the
/// parallel classes, group `GL₂(R)`. For `|R| ≤ 16` the setwise stabiliser
/// of `B₀` is counted in the enumerated group.
pub fn spera_from_geometry(
    geo: &ChainGeometry,
    base_block: &[PointId],
    t: usize,
    limits: &Limits,
) -> Result<SperaOutput> {
    let line = geo.line();
    let ring = line.ring();
    let group_order = gl2_order(ring)?;
    let mut block: Vec<PointId> = base_block.to_vec();
    block.sort_unstable();
    let stabiliser_order = if ring.order() <= EXHAUSTIVE_GROUP_LIMIT {
        let mut count = 0u128;
        for m in enumerate_gl2(ring)? {
            let perm = matrix_perm(line, &m)?;
            let mut image: Vec<PointId> = block.iter().map(|&p| perm[p as usize]).collect();
            image.sort_unstable();
            if image == block {
                count += 1;
            }
        }
        Some(count)
    } else {
        None
    };
    let classes = line.parallel_classes().to_vec();
    let s = classes[0].len();
    let many = transversal_count(classes.len(), s, t).is_none_or(|c| c > ORBIT_CHECK_LIMIT);
    let transitivity = if many && ring.is_local() && t <= 3 {
        TransitivityCheck::AssumeLocalParallel
    } else {
        TransitivityCheck::Orbit
    };
    spera_construct(&SperaInput {
        v: line.len(),
        classes,
        generators: geo.generators().to_vec(),
        group_order: Some(group_order),
        stabiliser_order,
        base_block: block,
        t,
        transitivity,
        block_cap: limits.block_cap,
    })
}

/// Spera's construction with `B₀ = C₀ ∖ {∞}`, `C₀ ∖ {∞, 0}` or
/// `C₀ ∖ {∞, 0, 1}` for `drop = 1, 2, 3`, over a local algebra
/// (`R` local, `K` central). The certified `(k, λ₃)` must be `(q, q−2)`,
/// `(q−1, (q−2)(q−3)/2)` or `(q−2, (q−2)(q−3)(q−4)/6)` with `q = |K|`.
pub fn truncated_chain_design(geo: &ChainGeometry, drop: usize, limits: &Limits) -> Result<SperaOutput> {
    if !(1..=3).contains(&drop) {
        return Err(Error::MalformedDesign(format!("drop must be 1, 2 or 3, got {drop}")));
    }
    let q = geo.embedding().order();
    if q <= drop + 1 {
        return Err(Error::FieldTooSmall { drop, min: drop + 1, q });
    }
    let ring = geo.ring();
    if !ring.is_local() {
        return Err(Error::NotLocal("truncated chains need a local ring"));
    }
    let centre = ring.centre();
    if geo.embedding().image().iter().any(|x| centre.binary_search(x).is_err()) {
        return Err(Error::NotLocal("truncated chains need K inside the centre of R"));
    }
    let line = geo.line();
    let removed = [line.infinity(), line.affine(ring.zero()), line.affine(ring.one())];
    let base: Vec<PointId> = geo
        .standard_chain()
        .iter()
        .copied()
        .filter(|p| !removed[..drop].contains(p))
        .collect();
    let out = spera_from_geometry(geo, &base, 3, limits)?;
    let q = q as u128;
    let expected = match drop {
        1 => (q, q - 2),
        2 => (q - 1, (q - 2) * (q - 3) / 2),
        _ => (q - 2, (q - 2) * (q - 3) * (q - 4) / 6),
    };
    let got = (out.params.k as u128, out.params.lambda_t);
    if got != expected {
        return Err(Error::Internal(format!(
            "truncated chain design has (k, lambda_3) = {got:?}, expected {expected:?}"
        )));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chains::{embed_subfield, FieldStrategy};
    use crate::projline::ProjLine;
    use crate::ring::{build_ring, RingSpec};
    use alloc::boxed::Box;
    use alloc::sync::Arc;
    use alloc::vec;

    fn geometry(spec: RingSpec) -> ChainGeometry {
        let ring = Arc::new(build_ring(&spec).unwrap());
        let emb = embed_subfield(&ring, &FieldStrategy::Wedderburn).unwrap();
        let line = Arc::new(ProjLine::build(ring, &Limits::default()).unwrap());
        ChainGeometry::build(line, emb, &Limits::default()).unwrap()
    }

    fn dual(q: u64) -> RingSpec {
        RingSpec::DualNumbers {
            base: Box::new(RingSpec::GaloisField(q)),
            h: 2,
        }
    }

    #[test]
    fn laguerre_gf2() {
        let g = geometry(dual(2));
        let out = spera_from_geometry(&g, g.standard_chain(), 3, &Limits::default()).unwrap();
        assert_eq!(alloc::format!("{}", out.params), "3-(2,3,1)");
        assert_eq!(out.params.b, 8);
        assert_eq!(out.stabiliser_order, Some(gl2_order(g.ring()).unwrap() / 8));
    }

    #[test]
    fn twisted_dual_t3_and_t4() {
        let g = geometry(RingSpec::TwistedDual {
            base: Box::new(RingSpec::GaloisField(4)),
            h: 2,
            frobenius_power: 1,
        });
        let out = spera_from_geometry(&g, g.standard_chain(), 3, &Limits::default()).unwrap();
        assert_eq!(alloc::format!("{}", out.params), "3-(4,5,4)");
        assert_eq!(out.stabiliser_order, Some(180));
        let p4 = verify_dd(&out.design, 4).unwrap();
        assert_eq!(alloc::format!("{p4}"), "4-(4,5,1)");
    }

    #[test]
    fn truncations_need_large_fields() {
        let g = geometry(dual(3));
        assert_eq!(
            truncated_chain_design(&g, 2, &Limits::default()).unwrap_err(),
            Error::FieldTooSmall { drop: 2, min: 3, q: 3 }
        );
        let out = truncated_chain_design(&g, 1, &Limits::default()).unwrap();
        assert_eq!(alloc::format!("{}", out.params), "3-(3,3,1)");
    }

    #[test]
    fn counterexample_is_rejected() {
        let input = SperaInput {
            v: 3,
            classes: vec![vec![0], vec![1, 2]],
            generators: vec![vec![0, 2, 1]],
            group_order: Some(2),
            stabiliser_order: None,
            base_block: vec![0, 1],
            t: 2,
            transitivity: TransitivityCheck::Orbit,
            block_cap: 100,
        };
        let err = spera_construct(&input).unwrap_err();
        let Error::Violation(Violation::ClassSizes {
            size,
            other_size,
            degrees: Some(w),
            ..
        }) = err
        else {
            panic!("unexpected {err:?}");
        };
        assert_eq!((size, other_size), (1, 2));
        assert_eq!((w.blocks, w.other_blocks), (2, 1));
    }

    #[test]
    fn non_invariant_generator() {
        let input = SperaInput {
            v: 4,
            classes: vec![vec![0, 1], vec![2, 3]],
            generators: vec![vec![0, 2, 1, 3]],
            group_order: None,
            stabiliser_order: None,
            base_block: vec![0, 2],
            t: 1,
            transitivity: TransitivityCheck::Orbit,
            block_cap: 100,
        };
        assert!(matches!(
            spera_construct(&input),
            Err(Error::Violation(Violation::NotInvariant {
                generator: 0,
                p: 0,
                q: 1
            }))
        ));
    }
}
