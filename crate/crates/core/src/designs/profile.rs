use crate::chains::ChainGeometry;
use crate::combin::binomial;
use crate::projline::PointId;
use crate::{Error, Result};

/// Triples of points examined when checking that every ∥-transversal
/// triple lies on a chain.
pub const PROFILE_TRIPLE_LIMIT: u128 = 5_000_000;

/// How close a chain geometry comes to a 3-divisible design.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainProfile {
    /// `|P(R)|`.
    pub v: usize,
    /// `|rad R|`, the size of a parallel class.
    pub s1: usize,
    /// `v − |R|`, the number of points not distant from a given point.
    pub s2: usize,
    /// `|K| + 1`.
    pub k: usize,
    /// Chains through three mutually distant points.
    pub lambda3: usize,
    /// Whether `s₁ = s₂`.
    pub equal_class_sizes: bool,
    /// Whether every triple of pairwise non-parallel points is on a chain;
    /// `None` if there are too many triples to check.
    pub transversal_triples_on_chains: Option<bool>,
}

/// Collects the parameters and checks them against the line: every class
/// has `s₁` points and every point is non-distant from exactly `s₂` points.
pub fn chain_geometry_profile(geo: &ChainGeometry) -> Result<ChainProfile> {
    let line = geo.line();
    let ring = geo.ring();
    let v = line.len();
    let s1 = ring.radical().len();
    let s2 = v - ring.order();
    if let Some(c) = line.parallel_classes().iter().find(|c| c.len() != s1) {
        return Err(Error::Internal(alloc::format!(
            "a parallel class has {} points, not {s1}",
            c.len()
        )));
    }
    for p in 0..v as PointId {
        if v - line.distant_degree(p) != s2 {
            return Err(Error::Internal(alloc::format!(
                "point {p} is non-distant from {} points, not {s2}",
                v - line.distant_degree(p)
            )));
        }
    }
    let transversal_triples_on_chains = if binomial(v as u64, 3) <= PROFILE_TRIPLE_LIMIT {
        let mut all = true;
        'outer: for p in 0..v as PointId {
            for q in p + 1..v as PointId {
                if line.parallel(p, q) {
                    continue;
                }
                for r in q + 1..v as PointId {
                    if !line.parallel(p, r) && !line.parallel(q, r) && geo.chains_through_triple(p, q, r) == 0 {
                        all = false;
                        break 'outer;
                    }
                }
            }
        }
        Some(all)
    } else {
        None
    };
    Ok(ChainProfile {
        v,
        s1,
        s2,
        k: geo.embedding().order() + 1,
        lambda3: geo.lambda3(),
        equal_class_sizes: s1 == s2,
        transversal_triples_on_chains,
    })
}
