//! Divisible designs.
//!
//! A `t-(s,k,λ_t)` divisible design has `v` points split into classes of
//! size `s` and a set of blocks such that (A) every block meets each class
//! at most once and has `k` points, (B) all classes have `s` points, (C)
//! every class-transversal `t`-set lies in exactly `λ_t` blocks and (D)
//! `t ≤ v/s`. [`verify_dd`] checks all four by exhaustion.

mod iso;
mod profile;
mod spera;
mod verify;

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_rational::Ratio;

use crate::combin::binomial;
use crate::projline::PointId;
use crate::{Error, Result};

pub use iso::{dd_isomorphic, ISO_POINT_LIMIT};
pub use profile::{chain_geometry_profile, ChainProfile};
pub use spera::{
    spera_construct, spera_from_geometry, truncated_chain_design, SperaInput, SperaOutput, TransitivityCheck,
};
pub use verify::{max_certified_t, verify_dd, SUBSET_LIMIT};

/// Points, point classes and blocks.
///
/// Classes and blocks are kept sorted: each is an ascending list of point
/// ids, classes are ordered by least point and blocks lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Design {
    v: usize,
    classes: Vec<Vec<PointId>>,
    class_of: Vec<u32>,
    blocks: Vec<Vec<PointId>>,
}

impl Design {
    /// Checks that `classes` partition `0..v` and that `blocks` are distinct
    /// sets of valid point ids.
    pub fn new(v: usize, classes: Vec<Vec<PointId>>, blocks: Vec<Vec<PointId>>) -> Result<Self> {
        if v == 0 {
            return Err(Error::MalformedDesign("a design needs at least one point".into()));
        }
        let mut class_of = vec![u32::MAX; v];
        let mut classes: Vec<Vec<PointId>> = classes
            .into_iter()
            .map(|mut c| {
                c.sort_unstable();
                c
            })
            .collect();
        classes.sort();
        for (i, class) in classes.iter().enumerate() {
            if class.is_empty() {
                return Err(Error::MalformedDesign("empty point class".into()));
            }
            for &p in class {
                let slot = class_of
                    .get_mut(p as usize)
                    .ok_or_else(|| Error::MalformedDesign(format!("class point {p} is out of range")))?;
                if *slot != u32::MAX {
                    return Err(Error::MalformedDesign(format!("point {p} is in two classes")));
                }
                *slot = i as u32;
            }
        }
        if let Some(p) = class_of.iter().position(|&c| c == u32::MAX) {
            return Err(Error::MalformedDesign(format!("point {p} is in no class")));
        }
        let mut seen = BTreeSet::new();
        let mut sorted_blocks = Vec::with_capacity(blocks.len());
        for mut block in blocks {
            block.sort_unstable();
            if block.is_empty() {
                return Err(Error::MalformedDesign("empty block".into()));
            }
            if let Some(&p) = block.iter().find(|&&p| p as usize >= v) {
                return Err(Error::MalformedDesign(format!("block point {p} is out of range")));
            }
            if block.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::MalformedDesign(format!("block {block:?} repeats a point")));
            }
            if !seen.insert(block.clone()) {
                return Err(Error::MalformedDesign(format!("block {block:?} occurs twice")));
            }
            sorted_blocks.push(block);
        }
        sorted_blocks.sort();
        Ok(Design {
            v,
            classes,
            class_of,
            blocks: sorted_blocks,
        })
    }

    /// Number of points.
    pub fn v(&self) -> usize {
        self.v
    }

    /// Number of blocks.
    pub fn b(&self) -> usize {
        self.blocks.len()
    }

    /// The point classes.
    pub fn classes(&self) -> &[Vec<PointId>] {
        &self.classes
    }

    /// Index of the class containing `p`.
    pub fn class_of(&self, p: PointId) -> u32 {
        self.class_of[p as usize]
    }

    /// The blocks.
    pub fn blocks(&self) -> &[Vec<PointId>] {
        &self.blocks
    }

    /// Whether `set` meets every class at most once.
    pub fn is_class_transversal(&self, set: &[PointId]) -> bool {
        let mut used = BTreeSet::new();
        set.iter().all(|&p| used.insert(self.class_of(p)))
    }

    /// Number of blocks through each point.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.v];
        for block in &self.blocks {
            for &p in block {
                deg[p as usize] += 1;
            }
        }
        deg
    }
}

/// Certified parameters of a divisible design.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Params {
    /// Strength.
    pub t: usize,
    /// Class size.
    pub s: usize,
    /// Block size.
    pub k: usize,
    /// Blocks through each transversal `t`-set.
    pub lambda_t: u128,
    /// Number of points.
    pub v: usize,
    /// Number of blocks.
    pub b: u128,
    /// Blocks through each point.
    pub r: u128,
    /// `lambdas[i] = λᵢ` for `0 ≤ i ≤ t`; `λ₀ = b` and `λ₁ = r`.
    pub lambdas: Vec<u128>,
    /// Whether every block meets every class (`k = v/s`).
    pub transversal: bool,
}

impl Params {
    /// Number of point classes.
    pub fn classes(&self) -> usize {
        self.v / self.s
    }

    /// `λᵢ` from the closed form.
    pub fn lambda_i(&self, i: usize) -> Ratio<u128> {
        derive_lambda_i(self.v, self.s, self.k, self.t, self.lambda_t, i)
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-({},{},{})", self.t, self.s, self.k, self.lambda_t)
    }
}

/// `λᵢ = λ_t · C(v/s − i, t − i) · s^(t−i) / C(k − i, t − i)`.
///
/// Panics if `i > t` or `k < t`.
pub fn derive_lambda_i(v: usize, s: usize, k: usize, t: usize, lambda_t: u128, i: usize) -> Ratio<u128> {
    assert!(i <= t && t <= k, "need i <= t <= k");
    let n = (v / s) as u64;
    let num = lambda_t * binomial(n - i as u64, (t - i) as u64) * (s as u128).pow((t - i) as u32);
    let den = binomial((k - i) as u64, (t - i) as u64);
    Ratio::new(num, den)
}

/// Blocks through one point, by the degree of point `p`, versus another
/// point with a different degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeWitness {
    /// The first point.
    pub point: PointId,
    /// Its number of blocks.
    pub blocks: usize,
    /// The first point with a different number of blocks.
    pub other: PointId,
    /// That number.
    pub other_blocks: usize,
}

/// The first violated axiom, with a witness.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Violation {
    /// The block set is empty.
    #[error("axiom A: there are no blocks")]
    NoBlocks,
    /// A block meets a class twice.
    #[error("axiom A: block {block:?} meets class {class} twice")]
    BlockNotTransversal {
        /// The block.
        block: Vec<PointId>,
        /// The class met twice.
        class: u32,
    },
    /// Blocks of different sizes.
    #[error("axiom A: block {block:?} has {size} points, the first block has {expected}")]
    BlockSize {
        /// The block.
        block: Vec<PointId>,
        /// Its size.
        size: usize,
        /// Size of the first block.
        expected: usize,
    },
    /// Classes of different sizes.
    #[error("axiom B: class {class} has size {size}, class {other} has size {other_size}{}", degree_note(.degrees))]
    ClassSizes {
        /// First class.
        class: u32,
        /// Its size.
        size: usize,
        /// First class of a different size.
        other: u32,
        /// That size.
        other_size: usize,
        /// Unequal block degrees, if any.
        degrees: Option<DegreeWitness>,
    },
    /// `t` exceeds the number of classes.
    #[error("axiom D: t = {t} exceeds the number of classes {classes}")]
    TooStrong {
        /// Requested strength.
        t: usize,
        /// Number of classes.
        classes: usize,
    },
    /// Blocks are smaller than `t`.
    #[error("axiom C: blocks have {k} points, fewer than t = {t}")]
    BlocksTooSmall {
        /// Block size.
        k: usize,
        /// Requested strength.
        t: usize,
    },
    /// A transversal `t`-set with a deviating block count.
    #[error("axiom C: {subset:?} lies on {count} blocks, the first transversal {t}-set on {expected}", t = .subset.len())]
    Lambda {
        /// The transversal set.
        subset: Vec<PointId>,
        /// Blocks through it.
        count: u128,
        /// Blocks through the lexicographically first transversal set.
        expected: u128,
    },
    /// A generator does not preserve the point classes.
    #[error("hypothesis (a): generator {generator} maps equivalent points {p} and {q} to inequivalent ones")]
    NotInvariant {
        /// Index of the generator.
        generator: usize,
        /// First point.
        p: PointId,
        /// Second point.
        q: PointId,
    },
    /// The base block is not class-transversal.
    #[error("base block {0:?} is not class-transversal")]
    BaseBlockNotTransversal(Vec<PointId>),
    /// The group is not transitive on transversal `t`-sets.
    #[error("hypothesis (c): the orbit of a transversal t-set has {orbit} members out of {total}")]
    NotTransitive {
        /// Orbit length.
        orbit: u128,
        /// Number of transversal `t`-sets.
        total: u128,
    },
}

fn degree_note(d: &Option<DegreeWitness>) -> alloc::string::String {
    match d {
        Some(w) => format!(
            "; point {} lies on {} blocks, point {} on {}",
            w.point, w.blocks, w.other, w.other_blocks
        ),
        None => alloc::string::String::new(),
    }
}

impl Violation {
    /// The axiom or hypothesis label: `'A'`, `'B'`, `'C'`, `'D'`, or `'a'`,
    /// `'c'` for construction hypotheses.
    pub fn axiom(&self) -> char {
        match self {
            Violation::NoBlocks | Violation::BlockNotTransversal { .. } | Violation::BlockSize { .. } => 'A',
            Violation::ClassSizes { .. } => 'B',
            Violation::TooStrong { .. } => 'D',
            Violation::BlocksTooSmall { .. } | Violation::Lambda { .. } => 'C',
            Violation::NotInvariant { .. } => 'a',
            Violation::BaseBlockNotTransversal(_) | Violation::NotTransitive { .. } => 'c',
        }
    }
}
