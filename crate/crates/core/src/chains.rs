//! Chain geometries `Σ(K,R)`.
//!
//! A subfield `K ⊆ R` gives the standard chain `C₀`, the image of `P(K)` in
//! `P(R)`, and the chains are its `GL₂(R)`-orbit.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::action::{generator_perms, orbit, Perm};
use crate::combin::{binomial, for_each_subset};
use crate::designs::Design;
use crate::projline::{PointId, ProjLine};
use crate::ring::{build_ring, quotient_by_radical, Elem, RingHom, RingSpec, RingTable};
use crate::{Error, Limits, Result};

/// How to find the subfield `K`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldStrategy {
    /// The subring generated by `1`; needs prime characteristic.
    Prime,
    /// The coefficient field of a structured ring (constants `a + 0ε`,
    /// scalar matrices, …).
    Constants,
    /// A multiplicative complement: `{0} ∪ ⟨u⟩` for a unit `u` of order
    /// `|R/rad R| − 1`, closed under addition and mapped onto `R/rad R`.
    /// Needs `R/rad R` to be a field.
    Wedderburn,
    /// An explicit field with the image of its ring generator.
    Witness {
        /// The field `K`.
        field: Arc<RingTable>,
        /// Image in `R` of the least element generating `K` as a ring.
        image: Elem,
    },
}

/// An injective unital homomorphism from a field into a ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubfieldEmbedding {
    /// The field `K`.
    pub field: Arc<RingTable>,
    /// `K → R`.
    pub map: RingHom,
    /// How the embedding was found.
    pub description: String,
}

impl SubfieldEmbedding {
    /// Image of `K` in `R`, ascending.
    pub fn image(&self) -> Vec<Elem> {
        let mut v = self.map.map.clone();
        v.sort_unstable();
        v
    }

    /// `|K|`.
    pub fn order(&self) -> usize {
        self.field.order()
    }
}

fn verified(ring: &RingTable, field: Arc<RingTable>, map: Vec<Elem>, description: String) -> Result<SubfieldEmbedding> {
    if !field.is_field() {
        return Err(Error::Embedding(format!("{description}: the source is not a field")));
    }
    let hom = RingHom { map };
    if !hom.is_homomorphism(&field, ring) || !hom.is_injective() {
        return Err(Error::Embedding(format!(
            "{description}: not an injective unital homomorphism"
        )));
    }
    Ok(SubfieldEmbedding {
        field,
        map: hom,
        description,
    })
}

fn from_subset(ring: &RingTable, elems: &[Elem], description: String) -> Result<SubfieldEmbedding> {
    let (field, inc) = ring
        .subring(elems)
        .ok_or_else(|| Error::Embedding(format!("{description}: not a subring")))?;
    verified(ring, Arc::new(field), inc.map, description)
}

/// Finds `K ⊆ R` by the given strategy and checks the embedding.
pub fn embed_subfield(ring: &RingTable, strategy: &FieldStrategy) -> Result<SubfieldEmbedding> {
    match strategy {
        FieldStrategy::Prime => {
            let sub = ring.generated_subring(&[]);
            from_subset(ring, &sub, format!("prime subring of order {}", sub.len()))
        }
        FieldStrategy::Constants => {
            let sc = ring
                .scalars()
                .ok_or_else(|| Error::Embedding("this ring has no coefficient ring".into()))?;
            verified(
                ring,
                Arc::new((*sc.ring).clone()),
                sc.map.clone(),
                String::from("constants"),
            )
        }
        FieldStrategy::Wedderburn => wedderburn_complement(ring),
        FieldStrategy::Witness { field, image } => {
            let map = extend_from_generator(ring, field, *image)?;
            verified(
                ring,
                field.clone(),
                map,
                format!("witness {} -> {}", field_generator(field).1, ring.label(*image)),
            )
        }
    }
}

/// The least element generating the field as a ring, with its label.
fn field_generator(field: &RingTable) -> (Elem, String) {
    let g = field
        .elements()
        .find(|&g| field.generated_subring(&[g]).len() == field.order())
        .expect("the whole field generates itself");
    (g, String::from(field.label(g)))
}

/// Extends `0 ↦ 0`, `1 ↦ 1`, `g ↦ image` additively and multiplicatively.
fn extend_from_generator(ring: &RingTable, field: &RingTable, image: Elem) -> Result<Vec<Elem>> {
    if image as usize >= ring.order() {
        return Err(Error::Embedding(format!("image index {image} is out of range")));
    }
    let (g, _) = field_generator(field);
    let mut map: BTreeMap<Elem, Elem> = BTreeMap::new();
    map.insert(field.zero(), ring.zero());
    map.insert(field.one(), ring.one());
    if let Some(&prev) = map.get(&g) {
        if prev != image {
            return Err(Error::Embedding("the generator is 0 or 1 but its image is not".into()));
        }
    }
    map.insert(g, image);
    loop {
        let known: Vec<(Elem, Elem)> = map.iter().map(|(&a, &b)| (a, b)).collect();
        let before = map.len();
        for &(a, fa) in &known {
            for &(b, fb) in &known {
                for (x, fx) in [(field.add(a, b), ring.add(fa, fb)), (field.mul(a, b), ring.mul(fa, fb))] {
                    match map.get(&x) {
                        Some(&y) if y != fx => {
                            return Err(Error::Embedding(format!(
                                "the witness is not well defined at {}",
                                field.label(x)
                            )))
                        }
                        Some(_) => {}
                        None => {
                            map.insert(x, fx);
                        }
                    }
                }
            }
        }
        if map.len() == before {
            break;
        }
    }
    Ok(map.into_values().collect())
}

fn multiplicative_order(ring: &RingTable, u: Elem) -> usize {
    let mut x = u;
    let mut k = 1;
    while x != ring.one() {
        x = ring.mul(x, u);
        k += 1;
    }
    k
}

fn wedderburn_complement(ring: &RingTable) -> Result<SubfieldEmbedding> {
    let (bar, pi) = quotient_by_radical(ring);
    if !bar.is_field() {
        return Err(Error::Embedding(format!(
            "R/rad R has order {} and is not a field",
            bar.order()
        )));
    }
    let q = bar.order();
    for &u in ring.units() {
        if multiplicative_order(ring, u) != q - 1 {
            continue;
        }
        let mut set: BTreeSet<Elem> = BTreeSet::new();
        set.insert(ring.zero());
        let mut x = u;
        for _ in 0..q - 1 {
            set.insert(x);
            x = ring.mul(x, u);
        }
        let images: BTreeSet<Elem> = set.iter().map(|&y| pi.apply(y)).collect();
        if images.len() != q {
            continue;
        }
        let closed = set.iter().all(|&a| set.iter().all(|&b| set.contains(&ring.add(a, b))));
        if closed {
            let elems: Vec<Elem> = set.into_iter().collect();
            return from_subset(ring, &elems, format!("complement generated by {}", ring.label(u)));
        }
    }
    Err(Error::Embedding(
        "no multiplicatively generated complement of rad R is a subfield".into(),
    ))
}

/// `{ x : x^q = x }` inside a finite field, as a subfield of order `q`.
pub fn embed_fixed_field(ring: &RingTable, q: usize) -> Result<SubfieldEmbedding> {
    if !ring.is_field() {
        return Err(Error::Embedding("fixed fields are taken inside fields only".into()));
    }
    let elems: Vec<Elem> = ring.elements().filter(|&x| ring.pow(x, q as u64) == x).collect();
    if elems.len() != q {
        return Err(Error::Embedding(format!(
            "GF({}) has no subfield of order {q}",
            ring.order()
        )));
    }
    from_subset(ring, &elems, format!("subfield of order {q}"))
}

/// `[R* : N]` with `N = { n ∈ R* : n⁻¹K*n = K* }`.
pub fn normaliser_index(ring: &RingTable, emb: &SubfieldEmbedding) -> usize {
    let kstar: BTreeSet<Elem> = emb.image().into_iter().filter(|&x| x != ring.zero()).collect();
    let normaliser = ring
        .units()
        .iter()
        .filter(|&&n| {
            let ninv = ring.inv(n).expect("unit");
            kstar.iter().all(|&k| kstar.contains(&ring.mul(ring.mul(ninv, k), n)))
        })
        .count();
    ring.units().len() / normaliser
}

/// `F = ∩_{a ∈ R*} a⁻¹Ka`, ascending.
pub fn field_core(ring: &RingTable, emb: &SubfieldEmbedding) -> Vec<Elem> {
    let k: BTreeSet<Elem> = emb.image().into_iter().collect();
    let mut core: BTreeSet<Elem> = k.clone();
    for &a in ring.units() {
        let ainv = ring.inv(a).expect("unit");
        let conj: BTreeSet<Elem> = k.iter().map(|&x| ring.mul(ring.mul(ainv, x), a)).collect();
        core = core.intersection(&conj).copied().collect();
    }
    core.into_iter().collect()
}

/// Mutually distant triples checked individually before sampling kicks in.
pub const EXHAUSTIVE_TRIPLE_LIMIT: u128 = 20_000;
const SAMPLED_TRIPLES: usize = 200;
const SAMPLE_SEED: u64 = 0xc4a1_5eed;

/// A chain geometry with its chains materialised.
#[derive(Debug, Clone)]
pub struct ChainGeometry {
    line: Arc<ProjLine>,
    embedding: SubfieldEmbedding,
    standard_chain: Vec<PointId>,
    chains: Vec<Vec<PointId>>,
    perms: Vec<Perm>,
    lambda3: usize,
    lambda3_by_normaliser: usize,
    triple_counts: BTreeMap<[PointId; 3], u32>,
}

/// `{ R(1,0) } ∪ { R(k,1) : k ∈ K }`, ascending.
pub fn standard_chain(line: &ProjLine, emb: &SubfieldEmbedding) -> Vec<PointId> {
    let mut c: Vec<PointId> = emb.map.map.iter().map(|&k| line.affine(k)).collect();
    c.push(line.infinity());
    c.sort_unstable();
    c
}

impl ChainGeometry {
    /// Builds the chain orbit and the number `λ₃` of chains through three
    /// mutually distant points, counted through `(∞, 0, 1)`, checked on
    /// other triples and against the normaliser index.
    pub fn build(line: Arc<ProjLine>, embedding: SubfieldEmbedding, limits: &Limits) -> Result<Self> {
        let c0 = standard_chain(&line, &embedding);
        let perms = generator_perms(&line);
        let chains = orbit(core::slice::from_ref(&c0), &perms, limits.block_cap)?;
        let mut triple_counts: BTreeMap<[PointId; 3], u32> = BTreeMap::new();
        for chain in &chains {
            for_each_subset(chain, 3, |t| *triple_counts.entry([t[0], t[1], t[2]]).or_default() += 1);
        }
        let ring = line.ring().clone();
        let mut geo = ChainGeometry {
            lambda3: 0,
            lambda3_by_normaliser: normaliser_index(&ring, &embedding),
            line,
            embedding,
            standard_chain: c0,
            chains,
            perms,
            triple_counts,
        };
        let (a, b, c) = geo.standard_triple();
        geo.lambda3 = geo.chains_through(a, b, c);
        geo.check_lambda3()?;
        if geo.lambda3 != geo.lambda3_by_normaliser {
            return Err(Error::Internal(format!(
                "{} chains through (inf, 0, 1) but the normaliser index is {}",
                geo.lambda3, geo.lambda3_by_normaliser
            )));
        }
        Ok(geo)
    }

    fn standard_triple(&self) -> (PointId, PointId, PointId) {
        let r = self.line.ring();
        (
            self.line.infinity(),
            self.line.affine(r.zero()),
            self.line.affine(r.one()),
        )
    }

    fn chains_through(&self, a: PointId, b: PointId, c: PointId) -> usize {
        let mut key = [a, b, c];
        key.sort_unstable();
        self.triple_counts.get(&key).copied().unwrap_or(0) as usize
    }

    fn distant_triples(&self) -> Vec<[PointId; 3]> {
        let l = &self.line;
        let mut out = Vec::new();
        for p in 0..l.len() as PointId {
            for q in l.neighbourhood(p).into_iter().filter(|&q| q > p) {
                for r in l.neighbourhood(q).into_iter().filter(|&r| r > q && l.distant(p, r)) {
                    out.push([p, q, r]);
                }
            }
        }
        out
    }

    fn check_lambda3(&self) -> Result<()> {
        let v = self.line.len() as u64;
        let bound = binomial(v, 3);
        let triples: Vec<[PointId; 3]> = if bound <= EXHAUSTIVE_TRIPLE_LIMIT {
            self.distant_triples()
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
            let l = &self.line;
            let mut out = Vec::with_capacity(SAMPLED_TRIPLES);
            while out.len() < SAMPLED_TRIPLES {
                let p = rng.random_range(0..l.len() as PointId);
                let nb = l.neighbourhood(p);
                let q = nb[rng.random_range(0..nb.len())];
                let common: Vec<PointId> = l.neighbourhood(q).into_iter().filter(|&r| l.distant(p, r)).collect();
                if common.is_empty() {
                    continue;
                }
                out.push([p, q, common[rng.random_range(0..common.len())]]);
            }
            out
        };
        for [p, q, r] in triples {
            let n = self.chains_through(p, q, r);
            if n != self.lambda3 {
                return Err(Error::Internal(format!(
                    "{n} chains through points {p}, {q}, {r} but {} through (inf, 0, 1)",
                    self.lambda3
                )));
            }
        }
        Ok(())
    }

    /// The underlying line.
    pub fn line(&self) -> &Arc<ProjLine> {
        &self.line
    }

    /// The coordinate ring.
    pub fn ring(&self) -> &Arc<RingTable> {
        self.line.ring()
    }

    /// The embedding of `K`.
    pub fn embedding(&self) -> &SubfieldEmbedding {
        &self.embedding
    }

    /// `C₀`.
    pub fn standard_chain(&self) -> &[PointId] {
        &self.standard_chain
    }

    /// All chains, sorted.
    pub fn chains(&self) -> &[Vec<PointId>] {
        &self.chains
    }

    /// The generator permutations used for the orbit.
    pub fn generators(&self) -> &[Perm] {
        &self.perms
    }

    /// Chains through three mutually distant points, counted directly.
    pub fn lambda3(&self) -> usize {
        self.lambda3
    }

    /// The same number from the normaliser index.
    pub fn lambda3_by_normaliser(&self) -> usize {
        self.lambda3_by_normaliser
    }

    /// Number of chains through the set `{a, b, c}`.
    pub fn chains_through_triple(&self, a: PointId, b: PointId, c: PointId) -> usize {
        self.chains_through(a, b, c)
    }

    /// The chains as blocks of a design whose classes are the parallel
    /// classes.
    pub fn to_design(&self) -> Result<Design> {
        Design::new(
            self.line.len(),
            self.line.parallel_classes().to_vec(),
            self.chains.clone(),
        )
    }
}

/// The intersection of all chains through three mutually distant points.
/// It is checked to be an `F`-chain, `F` the [`field_core`]: for
/// `(∞, 0, 1)` it must equal the embedded `P(F)`, otherwise it must lie in
/// the orbit of that `F`-chain.
pub fn f_chain_intersection(geo: &ChainGeometry, (a, b, c): (PointId, PointId, PointId)) -> Result<Vec<PointId>> {
    let line = geo.line();
    for (x, y) in [(a, b), (a, c), (b, c)] {
        if !line.distant(x, y) {
            return Err(Error::NotMutuallyDistant(a, b, c));
        }
    }
    let mut inter: Option<BTreeSet<PointId>> = None;
    for chain in geo.chains() {
        if [a, b, c].iter().all(|p| chain.binary_search(p).is_ok()) {
            let set: BTreeSet<PointId> = chain.iter().copied().collect();
            inter = Some(match inter {
                None => set,
                Some(i) => i.intersection(&set).copied().collect(),
            });
        }
    }
    let inter: Vec<PointId> = inter
        .ok_or_else(|| Error::Internal("no chain through a mutually distant triple".into()))?
        .into_iter()
        .collect();

    let ring = geo.ring();
    let f = field_core(ring, geo.embedding());
    let mut f_chain: Vec<PointId> = f.iter().map(|&x| line.affine(x)).collect();
    f_chain.push(line.infinity());
    f_chain.sort_unstable();
    let standard = geo.standard_triple();
    let mut sorted = [a, b, c];
    sorted.sort_unstable();
    let mut std_sorted = [standard.0, standard.1, standard.2];
    std_sorted.sort_unstable();
    let ok = if sorted == std_sorted {
        inter == f_chain
    } else {
        orbit(&[f_chain], geo.generators(), usize::MAX)?
            .binary_search(&inter)
            .is_ok()
    };
    if !ok {
        return Err(Error::Internal(format!(
            "the chains through {a}, {b}, {c} meet in {} points, not in an F-chain with |F| = {}",
            inter.len(),
            f.len()
        )));
    }
    Ok(inter)
}

/// `Σ(GF(q), GF(q^h))` as a design with singleton classes, together with
/// its geometry.
pub fn moebius_design(q: u64, h: u32, limits: &Limits) -> Result<(ChainGeometry, Design)> {
    let big = q
        .checked_pow(h)
        .filter(|&n| n as u128 <= limits.ring_cap as u128)
        .ok_or(Error::CapExceeded {
            what: "ring",
            size: (q as u128).saturating_pow(h),
            cap: limits.ring_cap as u128,
        })?;
    let ring = Arc::new(build_ring(&RingSpec::GaloisField(big))?);
    let emb = embed_fixed_field(&ring, q as usize)?;
    let line = Arc::new(ProjLine::build(ring, limits)?);
    let geo = ChainGeometry::build(line, emb, limits)?;
    let design = geo.to_design()?;
    Ok((geo, design))
}
