//! Machine-readable reports. Field order is fixed by the struct definitions
//! and all collections are sorted, so equal inputs give byte-identical JSON.
//! Counts that may exceed `u64` are serialised as decimal strings.

use std::fmt::Write;

use serde::Serialize;

use ringline_core::designs::Params;
use ringline_core::projline::ProjLine;
use ringline_core::ring::RingTable;

/// Reports know how to print themselves as text.
pub trait Report: Serialize {
    /// Human-readable form, one fact per line.
    fn text(&self) -> String;

    /// Pretty JSON followed by a newline.
    fn json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialise");
        s.push('\n');
        s
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn set(items: &[String]) -> String {
    format!("{{{}}}", items.join(","))
}

/// One `M_m(GF(q))` factor.
#[derive(Debug, Clone, Serialize)]
pub struct Factor {
    /// Matrix size.
    pub m: u32,
    /// Field order.
    pub q: u64,
}

/// `ring info`.
#[derive(Debug, Clone, Serialize)]
pub struct RingInfo {
    /// Canonical spec string.
    pub spec: String,
    /// `|R|`.
    pub order: usize,
    /// Unit labels.
    pub units: Vec<String>,
    /// Labels of the Jacobson radical.
    pub radical: Vec<String>,
    /// Whether `R` is local.
    pub local: bool,
    /// Whether `R` is commutative.
    pub commutative: bool,
    /// Whether `R` is a field.
    pub field: bool,
    /// Additive order of `1`.
    pub characteristic: usize,
    /// Factors of `R/rad R`.
    pub wedderburn: Vec<Factor>,
    /// `|GL₂(R)|`.
    pub gl2_order: String,
    /// `|P(R)|`.
    pub points: String,
}

impl Report for RingInfo {
    fn text(&self) -> String {
        let mut s = String::new();
        writeln!(
            s,
            "order={} units={} local={} |P(R)|={}",
            self.order,
            set(&self.units),
            yes_no(self.local),
            self.points
        )
        .unwrap();
        writeln!(s, "radical={}", set(&self.radical)).unwrap();
        writeln!(
            s,
            "commutative={} field={} characteristic={}",
            yes_no(self.commutative),
            yes_no(self.field),
            self.characteristic
        )
        .unwrap();
        let factors: Vec<String> = self
            .wedderburn
            .iter()
            .map(|f| format!("M{}(GF({}))", f.m, f.q))
            .collect();
        writeln!(s, "R/rad R = {}", factors.join(" x ")).unwrap();
        writeln!(s, "|GL2(R)|={}", self.gl2_order).unwrap();
        s
    }
}

/// `line build`.
#[derive(Debug, Clone, Serialize)]
pub struct LineInfo {
    /// Canonical spec string.
    pub spec: String,
    /// `|P(R)|`.
    pub points: usize,
    /// Number of parallel classes.
    pub classes: usize,
    /// Size of every parallel class.
    pub class_size: usize,
    /// Points distant from any given point.
    pub distant_degree: usize,
    /// Whether "not distant" is an equivalence relation.
    pub nondistant_is_equivalence: bool,
    /// Where the line was exported to.
    pub export: Option<String>,
}

impl Report for LineInfo {
    fn text(&self) -> String {
        let mut s = format!(
            "points={} class_size={} distant_degree={}\nclasses={} nondistant_equivalence={}\n",
            self.points,
            self.class_size,
            self.distant_degree,
            self.classes,
            yes_no(self.nondistant_is_equivalence)
        );
        if let Some(p) = &self.export {
            writeln!(s, "exported {p}").unwrap();
        }
        s
    }
}

/// JSON export of a projective line.
#[derive(Debug, Clone, Serialize)]
pub struct LineExport {
    /// Canonical spec string.
    pub ring: String,
    /// Representative pair of each point, by element labels.
    pub points: Vec<[String; 2]>,
    /// Distant pairs `p < q`, sorted.
    pub distant: Vec<[u32; 2]>,
    /// Parallel classes, each sorted, ordered by least member.
    pub parallel_classes: Vec<Vec<u32>>,
}

impl LineExport {
    /// Collects the export data.
    pub fn new(spec: &str, line: &ProjLine) -> Self {
        let ring: &RingTable = line.ring();
        let n = line.len() as u32;
        let points = (0..n)
            .map(|p| {
                let (a, b) = line.rep(p);
                [ring.label(a).to_string(), ring.label(b).to_string()]
            })
            .collect();
        let mut distant = Vec::new();
        for p in 0..n {
            for q in p + 1..n {
                if line.distant(p, q) {
                    distant.push([p, q]);
                }
            }
        }
        LineExport {
            ring: spec.to_string(),
            points,
            distant,
            parallel_classes: line.parallel_classes().to_vec(),
        }
    }
}

/// `chains build`.
#[derive(Debug, Clone, Serialize)]
pub struct ChainsInfo {
    /// Canonical spec of `R`.
    pub ring: String,
    /// Spec of `K`.
    pub field: String,
    /// How `K` was embedded.
    pub embedding: String,
    /// `|P(R)|`.
    pub points: usize,
    /// Points per chain.
    pub chain_size: usize,
    /// Number of chains.
    pub chains: usize,
    /// Chains through three mutually distant points, counted.
    pub lambda3: usize,
    /// The same as the normaliser index.
    pub lambda3_normaliser: usize,
    /// Where the geometry was exported to.
    pub export: Option<String>,
}

impl Report for ChainsInfo {
    fn text(&self) -> String {
        let mut s = format!(
            "points={} chains={} chain_size={}\nlambda3={} normaliser_index={}\nK={} ({})\n",
            self.points,
            self.chains,
            self.chain_size,
            self.lambda3,
            self.lambda3_normaliser,
            self.field,
            self.embedding
        );
        if let Some(p) = &self.export {
            writeln!(s, "exported {p}").unwrap();
        }
        s
    }
}

/// Certified design parameters.
#[derive(Debug, Clone, Serialize)]
pub struct ParamsReport {
    /// `t-(s,k,λ_t)`.
    pub summary: String,
    /// Strength.
    pub t: usize,
    /// Class size.
    pub s: usize,
    /// Block size.
    pub k: usize,
    /// `λ_t`.
    pub lambda_t: String,
    /// Points.
    pub v: usize,
    /// Blocks.
    pub b: String,
    /// Blocks per point.
    pub r: String,
    /// `λ₀ … λ_t`.
    pub lambdas: Vec<String>,
    /// Whether blocks meet every class.
    pub transversal: bool,
}

impl From<&Params> for ParamsReport {
    fn from(p: &Params) -> Self {
        ParamsReport {
            summary: p.to_string(),
            t: p.t,
            s: p.s,
            k: p.k,
            lambda_t: p.lambda_t.to_string(),
            v: p.v,
            b: p.b.to_string(),
            r: p.r.to_string(),
            lambdas: p.lambdas.iter().map(u128::to_string).collect(),
            transversal: p.transversal,
        }
    }
}

impl ParamsReport {
    fn lines(&self) -> String {
        format!(
            "{} v={} b={} transversal={}\nr={} lambdas={}\n",
            self.summary,
            self.v,
            self.b,
            yes_no(self.transversal),
            self.r,
            self.lambdas.join(",")
        )
    }
}

/// `dd spera`.
#[derive(Debug, Clone, Serialize)]
pub struct SperaReport {
    /// The certified parameters.
    pub params: ParamsReport,
    /// `λ_t` through the first transversal `t`-set.
    pub lambda_direct: String,
    /// `λ_t` from `|G|` and `|G_{B₀}|`, when available.
    pub lambda_via_stabiliser: Option<String>,
    /// `λ_t` from the block count.
    pub lambda_via_block_count: String,
    /// `|G_{B₀}|`, when available.
    pub stabiliser_order: Option<String>,
    /// Where the design was exported to.
    pub export: Option<String>,
}

impl Report for SperaReport {
    fn text(&self) -> String {
        let mut s = self.params.lines();
        writeln!(
            s,
            "lambda_t: direct={} block_count={} stabiliser={}",
            self.lambda_direct,
            self.lambda_via_block_count,
            self.lambda_via_stabiliser.as_deref().unwrap_or("n/a")
        )
        .unwrap();
        if let Some(o) = &self.stabiliser_order {
            writeln!(s, "|G_B0|={o}").unwrap();
        }
        if let Some(p) = &self.export {
            writeln!(s, "exported {p}").unwrap();
        }
        s
    }
}

/// `dd verify` on success.
#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    /// Parameters at the requested strength.
    pub params: ParamsReport,
    /// Largest strength that certifies.
    pub max_t: usize,
}

impl Report for VerifyReport {
    fn text(&self) -> String {
        let mut s = format!("{} OK\n", self.params.summary);
        s.push_str(&self.params.lines());
        writeln!(s, "max_t={}", self.max_t).unwrap();
        s
    }
}

/// A certification failure.
#[derive(Debug, Clone, Serialize)]
pub struct Failure {
    /// The violated axiom or hypothesis, if it is one.
    pub axiom: Option<String>,
    /// The witness.
    pub message: String,
}

impl Report for Failure {
    fn text(&self) -> String {
        format!("FAIL {}\n", self.message)
    }
}

/// `dd iso`.
#[derive(Debug, Clone, Serialize)]
pub struct IsoReport {
    /// Whether an isomorphism exists.
    pub isomorphic: bool,
    /// `map[p]` is the image of point `p`.
    pub map: Option<Vec<u32>>,
}

impl Report for IsoReport {
    fn text(&self) -> String {
        match &self.map {
            Some(m) => {
                let m: Vec<String> = m.iter().map(u32::to_string).collect();
                format!("isomorphic map={}\n", m.join(","))
            }
            None => "not isomorphic\n".to_string(),
        }
    }
}

/// `code export`.
#[derive(Debug, Clone, Serialize)]
pub struct CodeReport {
    /// Word length.
    pub n: usize,
    /// Alphabet size.
    pub m: usize,
    /// Weight.
    pub k: usize,
    /// Number of words.
    pub words: usize,
    /// Output file.
    pub out: String,
}

impl Report for CodeReport {
    fn text(&self) -> String {
        format!(
            "cwc n={} m={} k={} words={}\nwritten {}\n",
            self.n, self.m, self.k, self.words, self.out
        )
    }
}

/// `count points`.
#[derive(Debug, Clone, Serialize)]
pub struct CountReport {
    /// Canonical spec string.
    pub spec: String,
    /// `|P(R)|` from the closed form.
    pub formula: String,
    /// `|P(R)|` by building the line.
    pub enumerated: String,
}

impl Report for CountReport {
    fn text(&self) -> String {
        format!("formula={} enumerated={}\n", self.formula, self.enumerated)
    }
}
