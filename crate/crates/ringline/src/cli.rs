//! The `ringline` command line.
//!
//! [`run`] does all the work and returns the exit status: 0 on success, 1
//! when a certification fails (the witness goes to standard error), 2 for
//! usage, parse and input errors.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};

use ringline_core::chains::{embed_fixed_field, embed_subfield, ChainGeometry, FieldStrategy, SubfieldEmbedding};
use ringline_core::codes::{code_from_design, verify_constant_weight};
use ringline_core::designs::{dd_isomorphic, max_certified_t, spera_from_geometry, truncated_chain_design, verify_dd};
use ringline_core::projline::{count_points, ProjLine};
use ringline_core::ring::{
    build_ring_with, gl2_order_formula, quotient_by_radical, wedderburn_signature, RingSpec, RingTable,
};
use ringline_core::{Error, Limits};

use crate::formats::code::write_code;
use crate::formats::design::{parse_design, write_design, ChainHeader};
use crate::formats::witness::parse_witness;
use crate::formats::FormatError;
use crate::parse::{parse_ring_spec, ParseError};
use crate::report::*;
use crate::FsTables;

/// Name of the environment variable overriding the ring-order cap.
pub const CAP_VAR: &str = "RINGLINE_CAP";

#[derive(Debug, Parser)]
#[command(
    name = "ringline",
    version,
    about = "Projective lines over finite rings, divisible designs and their codes"
)]
struct Cli {
    /// Print reports as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Ring structure.
    #[command(subcommand)]
    Ring(RingCmd),
    /// Projective lines.
    #[command(subcommand)]
    Line(LineCmd),
    /// Chain geometries.
    #[command(subcommand)]
    Chains(ChainsCmd),
    /// Divisible designs.
    #[command(subcommand)]
    Dd(DdCmd),
    /// Constant-weight codes.
    #[command(subcommand)]
    Code(CodeCmd),
    /// Point counts.
    #[command(subcommand)]
    Count(CountCmd),
}

#[derive(Debug, Subcommand)]
enum RingCmd {
    /// Order, units, radical, locality and the Wedderburn factors.
    Info { spec: String },
}

#[derive(Debug, Subcommand)]
enum LineCmd {
    /// Build P(R).
    Build {
        spec: String,
        /// Write the line as JSON.
        #[arg(long)]
        export: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct GeometryArgs {
    /// The ring R.
    #[arg(long)]
    ring: String,
    /// `prime`, `constants`, `wedderburn`, a witness file, or a field spec.
    #[arg(long)]
    field: String,
}

#[derive(Debug, Subcommand)]
enum ChainsCmd {
    /// Build the chain geometry.
    Build {
        #[command(flatten)]
        geometry: GeometryArgs,
        /// Write the chains as a design file.
        #[arg(long)]
        export: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
enum DdCmd {
    /// Orbit design of a (possibly truncated) standard chain.
    Spera {
        #[command(flatten)]
        geometry: GeometryArgs,
        /// Points removed from the standard chain: ∞, then 0, then 1.
        #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u8).range(0..=3))]
        drop: u8,
        /// Strength to certify.
        #[arg(long)]
        t: usize,
        /// Write the design file.
        #[arg(long)]
        export: Option<PathBuf>,
    },
    /// Certify a design file.
    Verify {
        file: PathBuf,
        /// Strength; defaults to the one in the file header.
        #[arg(long)]
        t: Option<usize>,
    },
    /// Search for an isomorphism between two designs.
    Iso { first: PathBuf, second: PathBuf },
}

#[derive(Debug, Subcommand)]
enum CodeCmd {
    /// Write the constant-weight code of a design.
    Export {
        file: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
enum CountCmd {
    /// Closed form against enumeration.
    Points { spec: String },
}

/// Process context: the working directory and the cap override.
#[derive(Debug, Clone)]
pub struct Env {
    /// Base for relative paths.
    pub cwd: PathBuf,
    /// Value of `RINGLINE_CAP`, if set.
    pub cap: Option<String>,
}

impl Env {
    /// Reads the real process environment.
    pub fn from_process() -> Self {
        Env {
            cwd: std::env::current_dir().unwrap_or_else(|_| PathBuf::from(".")),
            cap: std::env::var(CAP_VAR).ok(),
        }
    }
}

enum Failed {
    Usage(String),
    Certification { axiom: Option<char>, message: String },
}

impl From<Error> for Failed {
    fn from(e: Error) -> Self {
        match e {
            Error::Violation(v) => Failed::Certification {
                axiom: Some(v.axiom()),
                message: v.to_string(),
            },
            Error::Internal(_) | Error::StabiliserNotIntegral { .. } => Failed::Certification {
                axiom: None,
                message: e.to_string(),
            },
            other => Failed::Usage(other.to_string()),
        }
    }
}

impl From<ParseError> for Failed {
    fn from(e: ParseError) -> Self {
        Failed::Usage(format!("ring spec {e}"))
    }
}

struct Ctx {
    env: Env,
    limits: Limits,
}

type Outcome = Result<Box<dyn ReportObj>, Failed>;

/// Object-safe view of [`Report`].
trait ReportObj {
    fn text(&self) -> String;
    fn json(&self) -> String;
}

impl<T: Report> ReportObj for T {
    fn text(&self) -> String {
        Report::text(self)
    }
    fn json(&self) -> String {
        Report::json(self)
    }
}

/// Runs the command line `args` (including the program name) and returns
/// the exit status.
pub fn run<I, S>(args: I, env: Env, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    0
                }
                _ => {
                    let _ = write!(err, "{text}");
                    2
                }
            };
        }
    };
    let outcome = limits(&env).and_then(|limits| execute(&Ctx { env, limits }, cli.command));
    match outcome {
        Ok(report) => {
            let _ = out.write_all(if cli.json { report.json() } else { report.text() }.as_bytes());
            0
        }
        Err(Failed::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            2
        }
        Err(Failed::Certification { axiom, message }) => {
            let failure = Failure {
                axiom: axiom.map(String::from),
                message,
            };
            let _ = err.write_all(Report::text(&failure).as_bytes());
            if cli.json {
                let _ = out.write_all(Report::json(&failure).as_bytes());
            }
            1
        }
    }
}

fn limits(env: &Env) -> Result<Limits, Failed> {
    let mut limits = Limits::default();
    if let Some(v) = &env.cap {
        limits.ring_cap = v
            .trim()
            .parse()
            .ok()
            .filter(|&c: &usize| c > 0)
            .ok_or_else(|| Failed::Usage(format!("{CAP_VAR} must be a positive integer, got `{v}`")))?;
    }
    Ok(limits)
}

fn execute(ctx: &Ctx, command: Command) -> Outcome {
    match command {
        Command::Ring(RingCmd::Info { spec }) => ring_info(ctx, &spec),
        Command::Line(LineCmd::Build { spec, export }) => line_build(ctx, &spec, export.as_deref()),
        Command::Chains(ChainsCmd::Build { geometry, export }) => chains_build(ctx, &geometry, export.as_deref()),
        Command::Dd(DdCmd::Spera {
            geometry,
            drop,
            t,
            export,
        }) => dd_spera(ctx, &geometry, drop as usize, t, export.as_deref()),
        Command::Dd(DdCmd::Verify { file, t }) => dd_verify(ctx, &file, t),
        Command::Dd(DdCmd::Iso { first, second }) => dd_iso(ctx, &first, &second),
        Command::Code(CodeCmd::Export { file, out }) => code_export(ctx, &file, &out),
        Command::Count(CountCmd::Points { spec }) => count(ctx, &spec),
    }
}

impl Ctx {
    fn path(&self, p: &Path) -> PathBuf {
        self.env.cwd.join(p)
    }

    fn read(&self, p: &Path) -> Result<String, Failed> {
        std::fs::read_to_string(self.path(p)).map_err(|e| Failed::Usage(format!("{}: {e}", p.display())))
    }

    fn write(&self, p: &Path, contents: &str) -> Result<String, Failed> {
        std::fs::write(self.path(p), contents).map_err(|e| Failed::Usage(format!("{}: {e}", p.display())))?;
        Ok(p.display().to_string())
    }

    fn ring(&self, text: &str) -> Result<(RingSpec, Arc<RingTable>), Failed> {
        let spec = parse_ring_spec(text)?;
        let ring = build_ring_with(&spec, &self.limits, &FsTables::new(&self.env.cwd))?;
        Ok((spec, Arc::new(ring)))
    }

    fn design(&self, p: &Path) -> Result<crate::formats::design::DesignFile, Failed> {
        let text = self.read(p)?;
        parse_design(&text).map_err(|e: FormatError| Failed::Usage(format!("{}: {e}", p.display())))
    }

    fn embedding(&self, ring: &RingTable, field: &str) -> Result<SubfieldEmbedding, Failed> {
        let named = match field {
            "prime" => Some(FieldStrategy::Prime),
            "constants" => Some(FieldStrategy::Constants),
            "wedderburn" => Some(FieldStrategy::Wedderburn),
            _ => None,
        };
        if let Some(s) = named {
            return Ok(embed_subfield(ring, &s)?);
        }
        if self.path(Path::new(field)).is_file() {
            let text = self.read(Path::new(field))?;
            let w = parse_witness(&text).map_err(|e| Failed::Usage(format!("{field}: {e}")))?;
            if !matches!(w.field, RingSpec::GaloisField(_)) {
                return Err(Failed::Usage(format!("{field}: the witness field must be GF(q)")));
            }
            let k = build_ring_with(&w.field, &self.limits, &FsTables::new(&self.env.cwd))?;
            let image = ring
                .find_label(&w.image)
                .ok_or_else(|| Failed::Usage(format!("{field}: `{}` is not an element of the ring", w.image)))?;
            return Ok(embed_subfield(
                ring,
                &FieldStrategy::Witness {
                    field: Arc::new(k),
                    image,
                },
            )?);
        }
        let q = match parse_ring_spec(field) {
            Ok(RingSpec::GaloisField(q)) => q as usize,
            _ => {
                return Err(Failed::Usage(format!(
                    "--field must be prime, constants, wedderburn, a witness file or GF(q), got `{field}`"
                )))
            }
        };
        if ring.is_field() {
            return Ok(embed_fixed_field(ring, q)?);
        }
        [
            FieldStrategy::Constants,
            FieldStrategy::Wedderburn,
            FieldStrategy::Prime,
        ]
        .iter()
        .filter_map(|s| embed_subfield(ring, s).ok())
        .find(|e| e.order() == q)
        .ok_or_else(|| Failed::Usage(format!("found no subfield GF({q}) of the ring")))
    }

    fn geometry(&self, args: &GeometryArgs) -> Result<(RingSpec, ChainGeometry), Failed> {
        let (spec, ring) = self.ring(&args.ring)?;
        let emb = self.embedding(&ring, &args.field)?;
        let line = Arc::new(ProjLine::build(ring, &self.limits)?);
        Ok((spec, ChainGeometry::build(line, emb, &self.limits)?))
    }
}

fn labels(ring: &RingTable, elems: &[u32]) -> Vec<String> {
    elems.iter().map(|&x| ring.label(x).to_string()).collect()
}

fn ring_info(ctx: &Ctx, text: &str) -> Outcome {
    let (spec, ring) = ctx.ring(text)?;
    let (quotient, _) = quotient_by_radical(&ring);
    let sig = wedderburn_signature(&quotient)?;
    let gl2 =
        gl2_order_formula(ring.radical().len(), &sig).ok_or_else(|| Failed::Usage("|GL2(R)| overflows".into()))?;
    Ok(Box::new(RingInfo {
        spec: spec.to_string(),
        order: ring.order(),
        units: labels(&ring, ring.units()),
        radical: labels(&ring, ring.radical()),
        local: ring.is_local(),
        commutative: ring.is_commutative(),
        field: ring.is_field(),
        characteristic: ring.characteristic(),
        wedderburn: sig.iter().map(|&(m, q)| Factor { m, q }).collect(),
        gl2_order: gl2.to_string(),
        points: count_points(&ring)?.to_string(),
    }))
}

fn line_build(ctx: &Ctx, text: &str, export: Option<&Path>) -> Outcome {
    let (spec, ring) = ctx.ring(text)?;
    let line = ProjLine::build(ring, &ctx.limits)?;
    let export = match export {
        Some(p) => {
            let data = serde_json::to_string(&LineExport::new(&spec.to_string(), &line)).expect("serialisable") + "\n";
            Some(ctx.write(p, &data)?)
        }
        None => None,
    };
    Ok(Box::new(LineInfo {
        spec: spec.to_string(),
        points: line.len(),
        classes: line.parallel_classes().len(),
        class_size: line.parallel_classes()[0].len(),
        distant_degree: line.distant_degree(line.infinity()),
        nondistant_is_equivalence: line.nondistant_is_equivalence(),
        export,
    }))
}

fn field_spec(emb: &SubfieldEmbedding) -> String {
    RingSpec::GaloisField(emb.order() as u64).to_string()
}

fn chains_build(ctx: &Ctx, args: &GeometryArgs, export: Option<&Path>) -> Outcome {
    let (spec, geo) = ctx.geometry(args)?;
    let emb = geo.embedding();
    let export = match export {
        Some(p) => {
            let header = ChainHeader {
                field: field_spec(emb),
                ring: spec.to_string(),
            };
            Some(ctx.write(p, &write_design(&geo.to_design()?, 3, Some(&header)))?)
        }
        None => None,
    };
    Ok(Box::new(ChainsInfo {
        ring: spec.to_string(),
        field: field_spec(emb),
        embedding: emb.description.clone(),
        points: geo.line().len(),
        chain_size: geo.standard_chain().len(),
        chains: geo.chains().len(),
        lambda3: geo.lambda3(),
        lambda3_normaliser: geo.lambda3_by_normaliser(),
        export,
    }))
}

fn dd_spera(ctx: &Ctx, args: &GeometryArgs, drop: usize, t: usize, export: Option<&Path>) -> Outcome {
    if drop > 0 && t != 3 {
        return Err(Failed::Usage("truncated chains are certified at t = 3".into()));
    }
    let (_, geo) = ctx.geometry(args)?;
    let out = if drop == 0 {
        spera_from_geometry(&geo, geo.standard_chain(), t, &ctx.limits)?
    } else {
        truncated_chain_design(&geo, drop, &ctx.limits)?
    };
    let export = match export {
        Some(p) => Some(ctx.write(p, &write_design(&out.design, t, None))?),
        None => None,
    };
    Ok(Box::new(SperaReport {
        params: (&out.params).into(),
        lambda_direct: out.lambda_direct.to_string(),
        lambda_via_stabiliser: out.lambda_via_stabiliser.map(|r| r.to_string()),
        lambda_via_block_count: out.lambda_via_block_count.to_string(),
        stabiliser_order: out.stabiliser_order.map(|o| o.to_string()),
        export,
    }))
}

fn dd_verify(ctx: &Ctx, file: &Path, t: Option<usize>) -> Outcome {
    let f = ctx.design(file)?;
    let params = verify_dd(&f.design, t.unwrap_or(f.t))?;
    let max_t = max_certified_t(&f.design)?.map_or(0, |p| p.t);
    Ok(Box::new(VerifyReport {
        params: (&params).into(),
        max_t,
    }))
}

fn dd_iso(ctx: &Ctx, first: &Path, second: &Path) -> Outcome {
    let a = ctx.design(first)?;
    let b = ctx.design(second)?;
    let map = dd_isomorphic(&a.design, &b.design)?;
    Ok(Box::new(IsoReport {
        isomorphic: map.is_some(),
        map,
    }))
}

fn code_export(ctx: &Ctx, file: &Path, out: &Path) -> Outcome {
    let f = ctx.design(file)?;
    let code = code_from_design(&f.design)?;
    if !verify_constant_weight(&code) {
        return Err(Error::Internal("a code word has the wrong weight".into()).into());
    }
    let out = ctx.write(out, &write_code(&code))?;
    Ok(Box::new(CodeReport {
        n: code.n,
        m: code.m,
        k: code.k,
        words: code.words.len(),
        out,
    }))
}

fn count(ctx: &Ctx, text: &str) -> Outcome {
    let (spec, ring) = ctx.ring(text)?;
    let formula = count_points(&ring)?;
    let enumerated = ProjLine::build(ring, &ctx.limits)?.len() as u128;
    if formula != enumerated {
        return Err(Error::Internal(format!("closed form gives {formula} points, enumeration {enumerated}")).into());
    }
    Ok(Box::new(CountReport {
        spec: spec.to_string(),
        formula: formula.to_string(),
        enumerated: enumerated.to_string(),
    }))
}
