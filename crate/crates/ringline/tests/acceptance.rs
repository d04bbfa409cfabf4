//! The acceptance suite: twelve criteria, one PASS/FAIL line each. Runs as
//! a plain binary so the lines show up in `cargo test` output.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::sync::{Arc, Mutex};

use num_rational::Ratio;

use ringline::cli::{run, Env};
use ringline::formats::design::parse_design;
use ringline_core::action::{enumerate_gl2, generators_span_gl2, gl2_order};
use ringline_core::chains::{embed_subfield, moebius_design, normaliser_index, ChainGeometry, FieldStrategy};
use ringline_core::codes::{code_from_design, code_from_design_with, find_code_isomorphism, hamming_weight, Psi};
use ringline_core::combin::binomial;
use ringline_core::designs::{
    dd_isomorphic, derive_lambda_i, spera_construct, spera_from_geometry, truncated_chain_design, verify_dd, Design,
    Params, SperaInput, SperaOutput, TransitivityCheck, Violation,
};
use ringline_core::projline::{build_line, count_points, is_admissible, ProjLine};
use ringline_core::ring::{build_ring, point_count_formula, RingSpec, RingTable};
use ringline_core::{Error, Limits};

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

/// Certified designs met along the way, for criterion 10.
static CERTIFIED: Mutex<Vec<(String, Design, Params)>> = Mutex::new(Vec::new());

fn record(name: &str, design: &Design, params: &Params) {
    CERTIFIED
        .lock()
        .unwrap()
        .push((name.to_string(), design.clone(), params.clone()));
}

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn fixture(name: &str) -> Design {
    let text = std::fs::read_to_string(root().join("fixtures").join(name)).unwrap();
    parse_design(&text).unwrap().design
}

fn gf(q: u64) -> Box<RingSpec> {
    Box::new(RingSpec::GaloisField(q))
}

fn ring(spec: &RingSpec) -> Arc<RingTable> {
    Arc::new(build_ring(spec).unwrap())
}

fn geometry(spec: &RingSpec, strategy: FieldStrategy) -> ChainGeometry {
    let r = ring(spec);
    let emb = embed_subfield(&r, &strategy).unwrap();
    ChainGeometry::build(Arc::new(build_line(r).unwrap()), emb, &Limits::default()).unwrap()
}

fn spera(geo: &ChainGeometry, t: usize) -> SperaOutput {
    spera_from_geometry(geo, geo.standard_chain(), t, &Limits::default()).unwrap()
}

fn summary(p: &Params) -> String {
    format!("{p} v={} b={}", p.v, p.b)
}

fn zoo() -> Vec<RingSpec> {
    vec![
        RingSpec::GaloisField(2),
        RingSpec::GaloisField(5),
        RingSpec::Zmod(4),
        RingSpec::Zmod(6),
        RingSpec::Zmod(8),
        RingSpec::DualNumbers { base: gf(2), h: 2 },
        RingSpec::TwistedDual {
            base: gf(4),
            h: 2,
            frobenius_power: 1,
        },
        RingSpec::MatrixRing { m: 2, base: gf(2) },
        RingSpec::Product(vec![RingSpec::GaloisField(2), RingSpec::GaloisField(3)]),
        RingSpec::Exterior { base: gf(2), n: 2 },
    ]
}

fn z6_line() -> Check {
    let r = ring(&RingSpec::Zmod(6));
    let line = build_line(r.clone()).unwrap();
    ensure!(line.len() == 12, "|P(Z6)| = {}", line.len());
    let mut admissible = 0;
    for a in r.elements() {
        for b in r.elements() {
            admissible += is_admissible(&r, (a, b)).unwrap() as usize;
        }
    }
    ensure!(
        admissible == 24 && line.admissible_pairs() == 24,
        "admissible pairs: {admissible}"
    );
    ensure!(r.radical() == [r.zero()], "radical has {} elements", r.radical().len());
    let (p, q, s) = line.nondistant_witness().ok_or("non-distance looks transitive")?;
    ensure!(
        !line.distant(p, q) && !line.distant(q, s) && line.distant(p, s) && p != s,
        "bad witness ({p},{q},{s})"
    );
    Ok(())
}

fn laguerre_octahedron() -> Check {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("laguerre.dd");
    let env = Env { cwd: root(), cap: None };
    let args = [
        "ringline",
        "dd",
        "spera",
        "--ring",
        "dual(GF(2), h=2)",
        "--field",
        "constants",
        "--t",
        "3",
        "--export",
    ];
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(
        args.iter().copied().chain([path.to_str().unwrap()]),
        env,
        &mut out,
        &mut err,
    );
    ensure!(code == 0, "dd spera exited {code}: {}", String::from_utf8_lossy(&err));
    let first = String::from_utf8(out).unwrap();
    ensure!(
        first.starts_with("3-(2,3,1) v=6 b=8 transversal=yes"),
        "dd spera printed {first:?}"
    );
    let d = parse_design(&std::fs::read_to_string(&path).unwrap()).unwrap().design;
    let p = verify_dd(&d, 3).map_err(|e| e.to_string())?;
    ensure!(
        p.to_string() == "3-(2,3,1)" && p.v == 6 && p.b == 8 && p.transversal,
        "{}",
        summary(&p)
    );
    record("Laguerre GF(2)[e]", &d, &p);
    let octa = fixture("octahedron.dd");
    let f = dd_isomorphic(&d, &octa)
        .unwrap()
        .ok_or("not isomorphic to the octahedron")?;
    let mapped: BTreeSet<Vec<u32>> = d
        .blocks()
        .iter()
        .map(|b| {
            let mut i: Vec<u32> = b.iter().map(|&x| f[x as usize]).collect();
            i.sort();
            i
        })
        .collect();
    ensure!(
        mapped.into_iter().collect::<Vec<_>>() == octa.blocks(),
        "returned map is not an isomorphism"
    );
    Ok(())
}

fn twisted_dual() -> Check {
    let spec = RingSpec::TwistedDual {
        base: gf(4),
        h: 2,
        frobenius_power: 1,
    };
    let geo = geometry(&spec, FieldStrategy::Wedderburn);
    let out = spera(&geo, 3);
    let p = &out.params;
    ensure!(
        p.to_string() == "3-(4,5,4)" && p.v == 20 && p.b == 256 && p.transversal,
        "{}",
        summary(p)
    );
    record("twisted dual t=3", &out.design, p);
    let idx = normaliser_index(geo.ring(), geo.embedding());
    ensure!(idx == 4, "normaliser index {idx}");
    let p4 = verify_dd(&out.design, 4).map_err(|e| e.to_string())?;
    ensure!(p4.to_string() == "4-(4,5,1)", "as a 4-design: {p4}");
    record("twisted dual t=4", &out.design, &p4);
    Ok(())
}

fn local_algebra_family() -> Check {
    for (q, h) in [(2u64, 2u32), (3, 2), (2, 3), (4, 2), (5, 2)] {
        let geo = geometry(&RingSpec::DualNumbers { base: gf(q), h }, FieldStrategy::Constants);
        let out = spera(&geo, 3);
        let p = &out.params;
        let (s, v) = (q.pow(h - 1) as usize, (q.pow(h) + q.pow(h - 1)) as usize);
        ensure!(
            p.s == s && p.k == q as usize + 1 && p.lambda_t == 1 && p.v == v,
            "GF({q})[T]/(T^{h}): {}",
            summary(p)
        );
        for i in 0..=3 {
            let formula = derive_lambda_i(p.v, p.s, p.k, 3, 1, i);
            ensure!(formula.is_integer(), "lambda_{i} = {formula} for q={q}, h={h}");
            let direct = if i == 0 {
                p.b
            } else {
                verify_dd(&out.design, i).unwrap().lambda_t
            };
            ensure!(
                formula.to_integer() == direct,
                "lambda_{i}: formula {formula}, recount {direct}"
            );
        }
        record(&format!("GF({q})[T]/(T^{h})"), &out.design, p);
    }
    Ok(())
}

fn truncated_chains() -> Check {
    let five = geometry(&RingSpec::DualNumbers { base: gf(5), h: 2 }, FieldStrategy::Constants);
    let seven = geometry(&RingSpec::DualNumbers { base: gf(7), h: 2 }, FieldStrategy::Constants);
    for (geo, drop, k, lambda) in [(&five, 1, 5, 3u128), (&five, 2, 4, 3), (&seven, 3, 5, 10)] {
        let out = truncated_chain_design(geo, drop, &Limits::default()).map_err(|e| e.to_string())?;
        let p = verify_dd(&out.design, 3).map_err(|e| e.to_string())?;
        ensure!(p == out.params, "certificates differ");
        ensure!(
            p.k == k && p.lambda_t == lambda,
            "q={} drop {drop}: {p}",
            geo.embedding().order()
        );
        record(
            &format!("GF({})[e] drop {drop}", geo.embedding().order()),
            &out.design,
            &p,
        );
    }
    let p = &truncated_chain_design(&five, 1, &Limits::default()).unwrap().params;
    ensure!(p.to_string() == "3-(5,5,3)", "GF(5)[e] drop 1: {p}");
    Ok(())
}

fn moebius() -> Check {
    let (_, d) = moebius_design(2, 2, &Limits::default()).map_err(|e| e.to_string())?;
    let p = verify_dd(&d, 3).map_err(|e| e.to_string())?;
    let b_formula = Ratio::new(p.lambda_t * binomial(p.v as u64, 3), binomial(p.k as u64, 3));
    ensure!(p.to_string() == "3-(1,3,1)" && p.v == 5, "{}", summary(&p));
    ensure!(
        d.b() == 10 && b_formula == Ratio::from_integer(10),
        "b: direct {}, formula {b_formula}",
        d.b()
    );
    record("Moebius GF(2) in GF(4)", &d, &p);
    let (_, d) = moebius_design(3, 2, &Limits::default()).map_err(|e| e.to_string())?;
    let p = verify_dd(&d, 3).map_err(|e| e.to_string())?;
    ensure!(p.v == 10 && p.k == 4 && p.lambda_t == 1, "{}", summary(&p));
    record("Moebius GF(3) in GF(9)", &d, &p);
    Ok(())
}

/// Two-dimensional subspaces of `GF(2)^4`, as sets of spanned vectors.
fn planes_in_gf2_4() -> usize {
    let mut planes = BTreeSet::new();
    for a in 1u8..16 {
        for b in 1u8..16 {
            if a != b {
                planes.insert(BTreeSet::from([0, a, b, a ^ b]));
            }
        }
    }
    planes.len()
}

fn counting() -> Check {
    let m2 = ring(&RingSpec::MatrixRing { m: 2, base: gf(2) });
    let n = count_points(&m2).unwrap();
    let formula = point_count_formula(1, &[(2, 2)]).unwrap();
    let oracle = planes_in_gf2_4() as u128;
    let built = build_line(m2).unwrap().len() as u128;
    ensure!(
        n == 35 && formula == 35 && oracle == 35 && built == 35,
        "count {n}, formula {formula}, subspaces {oracle}, line {built}"
    );
    let prod = ring(&RingSpec::Product(vec![
        RingSpec::GaloisField(2),
        RingSpec::GaloisField(3),
    ]));
    let factors = count_points(&ring(&RingSpec::GaloisField(2))).unwrap()
        * count_points(&ring(&RingSpec::GaloisField(3))).unwrap();
    let n = count_points(&prod).unwrap();
    let built = build_line(prod).unwrap().len() as u128;
    ensure!(
        factors == 12 && n == 12 && built == 12,
        "factors {factors}, count {n}, line {built}"
    );
    Ok(())
}

fn group_orders() -> Check {
    let gf2 = ring(&RingSpec::GaloisField(2));
    ensure!(
        gl2_order(&gf2).unwrap() == 6 && enumerate_gl2(&gf2).unwrap().len() == 6,
        "|GL2(GF(2))|"
    );
    for spec in zoo() {
        let r = ring(&spec);
        if r.order() <= 16 {
            let (f, e) = (gl2_order(&r).unwrap(), enumerate_gl2(&r).unwrap().len() as u128);
            ensure!(f == e, "{spec}: formula {f}, enumeration {e}");
            ensure!(generators_span_gl2(&r).unwrap(), "{spec}: generators miss part of GL2");
        }
    }
    for spec in [
        RingSpec::DualNumbers { base: gf(2), h: 2 },
        RingSpec::DualNumbers { base: gf(3), h: 2 },
        RingSpec::DualNumbers { base: gf(2), h: 3 },
        RingSpec::TwistedDual {
            base: gf(4),
            h: 2,
            frobenius_power: 1,
        },
        RingSpec::DualNumbers { base: gf(5), h: 2 },
    ] {
        let strategy = if matches!(spec, RingSpec::TwistedDual { .. }) {
            FieldStrategy::Wedderburn
        } else {
            FieldStrategy::Constants
        };
        let geo = geometry(&spec, strategy);
        let out = spera(&geo, 3);
        let g = gl2_order(geo.ring()).unwrap();
        let stab = out.stabiliser_order.ok_or(format!("{spec}: no stabiliser order"))?;
        ensure!(
            g.is_multiple_of(stab) && g / stab == out.params.b,
            "{spec}: |G| = {g}, |G_B0| = {stab}, b = {}",
            out.params.b
        );
        ensure!(
            out.lambda_via_stabiliser.is_some_and(|l| l.is_integer()),
            "{spec}: stabiliser formula not integral"
        );
    }
    Ok(())
}

fn local_characterisation() -> Check {
    for spec in zoo() {
        let r = ring(&spec);
        let line = ProjLine::build(r.clone(), &Limits::default()).unwrap();
        ensure!(
            line.nondistant_is_equivalence() == r.is_local(),
            "{spec}: equivalence vs locality"
        );
        for c in line.parallel_classes() {
            ensure!(c.len() == r.radical().len(), "{spec}: class of size {}", c.len());
        }
        let n = line.len() as u32;
        let mut coincide = true;
        for p in 0..n {
            for q in 0..n {
                ensure!(
                    line.parallel(p, q) == line.parallel_by_definition(p, q),
                    "{spec}: parallelism tests disagree"
                );
                coincide &= line.parallel(p, q) == !line.distant(p, q);
            }
        }
        ensure!(coincide == r.is_local(), "{spec}: parallel = non-distant is {coincide}");
    }
    Ok(())
}

fn parameter_identities() -> Check {
    let certified = CERTIFIED.lock().unwrap().clone();
    ensure!(certified.len() >= 10, "only {} designs recorded", certified.len());
    for (name, d, p) in &certified {
        let (v, k, s) = (p.v as u128, p.k as u128, p.s as u128);
        ensure!(p.b * k == p.r * v, "{name}: bk = {}, rv = {}", p.b * k, p.r * v);
        ensure!(
            p.r * (k - 1) == p.lambdas[2] * (v - s),
            "{name}: r(k-1) != lambda2(v-s)"
        );
        for i in 1..p.t {
            let q = verify_dd(d, i).map_err(|e| format!("{name} at t={i}: {e}"))?;
            let closed = p.lambda_i(i);
            ensure!(
                closed == Ratio::from_integer(q.lambda_t),
                "{name}: lambda_{i} closed form {closed}, certified {}",
                q.lambda_t
            );
        }
    }
    Ok(())
}

fn counterexample() -> Check {
    let input = SperaInput {
        v: 3,
        classes: vec![vec![0], vec![1, 2]],
        generators: vec![vec![0, 2, 1]],
        group_order: Some(2),
        stabiliser_order: None,
        base_block: vec![0, 1],
        t: 2,
        transitivity: TransitivityCheck::Orbit,
        block_cap: 16,
    };
    match spera_construct(&input) {
        Err(Error::Violation(Violation::ClassSizes { degrees: Some(_), .. })) => {}
        other => return Err(format!("spera_construct gave {other:?}")),
    }
    match verify_dd(&fixture("counterexample.dd"), 2) {
        Err(Error::Violation(Violation::ClassSizes { degrees: Some(w), .. })) => {
            ensure!(
                (w.point, w.blocks, w.other, w.other_blocks) == (0, 2, 1, 1),
                "witness {w:?}"
            );
        }
        other => return Err(format!("verify_dd gave {other:?}")),
    }
    Ok(())
}

fn codes() -> Check {
    let octa = fixture("octahedron.dd");
    let code = code_from_design(&octa).unwrap();
    let mut cube = Vec::new();
    for a in 1..=2 {
        for b in 1..=2 {
            for c in 1..=2 {
                cube.push(vec![a, b, c]);
            }
        }
    }
    ensure!(code.words == cube, "words {:?}", code.words);
    ensure!(code.words.iter().all(|w| hamming_weight(w) == 3), "weights");
    let mut psi = Psi::canonical(&octa);
    psi.coordinate = vec![2, 0, 1];
    psi.symbol.swap(2, 3);
    let other = code_from_design_with(&octa, &psi).unwrap();
    let iso = find_code_isomorphism(&code, &other)
        .unwrap()
        .ok_or("no isomorphism found")?;
    let mut mapped: Vec<Vec<u32>> = code.words.iter().map(|w| iso.apply(w)).collect();
    mapped.sort();
    ensure!(mapped == other.words, "search returned a non-isomorphism");
    // a non-trivial ψ on a code that is not symmetric under all relabellings
    let half = fixture("octahedron-half.dd");
    let a = code_from_design(&half).unwrap();
    let b = code_from_design_with(&half, &psi).unwrap();
    let iso = find_code_isomorphism(&a, &b)
        .unwrap()
        .ok_or("no isomorphism for the half octahedron")?;
    let mut mapped: Vec<Vec<u32>> = a.words.iter().map(|w| iso.apply(w)).collect();
    mapped.sort();
    ensure!(mapped == b.words, "half octahedron: search returned a non-isomorphism");
    Ok(())
}

fn main() {
    let criteria: [Criterion; 12] = [
        (
            "Z6 line: 12 points, 24 admissible pairs, zero radical, non-distance not transitive",
            z6_line,
        ),
        (
            "Laguerre q=2 h=2: dd spera gives 3-(2,3,1), v=6, b=8, isomorphic to the octahedron",
            laguerre_octahedron,
        ),
        (
            "twisted dual numbers: 3-(4,5,4), v=20, b=256, normaliser index 4, also 4-(4,5,1)",
            twisted_dual,
        ),
        (
            "local algebras GF(q)[T]/(T^h): 3-(q^(h-1),q+1,1), lambda_i integral and recounted",
            local_algebra_family,
        ),
        (
            "truncated chains: 3-(5,5,3), lambda3 = 3 for drop 2, lambda3 = 10 over GF(7)",
            truncated_chains,
        ),
        (
            "Moebius designs: 3-(1,3,1) with v=5, b=10; v=10, k=4, lambda3=1",
            moebius,
        ),
        (
            "point counts: M2(GF(2)) has 35 points, GF(2)xGF(3) has 3*4 = 12",
            counting,
        ),
        (
            "group orders: |GL2(GF(2))| = 6, formula = enumeration, generators span, stabilisers divide",
            group_orders,
        ),
        (
            "local rings: equivalence iff local, class size |rad R|, parallel = non-distant iff local",
            local_characterisation,
        ),
        (
            "parameter identities and re-certification at lower strengths",
            parameter_identities,
        ),
        (
            "unequal class sizes rejected with degree witness (2 blocks vs 1)",
            counterexample,
        ),
        (
            "octahedron code is {1,2}^3, other numberings give isomorphic codes",
            codes,
        ),
    ];
    let start = std::time::Instant::now();
    let mut failed = 0;
    for (i, (name, check)) in criteria.into_iter().enumerate() {
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match result {
            Ok(()) => println!("PASS {:>2}  {name}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2}  {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} of 12 passed in {:.1?}", 12 - failed, start.elapsed());
    if failed > 0 {
        std::process::exit(1);
    }
}
