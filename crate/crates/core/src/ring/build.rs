use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::validate::{check_axioms, validate_ring_tables, RawTables};
use super::{gf, Elem, RingSpec, RingTable, Scalars};
use crate::combin::prime_power;
use crate::{Error, Limits, Result};

/// Supplies the raw tables behind `table(path)` specs.
pub trait TableSource {
    /// Reads the tables stored at `path`.
    fn load(&self, path: &str) -> core::result::Result<RawTables, String>;
}

/// A [`TableSource`] that refuses every path.
#[derive(Debug, Clone, Copy, Default)]
pub struct NoTables;

impl TableSource for NoTables {
    fn load(&self, _path: &str) -> core::result::Result<RawTables, String> {
        Err(String::from("table rings are not available here"))
    }
}

/// Builds a ring with default limits; `table(..)` specs are rejected.
pub fn build_ring(spec: &RingSpec) -> Result<RingTable> {
    build_ring_with(spec, &Limits::default(), &NoTables)
}

/// Builds a ring, reading table rings through `tables`.
pub fn build_ring_with(spec: &RingSpec, limits: &Limits, tables: &dyn TableSource) -> Result<RingTable> {
    spec.validate()?;
    if let Some(order) = spec.predicted_order() {
        if order > limits.ring_cap as u128 {
            return Err(Error::CapExceeded {
                what: "ring",
                size: order,
                cap: limits.ring_cap as u128,
            });
        }
    }
    let ring = build(spec, limits, tables)?;
    if ring.order() > limits.ring_cap {
        return Err(Error::CapExceeded {
            what: "ring",
            size: ring.order() as u128,
            cap: limits.ring_cap as u128,
        });
    }
    Ok(ring)
}

fn build(spec: &RingSpec, limits: &Limits, tables: &dyn TableSource) -> Result<RingTable> {
    match spec {
        RingSpec::Zmod(m) => Ok(zmod(*m as u32)),
        RingSpec::GaloisField(q) => {
            let (p, e) = prime_power(*q).expect("validated");
            let (labels, add, mul) = gf::tables(p, e);
            Ok(RingTable::from_trusted(labels, add, mul, 0, 1))
        }
        RingSpec::DualNumbers { base, h } => {
            let base = build(base, limits, tables)?;
            finish(dual(&base, *h as usize, None))
        }
        RingSpec::TwistedDual {
            base,
            h,
            frobenius_power,
        } => {
            let base = build(base, limits, tables)?;
            let p = base.characteristic() as u64;
            let (_, e) = prime_power(base.order() as u64).expect("validated");
            let sigma: Vec<Elem> = base
                .elements()
                .map(|x| (0..*frobenius_power % e).fold(x, |y, _| base.pow(y, p)))
                .collect();
            finish(dual(&base, *h as usize, Some(&sigma)))
        }
        RingSpec::MatrixRing { m, base } => {
            let base = build(base, limits, tables)?;
            finish(matrices(&base, *m as usize))
        }
        RingSpec::Product(fs) => {
            let rings = fs
                .iter()
                .map(|f| build(f, limits, tables))
                .collect::<Result<Vec<_>>>()?;
            finish(product(&rings))
        }
        RingSpec::Table(path) => {
            let raw = tables.load(path).map_err(|reason| Error::TableSource {
                path: path.clone(),
                reason,
            })?;
            if raw.labels.len() > limits.ring_cap {
                return Err(Error::CapExceeded {
                    what: "ring",
                    size: raw.labels.len() as u128,
                    cap: limits.ring_cap as u128,
                });
            }
            Ok(validate_ring_tables(&raw)?)
        }
        RingSpec::Exterior { base, n } => {
            let base = build(base, limits, tables)?;
            finish(exterior(&base, *n as usize))
        }
    }
}

struct Built {
    labels: Vec<String>,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    scalars: Option<Scalars>,
}

fn finish(b: Built) -> Result<RingTable> {
    let n = b.labels.len();
    let (zero, one) = check_axioms(n, &b.add, &b.mul)?;
    Ok(RingTable::from_trusted(b.labels, b.add, b.mul, zero, one).with_scalars(b.scalars))
}

fn zmod(m: u32) -> RingTable {
    let n = m as usize;
    let labels = (0..m).map(|i| i.to_string()).collect();
    let mut add = Vec::with_capacity(n * n);
    let mut mul = Vec::with_capacity(n * n);
    for a in 0..m as u64 {
        for b in 0..m as u64 {
            add.push(((a + b) % m as u64) as Elem);
            mul.push(((a * b) % m as u64) as Elem);
        }
    }
    RingTable::from_trusted(labels, add, mul, 0, 1)
}

/// Elements encoded as coefficient tuples, first coordinate most significant.
struct Tuples<'a> {
    comps: Vec<&'a RingTable>,
    digits: Vec<Vec<Elem>>,
}

impl<'a> Tuples<'a> {
    fn new(comps: Vec<&'a RingTable>) -> Self {
        let total: usize = comps.iter().map(|r| r.order()).product();
        let mut digits = Vec::with_capacity(total);
        for mut x in 0..total {
            let mut d = alloc::vec![0; comps.len()];
            for (i, r) in comps.iter().enumerate().rev() {
                d[i] = (x % r.order()) as Elem;
                x /= r.order();
            }
            digits.push(d);
        }
        Tuples { comps, digits }
    }

    fn encode(&self, d: &[Elem]) -> Elem {
        let mut x = 0usize;
        for (r, &c) in self.comps.iter().zip(d) {
            x = x * r.order() + c as usize;
        }
        x as Elem
    }

    fn tables(&self, mul: impl Fn(&[Elem], &[Elem]) -> Vec<Elem>) -> (Vec<Elem>, Vec<Elem>) {
        let n = self.digits.len();
        let mut add_t = Vec::with_capacity(n * n);
        let mut mul_t = Vec::with_capacity(n * n);
        let mut buf = alloc::vec![0; self.comps.len()];
        for a in &self.digits {
            for b in &self.digits {
                for (i, r) in self.comps.iter().enumerate() {
                    buf[i] = r.add(a[i], b[i]);
                }
                add_t.push(self.encode(&buf));
                mul_t.push(self.encode(&mul(a, b)));
            }
        }
        (add_t, mul_t)
    }
}

fn wrap(label: &str) -> String {
    if label.contains(['+', '-']) {
        format!("({label})")
    } else {
        label.to_string()
    }
}

/// `c₀ + c₁·m₁ + …` with zero terms omitted and unit coefficients elided.
fn linear_label(base: &RingTable, coeffs: &[Elem], monomials: &[String]) -> String {
    let mut terms = Vec::new();
    for (c, mono) in coeffs.iter().zip(monomials) {
        if *c == base.zero() {
            continue;
        }
        let l = base.label(*c);
        terms.push(if mono.is_empty() {
            l.to_string()
        } else if *c == base.one() {
            mono.clone()
        } else {
            format!("{}{mono}", wrap(l))
        });
    }
    if terms.is_empty() {
        base.label(base.zero()).to_string()
    } else {
        terms.join("+")
    }
}

fn scalars_of(base: &RingTable, tuples: &Tuples<'_>, slot: usize) -> Scalars {
    let map = base
        .elements()
        .map(|a| {
            let mut d: Vec<Elem> = tuples.comps.iter().map(|r| r.zero()).collect();
            d[slot] = a;
            tuples.encode(&d)
        })
        .collect();
    Scalars {
        ring: Box::new(base.clone()),
        map,
    }
}

fn dual(base: &RingTable, h: usize, sigma: Option<&[Elem]>) -> Built {
    let t = Tuples::new(alloc::vec![base; h]);
    // powers of σ applied to every element
    let mut sig_pow: Vec<Vec<Elem>> = Vec::with_capacity(h);
    sig_pow.push(base.elements().collect());
    for i in 1..h {
        let prev = &sig_pow[i - 1];
        let next = match sigma {
            Some(s) => prev.iter().map(|&x| s[x as usize]).collect(),
            None => prev.clone(),
        };
        sig_pow.push(next);
    }
    let (add, mul) = t.tables(|a, b| {
        let mut c = alloc::vec![base.zero(); h];
        for i in 0..h {
            for j in 0..h - i {
                let term = base.mul(a[i], sig_pow[i][b[j] as usize]);
                c[i + j] = base.add(c[i + j], term);
            }
        }
        c
    });
    let monos: Vec<String> = (0..h)
        .map(|i| match i {
            0 => String::new(),
            1 => String::from("e"),
            _ => format!("e^{i}"),
        })
        .collect();
    let labels = t.digits.iter().map(|d| linear_label(base, d, &monos)).collect();
    let scalars = scalars_of(base, &t, 0);
    Built {
        labels,
        add,
        mul,
        scalars: Some(scalars),
    }
}

fn matrices(base: &RingTable, m: usize) -> Built {
    let t = Tuples::new(alloc::vec![base; m * m]);
    let (add, mul) = t.tables(|a, b| {
        let mut c = alloc::vec![base.zero(); m * m];
        for i in 0..m {
            for j in 0..m {
                let mut s = base.zero();
                for k in 0..m {
                    s = base.add(s, base.mul(a[i * m + k], b[k * m + j]));
                }
                c[i * m + j] = s;
            }
        }
        c
    });
    let labels = t
        .digits
        .iter()
        .map(|d| {
            let rows: Vec<String> = d
                .chunks(m)
                .map(|row| row.iter().map(|&x| base.label(x)).collect::<Vec<_>>().join(","))
                .collect();
            format!("[{}]", rows.join(";"))
        })
        .collect();
    let scalar_map = base
        .elements()
        .map(|a| {
            let mut d = alloc::vec![base.zero(); m * m];
            for i in 0..m {
                d[i * m + i] = a;
            }
            t.encode(&d)
        })
        .collect();
    Built {
        labels,
        add,
        mul,
        scalars: Some(Scalars {
            ring: Box::new(base.clone()),
            map: scalar_map,
        }),
    }
}

fn product(rings: &[RingTable]) -> Built {
    let t = Tuples::new(rings.iter().collect());
    let (add, mul) = t.tables(|a, b| rings.iter().enumerate().map(|(i, r)| r.mul(a[i], b[i])).collect());
    let labels = t
        .digits
        .iter()
        .map(|d| {
            let parts: Vec<&str> = rings.iter().zip(d).map(|(r, &x)| r.label(x)).collect();
            format!("({})", parts.join(","))
        })
        .collect();
    Built {
        labels,
        add,
        mul,
        scalars: None,
    }
}

fn exterior(base: &RingTable, n: usize) -> Built {
    let dim = 1usize << n;
    let t = Tuples::new(alloc::vec![base; dim]);
    let (add, mul) = t.tables(|a, b| {
        let mut c = alloc::vec![base.zero(); dim];
        for s in 0..dim {
            if a[s] == base.zero() {
                continue;
            }
            for u in 0..dim {
                if s & u != 0 || b[u] == base.zero() {
                    continue;
                }
                let mut term = base.mul(a[s], b[u]);
                if wedge_inversions(s, u) % 2 == 1 {
                    term = base.neg(term);
                }
                c[s | u] = base.add(c[s | u], term);
            }
        }
        c
    });
    let monos: Vec<String> = (0..dim)
        .map(|mask| {
            (0..n)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| format!("b{}", i + 1))
                .collect()
        })
        .collect();
    let labels = t.digits.iter().map(|d| linear_label(base, d, &monos)).collect();
    let scalars = scalars_of(base, &t, 0);
    Built {
        labels,
        add,
        mul,
        scalars: Some(scalars),
    }
}

/// Number of pairs `i ∈ s`, `j ∈ u` with `i > j`: the transpositions needed
/// to sort `b_s ∧ b_u`.
fn wedge_inversions(s: usize, u: usize) -> u32 {
    let mut count = 0;
    let mut rest = s;
    while rest != 0 {
        let i = rest.trailing_zeros();
        rest &= rest - 1;
        count += (u & ((1usize << i) - 1)).count_ones();
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn gf(q: u64) -> Box<RingSpec> {
        Box::new(RingSpec::GaloisField(q))
    }

    #[test]
    fn z6_units() {
        let r = build_ring(&RingSpec::Zmod(6)).unwrap();
        assert_eq!(r.order(), 6);
        assert_eq!(r.units(), &[1, 5]);
        assert_eq!(r.radical(), &[0]);
        assert!(!r.is_local());
    }

    #[test]
    fn twisted_dual_gf4() {
        let spec = RingSpec::TwistedDual {
            base: gf(4),
            h: 2,
            frobenius_power: 1,
        };
        let r = build_ring(&spec).unwrap();
        assert_eq!(r.order(), 16);
        assert_eq!(r.units().len(), 12);
        assert_eq!(r.radical().len(), 4);
        assert!(r.is_local());
        assert!(!r.is_commutative());
        assert_eq!(r.label(r.one()), "1");
    }

    #[test]
    fn dual_number_labels() {
        let r = build_ring(&RingSpec::DualNumbers { base: gf(4), h: 2 }).unwrap();
        assert_eq!(r.label(0), "0");
        assert_eq!(r.label(1), "e");
        assert_eq!(r.label(3), "(t+1)e");
        assert_eq!(r.label(7), "1+(t+1)e");
        assert!(r.is_commutative());
    }

    #[test]
    fn matrix_ring_gf2() {
        let r = build_ring(&RingSpec::MatrixRing { m: 2, base: gf(2) }).unwrap();
        assert_eq!(r.order(), 16);
        assert_eq!(r.units().len(), 6);
        assert_eq!(r.radical(), &[0]);
        assert_eq!(r.label(r.one()), "[1,0;0,1]");
    }

    #[test]
    fn exterior_gf2_rank2() {
        let r = build_ring(&RingSpec::Exterior { base: gf(2), n: 2 }).unwrap();
        assert_eq!(r.order(), 16);
        assert!(r.is_local());
        assert_eq!(r.radical().len(), 8);
    }

    #[test]
    fn exterior_signs_over_z3() {
        let r = build_ring(&RingSpec::Exterior {
            base: Box::new(RingSpec::Zmod(3)),
            n: 2,
        })
        .unwrap();
        let b1 = r.find_label("b1").unwrap();
        let b2 = r.find_label("b2").unwrap();
        assert_eq!(r.label(r.mul(b1, b2)), "b1b2");
        assert_eq!(r.label(r.mul(b2, b1)), "2b1b2");
        assert_eq!(r.mul(b1, b1), r.zero());
    }

    #[test]
    fn wedge_inversion_counts() {
        assert_eq!(wedge_inversions(0b01, 0b10), 0);
        assert_eq!(wedge_inversions(0b10, 0b01), 1);
        assert_eq!(wedge_inversions(0b110, 0b001), 2);
    }

    #[test]
    fn product_units_multiply() {
        let r = build_ring(&RingSpec::Product(vec![
            RingSpec::GaloisField(2),
            RingSpec::GaloisField(3),
        ]))
        .unwrap();
        assert_eq!(r.units().len(), 2);
        assert_eq!(r.label(r.one()), "(1,1)");
    }

    #[test]
    fn cap_is_enforced() {
        let limits = Limits {
            ring_cap: 10,
            ..Limits::default()
        };
        let err = build_ring_with(&RingSpec::Zmod(11), &limits, &NoTables).unwrap_err();
        assert!(matches!(err, Error::CapExceeded { size: 11, cap: 10, .. }));
    }

    #[test]
    fn tables_need_a_source() {
        let err = build_ring(&RingSpec::Table("z4.ring".into())).unwrap_err();
        assert!(matches!(err, Error::TableSource { .. }));
    }
}
