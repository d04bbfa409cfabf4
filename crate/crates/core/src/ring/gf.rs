//! Galois fields as `GF(p)[t]/(f)`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::Elem;

/// Remainder of `a` modulo the monic polynomial `m` over `GF(p)`;
/// coefficients are stored lowest degree first.
fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = r.pop().unwrap();
        if lead != 0 {
            let shift = r.len() - dm;
            for (i, &c) in m[..dm].iter().enumerate() {
                let t = &mut r[shift + i];
                *t = (*t + p - lead * c % p) % p;
            }
        }
    }
    r
}

fn is_zero(a: &[u64]) -> bool {
    a.iter().all(|&c| c == 0)
}

/// Monic polynomial of degree `n` whose lower coefficients are the base-`p`
/// digits of `code`.
fn monic_from_code(p: u64, n: u32, mut code: u64) -> Vec<u64> {
    let mut f = Vec::with_capacity(n as usize + 1);
    for _ in 0..n {
        f.push(code % p);
        code /= p;
    }
    f.push(1);
    f
}

/// The monic irreducible polynomial of degree `n` over `GF(p)` whose lower
/// coefficients `c₀, …, c_{n−1}` minimise `Σ cᵢ pⁱ`.
///
/// Irreducibility is decided by trial division by every monic polynomial of
/// degree `1..=n/2`.
pub fn least_irreducible(p: u64, n: u32) -> Vec<u64> {
    assert!(n >= 1, "degree must be positive");
    let count = p.pow(n);
    (0..count)
        .map(|code| monic_from_code(p, n, code))
        .find(|f| (1..=n / 2).all(|d| (0..p.pow(d)).all(|c| !is_zero(&poly_rem(f, &monic_from_code(p, d, c), p)))))
        .expect("irreducible polynomials exist in every degree")
}

fn digits(mut x: u64, p: u64, n: u32) -> Vec<u64> {
    (0..n)
        .map(|_| {
            let d = x % p;
            x /= p;
            d
        })
        .collect()
}

fn undigits(d: &[u64], p: u64) -> u64 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn poly_label(d: &[u64]) -> String {
    let mut terms = Vec::new();
    for (i, &c) in d.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let coeff = if c == 1 && i > 0 { String::new() } else { format!("{c}") };
        terms.push(match i {
            0 => coeff,
            1 => format!("{coeff}t"),
            _ => format!("{coeff}t^{i}"),
        });
    }
    if terms.is_empty() {
        return String::from("0");
    }
    terms.join("+")
}

/// Labels, addition and multiplication tables of `GF(p^n)`.
pub(super) fn tables(p: u64, n: u32) -> (Vec<String>, Vec<Elem>, Vec<Elem>) {
    let q = p.pow(n) as usize;
    let f = least_irreducible(p, n);
    let polys: Vec<Vec<u64>> = (0..q as u64).map(|x| digits(x, p, n)).collect();
    let labels = polys.iter().map(|d| poly_label(d)).collect();
    let mut add = vec![0; q * q];
    let mut mul = vec![0; q * q];
    for a in 0..q {
        for b in 0..q {
            let s: Vec<u64> = polys[a].iter().zip(&polys[b]).map(|(x, y)| (x + y) % p).collect();
            add[a * q + b] = undigits(&s, p) as Elem;
            let mut prod = vec![0u64; 2 * n as usize - 1];
            for (i, &x) in polys[a].iter().enumerate() {
                for (j, &y) in polys[b].iter().enumerate() {
                    prod[i + j] = (prod[i + j] + x * y) % p;
                }
            }
            let r = poly_rem(&prod, &f, p);
            let mut r = r;
            r.resize(n as usize, 0);
            mul[a * q + b] = undigits(&r, p) as Elem;
        }
    }
    (labels, add, mul)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn least_irreducibles() {
        assert_eq!(least_irreducible(2, 1), vec![0, 1]);
        assert_eq!(least_irreducible(2, 2), vec![1, 1, 1]);
        assert_eq!(least_irreducible(2, 3), vec![1, 1, 0, 1]);
        assert_eq!(least_irreducible(3, 2), vec![1, 0, 1]);
        assert_eq!(least_irreducible(2, 4), vec![1, 1, 0, 0, 1]);
    }

    #[test]
    fn gf4_labels_and_products() {
        let (labels, _, mul) = tables(2, 2);
        assert_eq!(labels, ["0", "1", "t", "t+1"]);
        // t·t = t+1, t·(t+1) = 1
        assert_eq!(mul[2 * 4 + 2], 3);
        assert_eq!(mul[2 * 4 + 3], 1);
    }

    #[test]
    fn prime_field_is_residues() {
        let (labels, add, mul) = tables(5, 1);
        assert_eq!(labels[3], "3");
        assert_eq!(add[3 * 5 + 4], 2);
        assert_eq!(mul[3 * 5 + 4], 2);
    }
}
