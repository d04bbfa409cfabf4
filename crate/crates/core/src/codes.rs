//! Constant-weight codes of divisible designs.
//!
//! Each point class `S` is extended by an ideal point and numbered
//! `0, 1, …, s` with the ideal point as `0`; this numbering is `ψ`. A block
//! `B` gives the word whose `i`-th symbol is the number of the point of `B`
//! in class `i`, or `0` if `B` misses that class.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::designs::Design;
use crate::projline::PointId;
use crate::{Error, Result};

/// Largest length accepted by [`find_code_isomorphism`].
pub const ISO_LENGTH_LIMIT: usize = 6;
/// Largest alphabet accepted by [`find_code_isomorphism`].
pub const ISO_ALPHABET_LIMIT: usize = 8;

/// A code over `{0, …, m−1}` whose words all have weight `k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConstantWeightCode {
    /// Word length (number of point classes).
    pub n: usize,
    /// Alphabet size `s + 1`.
    pub m: usize,
    /// Declared weight (block size).
    pub k: usize,
    /// The words, sorted.
    pub words: Vec<Vec<u32>>,
}

/// The numbering `ψ`: coordinate order of the classes and the symbol of
/// each real point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Psi {
    /// `coordinate[c]` is the position of design class `c` in a word.
    pub coordinate: Vec<usize>,
    /// `symbol[p] ∈ 1..=s` for every point `p`.
    pub symbol: Vec<u32>,
}

impl Psi {
    /// Classes in their stored order (by least point), points numbered by
    /// increasing id.
    pub fn canonical(design: &Design) -> Self {
        let mut symbol = vec![0; design.v()];
        for class in design.classes() {
            for (i, &p) in class.iter().enumerate() {
                symbol[p as usize] = i as u32 + 1;
            }
        }
        Psi {
            coordinate: (0..design.classes().len()).collect(),
            symbol,
        }
    }
}

/// The code of `design` under the canonical `ψ`.
pub fn code_from_design(design: &Design) -> Result<ConstantWeightCode> {
    code_from_design_with(design, &Psi::canonical(design))
}

/// The code of `design` under a given `ψ`.
pub fn code_from_design_with(design: &Design, psi: &Psi) -> Result<ConstantWeightCode> {
    let n = design.classes().len();
    let s = design.classes()[0].len();
    if design.classes().iter().any(|c| c.len() != s) {
        return Err(Error::MalformedDesign("point classes differ in size".into()));
    }
    let k = design.blocks().first().map_or(0, Vec::len);
    let mut words = Vec::with_capacity(design.b());
    for block in design.blocks() {
        if block.len() != k || !design.is_class_transversal(block) {
            return Err(Error::MalformedDesign(
                "blocks must be class-transversal of equal size".into(),
            ));
        }
        let mut w = vec![0u32; n];
        for &p in block {
            w[psi.coordinate[design.class_of(p) as usize]] = psi.symbol[p as usize];
        }
        words.push(w);
    }
    words.sort();
    Ok(ConstantWeightCode { n, m: s + 1, k, words })
}

/// Number of nonzero symbols.
pub fn hamming_weight(word: &[u32]) -> usize {
    word.iter().filter(|&&x| x != 0).count()
}

/// Number of positions where the words differ.
pub fn hamming_distance(a: &[u32], b: &[u32]) -> Result<usize> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch(a.len(), b.len()));
    }
    Ok(a.iter().zip(b).filter(|(x, y)| x != y).count())
}

/// Whether every word has the declared weight and length, symbols are in
/// range and words are distinct.
pub fn verify_constant_weight(code: &ConstantWeightCode) -> bool {
    code.words
        .iter()
        .all(|w| w.len() == code.n && hamming_weight(w) == code.k && w.iter().all(|&x| (x as usize) < code.m))
        && code.words.windows(2).all(|p| p[0] != p[1])
}

/// A map between codes: word `w` goes to `w'` with
/// `w'[j] = symbols[j][w[coordinates[j]]]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeIsomorphism {
    /// Source coordinate feeding each target coordinate.
    pub coordinates: Vec<usize>,
    /// Symbol permutation applied at each target coordinate.
    pub symbols: Vec<Vec<u32>>,
}

impl CodeIsomorphism {
    /// Image of one word.
    pub fn apply(&self, w: &[u32]) -> Vec<u32> {
        self.coordinates
            .iter()
            .zip(&self.symbols)
            .map(|(&c, sigma)| sigma[w[c] as usize])
            .collect()
    }
}

fn column_counts(words: &[Vec<u32>], col: usize, m: usize) -> Vec<usize> {
    let mut c = vec![0; m];
    for w in words {
        c[w[col] as usize] += 1;
    }
    c
}

fn permutations(m: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut p: Vec<u32> = (0..m as u32).collect();
    loop {
        out.push(p.clone());
        let Some(i) = (1..m).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..m).rev().find(|&j| p[j] > p[i - 1]).expect("exists");
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

/// A coordinate permutation with per-coordinate symbol permutations mapping
/// `a` onto `b`, found by backtracking over coordinates with pruning on
/// prefix projections.
pub fn find_code_isomorphism(a: &ConstantWeightCode, b: &ConstantWeightCode) -> Result<Option<CodeIsomorphism>> {
    if a.n > ISO_LENGTH_LIMIT || a.m > ISO_ALPHABET_LIMIT {
        return Err(Error::CapExceeded {
            what: "code for isomorphism search",
            size: a.n.max(a.m) as u128,
            cap: ISO_LENGTH_LIMIT as u128,
        });
    }
    if a.n != b.n || a.m != b.m || a.words.len() != b.words.len() {
        return Ok(None);
    }
    let perms = permutations(a.m);
    let mut coords = Vec::new();
    let mut symbols = Vec::new();
    let mut used = vec![false; a.n];
    if iso_search(a, b, &perms, &mut coords, &mut symbols, &mut used) {
        Ok(Some(CodeIsomorphism {
            coordinates: coords,
            symbols,
        }))
    } else {
        Ok(None)
    }
}

fn prefix_multiset(words: impl Iterator<Item = Vec<u32>>) -> BTreeMap<Vec<u32>, usize> {
    let mut m = BTreeMap::new();
    for w in words {
        *m.entry(w).or_insert(0) += 1;
    }
    m
}

fn iso_search(
    a: &ConstantWeightCode,
    b: &ConstantWeightCode,
    perms: &[Vec<u32>],
    coords: &mut Vec<usize>,
    symbols: &mut Vec<Vec<u32>>,
    used: &mut [bool],
) -> bool {
    let j = coords.len();
    if j == a.n {
        return true;
    }
    let target_counts = column_counts(&b.words, j, b.m);
    let target = prefix_multiset(b.words.iter().map(|w| w[..=j].to_vec()));
    for c in 0..a.n {
        if used[c] {
            continue;
        }
        let counts = column_counts(&a.words, c, a.m);
        for sigma in perms {
            if (0..a.m).any(|x| counts[x] != target_counts[sigma[x] as usize]) {
                continue;
            }
            coords.push(c);
            symbols.push(sigma.clone());
            let image = prefix_multiset(a.words.iter().map(|w| {
                coords
                    .iter()
                    .zip(symbols.iter())
                    .map(|(&cc, s)| s[w[cc] as usize])
                    .collect()
            }));
            if image == target {
                used[c] = true;
                if iso_search(a, b, perms, coords, symbols, used) {
                    return true;
                }
                used[c] = false;
            }
            coords.pop();
            symbols.pop();
        }
    }
    false
}

/// Points of `design` indexed by code coordinate and symbol, for reading a
/// word back as a block.
pub fn decode_word(design: &Design, psi: &Psi, word: &[u32]) -> Vec<PointId> {
    let mut block = Vec::new();
    for p in 0..design.v() as PointId {
        let coord = psi.coordinate[design.class_of(p) as usize];
        if word[coord] != 0 && word[coord] == psi.symbol[p as usize] {
            block.push(p);
        }
    }
    block
}

#[cfg(test)]
mod tests {
    use super::*;

    fn octahedron() -> Design {
        let mut faces = Vec::new();
        for a in [0, 1] {
            for b in [2, 3] {
                for c in [4, 5] {
                    faces.push(vec![a, b, c]);
                }
            }
        }
        Design::new(6, vec![vec![0, 1], vec![2, 3], vec![4, 5]], faces).unwrap()
    }

    #[test]
    fn octahedron_code_is_cube() {
        let code = code_from_design(&octahedron()).unwrap();
        assert_eq!((code.n, code.m, code.k), (3, 3, 3));
        let mut all = Vec::new();
        for a in 1..=2 {
            for b in 1..=2 {
                for c in 1..=2 {
                    all.push(vec![a, b, c]);
                }
            }
        }
        assert_eq!(code.words, all);
        assert!(verify_constant_weight(&code));
    }

    #[test]
    fn distances() {
        assert_eq!(hamming_weight(&[0, 0, 0]), 0);
        assert_eq!(hamming_distance(&[1, 2, 0], &[1, 0, 2]).unwrap(), 2);
        assert_eq!(hamming_distance(&[1, 2], &[1, 2]).unwrap(), 0);
        assert_eq!(hamming_distance(&[1], &[1, 2]), Err(Error::LengthMismatch(1, 2)));
    }

    #[test]
    fn partial_blocks_get_zeros() {
        let d = Design::new(4, vec![vec![0, 1], vec![2, 3]], vec![vec![0], vec![3]]).unwrap();
        let code = code_from_design(&d).unwrap();
        assert_eq!(code.words, vec![vec![0, 2], vec![1, 0]]);
        assert!(verify_constant_weight(&code));
        let psi = Psi::canonical(&d);
        assert_eq!(decode_word(&d, &psi, &[0, 2]), vec![3]);
    }

    #[test]
    fn permuted_psi_is_isomorphic() {
        let d = octahedron();
        let psi = Psi {
            coordinate: vec![2, 0, 1],
            symbol: vec![2, 1, 1, 2, 2, 1],
        };
        let a = code_from_design(&d).unwrap();
        let b = code_from_design_with(&d, &psi).unwrap();
        let iso = find_code_isomorphism(&a, &b).unwrap().unwrap();
        let mut mapped: Vec<Vec<u32>> = a.words.iter().map(|w| iso.apply(w)).collect();
        mapped.sort();
        assert_eq!(mapped, b.words);
    }

    #[test]
    fn permutation_enumeration() {
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(permutations(1), vec![vec![0]]);
    }
}
