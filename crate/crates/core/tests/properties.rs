use std::sync::Arc;

use proptest::prelude::*;

use ringline_core::codes::{code_from_design, code_from_design_with, find_code_isomorphism, hamming_weight, Psi};
use ringline_core::combin::{binomial, for_each_subset, prime_power};
use ringline_core::designs::{dd_isomorphic, verify_dd, Design};
use ringline_core::projline::{build_line, count_points};
use ringline_core::ring::{build_ring, RingSpec};

fn euler_phi(n: u64) -> usize {
    (1..=n).filter(|&k| num_gcd(k, n) == 1).count()
}

fn num_gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        num_gcd(b, a % b)
    }
}

fn octahedron() -> Design {
    let mut blocks = Vec::new();
    for a in 0..2 {
        for b in 2..4 {
            for c in 4..6 {
                blocks.push(vec![a, b, c]);
            }
        }
    }
    Design::new(6, vec![vec![0, 1], vec![2, 3], vec![4, 5]], blocks).unwrap()
}

fn relabel(d: &Design, perm: &[u32]) -> Design {
    let map = |s: &Vec<u32>| s.iter().map(|&p| perm[p as usize]).collect::<Vec<_>>();
    Design::new(
        d.v(),
        d.classes().iter().map(map).collect(),
        d.blocks().iter().map(map).collect(),
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn residue_rings(n in 2u64..40) {
        let r = Arc::new(build_ring(&RingSpec::Zmod(n)).unwrap());
        prop_assert_eq!(r.units().len(), euler_phi(n));
        prop_assert_eq!(r.is_local(), prime_power(n).is_some());
        let squarefree_kernel: u64 = (2..=n).filter(|&p| n % p == 0 && prime_power(p).is_some_and(|(_, e)| e == 1)).product();
        prop_assert_eq!(r.radical().len() as u64, n / squarefree_kernel);
        let line = build_line(r.clone()).unwrap();
        prop_assert_eq!(count_points(&r).unwrap(), line.len() as u128);
        prop_assert_eq!(line.nondistant_is_equivalence(), r.is_local());
        for class in line.parallel_classes() {
            prop_assert_eq!(class.len(), r.radical().len());
        }
    }

    #[test]
    fn truncated_polynomial_rings(p in prop::sample::select(vec![2u64, 3, 5]), h in 2u32..4) {
        let spec = RingSpec::DualNumbers { base: Box::new(RingSpec::GaloisField(p)), h };
        prop_assume!(p.pow(h) <= 125);
        let r = Arc::new(build_ring(&spec).unwrap());
        prop_assert!(r.is_local());
        prop_assert_eq!(r.radical().len() as u64, p.pow(h - 1));
        prop_assert_eq!(count_points(&r).unwrap(), (p.pow(h) + p.pow(h - 1)) as u128);
    }

    #[test]
    fn subsets_are_counted_by_binomials(n in 0usize..10, k in 0usize..10) {
        let items: Vec<usize> = (0..n).collect();
        let mut count = 0u128;
        let mut last: Option<Vec<usize>> = None;
        for_each_subset(&items, k, |s| {
            if let Some(prev) = &last {
                assert!(prev.as_slice() < s);
            }
            last = Some(s.to_vec());
            count += 1;
        });
        prop_assert_eq!(count, binomial(n as u64, k as u64));
        if k >= 1 && n >= 1 {
            prop_assert_eq!(binomial(n as u64, k as u64), binomial(n as u64 - 1, k as u64 - 1) + binomial(n as u64 - 1, k as u64));
        }
    }

    #[test]
    fn relabelled_octahedron(perm in Just((0u32..6).collect::<Vec<_>>()).prop_shuffle()) {
        let d = octahedron();
        let e = relabel(&d, &perm);
        let pd = verify_dd(&d, 3).unwrap();
        let pe = verify_dd(&e, 3).unwrap();
        prop_assert_eq!(&pd, &pe);
        prop_assert_eq!(pe.b * pe.k as u128, pe.r * pe.v as u128);
        prop_assert_eq!(pe.r * (pe.k as u128 - 1), pe.lambdas[2] * (pe.v - pe.s) as u128);
        let f = dd_isomorphic(&d, &e).unwrap().expect("isomorphic");
        let image = relabel(&d, &f);
        prop_assert_eq!(image.blocks(), e.blocks());
        let code = code_from_design(&e).unwrap();
        prop_assert!(code.words.iter().all(|w| hamming_weight(w) == 3));
    }

    #[test]
    fn codes_under_other_numberings(coords in Just(vec![0usize, 1, 2]).prop_shuffle(), swaps in prop::collection::vec(any::<bool>(), 3)) {
        let d = octahedron();
        let mut psi = Psi::canonical(&d);
        psi.coordinate = coords;
        for (c, class) in d.classes().iter().enumerate() {
            if swaps[c] {
                psi.symbol.swap(class[0] as usize, class[1] as usize);
            }
        }
        let a = code_from_design(&d).unwrap();
        let b = code_from_design_with(&d, &psi).unwrap();
        let iso = find_code_isomorphism(&a, &b).unwrap().expect("related codes");
        let mut mapped: Vec<Vec<u32>> = a.words.iter().map(|w| iso.apply(w)).collect();
        mapped.sort();
        prop_assert_eq!(mapped, b.words);
    }
}
