//! Exhaustive desk-scale verification against the full-algebra oracle, plus
//! the isomorphism-class invariants.

mod common;

use common::full_algebra_associative;
use ranra::enumerate::{all_structures, associative_catalog, canonicalize, census, relabel};
use ranra::{
    flexible_atoms, is_associative, parse_structure, witness_condition, CompositionTable,
    CycleStructure,
};
use std::collections::HashMap;

fn s1() -> CycleStructure {
    parse_structure("n 3\n0 0 0\n0 0 1\n0 0 2\n0 1 1\n0 1 2\n0 2 2\n1 2 2\n2 2 2\n").unwrap()
}

fn s2() -> CycleStructure {
    parse_structure("n 3\n0 1 1\n0 2 2\n1 2 2\n").unwrap()
}

#[test]
fn checker_matches_full_algebra_oracle_exhaustively() {
    for n in [2usize, 3] {
        let mut associative = 0u64;
        for s in all_structures(n).unwrap() {
            let report = is_associative(&s);
            let oracle = full_algebra_associative(&s);
            assert_eq!(
                report.associative, oracle,
                "n = {n}: atom-level checker disagrees with the 2^{} element oracle on {s:?}",
                n + 1
            );
            if oracle {
                associative += 1;
            }
        }
        // Frozen from this oracle's first run; changes mean a semantic drift.
        let expect = if n == 2 { 12 } else { 294 };
        assert_eq!(associative, expect);
    }
}

#[test]
fn witness_relationships_exhaustive_n3() {
    for n in [1usize, 2, 3] {
        for s in all_structures(n).unwrap() {
            let report = is_associative(&s);
            // Diversity-only witnesses imply the identity-extended variant.
            assert!(
                !report.paper_condition_holds || report.extended_condition_holds,
                "pool monotonicity violated on {s:?}"
            );
            // The condition with diversity witnesses is sufficient.
            assert!(
                !report.paper_condition_holds || report.associative,
                "diversity-only condition held on a non-associative structure {s:?}"
            );
            // The identity-extended condition matches associativity exactly.
            assert_eq!(
                report.extended_condition_holds, report.associative,
                "identity-extended condition diverges from associativity on {s:?}"
            );
            assert_eq!(report.paper_condition_holds, witness_condition(&s, false));
            assert_eq!(report.extended_condition_holds, witness_condition(&s, true));
        }
    }
}

#[test]
fn peircean_and_identity_invariants_exhaustive_n3() {
    for s in all_structures(3).unwrap() {
        let t = CompositionTable::build(&s);
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(t.entry(a, b).contains(t.identity()), a == b);
                for c in 0..3 {
                    let m = t.entry(a, b).contains(c);
                    assert_eq!(m, t.entry(a, c).contains(b));
                    assert_eq!(m, t.entry(b, c).contains(a));
                }
            }
        }
    }
}

#[test]
fn canonical_classes_partition_the_space() {
    for n in [2usize, 3] {
        let total = 1u64 << CycleStructure::empty(n).unwrap().total_cycles();
        let mut orbit_of: HashMap<u64, u64> = HashMap::new();
        for s in all_structures(n).unwrap() {
            let canonical = canonicalize(&s).unwrap().canonical_bits().bits_u64();
            *orbit_of.entry(canonical).or_insert(0) += 1;
        }
        assert_eq!(orbit_of.values().sum::<u64>(), total);
        // Orbit sizes divide n! and every member maps to the same canonical
        // form, so each group size must equal the orbit size computed from
        // distinct permutation images of its representative.
        for (&canonical, &count) in &orbit_of {
            let rep = CycleStructure::from_bits_u64(n, canonical).unwrap();
            let mut images = std::collections::HashSet::new();
            permutations(n, &mut |perm| {
                images.insert(relabel(&rep, perm).bits_u64());
            });
            assert_eq!(images.len() as u64, count, "orbit size mismatch at {rep:?}");
        }
    }
}

fn permutations(n: usize, f: &mut dyn FnMut(&[usize])) {
    fn go(k: usize, perm: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if k == perm.len() {
            f(perm);
            return;
        }
        for i in k..perm.len() {
            perm.swap(k, i);
            go(k + 1, perm, f);
            perm.swap(k, i);
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    go(0, &mut perm, f);
}

#[test]
fn isomorphism_invariants_agree_within_classes_n3() {
    type ClassKey = (bool, usize, (u64, u64, u64));
    let mut class_data: HashMap<u64, ClassKey> = HashMap::new();
    for s in all_structures(3).unwrap() {
        let canonical = canonicalize(&s).unwrap().canonical_bits().bits_u64();
        let assoc = is_associative(&s).associative;
        let flexible = flexible_atoms(&s).count;
        let mut census_by_type = (0u64, 0u64, 0u64);
        for (_, c) in s.iter_mandatory() {
            match c.distinct_atoms() {
                1 => census_by_type.0 += 1,
                2 => census_by_type.1 += 1,
                _ => census_by_type.2 += 1,
            }
        }
        let entry = class_data
            .entry(canonical)
            .or_insert((assoc, flexible, census_by_type));
        assert_eq!(*entry, (assoc, flexible, census_by_type), "class {canonical:#x}");
    }
}

#[test]
fn census_n3_catalog() {
    let c = census(3).unwrap();
    assert_eq!(c.total, 1024);
    assert_eq!(c.associative_labeled, 294);
    assert_eq!(c.associative_classes, 65);
    assert_eq!(c.with_flexible_labeled, 43);
    let least = c.nonassociative_example.unwrap();
    assert_eq!(least.mandatory_count(), 0, "least non-associative structure is empty");

    let catalog = associative_catalog(3).unwrap();
    assert_eq!(catalog.len(), 65);
    let keys: std::collections::HashSet<u64> = catalog.iter().map(|s| s.bits_u64()).collect();
    // Both named example structures land in associative classes.
    assert!(keys.contains(&canonicalize(&s1()).unwrap().canonical_bits().bits_u64()));
    assert!(keys.contains(&canonicalize(&s2()).unwrap().canonical_bits().bits_u64()));
    // Catalog is sorted ascending by canonical bits.
    for w in catalog.windows(2) {
        assert!(w[0].numeric_cmp(&w[1]) == std::cmp::Ordering::Less);
    }
}
