//! Exhaustive generation of all structures for small atom counts, and
//! isomorphism classification under diversity-atom permutations.
//!
//! Two structures are isomorphic exactly when some relabelling of the
//! diversity atoms maps one onto the other (the identity is fixed, and
//! integral symmetric structures admit no other atom symmetries). The
//! canonical form of a structure is the numerically least bit vector among
//! its `n!` permutation images.

use crate::analysis::{associativity_violation, flexible_atom_set, Violation};
use crate::cycles::{Cycle, CycleIndexer};
use crate::structure::CycleStructure;
use crate::table::CompositionTable;
use crate::{Error, Result};
use rayon::prelude::*;
use std::cmp::Ordering;
use std::collections::HashSet;

/// Hard cap on the bit-vector length for exhaustive enumeration (2^25 ~ 33M
/// structures).
pub const ENUMERATION_CAP_BITS: usize = 25;

/// Hard cap on `n` for canonicalization, which enumerates all `n!`
/// permutations directly.
pub const CANONICALIZATION_MAX_N: usize = 10;

fn enumeration_width(n: usize) -> Result<usize> {
    let bits = CycleIndexer::new(n)?.total();
    if bits > ENUMERATION_CAP_BITS {
        return Err(Error::EnumerationCapExceeded {
            n,
            bits,
            cap: ENUMERATION_CAP_BITS,
        });
    }
    Ok(bits)
}

/// Every structure over `n` atoms exactly once, in ascending numeric order of
/// the bit vector. Refuses atom counts with `M(n)` beyond the cap.
pub fn all_structures(n: usize) -> Result<impl Iterator<Item = CycleStructure>> {
    let bits = enumeration_width(n)?;
    Ok((0..1u64 << bits).map(move |v| {
        CycleStructure::from_bits_u64(n, v).expect("width checked against cap")
    }))
}

/// The numerically least permutation image of a structure.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CanonicalForm {
    canonical: CycleStructure,
}

impl CanonicalForm {
    pub fn n(&self) -> usize {
        self.canonical.n()
    }

    pub fn canonical_bits(&self) -> &CycleStructure {
        &self.canonical
    }

    pub fn into_structure(self) -> CycleStructure {
        self.canonical
    }
}

/// Applies a diversity-atom relabelling to a structure.
pub fn relabel(s: &CycleStructure, perm: &[usize]) -> CycleStructure {
    debug_assert_eq!(perm.len(), s.n());
    let ix = s.indexer();
    let mut out = CycleStructure::empty(s.n()).expect("same n");
    for (_, cycle) in s.iter_mandatory() {
        let [i, j, k] = cycle.atoms();
        let image = Cycle::new(perm[i], perm[j], perm[k]);
        out.set_mandatory_idx(ix.index_of(&image).expect("permutation stays in range"));
    }
    out
}

/// Calls `f` with every permutation of `0..n` (Heap's algorithm; the slice is
/// reused between calls).
fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize])) {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut stack = vec![0usize; n];
    f(&perm);
    let mut i = 1;
    while i < n {
        if stack[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(stack[i], i);
            }
            f(&perm);
            stack[i] += 1;
            i = 1;
        } else {
            stack[i] = 0;
            i += 1;
        }
    }
}

/// Minimum of the structure's orbit under all `n!` relabellings.
pub fn canonicalize(s: &CycleStructure) -> Result<CanonicalForm> {
    let n = s.n();
    if n > CANONICALIZATION_MAX_N {
        return Err(Error::CanonicalizationCapExceeded {
            n,
            max: CANONICALIZATION_MAX_N,
        });
    }
    let mut best = s.clone();
    for_each_permutation(n, |perm| {
        let image = relabel(s, perm);
        if image.numeric_cmp(&best) == Ordering::Less {
            best = image;
        }
    });
    Ok(CanonicalForm { canonical: best })
}

/// Exhaustive counts over all structures for one atom count.
#[derive(Clone, Debug, serde::Serialize)]
pub struct Census {
    pub n: usize,
    pub total: u64,
    pub associative_labeled: u64,
    pub associative_classes: u64,
    pub with_flexible_labeled: u64,
    #[serde(skip)]
    pub nonassociative_example: Option<CycleStructure>,
}

#[derive(Default)]
struct PartialCensus {
    associative: u64,
    with_flexible: u64,
    classes: HashSet<u64>,
    least_nonassociative: Option<u64>,
}

impl PartialCensus {
    fn absorb(mut self, other: PartialCensus) -> PartialCensus {
        self.associative += other.associative;
        self.with_flexible += other.with_flexible;
        self.classes.extend(other.classes);
        self.least_nonassociative = match (self.least_nonassociative, other.least_nonassociative)
        {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        self
    }
}

/// Streams every structure, counting associative ones (labeled and up to
/// isomorphism), structures with a flexible atom, and the numerically least
/// non-associative structure. Memory stays proportional to the number of
/// canonical classes; the index range splits across worker threads.
pub fn census(n: usize) -> Result<Census> {
    let bits = enumeration_width(n)?;
    let total = 1u64 << bits;
    let partial = (0..total)
        .into_par_iter()
        .fold(PartialCensus::default, |mut acc, value| {
            let s = CycleStructure::from_bits_u64(n, value).expect("within cap");
            let table = CompositionTable::build(&s);
            if associativity_violation(&table).is_none() {
                acc.associative += 1;
                let canonical = canonicalize(&s).expect("n within canonicalization cap");
                acc.classes.insert(canonical.canonical_bits().bits_u64());
            } else {
                // Fold accumulators may see chunks out of order; keep the min.
                acc.least_nonassociative =
                    Some(acc.least_nonassociative.map_or(value, |c| c.min(value)));
            }
            if !flexible_atom_set(&s).is_empty() {
                acc.with_flexible += 1;
            }
            acc
        })
        .reduce(PartialCensus::default, PartialCensus::absorb);

    Ok(Census {
        n,
        total,
        associative_labeled: partial.associative,
        associative_classes: partial.classes.len() as u64,
        with_flexible_labeled: partial.with_flexible,
        nonassociative_example: partial
            .least_nonassociative
            .map(|v| CycleStructure::from_bits_u64(n, v).expect("within cap")),
    })
}

/// The first `limit` non-associative structures in ascending numeric order,
/// each with its least violation triple.
pub fn find_nonassociative_examples(
    n: usize,
    limit: usize,
) -> Result<Vec<(CycleStructure, Violation)>> {
    let mut out = Vec::new();
    for s in all_structures(n)? {
        if out.len() >= limit {
            break;
        }
        let table = CompositionTable::build(&s);
        if let Some(violation) = associativity_violation(&table) {
            out.push((s, violation));
        }
    }
    Ok(out)
}

/// Canonical representative of every associative isomorphism class, in
/// ascending canonical-bits order.
pub fn associative_catalog(n: usize) -> Result<Vec<CycleStructure>> {
    let mut reps: Vec<u64> = {
        let mut set = HashSet::new();
        for s in all_structures(n)? {
            let table = CompositionTable::build(&s);
            if associativity_violation(&table).is_none() {
                set.insert(canonicalize(&s)?.canonical_bits().bits_u64());
            }
        }
        set.into_iter().collect()
    };
    reps.sort_unstable();
    reps.into_iter()
        .map(|v| CycleStructure::from_bits_u64(n, v))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampler::{sample, SamplerConfig};
    use crate::structure::parse_structure;

    #[test]
    fn structure_counts() {
        assert_eq!(all_structures(1).unwrap().count(), 2);
        assert_eq!(all_structures(2).unwrap().count(), 16);
        assert_eq!(all_structures(3).unwrap().count(), 1024);
        assert!(matches!(
            all_structures(5),
            Err(Error::EnumerationCapExceeded { n: 5, bits: 35, .. })
        ));
    }

    #[test]
    fn canonicalize_is_orbit_invariant_and_idempotent() {
        for n in 2..=5usize {
            let s = sample(&SamplerConfig { n, p: 0.4, seed: 31 + n as u64 }).unwrap();
            let canon = canonicalize(&s).unwrap();
            assert_eq!(canonicalize(canon.canonical_bits()).unwrap(), canon);
            for_each_permutation(n, |perm| {
                let image = relabel(&s, perm);
                assert_eq!(canonicalize(&image).unwrap(), canon);
            });
        }
    }

    #[test]
    fn extremes_are_their_own_canonical_forms() {
        for n in 1..=4 {
            for s in [CycleStructure::empty(n).unwrap(), CycleStructure::full(n).unwrap()] {
                assert_eq!(canonicalize(&s).unwrap().canonical_bits(), &s);
            }
        }
    }

    #[test]
    fn swapping_atoms_of_s2_preserves_canonical_form() {
        let s2 = parse_structure("n 3\n0 1 1\n0 2 2\n1 2 2\n").unwrap();
        let swapped = relabel(&s2, &[0, 2, 1]);
        assert_ne!(s2, swapped);
        assert_eq!(
            canonicalize(&s2).unwrap(),
            canonicalize(&swapped).unwrap()
        );
    }

    #[test]
    fn canonicalization_cap() {
        let s = CycleStructure::empty(11).unwrap();
        assert!(matches!(
            canonicalize(&s),
            Err(Error::CanonicalizationCapExceeded { n: 11, .. })
        ));
    }

    #[test]
    fn census_n1() {
        let c = census(1).unwrap();
        assert_eq!(c.total, 2);
        assert_eq!(c.associative_labeled, 2);
        assert_eq!(c.associative_classes, 2);
        assert!(c.nonassociative_example.is_none());
    }

    #[test]
    fn census_json_keys() {
        let c = census(1).unwrap();
        let json = serde_json::to_string(&c).unwrap();
        assert_eq!(
            json,
            r#"{"n":1,"total":2,"associative_labeled":2,"associative_classes":2,"with_flexible_labeled":1}"#
        );
    }

    #[test]
    fn nonassociative_examples_n1_empty() {
        assert!(find_nonassociative_examples(1, 10).unwrap().is_empty());
    }

    #[test]
    fn nonassociative_examples_n3() {
        let one = find_nonassociative_examples(3, 1).unwrap();
        assert_eq!(one.len(), 1);
        // The numerically least non-associative structure is the empty one:
        // with two distinct atoms and no mandatory cycles, (a;a);b = b but
        // a;(a;b) = 0.
        assert_eq!(one[0].0.mandatory_count(), 0);
        assert_eq!(one[0].1.atoms, (0, 0, 1));

        let all = find_nonassociative_examples(3, 2000).unwrap();
        let c = census(3).unwrap();
        assert_eq!(all.len() as u64, c.total - c.associative_labeled);
    }
}
