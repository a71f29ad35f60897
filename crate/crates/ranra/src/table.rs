//! Atom-level composition tables derived from a cycle structure.
//!
//! Atoms are `0..n` (diversity) plus the identity at index `n`. For diversity
//! atoms `a, b` the entry `a;b` holds every diversity `c` with `{a,b,c}`
//! mandatory, plus the identity exactly when `a = b`. Identity rows and
//! columns follow the identity law. Because cycles are unordered multisets,
//! the table is symmetric and satisfies all six Peircean transforms by
//! construction.

use crate::atoms::AtomSet;
use crate::structure::CycleStructure;

/// Composition sets for every ordered pair of atoms (identity included).
#[derive(Clone)]
pub struct CompositionTable {
    n: usize,
    entries: Vec<AtomSet>,
}

impl CompositionTable {
    pub fn build(s: &CycleStructure) -> Self {
        let n = s.n();
        let atoms = n + 1;
        let mut entries = vec![AtomSet::EMPTY; atoms * atoms];
        for x in 0..atoms {
            entries[n * atoms + x].insert(x);
            entries[x * atoms + n].insert(x);
        }
        for a in 0..n {
            entries[a * atoms + a].insert(n);
        }
        for (_, cycle) in s.iter_mandatory() {
            let [a, b, c] = cycle.atoms();
            entries[a * atoms + b].insert(c);
            entries[b * atoms + a].insert(c);
            entries[a * atoms + c].insert(b);
            entries[c * atoms + a].insert(b);
            entries[b * atoms + c].insert(a);
            entries[c * atoms + b].insert(a);
        }
        CompositionTable { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Index of the identity atom.
    pub fn identity(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn entry(&self, u: usize, v: usize) -> AtomSet {
        debug_assert!(u <= self.n && v <= self.n);
        self.entries[u * (self.n + 1) + v]
    }

    /// Composition of two atom sets by additivity: union of `x;y` over all
    /// `x` in `xs`, `y` in `ys`.
    pub fn compose_sets(&self, xs: &AtomSet, ys: &AtomSet) -> AtomSet {
        let mut out = AtomSet::EMPTY;
        for x in xs.iter() {
            let row = x * (self.n + 1);
            for y in ys.iter() {
                out |= self.entries[row + y];
            }
        }
        out
    }
}
