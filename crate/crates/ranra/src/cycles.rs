//! Diversity cycles and their canonical indexing.
//!
//! A diversity cycle is an unordered multiset of three diversity atoms, stored
//! as a sorted triple. For `n` atoms there are `M(n) = n(n+1)(n+2)/6` cycles
//! (equivalently `n + 2*C(n,2) + C(n,3)`, splitting by the number of distinct
//! atoms). Cycles are numbered `0..M(n)` in lexicographic order of their
//! sorted triples; this fixed order defines the sampler's draw sequence and
//! the bit layout of structure files.

use crate::{Error, Result, MAX_N};

/// A diversity cycle: a sorted multiset `{i, j, k}` of diversity atoms.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cycle {
    atoms: [usize; 3],
}

impl Cycle {
    /// Builds the cycle for the multiset `{i, j, k}` (any order).
    pub fn new(i: usize, j: usize, k: usize) -> Self {
        let mut atoms = [i, j, k];
        atoms.sort_unstable();
        Cycle { atoms }
    }

    pub fn atoms(&self) -> [usize; 3] {
        self.atoms
    }

    pub fn contains(&self, atom: usize) -> bool {
        self.atoms.contains(&atom)
    }

    /// Number of distinct atoms: 1 for `aaa`, 2 for `abb`, 3 for `abc`.
    pub fn distinct_atoms(&self) -> usize {
        let [i, j, k] = self.atoms;
        1 + usize::from(i != j) + usize::from(j != k)
    }
}

impl std::fmt::Debug for Cycle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{})", self.atoms[0], self.atoms[1], self.atoms[2])
    }
}

/// Number of diversity cycles over `n` atoms: `n(n+1)(n+2)/6`.
pub fn cycle_count(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::ZeroAtoms);
    }
    let m = n as u128 * (n as u128 + 1) * (n as u128 + 2) / 6;
    Ok(m as u64)
}

/// Cycle counts split by number of distinct atoms: `(n, n(n-1), C(n,3))`.
pub fn cycle_type_census(n: u64) -> Result<(u64, u64, u64)> {
    if n == 0 {
        return Err(Error::ZeroAtoms);
    }
    let one = n;
    let two = n * (n - 1);
    let three = if n < 3 {
        0
    } else {
        (n as u128 * (n as u128 - 1) * (n as u128 - 2) / 6) as u64
    };
    Ok((one, two, three))
}

/// Bijection between cycles over `n` atoms and indices `0..M(n)`.
#[derive(Clone, Copy, Debug)]
pub struct CycleIndexer {
    n: usize,
}

impl CycleIndexer {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroAtoms);
        }
        if n > MAX_N {
            return Err(Error::TooManyAtoms { n, max: MAX_N });
        }
        Ok(CycleIndexer { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Total number of cycles, `M(n)`.
    pub fn total(&self) -> usize {
        m_of(self.n)
    }

    /// Lexicographic rank of a cycle among all sorted triples.
    pub fn index_of(&self, cycle: &Cycle) -> Result<usize> {
        let n = self.n;
        let [i, j, k] = cycle.atoms();
        if k >= n {
            return Err(Error::AtomOutOfRange { atom: k, n });
        }
        // Triples starting below i, then pairs (j', k) with i <= j' < j, then k.
        let before_first = m_of(n) - m_of(n - i);
        let before_second: usize = (i..j).map(|s| n - s).sum();
        Ok(before_first + before_second + (k - j))
    }

    /// Inverse of [`index_of`](Self::index_of).
    pub fn at(&self, index: usize) -> Result<Cycle> {
        let n = self.n;
        let total = self.total();
        if index >= total {
            return Err(Error::CycleIndexOutOfRange { index, total, n });
        }
        let mut rem = index;
        let mut i = 0;
        while rem >= tri(n - i) {
            rem -= tri(n - i);
            i += 1;
        }
        let mut j = i;
        while rem >= n - j {
            rem -= n - j;
            j += 1;
        }
        Ok(Cycle::new(i, j, j + rem))
    }

    /// All cycles in ascending index order.
    pub fn iter(&self) -> impl Iterator<Item = Cycle> {
        let n = self.n;
        (0..n).flat_map(move |i| {
            (i..n).flat_map(move |j| (j..n).map(move |k| Cycle::new(i, j, k)))
        })
    }
}

/// `M(x) = x(x+1)(x+2)/6` for in-range atom counts.
fn m_of(x: usize) -> usize {
    x * (x + 1) * (x + 2) / 6
}

/// Triangular number `x(x+1)/2`: cycles over `n` atoms whose least atom is fixed.
fn tri(x: usize) -> usize {
    x * (x + 1) / 2
}
