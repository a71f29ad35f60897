//! Fixed-width bit sets over the atoms of a structure.
//!
//! Atoms are numbered `0..n` for the diversity atoms and `n` for the identity,
//! so a set over a structure with `n` diversity atoms uses `n + 1` bit
//! positions. Storage is a fixed array of words sized for [`MAX_N`].

/// Largest supported diversity-atom count.
pub const MAX_N: usize = 256;

const WORDS: usize = (MAX_N + 1).div_ceil(64);

/// A set of atoms represented as a bit mask (identity at position `n`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct AtomSet {
    words: [u64; WORDS],
}

impl AtomSet {
    pub const EMPTY: AtomSet = AtomSet { words: [0; WORDS] };

    pub fn singleton(atom: usize) -> Self {
        let mut s = Self::EMPTY;
        s.insert(atom);
        s
    }

    /// All diversity atoms of a structure on `n` atoms: positions `0..n`.
    pub fn diversity(n: usize) -> Self {
        Self::first_atoms(n)
    }

    /// All atoms including the identity: positions `0..=n`.
    pub fn all_atoms(n: usize) -> Self {
        Self::first_atoms(n + 1)
    }

    fn first_atoms(count: usize) -> Self {
        debug_assert!(count <= MAX_N + 1);
        let mut s = Self::EMPTY;
        for w in 0..WORDS {
            let lo = w * 64;
            if count >= lo + 64 {
                s.words[w] = u64::MAX;
            } else if count > lo {
                s.words[w] = (1u64 << (count - lo)) - 1;
            }
        }
        s
    }

    #[inline]
    pub fn insert(&mut self, atom: usize) {
        debug_assert!(atom <= MAX_N);
        self.words[atom / 64] |= 1u64 << (atom % 64);
    }

    #[inline]
    pub fn contains(&self, atom: usize) -> bool {
        debug_assert!(atom <= MAX_N);
        self.words[atom / 64] >> (atom % 64) & 1 != 0
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn union(&self, other: &AtomSet) -> AtomSet {
        let mut out = *self;
        for w in 0..WORDS {
            out.words[w] |= other.words[w];
        }
        out
    }

    #[inline]
    pub fn union_with(&mut self, other: &AtomSet) {
        for w in 0..WORDS {
            self.words[w] |= other.words[w];
        }
    }

    #[inline]
    pub fn intersection(&self, other: &AtomSet) -> AtomSet {
        let mut out = *self;
        for w in 0..WORDS {
            out.words[w] &= other.words[w];
        }
        out
    }

    /// True when the two sets share at least one atom.
    #[inline]
    pub fn intersects(&self, other: &AtomSet) -> bool {
        (0..WORDS).any(|w| self.words[w] & other.words[w] != 0)
    }

    pub fn is_subset_of(&self, other: &AtomSet) -> bool {
        (0..WORDS).all(|w| self.words[w] & !other.words[w] == 0)
    }

    pub fn iter(&self) -> AtomIter {
        AtomIter {
            words: self.words,
            word_idx: 0,
        }
    }
}

impl std::ops::BitOr for AtomSet {
    type Output = AtomSet;
    fn bitor(self, rhs: AtomSet) -> AtomSet {
        self.union(&rhs)
    }
}

impl std::ops::BitOrAssign for AtomSet {
    fn bitor_assign(&mut self, rhs: AtomSet) {
        self.union_with(&rhs);
    }
}

impl std::ops::BitAnd for AtomSet {
    type Output = AtomSet;
    fn bitand(self, rhs: AtomSet) -> AtomSet {
        self.intersection(&rhs)
    }
}

impl std::fmt::Debug for AtomSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (i, atom) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{atom}")?;
        }
        write!(f, "}}")
    }
}

/// Iterates set atoms in ascending order.
pub struct AtomIter {
    words: [u64; WORDS],
    word_idx: usize,
}

impl Iterator for AtomIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        while self.word_idx < WORDS {
            let w = self.words[self.word_idx];
            if w != 0 {
                let bit = w.trailing_zeros() as usize;
                self.words[self.word_idx] = w & (w - 1);
                return Some(self.word_idx * 64 + bit);
            }
            self.word_idx += 1;
        }
        None
    }
}

impl IntoIterator for &AtomSet {
    type Item = usize;
    type IntoIter = AtomIter;
    fn into_iter(self) -> AtomIter {
        self.iter()
    }
}
