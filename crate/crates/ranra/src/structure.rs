//! Cycle structures and the `.cyc` text format.
//!
//! A [`CycleStructure`] is an atom count `n` plus a bit vector of length
//! `M(n)`: bit `i` is set exactly when the cycle with canonical index `i` is
//! mandatory. Structures are immutable values once built.
//!
//! `.cyc` files are UTF-8 text. Line 1 is `n <int>`; `#` starts a comment.
//! The body is either one line per mandatory cycle (`i j k`, ascending atom
//! indices, emitted in ascending cycle-index order) or a single compact line
//! `bits <hex>` holding the whole bit vector, least-significant bit = cycle
//! index 0, padded to `ceil(M(n)/4)` hex digits.

use crate::cycles::{Cycle, CycleIndexer};
use crate::{Error, Result};
use std::cmp::Ordering;

/// One event of the random model: which cycles over `n` atoms are mandatory.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycleStructure {
    n: usize,
    words: Vec<u64>,
}

impl CycleStructure {
    /// Structure with no mandatory cycles.
    pub fn empty(n: usize) -> Result<Self> {
        let ix = CycleIndexer::new(n)?;
        let words = vec![0u64; ix.total().div_ceil(64)];
        Ok(CycleStructure { n, words })
    }

    /// Structure with every cycle mandatory.
    pub fn full(n: usize) -> Result<Self> {
        let mut s = Self::empty(n)?;
        let total = s.total_cycles();
        for i in 0..total {
            s.set_mandatory_idx(i);
        }
        Ok(s)
    }

    pub fn from_cycles(n: usize, cycles: &[Cycle]) -> Result<Self> {
        let ix = CycleIndexer::new(n)?;
        let mut s = Self::empty(n)?;
        for c in cycles {
            s.set_mandatory_idx(ix.index_of(c)?);
        }
        Ok(s)
    }

    /// Builds from a packed bit value; only valid while `M(n) <= 64`.
    pub fn from_bits_u64(n: usize, bits: u64) -> Result<Self> {
        let ix = CycleIndexer::new(n)?;
        let total = ix.total();
        assert!(total <= 64, "from_bits_u64 requires M(n) <= 64");
        assert!(
            total == 64 || bits < 1u64 << total,
            "bit value {bits} has bits beyond M({n}) = {total}"
        );
        let mut s = Self::empty(n)?;
        s.words[0] = bits;
        Ok(s)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn indexer(&self) -> CycleIndexer {
        CycleIndexer::new(self.n).expect("validated at construction")
    }

    /// `M(n)`: length of the bit vector.
    pub fn total_cycles(&self) -> usize {
        self.indexer().total()
    }

    pub fn mandatory_count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_mandatory_idx(&self, index: usize) -> bool {
        self.words[index / 64] >> (index % 64) & 1 != 0
    }

    pub fn is_mandatory(&self, cycle: &Cycle) -> bool {
        let idx = self
            .indexer()
            .index_of(cycle)
            .expect("cycle atoms out of range for this structure");
        self.is_mandatory_idx(idx)
    }

    pub(crate) fn set_mandatory_idx(&mut self, index: usize) {
        debug_assert!(index < self.total_cycles());
        self.words[index / 64] |= 1u64 << (index % 64);
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Packed bit value; only valid while `M(n) <= 64`.
    pub fn bits_u64(&self) -> u64 {
        assert!(self.total_cycles() <= 64);
        self.words[0]
    }

    /// Mandatory cycles with their indices, ascending.
    pub fn iter_mandatory(&self) -> impl Iterator<Item = (usize, Cycle)> + '_ {
        self.indexer()
            .iter()
            .enumerate()
            .filter(|(i, _)| self.is_mandatory_idx(*i))
    }

    /// Compares bit vectors as unsigned integers (bit 0 least significant).
    pub fn numeric_cmp(&self, other: &CycleStructure) -> Ordering {
        debug_assert_eq!(self.n, other.n);
        for w in (0..self.words.len()).rev() {
            match self.words[w].cmp(&other.words[w]) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }

    /// Bit-wise containment: every cycle mandatory here is mandatory in `other`.
    pub fn is_subset_of(&self, other: &CycleStructure) -> bool {
        debug_assert_eq!(self.n, other.n);
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }
}

impl std::fmt::Debug for CycleStructure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CycleStructure(n={}, mandatory=[", self.n)?;
        for (i, (_, c)) in self.iter_mandatory().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{c:?}")?;
        }
        write!(f, "])")
    }
}

/// Output shape for [`serialize_structure`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CycFormat {
    /// One `i j k` line per mandatory cycle.
    Cycles,
    /// Single `bits <hex>` line.
    Bits,
}

/// Parses the `.cyc` text format.
pub fn parse_structure(text: &str) -> Result<CycleStructure> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect();

    let (line_no, header) = *lines
        .first()
        .ok_or_else(|| parse_err(1, "missing header line `n <int>`"))?;
    let n = parse_header(line_no, header)?;
    let ix = CycleIndexer::new(n).map_err(|e| parse_err(line_no, &e.to_string()))?;
    let mut s = CycleStructure::empty(n).expect("n validated above");

    let body = &lines[1..];
    if let Some((line_no, line)) = body.first() {
        if let Some(("bits", hex)) = line.split_once(char::is_whitespace) {
            parse_bits_line(*line_no, hex.trim(), &mut s)?;
            if let Some((extra_no, _)) = body.get(1) {
                return Err(parse_err(*extra_no, "unexpected line after `bits`"));
            }
            return Ok(s);
        }
    }
    for (line_no, line) in body {
        parse_cycle_line(*line_no, line, &ix, &mut s)?;
    }
    Ok(s)
}

fn parse_header(line_no: usize, line: &str) -> Result<usize> {
    let rest = line
        .strip_prefix("n ")
        .or_else(|| line.strip_prefix("n\t"))
        .ok_or_else(|| parse_err(line_no, "expected header `n <int>`"))?;
    rest.trim()
        .parse::<usize>()
        .map_err(|_| parse_err(line_no, &format!("invalid atom count `{}`", rest.trim())))
}

fn parse_cycle_line(
    line_no: usize,
    line: &str,
    ix: &CycleIndexer,
    s: &mut CycleStructure,
) -> Result<()> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    if fields.len() != 3 {
        return Err(parse_err(
            line_no,
            &format!("expected three atom indices, got {}", fields.len()),
        ));
    }
    let mut atoms = [0usize; 3];
    for (slot, f) in atoms.iter_mut().zip(&fields) {
        *slot = f
            .parse()
            .map_err(|_| parse_err(line_no, &format!("invalid atom index `{f}`")))?;
    }
    if !(atoms[0] <= atoms[1] && atoms[1] <= atoms[2]) {
        return Err(parse_err(line_no, "atom indices must be sorted ascending"));
    }
    if atoms[2] >= ix.n() {
        return Err(parse_err(
            line_no,
            &format!("atom {} out of range for n = {}", atoms[2], ix.n()),
        ));
    }
    let idx = ix
        .index_of(&Cycle::new(atoms[0], atoms[1], atoms[2]))
        .expect("range checked above");
    if s.is_mandatory_idx(idx) {
        return Err(parse_err(line_no, "duplicate cycle line"));
    }
    s.set_mandatory_idx(idx);
    Ok(())
}

fn parse_bits_line(line_no: usize, hex: &str, s: &mut CycleStructure) -> Result<()> {
    let total = s.total_cycles();
    let want_digits = total.div_ceil(4);
    if hex.len() != want_digits {
        return Err(parse_err(
            line_no,
            &format!(
                "bits field must be exactly {want_digits} hex digits for M({}) = {total}, got {}",
                s.n(),
                hex.len()
            ),
        ));
    }
    // Digits are most-significant first; nibble boundaries never straddle
    // words, and a 64-aligned word always holds its own padding nibbles.
    for (pos, ch) in hex.chars().rev().enumerate() {
        let nibble = ch
            .to_digit(16)
            .ok_or_else(|| parse_err(line_no, &format!("invalid hex digit `{ch}`")))?
            as u64;
        let bit = pos * 4;
        if bit + 4 > total && nibble >> (total.saturating_sub(bit)) != 0 {
            return Err(parse_err(line_no, "bits field sets bits beyond M(n)"));
        }
        s.words[bit / 64] |= nibble << (bit % 64);
    }
    Ok(())
}

fn parse_err(line: usize, message: &str) -> Error {
    Error::Parse {
        line,
        message: message.to_string(),
    }
}

/// Serializes to the `.cyc` format; the cycles form lists mandatory cycles in
/// ascending index order.
pub fn serialize_structure(s: &CycleStructure, format: CycFormat) -> String {
    let mut out = format!("n {}\n", s.n());
    match format {
        CycFormat::Cycles => {
            for (_, c) in s.iter_mandatory() {
                let [i, j, k] = c.atoms();
                out.push_str(&format!("{i} {j} {k}\n"));
            }
        }
        CycFormat::Bits => {
            let total = s.total_cycles();
            let digits = total.div_ceil(4);
            let mut hex = String::with_capacity(digits);
            for d in (0..digits).rev() {
                let bit = d * 4;
                let nibble = (s.words[bit / 64] >> (bit % 64)) & 0xF;
                hex.push(char::from_digit(nibble as u32, 16).unwrap());
            }
            out.push_str(&format!("bits {hex}\n"));
        }
    }
    out
}
