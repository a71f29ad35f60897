//! Associativity checking, witness conditions, flexible atoms, and the
//! closed-form expectation/bound formulas for the random model.

use crate::atoms::AtomSet;
use crate::cycles::Cycle;
use crate::structure::CycleStructure;
use crate::table::CompositionTable;
use crate::{Error, Result};

/// A failing associativity triple with both composition sets.
#[derive(Clone, Copy, Debug)]
pub struct Violation {
    /// Atoms `(u, v, w)` with `(u;v);w != u;(v;w)`; identity is index `n`.
    pub atoms: (usize, usize, usize),
    pub left: AtomSet,
    pub right: AtomSet,
}

/// Outcome of the full associativity analysis of one structure.
#[derive(Clone, Debug)]
pub struct AssociativityReport {
    pub associative: bool,
    /// Lexicographically least failing `(u, v, w)`, if any.
    pub first_violation: Option<Violation>,
    /// Witness condition restricted to diversity witnesses.
    pub paper_condition_holds: bool,
    /// Witness condition with the identity admitted as a witness.
    pub extended_condition_holds: bool,
}

/// Checks atom-level associativity: for all atoms `u, v, w` (identity
/// included), `(u;v);w = u;(v;w)` where each side is composed additively from
/// the table. By complete additivity this decides associativity of the whole
/// complex algebra. Returns the least failing triple in lexicographic order
/// (diversity atoms first, identity last).
pub fn associativity_violation(t: &CompositionTable) -> Option<Violation> {
    let n = t.n();
    for u in 0..=n {
        for v in 0..=n {
            let uv = t.entry(u, v);
            for w in 0..=n {
                let mut left = AtomSet::EMPTY;
                for q in uv.iter() {
                    left |= t.entry(q, w);
                }
                let mut right = AtomSet::EMPTY;
                for r in t.entry(v, w).iter() {
                    right |= t.entry(u, r);
                }
                if left != right {
                    return Some(Violation {
                        atoms: (u, v, w),
                        left,
                        right,
                    });
                }
            }
        }
    }
    None
}

/// Full associativity report for a structure: ground-truth check plus both
/// witness-condition variants.
pub fn is_associative(s: &CycleStructure) -> AssociativityReport {
    let t = CompositionTable::build(s);
    let first_violation = associativity_violation(&t);
    let (paper_condition_holds, extended_condition_holds) = witness_conditions_on(&t);
    AssociativityReport {
        associative: first_violation.is_none(),
        first_violation,
        paper_condition_holds,
        extended_condition_holds,
    }
}

/// The sufficient condition behind the model's associativity argument.
///
/// Two parts must hold. First, for every ordered orientation `(a, b, c)` of a
/// mandatory cycle and every ordered orientation `(x, y, c)` of a mandatory
/// cycle sharing the third atom, some witness `z` must satisfy `z <= a;x` and
/// `z <= b;y`. `include_identity` sets the witness pool: `false` admits only
/// diversity witnesses (so the demand is that `{a,x,z}` and `{b,y,z}` are
/// mandatory cycles), `true` additionally admits `z = 1'`, which completes a
/// demand exactly when `a = x` and `b = y`.
///
/// Second, every two distinct diversity atoms must compose to something:
/// an empty `u;v` certifies non-associativity outright, since then
/// `(u;u);v >= 1';v = v` while `u;(u;v) = 0`.
///
/// The diversity-only variant is strictly stronger than associativity (there
/// are associative structures failing it); the identity-extended variant is
/// expected to coincide with associativity, and that equivalence is exercised
/// by the test suite rather than assumed.
pub fn witness_condition(s: &CycleStructure, include_identity: bool) -> bool {
    witness_condition_on(&CompositionTable::build(s), include_identity)
}

/// [`witness_condition`] on a prebuilt table.
pub fn witness_condition_on(t: &CompositionTable, include_identity: bool) -> bool {
    let (paper, extended) = witness_conditions_on(t);
    if include_identity {
        extended
    } else {
        paper
    }
}

/// Both witness-condition variants in one scan over the demand pairs.
/// Returns `(diversity_only, identity_extended)`.
pub fn witness_conditions_on(t: &CompositionTable) -> (bool, bool) {
    let n = t.n();
    for u in 0..n {
        for v in u + 1..n {
            if t.entry(u, v).is_empty() {
                return (false, false);
            }
        }
    }
    let diversity = AtomSet::diversity(n);
    let mut paper = true;
    let mut oriented: Vec<(u32, u32)> = Vec::new();
    for c in 0..n {
        oriented.clear();
        for a in 0..n {
            for b in 0..n {
                if t.entry(a, b).contains(c) {
                    oriented.push((a as u32, b as u32));
                }
            }
        }
        // The demand is symmetric in the two premise pairs (the table is
        // symmetric), so scanning unordered pairs including self-pairs
        // suffices.
        for (i, &(a, b)) in oriented.iter().enumerate() {
            for &(x, y) in &oriented[i..] {
                let meet = t.entry(a as usize, x as usize) & t.entry(b as usize, y as usize);
                if !meet.intersects(&diversity) {
                    paper = false;
                    if meet.is_empty() {
                        return (false, false);
                    }
                }
            }
        }
    }
    (paper, true)
}

/// How the representability question is resolved for one structure.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RepresentabilityFlag {
    /// A flexible atom in an associative structure certifies representability
    /// over a countable base set.
    Representable,
    /// Nothing is decided either way.
    Unknown,
}

impl RepresentabilityFlag {
    pub fn as_str(&self) -> &'static str {
        match self {
            RepresentabilityFlag::Representable => "representable",
            RepresentabilityFlag::Unknown => "unknown",
        }
    }
}

/// Flexible atoms of a structure.
#[derive(Clone, Debug)]
pub struct FlexibilityReport {
    /// Diversity atoms `z` such that every cycle containing `z` is mandatory.
    pub flexible_atoms: AtomSet,
    pub count: usize,
    pub has_flexible: bool,
    pub representable_flag: RepresentabilityFlag,
}

/// Diversity atoms whose every containing cycle (`C(n+1,2)` of them) is
/// mandatory; does not touch the associativity checker.
pub fn flexible_atom_set(s: &CycleStructure) -> AtomSet {
    let n = s.n();
    let mut out = AtomSet::EMPTY;
    'atom: for z in 0..n {
        for x in 0..n {
            for y in x..n {
                if !s.is_mandatory(&Cycle::new(z, x, y)) {
                    continue 'atom;
                }
            }
        }
        out.insert(z);
    }
    out
}

/// Flexible-atom analysis with the representability flag (which needs the
/// associativity verdict).
pub fn flexible_atoms(s: &CycleStructure) -> FlexibilityReport {
    let flexible = flexible_atom_set(s);
    let count = flexible.len();
    let has_flexible = count > 0;
    let associative = associativity_violation(&CompositionTable::build(s)).is_none();
    FlexibilityReport {
        flexible_atoms: flexible,
        count,
        has_flexible,
        representable_flag: if has_flexible && associative {
            RepresentabilityFlag::Representable
        } else {
            RepresentabilityFlag::Unknown
        },
    }
}

/// Expected number of flexible atoms: `n * p^C(n+1,2)`.
pub fn expected_flexible_count(n: usize, p: f64) -> f64 {
    assert!(n >= 1, "n must be at least 1");
    assert!((0.0..=1.0).contains(&p), "p must lie in [0, 1]");
    let exponent = (n * (n + 1) / 2) as f64;
    n as f64 * p.powf(exponent)
}

/// Threshold probability `n^(-1/C(n+1,2))` at which the expected flexible
/// count equals one.
pub fn critical_p(n: usize) -> f64 {
    assert!(n >= 1, "n must be at least 1");
    let exponent = (n * (n + 1) / 2) as f64;
    (n as f64).powf(-1.0 / exponent)
}

/// Upper bounds on the probability that a sampled structure fails the
/// witness condition, evaluated in log space:
/// `union_bound = C(M(n), 2) * (1 - p^2)^n` over all cycle pairs, and the
/// asymptotic form `asymptotic_bound = n^6/72 * (1 - p^2)^n`.
/// Values that underflow are clamped to zero.
pub fn failure_bound(n: u64, p: f64) -> Result<(f64, f64)> {
    if n == 0 {
        return Err(Error::ZeroAtoms);
    }
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::ZeroProbabilityBound { p });
    }
    let m = crate::cycles::cycle_count(n)? as f64;
    let ln_q = (1.0 - p * p).ln(); // -inf at p = 1, giving exact zeros below
    let nf = n as f64;
    let union = if m < 2.0 {
        0.0
    } else {
        (m.ln() + (m - 1.0).ln() - 2f64.ln() + nf * ln_q).exp()
    };
    let asymptotic = (6.0 * nf.ln() - 72f64.ln() + nf * ln_q).exp();
    Ok((union, asymptotic))
}
