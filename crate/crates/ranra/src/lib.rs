//! Random finite symmetric integral relation algebras.
//!
//! A structure on `n` diversity atoms is described by its set of mandatory
//! diversity cycles (unordered multisets of three diversity atoms). This crate
//! provides:
//!
//! - canonical cycle indexing and the `.cyc` structure file format ([`cycles`],
//!   [`structure`]),
//! - derived composition tables and exact associativity checking ([`table`],
//!   [`analysis`]),
//! - a seeded, bit-exact sampler that makes each cycle mandatory independently
//!   with probability `p` ([`sampler`]),
//! - exhaustive enumeration and isomorphism classification for small atom
//!   counts ([`enumerate`]),
//! - per-atom graph quasirandomness diagnostics ([`quasirandom`]),
//! - a reproducible Monte Carlo experiment harness with CSV output
//!   ([`experiment`]).

pub mod analysis;
pub mod atoms;
pub mod cycles;
pub mod enumerate;
pub mod experiment;
pub mod quasirandom;
pub mod sampler;
pub mod structure;
pub mod table;

pub use analysis::{
    critical_p, expected_flexible_count, failure_bound, flexible_atoms, is_associative,
    witness_condition, AssociativityReport, FlexibilityReport, RepresentabilityFlag, Violation,
};
pub use atoms::{AtomSet, MAX_N};
pub use cycles::{cycle_count, cycle_type_census, Cycle, CycleIndexer};
pub use enumerate::{all_structures, canonicalize, census, CanonicalForm, Census};
pub use quasirandom::{algebra_quasirandomness, atom_graph, graph_stats, AtomGraph, GraphStats};
pub use sampler::{empirical_cycle_frequency, sample, trial_seed, SamplerConfig, SplitMix64};
pub use structure::{parse_structure, serialize_structure, CycFormat, CycleStructure};
pub use table::CompositionTable;

/// Errors reported by the library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("atom count must be at least 1")]
    ZeroAtoms,
    #[error("atom count {n} exceeds the supported maximum of {max}")]
    TooManyAtoms { n: usize, max: usize },
    #[error("atom {atom} out of range for n = {n}")]
    AtomOutOfRange { atom: usize, n: usize },
    #[error("cycle index {index} out of range ({total} cycles for n = {n})")]
    CycleIndexOutOfRange { index: usize, total: usize, n: usize },
    #[error("invalid probability {p}: must lie in [0, 1]")]
    InvalidProbability { p: f64 },
    #[error("probability {p} rejected: bound requires p > 0")]
    ZeroProbabilityBound { p: f64 },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("enumeration refused: M({n}) = {bits} cycle bits exceeds cap of {cap}")]
    EnumerationCapExceeded { n: usize, bits: usize, cap: usize },
    #[error("canonicalization enumerates n! permutations and supports n <= {max}, got {n}")]
    CanonicalizationCapExceeded { n: usize, max: usize },
    #[error("atom graph undefined for n = 1: no vertices besides the center")]
    DegenerateAtomGraph,
    #[error("invalid experiment config: {0}")]
    InvalidConfig(String),
    #[error("trials must be at least 1")]
    ZeroTrials,
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("invalid config JSON: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Human-readable atom name: `a`, `b`, ... for diversity atoms, `1'` for the
/// identity of a structure on `n` diversity atoms.
pub fn atom_name(atom: usize, n: usize) -> String {
    if atom == n {
        "1'".to_string()
    } else if atom < 26 {
        char::from(b'a' + atom as u8).to_string()
    } else {
        format!("a{atom}")
    }
}
