//! Per-atom graph diagnostics for quasirandomness.
//!
//! For a center atom `a`, the graph `G_a` has the other `n - 1` diversity
//! atoms as vertices, an edge `{b, c}` whenever `{a,b,c}` is mandatory, and a
//! loop on `b` whenever `{a,b,b}` is mandatory. Cycles containing the center
//! two or three times contribute nothing. A structure counts as quasirandom
//! when all but a `delta` fraction of its atom graphs pass three deviation
//! statistics (edge density, degree concentration, codegree concentration)
//! at tolerance `epsilon`.
//!
//! Counting conventions: a loop adds 1 to its vertex's degree and occupies
//! one of the `n - 1` loop slots in the density denominator, which keeps `p`
//! the expected edge density under the model; codegrees ignore loops.

use crate::atoms::AtomSet;
use crate::cycles::Cycle;
use crate::structure::CycleStructure;
use crate::{Error, Result};

/// The graph `G_a` on the diversity atoms other than `a`, loops allowed.
#[derive(Clone, Debug)]
pub struct AtomGraph {
    n: usize,
    center: usize,
    adjacency: Vec<AtomSet>,
    loops: AtomSet,
}

impl AtomGraph {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn center(&self) -> usize {
        self.center
    }

    /// Vertices: every diversity atom except the center.
    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&v| v != self.center)
    }

    pub fn vertex_count(&self) -> usize {
        self.n - 1
    }

    pub fn has_edge(&self, b: usize, c: usize) -> bool {
        debug_assert!(b != c);
        self.adjacency[b].contains(c)
    }

    pub fn has_loop(&self, b: usize) -> bool {
        self.loops.contains(b)
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(AtomSet::len).sum::<usize>() / 2
    }

    pub fn loop_count(&self) -> usize {
        self.loops.len()
    }

    /// Neighbors of `v` via proper edges, plus 1 for a loop.
    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len() + usize::from(self.loops.contains(v))
    }

    /// Common proper-edge neighbors of `u` and `v`; loops are ignored.
    pub fn codegree(&self, u: usize, v: usize) -> usize {
        (self.adjacency[u] & self.adjacency[v]).len()
    }
}

/// Builds `G_a`. Needs at least one vertex besides the center, so `n = 1` is
/// refused.
pub fn atom_graph(s: &CycleStructure, a: usize) -> Result<AtomGraph> {
    let n = s.n();
    if n < 2 {
        return Err(Error::DegenerateAtomGraph);
    }
    if a >= n {
        return Err(Error::AtomOutOfRange { atom: a, n });
    }
    let mut adjacency = vec![AtomSet::EMPTY; n];
    let mut loops = AtomSet::EMPTY;
    for b in 0..n {
        if b == a {
            continue;
        }
        if s.is_mandatory(&Cycle::new(a, b, b)) {
            loops.insert(b);
        }
        for c in b + 1..n {
            if c == a {
                continue;
            }
            if s.is_mandatory(&Cycle::new(a, b, c)) {
                adjacency[b].insert(c);
                adjacency[c].insert(b);
            }
        }
    }
    Ok(AtomGraph {
        n,
        center: a,
        adjacency,
        loops,
    })
}

/// Deviation statistics of one atom graph against density `p`.
#[derive(Clone, Copy, Debug, serde::Serialize)]
pub struct GraphStats {
    /// `(edges + loops) / (C(n-1,2) + (n-1))`.
    pub edge_density: f64,
    /// Fraction of vertices `v` with `|deg(v) - p(n-2)| > epsilon (n-1)`.
    pub degree_deviation_fraction: f64,
    /// Mean over vertex pairs of `|codeg(u,v) - p^2 (n-3)|`.
    pub codegree_deviation: f64,
}

/// Degree statistic alone; antitone in `epsilon` on every graph.
pub fn degree_deviation_fraction(g: &AtomGraph, p: f64, epsilon: f64) -> f64 {
    let n = g.n();
    let target = p * (n - 2) as f64;
    let tolerance = epsilon * (n - 1) as f64;
    let deviating = g
        .vertices()
        .filter(|&v| (g.degree(v) as f64 - target).abs() > tolerance)
        .count();
    deviating as f64 / g.vertex_count() as f64
}

/// Computes all three statistics exactly. Codegree needs `n >= 3`.
pub fn graph_stats(g: &AtomGraph, p: f64, epsilon: f64) -> GraphStats {
    let n = g.n();
    assert!(n >= 3, "codegree statistics need n >= 3");
    assert!(epsilon > 0.0, "epsilon must be positive");
    let nv = g.vertex_count();
    let slots = (nv * (nv - 1)) / 2 + nv;
    let edge_density = (g.edge_count() + g.loop_count()) as f64 / slots as f64;

    let codegree_target = p * p * (n - 3) as f64;
    let vertices: Vec<usize> = g.vertices().collect();
    let mut dev_sum = 0.0;
    for (i, &u) in vertices.iter().enumerate() {
        for &v in &vertices[i + 1..] {
            dev_sum += (g.codegree(u, v) as f64 - codegree_target).abs();
        }
    }
    let pairs = nv * (nv - 1) / 2;
    GraphStats {
        edge_density,
        degree_deviation_fraction: degree_deviation_fraction(g, p, epsilon),
        codegree_deviation: dev_sum / pairs as f64,
    }
}

/// Per-structure quasirandomness verdict.
#[derive(Clone, Debug, serde::Serialize)]
pub struct QuasirandomVerdict {
    /// Pass flag per diversity atom (center of the graph), in atom order.
    pub per_atom_pass: Vec<bool>,
    /// Statistics per diversity atom, in atom order.
    pub per_atom_stats: Vec<GraphStats>,
    /// Fraction of atom graphs failing their statistics.
    pub failing_fraction: f64,
    /// True when `failing_fraction <= delta`.
    pub algebra_quasirandom: bool,
}

/// Evaluates every `G_a`. A graph passes when `|edge_density - p| <= epsilon`,
/// its degree deviation fraction is at most `epsilon`, and its codegree
/// deviation is at most `epsilon p^2 (n-3) + epsilon sqrt(n)` (the additive
/// slack keeps small atom counts meaningful).
pub fn algebra_quasirandomness(
    s: &CycleStructure,
    p: f64,
    epsilon: f64,
    delta: f64,
) -> QuasirandomVerdict {
    let n = s.n();
    assert!(n >= 3, "verdict needs n >= 3");
    let codegree_bound = epsilon * p * p * (n - 3) as f64 + epsilon * (n as f64).sqrt();
    let mut per_atom_pass = Vec::with_capacity(n);
    let mut per_atom_stats = Vec::with_capacity(n);
    for a in 0..n {
        let g = atom_graph(s, a).expect("n >= 3 and a < n");
        let stats = graph_stats(&g, p, epsilon);
        let pass = (stats.edge_density - p).abs() <= epsilon
            && stats.degree_deviation_fraction <= epsilon
            && stats.codegree_deviation <= codegree_bound;
        per_atom_pass.push(pass);
        per_atom_stats.push(stats);
    }
    let failing = per_atom_pass.iter().filter(|&&ok| !ok).count();
    let failing_fraction = failing as f64 / n as f64;
    QuasirandomVerdict {
        per_atom_pass,
        per_atom_stats,
        failing_fraction,
        algebra_quasirandom: failing_fraction <= delta,
    }
}
