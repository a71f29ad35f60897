//! Shared test oracle: exhaustive associativity check over the full complex
//! algebra (all 2^(n+1) elements), independent of the atom-level checker.

use ranra::{CompositionTable, CycleStructure};

/// Composes every element pair additively from the atom table and verifies
/// `(X;Y);Z = X;(Y;Z)` over all element triples. Only sensible for tiny `n`.
pub fn full_algebra_associative(s: &CycleStructure) -> bool {
    let atoms = s.n() + 1;
    assert!(atoms <= 12, "oracle is exponential in the atom count");
    let t = CompositionTable::build(s);
    let mut entry = vec![0u16; atoms * atoms];
    for u in 0..atoms {
        for v in 0..atoms {
            let mut mask = 0u16;
            for q in t.entry(u, v).iter() {
                mask |= 1 << q;
            }
            entry[u * atoms + v] = mask;
        }
    }

    let size = 1usize << atoms;
    let mut comp = vec![0u16; size * size];
    for x in 0..size {
        for y in 0..size {
            let mut acc = 0u16;
            let mut xm = x;
            while xm != 0 {
                let u = xm.trailing_zeros() as usize;
                xm &= xm - 1;
                let mut ym = y;
                while ym != 0 {
                    let v = ym.trailing_zeros() as usize;
                    ym &= ym - 1;
                    acc |= entry[u * atoms + v];
                }
            }
            comp[x * size + y] = acc;
        }
    }

    for x in 0..size {
        for y in 0..size {
            let xy = comp[x * size + y] as usize;
            for z in 0..size {
                let yz = comp[y * size + z] as usize;
                if comp[xy * size + z] != comp[x * size + yz] {
                    return false;
                }
            }
        }
    }
    true
}
