//! Enumeration oracle for the recognizer. It shares only the condition
//! checker with the code under test: no propagation, no variable ordering.
#![allow(dead_code)]

use pseudovis::{all_candidates, check_conditions, BlockerAssignment, Pair, VisGraph};

/// Every total assignment, in odometer order over the lexicographically
/// sorted pairs. Returns the first that satisfies all conditions.
pub fn enumerate_all(g: &VisGraph) -> Option<BlockerAssignment> {
    let cands = all_candidates(g);
    let slots: Vec<(Pair, Vec<usize>)> =
        cands.iter().map(|(p, c)| (p, c.iter().collect())).collect();
    if slots.iter().any(|(_, c)| c.is_empty()) {
        return None;
    }
    let mut idx = vec![0usize; slots.len()];
    loop {
        let a: BlockerAssignment = slots
            .iter()
            .zip(&idx)
            .map(|((p, c), &k)| (*p, c[k]))
            .collect();
        if check_conditions(g, &a).unwrap().is_empty() {
            return Some(a);
        }
        // advance the odometer
        let mut d = 0;
        loop {
            if d == slots.len() {
                return None;
            }
            idx[d] += 1;
            if idx[d] < slots[d].1.len() {
                break;
            }
            idx[d] = 0;
            d += 1;
        }
    }
}

/// Number of total assignments [`enumerate_all`] may visit.
pub fn assignment_space(g: &VisGraph) -> u128 {
    all_candidates(g)
        .iter()
        .map(|(_, c)| c.len() as u128)
        .product()
}

/// Same answer as [`enumerate_all`], cutting a branch as soon as the partial
/// assignment violates a condition.
pub fn enumerate_pruned(g: &VisGraph) -> Option<BlockerAssignment> {
    let cands = all_candidates(g);
    let slots: Vec<(Pair, Vec<usize>)> =
        cands.iter().map(|(p, c)| (p, c.iter().collect())).collect();
    fn go(g: &VisGraph, slots: &[(Pair, Vec<usize>)], a: &mut BlockerAssignment, d: usize) -> bool {
        if !check_conditions(g, a).unwrap().is_empty() {
            return false;
        }
        if d == slots.len() {
            return true;
        }
        let (p, vals) = &slots[d];
        for &v in vals {
            a.insert(*p, v);
            if go(g, slots, a, d + 1) {
                return true;
            }
        }
        // undo
        let rest: BlockerAssignment = a.iter().filter(|(q, _)| q != p).collect();
        *a = rest;
        false
    }
    let mut a = BlockerAssignment::new();
    go(g, &slots, &mut a, 0).then_some(a)
}

/// Brute-force verdict: full enumeration when the space is small enough,
/// pruned enumeration otherwise.
pub fn brute_force_accepts(g: &VisGraph) -> bool {
    if assignment_space(g) <= 1 << 12 {
        enumerate_all(g).is_some()
    } else {
        enumerate_pruned(g).is_some()
    }
}

/// Graph on `n` vertices: the cycle plus chords selected by `mask` bits.
pub fn graph_from_mask(n: usize, mask: u64) -> VisGraph {
    let mut pairs: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    let mut bit = 0;
    for i in 0..n {
        for j in i + 2..n {
            if i == 0 && j == n - 1 {
                continue;
            }
            if mask >> bit & 1 == 1 {
                pairs.push((i, j));
            }
            bit += 1;
        }
    }
    VisGraph::new(n, &pairs).unwrap()
}
