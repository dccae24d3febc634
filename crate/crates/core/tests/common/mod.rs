//! Brute-force oracles and fixed instances shared by the integration tests.
//!
//! The oracles work on raw `u64` masks and reimplement every predicate from
//! its definition, so they share no code with the library under test.

#![allow(dead_code)]

use trc_core::{Hypergraph, Partition, VertexSet};

/// The 5-vertex 3-uniform example with edges {u1,u2,u3}, {u2,u4,u5},
/// {u1,u3,u5}, {u3,u4,u5}.
pub fn intro() -> Hypergraph {
    Hypergraph::new(5, [[0, 1, 2], [1, 3, 4], [0, 2, 4], [2, 3, 4]]).unwrap()
}

/// C_3 on u1..u4: {u1,u2,u3}, {u1,u2,u4}, {u1,u3,u4}.
pub fn c3() -> Hypergraph {
    Hypergraph::new(4, [[0, 1, 2], [0, 1, 3], [0, 2, 3]]).unwrap()
}

/// The self-complementary 5-vertex example.
pub fn self_complementary() -> Hypergraph {
    Hypergraph::new(5, [[0, 1, 4], [0, 3, 4], [1, 2, 4], [0, 2, 3], [1, 2, 3]]).unwrap()
}

pub fn k44() -> Hypergraph {
    Hypergraph::new(4, [[0, 1, 2, 3]]).unwrap()
}

/// Sensors S1..S5 over four regions.
pub fn sensors() -> Hypergraph {
    Hypergraph::new(5, [[0, 1, 2], [1, 2, 3], [2, 3, 4], [0, 3, 4]]).unwrap()
}

pub fn edge_masks(h: &Hypergraph) -> Vec<u64> {
    h.edges().iter().map(|e| e.bits()).collect()
}

pub fn hits_all(edges: &[u64], set: u64) -> bool {
    edges.iter().all(|&e| e & set != 0)
}

/// Minimum transversal size over all 2^n subsets.
pub fn brute_tau(h: &Hypergraph) -> usize {
    let edges = edge_masks(h);
    (0u64..1 << h.n())
        .filter(|&s| hits_all(&edges, s))
        .map(|s| s.count_ones() as usize)
        .min()
        .expect("the full vertex set is a transversal")
}

/// All inclusion-minimal transversals, sorted by mask.
pub fn brute_minimal_transversals(h: &Hypergraph) -> Vec<u64> {
    let edges = edge_masks(h);
    (0u64..1 << h.n())
        .filter(|&s| hits_all(&edges, s))
        .filter(|&s| (0..h.n()).all(|v| s & (1 << v) == 0 || !hits_all(&edges, s & !(1 << v))))
        .collect()
}

/// Theorem 1 checked pairwise: fails iff some edge other than V lies inside
/// every edge.
pub fn brute_has_trc(h: &Hypergraph) -> bool {
    let edges = edge_masks(h);
    let full = if h.n() == 64 { u64::MAX } else { (1u64 << h.n()) - 1 };
    !edges
        .iter()
        .any(|&e| e != full && edges.iter().all(|&f| e & f == e))
}

/// Definition-level trc check on raw part masks.
pub fn brute_is_trc(edges: &[u64], parts: &[u64]) -> bool {
    parts.iter().enumerate().all(|(i, &p)| {
        let transversal = hits_all(edges, p);
        if transversal {
            return p.count_ones() == 1;
        }
        parts.iter().enumerate().any(|(j, &q)| {
            j != i && !hits_all(edges, q) && hits_all(edges, p | q)
        })
    })
}

/// Maximum trc-partition order and the lexicographically least restricted
/// growth string attaining it, by plain recursion over label assignments.
pub fn brute_ctau(h: &Hypergraph) -> Option<(usize, Vec<usize>)> {
    fn go(
        v: usize,
        n: usize,
        labels: &mut Vec<usize>,
        parts: &mut Vec<u64>,
        edges: &[u64],
        best: &mut Option<(usize, Vec<usize>)>,
    ) {
        if v == n {
            let better = best.as_ref().is_none_or(|(k, _)| parts.len() > *k);
            if better && brute_is_trc(edges, parts) {
                *best = Some((parts.len(), labels.clone()));
            }
            return;
        }
        for label in 0..=parts.len() {
            if label == parts.len() {
                parts.push(0);
            }
            parts[label] |= 1 << v;
            labels.push(label);
            go(v + 1, n, labels, parts, edges, best);
            labels.pop();
            parts[label] &= !(1 << v);
            if parts[label] == 0 {
                parts.pop();
            }
        }
    }
    let mut best = None;
    go(0, h.n(), &mut Vec::new(), &mut Vec::new(), &edge_masks(h), &mut best);
    best
}

pub fn partition_masks(p: &Partition) -> Vec<u64> {
    p.parts().iter().map(|s| s.bits()).collect()
}

pub fn set(vs: &[usize]) -> VertexSet {
    vs.iter().copied().collect()
}

/// Deterministic Fisher-Yates driven by a 64-bit LCG, so permutation tests
/// do not depend on the library's RNG choices.
pub fn permutation(n: usize, seed: u64) -> Vec<usize> {
    let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let j = ((state >> 33) % (i as u64 + 1)) as usize;
        perm.swap(i, j);
    }
    perm
}
