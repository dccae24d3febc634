//! Branch-and-bound over restricted growth strings.
//!
//! Vertices are assigned in index order; vertex `v` joins an open part or
//! opens the next one. Edge coverage is tracked per part as a multi-word
//! edge bitmask. Three prefix-safe prunes apply:
//!
//! * the part count can grow by at most one per unassigned vertex;
//! * a part that is a transversal with two or more vertices stays that way;
//! * a non-transversal part `P` needs a partner `Q` with `P ∪ Q` a
//!   transversal. Parts only grow by unassigned vertices `U`, so when neither
//!   `P ∪ U` nor any `P ∪ Q ∪ U` (for an open non-transversal `Q`) covers
//!   every edge, no completion can give `P` a partner.
//!
//! The first pass maximises the part count, trying a new part before the
//! open ones. The second pass walks strings in lexicographic order and stops
//! at the first valid partition with exactly the optimal count, which makes
//! the witness the lexicographically least optimal string.

use std::time::Instant;

use crate::error::{Error, Result};
use crate::hypercore::{Hypergraph, Partition, VertexSet};
use crate::transversal::has_trc_partition;

use super::{CtauResult, SearchBudget};

/// Exact C_τ by pruned search.
///
/// Returns [`Error::NoTrcPartition`] when the hypergraph has no trc-partition
/// and [`Error::BudgetExceeded`] when the budget runs out before any valid
/// partition is seen. If it runs out later the best partition so far comes
/// back with `optimal == false`.
pub fn ctau_exact(h: &Hypergraph, budget: &SearchBudget) -> Result<CtauResult> {
    if !has_trc_partition(h) {
        return Err(Error::NoTrcPartition);
    }
    let mut search = Search::new(h, budget);
    search.mode = Mode::Maximize;
    search.visit(0);
    let Some(value) = search.best_count else {
        return Err(if search.aborted {
            Error::BudgetExceeded {
                nodes: search.nodes,
            }
        } else {
            Error::NoTrcPartition
        });
    };
    if search.aborted {
        return Ok(search.result(value, false));
    }

    search.mode = Mode::LexFirst { target: value };
    search.found = false;
    search.visit(0);
    // If the budget runs out here the optimum is still proven; the witness
    // is then the one from the first pass.
    Ok(search.result(value, true))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Maximize,
    LexFirst { target: usize },
}

struct Search {
    n: usize,
    words: usize,
    full: Vec<u64>,
    /// incidence[v * words ..] = edges containing v
    incidence: Vec<u64>,
    /// suffix[d * words ..] = edges touched by vertices d..n
    suffix: Vec<u64>,
    labels: Vec<usize>,
    part_vertices: Vec<VertexSet>,
    part_cover: Vec<u64>,
    saved: Vec<u64>,
    open: usize,
    scratch: Vec<u64>,

    mode: Mode,
    best_count: Option<usize>,
    best_labels: Vec<usize>,
    found: bool,

    nodes: u64,
    node_limit: u64,
    deadline: Option<Instant>,
    aborted: bool,
}

impl Search {
    fn new(h: &Hypergraph, budget: &SearchBudget) -> Self {
        let n = h.n();
        let m = h.edge_count();
        let words = m.div_ceil(64).max(1);
        let mut full = vec![0u64; words];
        let mut incidence = vec![0u64; n * words];
        for (e, edge) in h.edges().iter().enumerate() {
            full[e / 64] |= 1 << (e % 64);
            for v in edge.iter() {
                incidence[v * words + e / 64] |= 1 << (e % 64);
            }
        }
        let mut suffix = vec![0u64; (n + 1) * words];
        for d in (0..n).rev() {
            for w in 0..words {
                suffix[d * words + w] = suffix[(d + 1) * words + w] | incidence[d * words + w];
            }
        }
        Search {
            n,
            words,
            full,
            incidence,
            suffix,
            labels: vec![0; n],
            part_vertices: vec![VertexSet::EMPTY; n],
            part_cover: vec![0; n * words],
            saved: vec![0; n * words],
            open: 0,
            scratch: vec![0; words],
            mode: Mode::Maximize,
            best_count: None,
            best_labels: Vec::new(),
            found: false,
            nodes: 0,
            node_limit: budget.node_limit,
            deadline: budget.time_limit.map(|t| Instant::now() + t),
            aborted: false,
        }
    }

    fn result(&self, value: usize, optimal: bool) -> CtauResult {
        CtauResult {
            value,
            witness: Partition::from_rgs(&self.best_labels),
            nodes_explored: self.nodes,
            optimal,
        }
    }

    fn cover(&self, p: usize) -> &[u64] {
        &self.part_cover[p * self.words..(p + 1) * self.words]
    }

    fn is_full(&self, mask: &[u64]) -> bool {
        mask.iter().zip(&self.full).all(|(a, f)| a == f)
    }

    fn part_is_transversal(&self, p: usize) -> bool {
        self.is_full(self.cover(p))
    }

    fn stop(&self) -> bool {
        self.aborted || (matches!(self.mode, Mode::LexFirst { .. }) && self.found)
    }

    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.node_limit {
            self.aborted = true;
        } else if self.nodes.is_multiple_of(1024) {
            if let Some(deadline) = self.deadline {
                if Instant::now() >= deadline {
                    self.aborted = true;
                }
            }
        }
        !self.aborted
    }

    /// Every open non-transversal part can still acquire a partner once the
    /// vertices from `depth` on are placed.
    fn partners_reachable(&mut self, depth: usize) -> bool {
        let words = self.words;
        let rest = depth * words..(depth + 1) * words;
        for p in 0..self.open {
            if self.part_is_transversal(p) {
                continue;
            }
            for w in 0..words {
                self.scratch[w] = self.part_cover[p * words + w] | self.suffix[rest.start + w];
            }
            if self.is_full(&self.scratch) {
                continue;
            }
            let mut reachable = false;
            for q in 0..self.open {
                if q == p || self.part_is_transversal(q) {
                    continue;
                }
                let cq = &self.part_cover[q * words..(q + 1) * words];
                if self
                    .scratch
                    .iter()
                    .zip(cq)
                    .zip(&self.full)
                    .all(|((a, b), f)| a | b == *f)
                {
                    reachable = true;
                    break;
                }
            }
            if !reachable {
                return false;
            }
        }
        true
    }

    /// Parts vertex `depth` may join, in visiting order. The bound is
    /// rechecked per part because the incumbent can improve mid-loop.
    fn candidate_parts(&self) -> Vec<usize> {
        match self.mode {
            Mode::Maximize => std::iter::once(self.open).chain(0..self.open).collect(),
            Mode::LexFirst { .. } => (0..=self.open).collect(),
        }
    }

    fn admissible(&self, depth: usize, p: usize) -> bool {
        let count = self.open + usize::from(p == self.open);
        let remaining_after = self.n - depth - 1;
        match self.mode {
            Mode::Maximize => count + remaining_after > self.best_count.unwrap_or(0),
            Mode::LexFirst { target } => count <= target && count + remaining_after >= target,
        }
    }

    fn visit(&mut self, depth: usize) {
        if depth == self.n {
            self.leaf();
            return;
        }
        let words = self.words;
        for p in self.candidate_parts() {
            if !self.admissible(depth, p) {
                continue;
            }
            if self.stop() || !self.tick() {
                return;
            }
            let opening = p == self.open;
            if opening {
                self.open += 1;
            }
            let slot = p * words..(p + 1) * words;
            let save = depth * words..(depth + 1) * words;
            self.saved[save.clone()].copy_from_slice(&self.part_cover[slot.clone()]);
            for w in 0..words {
                self.part_cover[slot.start + w] |= self.incidence[depth * words + w];
            }
            self.part_vertices[p].insert(depth);
            self.labels[depth] = p;

            let dead = self.part_vertices[p].len() > 1 && self.part_is_transversal(p);
            if !dead && self.partners_reachable(depth + 1) {
                self.visit(depth + 1);
            }

            self.part_vertices[p].remove(depth);
            self.part_cover[slot].copy_from_slice(&self.saved[save]);
            if opening {
                self.open -= 1;
            }
            if self.stop() {
                return;
            }
        }
    }

    fn leaf(&mut self) {
        if !self.is_valid_leaf() {
            return;
        }
        match self.mode {
            Mode::Maximize => {
                if self.best_count.is_none_or(|b| self.open > b) {
                    self.best_count = Some(self.open);
                    self.best_labels = self.labels.clone();
                }
            }
            Mode::LexFirst { target } => {
                if self.open == target {
                    self.best_labels = self.labels.clone();
                    self.found = true;
                }
            }
        }
    }

    fn is_valid_leaf(&self) -> bool {
        (0..self.open).all(|p| {
            if self.part_is_transversal(p) {
                return self.part_vertices[p].len() == 1;
            }
            let cp = self.cover(p);
            (0..self.open).any(|q| {
                q != p
                    && !self.part_is_transversal(q)
                    && cp
                        .iter()
                        .zip(self.cover(q))
                        .zip(&self.full)
                        .all(|((a, b), f)| a | b == *f)
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coalition::{ctau_naive, validate_trc_partition};

    fn cases() -> Vec<Hypergraph> {
        vec![
            Hypergraph::new(4, [[0, 1, 2, 3]]).unwrap(),
            Hypergraph::new(5, [[0, 1, 2], [1, 3, 4], [0, 2, 4], [2, 3, 4]]).unwrap(),
            Hypergraph::new(4, [[0, 1, 2], [0, 1, 3], [0, 2, 3]]).unwrap(),
            Hypergraph::new(2, [[0, 1]]).unwrap(),
            Hypergraph::new(3, Vec::<Vec<usize>>::new()).unwrap(),
        ]
    }

    #[test]
    fn agrees_with_enumeration_on_small_cases() {
        for h in cases() {
            let naive = ctau_naive(&h, 8).unwrap();
            let exact = ctau_exact(&h, &SearchBudget::default()).unwrap();
            assert_eq!(exact.value, naive.value);
            assert_eq!(exact.witness, naive.witness, "tie-break differs on {h:?}");
            assert!(exact.optimal);
            assert!(validate_trc_partition(&h, &exact.witness).unwrap().valid);
        }
    }

    #[test]
    fn no_partition_is_an_error() {
        let h = Hypergraph::new(3, [&[0, 1][..], &[0, 1, 2][..]]).unwrap();
        assert_eq!(
            ctau_exact(&h, &SearchBudget::default()),
            Err(Error::NoTrcPartition)
        );
    }

    #[test]
    fn tiny_budget_fails_soft() {
        let h = Hypergraph::new(5, [[0, 1, 2], [1, 3, 4], [0, 2, 4], [2, 3, 4]]).unwrap();
        assert_eq!(
            ctau_exact(&h, &SearchBudget::nodes(2)),
            Err(Error::BudgetExceeded { nodes: 3 })
        );
        // Some limits stop after an incumbent exists but before it is proven.
        let edges: Vec<Vec<usize>> = itertools::Itertools::combinations(0..7usize, 3).collect();
        let k73 = Hypergraph::new(7, edges).unwrap();
        let mut partial_seen = false;
        for limit in 1..500 {
            match ctau_exact(&k73, &SearchBudget::nodes(limit)) {
                Err(Error::BudgetExceeded { .. }) => {}
                Ok(r) => {
                    assert!(validate_trc_partition(&k73, &r.witness).unwrap().valid);
                    assert!(r.value <= 4);
                    if r.optimal {
                        assert_eq!(r.value, 4);
                    } else {
                        partial_seen = true;
                    }
                }
                Err(e) => panic!("unexpected {e}"),
            }
        }
        assert!(partial_seen);
    }

    #[test]
    fn more_than_sixty_four_edges() {
        // K_8^4 has 70 edges, so coverage spans two words
        let edges: Vec<Vec<usize>> = itertools::Itertools::combinations(0..8usize, 4).collect();
        let h = Hypergraph::new(8, edges).unwrap();
        let exact = ctau_exact(&h, &SearchBudget::default()).unwrap();
        assert_eq!(exact.value, 5);
        assert_eq!(exact.value, ctau_naive(&h, 8).unwrap().value);
        assert!(validate_trc_partition(&h, &exact.witness).unwrap().valid);
    }
}
