//! Transversals (hitting sets): the predicate, the exact transversal number,
//! inclusion-minimal transversal enumeration, and the existence test for
//! transversal coalition partitions.

use serde::Serialize;

use crate::error::Result;
use crate::hypercore::{Hypergraph, VertexSet};

/// Default cap for [`minimal_transversals`].
pub const DEFAULT_MINIMAL_CAP: usize = 10_000;

/// `true` when `set` meets every edge. Every set, the empty one included,
/// is a transversal of an edgeless hypergraph.
pub fn is_transversal(h: &Hypergraph, set: VertexSet) -> Result<bool> {
    h.check_set(set)?;
    Ok(h.is_hit_by(set))
}

/// Minimum transversal size with one optimal witness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TauResult {
    pub size: usize,
    pub witness: VertexSet,
}

/// Exact transversal number.
///
/// Branches on the lowest-indexed edge the current choice misses, trying its
/// vertices in ascending order. The witness is the first optimal set reached
/// in that order, so it is reproducible.
pub fn tau(h: &Hypergraph) -> TauResult {
    struct Search<'a> {
        edges: &'a [VertexSet],
        best: VertexSet,
        best_size: usize,
    }

    impl Search<'_> {
        fn run(&mut self, chosen: VertexSet, count: usize) {
            match self.edges.iter().find(|e| !e.intersects(chosen)) {
                None => {
                    if count < self.best_size {
                        self.best = chosen;
                        self.best_size = count;
                    }
                }
                Some(&edge) => {
                    if count + 1 >= self.best_size {
                        return;
                    }
                    for v in edge {
                        self.run(chosen | VertexSet::singleton(v), count + 1);
                    }
                }
            }
        }
    }

    let mut search = Search {
        edges: h.edges(),
        best: VertexSet::EMPTY,
        best_size: usize::MAX,
    };
    search.run(VertexSet::EMPTY, 0);
    TauResult {
        size: search.best_size,
        witness: search.best,
    }
}

/// `true` iff no edge other than the full vertex set lies inside every
/// edge. Such an edge would have to equal the common intersection of all
/// edges, so only that intersection is tested.
pub fn has_trc_partition(h: &Hypergraph) -> bool {
    let common = h.edge_intersection();
    let everything = h.vertices();
    !h.edges()
        .iter()
        .any(|&e| e.is_subset(common) && e != everything)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinimalTransversals {
    pub sets: Vec<VertexSet>,
    /// Set when enumeration stopped at the cap with more sets remaining.
    pub truncated: bool,
}

/// All inclusion-minimal transversals, at most `cap` of them.
///
/// Each set is produced once: at the first missed edge `e` the search picks a
/// vertex `v` of `e` and forbids the vertices of `e` tried before it. A branch
/// dies as soon as a chosen vertex has no private edge left, since adding
/// vertices can only take private edges away.
pub fn minimal_transversals(h: &Hypergraph, cap: usize) -> MinimalTransversals {
    struct Enumeration<'a> {
        edges: &'a [VertexSet],
        cap: usize,
        out: Vec<VertexSet>,
        truncated: bool,
    }

    impl Enumeration<'_> {
        fn all_private(&self, chosen: VertexSet) -> bool {
            chosen.iter().all(|u| {
                let alone = VertexSet::singleton(u);
                self.edges.iter().any(|&e| e & chosen == alone)
            })
        }

        fn run(&mut self, chosen: VertexSet, excluded: VertexSet) {
            if self.truncated {
                return;
            }
            match self.edges.iter().find(|e| !e.intersects(chosen)) {
                None => {
                    if self.out.len() == self.cap {
                        self.truncated = true;
                    } else {
                        self.out.push(chosen);
                    }
                }
                Some(&edge) => {
                    let mut excluded = excluded;
                    for v in edge - excluded {
                        let next = chosen | VertexSet::singleton(v);
                        if self.all_private(next) {
                            self.run(next, excluded);
                        }
                        excluded.insert(v);
                    }
                }
            }
        }
    }

    let mut enumeration = Enumeration {
        edges: h.edges(),
        cap,
        out: Vec::new(),
        truncated: false,
    };
    enumeration.run(VertexSet::EMPTY, VertexSet::EMPTY);
    MinimalTransversals {
        sets: enumeration.out,
        truncated: enumeration.truncated,
    }
}
