//! Transversal coalitions, trc-partition validation, the coalition graph,
//! and the two exact solvers for the transversal coalition number.
//!
//! [`ctau_naive`] enumerates every set partition and runs
//! [`validate_trc_partition`] on each; it is the reference the pruned
//! [`ctau_exact`] is checked against. The two share no search code.

mod rgs;
mod search;

use std::collections::BTreeSet;
use std::time::Duration;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypercore::{Hypergraph, Partition, VertexSet};
use crate::transversal::{has_trc_partition, is_transversal};

pub use rgs::RestrictedGrowth;
pub use search::ctau_exact;

/// Vertex limit for [`ctau_naive`] unless the caller raises it.
pub const DEFAULT_NAIVE_LIMIT: usize = 8;

/// Default node limit for [`ctau_exact`].
pub const DEFAULT_NODE_LIMIT: u64 = 50_000_000;

/// `true` iff neither set is a transversal but their union is.
pub fn is_coalition(h: &Hypergraph, a: VertexSet, b: VertexSet) -> Result<bool> {
    if a.intersects(b) {
        return Err(Error::OverlappingSets);
    }
    Ok(!is_transversal(h, a)? && !is_transversal(h, b)? && is_transversal(h, a | b)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InvalidReason {
    /// A transversal with two or more vertices; it cannot be a coalition
    /// partner either.
    NonSingletonTransversal,
    NoPartner,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "role", rename_all = "snake_case")]
pub enum PartRole {
    SingletonTransversal,
    CoalitionMember { partners: Vec<usize> },
    Invalid { reason: InvalidReason },
}

impl PartRole {
    pub fn is_valid(&self) -> bool {
        !matches!(self, PartRole::Invalid { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrcVerdict {
    pub valid: bool,
    pub roles: Vec<PartRole>,
    /// First failing part, if any.
    pub violation: Option<(usize, InvalidReason)>,
}

/// Classifies every part of `partition`.
pub fn validate_trc_partition(h: &Hypergraph, partition: &Partition) -> Result<TrcVerdict> {
    h.check_partition(partition)
        .map_err(Error::InvalidPartition)?;
    let parts = partition.parts();
    let mut roles = Vec::with_capacity(parts.len());
    for (i, &part) in parts.iter().enumerate() {
        let role = if is_transversal(h, part)? {
            if part.len() == 1 {
                PartRole::SingletonTransversal
            } else {
                PartRole::Invalid {
                    reason: InvalidReason::NonSingletonTransversal,
                }
            }
        } else {
            let mut partners = Vec::new();
            for (j, &other) in parts.iter().enumerate() {
                if j != i && is_coalition(h, part, other)? {
                    partners.push(j);
                }
            }
            if partners.is_empty() {
                PartRole::Invalid {
                    reason: InvalidReason::NoPartner,
                }
            } else {
                PartRole::CoalitionMember { partners }
            }
        };
        roles.push(role);
    }
    let violation = roles.iter().enumerate().find_map(|(i, role)| match role {
        PartRole::Invalid { reason } => Some((i, *reason)),
        _ => None,
    });
    Ok(TrcVerdict {
        valid: violation.is_none(),
        roles,
        violation,
    })
}

/// Parts as nodes, coalition partners as edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoalitionGraph {
    pub part_count: usize,
    /// Unordered pairs stored as `(i, j)` with `i < j`.
    pub adjacency: BTreeSet<(usize, usize)>,
}

impl CoalitionGraph {
    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.adjacency.contains(&(i.min(j), i.max(j)))
    }

    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        (0..self.part_count)
            .filter(|&j| j != i && self.contains(i, j))
            .collect()
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adjacency
            .iter()
            .filter(|&&(a, b)| a == i || b == i)
            .count()
    }
}

pub fn coalition_graph(h: &Hypergraph, partition: &Partition) -> Result<CoalitionGraph> {
    h.check_partition(partition)
        .map_err(Error::InvalidPartition)?;
    let parts = partition.parts();
    let mut adjacency = BTreeSet::new();
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            if is_coalition(h, parts[i], parts[j])? {
                adjacency.insert((i, j));
            }
        }
    }
    Ok(CoalitionGraph {
        part_count: parts.len(),
        adjacency,
    })
}

/// Transversal coalition number with a witness partition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CtauResult {
    pub value: usize,
    pub witness: Partition,
    pub nodes_explored: u64,
    /// `false` when the search budget ran out; `value` is then only a lower
    /// bound.
    pub optimal: bool,
}

/// Limits for [`ctau_exact`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub node_limit: u64,
    pub time_limit: Option<Duration>,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            node_limit: DEFAULT_NODE_LIMIT,
            time_limit: None,
        }
    }
}

impl SearchBudget {
    pub fn nodes(node_limit: u64) -> Self {
        SearchBudget {
            node_limit,
            time_limit: None,
        }
    }
}

/// Walks all set partitions in restricted growth order and returns the
/// first one of maximum order that validates, with the number of partitions
/// visited. Applies no existence precondition.
pub fn max_trc_partition_by_enumeration(h: &Hypergraph) -> (Option<Partition>, u64) {
    let mut best: Option<Partition> = None;
    let mut visited = 0u64;
    let mut strings = RestrictedGrowth::new(h.n());
    while strings.advance() {
        visited += 1;
        if best.as_ref().is_some_and(|b| b.order() >= strings.part_count()) {
            continue;
        }
        let candidate = Partition::from_rgs(strings.labels());
        let verdict = validate_trc_partition(h, &candidate).expect("rgs partitions are well formed");
        if verdict.valid {
            best = Some(candidate);
        }
    }
    (best, visited)
}

/// Exhaustive C_τ for small hypergraphs.
pub fn ctau_naive(h: &Hypergraph, vertex_limit: usize) -> Result<CtauResult> {
    if h.n() > vertex_limit {
        return Err(Error::TooLarge {
            n: h.n(),
            limit: vertex_limit,
        });
    }
    if !has_trc_partition(h) {
        return Err(Error::NoTrcPartition);
    }
    match max_trc_partition_by_enumeration(h) {
        (Some(witness), nodes_explored) => Ok(CtauResult {
            value: witness.order(),
            witness,
            nodes_explored,
            optimal: true,
        }),
        (None, _) => Err(Error::NoTrcPartition),
    }
}
