//! Hypergraph data model: vertex sets, hypergraphs, partitions and labelings.
//!
//! Vertices are the contiguous integers `0..n`. A [`VertexSet`] is a single
//! machine word, so hypergraphs are limited to [`MAX_VERTICES`] vertices.
//! Every structure here is immutable once built and can be shared freely
//! between threads.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{BitAnd, BitOr, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// 0-based vertex index.
pub type VertexId = usize;

/// Largest vertex count a [`VertexSet`] can represent.
pub const MAX_VERTICES: usize = 64;

/// A set of vertices stored as a bitmask.
///
/// Ordering is lexicographic on the ascending member sequence, so
/// `{0,1} < {0,1,2} < {0,2} < {1}`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    #[inline]
    pub const fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    #[inline]
    pub const fn bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn singleton(v: VertexId) -> Self {
        assert!(v < MAX_VERTICES, "vertex {v} exceeds bitmask capacity");
        VertexSet(1 << v)
    }

    /// The set `{0, .., n-1}`.
    #[inline]
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_VERTICES, "{n} vertices exceed bitmask capacity");
        if n == MAX_VERTICES {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    #[inline]
    pub fn contains(self, v: VertexId) -> bool {
        v < MAX_VERTICES && self.0 >> v & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, v: VertexId) {
        *self = *self | VertexSet::singleton(v);
    }

    #[inline]
    pub fn remove(&mut self, v: VertexId) {
        if v < MAX_VERTICES {
            self.0 &= !(1 << v);
        }
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn union(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & !other.0)
    }

    #[inline]
    pub fn intersects(self, other: VertexSet) -> bool {
        self.0 & other.0 != 0
    }

    #[inline]
    pub fn is_disjoint(self, other: VertexSet) -> bool {
        !self.intersects(other)
    }

    #[inline]
    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn first(self) -> Option<VertexId> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    #[inline]
    pub fn last(self) -> Option<VertexId> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros() as usize)
    }

    /// Members in ascending order.
    pub fn iter(self) -> Members {
        Members(self.0)
    }

    pub fn to_vec(self) -> Vec<VertexId> {
        self.iter().collect()
    }
}

/// Iterator over the members of a [`VertexSet`], ascending.
#[derive(Clone)]
pub struct Members(u64);

impl Iterator for Members {
    type Item = VertexId;

    #[inline]
    fn next(&mut self) -> Option<VertexId> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl ExactSizeIterator for Members {}

impl IntoIterator for VertexSet {
    type Item = VertexId;
    type IntoIter = Members;

    fn into_iter(self) -> Members {
        self.iter()
    }
}

impl FromIterator<VertexId> for VertexSet {
    fn from_iter<I: IntoIterator<Item = VertexId>>(iter: I) -> Self {
        let mut set = VertexSet::EMPTY;
        for v in iter {
            set.insert(v);
        }
        set
    }
}

impl<const K: usize> From<[VertexId; K]> for VertexSet {
    fn from(members: [VertexId; K]) -> Self {
        members.into_iter().collect()
    }
}

impl BitOr for VertexSet {
    type Output = VertexSet;
    fn bitor(self, rhs: VertexSet) -> VertexSet {
        self.union(rhs)
    }
}

impl BitAnd for VertexSet {
    type Output = VertexSet;
    fn bitand(self, rhs: VertexSet) -> VertexSet {
        self.intersection(rhs)
    }
}

impl Sub for VertexSet {
    type Output = VertexSet;
    fn sub(self, rhs: VertexSet) -> VertexSet {
        self.difference(rhs)
    }
}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let members = Vec::<VertexId>::deserialize(deserializer)?;
        if let Some(&v) = members.iter().find(|&&v| v >= MAX_VERTICES) {
            return Err(serde::de::Error::custom(format!(
                "vertex {v} exceeds bitmask capacity"
            )));
        }
        Ok(members.into_iter().collect())
    }
}

/// A hypergraph on the vertices `0..n`.
///
/// Edges are nonempty, pairwise distinct and kept in first-occurrence order.
/// Equality ignores edge order: two hypergraphs are equal when they have the
/// same vertex count and the same set of edges.
#[derive(Clone, Debug)]
pub struct Hypergraph {
    n: usize,
    edges: Vec<VertexSet>,
}

impl Hypergraph {
    /// Builds a hypergraph from raw vertex lists, dropping duplicate edges.
    pub fn new<I, E>(n: usize, raw_edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[VertexId]>,
    {
        Self::check_order(n)?;
        let mut edges = Vec::new();
        for (i, raw) in raw_edges.into_iter().enumerate() {
            let raw = raw.as_ref();
            if raw.is_empty() {
                return Err(Error::EmptyEdge { edge: i });
            }
            if let Some(&vertex) = raw.iter().find(|&&v| v >= n) {
                return Err(Error::VertexOutOfRange { vertex, n });
            }
            edges.push(raw.iter().copied().collect());
        }
        Self::from_edges(n, edges)
    }

    /// Builds a hypergraph from already-formed vertex sets.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = VertexSet>) -> Result<Self> {
        Self::check_order(n)?;
        let full = VertexSet::full(n);
        let mut kept: Vec<VertexSet> = Vec::new();
        for (i, edge) in edges.into_iter().enumerate() {
            if edge.is_empty() {
                return Err(Error::EmptyEdge { edge: i });
            }
            if !edge.is_subset(full) {
                let vertex = (edge - full).first().unwrap_or_default();
                return Err(Error::VertexOutOfRange { vertex, n });
            }
            if !kept.contains(&edge) {
                kept.push(edge);
            }
        }
        Ok(Hypergraph { n, edges: kept })
    }

    fn check_order(n: usize) -> Result<()> {
        if n == 0 {
            return Err(Error::NoVertices);
        }
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices {
                n,
                max: MAX_VERTICES,
            });
        }
        Ok(())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edges(&self) -> &[VertexSet] {
        &self.edges
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// `Some(r)` when every edge has exactly `r` vertices. An edgeless
    /// hypergraph has no uniformity.
    pub fn uniformity(&self) -> Option<usize> {
        let r = self.edges.first()?.len();
        self.edges.iter().all(|e| e.len() == r).then_some(r)
    }

    /// Intersection of all edges; the full vertex set when there are none.
    pub fn edge_intersection(&self) -> VertexSet {
        self.edges
            .iter()
            .fold(self.vertices(), |acc, &e| acc & e)
    }

    /// `true` when `set` meets every edge. Does not range-check `set`.
    #[inline]
    pub fn is_hit_by(&self, set: VertexSet) -> bool {
        self.edges.iter().all(|e| e.intersects(set))
    }

    pub fn check_set(&self, set: VertexSet) -> Result<()> {
        match (set - self.vertices()).first() {
            Some(vertex) => Err(Error::VertexOutOfRange { vertex, n: self.n }),
            None => Ok(()),
        }
    }

    /// Structural check of a partition against this hypergraph's vertex set.
    pub fn check_partition(&self, partition: &Partition) -> std::result::Result<(), PartitionDefect> {
        if partition.parts.is_empty() {
            return Err(PartitionDefect::NoParts);
        }
        let full = self.vertices();
        let mut seen = VertexSet::EMPTY;
        for (i, &part) in partition.parts.iter().enumerate() {
            if part.is_empty() {
                return Err(PartitionDefect::EmptyPart { part: i });
            }
            if let Some(vertex) = (part - full).first() {
                return Err(PartitionDefect::OutOfRange { part: i, vertex });
            }
            if part.intersects(seen) {
                let first = partition.parts[..i]
                    .iter()
                    .position(|p| p.intersects(part))
                    .unwrap_or_default();
                return Err(PartitionDefect::Overlap { first, second: i });
            }
            seen = seen | part;
        }
        match (full - seen).first() {
            Some(vertex) => Err(PartitionDefect::Uncovered { vertex }),
            None => Ok(()),
        }
    }

    pub fn is_valid_partition(&self, partition: &Partition) -> bool {
        self.check_partition(partition).is_ok()
    }

    /// Renames every vertex `v` to `perm[v]`. `perm` must be a permutation of `0..n`.
    pub fn relabel(&self, perm: &[VertexId]) -> Hypergraph {
        assert_eq!(perm.len(), self.n, "permutation length");
        Hypergraph {
            n: self.n,
            edges: self.edges.iter().map(|&e| permute_set(e, perm)).collect(),
        }
    }

    fn sorted_edges(&self) -> Vec<VertexSet> {
        let mut edges = self.edges.clone();
        edges.sort();
        edges
    }
}

impl PartialEq for Hypergraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.edges.len() == other.edges.len()
            && self.sorted_edges() == other.sorted_edges()
    }
}

impl Eq for Hypergraph {}

pub(crate) fn permute_set(set: VertexSet, perm: &[VertexId]) -> VertexSet {
    set.iter().map(|v| perm[v]).collect()
}

/// Why a list of vertex sets fails to partition the vertex set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "code", rename_all = "snake_case")]
pub enum PartitionDefect {
    NoParts,
    EmptyPart { part: usize },
    OutOfRange { part: usize, vertex: VertexId },
    Overlap { first: usize, second: usize },
    Uncovered { vertex: VertexId },
}

impl PartitionDefect {
    /// Stable machine-readable reason code.
    pub fn code(&self) -> &'static str {
        match self {
            PartitionDefect::NoParts => "no_parts",
            PartitionDefect::EmptyPart { .. } => "empty_part",
            PartitionDefect::OutOfRange { .. } => "out_of_range",
            PartitionDefect::Overlap { .. } => "overlap",
            PartitionDefect::Uncovered { .. } => "uncovered",
        }
    }
}

impl fmt::Display for PartitionDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            PartitionDefect::NoParts => write!(f, "partition has no parts"),
            PartitionDefect::EmptyPart { part } => write!(f, "part {part} is empty"),
            PartitionDefect::OutOfRange { part, vertex } => {
                write!(f, "part {part} contains out-of-range vertex {vertex}")
            }
            PartitionDefect::Overlap { first, second } => {
                write!(f, "parts {first} and {second} overlap")
            }
            PartitionDefect::Uncovered { vertex } => write!(f, "vertex {vertex} is in no part"),
        }
    }
}

/// An ordered list of vertex sets, intended to partition a hypergraph's
/// vertices. Construction does not validate; use
/// [`Hypergraph::check_partition`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition {
    parts: Vec<VertexSet>,
}

impl Partition {
    pub fn new(parts: Vec<VertexSet>) -> Self {
        Partition { parts }
    }

    pub fn singletons(n: usize) -> Self {
        Partition {
            parts: (0..n).map(VertexSet::singleton).collect(),
        }
    }

    /// The one-part partition `{V}`.
    pub fn whole(n: usize) -> Self {
        Partition {
            parts: vec![VertexSet::full(n)],
        }
    }

    /// Decodes a restricted growth string: vertex `v` goes to part `rgs[v]`.
    /// Parts are ordered by label.
    pub fn from_rgs(rgs: &[usize]) -> Self {
        let count = rgs.iter().max().map_or(0, |&m| m + 1);
        let mut parts = vec![VertexSet::EMPTY; count];
        for (v, &label) in rgs.iter().enumerate() {
            parts[label].insert(v);
        }
        Partition { parts }
    }

    /// Canonical restricted growth string over `0..n`: parts are numbered by
    /// their smallest vertex. `None` if some vertex is in no part.
    pub fn to_rgs(&self, n: usize) -> Option<Vec<usize>> {
        let mut order: Vec<&VertexSet> = self.parts.iter().filter(|p| !p.is_empty()).collect();
        order.sort_by_key(|p| p.first());
        let mut rgs = vec![usize::MAX; n];
        for (label, part) in order.into_iter().enumerate() {
            for v in part.iter() {
                if v < n {
                    rgs[v] = label;
                }
            }
        }
        rgs.iter().all(|&l| l != usize::MAX).then_some(rgs)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.parts.len()
    }

    #[inline]
    pub fn parts(&self) -> &[VertexSet] {
        &self.parts
    }

    pub fn relabel(&self, perm: &[VertexId]) -> Partition {
        Partition {
            parts: self.parts.iter().map(|&p| permute_set(p, perm)).collect(),
        }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("]")
    }
}

/// Bijection between role labels (`u3`, `x2_1`, `center`, ...) and vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Labeling {
    names: Vec<String>,
    index: HashMap<String, VertexId>,
}

impl Labeling {
    /// `names[v]` becomes the label of vertex `v`. Labels must be unique,
    /// nonempty, and free of whitespace and `#`.
    pub fn new(names: Vec<String>) -> Result<Self> {
        let mut index = HashMap::with_capacity(names.len());
        for (v, name) in names.iter().enumerate() {
            if name.is_empty() || name.chars().any(|c| c.is_whitespace() || c == '#') {
                return Err(Error::BadLabeling(format!("label {name:?} for vertex {v}")));
            }
            if index.insert(name.clone(), v).is_some() {
                return Err(Error::BadLabeling(format!("duplicate label {name:?}")));
            }
        }
        Ok(Labeling { names, index })
    }

    /// Labels each vertex with its own index.
    pub fn numeric(n: usize) -> Self {
        Labeling::new((0..n).map(|v| v.to_string()).collect()).expect("numeric labels are unique")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v]
    }

    pub fn vertex(&self, name: &str) -> Option<VertexId> {
        self.index.get(name).copied()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Looks up several labels at once and collects them into a set.
    pub fn set<'a>(&self, names: impl IntoIterator<Item = &'a str>) -> Result<VertexSet> {
        names
            .into_iter()
            .map(|name| {
                self.vertex(name)
                    .ok_or_else(|| Error::BadLabeling(format!("unknown label {name:?}")))
            })
            .collect()
    }

    /// `{u1,u5}` style rendering.
    pub fn format_set(&self, set: VertexSet) -> String {
        let names: Vec<&str> = set.iter().map(|v| self.name(v)).collect();
        format!("{{{}}}", names.join(","))
    }
}
