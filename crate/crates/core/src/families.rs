//! Generators for the uniform hypergraph families, each with a labeling.
//!
//! Vertex numbering is fixed per family:
//!
//! | family    | vertices, in index order                          |
//! |-----------|---------------------------------------------------|
//! | complete  | `u1..un`                                          |
//! | bipartite | `u1..um`, then `v1..vn`                           |
//! | star      | `center`, then `v1..vn`                           |
//! | r-partite | `part1:v1..`, `part2:v1..`, ... part by part      |
//! | path      | junctions `u1..u(n+1)`, then `xi_j` edge by edge  |
//! | cycle     | junctions `u1..un`, then `xi_j` edge by edge      |
//!
//! Edges are listed in lexicographic order of their sorted vertex indices.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::hypercore::{Hypergraph, Labeling, VertexId, VertexSet, MAX_VERTICES};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum FamilyKind {
    CompleteUniform,
    BipartiteUniform,
    StarUniform,
    RPartiteUniform,
    LinearPath,
    LinearCycle,
}

/// Parameters selecting one family member.
///
/// The canonical string form is `kind:key=value,...`, for example
/// `complete:n=6,r=3`, `bipartite:m=3,n=2,r=3`, `star:n=4,r=3`,
/// `rpartite:sizes=1-2-2`, `path:n=4,r=3` and `cycle:n=5,r=3`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    Complete { n: usize, r: usize },
    Bipartite { m: usize, n: usize, r: usize },
    /// `n` leaves around one center.
    Star { n: usize, r: usize },
    RPartite { sizes: Vec<usize> },
    /// `n` edges.
    Path { n: usize, r: usize },
    /// `n` edges.
    Cycle { n: usize, r: usize },
}

impl FamilySpec {
    pub fn kind(&self) -> FamilyKind {
        match self {
            FamilySpec::Complete { .. } => FamilyKind::CompleteUniform,
            FamilySpec::Bipartite { .. } => FamilyKind::BipartiteUniform,
            FamilySpec::Star { .. } => FamilyKind::StarUniform,
            FamilySpec::RPartite { .. } => FamilyKind::RPartiteUniform,
            FamilySpec::Path { .. } => FamilyKind::LinearPath,
            FamilySpec::Cycle { .. } => FamilyKind::LinearCycle,
        }
    }

    /// Edge size.
    pub fn r(&self) -> usize {
        match *self {
            FamilySpec::Complete { r, .. }
            | FamilySpec::Bipartite { r, .. }
            | FamilySpec::Star { r, .. }
            | FamilySpec::Path { r, .. }
            | FamilySpec::Cycle { r, .. } => r,
            FamilySpec::RPartite { ref sizes } => sizes.len(),
        }
    }

    /// Vertex count of the generated hypergraph, computed without building it.
    pub fn vertex_count(&self) -> usize {
        match *self {
            FamilySpec::Complete { n, .. } => n,
            FamilySpec::Bipartite { m, n, .. } => m + n,
            FamilySpec::Star { n, .. } => n + 1,
            FamilySpec::RPartite { ref sizes } => sizes.iter().sum(),
            FamilySpec::Path { n, r } => n * (r.max(1) - 1) + 1,
            FamilySpec::Cycle { n, r } => n * (r.max(1) - 1),
        }
    }

    pub fn build(&self) -> Result<(Hypergraph, Labeling)> {
        match *self {
            FamilySpec::Complete { n, r } => complete_uniform(n, r),
            FamilySpec::Bipartite { m, n, r } => bipartite_uniform(m, n, r),
            FamilySpec::Star { n, r } => star_uniform(n, r),
            FamilySpec::RPartite { ref sizes } => rpartite_uniform(sizes),
            FamilySpec::Path { n, r } => linear_path(n, r),
            FamilySpec::Cycle { n, r } => linear_cycle(n, r),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Complete { n, r } => write!(f, "complete:n={n},r={r}"),
            FamilySpec::Bipartite { m, n, r } => write!(f, "bipartite:m={m},n={n},r={r}"),
            FamilySpec::Star { n, r } => write!(f, "star:n={n},r={r}"),
            FamilySpec::RPartite { sizes } => {
                write!(f, "rpartite:sizes={}", sizes.iter().join("-"))
            }
            FamilySpec::Path { n, r } => write!(f, "path:n={n},r={r}"),
            FamilySpec::Cycle { n, r } => write!(f, "cycle:n={n},r={r}"),
        }
    }
}

impl Serialize for FamilySpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::BadParams(format!("{s:?}: {why}"));
        let (kind, params) = s.split_once(':').ok_or_else(|| bad("expected kind:params"))?;
        let mut pairs: Vec<(&str, &str)> = Vec::new();
        for item in params.split(',') {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| bad("expected key=value"))?;
            if pairs.iter().any(|(k, _)| *k == key) {
                return Err(bad(&format!("repeated key {key}")));
            }
            pairs.push((key, value));
        }
        let expected: &[&str] = match kind {
            "complete" | "star" | "path" | "cycle" => &["n", "r"],
            "bipartite" => &["m", "n", "r"],
            "rpartite" => &["sizes"],
            _ => return Err(bad(&format!("unknown family {kind:?}"))),
        };
        if pairs.len() != expected.len() || pairs.iter().any(|(k, _)| !expected.contains(k)) {
            return Err(bad(&format!("{kind} takes exactly {}", expected.join(","))));
        }
        let number = |text: &str| -> Result<usize> {
            if text.is_empty() || !text.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad(&format!("{text:?} is not a nonnegative integer")));
            }
            text.parse().map_err(|_| bad(&format!("{text:?} is too large")))
        };
        let get = |key: &str| -> Result<usize> {
            let value = pairs.iter().find(|(k, _)| *k == key).map(|(_, v)| *v).unwrap_or("");
            number(value)
        };
        Ok(match kind {
            "complete" => FamilySpec::Complete { n: get("n")?, r: get("r")? },
            "star" => FamilySpec::Star { n: get("n")?, r: get("r")? },
            "path" => FamilySpec::Path { n: get("n")?, r: get("r")? },
            "cycle" => FamilySpec::Cycle { n: get("n")?, r: get("r")? },
            "bipartite" => FamilySpec::Bipartite {
                m: get("m")?,
                n: get("n")?,
                r: get("r")?,
            },
            _ => {
                let sizes = pairs[0].1.split('-').map(number).collect::<Result<Vec<_>>>()?;
                FamilySpec::RPartite { sizes }
            }
        })
    }
}

fn bad_params(msg: String) -> Error {
    Error::BadParams(msg)
}

fn check_vertex_budget(n: usize) -> Result<()> {
    if n > MAX_VERTICES {
        Err(Error::TooManyVertices {
            n,
            max: MAX_VERTICES,
        })
    } else {
        Ok(())
    }
}

fn labels(prefix: &str, count: usize) -> impl Iterator<Item = String> + '_ {
    (1..=count).map(move |i| format!("{prefix}{i}"))
}

fn finish(n: usize, mut edges: Vec<VertexSet>, names: Vec<String>) -> Result<(Hypergraph, Labeling)> {
    edges.sort();
    Ok((Hypergraph::from_edges(n, edges)?, Labeling::new(names)?))
}

/// `K_n^r`: every `r`-subset of `n` vertices.
pub fn complete_uniform(n: usize, r: usize) -> Result<(Hypergraph, Labeling)> {
    if r < 2 || r > n {
        return Err(bad_params(format!("complete needs 2 <= r <= n, got n={n}, r={r}")));
    }
    check_vertex_budget(n)?;
    let edges = (0..n).combinations(r).map(|c| c.into_iter().collect()).collect();
    finish(n, edges, labels("u", n).collect())
}

/// `K^r_{m,n}`: every `r`-subset meeting both sides.
pub fn bipartite_uniform(m: usize, n: usize, r: usize) -> Result<(Hypergraph, Labeling)> {
    if m == 0 || n == 0 || r < 2 || m + n < r {
        return Err(bad_params(format!(
            "bipartite needs m,n >= 1, r >= 2, m+n >= r, got m={m}, n={n}, r={r}"
        )));
    }
    check_vertex_budget(m + n)?;
    let (side1, side2) = (VertexSet::full(m), VertexSet::full(m + n) - VertexSet::full(m));
    let edges = (0..m + n)
        .combinations(r)
        .map(|c| c.into_iter().collect::<VertexSet>())
        .filter(|e| e.intersects(side1) && e.intersects(side2))
        .collect();
    finish(m + n, edges, labels("u", m).chain(labels("v", n)).collect())
}

/// `K^r_{1,n}`: every `r`-subset containing the center (vertex 0).
pub fn star_uniform(n: usize, r: usize) -> Result<(Hypergraph, Labeling)> {
    if r < 2 || n + 1 < r {
        return Err(bad_params(format!("star needs r >= 2, n >= r-1, got n={n}, r={r}")));
    }
    let (h, _) = bipartite_uniform(1, n, r)?;
    let names = std::iter::once("center".to_string()).chain(labels("v", n)).collect();
    Ok((h, Labeling::new(names)?))
}

/// `K^r_{n_1,..,n_r}`: one vertex from each part.
pub fn rpartite_uniform(sizes: &[usize]) -> Result<(Hypergraph, Labeling)> {
    if sizes.len() < 2 || sizes.contains(&0) {
        return Err(bad_params(format!(
            "rpartite needs at least 2 parts, each nonempty, got {sizes:?}"
        )));
    }
    let total: usize = sizes.iter().sum();
    check_vertex_budget(total)?;
    let mut ranges = Vec::with_capacity(sizes.len());
    let mut names = Vec::with_capacity(total);
    let mut start = 0;
    for (i, &size) in sizes.iter().enumerate() {
        ranges.push(start..start + size);
        names.extend(labels("v", size).map(|v| format!("part{}:{v}", i + 1)));
        start += size;
    }
    let edges = ranges
        .into_iter()
        .multi_cartesian_product()
        .map(|pick| pick.into_iter().collect())
        .collect();
    finish(total, edges, names)
}

/// Index of interior vertex `x_{i,j}` (1-based `i`, `j`) after `junctions`.
fn interior(junctions: usize, r: usize, i: usize, j: usize) -> VertexId {
    junctions + (i - 1) * (r - 2) + (j - 1)
}

fn linear_edges(edge_count: usize, junctions: usize, r: usize, cyclic: bool) -> (Vec<VertexSet>, Vec<String>) {
    let mut edges = Vec::with_capacity(edge_count);
    for i in 1..=edge_count {
        let next = if cyclic && i == edge_count { 1 } else { i + 1 };
        let mut e = VertexSet::from([i - 1, next - 1]);
        for j in 1..=r - 2 {
            e.insert(interior(junctions, r, i, j));
        }
        edges.push(e);
    }
    let mut names: Vec<String> = labels("u", junctions).collect();
    for i in 1..=edge_count {
        names.extend((1..=r - 2).map(|j| format!("x{i}_{j}")));
    }
    (edges, names)
}

/// Linear path with `n` edges of size `r`; `n(r-1)+1` vertices.
pub fn linear_path(n: usize, r: usize) -> Result<(Hypergraph, Labeling)> {
    if n == 0 || r < 2 {
        return Err(bad_params(format!("path needs n >= 1, r >= 2, got n={n}, r={r}")));
    }
    let vertices = n * (r - 1) + 1;
    check_vertex_budget(vertices)?;
    let (edges, names) = linear_edges(n, n + 1, r, false);
    finish(vertices, edges, names)
}

/// Linear cycle with `n` edges of size `r`; `n(r-1)` vertices.
pub fn linear_cycle(n: usize, r: usize) -> Result<(Hypergraph, Labeling)> {
    if n < 3 || r < 3 {
        return Err(bad_params(format!("cycle needs n >= 3, r >= 3, got n={n}, r={r}")));
    }
    let vertices = n * (r - 1);
    check_vertex_budget(vertices)?;
    let (edges, names) = linear_edges(n, n, r, true);
    finish(vertices, edges, names)
}

/// Edges of a generated path or cycle in walk order `e_1, e_2, ..`, found
/// through the junction labels `u1, u2, ..`. `None` if some step is missing.
pub fn walk_order(h: &Hypergraph, labeling: &Labeling, cyclic: bool) -> Option<Vec<VertexSet>> {
    let len = h.edge_count();
    (1..=len)
        .map(|i| {
            let next = if cyclic && i == len { 1 } else { i + 1 };
            let a = labeling.vertex(&format!("u{i}"))?;
            let b = labeling.vertex(&format!("u{next}"))?;
            h.edges()
                .iter()
                .copied()
                .find(|e| e.contains(a) && e.contains(b))
        })
        .collect()
}

/// `true` when consecutive edges share exactly one vertex (including last
/// and first when `cyclic`) and all other pairs are disjoint.
pub fn is_linear_sequence(edges: &[VertexSet], cyclic: bool) -> bool {
    let k = edges.len();
    (0..k).all(|i| {
        (i + 1..k).all(|j| {
            let adjacent = j == i + 1 || (cyclic && i == 0 && j == k - 1);
            let shared = (edges[i] & edges[j]).len();
            if adjacent {
                shared == 1
            } else {
                shared == 0
            }
        })
    })
}

/// `m` distinct `r`-subsets of `0..n`, sampled reproducibly from `seed`.
pub fn random_uniform(n: usize, r: usize, m: usize, seed: u64) -> Result<Hypergraph> {
    if r == 0 || r > n {
        return Err(bad_params(format!("random needs 1 <= r <= n, got n={n}, r={r}")));
    }
    check_vertex_budget(n)?;
    let all: Vec<Vec<usize>> = (0..n).combinations(r).collect();
    if m > all.len() {
        return Err(bad_params(format!("only {} distinct {r}-subsets of {n} vertices", all.len())));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picked = sample(&mut rng, all.len(), m).into_vec();
    picked.sort_unstable();
    Hypergraph::new(n, picked.into_iter().map(|i| &all[i]))
}

/// `count` random `r`-uniform hypergraphs, each with a vertex count drawn
/// from `n_min..=n_max` and an edge count drawn from `1..=C(n, r)`.
pub fn random_corpus(count: usize, n_min: usize, n_max: usize, r: usize, seed: u64) -> Result<Vec<Hypergraph>> {
    if n_min > n_max || r == 0 || r > n_min {
        return Err(bad_params(format!(
            "random corpus needs 1 <= r <= n_min <= n_max, got r={r}, n={n_min}..{n_max}"
        )));
    }
    check_vertex_budget(n_max)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(n_min..=n_max);
            let all = (0..n).combinations(r).count();
            let m = rng.gen_range(1..=all);
            random_uniform(n, r, m, rng.gen())
        })
        .collect()
}

/// Every valid family spec whose hypergraph has at most `max_vertices`
/// vertices.
pub fn specs_up_to(max_vertices: usize) -> Vec<FamilySpec> {
    let cap = max_vertices;
    let mut specs = Vec::new();
    for r in 2..=cap {
        for n in r..=cap {
            specs.push(FamilySpec::Complete { n, r });
        }
    }
    for r in 2..=cap {
        for m in 1..cap {
            for n in 1..=cap - m {
                if m + n >= r {
                    specs.push(FamilySpec::Bipartite { m, n, r });
                }
            }
        }
    }
    for r in 2..=cap {
        for n in r - 1..cap {
            specs.push(FamilySpec::Star { n, r });
        }
    }
    fn compositions(left: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() >= 2 {
            out.push(current.clone());
        }
        for size in 1..=left {
            current.push(size);
            compositions(left - size, current, out);
            current.pop();
        }
    }
    let mut sizes = Vec::new();
    compositions(cap, &mut Vec::new(), &mut sizes);
    specs.extend(sizes.into_iter().map(|sizes| FamilySpec::RPartite { sizes }));
    for r in 2..=cap {
        for n in 1.. {
            if n * (r - 1) + 1 > cap {
                break;
            }
            specs.push(FamilySpec::Path { n, r });
        }
    }
    for r in 3..=cap {
        for n in 3.. {
            if n * (r - 1) > cap {
                break;
            }
            specs.push(FamilySpec::Cycle { n, r });
        }
    }
    specs
}
