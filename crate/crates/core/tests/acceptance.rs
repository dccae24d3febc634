//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Run with `cargo test -p trc-core --test acceptance`.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use trc_core::certificates::certify;
use trc_core::coalition::{
    coalition_graph, ctau_exact, ctau_naive, validate_trc_partition, CtauResult, PartRole, SearchBudget,
    DEFAULT_NAIVE_LIMIT,
};
use trc_core::families::{is_linear_sequence, random_corpus, specs_up_to, walk_order, FamilyKind, FamilySpec};
use trc_core::report::{default_grid, verify_spec, RowStatus, SolveOptions};
use trc_core::transversal::{has_trc_partition, tau};
use trc_core::Hypergraph;

/// Seed for the random part of the oracle-equivalence corpus.
const RANDOM_SEED: u64 = 20_240_601;
const RANDOM_COUNT: usize = 200;
const PERMUTATIONS: u64 = 5;

type Outcome = Result<String, String>;

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Option<Duration>,
    check: fn() -> Outcome,
}

fn spec(text: &str) -> FamilySpec {
    text.parse().expect("criterion specs are well formed")
}

fn exact(h: &Hypergraph) -> Result<CtauResult, String> {
    let r = ctau_exact(h, &SearchBudget::default()).map_err(|e| e.to_string())?;
    if !r.optimal {
        return Err("search budget exhausted".into());
    }
    Ok(r)
}

/// Checks `expected` exact values, and certificate validity if `certs`.
fn family_values(cases: &[(&str, usize)], certs: bool) -> Outcome {
    let mut failures = Vec::new();
    for &(text, expected) in cases {
        let s = spec(text);
        let (h, _) = s.build().map_err(|e| format!("{text}: {e}"))?;
        let got = exact(&h).map_err(|e| format!("{text}: {e}"))?.value;
        if got != expected {
            failures.push(format!("{text}: exact {got}, theorem {expected}"));
        }
        if certs {
            match certify(&s) {
                Ok(c) if c.is_valid() && c.claimed_order == expected => {}
                Ok(c) => failures.push(format!(
                    "{text}: certificate order {} valid={}",
                    c.claimed_order,
                    c.is_valid()
                )),
                Err(e) => failures.push(format!("{text}: {e}")),
            }
        }
    }
    if failures.is_empty() {
        Ok(format!("{} instances", cases.len()))
    } else {
        Err(failures.join("; "))
    }
}

fn golden() -> Outcome {
    let cases = [("intro", intro(), 5), ("C_3", c3(), 4), ("self-complementary", self_complementary(), 5), ("K_4^4", k44(), 4)];
    let mut failures = Vec::new();
    for (name, h, expected) in cases {
        match ctau_naive(&h, DEFAULT_NAIVE_LIMIT) {
            Ok(r) if r.value == expected => {}
            Ok(r) => failures.push(format!("{name}: {} != {expected}", r.value)),
            Err(e) => failures.push(format!("{name}: {e}")),
        }
    }
    if failures.is_empty() {
        Ok("5, 4, 5, 4".into())
    } else {
        Err(failures.join("; "))
    }
}

fn complete() -> Outcome {
    family_values(
        &[
            ("complete:n=3,r=3", 3),
            ("complete:n=4,r=3", 4),
            ("complete:n=5,r=3", 4),
            ("complete:n=6,r=3", 4),
            ("complete:n=7,r=3", 4),
            ("complete:n=4,r=4", 4),
            ("complete:n=5,r=4", 5),
            ("complete:n=6,r=4", 5),
        ],
        true,
    )
}

fn stars() -> Outcome {
    family_values(
        &[
            ("star:n=2,r=3", 3),
            ("star:n=3,r=3", 4),
            ("star:n=4,r=3", 4),
            ("star:n=5,r=3", 4),
            ("star:n=3,r=4", 4),
            ("star:n=4,r=4", 5),
            ("star:n=5,r=4", 5),
        ],
        false,
    )
}

fn bipartite() -> Outcome {
    family_values(
        &[
            ("bipartite:m=1,n=2,r=3", 3),
            ("bipartite:m=2,n=2,r=3", 4),
            ("bipartite:m=3,n=2,r=3", 4),
            ("bipartite:m=2,n=3,r=3", 4),
        ],
        false,
    )
}

fn rpartite() -> Outcome {
    let mut failures = Vec::new();
    for (text, expected) in [
        ("rpartite:sizes=1-1-1", 3),
        ("rpartite:sizes=1-2-2", 5),
        ("rpartite:sizes=2-2-2", 6),
    ] {
        let row = verify_spec(&spec(text), &SolveOptions::default());
        let r = spec(text).r();
        match row.exact {
            Some(v) if !(r..=2 * r).contains(&v) => failures.push(format!("{text}: {v} outside [{r},{}]", 2 * r)),
            Some(v) if v != expected => failures.push(format!("{text}: {v} != proof value {expected}")),
            None => failures.push(format!("{text}: no exact value")),
            _ => {}
        }
        if row.status != RowStatus::BoundOnly {
            failures.push(format!("{text}: report status {}", row.status));
        }
    }
    if failures.is_empty() {
        Ok("3, 5, 6 within [r,2r] and equal to the proof values".into())
    } else {
        Err(failures.join("; "))
    }
}

fn paths() -> Outcome {
    family_values(&[("path:n=3,r=3", 6), ("path:n=4,r=3", 6)], false)
}

fn cycles() -> Outcome {
    family_values(&[("cycle:n=3,r=3", 6), ("cycle:n=4,r=3", 6), ("cycle:n=5,r=3", 6)], false)
}

fn oracle_corpus() -> Result<Vec<(String, Hypergraph)>, String> {
    let mut corpus: Vec<(String, Hypergraph)> = specs_up_to(7)
        .into_iter()
        .map(|s| (s.to_string(), s.build().expect("grid specs build").0))
        .collect();
    let random: Vec<Hypergraph> = random_corpus(RANDOM_COUNT * 3, 5, 7, 3, RANDOM_SEED)
        .map_err(|e| e.to_string())?
        .into_iter()
        .filter(brute_has_trc)
        .take(RANDOM_COUNT)
        .collect();
    if random.len() < RANDOM_COUNT {
        return Err(format!("only {} feasible random instances", random.len()));
    }
    corpus.extend(random.into_iter().enumerate().map(|(i, h)| (format!("random #{i}"), h)));
    Ok(corpus)
}

fn oracle_equivalence() -> Outcome {
    let corpus = oracle_corpus()?;
    let mut failures = Vec::new();
    for (name, h) in &corpus {
        let naive = ctau_naive(h, 7).map_err(|e| format!("{name}: naive {e}"))?;
        let ex = exact(h).map_err(|e| format!("{name}: {e}"))?;
        if naive.value != ex.value {
            failures.push(format!("{name}: naive {} exact {}", naive.value, ex.value));
        }
        if tau(h).size != brute_tau(h) {
            failures.push(format!("{name}: tau {} brute {}", tau(h).size, brute_tau(h)));
        }
    }
    if failures.is_empty() {
        Ok(format!("{} instances", corpus.len()))
    } else {
        Err(failures.join("; "))
    }
}

fn invariants() -> Outcome {
    let mut failures: Vec<String> = Vec::new();
    let mut counts = [0usize; 5];

    // bounds, witness validity and permutation invariance
    let mut instances = oracle_corpus()?;
    instances.extend(
        default_grid()
            .into_iter()
            .filter(|s| s.vertex_count() > 7)
            .map(|s| (s.to_string(), s.build().expect("grid specs build").0)),
    );
    for (name, h) in &instances {
        let results = [
            (h.n() <= 7).then(|| ctau_naive(h, 7)),
            Some(ctau_exact(h, &SearchBudget::default())),
        ];
        for result in results.into_iter().flatten() {
            let r = result.map_err(|e| format!("{name}: {e}"))?;
            counts[0] += 1;
            if !(1..=h.n()).contains(&r.value) {
                failures.push(format!("{name}: value {} outside [1,{}]", r.value, h.n()));
            }
            let verdict = validate_trc_partition(h, &r.witness).map_err(|e| e.to_string())?;
            if !verdict.valid || r.witness.order() != r.value {
                failures.push(format!("{name}: witness {} invalid", r.witness));
            }
        }
        let base = exact(h).map_err(|e| format!("{name}: {e}"))?.value;
        for seed in 0..PERMUTATIONS {
            counts[1] += 1;
            let moved = h.relabel(&permutation(h.n(), seed));
            let v = exact(&moved).map_err(|e| format!("{name}: {e}"))?.value;
            if v != base {
                failures.push(format!("{name}: relabeling {seed} gives {v} not {base}"));
            }
        }
    }

    // certificate validity on the in-theorem grid
    for s in default_grid() {
        match certify(&s) {
            Ok(c) => {
                counts[2] += 1;
                if !c.is_valid() {
                    failures.push(format!("certificate {s} invalid: {}", c.discrepancies.join(", ")));
                }
            }
            Err(trc_core::Error::OutsideTheorem(_)) => {}
            Err(e) => failures.push(format!("certificate {s}: {e}")),
        }
    }

    // linearity of every generated path and cycle
    let mut linear_specs: Vec<FamilySpec> = specs_up_to(16);
    linear_specs.extend(default_grid());
    for s in linear_specs {
        let cyclic = match s.kind() {
            FamilyKind::LinearPath => false,
            FamilyKind::LinearCycle => true,
            _ => continue,
        };
        counts[3] += 1;
        let (h, lab) = s.build().map_err(|e| e.to_string())?;
        let ok = walk_order(&h, &lab, cyclic)
            .is_some_and(|w| w.len() == h.edge_count() && is_linear_sequence(&w, cyclic));
        if !ok {
            failures.push(format!("{s} is not linear"));
        }
    }

    // even-cycle certificate: every coalition part has exactly r-1 partners
    let c6 = spec("cycle:n=6,r=3");
    let cert = certify(&c6).map_err(|e| e.to_string())?;
    let (h, _) = c6.build().map_err(|e| e.to_string())?;
    let graph = coalition_graph(&h, &cert.partition).map_err(|e| e.to_string())?;
    for (i, role) in cert.verdict.roles.iter().enumerate() {
        if matches!(role, PartRole::SingletonTransversal) {
            continue;
        }
        counts[4] += 1;
        let degree = graph.degree(i);
        if degree != c6.r() - 1 {
            failures.push(format!(
                "C_6 part P{} {{{}}} has {degree} coalition partners, not {}",
                i + 1,
                cert.labeled_parts[i].join(","),
                c6.r() - 1
            ));
        }
    }

    let summary = format!(
        "{} solver results, {} relabelings, {} certificates, {} linear families, {} C_6 parts",
        counts[0], counts[1], counts[2], counts[3], counts[4]
    );
    if failures.is_empty() {
        Ok(summary)
    } else {
        Err(format!("{summary}; {}", failures.join("; ")))
    }
}

fn theorem_one() -> Outcome {
    let mut nested = Vec::new();
    for n in 2..=7 {
        for inner_bits in 1u64..(1 << n) - 1 {
            let inner: Vec<usize> = (0..n).filter(|v| inner_bits >> v & 1 == 1).collect();
            let outer: Vec<usize> = (0..n).collect();
            nested.push(Hypergraph::new(n, [inner.clone(), outer]).unwrap());
            if inner.len() + 1 < n {
                let mut wider = inner.clone();
                wider.push((0..n).find(|v| !inner.contains(v)).unwrap());
                nested.push(Hypergraph::new(n, [inner, wider]).unwrap());
            }
        }
    }
    let mut failures = Vec::new();
    for h in &nested {
        if has_trc_partition(h) {
            failures.push(format!("nested {h:?} reported feasible"));
        }
    }
    let mut corpus: Vec<Hypergraph> = vec![intro(), c3(), self_complementary(), k44(), sensors()];
    corpus.extend(specs_up_to(10).into_iter().map(|s| s.build().unwrap().0));
    corpus.extend(random_corpus(400, 3, 9, 3, RANDOM_SEED).map_err(|e| e.to_string())?);
    let mut infeasible = 0;
    for h in &corpus {
        let claimed = has_trc_partition(h);
        // false exactly when some edge other than V sits inside every edge
        if claimed != brute_has_trc(h) {
            failures.push(format!("{h:?}: has_trc_partition {claimed}"));
        }
        if !claimed {
            infeasible += 1;
        }
        if tau(h).size >= 2 && !claimed {
            failures.push(format!("{h:?}: tau >= 2 but no trc-partition"));
        }
    }
    if failures.is_empty() {
        Ok(format!(
            "{} nested counterexamples, {} corpus instances ({} infeasible, all nested)",
            nested.len(),
            corpus.len(),
            infeasible
        ))
    } else {
        Err(failures.join("; "))
    }
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { id: 1, name: "golden examples", limit: Some(Duration::from_secs(1)), check: golden },
        Criterion { id: 2, name: "complete r-uniform", limit: Some(Duration::from_secs(10)), check: complete },
        Criterion { id: 3, name: "stars", limit: Some(Duration::from_secs(10)), check: stars },
        Criterion { id: 4, name: "complete bipartite", limit: Some(Duration::from_secs(5)), check: bipartite },
        Criterion { id: 5, name: "complete r-partite", limit: Some(Duration::from_secs(10)), check: rpartite },
        Criterion { id: 6, name: "linear paths", limit: Some(Duration::from_secs(30)), check: paths },
        Criterion { id: 7, name: "linear cycles", limit: Some(Duration::from_secs(60)), check: cycles },
        Criterion { id: 8, name: "oracle equivalence", limit: None, check: oracle_equivalence },
        Criterion { id: 9, name: "invariant suite", limit: None, check: invariants },
        Criterion { id: 10, name: "existence test and corollary", limit: None, check: theorem_one },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let mut outcome = (c.check)();
        let elapsed = start.elapsed();
        if let (Ok(detail), Some(limit)) = (&outcome, c.limit) {
            if elapsed > limit {
                outcome = Err(format!("{detail}, but took {elapsed:.2?} (limit {limit:?})"));
            }
        }
        match outcome {
            Ok(detail) => println!("PASS  {:>2} {} ({elapsed:.2?}): {detail}", c.id, c.name),
            Err(why) => {
                failed += 1;
                println!("FAIL  {:>2} {} ({elapsed:.2?}): {why}", c.id, c.name);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
