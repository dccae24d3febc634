//! Theorem verification and benchmark tables.
//!
//! Each row builds a family member, certifies it, runs an exact solver
//! within a budget and compares the three numbers. Rows are independent and
//! are computed in parallel; output order is always input order.

use std::fmt::{self, Write as _};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::certificates::{certify, FormulaValue, TheoremId};
use crate::coalition::{ctau_exact, ctau_naive, CtauResult, SearchBudget, DEFAULT_NAIVE_LIMIT};
use crate::error::{Error, Result};
use crate::families::FamilySpec;
use crate::hypercore::Hypergraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Engine {
    Naive,
    Exact,
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Engine::Naive => "naive",
            Engine::Exact => "exact",
        })
    }
}

/// Solver settings shared by every command.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    pub engine: Engine,
    pub budget: SearchBudget,
    pub naive_limit: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            engine: Engine::Exact,
            budget: SearchBudget::default(),
            naive_limit: DEFAULT_NAIVE_LIMIT,
        }
    }
}

pub fn solve(h: &Hypergraph, options: &SolveOptions) -> Result<CtauResult> {
    match options.engine {
        Engine::Naive => ctau_naive(h, options.naive_limit),
        Engine::Exact => ctau_exact(h, &options.budget),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RowStatus {
    Match,
    Mismatch,
    BoundOnly,
    SkippedBudget,
    SkippedOutsideTheorem,
    Error(String),
}

impl fmt::Display for RowStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RowStatus::Match => f.write_str("MATCH"),
            RowStatus::Mismatch => f.write_str("MISMATCH"),
            RowStatus::BoundOnly => f.write_str("BOUND_ONLY"),
            RowStatus::SkippedBudget => f.write_str("SKIPPED(budget)"),
            RowStatus::SkippedOutsideTheorem => f.write_str("SKIPPED(outside-theorem)"),
            RowStatus::Error(_) => f.write_str("ERROR"),
        }
    }
}

impl Serialize for RowStatus {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

fn millis<S: Serializer>(d: &Duration, serializer: S) -> std::result::Result<S::Ok, S::Error> {
    serializer.serialize_f64(d.as_secs_f64() * 1e3)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TheoremRow {
    pub spec: FamilySpec,
    pub vertices: usize,
    pub theorem: Option<TheoremId>,
    pub formula: Option<FormulaValue>,
    pub proof_claim: Option<usize>,
    pub certificate_order: Option<usize>,
    pub certificate_valid: Option<bool>,
    /// Exact `C_τ`, or a lower bound when `optimal` is false.
    pub exact: Option<usize>,
    pub optimal: bool,
    pub nodes: u64,
    pub status: RowStatus,
    #[serde(rename = "elapsed_ms", serialize_with = "millis")]
    pub elapsed: Duration,
    pub notes: Vec<String>,
}

impl TheoremRow {
    /// A mismatch, an error, or an invalid certificate.
    pub fn failed(&self) -> bool {
        matches!(self.status, RowStatus::Mismatch | RowStatus::Error(_))
            || self.certificate_valid == Some(false)
    }
}

fn classify(
    formula: Option<FormulaValue>,
    proof_claim: Option<usize>,
    exact: Option<(usize, bool)>,
) -> RowStatus {
    let Some(formula) = formula else {
        return RowStatus::SkippedOutsideTheorem;
    };
    match exact {
        None => RowStatus::SkippedBudget,
        Some((value, false)) => {
            // a lower bound can still refute the formula
            let hi = match formula {
                FormulaValue::Exact(v) => v,
                FormulaValue::Interval { hi, .. } => hi,
            };
            if value > hi {
                RowStatus::Mismatch
            } else {
                RowStatus::SkippedBudget
            }
        }
        Some((value, true)) => match formula {
            FormulaValue::Exact(v) if v == value => RowStatus::Match,
            FormulaValue::Exact(_) => RowStatus::Mismatch,
            FormulaValue::Interval { .. } => {
                if formula.contains(value) && proof_claim.is_none_or(|c| c == value) {
                    RowStatus::BoundOnly
                } else {
                    RowStatus::Mismatch
                }
            }
        },
    }
}

pub fn verify_spec(spec: &FamilySpec, options: &SolveOptions) -> TheoremRow {
    let start = Instant::now();
    let mut row = TheoremRow {
        spec: spec.clone(),
        vertices: spec.vertex_count(),
        theorem: None,
        formula: None,
        proof_claim: None,
        certificate_order: None,
        certificate_valid: None,
        exact: None,
        optimal: false,
        nodes: 0,
        status: RowStatus::SkippedOutsideTheorem,
        elapsed: Duration::ZERO,
        notes: Vec::new(),
    };
    let h = match spec.build() {
        Ok((h, _)) => h,
        Err(e) => {
            row.status = RowStatus::Error(e.to_string());
            row.notes.push(e.to_string());
            row.elapsed = start.elapsed();
            return row;
        }
    };
    match certify(spec) {
        Ok(cert) => {
            row.theorem = Some(cert.theorem_id);
            row.formula = Some(cert.formula_value);
            row.proof_claim = cert.proof_claim;
            row.certificate_order = Some(cert.claimed_order);
            row.certificate_valid = Some(cert.verdict.valid);
            row.notes.extend(cert.discrepancies);
        }
        Err(Error::OutsideTheorem(why)) => row.notes.push(why),
        Err(e) => row.notes.push(e.to_string()),
    }
    let exact = match solve(&h, options) {
        Ok(result) => {
            row.nodes = result.nodes_explored;
            row.exact = Some(result.value);
            row.optimal = result.optimal;
            if !result.optimal {
                row.notes.push(format!("search budget exhausted; {} is a lower bound", result.value));
            }
            Some((result.value, result.optimal))
        }
        Err(Error::BudgetExceeded { nodes }) => {
            row.nodes = nodes;
            row.notes.push(format!("search budget exhausted after {nodes} nodes"));
            None
        }
        Err(e @ Error::TooLarge { .. }) => {
            row.notes.push(e.to_string());
            None
        }
        Err(e) => {
            row.status = RowStatus::Error(e.to_string());
            row.notes.push(e.to_string());
            row.elapsed = start.elapsed();
            return row;
        }
    };
    row.status = classify(row.formula, row.proof_claim, exact);
    if let (Some(order), Some((value, true))) = (row.certificate_order, exact) {
        if row.certificate_valid == Some(true) && value < order {
            row.status = RowStatus::Mismatch;
            row.notes.push(format!("exact value {value} below certificate order {order}"));
        }
    }
    row.elapsed = start.elapsed();
    row
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TheoremReport {
    pub engine: Engine,
    pub node_limit: u64,
    pub rows: Vec<TheoremRow>,
}

impl TheoremReport {
    pub fn failed(&self) -> bool {
        self.rows.iter().any(TheoremRow::failed)
    }

    pub fn to_table(&self) -> String {
        let header = [
            "spec", "n", "formula", "cert", "valid", "exact", "status", "ms",
        ];
        let body: Vec<[String; 8]> = self
            .rows
            .iter()
            .map(|row| {
                let opt = |v: Option<usize>| v.map_or("-".to_string(), |v| v.to_string());
                let exact = match row.exact {
                    Some(v) if !row.optimal => format!(">={v}"),
                    other => opt(other),
                };
                [
                    row.spec.to_string(),
                    row.vertices.to_string(),
                    row.formula.map_or("-".to_string(), |f| f.to_string()),
                    opt(row.certificate_order),
                    row.certificate_valid
                        .map_or("-".to_string(), |v| if v { "yes" } else { "NO" }.to_string()),
                    exact,
                    row.status.to_string(),
                    format!("{:.1}", row.elapsed.as_secs_f64() * 1e3),
                ]
            })
            .collect();
        let mut out = render_table(&header, &body);
        for row in self.rows.iter().filter(|r| !r.notes.is_empty()) {
            for note in &row.notes {
                let _ = writeln!(out, "note {}: {note}", row.spec);
            }
        }
        let failures = self.rows.iter().filter(|r| r.failed()).count();
        let _ = writeln!(out, "{} rows, {failures} failing", self.rows.len());
        out
    }
}

pub fn verify_theorems(specs: &[FamilySpec], options: &SolveOptions) -> TheoremReport {
    TheoremReport {
        engine: options.engine,
        node_limit: options.budget.node_limit,
        rows: specs.par_iter().map(|spec| verify_spec(spec, options)).collect(),
    }
}

fn parse_all(specs: &[&str]) -> Vec<FamilySpec> {
    specs
        .iter()
        .map(|s| s.parse().expect("built-in grid specs are well formed"))
        .collect()
}

/// The rows every release must get right quickly.
pub fn default_grid() -> Vec<FamilySpec> {
    let mut specs = Vec::new();
    for n in 3..=7 {
        specs.push(FamilySpec::Complete { n, r: 3 });
    }
    for n in 4..=7 {
        specs.push(FamilySpec::Complete { n, r: 4 });
    }
    for n in 2..=5 {
        specs.push(FamilySpec::Star { n, r: 3 });
    }
    for n in 3..=5 {
        specs.push(FamilySpec::Star { n, r: 4 });
    }
    for (m, n) in [(1, 2), (2, 2), (3, 2), (2, 3)] {
        specs.push(FamilySpec::Bipartite { m, n, r: 3 });
    }
    specs.extend(parse_all(&[
        "rpartite:sizes=1-1-1",
        "rpartite:sizes=1-2-2",
        "rpartite:sizes=2-2-2",
        "rpartite:sizes=1-1-2",
        "path:n=3,r=3",
        "path:n=4,r=3",
        "path:n=3,r=4",
        "cycle:n=3,r=3",
        "cycle:n=4,r=3",
        "cycle:n=5,r=3",
    ]));
    specs
}

/// The default grid plus larger rows that may need a budget.
pub fn extended_grid() -> Vec<FamilySpec> {
    let mut specs = default_grid();
    specs.extend(parse_all(&[
        "complete:n=8,r=3",
        "complete:n=8,r=4",
        "star:n=6,r=3",
        "bipartite:m=4,n=2,r=3",
        "rpartite:sizes=2-2-2-2",
        "rpartite:sizes=1-2-2-2",
        "path:n=5,r=3",
        "path:n=3,r=5",
        "cycle:n=6,r=3",
        "cycle:n=3,r=4",
        "cycle:n=4,r=4",
    ]));
    specs
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRow {
    pub spec: FamilySpec,
    pub engine: Engine,
    pub vertices: usize,
    pub value: Option<usize>,
    pub optimal: bool,
    pub nodes: u64,
    pub repetitions: usize,
    #[serde(rename = "min_ms", serialize_with = "millis")]
    pub min: Duration,
    #[serde(rename = "mean_ms", serialize_with = "millis")]
    pub mean: Duration,
    pub error: Option<String>,
}

pub fn bench_grid() -> Vec<FamilySpec> {
    parse_all(&[
        "complete:n=7,r=3",
        "star:n=5,r=3",
        "rpartite:sizes=2-2-2",
        "path:n=3,r=3",
        "path:n=4,r=3",
        "cycle:n=5,r=3",
    ])
}

/// Times each spec under each engine. Rows run one after another so
/// timings do not interfere.
pub fn bench(
    specs: &[FamilySpec],
    engines: &[Engine],
    repetitions: usize,
    options: &SolveOptions,
) -> Vec<BenchRow> {
    let repetitions = repetitions.max(1);
    let mut rows = Vec::new();
    for spec in specs {
        let built = spec.build();
        for &engine in engines {
            let mut row = BenchRow {
                spec: spec.clone(),
                engine,
                vertices: spec.vertex_count(),
                value: None,
                optimal: false,
                nodes: 0,
                repetitions,
                min: Duration::ZERO,
                mean: Duration::ZERO,
                error: None,
            };
            let h = match &built {
                Ok((h, _)) => h,
                Err(e) => {
                    row.error = Some(e.to_string());
                    rows.push(row);
                    continue;
                }
            };
            let opts = SolveOptions { engine, ..*options };
            let mut times = Vec::with_capacity(repetitions);
            for _ in 0..repetitions {
                let start = Instant::now();
                let outcome = solve(h, &opts);
                times.push(start.elapsed());
                match outcome {
                    Ok(result) => {
                        row.value = Some(result.value);
                        row.optimal = result.optimal;
                        row.nodes = result.nodes_explored;
                    }
                    Err(e) => {
                        row.error = Some(e.to_string());
                        break;
                    }
                }
            }
            row.min = times.iter().copied().min().unwrap_or_default();
            row.mean = times.iter().sum::<Duration>() / times.len().max(1) as u32;
            rows.push(row);
        }
    }
    rows
}

pub fn bench_table(rows: &[BenchRow]) -> String {
    let header = ["spec", "engine", "n", "value", "nodes", "min_ms", "mean_ms"];
    let body: Vec<[String; 7]> = rows
        .iter()
        .map(|row| {
            let value = match (&row.error, row.value) {
                (Some(e), _) => e.clone(),
                (None, Some(v)) if row.optimal => v.to_string(),
                (None, Some(v)) => format!(">={v}"),
                (None, None) => "-".to_string(),
            };
            [
                row.spec.to_string(),
                row.engine.to_string(),
                row.vertices.to_string(),
                value,
                row.nodes.to_string(),
                format!("{:.2}", row.min.as_secs_f64() * 1e3),
                format!("{:.2}", row.mean.as_secs_f64() * 1e3),
            ]
        })
        .collect();
    render_table(&header, &body)
}

fn render_table<const K: usize>(header: &[&str; K], body: &[[String; K]]) -> String {
    let mut widths = header.map(str::len);
    for row in body {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    let mut line = |cells: Vec<&str>| {
        let text: Vec<String> = cells
            .iter()
            .zip(widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        let _ = writeln!(out, "{}", text.join("  ").trim_end());
    };
    line(header.to_vec());
    for row in body {
        line(row.iter().map(String::as_str).collect());
    }
    out
}
