//! `trc`: generate family hypergraphs, compute τ and C_τ, check partitions,
//! and verify the family theorems.
//!
//! Exit codes: 0 ok, 1 invalid partition / theorem mismatch / disagreement,
//! 2 input error, 3 no trc-partition exists, 4 search budget exceeded.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use trc_core::certificates::certify;
use trc_core::coalition::{
    coalition_graph, ctau_exact, ctau_naive, validate_trc_partition, PartRole, SearchBudget,
    DEFAULT_NAIVE_LIMIT, DEFAULT_NODE_LIMIT,
};
use trc_core::families::{random_corpus, FamilySpec};
use trc_core::format::{self, Document};
use trc_core::report::{self, Engine, SolveOptions};
use trc_core::transversal::{has_trc_partition, minimal_transversals, tau, DEFAULT_MINIMAL_CAP};
use trc_core::{Error, Labeling, Partition, VertexSet};

const EXIT_FAILED: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_NO_TRC: u8 = 3;
const EXIT_BUDGET: u8 = 4;

#[derive(Parser, Debug)]
#[command(name = "trc", version, about = "Transversal coalition partitions of hypergraphs")]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Output::Table, global = true)]
    output: Output,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Output {
    Table,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FileFormat {
    Hg,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum EngineArg {
    Naive,
    Exact,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Grid {
    Default,
    Extended,
}

#[derive(Args, Debug, Clone)]
struct SolverArgs {
    #[arg(long, value_enum, default_value_t = EngineArg::Exact)]
    engine: EngineArg,

    /// Node budget for the exact engine.
    #[arg(long, value_name = "N", default_value_t = DEFAULT_NODE_LIMIT)]
    node_limit: u64,

    /// Wall-clock budget for the exact engine.
    #[arg(long, value_name = "SECS")]
    time_limit_secs: Option<f64>,

    /// Largest vertex count the naive engine accepts.
    #[arg(long, value_name = "N")]
    naive_limit: Option<usize>,
}

impl SolverArgs {
    fn options(&self, default_naive_limit: usize) -> anyhow::Result<SolveOptions> {
        let time_limit = match self.time_limit_secs {
            Some(secs) if !(secs.is_finite() && secs > 0.0) => {
                return Err(Error::BadParams(format!("time limit must be positive, got {secs}")).into())
            }
            other => other.map(Duration::from_secs_f64),
        };
        Ok(SolveOptions {
            engine: match self.engine {
                EngineArg::Naive => Engine::Naive,
                EngineArg::Exact => Engine::Exact,
            },
            budget: SearchBudget {
                node_limit: self.node_limit,
                time_limit,
            },
            naive_limit: self.naive_limit.unwrap_or(default_naive_limit),
        })
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a family hypergraph.
    Gen {
        /// Family spec such as `cycle:n=5,r=3`.
        spec: String,
        /// Output file; standard output if omitted.
        #[arg(short, long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = FileFormat::Hg)]
        format: FileFormat,
    },
    /// Transversal number with a minimum witness.
    Tau {
        /// Hypergraph file (`.hg` or JSON) or family spec.
        input: String,
    },
    /// Transversal coalition number with a witness partition.
    Ctau {
        input: String,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Validate a partition file against a hypergraph.
    Check {
        input: String,
        partition: PathBuf,
    },
    /// Print the theorem certificate for a family spec.
    Certify {
        spec: String,
        /// Also compute C_τ for comparison.
        #[arg(long)]
        exact: bool,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Compare certificates and exact values against the family theorems.
    VerifyTheorems {
        /// Specs to check instead of a preset grid.
        specs: Vec<String>,
        #[arg(long, value_enum, default_value_t = Grid::Default)]
        grid: Grid,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Time the solvers on a grid of specs.
    Bench {
        specs: Vec<String>,
        #[arg(long, default_value_t = 3)]
        repetitions: usize,
        /// Engines to run; both by default.
        #[arg(long, value_enum, value_delimiter = ',')]
        engines: Vec<EngineArg>,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Cross-check both solvers, and τ against minimal transversals, on
    /// seeded random uniform hypergraphs.
    Crosscheck {
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        n_min: usize,
        #[arg(long, default_value_t = 7)]
        n_max: usize,
        #[arg(long, default_value_t = 3)]
        r: usize,
    },
}

fn main() -> ExitCode {
    // die quietly on a closed pipe (`trc ... | head`) instead of panicking
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::NoTrcPartition) => EXIT_NO_TRC,
        Some(Error::BudgetExceeded { .. }) => EXIT_BUDGET,
        _ => EXIT_INPUT,
    }
}

fn run(cli: &Cli) -> anyhow::Result<u8> {
    let json = cli.output == Output::Json;
    match &cli.command {
        Command::Gen { spec, out, format } => cmd_gen(spec, out.as_deref(), *format),
        Command::Tau { input } => cmd_tau(input, json),
        Command::Ctau { input, solver } => cmd_ctau(input, &solver.options(DEFAULT_NAIVE_LIMIT)?, json),
        Command::Check { input, partition } => cmd_check(input, partition, json),
        Command::Certify { spec, exact, solver } => {
            cmd_certify(spec, *exact, &solver.options(DEFAULT_NAIVE_LIMIT)?, json)
        }
        Command::VerifyTheorems { specs, grid, solver } => {
            let specs = if specs.is_empty() {
                match grid {
                    Grid::Default => report::default_grid(),
                    Grid::Extended => report::extended_grid(),
                }
            } else {
                parse_specs(specs)?
            };
            let report = report::verify_theorems(&specs, &solver.options(DEFAULT_NAIVE_LIMIT)?);
            if json {
                print_json(&report);
            } else {
                print!("{}", report.to_table());
            }
            Ok(if report.failed() { EXIT_FAILED } else { 0 })
        }
        Command::Bench {
            specs,
            repetitions,
            engines,
            solver,
        } => {
            let specs = if specs.is_empty() {
                report::bench_grid()
            } else {
                parse_specs(specs)?
            };
            let engines: Vec<Engine> = if engines.is_empty() {
                vec![Engine::Naive, Engine::Exact]
            } else {
                engines
                    .iter()
                    .map(|e| match e {
                        EngineArg::Naive => Engine::Naive,
                        EngineArg::Exact => Engine::Exact,
                    })
                    .collect()
            };
            // the bench grid includes a 10-vertex cycle under the naive engine
            let rows = report::bench(&specs, &engines, *repetitions, &solver.options(10)?);
            if json {
                print_json(&rows);
            } else {
                print!("{}", report::bench_table(&rows));
            }
            Ok(0)
        }
        Command::Crosscheck {
            count,
            seed,
            n_min,
            n_max,
            r,
        } => cmd_crosscheck(*count, *seed, *n_min, *n_max, *r, json),
    }
}

fn parse_specs(specs: &[String]) -> anyhow::Result<Vec<FamilySpec>> {
    specs
        .iter()
        .map(|s| s.parse::<FamilySpec>().map_err(anyhow::Error::from))
        .collect()
}

fn print_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("reports serialize"));
}

/// Reads `input` as a file if one exists at that path, otherwise as a
/// family spec.
fn load(input: &str) -> anyhow::Result<Document> {
    let path = Path::new(input);
    if path.exists() {
        let text = fs::read_to_string(path).with_context(|| format!("reading {input}"))?;
        return format::parse_any(&text)
            .map_err(anyhow::Error::from)
            .with_context(|| format!("parsing {input}"));
    }
    if input.contains(':') {
        let spec: FamilySpec = input.parse()?;
        let (h, lab) = spec.build()?;
        return Ok(Document::new(h, Some(lab)));
    }
    Err(anyhow!("{input}: no such file, and not a family spec"))
}

fn labeled_parts(lab: &Labeling, partition: &Partition) -> Vec<Vec<String>> {
    partition.parts().iter().map(|&p| labeled_set(lab, p)).collect()
}

fn labeled_set(lab: &Labeling, set: VertexSet) -> Vec<String> {
    set.iter().map(|v| lab.name(v).to_string()).collect()
}

fn cmd_gen(spec: &str, out: Option<&Path>, file_format: FileFormat) -> anyhow::Result<u8> {
    let spec: FamilySpec = spec.parse()?;
    let (h, lab) = spec.build()?;
    let text = match file_format {
        FileFormat::Hg => format::write_hg(&h, Some(&lab), &[format!("family {spec}")]),
        FileFormat::Json => format::write_json(&h, Some(&lab)),
    };
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(0)
}

#[derive(Serialize)]
struct TauReport {
    n: usize,
    edges: usize,
    tau: usize,
    witness: Vec<usize>,
    witness_labels: Vec<String>,
}

fn cmd_tau(input: &str, json: bool) -> anyhow::Result<u8> {
    let doc = load(input)?;
    let lab = doc.labels();
    let result = tau(&doc.hypergraph);
    let report = TauReport {
        n: doc.hypergraph.n(),
        edges: doc.hypergraph.edge_count(),
        tau: result.size,
        witness: result.witness.to_vec(),
        witness_labels: labeled_set(&lab, result.witness),
    };
    if json {
        print_json(&report);
    } else {
        println!("tau = {}", report.tau);
        println!("witness: {}", lab.format_set(result.witness));
    }
    Ok(0)
}

#[derive(Serialize)]
struct CtauReport {
    n: usize,
    edges: usize,
    engine: Engine,
    value: Option<usize>,
    optimal: bool,
    nodes_explored: u64,
    witness: Option<Partition>,
    witness_labels: Option<Vec<Vec<String>>>,
}

fn cmd_ctau(input: &str, options: &SolveOptions, json: bool) -> anyhow::Result<u8> {
    let doc = load(input)?;
    let h = &doc.hypergraph;
    let lab = doc.labels();
    let mut report = CtauReport {
        n: h.n(),
        edges: h.edge_count(),
        engine: options.engine,
        value: None,
        optimal: false,
        nodes_explored: 0,
        witness: None,
        witness_labels: None,
    };
    let outcome = match options.engine {
        Engine::Naive => ctau_naive(h, options.naive_limit),
        Engine::Exact => ctau_exact(h, &options.budget),
    };
    let code = match outcome {
        Ok(result) => {
            report.value = Some(result.value);
            report.optimal = result.optimal;
            report.nodes_explored = result.nodes_explored;
            report.witness_labels = Some(labeled_parts(&lab, &result.witness));
            report.witness = Some(result.witness);
            if result.optimal {
                0
            } else {
                EXIT_BUDGET
            }
        }
        Err(Error::BudgetExceeded { nodes }) => {
            report.nodes_explored = nodes;
            EXIT_BUDGET
        }
        Err(e) => return Err(e.into()),
    };
    if json {
        print_json(&report);
    } else {
        match (report.value, report.optimal) {
            (Some(v), true) => println!("C_tau = {v}"),
            (Some(v), false) => println!("C_tau >= {v} (search budget exhausted; lower bound)"),
            (None, _) => println!("C_tau unknown (search budget exhausted before any trc-partition)"),
        }
        if let Some(parts) = &report.witness_labels {
            let parts: Vec<String> = parts.iter().map(|p| format!("{{{}}}", p.join(","))).collect();
            println!("witness: {}", parts.join(" "));
        }
        println!("engine: {}, nodes: {}", report.engine, report.nodes_explored);
    }
    Ok(code)
}

#[derive(Serialize)]
struct CheckReport {
    valid: bool,
    parts: Vec<CheckedPart>,
}

#[derive(Serialize)]
struct CheckedPart {
    labels: Vec<String>,
    role: PartRole,
}

fn cmd_check(input: &str, partition: &Path, json: bool) -> anyhow::Result<u8> {
    let doc = load(input)?;
    let lab = doc.labels();
    let text = fs::read_to_string(partition).with_context(|| format!("reading {}", partition.display()))?;
    let partition = format::parse_partition(&text, Some(&lab))
        .map_err(anyhow::Error::from)
        .with_context(|| format!("parsing {}", partition.display()))?;
    let verdict = validate_trc_partition(&doc.hypergraph, &partition)?;
    let report = CheckReport {
        valid: verdict.valid,
        parts: labeled_parts(&lab, &partition)
            .into_iter()
            .zip(verdict.roles)
            .map(|(labels, role)| CheckedPart { labels, role })
            .collect(),
    };
    if json {
        print_json(&report);
    } else {
        for (i, part) in report.parts.iter().enumerate() {
            let role = match &part.role {
                PartRole::SingletonTransversal => "singleton transversal".to_string(),
                PartRole::CoalitionMember { partners } => {
                    let names: Vec<String> = partners.iter().map(|p| format!("P{}", p + 1)).collect();
                    format!("coalition with {}", names.join(","))
                }
                PartRole::Invalid { reason } => format!("INVALID: {reason:?}"),
            };
            println!("P{}: {{{}}}  {role}", i + 1, part.labels.join(","));
        }
        println!(
            "{} trc-partition of order {}",
            if report.valid { "valid" } else { "invalid" },
            partition.order()
        );
    }
    Ok(if report.valid { 0 } else { EXIT_FAILED })
}

#[derive(Serialize)]
struct CertifyReport<'a> {
    certificate: &'a trc_core::certificates::Certificate,
    coalition_degrees: Vec<usize>,
}

fn cmd_certify(spec: &str, exact: bool, options: &SolveOptions, json: bool) -> anyhow::Result<u8> {
    let spec: FamilySpec = spec.parse()?;
    let mut cert = certify(&spec)?;
    let (h, _) = spec.build()?;
    if exact {
        match report::solve(&h, options) {
            Ok(result) => cert = cert.with_exact(result.value, result.optimal),
            Err(Error::BudgetExceeded { .. }) => {}
            Err(e) => return Err(e.into()),
        }
    }
    let graph = coalition_graph(&h, &cert.partition)?;
    let coalition_degrees = (0..graph.part_count).map(|i| graph.degree(i)).collect();
    if json {
        print_json(&CertifyReport {
            certificate: &cert,
            coalition_degrees,
        });
    } else {
        print!("{}", cert.to_text());
    }
    Ok(if cert.is_valid() { 0 } else { EXIT_FAILED })
}

#[derive(Serialize)]
struct CrosscheckReport {
    seed: u64,
    generated: usize,
    feasible: usize,
    disagreements: Vec<String>,
}

fn cmd_crosscheck(count: usize, seed: u64, n_min: usize, n_max: usize, r: usize, json: bool) -> anyhow::Result<u8> {
    let corpus = random_corpus(count, n_min, n_max, r, seed)?;
    let mut report = CrosscheckReport {
        seed,
        generated: corpus.len(),
        feasible: 0,
        disagreements: Vec::new(),
    };
    for (i, h) in corpus.iter().enumerate() {
        let smallest = minimal_transversals(h, DEFAULT_MINIMAL_CAP)
            .sets
            .iter()
            .map(|s| s.len())
            .min()
            .unwrap_or(0);
        let t = tau(h).size;
        if t != smallest {
            report
                .disagreements
                .push(format!("#{i}: tau {t} but smallest minimal transversal has {smallest}"));
        }
        if !has_trc_partition(h) {
            continue;
        }
        report.feasible += 1;
        let naive = ctau_naive(h, n_max.max(DEFAULT_NAIVE_LIMIT))?;
        let exact = ctau_exact(h, &SearchBudget::default())?;
        if (naive.value, &naive.witness) != (exact.value, &exact.witness) {
            report.disagreements.push(format!(
                "#{i}: naive {} {} vs exact {} {}",
                naive.value, naive.witness, exact.value, exact.witness
            ));
        }
    }
    if json {
        print_json(&report);
    } else {
        println!(
            "{} hypergraphs (seed {}), {} with a trc-partition, {} disagreements",
            report.generated,
            seed,
            report.feasible,
            report.disagreements.len()
        );
        for d in &report.disagreements {
            println!("  {d}");
        }
    }
    Ok(if report.disagreements.is_empty() { 0 } else { EXIT_FAILED })
}
