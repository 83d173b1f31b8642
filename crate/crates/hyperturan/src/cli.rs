//! `hyperturan <command>`: exit 0 on success, 2 when a check finds a violation, 1 on errors,
//! 64 on bad usage.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use hyperturan_core::deletion::{alpha_exponent, deletion_construct, r_density, strictly_balanced};
use hyperturan_core::ffield::norm_fiber_census;
use hyperturan_core::normgraph::{
    density_inequality_holds, exhaustive_configurations, freeness_units, merge_partials, norm_graph_build, run_unit,
    sample_one, FreenessReport, KrsSolver, NormGraphParams,
};
use hyperturan_core::randalg::{ra_pipeline, Clock, NoClock, PipelineParams};
use hyperturan_core::sidon::{sidon_build, sidon_verify};
use hyperturan_core::verifier::partition::meets_bound;
use hyperturan_core::verifier::{count_copies, erdos_kleitman_partition, find_violation, PartApexTable};
use hyperturan_core::{Error, ExtElem, ExtField, PatternSpec, PrimeField, TargetGraph, Witness};
use rand::Rng;
use rayon::prelude::*;
use serde_json::json;

use crate::error::CliError;
use crate::graph_file::{read_graph_path, write_graph_path};
use crate::parallel::{chunks, pool, workers};
use crate::pattern::{parse_list, parse_pattern};
use crate::report::{witness_json, RunReport};
use crate::WallClock;

#[derive(Parser, Debug)]
#[command(name = "hyperturan", version, about = "Build and check pattern-free uniform hypergraphs")]
struct Cli {
    /// Print the report as JSON (default).
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,
    /// Print the report as `section,key,value` rows.
    #[arg(long, global = true)]
    csv: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a hypergraph.
    #[command(subcommand)]
    Construct(Construct),
    /// Decide whether a graph file (or a norm graph) contains a pattern.
    Verify(VerifyArgs),
    /// Count copies of a pattern in a graph file.
    Count(GraphPattern),
    /// r-density and strict balance of a pattern.
    Density(DensityArgs),
    /// Three additive sets mod m with full pairwise sumsets.
    Sidon {
        #[arg(long)]
        m: u64,
    },
    /// Numerical checks of the field-level facts the constructions rest on.
    #[command(subcommand)]
    Selftest(Selftest),
    /// Keep only the edges crossing a balanced random r-partition.
    Partition(PartitionArgs),
}

#[derive(Subcommand, Debug)]
enum Construct {
    /// Norm graph over F_{q^3}.
    Norm(NormArgs),
    /// Random symmetric polynomial graph, pruned of bad sequences.
    RandomAlgebraic(RandomAlgebraicArgs),
    /// G(n, p) with one edge deleted from every pattern copy.
    Deletion(DeletionArgs),
}

#[derive(Args, Debug)]
struct NormArgs {
    #[arg(long)]
    q: u64,
    /// Exponent sets `S1;S2;S3`, each a comma-separated list.
    #[arg(long)]
    exponents: Option<String>,
    /// Report counts from the closed form without listing edges.
    #[arg(long, conflicts_with = "out")]
    implicit: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct RandomAlgebraicArgs {
    #[arg(long)]
    q: u64,
    #[arg(long, default_value_t = 3)]
    r: usize,
    #[arg(long)]
    t: usize,
    /// Total degree bound per block of variables.
    #[arg(long)]
    deg: u32,
    /// Apex-set size from which a family of tuples counts as bad.
    #[arg(long)]
    threshold: u32,
    #[arg(long)]
    seed: u64,
    /// Graph file of the pattern to count; defaults to K_{threshold,t}.
    #[arg(long)]
    target: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Add per-stage wall-clock times to the metrics.
    #[arg(long)]
    timings: bool,
}

#[derive(Args, Debug)]
struct DeletionArgs {
    #[arg(long)]
    n: u32,
    #[arg(long, default_value_t = 3)]
    r: usize,
    #[arg(long)]
    pattern: String,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
#[command(args_conflicts_with_subcommands = true)]
struct VerifyArgs {
    #[command(subcommand)]
    norm: Option<VerifyNorm>,
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long)]
    pattern: Option<String>,
}

#[derive(Subcommand, Debug)]
enum VerifyNorm {
    /// Census of common apexes over pairs of pairs in the norm graph.
    Norm(VerifyNormArgs),
}

#[derive(Args, Debug)]
struct VerifyNormArgs {
    #[arg(long)]
    q: u64,
    /// Part sizes `2,2,s`.
    #[arg(long)]
    pattern: String,
    #[arg(long)]
    exponents: Option<String>,
    /// Sample this many configurations from the implicit graph instead of scanning all.
    #[arg(long, requires = "seed")]
    samples: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Largest number of configurations an exhaustive scan may visit.
    #[arg(long, default_value_t = 10_000_000_000)]
    budget: u64,
}

#[derive(Args, Debug)]
struct GraphPattern {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    pattern: String,
}

#[derive(Args, Debug)]
struct DensityArgs {
    #[arg(long)]
    pattern: String,
    #[arg(long, default_value_t = 3)]
    r: usize,
}

#[derive(Subcommand, Debug)]
enum Selftest {
    /// Solution counts of random 4-pair norm systems.
    LemmaKrs {
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long)]
        seed: u64,
    },
    /// Sizes of the norm fibers of F_{q^3}.
    NormFibers {
        #[arg(long)]
        q: u64,
    },
}

#[derive(Args, Debug)]
struct PartitionArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// A finished command: its report and whether it found a violation.
type Outcome = Result<(RunReport, bool), CliError>;

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    64
                }
            };
        }
    };
    let start = Instant::now();
    let result = match cli.command {
        Command::Construct(Construct::Norm(a)) => construct_norm(a),
        Command::Construct(Construct::RandomAlgebraic(a)) => construct_random_algebraic(a),
        Command::Construct(Construct::Deletion(a)) => construct_deletion(a),
        Command::Verify(VerifyArgs { norm: Some(VerifyNorm::Norm(a)), .. }) => verify_norm(a),
        Command::Verify(VerifyArgs { norm: None, input, pattern }) => match (input, pattern) {
            (Some(input), Some(pattern)) => verify_file(GraphPattern { input, pattern }),
            _ => Err(CliError::usage("verify needs `--input` and `--pattern`, or the `norm` subcommand")),
        },
        Command::Count(a) => count(a),
        Command::Density(a) => density(a),
        Command::Sidon { m } => sidon(m),
        Command::Selftest(Selftest::LemmaKrs { q, trials, seed }) => lemma_krs(q, trials, seed),
        Command::Selftest(Selftest::NormFibers { q }) => norm_fibers(q),
        Command::Partition(a) => partition(a),
    };
    match result {
        Ok((mut report, violation)) => {
            report.elapsed_ms = (start.elapsed().as_secs_f64() * 1e6).round() / 1e3;
            let text = if cli.csv { report.to_csv() } else { report.to_json() };
            if let Err(e) = out.write_all(text.as_bytes()) {
                let _ = writeln!(err, "error: {e}");
                return 1;
            }
            if violation {
                2
            } else {
                0
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn parse_exponents(text: &str) -> Result<[Vec<u64>; 3], CliError> {
    let sets: Vec<Vec<u64>> = text
        .split(';')
        .map(|s| parse_list(s).map(|v| v.into_iter().map(u64::from).collect()))
        .collect::<Result<_, _>>()?;
    sets.try_into().map_err(|_| CliError::usage("`--exponents` needs three sets separated by `;`"))
}

fn norm_params(q: u64, exponents: Option<&str>) -> Result<NormGraphParams, CliError> {
    Ok(match exponents {
        Some(text) => NormGraphParams::with_exponents(PrimeField::new(q)?, parse_exponents(text)?)?,
        None => NormGraphParams::new(q)?,
    })
}

fn describe_norm(report: &mut RunReport, p: &NormGraphParams) {
    let ext = p.ext();
    report
        .param("q", p.q())
        .param("exponents", p.exponents())
        .metric("cubic_modulus", ext.modulus())
        .metric("generator", ext.generator().0)
        .metric("base_primitive", p.primitive())
        .metric("l", [p.l(0), p.l(1), p.l(2)])
        .metric("part_sizes", p.part_sizes())
        .count("n", p.n())
        .count("edges", p.edge_count());
}

fn construct_norm(a: NormArgs) -> Outcome {
    let p = norm_params(a.q, a.exponents.as_deref())?;
    let mut report = RunReport::new("construct norm", 0);
    describe_norm(&mut report, &p);
    report.param("implicit", a.implicit).metric("density_inequality", density_inequality_holds(&p));
    if !a.implicit {
        let g = norm_graph_build(&p)?;
        report.count("edges_enumerated", g.edge_count());
        if let Some(path) = &a.out {
            write_graph_path(&g, path)?;
            report.param("out", path);
        }
    }
    Ok((report, false))
}

fn construct_random_algebraic(a: RandomAlgebraicArgs) -> Outcome {
    let target = match &a.target {
        Some(path) => PatternSpec::Explicit(TargetGraph::new(read_graph_path(path)?)?),
        None => PatternSpec::Bipartite { r: a.r, s: a.threshold, t: a.t as u32 },
    };
    let params = PipelineParams { q: a.q, r: a.r, t: a.t, degree: a.deg, threshold: a.threshold, seed: a.seed };
    let wall = WallClock::start();
    let clock: &dyn Clock = if a.timings { &wall } else { &NoClock };
    let (rep, pruned) = ra_pipeline(&params, &target, clock)?;
    let mut report = RunReport::new("construct random-algebraic", a.seed);
    report
        .param("q", a.q)
        .param("r", a.r)
        .param("t", a.t)
        .param("deg", a.deg)
        .param("threshold", a.threshold)
        .param("target_vertices", target.vertex_count())
        .param("target_edges", target.edge_count())
        .metric("polynomial_sha256", hex::encode(rep.digest))
        .metric("n", rep.n)
        .count("edges", rep.edges)
        .count("copies_before", rep.copies_before)
        .metric("bad_sequences", rep.bad_sequences)
        .count("bad_sequences_ordered", rep.bad_sequences_ordered)
        .metric("vertices_removed", rep.vertices_removed)
        .metric("n_after", rep.n_after)
        .count("edges_after", rep.edges_after)
        .count("copies_after", rep.copies_after)
        .metric("residual_bad_sequences", rep.residual_bad)
        .metric("apex_size_histogram", &rep.apex_histogram)
        .metric("apex_size_moments", &rep.apex_moments);
    if a.timings {
        let timings: BTreeMap<&str, f64> = rep.timings.iter().copied().collect();
        report.metric("timings_ms", timings);
    }
    if let Some(path) = &a.out {
        write_graph_path(&pruned.graph, path)?;
        report.param("out", path);
    }
    Ok((report, rep.residual_bad > 0))
}

fn construct_deletion(a: DeletionArgs) -> Outcome {
    let spec = parse_pattern(&a.pattern, a.r)?;
    let (g, rep) = deletion_construct(a.n, a.r, &spec, a.seed)?;
    let mut report = RunReport::new("construct deletion", a.seed);
    report
        .param("n", a.n)
        .param("r", a.r)
        .param("pattern", &a.pattern)
        .metric("p", rep.p)
        .metric("alpha", rep.alpha.to_string())
        .count("sampled_edges", rep.sampled_edges)
        .count("deleted_edges", rep.deleted_edges)
        .count("surviving_edges", rep.surviving_edges)
        .metric("rounds", rep.rounds);
    if let Some(path) = &a.out {
        write_graph_path(&g, path)?;
        report.param("out", path);
    }
    Ok((report, false))
}

/// Apex class size of a `2,2,s` pattern given in any order.
fn apex_size(pattern: &str) -> Result<u32, CliError> {
    let mut sizes = parse_list(pattern)?;
    sizes.sort_unstable();
    match sizes[..] {
        [a, 2, 2] | [2, 2, a] => Ok(a.max(1)),
        _ => Err(CliError::usage("norm graphs are checked against `2,2,s` patterns only")),
    }
}

fn verify_norm(a: VerifyNormArgs) -> Outcome {
    let apex = apex_size(&a.pattern)?;
    let p = norm_params(a.q, a.exponents.as_deref())?;
    let pool = pool()?;
    let rep = match a.samples {
        Some(samples) => {
            let seed = a.seed.expect("clap enforces --seed with --samples");
            let solver = KrsSolver::new(p.ext().clone())?;
            let ranges = chunks(samples, workers() * 4);
            let parts: Vec<FreenessReport> = pool.install(|| {
                ranges
                    .into_par_iter()
                    .map(|range| {
                        let mut part = FreenessReport::default();
                        for i in range {
                            part.merge(sample_one(&p, &solver, apex, seed, i)?);
                        }
                        Ok(part)
                    })
                    .collect::<Result<_, Error>>()
            })?;
            merge_partials(apex, false, parts)
        }
        None => {
            let needed = exhaustive_configurations(&p);
            if needed > a.budget as u128 {
                return Err(Error::BudgetExceeded { needed, budget: a.budget as u128 }.into());
            }
            let g = norm_graph_build(&p)?;
            let table = PartApexTable::build(&g).expect("norm graphs are 3-partite");
            let units = freeness_units(&p);
            let parts: Vec<FreenessReport> =
                pool.install(|| units.into_par_iter().map(|u| run_unit(&p, &table, apex, u)).collect());
            merge_partials(apex, true, parts)
        }
    };
    let mut report = RunReport::new("verify norm", a.seed.unwrap_or(0));
    describe_norm(&mut report, &p);
    report
        .param("pattern", [2, 2, apex])
        .param("mode", if rep.exhaustive { "exhaustive" } else { "sampled" })
        .count("configurations", rep.configurations)
        .count("degenerate_configurations", rep.degenerate_configurations)
        .metric("max_common_apexes", rep.max_apex)
        .metric("max_common_apexes_distinct_pairs", rep.max_apex_distinct)
        .metric("max_common_apexes_degenerate_pairs", rep.max_apex_degenerate)
        .count("violations", rep.violations)
        .metric("verdict", if rep.violations == 0 { "free" } else { "violation" });
    if let Some(samples) = a.samples {
        report
            .param("samples", samples)
            .metric("systems_checked", rep.systems_checked)
            .metric("max_solutions_distinct_pairs", rep.max_solutions_distinct)
            .metric("max_solutions_degenerate_pairs", rep.max_solutions_degenerate)
            .metric("inconsistencies", rep.inconsistencies);
    } else {
        report.param("budget", a.budget);
    }
    for w in &rep.witnesses {
        report.witness(json!({ "kind": "multipartite", "classes": w.classes, "edges": w.edges() }));
    }
    Ok((report, rep.violations > 0))
}

fn load_with_pattern(a: &GraphPattern) -> Result<(hyperturan_core::Hypergraph, PatternSpec), CliError> {
    let g = read_graph_path(&a.input)?;
    let spec = parse_pattern(&a.pattern, g.r())?;
    Ok((g, spec))
}

fn verify_file(a: GraphPattern) -> Outcome {
    let (g, spec) = load_with_pattern(&a)?;
    let found: Option<Witness> = find_violation(&g, &spec)?;
    let mut report = RunReport::new("verify", 0);
    report
        .param("input", &a.input)
        .param("pattern", &a.pattern)
        .metric("n", g.n())
        .count("edges", g.edge_count())
        .metric("verdict", if found.is_some() { "violation" } else { "free" });
    if let Some(w) = &found {
        report.witness(witness_json(w));
    }
    Ok((report, found.is_some()))
}

fn count(a: GraphPattern) -> Outcome {
    let (g, spec) = load_with_pattern(&a)?;
    let copies = count_copies(&g, &spec)?;
    let mut report = RunReport::new("count", 0);
    report
        .param("input", &a.input)
        .param("pattern", &a.pattern)
        .metric("n", g.n())
        .count("edges", g.edge_count())
        .count("count", copies);
    Ok((report, false))
}

fn density(a: DensityArgs) -> Outcome {
    let target = parse_pattern(&a.pattern, a.r)?.to_target()?;
    let h = target.graph();
    let profile = r_density(h)?;
    let alpha = match alpha_exponent(h.r() as u64, target.v() as u64, target.e() as u64) {
        Ok(x) => Some(x.to_string()),
        Err(Error::DegenerateTarget) => None,
        Err(e) => return Err(e.into()),
    };
    let mut report = RunReport::new("density", 0);
    report
        .param("pattern", &a.pattern)
        .param("r", h.r())
        .metric("vertices", target.v())
        .metric("edges", target.e())
        .metric("m_r", profile.m_r.to_string())
        .metric("densest_vertex_sets", &profile.argmax)
        .metric("strictly_balanced", strictly_balanced(h)?)
        .metric("deletion_exponent", alpha);
    Ok((report, false))
}

fn sidon(m: u64) -> Outcome {
    let t = sidon_build(m)?;
    let mut report = RunReport::new("sidon", 0);
    report
        .param("m", m)
        .metric("k", t.k)
        .metric("l", t.l)
        .metric("sets", &t.sets)
        .metric("sumset_sizes", t.sumset_sizes())
        .metric("full_sumsets", sidon_verify(&t));
    Ok((report, false))
}

/// Four distinct `(element, nonzero scalar)` pairs, drawn from stream `index` of `seed`.
fn random_system(ext: &ExtField, seed: u64, index: u64) -> Vec<(ExtElem, u32)> {
    let q = ext.base().modulus();
    let mut rng = hyperturan_core::rng::stream(seed, index);
    let mut pairs = Vec::with_capacity(4);
    while pairs.len() < 4 {
        let p = (ext.element(rng.random_range(0..ext.size() as u32)), rng.random_range(1..q));
        if !pairs.contains(&p) {
            pairs.push(p);
        }
    }
    pairs
}

const KRS_BOUND: u64 = 6;

fn lemma_krs(q: u64, trials: u64, seed: u64) -> Outcome {
    let solver = KrsSolver::new(ExtField::new(PrimeField::new(q)?)?)?;
    let pool = pool()?;
    let parts: Vec<BTreeMap<u64, u64>> = pool.install(|| {
        chunks(trials, workers() * 4)
            .into_par_iter()
            .map(|range| {
                let mut hist = BTreeMap::new();
                for i in range {
                    *hist.entry(solver.count(&random_system(solver.ext(), seed, i))?).or_insert(0) += 1;
                }
                Ok(hist)
            })
            .collect::<Result<_, Error>>()
    })?;
    let mut hist: BTreeMap<u64, u64> = BTreeMap::new();
    for part in parts {
        for (k, v) in part {
            *hist.entry(k).or_insert(0) += v;
        }
    }
    let max = hist.keys().next_back().copied().unwrap_or(0);
    let mut report = RunReport::new("selftest lemma-krs", seed);
    report
        .param("q", q)
        .param("trials", trials)
        .metric("bound", KRS_BOUND)
        .metric("max_solutions", max)
        .metric("solution_histogram", &hist)
        .metric("verdict", if max <= KRS_BOUND { "ok" } else { "violation" });
    Ok((report, max > KRS_BOUND))
}

fn norm_fibers(q: u64) -> Outcome {
    let ext = ExtField::new(PrimeField::new(q)?)?;
    let census = norm_fiber_census(&ext)?;
    let expected = q * q + q + 1;
    let nonzero = &census[1..];
    let (lo, hi) = (nonzero.iter().min().copied(), nonzero.iter().max().copied());
    let ok = census[0] == 1 && lo == Some(expected) && hi == Some(expected);
    let mut report = RunReport::new("selftest norm-fibers", 0);
    report
        .param("q", q)
        .metric("zero_fiber", census[0])
        .metric("nonzero_fiber_min", lo)
        .metric("nonzero_fiber_max", hi)
        .metric("expected_nonzero_fiber", expected)
        .metric("verdict", if ok { "ok" } else { "violation" });
    Ok((report, !ok))
}

fn partition(a: PartitionArgs) -> Outcome {
    let g = read_graph_path(&a.input)?;
    let outcome = erdos_kleitman_partition(&g, a.seed)?;
    let kept = outcome.graph.edge_count();
    let mut report = RunReport::new("partition", a.seed);
    report
        .param("input", &a.input)
        .metric("r", g.r())
        .metric("part_sizes", outcome.graph.parts())
        .count("edges", g.edge_count())
        .count("transversal_edges", kept)
        .metric("attempts", outcome.attempts)
        .metric("meets_bound", meets_bound(g.r(), kept as u128, g.edge_count() as u128))
        .metric("original_ids", &outcome.original);
    if let Some(path) = &a.out {
        write_graph_path(&outcome.graph, path)?;
        report.param("out", path);
    }
    Ok((report, false))
}
