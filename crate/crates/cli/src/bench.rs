//! Benchmark suites: line-oriented lists of instances, each run through a
//! set of algorithms in a bounded worker pool.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use mmfvs::exact::DEFAULT_BUDGET;
use mmfvs::scale::DEFAULT_K_LIMIT;
use mmfvs::Graph;
use rayon::prelude::*;
use serde_json::json;

use crate::commands::{run_approx, run_exact, run_reduce, run_smallfvs, run_subexp, Algo};
use crate::dimacs::parse_graph;
use crate::families::generate;
use crate::report::{Report, SCHEMA};
use crate::{read_file, CliError};

/// Ten small instances covering every family with a cheap parameter choice.
pub const SMOKE_SUITE: &str = "\
complete 4 0
cycle 6 0
bipartite 2 5 0
random 10 0.3 1
random 12 0.25 2
random-m 9 14 3
small-fvs 12 3 4
tight-forest 2 0
tight-extremal 2 0
nph-gadget k2 0
";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    Family {
        family: String,
        params: Vec<String>,
        seed: u64,
    },
    File(PathBuf),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub line: usize,
    pub spec: String,
    pub source: Source,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BenchAlgo {
    Reduce,
    Delta,
    Poly,
    Exact,
    SmallFvs,
    Subexp,
}

impl BenchAlgo {
    pub fn parse(s: &str) -> Result<Self, CliError> {
        Ok(match s {
            "reduce" => BenchAlgo::Reduce,
            "delta" => BenchAlgo::Delta,
            "poly" => BenchAlgo::Poly,
            "exact" => BenchAlgo::Exact,
            "smallfvs" => BenchAlgo::SmallFvs,
            "subexp" => BenchAlgo::Subexp,
            other => {
                return Err(CliError::Usage(format!(
                    "unknown bench algorithm `{other}`"
                )))
            }
        })
    }
}

#[derive(Clone, Debug)]
pub struct BenchOptions {
    pub algos: Vec<BenchAlgo>,
    pub budget: u64,
    pub ratio: f64,
    pub k_limit: usize,
    /// Worker threads; 0 means one per core.
    pub jobs: usize,
}

impl Default for BenchOptions {
    fn default() -> Self {
        BenchOptions {
            algos: vec![BenchAlgo::Delta, BenchAlgo::Poly, BenchAlgo::Exact],
            budget: DEFAULT_BUDGET,
            ratio: 4.0,
            k_limit: DEFAULT_K_LIMIT,
            jobs: 0,
        }
    }
}

/// Parses a suite: `family params... seed` or `file <path>` per line, `#`
/// comments. Relative paths resolve against `base`.
pub fn parse_suite(text: &str, base: &Path) -> Result<Vec<Entry>, CliError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let words: Vec<&str> = body.split_whitespace().collect();
        let bad = || CliError::Usage(format!("suite line {}: `{body}`", i + 1));
        let source = match words.as_slice() {
            ["file", path] => Source::File(base.join(path)),
            [family, rest @ .., seed] => Source::Family {
                family: family.to_string(),
                params: rest.iter().map(|s| s.to_string()).collect(),
                seed: seed.parse().map_err(|_| bad())?,
            },
            _ => return Err(bad()),
        };
        out.push(Entry {
            line: i + 1,
            spec: body.to_string(),
            source,
        });
    }
    Ok(out)
}

/// The built-in suite called `name`, or the suite file at that path.
pub fn load_suite(name: &str) -> Result<Vec<Entry>, CliError> {
    if name == "smoke" {
        return parse_suite(SMOKE_SUITE, Path::new("."));
    }
    let text = read_file(name)?;
    let base = Path::new(name).parent().unwrap_or(Path::new("."));
    parse_suite(&text, base)
}

struct Instance {
    graph: Graph,
    fvs: Option<mmfvs::VertexSet>,
}

fn load(entry: &Entry) -> Result<Instance, CliError> {
    match &entry.source {
        Source::Family {
            family,
            params,
            seed,
        } => {
            let g = generate(family, params, *seed)?;
            Ok(Instance {
                graph: g.graph,
                fvs: g.fvs,
            })
        }
        Source::File(path) => Ok(Instance {
            graph: parse_graph(&read_file(&path.to_string_lossy())?)?,
            fvs: None,
        }),
    }
}

fn run_one(entry: &Entry, opts: &BenchOptions) -> Result<(usize, usize, Vec<Report>), CliError> {
    let inst = load(entry)?;
    let g = &inst.graph;
    let mut reports = Vec::new();
    for algo in &opts.algos {
        let r = match algo {
            BenchAlgo::Reduce => run_reduce(g)?.0,
            BenchAlgo::Delta => run_approx(g, Algo::Delta)?,
            BenchAlgo::Poly => run_approx(g, Algo::Poly)?,
            BenchAlgo::Exact => run_exact(g, opts.budget)?,
            BenchAlgo::SmallFvs => {
                // Without a planted fvs, start from the greedy one.
                let s = match &inst.fvs {
                    Some(s) => s.clone(),
                    None => {
                        mmfvs::make_minimal(g, &g.vertex_set(), &Default::default())?
                            .solution
                            .fvs
                    }
                };
                if s.len() > opts.k_limit {
                    continue;
                }
                run_smallfvs(g, &s, opts.k_limit)?
            }
            BenchAlgo::Subexp => run_subexp(g, opts.ratio, usize::MAX)?,
        };
        reports.push(r);
    }
    Ok((g.n(), g.m(), reports))
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct AlgoTotals {
    pub runs: usize,
    pub total_size: usize,
    pub total_ms: f64,
    pub optimal: usize,
}

#[derive(Clone, Debug)]
pub struct BenchOutput {
    /// One JSON line per instance, in suite order.
    pub records: Vec<serde_json::Value>,
    pub aggregate: serde_json::Value,
    pub totals: BTreeMap<String, AlgoTotals>,
}

pub fn run_suite(entries: &[Entry], opts: &BenchOptions) -> Result<BenchOutput, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs)
        .build()
        .map_err(|e| CliError::Usage(format!("worker pool: {e}")))?;
    let results: Vec<Result<_, CliError>> =
        pool.install(|| entries.par_iter().map(|e| run_one(e, opts)).collect());

    let mut records = Vec::new();
    let mut totals: BTreeMap<String, AlgoTotals> = BTreeMap::new();
    let mut all_ok = true;
    for (i, (entry, res)) in entries.iter().zip(results).enumerate() {
        let (n, m, reports) = res.map_err(|e| match e {
            CliError::Usage(msg) => CliError::Usage(format!("suite line {}: {msg}", entry.line)),
            other => other,
        })?;
        for r in &reports {
            let t = totals.entry(r.algorithm.clone()).or_default();
            t.runs += 1;
            t.total_size += r.solution_size;
            t.total_ms += r.elapsed_ms;
            t.optimal += usize::from(r.optimal == Some(true));
            all_ok &= r.certificate_ok;
        }
        records.push(json!({
            "schema": SCHEMA,
            "kind": "instance",
            "index": i,
            "instance": entry.spec,
            "n": n,
            "m": m,
            "reports": reports,
        }));
    }
    let per_algo: serde_json::Map<String, serde_json::Value> = totals
        .iter()
        .map(|(k, t)| {
            (
                k.clone(),
                json!({
                    "runs": t.runs,
                    "total_size": t.total_size,
                    "mean_size": t.total_size as f64 / t.runs.max(1) as f64,
                    "total_ms": t.total_ms,
                    "optimal": t.optimal,
                }),
            )
        })
        .collect();
    let aggregate = json!({
        "schema": SCHEMA,
        "kind": "aggregate",
        "instances": entries.len(),
        "certificates_ok": all_ok,
        "algorithms": per_algo,
    });
    Ok(BenchOutput {
        records,
        aggregate,
        totals,
    })
}

/// The aggregate row flattened to CSV, one line per algorithm.
pub fn aggregate_csv(out: &BenchOutput) -> String {
    let mut s = String::from("algorithm,runs,total_size,mean_size,total_ms,optimal\n");
    for (name, t) in &out.totals {
        s.push_str(&format!(
            "{name},{},{},{:.3},{:.3},{}\n",
            t.runs,
            t.total_size,
            t.total_size as f64 / t.runs.max(1) as f64,
            t.total_ms,
            t.optimal
        ));
    }
    s
}
