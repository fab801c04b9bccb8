use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use mmfvs::exact::DEFAULT_BUDGET;
use mmfvs::scale::DEFAULT_K_LIMIT;
use mmfvs_cli::bench::{aggregate_csv, load_suite, run_suite, BenchAlgo, BenchOptions};
use mmfvs_cli::commands::{self, Algo};
use mmfvs_cli::dimacs::{parse_graph, parse_solution, serialize_graph, serialize_solution};
use mmfvs_cli::families::generate;
use mmfvs_cli::{default_seed, read_file, write_file};

/// Maximum minimal feedback vertex set toolkit. Graphs are DIMACS edge files
/// (`-` reads stdin); reports are JSON on stdout.
#[derive(Parser)]
#[command(name = "mmfvs", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgoArg {
    Delta,
    Poly,
}

#[derive(Subcommand)]
enum Command {
    /// Apply the safe reduction rules.
    Reduce {
        graph: String,
        /// Write the reduced graph here (renumbered densely).
        #[arg(long)]
        out: Option<String>,
        /// Write the step log here.
        #[arg(long)]
        log: Option<String>,
    },
    /// Polynomial-time approximation.
    Approx {
        graph: String,
        #[arg(long, value_enum, default_value = "poly")]
        algo: AlgoArg,
    },
    /// Exact branch and bound.
    Exact {
        graph: String,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Guessing search around a small fvs read from a solution file.
    Smallfvs {
        graph: String,
        #[arg(long)]
        fvs: String,
        #[arg(long, default_value_t = DEFAULT_K_LIMIT)]
        k_limit: usize,
    },
    /// Ratio-r approximation via pairs of fvs parts.
    Subexp {
        graph: String,
        #[arg(long)]
        ratio: f64,
        #[arg(long)]
        k_limit: Option<usize>,
    },
    /// Generate an instance in DIMACS format.
    Gen {
        family: String,
        params: Vec<String>,
        /// Defaults to MMFVS_SEED, else 0.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<String>,
        /// Write the planted fvs, for families that have one.
        #[arg(long)]
        fvs_out: Option<String>,
    },
    /// Check a solution file; exit 0 minimal, 2 not an fvs, 3 redundant.
    Verify { graph: String, solution: String },
    /// Run a suite (`smoke` or a suite file) and emit JSON lines.
    Bench {
        #[arg(long)]
        suite: String,
        /// Comma-separated: reduce, delta, poly, exact, smallfvs, subexp.
        #[arg(long, default_value = "delta,poly,exact")]
        algos: String,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long, default_value_t = 4.0)]
        ratio: f64,
        /// Worker threads; 0 uses every core.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Print the aggregate as CSV instead of JSON.
        #[arg(long)]
        csv: bool,
    },
}

fn load_graph(path: &str) -> Result<mmfvs::Graph> {
    let text = read_file(path)?;
    parse_graph(&text).with_context(|| format!("parsing {path}"))
}

fn run() -> Result<ExitCode> {
    let cli = Cli::parse();
    match cli.command {
        Command::Reduce { graph, out, log } => {
            let g = load_graph(&graph)?;
            let (report, trace) = commands::run_reduce(&g)?;
            if let Some(path) = out {
                let comments = vec![format!("reduced from {graph}")];
                write_file(&path, &serialize_graph(trace.reduced(), &comments))?;
            }
            if let Some(path) = log {
                write_file(&path, &trace.to_log(1))?;
            }
            println!("{}", report.to_json());
        }
        Command::Approx { graph, algo } => {
            let g = load_graph(&graph)?;
            let algo = match algo {
                AlgoArg::Delta => Algo::Delta,
                AlgoArg::Poly => Algo::Poly,
            };
            println!("{}", commands::run_approx(&g, algo)?.to_json());
        }
        Command::Exact { graph, budget } => {
            let g = load_graph(&graph)?;
            println!("{}", commands::run_exact(&g, budget)?.to_json());
        }
        Command::Smallfvs {
            graph,
            fvs,
            k_limit,
        } => {
            let g = load_graph(&graph)?;
            let s = parse_solution(&read_file(&fvs)?, g.n())
                .with_context(|| format!("parsing {fvs}"))?;
            println!("{}", commands::run_smallfvs(&g, &s, k_limit)?.to_json());
        }
        Command::Subexp {
            graph,
            ratio,
            k_limit,
        } => {
            let g = load_graph(&graph)?;
            let r = commands::run_subexp(&g, ratio, k_limit.unwrap_or(usize::MAX))?;
            println!("{}", r.to_json());
        }
        Command::Gen {
            family,
            params,
            seed,
            out,
            fvs_out,
        } => {
            let seed = seed.unwrap_or_else(default_seed);
            let generated = generate(&family, &params, seed)?;
            let text = serialize_graph(
                &generated.graph,
                std::slice::from_ref(&generated.provenance),
            );
            match out {
                Some(path) => write_file(&path, &text)?,
                None => print!("{text}"),
            }
            if let Some(path) = fvs_out {
                let Some(s) = &generated.fvs else {
                    bail!("family `{family}` does not plant an fvs");
                };
                write_file(&path, &serialize_solution(s, &[generated.provenance]))?;
            }
        }
        Command::Verify { graph, solution } => {
            let g = load_graph(&graph)?;
            let s = parse_solution(&read_file(&solution)?, g.n())
                .with_context(|| format!("parsing {solution}"))?;
            let (verdict, json) = commands::verify(&g, &s)?;
            println!("{json}");
            return Ok(ExitCode::from(verdict as u8));
        }
        Command::Bench {
            suite,
            algos,
            budget,
            ratio,
            jobs,
            csv,
        } => {
            let algos = algos
                .split(',')
                .map(|s| BenchAlgo::parse(s.trim()))
                .collect::<Result<Vec<_>, _>>()?;
            let entries = load_suite(&suite)?;
            let opts = BenchOptions {
                algos,
                budget,
                ratio,
                jobs,
                ..Default::default()
            };
            let out = run_suite(&entries, &opts)?;
            for r in &out.records {
                println!("{r}");
            }
            if csv {
                print!("{}", aggregate_csv(&out));
            } else {
                println!("{}", out.aggregate);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
