//! The work behind each subcommand, independent of argument parsing.

use std::time::Instant;

use mmfvs::exact::exact_mmfvs;
use mmfvs::reduce::reduce;
use mmfvs::scale::subexp_with_limit;
use mmfvs::solution::{is_minimal_fvs, make_minimal};
use mmfvs::{
    approx_delta, approx_poly, smallfvs, ApproxReport, Graph, MinimalityVerdict, VertexSet,
};
use serde_json::json;

use crate::report::{Report, SCHEMA};
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Algo {
    Delta,
    Poly,
}

impl Algo {
    pub fn name(self) -> &'static str {
        match self {
            Algo::Delta => "approx-delta",
            Algo::Poly => "approx-poly",
        }
    }
}

/// Reduces `g`; the report carries the lifted arbitrary minimal fvs of the
/// reduced graph and the step log.
pub fn run_reduce(g: &Graph) -> Result<(Report, mmfvs::Trace), CliError> {
    let t0 = Instant::now();
    let trace = reduce(g);
    let h = trace.reduced();
    let local = make_minimal(h, &h.vertex_set(), &VertexSet::new())?.solution;
    let sol = trace.lift(&local)?;
    let report = Report::new("reduce", g, &sol, t0.elapsed())?
        .with_branch("reduced")
        .with_details(json!({
            "reduced_n": h.n(),
            "reduced_m": h.m(),
            "steps": trace.steps().len(),
            "safe": trace.is_safe(),
            "log": trace.to_log(1),
        }));
    Ok((report, trace))
}

pub fn run_approx(g: &Graph, algo: Algo) -> Result<Report, CliError> {
    let t0 = Instant::now();
    let r: ApproxReport = match algo {
        Algo::Delta => approx_delta(g)?,
        Algo::Poly => approx_poly(g)?,
    };
    let candidates: Vec<_> = r
        .candidates
        .iter()
        .map(|c| json!({"branch": c.branch.as_str(), "size": c.size, "bound": c.bound}))
        .collect();
    Ok(Report::new(algo.name(), g, &r.solution, t0.elapsed())?
        .with_guarantee(r.guarantee)
        .with_branch(r.branch.as_str())
        .with_details(json!({
            "reduced_n": r.reduced_n,
            "reduced_max_degree": r.reduced_max_degree,
            "witness_vertex": r.witness_vertex.map(|v| v.0 + 1),
            "candidates": candidates,
        })))
}

pub fn run_exact(g: &Graph, budget: u64) -> Result<Report, CliError> {
    let t0 = Instant::now();
    let r = exact_mmfvs(g, budget)?;
    Ok(Report::new("exact", g, &r.solution, t0.elapsed())?
        .with_optimal(r.optimal)
        .with_details(json!({"explored": r.explored, "budget": budget})))
}

pub fn run_smallfvs(g: &Graph, fvs: &VertexSet, k_limit: usize) -> Result<Report, CliError> {
    let t0 = Instant::now();
    let r = smallfvs(g, fvs, k_limit)?;
    let branch = if r.improved_over_input {
        "improved"
    } else {
        "input"
    };
    Ok(Report::new("smallfvs", g, &r.solution, t0.elapsed())?
        .with_guarantee(r.k as f64)
        .with_branch(branch)
        .with_details(json!({
            "k": r.k,
            "explored_states": r.explored_states,
            "state_bound": r.state_bound.to_string(),
            "within_state_bound": u128::from(r.explored_states) <= r.state_bound,
            "leaves": r.leaves,
        })))
}

pub fn run_subexp(g: &Graph, ratio: f64, k_limit: usize) -> Result<Report, CliError> {
    let t0 = Instant::now();
    let r = subexp_with_limit(g, ratio, k_limit)?;
    let branch = if r.early_return {
        "early-return"
    } else {
        "pairs"
    };
    let pairs: Vec<_> = r
        .pairs
        .iter()
        .map(|p| {
            json!({
                "i": p.i, "j": p.j, "fvs_size": p.fvs_size,
                "local_size": p.local_size, "lifted_size": p.lifted_size,
                "explored_states": p.explored_states,
            })
        })
        .collect();
    let parts: Vec<usize> = r.partition.parts.iter().map(|p| p.len()).collect();
    Ok(Report::new("subexp", g, &r.solution, t0.elapsed())?
        .with_guarantee(r.initial_size as f64)
        .with_branch(branch)
        .with_details(json!({
            "ratio": ratio,
            "early_return": r.early_return,
            "initial_size": r.initial_size,
            "parts": parts,
            "pairs": pairs,
        })))
}

/// Exit status of `verify`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Minimal = 0,
    NotFvs = 2,
    Redundant = 3,
}

pub fn verify(g: &Graph, s: &VertexSet) -> Result<(Verdict, serde_json::Value), CliError> {
    let one_based = |v: &mmfvs::Vertex| v.0 + 1;
    let out = match is_minimal_fvs(g, s)? {
        MinimalityVerdict::Minimal => {
            let sol = mmfvs::FvsSolution::certify(g, s.clone())?;
            let certs: Vec<_> = sol
                .certificates
                .iter()
                .map(|(v, c)| json!({"vertex": v.0 + 1, "cycle": c.vertices.iter().map(one_based).collect::<Vec<_>>()}))
                .collect();
            (
                Verdict::Minimal,
                json!({"schema": SCHEMA, "verdict": "minimal", "size": s.len(), "certificates": certs}),
            )
        }
        MinimalityVerdict::NotFvs(c) => (
            Verdict::NotFvs,
            json!({"schema": SCHEMA, "verdict": "not-fvs", "cycle": c.vertices.iter().map(one_based).collect::<Vec<_>>()}),
        ),
        MinimalityVerdict::Redundant(v) => (
            Verdict::Redundant,
            json!({"schema": SCHEMA, "verdict": "redundant", "vertex": v.0 + 1}),
        ),
    };
    Ok(out)
}
