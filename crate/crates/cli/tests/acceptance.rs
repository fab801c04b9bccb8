//! Acceptance suite. Every check runs against the brute-force oracle in
//! `core/tests/common` or against exactly known values, and prints one
//! PASS/FAIL line. The process exits non-zero if any check fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use common::{Dense, TABLE_MAX_N};
use mmfvs::approx::{approx_poly, onevertex};
use mmfvs::exact::{exact_mmfvs, DEFAULT_BUDGET};
use mmfvs::gen::{
    extract_vc_from_fvs_nph, gen_mis_gadget, gen_nph_gadget, gen_random, gen_random_with_small_fvs,
    gen_tight_extremal, gen_tight_forest, lift_vc_to_fvs, lift_vc_to_fvs_nph,
};
use mmfvs::reduce::{is_reduced, reduce};
use mmfvs::rng::SplitMix64;
use mmfvs::scale::{smallfvs, state_bound, subexp, Partition, DEFAULT_K_LIMIT};
use mmfvs::solution::{make_minimal, make_minimal_with, RemovalOrder};
use mmfvs::{Graph, Vertex, VertexSet};
use rayon::prelude::*;

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(failures: &[String], summary: String) -> Self {
        let detail = match failures.first() {
            None => summary,
            Some(first) => format!("{summary}; {} violation(s), first: {first}", failures.len()),
        };
        Outcome {
            pass: failures.is_empty(),
            detail,
        }
    }
}

fn ceil_div(a: usize, b: usize) -> usize {
    a.div_ceil(b)
}

fn oracle_mmfvs(g: &Graph) -> usize {
    if g.n() <= TABLE_MAX_N {
        common::mmfvs(g)
    } else {
        common::mmfvs_compressed(g)
    }
}

fn random_instance(seed: u64, n_lo: usize, n_hi: usize) -> Graph {
    let mut rng = SplitMix64::new(seed ^ 0x9e37_79b9_7f4a_7c15);
    let n = n_lo + rng.below((n_hi - n_lo + 1) as u64) as usize;
    let p = 0.12 + 0.4 * rng.next_f64();
    gen_random(n, p, seed).unwrap()
}

fn labelled_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(u32, u32)> = (0..n as u32)
        .flat_map(|a| (a + 1..n as u32).map(move |b| (a, b)))
        .collect();
    (0..1u32 << pairs.len())
        .map(|code| {
            let edges: Vec<(u32, u32)> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| code >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            Graph::from_edges(n, &edges).unwrap()
        })
        .collect()
}

fn describe(g: &Graph) -> String {
    let edges: Vec<String> = g.edges().map(|(a, b)| format!("{}-{}", a.0, b.0)).collect();
    format!("n={} [{}]", g.n(), edges.join(" "))
}

fn oracle_agreement() -> Outcome {
    let start = Instant::now();
    let mut graphs: Vec<Graph> = (1..=7)
        .flat_map(common::graphs_covering_isomorphism_classes)
        .filter(common::is_connected)
        .collect();
    let small = graphs.len();
    graphs.extend((0..200).map(|s| random_instance(1000 + s, 8, 14)));
    let failures: Vec<String> = graphs
        .par_iter()
        .filter_map(|g| {
            let r = exact_mmfvs(g, DEFAULT_BUDGET).unwrap();
            let want = common::mmfvs(g);
            let ok = r.optimal
                && r.solution.size() == want
                && common::is_minimal_fvs(g, &r.solution.fvs);
            (!ok).then(|| {
                format!(
                    "{}: exact {} oracle {}",
                    describe(g),
                    r.solution.size(),
                    want
                )
            })
        })
        .collect();
    let elapsed = start.elapsed();
    let mut failures = failures;
    if elapsed > Duration::from_secs(300) {
        failures.push(format!("took {elapsed:?}"));
    }
    Outcome::new(
        &failures,
        format!("{small} connected graphs n<=7 and 200 random graphs n in 8..=14 agree"),
    )
}

fn reduction_sample() -> Vec<Graph> {
    (0..500).map(|s| random_instance(2000 + s, 3, 12)).collect()
}

fn reduction_preserves_optimum() -> Outcome {
    let graphs = reduction_sample();
    let failures: Vec<String> = graphs
        .par_iter()
        .filter_map(|g| {
            let t = reduce(g);
            let a = exact_mmfvs(g, DEFAULT_BUDGET).unwrap();
            let b = exact_mmfvs(t.reduced(), DEFAULT_BUDGET).unwrap();
            let ok = a.optimal && b.optimal && a.solution.size() == b.solution.size();
            (!ok).then(|| {
                format!(
                    "{}: {} vs reduced {}",
                    describe(g),
                    a.solution.size(),
                    b.solution.size()
                )
            })
        })
        .collect();
    let shrunk = graphs
        .iter()
        .filter(|g| reduce(g).reduced().n() < g.n())
        .count();
    Outcome::new(
        &failures,
        format!("500 random graphs n<=12, {shrunk} of them shrunk by reduction"),
    )
}

fn lifting_keeps_minimality() -> Outcome {
    let graphs = reduction_sample();
    let failures: Vec<String> = graphs
        .par_iter()
        .enumerate()
        .flat_map_iter(|(i, g)| {
            let t = reduce(g);
            let h = t.reduced().clone();
            (0..10u64).filter_map(move |j| {
                let local = make_minimal_with(
                    &h,
                    &h.vertex_set(),
                    &VertexSet::new(),
                    RemovalOrder::Shuffled(i as u64 * 31 + j),
                )
                .unwrap()
                .solution;
                let lifted = t.lift(&local).unwrap();
                let ok = lifted.verify(g).is_ok()
                    && common::is_minimal_fvs(g, &lifted.fvs)
                    && lifted.size() >= local.size();
                (!ok).then(|| format!("{} order {j}", describe(g)))
            })
        })
        .collect();
    Outcome::new(&failures, "500 graphs x 10 removal orders lifted".into())
}

/// Reduced graphs with 1..=10 vertices, first 100 found.
fn reduced_sample() -> Vec<Graph> {
    let mut out = Vec::new();
    let mut seed = 3000;
    while out.len() < 100 {
        let g = random_instance(seed, 6, 16);
        seed += 1;
        let h = reduce(&g).reduced().clone();
        if (1..=10).contains(&h.n()) {
            out.push(h);
        }
    }
    out
}

fn forest_neighbourhood_bound() -> Outcome {
    let sample = reduced_sample();
    let counted: Vec<(usize, Vec<String>)> = sample
        .par_iter()
        .map(|h| {
            let d = Dense::of(h);
            let table = d.forest_table();
            let mut bad = Vec::new();
            let sets = common::all_fvs(&d, &table);
            for &s in &sets {
                let f = d.full() & !s;
                let ns = (0..d.n)
                    .filter(|&x| s >> x & 1 == 1)
                    .fold(0u32, |a, x| a | d.adj[x]);
                if 4 * (ns & f).count_ones() < f.count_ones() {
                    bad.push(format!("{} S={:?}", describe(h), d.set(s)));
                }
            }
            (sets.len(), bad)
        })
        .collect();
    let total: usize = counted.iter().map(|c| c.0).sum();
    let mut failures: Vec<String> = counted.into_iter().flat_map(|c| c.1).collect();
    for n in [2, 4, 8] {
        let (g, s) = gen_tight_forest(n).unwrap();
        let forest: VertexSet = g.vertex_set().difference(&s).copied().collect();
        let touched = forest
            .iter()
            .filter(|v| s.iter().any(|x| g.has_edge(*x, **v)))
            .count();
        let forest_is_acyclic = g.forest_check(&forest).unwrap().is_acyclic();
        // touched/|F| = 2n/(8n-5), compared by cross-multiplication.
        if !forest_is_acyclic || touched * (8 * n - 5) != 2 * n * forest.len() {
            failures.push(format!("tight forest n={n}: {touched}/{}", forest.len()));
        }
    }
    Outcome::new(
        &failures,
        format!("{total} fvs over 100 reduced graphs; tight ratio exact for n=2,4,8"),
    )
}

fn minimal_fvs_size_bound() -> Outcome {
    let sample = reduced_sample();
    let failures: Vec<String> = sample
        .par_iter()
        .flat_map_iter(|h| {
            let d = Dense::of(h);
            let table = d.forest_table();
            let (n, delta) = (h.n(), h.max_degree());
            common::all_minimal_fvs(&d, &table)
                .into_iter()
                .filter(move |s| (s.count_ones() as usize) * 5 * delta < n)
                .map(move |s| format!("{} S={:?}", describe(h), d.set(s)))
                .collect::<Vec<_>>()
        })
        .collect();
    Outcome::new(&failures, "every minimal fvs of 100 reduced graphs".into())
}

fn seven_vertex_apex() -> Graph {
    Graph::from_edges(
        7,
        &[
            (0, 1),
            (1, 2),
            (2, 4),
            (4, 5),
            (5, 6),
            (6, 0),
            (2, 3),
            (3, 0),
            (0, 4),
        ],
    )
    .unwrap()
}

/// A random tree on `1..=t` plus an apex `0` joined to every leaf and to
/// other tree vertices with probability `q`.
fn apex_forest(seed: u64) -> Graph {
    let mut rng = SplitMix64::new(seed);
    let t = 4 + rng.below(36) as usize;
    let q = 0.1 + 0.4 * rng.next_f64();
    let mut g = Graph::empty(t + 1);
    for i in 2..=t {
        let p = 1 + rng.below(i as u64 - 1) as u32;
        g.add_edge(Vertex(i as u32), Vertex(p)).unwrap();
    }
    for i in 1..=t as u32 {
        if g.degree(Vertex(i)) <= 1 || rng.next_f64() < q {
            g.add_edge(Vertex(0), Vertex(i)).unwrap();
        }
    }
    g
}

fn onevertex_half_degree() -> Outcome {
    let mut instances = Vec::new();
    let mut seed = 4000;
    while instances.len() < 150 {
        let g = apex_forest(seed);
        seed += 1;
        let h = reduce(&g).reduced().clone();
        let u = Vertex(0);
        if h.contains(u) && h.n() <= 40 && h.n() > 1 {
            let rest = h.delete_vertices(&[u].into()).unwrap();
            if rest.is_forest() {
                instances.push(h);
            }
        }
    }
    let mut failures: Vec<String> = instances
        .par_iter()
        .filter_map(|h| {
            let u = Vertex(0);
            let sol = onevertex(h, u).unwrap();
            let ok = sol.verify(h).is_ok()
                && common::is_minimal_fvs_any(h, &sol.fvs)
                && sol.size() >= ceil_div(h.degree(u), 2);
            (!ok).then(|| format!("{}: {} for d(u)={}", describe(h), sol.size(), h.degree(u)))
        })
        .collect();
    let example = onevertex(&seven_vertex_apex(), Vertex(0)).unwrap();
    if example.size() != 3 {
        failures.push(format!("seven-vertex apex example gave {}", example.size()));
    }
    let largest = instances.iter().map(Graph::n).max().unwrap_or(0);
    Outcome::new(
        &failures,
        format!(
            "{} reduced apex forests (n<={largest}); seven-vertex apex example gives 3",
            instances.len()
        ),
    )
}

fn poly_guarantee() -> Outcome {
    let graphs: Vec<Graph> = (0..320).map(|s| random_instance(5000 + s, 4, 16)).collect();
    let results: Vec<(bool, Option<String>)> = graphs
        .par_iter()
        .map(|g| {
            let r = approx_poly(g).unwrap();
            let size = r.solution.size();
            let n = g.n() as f64;
            let opt = common::mmfvs(g);
            let mut ok = r.solution.verify(g).is_ok()
                && common::is_minimal_fvs(g, &r.solution.fvs)
                && size as f64 >= opt as f64 / n.powf(2.0 / 3.0) - 1e-9;
            let mut applied = false;
            if is_reduced(g) && g.n() > 0 {
                let c = n.cbrt();
                let bound = c.min(n.powf(2.0 / 3.0) / 32.0).min(c / 16.0 - 1.0);
                if bound >= 1.0 {
                    applied = true;
                    ok &= size as f64 >= bound;
                }
            }
            (
                applied,
                (!ok).then(|| format!("{}: got {size}, mmfvs {opt}", describe(g))),
            )
        })
        .collect();
    let applied = results.iter().filter(|r| r.0).count();
    let failures: Vec<String> = results.into_iter().filter_map(|r| r.1).collect();
    Outcome::new(
        &failures,
        format!(
            "320 random graphs n<=16; reduced-graph bound applicable to {applied} (needs n>=32768)"
        ),
    )
}

fn smallfvs_third() -> Outcome {
    let start = Instant::now();
    let cases: Vec<(Graph, VertexSet)> = (0..120u64)
        .map(|s| {
            let n = 6 + (s % 9) as usize;
            let k = 1 + (s % 4) as usize;
            gen_random_with_small_fvs(n, k, 6000 + s).unwrap()
        })
        .collect();
    let mut failures: Vec<String> = cases
        .par_iter()
        .filter_map(|(g, s)| {
            let r = smallfvs(g, s, DEFAULT_K_LIMIT).unwrap();
            let opt = common::mmfvs(g);
            let ok = r.solution.verify(g).is_ok()
                && common::is_minimal_fvs(g, &r.solution.fvs)
                && r.solution.size() >= ceil_div(opt, 3)
                && (r.explored_states as u128) <= state_bound(g.n(), r.k)
                && r.state_bound == state_bound(g.n(), r.k);
            (!ok).then(|| format!("{}: got {}, mmfvs {opt}", describe(g), r.solution.size()))
        })
        .collect();
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(600) {
        failures.push(format!("took {elapsed:?}"));
    }
    Outcome::new(&failures, "120 planted instances n<=14, k<=4".into())
}

fn subexp_pairs() -> Outcome {
    let mut failures = Vec::new();
    let graphs: Vec<Graph> = (0..120).map(|s| random_instance(7000 + s, 4, 14)).collect();

    for g in &graphs[..40] {
        let base = make_minimal(g, &g.vertex_set(), &VertexSet::new())
            .unwrap()
            .solution;
        for r in [g.n() as f64, 2.0 * g.n() as f64] {
            let rep = subexp(g, r).unwrap();
            if !rep.early_return || rep.solution.fvs != base.fvs {
                failures.push(format!("{} r={r}: no early return", describe(g)));
            }
        }
    }

    let checks: Vec<(bool, bool, Option<String>)> = graphs
        .par_iter()
        .flat_map_iter(|g| [2.0f64, 4.0].into_iter().map(move |r| (g, r)))
        .map(|(g, r)| {
            let rep = subexp(g, r).unwrap();
            let size = rep.solution.size();
            let opt = common::mmfvs(g);
            let mut ok =
                rep.solution.verify(g).is_ok() && common::is_minimal_fvs(g, &rep.solution.fvs);
            if !rep.early_return {
                let s = make_minimal(g, &g.vertex_set(), &VertexSet::new())
                    .unwrap()
                    .solution
                    .fvs;
                let k = (r.sqrt().ceil()) as usize;
                let parts = Partition::even(&s, k).parts;
                let mut best = 0;
                for i in 0..k {
                    for j in i..k {
                        let keep: VertexSet = parts[i].union(&parts[j]).copied().collect();
                        let drop: VertexSet = s.difference(&keep).copied().collect();
                        let gij = g.delete_vertices(&drop).unwrap();
                        best = best.max(ceil_div(common::mmfvs(&gij), 3));
                    }
                }
                ok &= size >= best && rep.pairs.len() == k * (k + 1) / 2;
            }
            let soft = size as f64 >= opt as f64 / (6.0 * r);
            (
                rep.early_return,
                soft,
                (!ok).then(|| format!("{} r={r}: got {size}", describe(g))),
            )
        })
        .collect();
    let paired = checks.iter().filter(|c| !c.0).count();
    let soft = checks.iter().filter(|c| c.1).count();
    failures.extend(checks.into_iter().filter_map(|c| c.2));
    Outcome::new(
        &failures,
        format!(
            "early return on 40 graphs; r in {{2,4}} on 120 graphs, {paired} ran the pair loop; \
             soft ratio mmfvs/(6r) met on {soft}/240"
        ),
    )
}

fn binom2(x: usize) -> usize {
    x * x.saturating_sub(1) / 2
}

fn independent_set_gadget() -> Outcome {
    let sources: Vec<Graph> = (2..=4).flat_map(labelled_graphs).collect();
    let failures: Vec<String> = sources
        .par_iter()
        .filter_map(|src| {
            let map = gen_mis_gadget(src).unwrap();
            let n = src.n();
            let alpha = common::independence_number(src);
            let opt = common::mmfvs_compressed(&map.product);
            let mut ok = (n - 1) * binom2(alpha) <= opt && opt <= n * binom2(2 * alpha) + n;
            if map.product.n() <= 16 {
                ok &= opt == common::mmfvs(&map.product);
                ok &= opt
                    == exact_mmfvs(&map.product, DEFAULT_BUDGET)
                        .unwrap()
                        .solution
                        .size();
            }
            // The forward map from a maximum independent set's complement.
            let d = Dense::of(src);
            let cover = (0..=d.full())
                .filter(|&c| common::is_minimal_vc(&d, c) && (n - c.count_ones() as usize) == alpha)
                .map(|c| d.set(c))
                .next()
                .unwrap();
            let fwd = lift_vc_to_fvs(&map, &cover, true).unwrap();
            ok &= common::is_minimal_fvs_any(&map.product, &fwd.fvs)
                && fwd.size() >= (n - 1) * binom2(alpha);
            (!ok).then(|| format!("{}: mmfvs {opt}, alpha {alpha}", describe(src)))
        })
        .collect();
    Outcome::new(
        &failures,
        format!("{} labelled sources n in 2..=4", sources.len()),
    )
}

fn vertex_cover_gadget() -> Outcome {
    // Every source with at most two edges on up to four vertices, up to
    // isomorphism; all have maximum degree at most 2.
    let sources: Vec<Graph> = (1..=4)
        .flat_map(common::graphs_covering_isomorphism_classes)
        .filter(|g| g.m() <= 2)
        .collect();
    let results: Vec<(usize, Vec<String>)> = sources
        .par_iter()
        .map(|src| {
            let mut bad = Vec::new();
            let map = gen_nph_gadget(src).unwrap();
            let p = &map.product;
            let offset = 4 * src.m();
            let opt = common::mmfvs_compressed(p);
            if p.n() <= TABLE_MAX_N && opt != common::mmfvs(p) {
                bad.push(format!("{}: compressed oracle disagrees", describe(src)));
            }
            let mvc = common::max_minimal_vertex_cover(src);
            for k in 0..=src.n() + 1 {
                if (mvc >= k) != (opt >= k + offset) {
                    bad.push(format!("{}: equivalence fails at k={k}", describe(src)));
                }
            }

            let d = Dense::of(src);
            let mut candidates: Vec<VertexSet> = Vec::new();
            for c in (0..=d.full()).filter(|&c| common::is_minimal_vc(&d, c)) {
                let cover = d.set(c);
                let fwd = lift_vc_to_fvs_nph(&map, &cover).unwrap();
                if fwd.size() != cover.len() + offset || !common::is_minimal_fvs_any(p, &fwd.fvs) {
                    bad.push(format!("{}: forward image of {cover:?}", describe(src)));
                }
                candidates.push(fwd.fvs);
            }
            let best = exact_mmfvs(p, DEFAULT_BUDGET).unwrap();
            if !best.optimal || best.solution.size() != opt {
                bad.push(format!(
                    "{}: exact {} vs oracle {opt}",
                    describe(src),
                    best.solution.size()
                ));
            }
            candidates.push(best.solution.fvs);
            if p.n() <= 16 {
                let dp = Dense::of(p);
                let table = dp.forest_table();
                candidates.extend(
                    common::all_minimal_fvs(&dp, &table)
                        .into_iter()
                        .map(|s| dp.set(s)),
                );
            } else {
                candidates.extend((0..200u64).map(|j| {
                    make_minimal_with(
                        p,
                        &p.vertex_set(),
                        &VertexSet::new(),
                        RemovalOrder::Shuffled(j),
                    )
                    .unwrap()
                    .solution
                    .fvs
                }));
            }
            for s in &candidates {
                match extract_vc_from_fvs_nph(&map, s) {
                    Ok(c) => {
                        let cm = d.mask(&c);
                        if !common::is_minimal_vc(&d, cm) || c.len() + offset < s.len() {
                            bad.push(format!(
                                "{}: extracted {c:?} from {} vertices",
                                describe(src),
                                s.len()
                            ));
                        }
                    }
                    Err(e) => bad.push(format!("{}: extraction failed: {e}", describe(src))),
                }
            }
            (candidates.len(), bad)
        })
        .collect();
    let total: usize = results.iter().map(|r| r.0).sum();
    let failures: Vec<String> = results.into_iter().flat_map(|r| r.1).collect();
    Outcome::new(
        &failures,
        format!(
            "{} sources with |E|<=2; {total} fvs normalised",
            sources.len()
        ),
    )
}

fn extremal_family() -> Outcome {
    let mut failures = Vec::new();
    let g2 = gen_tight_extremal(2).unwrap();
    let m2 = oracle_mmfvs(&g2);
    if m2 != 4 {
        failures.push(format!("n=2: mmfvs {m2}"));
    }
    let g3 = gen_tight_extremal(3).unwrap();
    let m3 = oracle_mmfvs(&g3);
    if m3 > 9 {
        failures.push(format!("n=3: mmfvs {m3}"));
    }
    Outcome::new(
        &failures,
        format!(
            "n=2 ({} vertices) mmfvs {m2}; n=3 ({} vertices) mmfvs {m3}",
            g2.n(),
            g3.n()
        ),
    )
}

struct Cli<'a> {
    dir: &'a Path,
}

impl Cli<'_> {
    fn run(&self, args: &[&str]) -> (i32, String, String) {
        let out = Command::new(env!("CARGO_BIN_EXE_mmfvs"))
            .args(args)
            .current_dir(self.dir)
            .env_remove("MMFVS_SEED")
            .output()
            .expect("spawn mmfvs");
        (
            out.status.code().unwrap_or(-1),
            String::from_utf8_lossy(&out.stdout).into_owned(),
            String::from_utf8_lossy(&out.stderr).into_owned(),
        )
    }

    fn write(&self, name: &str, text: &str) -> String {
        std::fs::write(self.dir.join(name), text).unwrap();
        name.to_string()
    }
}

fn check_report(stdout: &str) -> Result<serde_json::Value, String> {
    let v: serde_json::Value = serde_json::from_str(stdout.trim()).map_err(|e| e.to_string())?;
    mmfvs_cli::report::validate_json(&v)?;
    if v["certificate_ok"] != true {
        return Err("certificate_ok is false".into());
    }
    Ok(v)
}

fn cli_end_to_end() -> Outcome {
    let tmp = tempfile::tempdir().unwrap();
    let cli = Cli { dir: tmp.path() };
    let mut failures = Vec::new();
    let mut runs = 0;
    let suite: Vec<&str> = mmfvs_cli::bench::SMOKE_SUITE
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .collect();

    for (i, line) in suite.iter().enumerate() {
        let words: Vec<&str> = line.split_whitespace().collect();
        let (seed, head) = words.split_last().unwrap();
        let graph = format!("g{i}.txt");
        let planted = format!("s{i}.txt");
        let mut args = vec!["gen"];
        args.extend_from_slice(head);
        args.extend(["--seed", seed, "--out", &graph]);
        let (code, _, err) = cli.run(&args);
        runs += 1;
        if code != 0 {
            failures.push(format!("gen {line}: exit {code}: {}", err.trim()));
            continue;
        }
        let mut with_fvs = args.clone();
        with_fvs.extend(["--fvs-out", &planted]);
        let has_planted = cli.run(&with_fvs).0 == 0;

        let mut delta_solution = None;
        let mut json_runs: Vec<(String, Vec<String>)> = vec![
            (
                "reduce".into(),
                vec![
                    "reduce".into(),
                    graph.clone(),
                    "--out".into(),
                    format!("r{i}.txt"),
                ],
            ),
            (
                "approx-delta".into(),
                vec![
                    "approx".into(),
                    graph.clone(),
                    "--algo".into(),
                    "delta".into(),
                ],
            ),
            (
                "approx-poly".into(),
                vec![
                    "approx".into(),
                    graph.clone(),
                    "--algo".into(),
                    "poly".into(),
                ],
            ),
            ("exact".into(), vec!["exact".into(), graph.clone()]),
            (
                "subexp".into(),
                vec!["subexp".into(), graph.clone(), "--ratio".into(), "4".into()],
            ),
        ];
        if has_planted {
            json_runs.push((
                "smallfvs".into(),
                vec![
                    "smallfvs".into(),
                    graph.clone(),
                    "--fvs".into(),
                    planted.clone(),
                    "--k-limit".into(),
                    "6".into(),
                ],
            ));
        }
        for (name, argv) in &json_runs {
            let argv: Vec<&str> = argv.iter().map(String::as_str).collect();
            let (code, out, err) = cli.run(&argv);
            runs += 1;
            if code != 0 {
                failures.push(format!("{name} on {line}: exit {code}: {}", err.trim()));
                continue;
            }
            match check_report(&out) {
                Ok(v) => {
                    if name == "approx-delta" {
                        delta_solution = Some(v["solution"].clone());
                    }
                }
                Err(e) => failures.push(format!("{name} on {line}: {e}")),
            }
        }
        let Some(sol) = delta_solution else { continue };
        let ids: Vec<String> = sol
            .as_array()
            .unwrap()
            .iter()
            .map(|x| x.to_string())
            .collect();
        let sol_file = cli.write(&format!("a{i}.txt"), &(ids.join(" ") + "\n"));
        if !has_planted {
            let argv = ["smallfvs", &graph, "--fvs", &sol_file, "--k-limit", "6"];
            let (code, out, err) = cli.run(&argv);
            runs += 1;
            if code != 0 {
                failures.push(format!("smallfvs on {line}: exit {code}: {}", err.trim()));
            } else if let Err(e) = check_report(&out) {
                failures.push(format!("smallfvs on {line}: {e}"));
            }
        }
        let (code, _, _) = cli.run(&["verify", &graph, &sol_file]);
        runs += 1;
        if code != 0 {
            failures.push(format!("verify on {line}: exit {code}"));
        }
    }

    let (code, out, err) = cli.run(&[
        "bench",
        "--suite",
        "smoke",
        "--algos",
        "reduce,delta,poly,exact,smallfvs,subexp",
    ]);
    runs += 1;
    if code != 0 {
        failures.push(format!("bench: exit {code}: {}", err.trim()));
    } else {
        let lines: Vec<serde_json::Value> = out
            .lines()
            .filter_map(|l| serde_json::from_str(l).ok())
            .collect();
        let reports_ok = lines.iter().filter(|v| v["kind"] == "instance").all(|v| {
            v["reports"].as_array().is_some_and(|rs| {
                rs.iter().all(|r| {
                    mmfvs_cli::report::validate_json(r).is_ok() && r["certificate_ok"] == true
                })
            })
        });
        let agg_ok = lines
            .last()
            .is_some_and(|a| a["kind"] == "aggregate" && a["certificates_ok"] == true);
        if lines.len() != suite.len() + 1 || !reports_ok || !agg_ok {
            failures.push("bench output malformed".into());
        }
    }

    let c4 = cli.write("c4.txt", "p edge 4 4\ne 1 2\ne 2 3\ne 3 4\ne 4 1\n");
    let k4 = cli.write(
        "k4.txt",
        "p edge 4 6\ne 1 2\ne 1 3\ne 1 4\ne 2 3\ne 2 4\ne 3 4\n",
    );
    let cases = [
        (c4.as_str(), "1\n", 0),
        (c4.as_str(), "1 3\n", 3),
        (c4.as_str(), "\n", 2),
        (k4.as_str(), "1 2\n", 0),
        (k4.as_str(), "1 2 3\n", 3),
        (k4.as_str(), "1\n", 2),
        (k4.as_str(), "2 4\n", 0),
        (c4.as_str(), "9\n", 1),
    ];
    for (j, (graph, sol, want)) in cases.iter().enumerate() {
        let f = cli.write(&format!("v{j}.txt"), sol);
        let (code, _, _) = cli.run(&["verify", graph, &f]);
        runs += 1;
        if code != *want {
            failures.push(format!(
                "verify {graph} {:?}: exit {code}, want {want}",
                sol.trim()
            ));
        }
    }
    Outcome::new(
        &failures,
        format!(
            "{} smoke instances, {runs} invocations; verify exit codes 0/2/3/1",
            suite.len()
        ),
    )
}

type Check = (&'static str, fn() -> Outcome);

fn main() {
    let checks: [Check; 13] = [
        ("oracle-agreement", oracle_agreement),
        ("reduction-preserves-optimum", reduction_preserves_optimum),
        ("lifting-keeps-minimality", lifting_keeps_minimality),
        ("forest-neighbourhood-bound", forest_neighbourhood_bound),
        ("minimal-fvs-size-bound", minimal_fvs_size_bound),
        ("onevertex-half-degree", onevertex_half_degree),
        ("poly-guarantee", poly_guarantee),
        ("smallfvs-third", smallfvs_third),
        ("subexp-pairs", subexp_pairs),
        ("independent-set-gadget", independent_set_gadget),
        ("vertex-cover-gadget", vertex_cover_gadget),
        ("extremal-family", extremal_family),
        ("cli-end-to-end", cli_end_to_end),
    ];
    let filter: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    let mut failed = 0;
    for (i, (name, check)) in checks.iter().enumerate() {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let out = check();
        let verdict = if out.pass { "PASS" } else { "FAIL" };
        failed += usize::from(!out.pass);
        println!(
            "acceptance {:02} {name:<28} {verdict}  {} ({:.1}s)",
            i + 1,
            out.detail,
            start.elapsed().as_secs_f64()
        );
    }
    if failed > 0 {
        println!("acceptance: {failed} check(s) failed");
        std::process::exit(1);
    }
    println!("acceptance: all checks passed");
}
