//! Polynomial-time approximations: the apex-forest constructor, the
//! `O(Δ)`-approximation and the `O(n^{2/3})`-approximation.
//!
//! Every algorithm works on the reduced graph and lifts its answer back to
//! the input through the recorded [`Trace`], so reported solutions are
//! always certified minimal feedback vertex sets of the caller's graph.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::reduce::{reduce, Trace};
use crate::solution::{make_minimal, FvsSolution};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Branch {
    AcyclicInput,
    /// An arbitrary minimal fvs of the reduced graph.
    ArbitraryMinimal,
    /// The arbitrary minimal fvs already has at least `n'^{1/3}` vertices.
    TrivialLargeS,
    /// Apex-forest construction around a vertex with many good neighbors.
    GoodNeighbors,
    /// `K_{2,s}` construction on bad trees shared by two fvs vertices.
    BadTrees,
}

impl Branch {
    pub fn as_str(self) -> &'static str {
        match self {
            Branch::AcyclicInput => "acyclic-input",
            Branch::ArbitraryMinimal => "arbitrary-minimal",
            Branch::TrivialLargeS => "trivial-large-S",
            Branch::GoodNeighbors => "good-neighbors",
            Branch::BadTrees => "bad-trees",
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One solution constructed during a run, already lifted to the input graph.
#[derive(Clone, Debug, PartialEq)]
pub struct Candidate {
    pub branch: Branch,
    pub size: usize,
    /// Lower bound on `size` that the construction guarantees.
    pub bound: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ApproxReport {
    pub solution: FvsSolution,
    pub branch: Branch,
    pub reduced_n: usize,
    pub reduced_max_degree: usize,
    /// The high-degree fvs vertex the case analysis centred on.
    pub witness_vertex: Option<Vertex>,
    /// Largest bound among the constructed candidates; never exceeds the
    /// solution size.
    pub guarantee: f64,
    pub candidates: Vec<Candidate>,
}

impl ApproxReport {
    fn acyclic(g: &Graph) -> Self {
        ApproxReport {
            solution: FvsSolution::empty(g),
            branch: Branch::AcyclicInput,
            reduced_n: 0,
            reduced_max_degree: 0,
            witness_vertex: None,
            guarantee: 0.0,
            candidates: Vec::new(),
        }
    }
}

/// Minimal fvs of size at least `d(u)/2` in a graph where `G - u` is a forest
/// whose every tree holds at least two neighbours of `u` (true whenever the
/// graph is reduced).
///
/// Forest edges with an endpoint outside `N(u)` are contracted until every
/// forest vertex is adjacent to `u`; `d(u)` is unchanged throughout. Each tree
/// is then 2-coloured and its larger colour class joins the solution: the
/// other class plus `u` induces a star, and every chosen vertex closes a
/// triangle with `u` and a neighbour of the other class.
pub fn onevertex(g: &Graph, u: Vertex) -> Result<FvsSolution> {
    g.require(u)?;
    let forest: VertexSet = g.vertices().filter(|&v| v != u).collect();
    if !g.forest_check(&forest)?.is_acyclic() {
        return Err(Error::NotApex(u));
    }
    for tree in g.components(&forest)? {
        let anchors = tree.iter().filter(|w| g.has_edge(u, **w)).count();
        if anchors < 2 {
            return Err(Error::Precondition(format!(
                "tree containing {} has {anchors} neighbor(s) of {u}; at least two are needed",
                tree.first().expect("non-empty tree")
            )));
        }
    }

    let degree = g.degree(u);
    let mut trace = Trace::new(g.clone());
    loop {
        let h = trace.reduced();
        let Some(x) = h.vertices().find(|&x| x != u && !h.has_edge(u, x)) else {
            break;
        };
        // Absorb x into a neighbour of u when possible, preferring the
        // neighbour of largest forest degree; this keeps trees star-like.
        let forest_degree = |y: Vertex| h.degree(y) - usize::from(h.has_edge(u, y));
        let y = h
            .neighbors(x)
            .iter()
            .copied()
            .max_by_key(|&y| (h.has_edge(u, y), forest_degree(y), std::cmp::Reverse(y)))
            .ok_or_else(|| Error::Invariant(format!("forest vertex {x} is isolated")))?;
        trace
            .contract(x, y)
            .map_err(|e| Error::Invariant(format!("apex contraction failed: {e}")))?;
        debug_assert_eq!(trace.reduced().degree(u), degree);
    }

    let h = trace.reduced();
    let rest: VertexSet = h.vertices().filter(|&v| v != u).collect();
    let mut chosen = VertexSet::new();
    for tree in h.components_unchecked(&rest) {
        let (a, b) = two_colour(h, &tree);
        chosen.extend(if a.len() > b.len() { a } else { b });
    }
    let minimal = make_minimal(h, &chosen, &chosen)?;
    if !minimal.dropped_protected.is_empty() {
        return Err(Error::Invariant(format!(
            "colour class was not minimal: dropped {:?}",
            minimal.dropped_protected
        )));
    }
    let lifted = trace.lift(&minimal.solution)?;
    debug_assert!(2 * lifted.size() >= degree);
    Ok(lifted)
}

/// Proper 2-colouring of a tree; the first class contains its smallest vertex
/// and loses ties.
fn two_colour(g: &Graph, tree: &VertexSet) -> (VertexSet, VertexSet) {
    let root = *tree.first().expect("non-empty tree");
    let mut side: BTreeMap<Vertex, bool> = BTreeMap::from([(root, false)]);
    let mut queue = VecDeque::from([root]);
    while let Some(x) = queue.pop_front() {
        let s = side[&x];
        for &y in g.neighbors(x) {
            if tree.contains(&y) && !side.contains_key(&y) {
                side.insert(y, !s);
                queue.push_back(y);
            }
        }
    }
    let (a, b): (Vec<_>, Vec<_>) = side.into_iter().partition(|&(_, s)| !s);
    (
        a.into_iter().map(|(v, _)| v).collect(),
        b.into_iter().map(|(v, _)| v).collect(),
    )
}

/// `O(Δ)`-approximation: any minimal fvs of the reduced graph, lifted. In a
/// reduced graph every fvs has at least `n'/(5Δ')` vertices.
pub fn approx_delta(g: &Graph) -> Result<ApproxReport> {
    if g.is_forest() {
        return Ok(ApproxReport::acyclic(g));
    }
    let trace = reduce(g);
    let h = trace.reduced();
    let fvs = make_minimal(h, &h.vertex_set(), &VertexSet::new())?.solution;
    let solution = trace.lift(&fvs)?;
    let bound = delta_bound(h);
    let size = solution.size();
    finish(ApproxReport {
        solution,
        branch: Branch::ArbitraryMinimal,
        reduced_n: h.n(),
        reduced_max_degree: h.max_degree(),
        witness_vertex: None,
        guarantee: bound,
        candidates: vec![Candidate {
            branch: Branch::ArbitraryMinimal,
            size,
            bound,
        }],
    })
}

fn delta_bound(h: &Graph) -> f64 {
    match h.max_degree() {
        0 => 0.0,
        d => h.n() as f64 / (5 * d) as f64,
    }
}

/// `O(n^{2/3})`-approximation.
///
/// On the reduced graph `G'` with `n'` vertices: take an arbitrary minimal
/// fvs `S`; if `|S| ≥ n'^{1/3}` return it. Otherwise pick `u ∈ S` with the
/// most forest neighbours and split those into good ones (sharing a tree with
/// another neighbour of `u`) and bad ones. With at least as many good as bad
/// neighbours, `S \ {u}` is deleted, the graph re-reduced and
/// [`onevertex`] applied to `u`. Otherwise the bad trees shared with the best
/// partner `v ∈ S` are cut down to `K_{2,s}` (or `K_{2,s}` plus `uv`). The
/// largest of the constructed solutions is returned; the arbitrary minimal
/// fvs is always among them, so the result is never worse than
/// [`approx_delta`].
pub fn approx_poly(g: &Graph) -> Result<ApproxReport> {
    if g.is_forest() {
        return Ok(ApproxReport::acyclic(g));
    }
    let trace = reduce(g);
    let h = trace.reduced();
    let n = h.n();
    let s = make_minimal(h, &h.vertex_set(), &VertexSet::new())?.solution;
    let delta = delta_bound(h);
    let threshold = (n as f64).cbrt();

    let mut pool: Vec<(Candidate, FvsSolution)> = Vec::new();
    let mut witness = None;

    if s.size() as f64 >= threshold {
        let lifted = trace.lift(&s)?;
        pool.push((
            Candidate {
                branch: Branch::TrivialLargeS,
                size: lifted.size(),
                bound: threshold.max(delta),
            },
            lifted,
        ));
    } else {
        let u = *s
            .fvs
            .iter()
            .max_by_key(|&&x| {
                let deg = h.neighbors(x).intersection(&s.forest).count();
                (deg, std::cmp::Reverse(x))
            })
            .expect("cyclic graph has a non-empty fvs");
        witness = Some(u);
        let trees = h.components_unchecked(&s.forest);
        let anchors: Vec<Vec<Vertex>> = trees
            .iter()
            .map(|t| t.iter().copied().filter(|&w| h.has_edge(u, w)).collect())
            .collect();
        let good: usize = anchors.iter().map(Vec::len).filter(|&c| c >= 2).sum();
        let bad = anchors.iter().filter(|a| a.len() == 1).count();

        let branch = if good >= bad {
            good_neighbors(h, &s, u)?
        } else {
            bad_trees(h, &s, u, &trees, &anchors)?
        };
        if let Some((cand, sol)) = branch {
            let lifted = trace.lift(&sol)?;
            pool.push((
                Candidate {
                    size: lifted.size(),
                    ..cand
                },
                lifted,
            ));
        }
        let lifted = trace.lift(&s)?;
        pool.push((
            Candidate {
                branch: Branch::ArbitraryMinimal,
                size: lifted.size(),
                bound: delta,
            },
            lifted,
        ));
    }

    let guarantee = pool.iter().map(|(c, _)| c.bound).fold(0.0, f64::max);
    let candidates: Vec<Candidate> = pool.iter().map(|(c, _)| c.clone()).collect();
    // First of the largest: a branch construction wins ties.
    let best = pool
        .iter()
        .enumerate()
        .max_by_key(|(i, (c, _))| (c.size, std::cmp::Reverse(*i)))
        .map(|(i, _)| i)
        .expect("at least one candidate");
    let (chosen, solution) = pool.swap_remove(best);
    finish(ApproxReport {
        solution,
        branch: chosen.branch,
        reduced_n: n,
        reduced_max_degree: h.max_degree(),
        witness_vertex: witness,
        guarantee,
        candidates,
    })
}

/// Builds the apex-forest candidate on the reduced graph `h`.
fn good_neighbors(
    h: &Graph,
    s: &FvsSolution,
    u: Vertex,
) -> Result<Option<(Candidate, FvsSolution)>> {
    let mut local = Trace::new(h.clone());
    let others: VertexSet = s.fvs.iter().copied().filter(|&x| x != u).collect();
    local.delete_all(&others)?;
    local.reduce_further();
    let h2 = local.reduced();
    // Re-reduction can only absorb u when it kept very few good neighbours.
    if !h2.contains(u) || h2.is_forest() {
        return Ok(None);
    }
    let bound = h2.degree(u) as f64 / 2.0;
    let sol = onevertex(h2, u)?;
    let sol = local.lift(&sol)?;
    Ok(Some((
        Candidate {
            branch: Branch::GoodNeighbors,
            size: sol.size(),
            bound,
        },
        sol,
    )))
}

/// Builds the `K_{2,s}` candidate on the reduced graph `h`. `trees` are the
/// components of the forest and `anchors[i]` the neighbours of `u` in
/// `trees[i]`.
fn bad_trees(
    h: &Graph,
    s: &FvsSolution,
    u: Vertex,
    trees: &[VertexSet],
    anchors: &[Vec<Vertex>],
) -> Result<Option<(Candidate, FvsSolution)>> {
    let bad: Vec<usize> = (0..trees.len())
        .filter(|&i| anchors[i].len() == 1)
        .collect();
    let touches = |v: Vertex, i: usize| trees[i].iter().any(|&w| h.has_edge(v, w));
    let partner = s
        .fvs
        .iter()
        .copied()
        .filter(|&v| v != u)
        .map(|v| (v, bad.iter().filter(|&&i| touches(v, i)).count()))
        .max_by_key(|&(v, c)| (c, std::cmp::Reverse(v)));
    let Some((v, shared)) = partner else {
        return Ok(None);
    };
    if shared == 0 {
        return Ok(None);
    }

    let mut paths = Vec::new();
    for &i in bad.iter().filter(|&&i| touches(v, i)) {
        paths.push(closest_path(h, &trees[i], anchors[i][0], v));
    }
    let keep: VertexSet = paths.iter().flatten().copied().chain([u, v]).collect();
    let mut local = Trace::new(h.clone());
    let drop: VertexSet = h.vertices().filter(|x| !keep.contains(x)).collect();
    local.delete_all(&drop)?;
    for path in &paths {
        let mut head = path[0];
        for &next in &path[1..] {
            head = local
                .contract(head, next)
                .map_err(|e| Error::Invariant(format!("path contraction failed: {e}")))?;
        }
    }

    let k2s = local.reduced();
    debug_assert_eq!(k2s.n(), shared + 2);
    let legs: VertexSet = k2s.vertices().filter(|&x| x != u && x != v).collect();
    let sol = make_minimal(k2s, &legs, &VertexSet::new())?.solution;
    let sol = local.lift(&sol)?;
    Ok(Some((
        Candidate {
            branch: Branch::BadTrees,
            size: sol.size(),
            bound: shared.saturating_sub(1) as f64,
        },
        sol,
    )))
}

/// Shortest path inside `tree` from `start` to a neighbour of `target`,
/// preferring the smallest such endpoint at minimum distance.
fn closest_path(h: &Graph, tree: &VertexSet, start: Vertex, target: Vertex) -> Vec<Vertex> {
    let mut parent: BTreeMap<Vertex, Vertex> = BTreeMap::new();
    let mut level = vec![start];
    let mut seen: VertexSet = [start].into_iter().collect();
    let end = loop {
        if let Some(&hit) = level.iter().filter(|&&x| h.has_edge(target, x)).min() {
            break hit;
        }
        let mut next = Vec::new();
        for &x in &level {
            for &y in h.neighbors(x) {
                if tree.contains(&y) && seen.insert(y) {
                    parent.insert(y, x);
                    next.push(y);
                }
            }
        }
        assert!(!next.is_empty(), "tree must touch the target");
        level = next;
    };
    let mut path = vec![end];
    let mut x = end;
    while x != start {
        x = parent[&x];
        path.push(x);
    }
    path.reverse();
    path
}

fn finish(report: ApproxReport) -> Result<ApproxReport> {
    if report.guarantee > report.solution.size() as f64 + 1e-9 {
        return Err(Error::Invariant(format!(
            "{} candidate of size {} misses its guarantee {}",
            report.branch,
            report.solution.size(),
            report.guarantee
        )));
    }
    Ok(report)
}
