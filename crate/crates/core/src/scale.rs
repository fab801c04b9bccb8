//! Exhaustive guessing around a small feedback vertex set, and the
//! sub-exponential driver that runs it on pairs of parts of a larger one.

use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::exact::exact_apex_forest;
use crate::graph::{Graph, Vertex, VertexSet};
use crate::reduce::Trace;
use crate::solution::{complement, make_minimal, FvsSolution};

/// Largest `|S|` accepted by [`smallfvs`] unless the caller raises it.
pub const DEFAULT_K_LIMIT: usize = 5;

/// One decision recorded while building a [`GuessState`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Guess {
    /// The part of the input fvs assumed to lie in the optimal forest.
    Forest(VertexSet),
    /// Forest neighbours guessed for an fvs vertex.
    Neighbors {
        of: Vertex,
        chosen: Vec<Vertex>,
    },
    /// A path of undecided vertices joining two forest components.
    Connector {
        from: Vertex,
        to: Vertex,
    },
    NoConnector,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GuessState {
    pub s_sol: VertexSet,
    pub f_sol: VertexSet,
    pub guess_log: Vec<Guess>,
}

impl GuessState {
    pub fn undecided(&self, g: &Graph) -> VertexSet {
        g.vertices()
            .filter(|v| !self.s_sol.contains(v) && !self.f_sol.contains(v))
            .collect()
    }

    /// `s_sol ∪ f_sol` covers every cycle.
    pub fn covers_cycles(&self, g: &Graph) -> bool {
        g.find_cycle_within(&self.undecided(g)).is_none()
    }

    /// `G[f_sol]` is acyclic with at most `2k` components.
    pub fn forest_is_small(&self, g: &Graph, k: usize) -> bool {
        g.find_cycle_within(&self.f_sol).is_none()
            && g.components_unchecked(&self.f_sol).len() <= 2 * k
    }

    /// Every `s_sol` vertex has two neighbours in `f_sol`.
    pub fn fvs_is_anchored(&self, g: &Graph) -> bool {
        self.s_sol
            .iter()
            .all(|&s| g.neighbors(s).intersection(&self.f_sol).count() >= 2)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmallFvsReport {
    pub solution: FvsSolution,
    /// Size of the input fvs after making it minimal.
    pub k: usize,
    pub explored_states: u64,
    /// `2^k · n^{2k} · (n²+1)^{2k}`, saturating.
    pub state_bound: u128,
    /// Completed guess sequences handed to the exact apex-forest solver.
    pub leaves: u64,
    pub improved_over_input: bool,
}

/// A minimal fvs of size at least `mmfvs(g)/3`, found by guessing how an
/// optimal solution meets the fvs `s` and its neighbourhood.
///
/// `|s|` may not exceed `k_limit`.
pub fn smallfvs(g: &Graph, s: &VertexSet, k_limit: usize) -> Result<SmallFvsReport> {
    g.require_all(s)?;
    if let Some(c) = g.find_cycle_within(&complement(g, s)) {
        return Err(Error::NotFvs(c));
    }
    if s.len() > k_limit {
        return Err(Error::FvsTooLarge {
            size: s.len(),
            limit: k_limit,
        });
    }
    let base = make_minimal(g, s, &VertexSet::new())?.solution;
    let k = base.size();
    let mut search = Guesser {
        g,
        k,
        best: base.clone(),
        seen: HashSet::new(),
        finished: HashSet::new(),
        explored: 0,
        leaves: 0,
    };
    let members: Vec<Vertex> = base.fvs.iter().copied().collect();
    if k > 0 {
        for mask in 0u64..(1 << k) {
            let f_part: VertexSet = (0..k)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| members[i])
                .collect();
            if g.find_cycle_within(&f_part).is_some() {
                continue;
            }
            let state = GuessState {
                s_sol: base.fvs.difference(&f_part).copied().collect(),
                guess_log: vec![Guess::Forest(f_part.clone())],
                f_sol: f_part,
            };
            search.anchor(state)?;
        }
    }
    let improved = search.best.size() > base.size();
    let state_bound = state_bound(g.n(), k);
    debug_assert!(u128::from(search.explored) <= state_bound);
    Ok(SmallFvsReport {
        solution: search.best,
        k,
        explored_states: search.explored,
        state_bound,
        leaves: search.leaves,
        improved_over_input: improved,
    })
}

pub fn state_bound(n: usize, k: usize) -> u128 {
    let n = n as u128;
    let exp = 2 * k as u32;
    2u128
        .checked_pow(k as u32)
        .and_then(|a| n.checked_pow(exp).and_then(|b| a.checked_mul(b)))
        .and_then(|ab| (n * n + 1).checked_pow(exp).and_then(|c| ab.checked_mul(c)))
        .unwrap_or(u128::MAX)
}

struct Guesser<'a> {
    g: &'a Graph,
    k: usize,
    best: FvsSolution,
    seen: HashSet<(VertexSet, VertexSet)>,
    finished: HashSet<(VertexSet, VertexSet)>,
    explored: u64,
    leaves: u64,
}

impl Guesser<'_> {
    fn visit(&mut self, st: &GuessState) -> bool {
        if !self.seen.insert((st.s_sol.clone(), st.f_sol.clone())) {
            return false;
        }
        self.explored += 1;
        debug_assert!(st.forest_is_small(self.g, self.k));
        debug_assert!(st.covers_cycles(self.g));
        true
    }

    /// Gives every fvs vertex two forest neighbours, then moves on to the
    /// connector rounds.
    fn anchor(&mut self, st: GuessState) -> Result<()> {
        if !self.visit(&st) {
            return Ok(());
        }
        let g = self.g;
        let short = st
            .s_sol
            .iter()
            .copied()
            .map(|s| (s, g.neighbors(s).intersection(&st.f_sol).count()))
            .find(|&(_, c)| c < 2);
        let Some((s, have)) = short else {
            return self.connect(st);
        };
        let undecided = st.undecided(g);
        let options: Vec<Vertex> = g.neighbors(s).intersection(&undecided).copied().collect();
        let mut picks: Vec<Vec<Vertex>> = Vec::new();
        if have == 1 {
            picks.extend(options.iter().map(|&a| vec![a]));
        } else {
            for (i, &a) in options.iter().enumerate() {
                for &b in &options[i + 1..] {
                    picks.push(vec![a, b]);
                }
            }
        }
        for chosen in picks {
            let mut f_sol = st.f_sol.clone();
            f_sol.extend(chosen.iter().copied());
            if g.find_cycle_within(&f_sol).is_some() {
                continue;
            }
            let mut log = st.guess_log.clone();
            log.push(Guess::Neighbors { of: s, chosen });
            self.anchor(GuessState {
                s_sol: st.s_sol.clone(),
                f_sol,
                guess_log: log,
            })?;
        }
        Ok(())
    }

    /// Tries every connector that merges two forest components, then the
    /// option that no further connector exists.
    fn connect(&mut self, st: GuessState) -> Result<()> {
        let g = self.g;
        let undecided = st.undecided(g);
        let comps = g.components_unchecked(&st.f_sol).len();
        let ends: Vec<Vertex> = undecided
            .iter()
            .copied()
            .filter(|&x| !g.neighbors(x).is_disjoint(&st.f_sol))
            .collect();
        for (i, &a) in ends.iter().enumerate() {
            for &b in &ends[i..] {
                let Some(path) = tree_path(g, &undecided, a, b) else {
                    continue;
                };
                let mut f_sol = st.f_sol.clone();
                f_sol.extend(path);
                if g.find_cycle_within(&f_sol).is_some()
                    || g.components_unchecked(&f_sol).len() >= comps
                {
                    continue;
                }
                let mut log = st.guess_log.clone();
                log.push(Guess::Connector { from: a, to: b });
                let next = GuessState {
                    s_sol: st.s_sol.clone(),
                    f_sol,
                    guess_log: log,
                };
                if self.visit(&next) {
                    self.connect(next)?;
                }
            }
        }
        let mut log = st.guess_log;
        log.push(Guess::NoConnector);
        self.finish(GuessState {
            guess_log: log,
            ..st
        })
    }

    /// Applies the forced rule, collapses the forest guess into one vertex
    /// and solves the remaining apex-forest exactly.
    fn finish(&mut self, mut st: GuessState) -> Result<()> {
        let g = self.g;
        let forced: Vec<Vertex> = st
            .undecided(g)
            .into_iter()
            .filter(|&x| g.neighbors(x).intersection(&st.f_sol).count() >= 2)
            .collect();
        st.s_sol.extend(forced);
        if !self.finished.insert((st.s_sol.clone(), st.f_sol.clone())) {
            return Ok(());
        }
        self.leaves += 1;

        let rest = st.undecided(g);
        let mut h = g.induced(&rest)?;
        let f = h.add_vertex();
        for &x in &rest {
            if !g.neighbors(x).is_disjoint(&st.f_sol) {
                h.add_edge(f, x)?;
            }
        }
        let star = exact_apex_forest(&h, f)?;
        let mut candidate = st.s_sol;
        candidate.extend(star.fvs);
        if g.find_cycle_within(&complement(g, &candidate)).is_some() {
            return Ok(());
        }
        let sol = make_minimal(g, &candidate, &VertexSet::new())?.solution;
        if sol.size() > self.best.size() {
            self.best = sol;
        }
        Ok(())
    }
}

/// The path from `a` to `b` inside the forest `G[within]`.
fn tree_path(g: &Graph, within: &VertexSet, a: Vertex, b: Vertex) -> Option<Vec<Vertex>> {
    let mut parent = std::collections::BTreeMap::from([(a, a)]);
    let mut queue = VecDeque::from([a]);
    while let Some(x) = queue.pop_front() {
        if x == b {
            let mut path = vec![b];
            let mut y = b;
            while y != a {
                y = parent[&y];
                path.push(y);
            }
            return Some(path);
        }
        for &y in g.neighbors(x) {
            if within.contains(&y) && !parent.contains_key(&y) {
                parent.insert(y, x);
                queue.push_back(y);
            }
        }
    }
    None
}

/// `k` disjoint parts covering a vertex set, sizes differing by at most one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    pub parts: Vec<VertexSet>,
}

impl Partition {
    /// Splits `s` by ascending id; the first `|s| mod k` parts get the extra
    /// vertex.
    pub fn even(s: &VertexSet, k: usize) -> Self {
        assert!(k > 0, "partition into zero parts");
        let (q, r) = (s.len() / k, s.len() % k);
        let mut it = s.iter().copied();
        let parts = (0..k)
            .map(|i| it.by_ref().take(q + usize::from(i < r)).collect())
            .collect();
        Partition { parts }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairOutcome {
    pub i: usize,
    pub j: usize,
    /// Vertices of the pair's fvs `S_i ∪ S_j`.
    pub fvs_size: usize,
    /// Size of the smallfvs answer on `G_{i,j}`.
    pub local_size: usize,
    pub lifted_size: usize,
    pub explored_states: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubexpReport {
    pub solution: FvsSolution,
    pub early_return: bool,
    pub initial_size: usize,
    pub partition: Partition,
    pub pairs: Vec<PairOutcome>,
}

/// A minimal fvs within an `O(r)` factor of optimal. Pair sizes are not
/// limited; see [`subexp_with_limit`].
pub fn subexp(g: &Graph, r: f64) -> Result<SubexpReport> {
    subexp_with_limit(g, r, usize::MAX)
}

/// Like [`subexp`], failing with [`Error::FvsTooLarge`] when some pair
/// `S_i ∪ S_j` exceeds `k_limit` vertices.
pub fn subexp_with_limit(g: &Graph, r: f64, k_limit: usize) -> Result<SubexpReport> {
    if r.is_nan() || r < 1.0 {
        return Err(Error::InvalidParameter(format!(
            "ratio must be at least 1, got {r}"
        )));
    }
    let s = make_minimal(g, &g.vertex_set(), &VertexSet::new())?.solution;
    let initial_size = s.size();
    // An empty S means g is a forest and nothing is left to partition.
    if s.fvs.is_empty() || s.size() as f64 >= g.n() as f64 / r {
        return Ok(SubexpReport {
            partition: Partition {
                parts: vec![s.fvs.clone()],
            },
            solution: s,
            early_return: true,
            initial_size,
            pairs: Vec::new(),
        });
    }

    let k = r.sqrt().ceil() as usize;
    let partition = Partition::even(&s.fvs, k);
    let mut best = s;
    let mut best_is_initial = true;
    let mut pairs = Vec::new();
    for i in 0..k {
        for j in i..k {
            let pair: VertexSet = partition.parts[i]
                .union(&partition.parts[j])
                .copied()
                .collect();
            let dropped: VertexSet = outside_pair(&partition, &pair);
            let mut trace = Trace::new(g.clone());
            trace.delete_all(&dropped)?;
            let local = smallfvs(trace.reduced(), &pair, k_limit)?;
            let lifted = trace.lift(&local.solution)?;
            pairs.push(PairOutcome {
                i,
                j,
                fvs_size: pair.len(),
                local_size: local.solution.size(),
                lifted_size: lifted.size(),
                explored_states: local.explored_states,
            });
            if lifted.size() > best.size() || (best_is_initial && lifted.size() == best.size()) {
                best = lifted;
                best_is_initial = false;
            }
        }
    }
    Ok(SubexpReport {
        solution: best,
        early_return: false,
        initial_size,
        partition,
        pairs,
    })
}

fn outside_pair(partition: &Partition, pair: &VertexSet) -> VertexSet {
    partition
        .parts
        .iter()
        .flatten()
        .copied()
        .filter(|v| !pair.contains(v))
        .collect()
}
