//! Exact maximum minimal feedback vertex sets for small graphs.
//!
//! Complements of minimal feedback vertex sets are exactly the maximal
//! induced forests, so the solver searches over forests: every vertex is
//! decided into the forest `F` or the fvs `S`, `F` is kept acyclic, and a
//! vertex may only join `S` while it can still close a cycle with the
//! vertices that are not in `S`. Components are solved independently; each
//! one is limited to 128 vertices.

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::solution::{make_minimal, FvsSolution};

type Mask = u128;
const MAX_COMPONENT: usize = Mask::BITS as usize;

/// Node budget large enough to be effectively unlimited for desk-scale
/// instances.
pub const DEFAULT_BUDGET: u64 = 200_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactResult {
    pub solution: FvsSolution,
    /// False when the budget ran out before the search finished; the
    /// solution is then the best one found.
    pub optimal: bool,
    /// Search nodes visited.
    pub explored: u64,
}

/// Maximum minimal fvs of `g`, exploring at most `budget` search nodes.
pub fn exact_mmfvs(g: &Graph, budget: u64) -> Result<ExactResult> {
    solve(g, &VertexSet::new(), budget)
}

/// Maximum minimal fvs of `g` among those avoiding `f`, where `G - f` is a
/// forest.
pub fn exact_apex_forest(g: &Graph, f: Vertex) -> Result<FvsSolution> {
    g.require(f)?;
    let rest: VertexSet = g.vertices().filter(|&v| v != f).collect();
    if !g.forest_check(&rest)?.is_acyclic() {
        return Err(Error::NotApex(f));
    }
    let result = solve(g, &[f].into_iter().collect(), u64::MAX)?;
    debug_assert!(result.optimal);
    Ok(result.solution)
}

/// Maximum minimal fvs with every vertex of `keep` in the forest.
pub(crate) fn solve(g: &Graph, keep: &VertexSet, budget: u64) -> Result<ExactResult> {
    let mut fvs = VertexSet::new();
    let mut optimal = true;
    let mut explored = 0u64;
    for comp in g.components(&g.vertex_set())? {
        if comp.len() < 3 {
            continue;
        }
        if comp.len() > MAX_COMPONENT {
            return Err(Error::InvalidParameter(format!(
                "exact solver handles components of at most {MAX_COMPONENT} vertices, got {}",
                comp.len()
            )));
        }
        let sub = g.induced(&comp)?;
        if sub.is_forest() {
            continue;
        }
        let remaining = budget.saturating_sub(explored);
        let mut search = Search::new(&sub, keep, remaining)?;
        search.run();
        explored += search.nodes;
        optimal &= !search.exhausted;
        fvs.extend(search.best_vertices());
    }
    let solution = FvsSolution::certify(g, fvs)
        .map_err(|e| Error::Invariant(format!("exact solver produced an invalid set: {e}")))?;
    Ok(ExactResult {
        solution,
        optimal,
        explored,
    })
}

struct Search {
    order: Vec<Vertex>,
    adj: Vec<Mask>,
    keep: Mask,
    full: Mask,
    best: Mask,
    best_size: u32,
    nodes: u64,
    budget: u64,
    exhausted: bool,
}

impl Search {
    fn new(g: &Graph, keep: &VertexSet, budget: u64) -> Result<Self> {
        // High-degree vertices first: their decisions constrain the most.
        let mut order: Vec<Vertex> = g.vertices().collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
        let pos = |v: Vertex| {
            order.binary_search_by_key(&(std::cmp::Reverse(g.degree(v)), v), |&w| {
                (std::cmp::Reverse(g.degree(w)), w)
            })
        };
        let mut adj = vec![0 as Mask; order.len()];
        for (i, &v) in order.iter().enumerate() {
            for &w in g.neighbors(v) {
                adj[i] |= bit(pos(w).expect("vertex of the component"));
            }
        }
        let mut keep_mask = 0;
        for (i, v) in order.iter().enumerate() {
            if keep.contains(v) {
                keep_mask |= bit(i);
            }
        }
        let full = if order.len() == MAX_COMPONENT {
            Mask::MAX
        } else {
            bit(order.len()) - 1
        };

        // Greedy incumbent: any minimal fvs avoiding `keep`.
        let candidates: VertexSet = g.vertices().filter(|v| !keep.contains(v)).collect();
        let greedy = make_minimal(g, &candidates, &VertexSet::new())?
            .solution
            .fvs;
        let mut best = 0;
        for (i, v) in order.iter().enumerate() {
            if greedy.contains(v) {
                best |= bit(i);
            }
        }
        Ok(Search {
            order,
            adj,
            keep: keep_mask,
            full,
            best,
            best_size: best.count_ones(),
            nodes: 0,
            budget,
            exhausted: false,
        })
    }

    fn best_vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        ones(self.best).map(|i| self.order[i])
    }

    fn run(&mut self) {
        self.step(0, 0, 0);
    }

    fn step(&mut self, i: usize, forest: Mask, fvs: Mask) {
        if self.exhausted {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
            return;
        }
        let undecided = self.full & !(forest | fvs);
        let potential = forest | undecided;
        let reachable = fvs.count_ones() + (undecided & self.two_core(potential)).count_ones();
        if reachable <= self.best_size {
            return;
        }
        if i == self.order.len() {
            self.best = fvs;
            self.best_size = fvs.count_ones();
            return;
        }
        let x = bit(i);
        let can_forest = !self.on_cycle(i, forest);
        let can_fvs = self.keep & x == 0 && {
            let without = potential & !x;
            self.on_cycle(i, without) && ones(fvs).all(|s| self.on_cycle(s, without))
        };
        if can_fvs {
            self.step(i + 1, forest, fvs | x);
        }
        if can_forest {
            self.step(i + 1, forest | x, fvs);
        }
    }

    /// Whether vertex `x` has two neighbours in one component of `G[mask]`.
    fn on_cycle(&self, x: usize, mask: Mask) -> bool {
        let mask = mask & !bit(x);
        let mut nb = self.adj[x] & mask;
        while nb != 0 {
            let a = nb.trailing_zeros() as usize;
            let comp = self.flood(a, mask);
            if (comp & self.adj[x]).count_ones() >= 2 {
                return true;
            }
            nb &= !comp;
        }
        false
    }

    fn flood(&self, start: usize, mask: Mask) -> Mask {
        let mut comp = bit(start);
        let mut frontier = comp;
        while frontier != 0 {
            let mut next = 0;
            for b in ones(frontier) {
                next |= self.adj[b];
            }
            next &= mask & !comp;
            comp |= next;
            frontier = next;
        }
        comp
    }

    /// Vertices of `mask` surviving repeated removal of vertices with at most
    /// one neighbour; only these can lie on a cycle.
    fn two_core(&self, mut mask: Mask) -> Mask {
        loop {
            let mut peel = 0;
            for b in ones(mask) {
                if (self.adj[b] & mask).count_ones() <= 1 {
                    peel |= bit(b);
                }
            }
            if peel == 0 {
                return mask;
            }
            mask &= !peel;
        }
    }
}

fn bit(i: usize) -> Mask {
    1 << i
}

fn ones(mut m: Mask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}
