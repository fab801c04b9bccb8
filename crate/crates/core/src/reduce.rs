//! Safe reduction rules and exact solution lifting.
//!
//! Two rules never change the optimum: deleting a vertex of degree at most
//! one, and contracting an edge between two degree-2 vertices whose
//! neighborhoods are disjoint. A [`Trace`] records every vertex deletion and
//! edge contraction applied to a graph, safe or not, together with the
//! neighborhoods at application time. Any minimal fvs of the final graph can
//! then be carried back to the original one without shrinking.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::solution::{complement, FvsSolution};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReductionStep {
    Delete {
        vertex: Vertex,
        neighbors: Vec<Vertex>,
    },
    Contract {
        u: Vertex,
        v: Vertex,
        merged: Vertex,
        u_neighbors: Vec<Vertex>,
        v_neighbors: Vec<Vertex>,
    },
}

impl ReductionStep {
    /// Whether the step is one of the two optimum-preserving rules.
    pub fn is_safe(&self) -> bool {
        match self {
            ReductionStep::Delete { neighbors, .. } => neighbors.len() <= 1,
            ReductionStep::Contract {
                u_neighbors,
                v_neighbors,
                ..
            } => u_neighbors.len() == 2 && v_neighbors.len() == 2,
        }
    }
}

/// A rule that applies to a graph that is not yet reduced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rule {
    DeleteLowDegree(Vertex),
    ContractDegreeTwo(Vertex, Vertex),
}

/// `None` iff `g` is reduced. Deletions take priority over contractions;
/// within a rule the smallest vertex (or lexicographically smallest edge)
/// wins.
pub fn first_applicable_rule(g: &Graph) -> Option<Rule> {
    if let Some(v) = g.vertices().find(|&v| g.degree(v) <= 1) {
        return Some(Rule::DeleteLowDegree(v));
    }
    for u in g.vertices().filter(|&u| g.degree(u) == 2) {
        let nu = g.neighbors(u);
        for &v in nu.range(u..) {
            if g.degree(v) == 2 && nu.is_disjoint(g.neighbors(v)) {
                return Some(Rule::ContractDegreeTwo(u, v));
            }
        }
    }
    None
}

pub fn is_reduced(g: &Graph) -> bool {
    first_applicable_rule(g).is_none()
}

/// Applies the safe rules exhaustively.
pub fn reduce(g: &Graph) -> Trace {
    let mut trace = Trace::new(g.clone());
    trace.reduce_further();
    trace
}

/// Lifts a minimal fvs of `trace.reduced()` to one of `trace.original()`.
pub fn lift(trace: &Trace, sol: &FvsSolution) -> Result<FvsSolution> {
    trace.lift(sol)
}

pub type ReductionTrace = Trace;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trace {
    original: Graph,
    steps: Vec<ReductionStep>,
    current: Graph,
}

impl Trace {
    pub fn new(original: Graph) -> Self {
        Trace {
            current: original.clone(),
            original,
            steps: Vec::new(),
        }
    }

    pub fn original(&self) -> &Graph {
        &self.original
    }

    pub fn steps(&self) -> &[ReductionStep] {
        &self.steps
    }

    /// The graph after all recorded steps.
    pub fn reduced(&self) -> &Graph {
        &self.current
    }

    pub fn is_safe(&self) -> bool {
        self.steps.iter().all(ReductionStep::is_safe)
    }

    pub fn delete(&mut self, x: Vertex) -> Result<()> {
        let nb = self.current.remove_vertex(x)?;
        self.steps.push(ReductionStep::Delete {
            vertex: x,
            neighbors: nb.into_iter().collect(),
        });
        Ok(())
    }

    pub fn delete_all(&mut self, xs: &VertexSet) -> Result<()> {
        self.current.require_all(xs)?;
        xs.iter().try_for_each(|&x| self.delete(x))
    }

    /// Contracts `uv`; the endpoints must have disjoint neighborhoods.
    pub fn contract(&mut self, u: Vertex, v: Vertex) -> Result<Vertex> {
        self.current.check_contractible(u, v)?;
        let u_neighbors = self.current.neighbors(u).iter().copied().collect();
        let v_neighbors = self.current.neighbors(v).iter().copied().collect();
        let merged = self.current.contract_in_place(u, v)?;
        self.steps.push(ReductionStep::Contract {
            u,
            v,
            merged,
            u_neighbors,
            v_neighbors,
        });
        Ok(merged)
    }

    /// Applies the safe rules to the current graph until it is reduced.
    pub fn reduce_further(&mut self) {
        while let Some(rule) = first_applicable_rule(&self.current) {
            let applied = match rule {
                Rule::DeleteLowDegree(x) => self.delete(x),
                Rule::ContractDegreeTwo(u, v) => self.contract(u, v).map(|_| ()),
            };
            applied.expect("applicable rule");
        }
    }

    /// Line-oriented log: `D u` for a deletion, `C u v w` for a contraction
    /// of `uv` into `w`. Ids are shifted by `offset` (1 gives DIMACS
    /// numbering).
    pub fn to_log(&self, offset: u32) -> String {
        let mut out = String::new();
        for step in &self.steps {
            match step {
                ReductionStep::Delete { vertex, .. } => {
                    writeln!(out, "D {}", vertex.0 + offset).unwrap();
                }
                ReductionStep::Contract { u, v, merged, .. } => {
                    writeln!(
                        out,
                        "C {} {} {}",
                        u.0 + offset,
                        v.0 + offset,
                        merged.0 + offset
                    )
                    .unwrap();
                }
            }
        }
        out
    }

    /// Re-runs the steps on the original graph, checking the recorded
    /// neighborhoods along the way.
    pub fn replay(&self) -> Result<Graph> {
        let mut g = self.original.clone();
        for step in &self.steps {
            match step {
                ReductionStep::Delete { vertex, neighbors } => {
                    let nb = g.remove_vertex(*vertex)?;
                    if !nb.iter().eq(neighbors.iter()) {
                        return Err(Error::Invariant(format!("neighbors of {vertex} differ")));
                    }
                }
                ReductionStep::Contract { u, v, merged, .. } => {
                    let w = g.contract_in_place(*u, *v)?;
                    if w != *merged {
                        return Err(Error::Invariant(format!("contraction minted {w}")));
                    }
                }
            }
        }
        Ok(g)
    }

    pub fn lift(&self, sol: &FvsSolution) -> Result<FvsSolution> {
        sol.verify(&self.current)?;
        let fvs = self.lift_set(&sol.fvs)?;
        FvsSolution::certify(&self.original, fvs)
            .map_err(|e| Error::Invariant(format!("lifted set failed certification: {e}")))
    }

    /// Undoes the steps last to first, reconstructing each earlier graph from
    /// the recorded neighborhoods.
    ///
    /// Undoing a deletion of `x` adds `x` to the set and drops it again if it
    /// is redundant; the other members keep their private cycles, so nothing
    /// else can become redundant. Undoing a contraction into `w ∈ S` replaces
    /// `w` by both endpoints, of which at most one is redundant; if `w ∉ S`
    /// the set is kept.
    pub fn lift_set(&self, fvs: &VertexSet) -> Result<VertexSet> {
        let mut g = self.current.clone();
        let mut s = fvs.clone();
        for step in self.steps.iter().rev() {
            match step {
                ReductionStep::Delete { vertex, neighbors } => {
                    g.restore_vertex(*vertex, neighbors);
                    if neighbors.len() >= 2 {
                        let forest = complement(&g, &s);
                        if g.cycle_through(&forest, *vertex).is_some() {
                            s.insert(*vertex);
                        }
                    }
                }
                ReductionStep::Contract {
                    u,
                    v,
                    merged,
                    u_neighbors,
                    v_neighbors,
                } => {
                    g.remove_vertex(*merged)?;
                    let nu: Vec<Vertex> = u_neighbors.iter().copied().filter(|x| x != v).collect();
                    g.restore_vertex(*u, &nu);
                    g.restore_vertex(*v, v_neighbors);
                    if s.remove(merged) {
                        s.insert(*u);
                        s.insert(*v);
                        let mut dropped = 0;
                        for x in [(*u).min(*v), (*u).max(*v)] {
                            let forest = complement(&g, &s);
                            if g.cycle_through(&forest, x).is_none() {
                                s.remove(&x);
                                dropped += 1;
                            }
                        }
                        if dropped > 1 {
                            return Err(Error::Invariant(format!(
                                "both endpoints of contracted edge {u}{v} were redundant"
                            )));
                        }
                    }
                }
            }
        }
        g.set_next_id(self.original.next_id());
        debug_assert_eq!(
            g, self.original,
            "reconstruction must reproduce the original"
        );
        Ok(s)
    }
}
