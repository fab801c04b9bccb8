//! Feedback vertex sets: feasibility, minimality through private cycles, and
//! greedy minimisation.

use std::collections::BTreeMap;

use crate::dsu::DisjointSets;
use crate::error::{Error, Result};
use crate::graph::{CycleWitness, ForestCheck, Graph, Vertex, VertexSet};
use crate::rng::SplitMix64;

/// A minimal feedback vertex set together with its induced forest and a
/// private cycle for every member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FvsSolution {
    pub fvs: VertexSet,
    pub forest: VertexSet,
    /// For each `s` in `fvs`, a cycle inside `forest ∪ {s}` through `s`.
    pub certificates: BTreeMap<Vertex, CycleWitness>,
}

impl FvsSolution {
    /// The empty solution of an acyclic graph.
    pub fn empty(g: &Graph) -> Self {
        FvsSolution {
            fvs: VertexSet::new(),
            forest: g.vertex_set(),
            certificates: BTreeMap::new(),
        }
    }

    pub fn size(&self) -> usize {
        self.fvs.len()
    }

    /// Builds the certified solution for `fvs`, failing if `fvs` is not a
    /// minimal feedback vertex set of `g`.
    pub fn certify(g: &Graph, fvs: VertexSet) -> Result<Self> {
        g.require_all(&fvs)?;
        let forest: VertexSet = g.vertex_set().difference(&fvs).copied().collect();
        if let Some(c) = g.find_cycle_within(&forest) {
            return Err(Error::NotFvs(c));
        }
        let mut certificates = BTreeMap::new();
        for &s in &fvs {
            match g.cycle_through(&forest, s) {
                Some(c) => {
                    certificates.insert(s, c);
                }
                None => return Err(Error::Redundant(s)),
            }
        }
        Ok(FvsSolution {
            fvs,
            forest,
            certificates,
        })
    }

    /// Re-validates every invariant against `g`.
    pub fn verify(&self, g: &Graph) -> Result<()> {
        g.require_all(&self.fvs)?;
        g.require_all(&self.forest)?;
        if !self.fvs.is_disjoint(&self.forest) || self.fvs.len() + self.forest.len() != g.n() {
            return Err(Error::Invariant(
                "fvs and forest do not partition the vertex set".into(),
            ));
        }
        if let Some(c) = g.find_cycle_within(&self.forest) {
            return Err(Error::NotFvs(c));
        }
        for &s in &self.fvs {
            let ok = self.certificates.get(&s).is_some_and(|c| {
                c.contains(s)
                    && c.is_valid_in(g, None)
                    && c.vertices
                        .iter()
                        .all(|x| *x == s || self.forest.contains(x))
            });
            if !ok {
                return Err(Error::Redundant(s));
            }
        }
        if self.certificates.len() != self.fvs.len() {
            return Err(Error::Invariant("certificate for a non-member".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MinimalityVerdict {
    Minimal,
    NotFvs(CycleWitness),
    Redundant(Vertex),
}

/// A cycle through `u` in `G[(V \ S) ∪ {u}]`, if one exists.
pub fn has_private_cycle(g: &Graph, s: &VertexSet, u: Vertex) -> Result<Option<CycleWitness>> {
    g.require(u)?;
    g.require_all(s)?;
    if !s.contains(&u) {
        return Err(Error::NotInSet(u));
    }
    let forest = complement(g, s);
    if let ForestCheck::Cycle(c) = g.forest_check(&forest)? {
        return Err(Error::NotFvs(c));
    }
    Ok(g.cycle_through(&forest, u))
}

pub fn is_minimal_fvs(g: &Graph, s: &VertexSet) -> Result<MinimalityVerdict> {
    g.require_all(s)?;
    let forest = complement(g, s);
    if let Some(c) = g.find_cycle_within(&forest) {
        return Ok(MinimalityVerdict::NotFvs(c));
    }
    for &u in s {
        if g.cycle_through(&forest, u).is_none() {
            return Ok(MinimalityVerdict::Redundant(u));
        }
    }
    Ok(MinimalityVerdict::Minimal)
}

/// Order in which [`make_minimal_with`] tests candidates for removal.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum RemovalOrder {
    #[default]
    Ascending,
    /// Fisher-Yates shuffle of the candidates under the given seed.
    Shuffled(u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Minimized {
    pub solution: FvsSolution,
    /// Protected vertices that still turned out redundant and were dropped.
    pub dropped_protected: VertexSet,
}

pub fn make_minimal(g: &Graph, s: &VertexSet, protected: &VertexSet) -> Result<Minimized> {
    make_minimal_with(g, s, protected, RemovalOrder::Ascending)
}

/// Shrinks the feedback vertex set `s` to a minimal one by repeatedly
/// dropping redundant vertices. Unprotected vertices are tested first, in
/// `order`; protected ones are tested afterwards, ascending.
///
/// A single pass suffices: once a vertex has a private cycle it keeps it,
/// since the forest only grows.
pub fn make_minimal_with(
    g: &Graph,
    s: &VertexSet,
    protected: &VertexSet,
    order: RemovalOrder,
) -> Result<Minimized> {
    g.require_all(s)?;
    g.require_all(protected)?;
    let mut forest = complement(g, s);
    if let Some(c) = g.find_cycle_within(&forest) {
        return Err(Error::NotFvs(c));
    }

    let mut dsu = DisjointSets::new(g.next_id() as usize);
    for (a, b) in g.edges() {
        if forest.contains(&a) && forest.contains(&b) {
            dsu.union(a.index(), b.index());
        }
    }

    let mut candidates: Vec<Vertex> = s.difference(protected).copied().collect();
    if let RemovalOrder::Shuffled(seed) = order {
        SplitMix64::new(seed).shuffle(&mut candidates);
    }
    candidates.extend(s.intersection(protected).copied());

    let mut fvs = s.clone();
    let mut dropped_protected = VertexSet::new();
    for x in candidates {
        let mut roots: Vec<usize> = g
            .neighbors(x)
            .iter()
            .filter(|w| forest.contains(w))
            .map(|w| dsu.find(w.index()))
            .collect();
        let k = roots.len();
        roots.sort_unstable();
        roots.dedup();
        if roots.len() == k {
            // No two forest neighbours share a tree: x is redundant.
            for r in roots {
                dsu.union(x.index(), r);
            }
            forest.insert(x);
            fvs.remove(&x);
            if protected.contains(&x) {
                dropped_protected.insert(x);
            }
        }
    }

    let solution = FvsSolution::certify(g, fvs)?;
    Ok(Minimized {
        solution,
        dropped_protected,
    })
}

pub(crate) fn complement(g: &Graph, s: &VertexSet) -> VertexSet {
    g.vertices().filter(|v| !s.contains(v)).collect()
}
