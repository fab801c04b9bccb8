//! Simple undirected graphs with stable vertex identities.
//!
//! Vertex ids are never reused: deleting a vertex retires its id and
//! contracting an edge mints a fresh one from a monotone counter. This lets a
//! [`Trace`](crate::reduce::Trace) refer to vertices of earlier versions of a
//! graph. All iteration is in ascending id order.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

/// Opaque vertex identifier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex(pub u32);

impl Vertex {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<u32> for Vertex {
    fn from(id: u32) -> Self {
        Vertex(id)
    }
}

pub type VertexSet = BTreeSet<Vertex>;

/// Builds a [`VertexSet`] from raw ids.
pub fn vset<I: IntoIterator<Item = u32>>(ids: I) -> VertexSet {
    ids.into_iter().map(Vertex).collect()
}

/// A cycle given as its vertices in traversal order; the closing edge runs
/// from the last vertex back to the first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycleWitness {
    pub vertices: Vec<Vertex>,
}

impl CycleWitness {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.vertices.contains(&v)
    }

    /// Checks that this is a genuine cycle of `g` (at least three distinct
    /// vertices, cyclically consecutive ones adjacent), optionally confined to
    /// `within`.
    pub fn is_valid_in(&self, g: &Graph, within: Option<&VertexSet>) -> bool {
        let k = self.vertices.len();
        if k < 3 {
            return false;
        }
        let distinct: VertexSet = self.vertices.iter().copied().collect();
        if distinct.len() != k {
            return false;
        }
        if let Some(set) = within {
            if !distinct.is_subset(set) {
                return false;
            }
        }
        (0..k).all(|i| g.has_edge(self.vertices[i], self.vertices[(i + 1) % k]))
    }
}

impl fmt::Display for CycleWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.vertices.iter().map(|v| v.to_string()).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

/// Outcome of [`Graph::forest_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ForestCheck {
    Acyclic,
    Cycle(CycleWitness),
}

impl ForestCheck {
    pub fn is_acyclic(&self) -> bool {
        matches!(self, ForestCheck::Acyclic)
    }

    pub fn cycle(self) -> Option<CycleWitness> {
        match self {
            ForestCheck::Acyclic => None,
            ForestCheck::Cycle(c) => Some(c),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Graph {
    adj: BTreeMap<Vertex, VertexSet>,
    next_id: u32,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// `n` isolated vertices with ids `0..n`.
    pub fn empty(n: usize) -> Self {
        let mut g = Graph::new();
        for _ in 0..n {
            g.add_vertex();
        }
        g
    }

    /// Graph on ids `0..n` with the given edges.
    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.add_edge(Vertex(u), Vertex(v))?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n as u32 {
            for v in u + 1..n as u32 {
                g.link(Vertex(u), Vertex(v));
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least three vertices");
        let mut g = Graph::path(n);
        g.link(Vertex(0), Vertex(n as u32 - 1));
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 1..n as u32 {
            g.link(Vertex(u - 1), Vertex(u));
        }
        g
    }

    /// `K_{a,b}`: ids `0..a` on one side, `a..a+b` on the other.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut g = Graph::empty(a + b);
        for u in 0..a as u32 {
            for v in a as u32..(a + b) as u32 {
                g.link(Vertex(u), Vertex(v));
            }
        }
        g
    }

    pub fn add_vertex(&mut self) -> Vertex {
        let v = Vertex(self.next_id);
        self.next_id += 1;
        self.adj.insert(v, VertexSet::new());
        v
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        self.require(u)?;
        self.require(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if self.has_edge(u, v) {
            return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
        }
        self.link(u, v);
        Ok(())
    }

    /// Inserts an edge between two live, distinct vertices; idempotent.
    pub(crate) fn link(&mut self, u: Vertex, v: Vertex) {
        debug_assert!(u != v && self.contains(u) && self.contains(v));
        self.adj.get_mut(&u).expect("live vertex").insert(v);
        self.adj.get_mut(&v).expect("live vertex").insert(u);
    }

    /// Re-inserts a vertex under a specific (previously retired) id. Used when
    /// undoing recorded edits.
    pub(crate) fn restore_vertex(&mut self, v: Vertex, neighbors: &[Vertex]) {
        debug_assert!(!self.contains(v));
        self.adj.insert(v, VertexSet::new());
        self.next_id = self.next_id.max(v.0 + 1);
        for &w in neighbors {
            self.link(v, w);
        }
    }

    pub(crate) fn set_next_id(&mut self, next: u32) {
        debug_assert!(self.adj.keys().all(|v| v.0 < next));
        self.next_id = next;
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.adj.values().map(|s| s.len()).sum::<usize>() / 2
    }

    /// Id the next contraction or [`add_vertex`](Self::add_vertex) will mint.
    pub fn next_id(&self) -> u32 {
        self.next_id
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.adj.keys().copied()
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.adj.keys().copied().collect()
    }

    /// Neighbors of `v`.
    ///
    /// Panics if `v` is not a live vertex.
    pub fn neighbors(&self, v: Vertex) -> &VertexSet {
        self.adj
            .get(&v)
            .unwrap_or_else(|| panic!("no such vertex: {v}"))
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.neighbors(v).len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.values().map(|s| s.len()).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj.get(&u).is_some_and(|s| s.contains(&v))
    }

    /// Edges as `(u, v)` with `u < v`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .flat_map(|(&u, nb)| nb.range(u..).map(move |&v| (u, v)))
    }

    pub fn require(&self, v: Vertex) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(Error::NoSuchVertex(v))
        }
    }

    pub fn require_all<'a, I: IntoIterator<Item = &'a Vertex>>(&self, xs: I) -> Result<()> {
        xs.into_iter().try_for_each(|&v| self.require(v))
    }

    /// Copy of `self` without `xs` and their incident edges.
    pub fn delete_vertices(&self, xs: &VertexSet) -> Result<Graph> {
        self.require_all(xs)?;
        let mut g = self.clone();
        for &x in xs {
            g.remove_vertex(x)?;
        }
        Ok(g)
    }

    /// Removes `v` in place and returns its former neighbors.
    pub fn remove_vertex(&mut self, v: Vertex) -> Result<VertexSet> {
        let nb = self.adj.remove(&v).ok_or(Error::NoSuchVertex(v))?;
        for w in &nb {
            self.adj.get_mut(w).expect("symmetric adjacency").remove(&v);
        }
        self.debug_validate();
        Ok(nb)
    }

    /// Copy of `self` with the edge `uv` contracted into a fresh vertex `w`.
    ///
    /// Only edges whose endpoints have disjoint neighborhoods may be
    /// contracted, so the result is always simple.
    pub fn contract_edge(&self, u: Vertex, v: Vertex) -> Result<(Graph, Vertex)> {
        let mut g = self.clone();
        let w = g.contract_in_place(u, v)?;
        Ok((g, w))
    }

    pub fn contract_in_place(&mut self, u: Vertex, v: Vertex) -> Result<Vertex> {
        self.check_contractible(u, v)?;
        let nu = self.remove_vertex(u)?;
        let nv = self.remove_vertex(v)?;
        let w = self.add_vertex();
        for x in nu.into_iter().chain(nv).filter(|&x| x != u && x != v) {
            self.link(w, x);
        }
        self.debug_validate();
        Ok(w)
    }

    pub fn check_contractible(&self, u: Vertex, v: Vertex) -> Result<()> {
        self.require(u)?;
        self.require(v)?;
        if !self.has_edge(u, v) {
            return Err(Error::NotAnEdge(u, v));
        }
        if !self.neighbors(u).is_disjoint(self.neighbors(v)) {
            return Err(Error::NeighborhoodsIntersect(u, v));
        }
        Ok(())
    }

    /// Induced subgraph on `xs`, keeping ids.
    pub fn induced(&self, xs: &VertexSet) -> Result<Graph> {
        self.require_all(xs)?;
        let adj = xs
            .iter()
            .map(|&v| (v, self.neighbors(v).intersection(xs).copied().collect()))
            .collect();
        Ok(Graph {
            adj,
            next_id: self.next_id,
        })
    }

    /// Whether the subgraph induced by `xs` is a forest; if not, one of its
    /// cycles.
    pub fn forest_check(&self, xs: &VertexSet) -> Result<ForestCheck> {
        self.require_all(xs)?;
        Ok(match self.find_cycle_within(xs) {
            None => ForestCheck::Acyclic,
            Some(c) => ForestCheck::Cycle(c),
        })
    }

    pub fn is_forest(&self) -> bool {
        // |E| = |V| - #components for forests.
        self.m() + self.components_unchecked(&self.vertex_set()).len() == self.n()
    }

    /// Connected components of the subgraph induced by `xs`, ordered by their
    /// smallest vertex.
    pub fn components(&self, xs: &VertexSet) -> Result<Vec<VertexSet>> {
        self.require_all(xs)?;
        Ok(self.components_unchecked(xs))
    }

    pub(crate) fn components_unchecked(&self, xs: &VertexSet) -> Vec<VertexSet> {
        let mut seen = VertexSet::new();
        let mut out = Vec::new();
        for &s in xs {
            if seen.contains(&s) {
                continue;
            }
            let mut block = VertexSet::new();
            let mut queue = VecDeque::from([s]);
            seen.insert(s);
            while let Some(x) = queue.pop_front() {
                block.insert(x);
                for &y in self.neighbors(x) {
                    if xs.contains(&y) && seen.insert(y) {
                        queue.push_back(y);
                    }
                }
            }
            out.push(block);
        }
        out
    }

    /// Depth-first search for a cycle inside `G[xs]`. In an undirected DFS
    /// the first non-tree edge met always closes a cycle with the stack.
    pub(crate) fn find_cycle_within(&self, xs: &VertexSet) -> Option<CycleWitness> {
        let mut parent: BTreeMap<Vertex, Option<Vertex>> = BTreeMap::new();
        for &root in xs {
            if parent.contains_key(&root) {
                continue;
            }
            parent.insert(root, None);
            let mut stack: Vec<(Vertex, std::collections::btree_set::Iter<'_, Vertex>)> =
                vec![(root, self.neighbors(root).iter())];
            while let Some((v, iter)) = stack.last_mut() {
                let v = *v;
                match iter.next() {
                    None => {
                        stack.pop();
                    }
                    Some(&w) => {
                        if !xs.contains(&w) || parent[&v] == Some(w) {
                            continue;
                        }
                        if parent.contains_key(&w) {
                            let mut cycle = vec![v];
                            let mut x = v;
                            while x != w {
                                x = parent[&x].expect("w is an ancestor of v");
                                cycle.push(x);
                            }
                            cycle.reverse();
                            return Some(CycleWitness { vertices: cycle });
                        }
                        parent.insert(w, Some(v));
                        stack.push((w, self.neighbors(w).iter()));
                    }
                }
            }
        }
        None
    }

    /// Given that `G[forest \ {x}]` is acyclic, returns a shortest cycle of
    /// `G[forest ∪ {x}]` through `x`, if any. Whether `forest` contains `x`
    /// does not matter.
    pub(crate) fn cycle_through(&self, forest: &VertexSet, x: Vertex) -> Option<CycleWitness> {
        let anchors: Vec<Vertex> = self
            .neighbors(x)
            .iter()
            .copied()
            .filter(|w| forest.contains(w))
            .collect();
        let mut explored = VertexSet::from([x]);
        for &a in &anchors {
            if explored.contains(&a) {
                continue;
            }
            let mut parent: BTreeMap<Vertex, Vertex> = BTreeMap::new();
            let mut queue = VecDeque::from([a]);
            explored.insert(a);
            while let Some(y) = queue.pop_front() {
                if y != a && self.has_edge(x, y) {
                    let mut path = vec![y];
                    let mut z = y;
                    while z != a {
                        z = parent[&z];
                        path.push(z);
                    }
                    path.reverse();
                    let mut vertices = vec![x];
                    vertices.extend(path);
                    return Some(CycleWitness { vertices });
                }
                for &z in self.neighbors(y) {
                    if z != x && forest.contains(&z) && explored.insert(z) {
                        parent.insert(z, y);
                        queue.push_back(z);
                    }
                }
            }
        }
        None
    }

    /// Structural validator: symmetric, irreflexive adjacency over live
    /// vertices and ids below the fresh-id counter.
    pub fn validate(&self) -> Result<()> {
        for (&u, nb) in &self.adj {
            if u.0 >= self.next_id {
                return Err(Error::Invariant(format!("vertex {u} not below next id")));
            }
            for &v in nb {
                if v == u {
                    return Err(Error::SelfLoop(u));
                }
                if !self.adj.get(&v).is_some_and(|s| s.contains(&u)) {
                    return Err(Error::Invariant(format!("asymmetric edge {u}{v}")));
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub(crate) fn debug_validate(&self) {
        #[cfg(debug_assertions)]
        if self.adj.len() <= 256 {
            self.validate().expect("graph structure");
        }
    }
}
