//! Instance generators: the two tightness families, the two hardness
//! gadgets with their solution maps, and seeded random graphs.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::rng::SplitMix64;
use crate::solution::{complement, make_minimal, FvsSolution};

/// Two complete binary trees with `n` leaves each, roots joined, every edge
/// subdivided, plus `u = 0` and `v = 1` adjacent to all `2n` leaves.
/// Returns the graph and `{u, v}`.
pub fn gen_tight_forest(n: usize) -> Result<(Graph, VertexSet)> {
    if n < 2 || !n.is_power_of_two() {
        return Err(Error::InvalidParameter(format!(
            "tight forest needs a power of two n >= 2, got {n}"
        )));
    }
    let mut g = Graph::empty(2);
    let (u, v) = (Vertex(0), Vertex(1));
    let mut roots = Vec::new();
    for _ in 0..2 {
        // Heap layout: node i has children 2i+1 and 2i+2.
        let nodes: Vec<Vertex> = (0..2 * n - 1).map(|_| g.add_vertex()).collect();
        for i in 1..nodes.len() {
            subdivide(&mut g, nodes[(i - 1) / 2], nodes[i])?;
        }
        for &leaf in &nodes[n - 1..] {
            g.add_edge(u, leaf)?;
            g.add_edge(v, leaf)?;
        }
        roots.push(nodes[0]);
    }
    subdivide(&mut g, roots[0], roots[1])?;
    Ok((g, [u, v].into_iter().collect()))
}

fn subdivide(g: &mut Graph, a: Vertex, b: Vertex) -> Result<()> {
    let mid = g.add_vertex();
    g.add_edge(a, mid)?;
    g.add_edge(mid, b)
}

/// `K_n` with `2n` fresh common neighbours for every pair of clique vertices.
pub fn gen_tight_extremal(n: usize) -> Result<Graph> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "extremal family needs n >= 2, got {n}"
        )));
    }
    let mut g = Graph::complete(n);
    for a in 0..n as u32 {
        for b in a + 1..n as u32 {
            for _ in 0..2 * n {
                let x = g.add_vertex();
                g.add_edge(Vertex(a), x)?;
                g.add_edge(Vertex(b), x)?;
            }
        }
    }
    Ok(g)
}

/// The vertices added for one source edge `e = (u, v)` by [`gen_nph_gadget`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeGadget {
    pub edge: (Vertex, Vertex),
    /// Path `u - e1 - e2 - v`.
    pub e1: Vertex,
    pub e2: Vertex,
    /// `cycles[i] = [c1..c6]` for `e^(i+1)`: 4-cycles `e c1 c2 c3` and
    /// `e c4 c5 c6`.
    pub cycles: [[Vertex; 6]; 2],
}

impl EdgeGadget {
    fn hub(&self, i: usize) -> Vertex {
        [self.e1, self.e2][i]
    }

    /// The source endpoint adjacent to `e^(i+1)`.
    fn endpoint(&self, i: usize) -> Vertex {
        [self.edge.0, self.edge.1][i]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GadgetKind {
    IndependentSet,
    VertexCover,
}

/// Parameters of a gadget together with the bounds its construction claims.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpectedBounds {
    pub n: usize,
    pub edges: usize,
    /// Independence number of the source, when small enough to compute.
    pub alpha: Option<usize>,
    /// `(n-1)·C(α,2) ≤ mmfvs(product)`.
    pub lower: Option<usize>,
    /// `mmfvs(product) ≤ n·C(2α,2) + n`.
    pub upper: Option<usize>,
    /// Solutions of the product exceed vertex covers of the source by
    /// `4|E|`.
    pub offset: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetMap {
    pub kind: GadgetKind,
    pub source: Graph,
    /// Contains the source with its ids unchanged.
    pub product: Graph,
    /// `I_uv`, for every pair `u < v`.
    pub pair_sets: BTreeMap<(Vertex, Vertex), Vec<Vertex>>,
    pub edge_gadgets: Vec<EdgeGadget>,
    pub expected: ExpectedBounds,
}

const ALPHA_LIMIT: usize = 20;

/// Source plus `n` vertices adjacent to exactly `u` and `v` for every pair of
/// source vertices, adjacent or not.
pub fn gen_mis_gadget(g: &Graph) -> Result<GadgetMap> {
    let n = g.n();
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "gadget source needs two vertices, got {n}"
        )));
    }
    let mut product = g.clone();
    let mut pair_sets = BTreeMap::new();
    let vs: Vec<Vertex> = g.vertices().collect();
    for (i, &a) in vs.iter().enumerate() {
        for &b in &vs[i + 1..] {
            let set: Vec<Vertex> = (0..n)
                .map(|_| {
                    let x = product.add_vertex();
                    product.link(a, x);
                    product.link(b, x);
                    x
                })
                .collect();
            pair_sets.insert((a, b), set);
        }
    }
    product.debug_validate();
    let alpha = (n <= ALPHA_LIMIT).then(|| independence_number(g));
    Ok(GadgetMap {
        kind: GadgetKind::IndependentSet,
        source: g.clone(),
        product,
        pair_sets,
        edge_gadgets: Vec::new(),
        expected: ExpectedBounds {
            n,
            edges: g.m(),
            alpha,
            lower: alpha.map(|a| (n - 1) * choose2(a)),
            upper: alpha.map(|a| n * choose2(2 * a) + n),
            offset: None,
        },
    })
}

/// Source plus, per edge `e = (u, v)`, the path `u e1 e2 v` and two 4-cycles
/// hanging off each of `e1`, `e2`. Sources must have maximum degree 3.
pub fn gen_nph_gadget(g: &Graph) -> Result<GadgetMap> {
    if g.max_degree() > 3 {
        return Err(Error::DegreeTooLarge(g.max_degree()));
    }
    let mut product = g.clone();
    let mut edge_gadgets = Vec::new();
    for (u, v) in g.edges() {
        let e1 = product.add_vertex();
        let e2 = product.add_vertex();
        product.link(u, e1);
        product.link(e1, e2);
        product.link(e2, v);
        let mut cycles = [[Vertex(0); 6]; 2];
        for (i, hub) in [e1, e2].into_iter().enumerate() {
            for c in cycles[i].iter_mut() {
                *c = product.add_vertex();
            }
            for half in cycles[i].chunks(3) {
                product.link(hub, half[0]);
                product.link(half[0], half[1]);
                product.link(half[1], half[2]);
                product.link(half[2], hub);
            }
        }
        edge_gadgets.push(EdgeGadget {
            edge: (u, v),
            e1,
            e2,
            cycles,
        });
    }
    product.debug_validate();
    debug_assert!(product.max_degree() <= 6);
    let n = g.n();
    let alpha = (n <= ALPHA_LIMIT).then(|| independence_number(g));
    Ok(GadgetMap {
        kind: GadgetKind::VertexCover,
        source: g.clone(),
        product,
        pair_sets: BTreeMap::new(),
        edge_gadgets,
        expected: ExpectedBounds {
            n,
            edges: g.m(),
            alpha,
            lower: None,
            upper: None,
            offset: Some(4 * g.m()),
        },
    })
}

fn choose2(a: usize) -> usize {
    a * a.saturating_sub(1) / 2
}

/// Brute force over subsets; only for small graphs.
pub fn independence_number(g: &Graph) -> usize {
    let vs: Vec<Vertex> = g.vertices().collect();
    let n = vs.len();
    assert!(n <= 30, "independence number by enumeration needs n <= 30");
    let adj: Vec<u32> = vs
        .iter()
        .map(|&a| {
            (0..n)
                .filter(|&j| g.has_edge(a, vs[j]))
                .fold(0, |m, j| m | 1 << j)
        })
        .collect();
    (0u32..1 << n)
        .filter(|&m| (0..n).all(|i| m >> i & 1 == 0 || adj[i] & m == 0))
        .map(|m| m.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// Checks that `c` is a minimal vertex cover of `g`.
pub fn check_minimal_vertex_cover(g: &Graph, c: &VertexSet) -> Result<()> {
    g.require_all(c)?;
    if let Some((a, b)) = g.edges().find(|(a, b)| !c.contains(a) && !c.contains(b)) {
        return Err(Error::NotVertexCover(a, b));
    }
    for &x in c {
        if g.neighbors(x).iter().all(|y| c.contains(y)) {
            return Err(Error::CoverNotMinimal(x));
        }
    }
    Ok(())
}

fn check_vertex_cover(g: &Graph, c: &VertexSet) -> Result<()> {
    g.require_all(c)?;
    match g.edges().find(|(a, b)| !c.contains(a) && !c.contains(b)) {
        Some((a, b)) => Err(Error::NotVertexCover(a, b)),
        None => Ok(()),
    }
}

fn require_kind(map: &GadgetMap, kind: GadgetKind) -> Result<()> {
    if map.kind == kind {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "expected a {kind:?} gadget, got {:?}",
            map.kind
        )))
    }
}

/// Minimal fvs of the independent-set product grown from the vertex cover
/// `c` and every pair set; `c` is kept wherever possible. With
/// `c_is_minimum` the size is checked against the construction's lower bound.
pub fn lift_vc_to_fvs(map: &GadgetMap, c: &VertexSet, c_is_minimum: bool) -> Result<FvsSolution> {
    require_kind(map, GadgetKind::IndependentSet)?;
    check_vertex_cover(&map.source, c)?;
    let mut start = c.clone();
    start.extend(map.pair_sets.values().flatten().copied());
    let sol = make_minimal(&map.product, &start, c)?.solution;
    if c_is_minimum {
        let bound = (map.source.n() - 1) * choose2(map.source.n() - c.len());
        if sol.size() < bound {
            return Err(Error::Invariant(format!(
                "lifted solution of size {} is below {bound}",
                sol.size()
            )));
        }
    }
    Ok(sol)
}

/// Minimal fvs of size `|s| + 4|E|` of the vertex-cover product, from the
/// minimal vertex cover `s`.
pub fn lift_vc_to_fvs_nph(map: &GadgetMap, s: &VertexSet) -> Result<FvsSolution> {
    require_kind(map, GadgetKind::VertexCover)?;
    check_minimal_vertex_cover(&map.source, s)?;
    let mut fvs = s.clone();
    for gadget in &map.edge_gadgets {
        for cyc in &gadget.cycles {
            fvs.insert(cyc[0]);
            fvs.insert(cyc[3]);
        }
    }
    FvsSolution::certify(&map.product, fvs)
        .map_err(|e| Error::Invariant(format!("forward gadget map is not minimal: {e}")))
}

/// A minimal vertex cover of the source of size at least `|s'| - 4|E|`,
/// from the minimal fvs `s'` of the vertex-cover product.
///
/// Path vertices are moved out of the fvs by three rewrites applied in turn
/// (both path vertices in the set; a path vertex plus an endpoint; a path
/// vertex alone), each of which keeps the set a minimal fvs and never
/// shrinks it. The cover is what remains on the source vertices.
pub fn extract_vc_from_fvs_nph(map: &GadgetMap, s_prime: &VertexSet) -> Result<VertexSet> {
    require_kind(map, GadgetKind::VertexCover)?;
    let g = &map.product;
    let mut s = FvsSolution::certify(g, s_prime.clone())?.fvs;

    for gadget in &map.edge_gadgets {
        if s.contains(&gadget.e1) && s.contains(&gadget.e2) {
            s = rewrite(g, &s, gadget, 1, false)?;
        }
    }
    for gadget in &map.edge_gadgets {
        let (u, v) = gadget.edge;
        if s.contains(&u) || s.contains(&v) {
            for i in 0..2 {
                if s.contains(&gadget.hub(i)) {
                    s = rewrite(g, &s, gadget, i, false)?;
                }
            }
        }
    }
    loop {
        let hit = map.edge_gadgets.iter().find_map(|gadget| {
            (0..2)
                .find(|&i| s.contains(&gadget.hub(i)))
                .map(|i| (gadget, i))
        });
        let Some((gadget, i)) = hit else { break };
        // Only reachable with neither endpoint in the set: earlier rewrites
        // cleared every other case, and later ones only add endpoints.
        s = rewrite(g, &s, gadget, i, true)?;
    }

    let cover: VertexSet = s.intersection(&map.source.vertex_set()).copied().collect();
    check_minimal_vertex_cover(&map.source, &cover)
        .map_err(|e| Error::Invariant(format!("extracted cover failed: {e}")))?;
    let floor = s_prime.len().saturating_sub(4 * map.edge_gadgets.len());
    if cover.len() < floor {
        return Err(Error::Invariant(format!(
            "extracted cover of size {} is below {floor}",
            cover.len()
        )));
    }
    Ok(cover)
}

/// Swaps `e^(i+1)` for `c1, c4` of its gadget (and, with `with_endpoint`,
/// the adjacent source endpoint), restoring minimality if needed. `c1, c4`
/// must survive and the set must not shrink.
fn rewrite(
    g: &Graph,
    s: &VertexSet,
    gadget: &EdgeGadget,
    i: usize,
    with_endpoint: bool,
) -> Result<VertexSet> {
    let mut next = s.clone();
    next.remove(&gadget.hub(i));
    let keep: VertexSet = [gadget.cycles[i][0], gadget.cycles[i][3]]
        .into_iter()
        .collect();
    next.extend(keep.iter().copied());
    if with_endpoint {
        // Redundant when the forest has no other path between the
        // endpoints; make_minimal then drops it.
        next.insert(gadget.endpoint(i));
    }
    if g.find_cycle_within(&complement(g, &next)).is_some() {
        return Err(Error::Invariant(format!(
            "rewrite at gadget {:?} left a cycle",
            gadget.edge
        )));
    }
    let out = make_minimal(g, &next, &keep)?;
    if !out.dropped_protected.is_empty() || out.solution.size() < s.len() {
        return Err(Error::Invariant(format!(
            "rewrite at gadget {:?} shrank the set from {} to {}",
            gadget.edge,
            s.len(),
            out.solution.size()
        )));
    }
    Ok(out.solution.fvs)
}

fn unit_probability(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "edge probability must lie in [0, 1], got {p}"
        )))
    }
}

/// `G(n, p)`: pairs are visited in ascending order and kept when the next
/// uniform draw is below `p`.
pub fn gen_random(n: usize, p: f64, seed: u64) -> Result<Graph> {
    unit_probability(p)?;
    let mut rng = SplitMix64::new(seed);
    let mut g = Graph::empty(n);
    for a in 0..n as u32 {
        for b in a + 1..n as u32 {
            if rng.next_f64() < p {
                g.link(Vertex(a), Vertex(b));
            }
        }
    }
    g.debug_validate();
    Ok(g)
}

/// `G(n, m)`: the first `m` pairs of a partial Fisher-Yates shuffle of all
/// pairs in ascending order.
pub fn gen_random_m(n: usize, m: usize, seed: u64) -> Result<Graph> {
    let mut pairs: Vec<(u32, u32)> = (0..n as u32)
        .flat_map(|a| (a + 1..n as u32).map(move |b| (a, b)))
        .collect();
    if m > pairs.len() {
        return Err(Error::InvalidParameter(format!(
            "{m} edges do not fit on {n} vertices"
        )));
    }
    let mut rng = SplitMix64::new(seed);
    for i in 0..m {
        let j = i + rng.below((pairs.len() - i) as u64) as usize;
        pairs.swap(i, j);
    }
    Graph::from_edges(n, &pairs[..m])
}

/// A random forest on vertices `0..n-k` plus `k` vertices with random edges
/// into it and among themselves. Returns the graph and the planted fvs.
pub fn gen_random_with_small_fvs(n: usize, k: usize, seed: u64) -> Result<(Graph, VertexSet)> {
    if k > n {
        return Err(Error::InvalidParameter(format!(
            "fvs of size {k} exceeds n = {n}"
        )));
    }
    let f = (n - k) as u32;
    let mut rng = SplitMix64::new(seed);
    let mut g = Graph::empty(n);
    for x in 1..f {
        // A few roots stay unattached so the forest may have several trees.
        if rng.below(8) != 0 {
            let parent = rng.below(u64::from(x)) as u32;
            g.link(Vertex(parent), Vertex(x));
        }
    }
    let planted: VertexSet = (f..n as u32).map(Vertex).collect();
    for &s in &planted {
        if f > 0 {
            let want = 2 + rng.below(3) as u32;
            for _ in 0..want.min(f) {
                let t = Vertex(rng.below(u64::from(f)) as u32);
                if !g.has_edge(s, t) {
                    g.link(s, t);
                }
            }
        }
        for &t in planted.range(..s) {
            if rng.below(3) == 0 {
                g.link(s, t);
            }
        }
    }
    g.debug_validate();
    if let Some(c) = g.find_cycle_within(&complement(&g, &planted)) {
        return Err(Error::Invariant(format!("planted set misses cycle {c}")));
    }
    Ok((g, planted))
}
