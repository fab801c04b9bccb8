//! Brute-force oracle used to check the library. It reads graphs only through
//! `vertices`/`edges` and decides everything with its own bitmask
//! union-find, so it shares no logic with the code under test.
#![allow(dead_code)]

use mmfvs::{Graph, Vertex, VertexSet};

pub const ORACLE_MAX_N: usize = 32;
/// Largest graph whose full forest table the oracle will build.
pub const TABLE_MAX_N: usize = 24;

/// A graph relabelled to `0..n` with adjacency bitmasks.
pub struct Dense {
    pub n: usize,
    pub ids: Vec<Vertex>,
    pub edges: Vec<(usize, usize)>,
    pub adj: Vec<u32>,
}

impl Dense {
    pub fn of(g: &Graph) -> Self {
        let ids: Vec<Vertex> = g.vertices().collect();
        let n = ids.len();
        assert!(
            n <= ORACLE_MAX_N,
            "oracle limited to {ORACLE_MAX_N} vertices"
        );
        let pos = |v: Vertex| ids.binary_search(&v).unwrap();
        let edges: Vec<(usize, usize)> = g.edges().map(|(a, b)| (pos(a), pos(b))).collect();
        let mut adj = vec![0u32; n];
        for &(a, b) in &edges {
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        }
        Dense { n, ids, edges, adj }
    }

    pub fn full(&self) -> u32 {
        if self.n == 32 {
            u32::MAX
        } else {
            (1u32 << self.n) - 1
        }
    }

    pub fn set(&self, mask: u32) -> VertexSet {
        (0..self.n)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| self.ids[i])
            .collect()
    }

    pub fn mask(&self, s: &VertexSet) -> u32 {
        s.iter()
            .map(|v| 1u32 << self.ids.binary_search(v).unwrap())
            .fold(0, |a, b| a | b)
    }

    /// Whether `G[mask]` has no cycle.
    pub fn acyclic(&self, mask: u32) -> bool {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn root(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                x = p[x];
            }
            x
        }
        for &(a, b) in &self.edges {
            if mask >> a & 1 == 1 && mask >> b & 1 == 1 {
                let (ra, rb) = (root(&mut parent, a), root(&mut parent, b));
                if ra == rb {
                    return false;
                }
                parent[ra] = rb;
            }
        }
        true
    }

    /// `table[mask]` says whether `G[mask]` is a forest.
    pub fn forest_table(&self) -> Vec<bool> {
        assert!(
            self.n <= TABLE_MAX_N,
            "forest table limited to {TABLE_MAX_N} vertices"
        );
        (0..=self.full()).map(|m| self.acyclic(m)).collect()
    }
}

/// Complements of the maximal induced forests, i.e. all minimal fvs.
pub fn all_minimal_fvs(d: &Dense, table: &[bool]) -> Vec<u32> {
    let full = d.full();
    (0..=full)
        .filter(|&f| {
            table[f as usize] && (0..d.n).all(|x| f >> x & 1 == 1 || !table[(f | 1 << x) as usize])
        })
        .map(|f| full & !f)
        .collect()
}

pub fn all_fvs(d: &Dense, table: &[bool]) -> Vec<u32> {
    let full = d.full();
    (0..=full)
        .filter(|&f| table[f as usize])
        .map(|f| full & !f)
        .collect()
}

pub fn mmfvs(g: &Graph) -> usize {
    let d = Dense::of(g);
    let table = d.forest_table();
    all_minimal_fvs(&d, &table)
        .into_iter()
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// Independent minimality check of `s` as an fvs of `g`.
pub fn is_minimal_fvs(g: &Graph, s: &VertexSet) -> bool {
    let d = Dense::of(g);
    let m = d.mask(s);
    let f = d.full() & !m;
    d.acyclic(f) && (0..d.n).all(|x| m >> x & 1 == 0 || !d.acyclic(f | 1 << x))
}

/// Largest minimal vertex cover, by enumeration.
pub fn max_minimal_vertex_cover(g: &Graph) -> usize {
    let d = Dense::of(g);
    (0..=d.full())
        .filter(|&c| is_minimal_vc(&d, c))
        .map(|c| c.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

pub fn is_minimal_vc(d: &Dense, c: u32) -> bool {
    d.edges
        .iter()
        .all(|&(a, b)| c >> a & 1 == 1 || c >> b & 1 == 1)
        && (0..d.n).all(|x| c >> x & 1 == 0 || d.adj[x] & !c != 0)
}

pub fn independence_number(g: &Graph) -> usize {
    let d = Dense::of(g);
    (0..=d.full())
        .filter(|&m| (0..d.n).all(|i| m >> i & 1 == 0 || d.adj[i] & m == 0))
        .map(|m| m.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

pub fn is_connected(g: &Graph) -> bool {
    let d = Dense::of(g);
    if d.n == 0 {
        return true;
    }
    let mut seen = 1u32;
    loop {
        let mut next = seen;
        for i in 0..d.n {
            if seen >> i & 1 == 1 {
                next |= d.adj[i];
            }
        }
        if next == seen {
            return seen == d.full();
        }
        seen = next;
    }
}

fn pair_bit(i: usize, j: usize) -> u32 {
    let (a, b) = if i < j { (i, j) } else { (j, i) };
    1 << (b * (b - 1) / 2 + a)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn canonical(n: usize, code: u32, perms: &[Vec<usize>]) -> u32 {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|b| (0..b).map(move |a| (a, b)))
        .filter(|&(a, b)| code & pair_bit(a, b) != 0)
        .collect();
    perms
        .iter()
        .map(|p| pairs.iter().fold(0, |m, &(a, b)| m | pair_bit(p[a], p[b])))
        .min()
        .unwrap()
}

fn decode(n: usize, code: u32) -> Graph {
    let mut edges = Vec::new();
    for b in 0..n {
        for a in 0..b {
            if code & pair_bit(a, b) != 0 {
                edges.push((a as u32, b as u32));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// Graphs on `n` vertices containing at least one member of every
/// isomorphism class: exactly one per class for `n <= 6`, and every
/// one-vertex extension of those classes for `n = 7`.
pub fn graphs_covering_isomorphism_classes(n: usize) -> Vec<Graph> {
    assert!((1..=7).contains(&n));
    let mut classes: Vec<u32> = vec![0];
    for k in 2..=n.min(6) {
        let perms = permutations(k);
        let mut next = std::collections::BTreeSet::new();
        for &code in &classes {
            for nb in 0u32..1 << (k - 1) {
                let mut c = code;
                for a in 0..k - 1 {
                    if nb >> a & 1 == 1 {
                        c |= pair_bit(a, k - 1);
                    }
                }
                next.insert(canonical(k, c, &perms));
            }
        }
        classes = next.into_iter().collect();
    }
    if n < 7 {
        return classes.into_iter().map(|c| decode(n, c)).collect();
    }
    let mut out = Vec::new();
    for &code in &classes {
        for nb in 0u32..1 << 6 {
            let mut c = code;
            for a in 0..6 {
                if nb >> a & 1 == 1 {
                    c |= pair_bit(a, 6);
                }
            }
            out.push(decode(7, c));
        }
    }
    out
}

fn find(p: &mut [usize], mut x: usize) -> usize {
    while p[x] != x {
        p[x] = p[p[x]];
        x = p[x];
    }
    x
}

/// mmfvs for graphs too large to enumerate directly, exploiting two local
/// structures whose behaviour in every minimal fvs is forced:
///
/// * a pendant cycle, i.e. a chain of degree-2 vertices leaving and
///   re-entering one vertex `e`, holds exactly one fvs vertex when `e` is in
///   the forest and none otherwise, and gives `e` a private cycle;
/// * a class of at least two degree-2 vertices with the same neighbours
///   `{a, b}` lies entirely in the forest unless both `a` and `b` do; then
///   one member joins the forest if `a` and `b` are in different trees and
///   the rest are in the fvs.
///
/// Only the remaining core is enumerated.
pub fn mmfvs_compressed(g: &Graph) -> usize {
    let d = Dense::of(g);
    let n = d.n;
    let deg = |x: usize| d.adj[x].count_ones();
    let mut removed = 0u32;
    let mut pendant = vec![0usize; n];
    let mut isolated_cycles = 0;
    for c in 0..n {
        if removed >> c & 1 == 1 || deg(c) != 2 {
            continue;
        }
        // Walk the degree-2 chain through c in both directions.
        let mut chain = 1u32 << c;
        let mut ends = Vec::new();
        for start in (0..n).filter(|&y| d.adj[c] >> y & 1 == 1) {
            let (mut prev, mut cur) = (c, start);
            while deg(cur) == 2 && chain >> cur & 1 == 0 {
                chain |= 1 << cur;
                let next = (d.adj[cur] & !(1 << prev)).trailing_zeros() as usize;
                prev = cur;
                cur = next;
            }
            ends.push(cur);
        }
        if ends.iter().all(|&e| chain >> e & 1 == 1) {
            isolated_cycles += 1;
            removed |= chain;
        } else if ends[0] == ends[1] {
            pendant[ends[0]] += 1;
            removed |= chain;
        }
    }

    let alive: Vec<usize> = (0..n).filter(|&x| removed >> x & 1 == 0).collect();
    let adj = |x: usize| d.adj[x] & !removed;
    let mut classes: std::collections::BTreeMap<(usize, usize), Vec<usize>> = Default::default();
    for &x in &alive {
        let nb = adj(x);
        if nb.count_ones() == 2 && pendant[x] == 0 {
            let a = nb.trailing_zeros() as usize;
            let b = 31 - nb.leading_zeros() as usize;
            classes.entry((a, b)).or_default().push(x);
        }
    }
    classes.retain(|_, m| m.len() >= 2);
    loop {
        let members: u32 = classes.values().flatten().fold(0, |m, &x| m | 1 << x);
        let before = classes.len();
        classes.retain(|&(a, b), _| members >> a & 1 == 0 && members >> b & 1 == 0);
        if classes.len() == before {
            break;
        }
    }
    let twins: u32 = classes.values().flatten().fold(0, |m, &x| m | 1 << x);
    let core: Vec<usize> = alive
        .iter()
        .copied()
        .filter(|&x| twins >> x & 1 == 0)
        .collect();
    assert!(
        core.len() <= TABLE_MAX_N,
        "core of {} vertices is too large",
        core.len()
    );

    let mut best = None;
    for pick in 0u32..1 << core.len() {
        let x_mask = core
            .iter()
            .enumerate()
            .filter(|(i, _)| pick >> i & 1 == 1)
            .fold(0u32, |m, (_, &v)| m | 1 << v);
        if !d.acyclic(x_mask) {
            continue;
        }
        let mut forest = x_mask;
        let mut full_pairs = Vec::new();
        for (&(a, b), members) in &classes {
            if x_mask >> a & 1 == 1 && x_mask >> b & 1 == 1 {
                full_pairs.push((a, b, members.len()));
            } else {
                forest |= members.iter().fold(0, |m, &x| m | 1 << x);
            }
        }
        let mut parent: Vec<usize> = (0..n).collect();
        for &(u, v) in &d.edges {
            if forest >> u & 1 == 1 && forest >> v & 1 == 1 {
                let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
                parent[ru] = rv;
            }
        }
        let mut twin_fvs = 0;
        for (a, b, t) in full_pairs {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra == rb {
                twin_fvs += t;
            } else {
                parent[ra] = rb;
                twin_fvs += t - 1;
            }
        }
        let mut fvs_core = 0;
        let mut valid = true;
        for &x in core.iter().filter(|&&x| x_mask >> x & 1 == 0) {
            fvs_core += 1;
            if pendant[x] > 0 {
                continue;
            }
            let mut roots = Vec::new();
            for y in 0..n {
                // Connector twins chosen above touch only vertices of X.
                if adj(x) >> y & 1 == 1 && forest >> y & 1 == 1 {
                    roots.push(find(&mut parent, y));
                }
            }
            let k = roots.len();
            roots.sort_unstable();
            roots.dedup();
            if roots.len() == k {
                valid = false;
                break;
            }
        }
        if !valid {
            continue;
        }
        let pend: usize = core
            .iter()
            .filter(|&&x| x_mask >> x & 1 == 1)
            .map(|&x| pendant[x])
            .sum();
        let value = fvs_core + twin_fvs + pend + isolated_cycles;
        best = best.max(Some(value));
    }
    best.expect("some maximal forest exists")
}

/// Minimality check of `s` without a size limit, by union-find over the
/// edge list.
pub fn is_minimal_fvs_any(g: &Graph, s: &VertexSet) -> bool {
    let ids: Vec<Vertex> = g.vertices().collect();
    let pos = |v: &Vertex| ids.binary_search(v).ok();
    if s.iter().any(|v| pos(v).is_none()) {
        return false;
    }
    let in_s: Vec<bool> = ids.iter().map(|v| s.contains(v)).collect();
    let edges: Vec<(usize, usize)> = g
        .edges()
        .map(|(a, b)| (pos(&a).unwrap(), pos(&b).unwrap()))
        .collect();
    let forest_with = |extra: Option<usize>| {
        let mut parent: Vec<usize> = (0..ids.len()).collect();
        let inside = |x: usize| !in_s[x] || Some(x) == extra;
        for &(a, b) in &edges {
            if inside(a) && inside(b) {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra == rb {
                    return false;
                }
                parent[ra] = rb;
            }
        }
        true
    };
    forest_with(None)
        && (0..ids.len())
            .filter(|&x| in_s[x])
            .all(|x| !forest_with(Some(x)))
}
