//! Named instance families for `gen` and bench suites.

use mmfvs::gen::{
    gen_mis_gadget, gen_nph_gadget, gen_random, gen_random_m, gen_random_with_small_fvs,
    gen_tight_extremal, gen_tight_forest,
};
use mmfvs::{Graph, VertexSet};

use crate::CliError;

pub const FAMILIES: &[(&str, &str)] = &[
    ("random", "N P"),
    ("random-m", "N M"),
    ("small-fvs", "N K"),
    ("tight-forest", "N"),
    ("tight-extremal", "N"),
    ("mis-gadget", "SOURCE"),
    ("nph-gadget", "SOURCE"),
    ("complete", "N"),
    ("cycle", "N"),
    ("path", "N"),
    ("bipartite", "A B"),
];

#[derive(Debug, Clone)]
pub struct Generated {
    pub graph: Graph,
    /// A known fvs, for families that plant one.
    pub fvs: Option<VertexSet>,
    pub provenance: String,
}

fn usage(family: &str) -> CliError {
    match FAMILIES.iter().find(|(f, _)| *f == family) {
        Some((f, p)) => CliError::Usage(format!("family `{f}` takes parameters {p}")),
        None => {
            let names: Vec<&str> = FAMILIES.iter().map(|(f, _)| *f).collect();
            CliError::Usage(format!(
                "unknown family `{family}`; known: {}",
                names.join(", ")
            ))
        }
    }
}

fn num<T: std::str::FromStr>(family: &str, s: &str) -> Result<T, CliError> {
    s.parse().map_err(|_| usage(family))
}

/// Small named graphs used as gadget sources: `k3`, `p4`, `c5`.
pub fn named_source(name: &str) -> Result<Graph, CliError> {
    let bad = || {
        CliError::Usage(format!(
            "gadget source must look like k3, p4 or c5, got `{name}`"
        ))
    };
    let (kind, n) = name.split_at(name.len().min(1));
    let n: usize = n.parse().map_err(|_| bad())?;
    match kind {
        "k" => Ok(Graph::complete(n)),
        "p" => Ok(Graph::path(n)),
        "c" if n >= 3 => Ok(Graph::cycle(n)),
        _ => Err(bad()),
    }
}

pub fn generate(family: &str, params: &[String], seed: u64) -> Result<Generated, CliError> {
    let p: Vec<&str> = params.iter().map(String::as_str).collect();
    let provenance = format!("generator {family} {} seed {seed}", p.join(" "));
    let plain = |graph: Graph| Generated {
        graph,
        fvs: None,
        provenance: provenance.clone(),
    };
    let out = match (family, p.as_slice()) {
        ("random", [n, prob]) => plain(gen_random(num(family, n)?, num(family, prob)?, seed)?),
        ("random-m", [n, m]) => plain(gen_random_m(num(family, n)?, num(family, m)?, seed)?),
        ("small-fvs", [n, k]) => {
            let (graph, s) = gen_random_with_small_fvs(num(family, n)?, num(family, k)?, seed)?;
            Generated {
                graph,
                fvs: Some(s),
                provenance: provenance.clone(),
            }
        }
        ("tight-forest", [n]) => {
            let (graph, s) = gen_tight_forest(num(family, n)?)?;
            Generated {
                graph,
                fvs: Some(s),
                provenance: provenance.clone(),
            }
        }
        ("tight-extremal", [n]) => plain(gen_tight_extremal(num(family, n)?)?),
        ("mis-gadget", [src]) => plain(gen_mis_gadget(&named_source(src)?)?.product),
        ("nph-gadget", [src]) => plain(gen_nph_gadget(&named_source(src)?)?.product),
        ("complete", [n]) => plain(Graph::complete(num(family, n)?)),
        ("cycle", [n]) => {
            let n: usize = num(family, n)?;
            if n < 3 {
                return Err(usage(family));
            }
            plain(Graph::cycle(n))
        }
        ("path", [n]) => plain(Graph::path(num(family, n)?)),
        ("bipartite", [a, b]) => plain(Graph::complete_bipartite(num(family, a)?, num(family, b)?)),
        _ => return Err(usage(family)),
    };
    Ok(out)
}
