//! Maximum minimal feedback vertex sets: certified solutions, safe
//! reductions with lifting, approximation algorithms, an exact solver for
//! small graphs and instance generators.

pub mod approx;
pub mod error;
pub mod exact;
pub mod gen;
pub mod graph;
pub mod reduce;
pub mod rng;
pub mod scale;
pub mod solution;

mod dsu;

pub use approx::{approx_delta, approx_poly, onevertex, ApproxReport, Branch};
pub use error::{Error, Result};
pub use exact::{exact_apex_forest, exact_mmfvs, ExactResult};
pub use graph::{CycleWitness, ForestCheck, Graph, Vertex, VertexSet};
pub use reduce::{reduce, ReductionTrace, Trace};
pub use scale::{smallfvs, subexp, SmallFvsReport, SubexpReport};
pub use solution::{
    has_private_cycle, is_minimal_fvs, make_minimal, FvsSolution, MinimalityVerdict,
};
