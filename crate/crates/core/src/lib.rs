//! Random bipartite multigraphs with minimum degree one.
//!
//! The crate samples `GR1(m, n, t)` (uniform `t`-edge sequences on `m + n`
//! vertices covering every vertex) and its companion models, computes the
//! limiting predictions for component structure, checks them against exact
//! enumeration on small instances, and reads observed bipartite graphs.

pub mod distributions;
pub mod error;
pub mod generators;
pub mod graph;
pub mod harness;
pub mod ingest;
pub mod oracle;
pub mod rng;
pub mod theory;

pub use error::{Error, Result};
pub use generators::{Model, ModelSpec};
pub use graph::{BipartiteMultigraph, ComponentSummary, TreeCensus};
pub use rng::Stream;
