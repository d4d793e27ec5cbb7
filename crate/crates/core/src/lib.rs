//! Counting temporal triangles around every edge of a temporal multigraph
//! and answering thresholded first-order queries over those counts.
//!
//! The pipeline is: parse a `src dst t` edge list into a [`TemporalGraph`],
//! prepare its static projection and degeneracy ordering ([`PreparedGraph`]),
//! compute a [`CountTable`] for a window `delta`, then evaluate queries from
//! the table.
//!
//! ```
//! use folty::{compute_counts, eval_eea, Execution, PreparedGraph, TemporalGraph, Universe};
//!
//! let g = PreparedGraph::new(TemporalGraph::parse_str("1 2 10\n1 3 12\n2 3 15\n").unwrap());
//! let counts = compute_counts(&g, 10, &Execution::sequential());
//! let eea = eval_eea(&g, &counts, "1/2".parse().unwrap(), Universe::Dst);
//! assert_eq!(eea.total(), 1);
//! ```

pub mod engine;
pub mod error;
pub mod exec;
pub mod graph;
pub mod oracle;
pub mod practical;
pub mod query;
pub mod scan;
pub mod segtree;
pub mod synth;

pub use engine::{compute_counts, CountTable};
pub use error::{GraphError, OracleError, QueryError};
pub use exec::Execution;
pub use graph::{
    DegeneracyOrdering, EdgeId, GraphStats, PreparedGraph, StaticGraph, TemporalEdge, TemporalGraph, Timestamp,
    VertexId,
};
pub use query::{
    eval_eaa, eval_eae, eval_eea, evaluate, practical_eea, practical_table, run_query, Certificate, QueryKind,
    QuerySpec, SolutionSet, Threshold, Universe, VertexSolution,
};
