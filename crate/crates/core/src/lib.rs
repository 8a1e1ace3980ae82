//! Metric hypergraphs: betweenness in finite metric spaces, lines, and an
//! exact search deciding which 3-uniform hypergraphs arise from a metric.

pub mod constructions;
pub mod error;
pub mod hypergraph;
pub mod io;
pub mod metric;
pub mod obstacles;
pub mod rational;
pub mod rules;
pub mod recognizer;
pub mod replay;
pub mod sample;

pub use error::{Error, Result};
pub use hypergraph::{based_hypergraph, complement, graph_equivalence, BasedHypergraph, Graph, Hypergraph3, PairEquivalence};
pub use metric::{
    betweenness_triples, check_meq, hypergraph_of, induced_subspace, line, line_partition, validate_metric,
    BetweennessTriple, MetricSpace,
};
pub use rational::Rational;
