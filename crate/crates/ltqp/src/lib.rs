//! Link traversal query processing over networks of linked-data documents,
//! with shape-index based source selection.
//!
//! The crate bundles:
//!
//! - an RDF substrate: terms, triples, a source-tagged triple store and an
//!   N-Triples subset parser/serializer ([`rdf`]),
//! - a SPARQL SELECT subset: basic graph patterns, star decomposition and
//!   evaluation ([`query`]),
//! - a compact shape language, shape-to-query translation, per-pod shape
//!   indexes and document validation ([`shape`]),
//! - query-shape containment and reachability adaptation ([`containment`]),
//! - the traversal engine with pluggable reachability modes ([`engine`]),
//! - a deterministic simulated pod network and fixture format ([`netsim`]).

pub mod containment;
pub mod engine;
pub mod netsim;
pub mod query;
pub mod rdf;
pub mod shape;

pub use containment::{
    bind_star_to_shape, decide_adaptation, solve_containment, AdaptationMode, BindingClass,
    BindingOutcome, ContainmentReport, ReachabilityDecision,
};
pub use engine::{execute, EngineConfig, ReachabilityMode, TraversalMetrics, TraversalOutcome};
pub use netsim::{generate_network, DocumentNetwork, NetworkParams};
pub use query::{decompose_stars, SelectQuery, StarDecomposition, StarPattern, TriplePattern};
pub use rdf::{SourcedStore, Term, Triple};
pub use shape::{Shape, ShapeIndex};
