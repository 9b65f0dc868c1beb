//! Desk-scale verification toolkit for Turán-type problems on 3-uniform
//! hypergraphs.
//!
//! The crate computes exact Turán numbers ex(n, F) for small forbidden
//! families such as {K4-, F6} and {K4-, F5}, enumerates the free systems up
//! to isomorphism, and audits the labeled link-graph structure (Gamma sets,
//! rainbow Turán links, forbidden configurations, and the counting bounds)
//! that extremal arguments for these families rely on.
//!
//! Modules:
//!
//! - [`system`]: triple systems with colex bitset encoding
//! - [`canon`]: canonical forms and isomorphism
//! - [`constructions`]: named graphs, S3(n), Turán graphs, blow-ups, identities
//! - [`embed`]: subgraph containment, family freeness, cancellativity
//! - [`link`]: labeled link graphs of an edge and their structural audits
//! - [`search`]: exhaustive enumeration, branch-and-bound extremal numbers,
//!   density sequences, and stability fitting

pub mod canon;
pub mod constructions;
pub mod embed;
pub mod link;
pub mod search;
pub mod system;
pub mod verify;

pub use canon::{are_isomorphic, canonical_form, CanonicalCode};
pub use constructions::{
    blow_up, counting_identity, named, s3_count, s3_graph, tk_count, turan_graph, Graph2,
    NamedGraph,
};
pub use embed::{
    find_embedding, find_embedding_through, is_cancellative, is_free, Embedding, Family, Freeness,
};
pub use link::{
    codegree_convexity_bound, forbidden_config_scan, link_of_edge, max_gamma_edge,
    overlap_profile, structural_audit, turan_split_inequality, weight_gamma_bound, ConfigWitness,
    LabeledLinkGraph, LinkPartition,
};
pub use search::{
    density_sequence, enumerate_free, extremal, extremal_with_workers, stability_fit,
    DensityPoint, ExtremalResult, SearchMethod, StabilityFit,
};
pub use system::{make_system, Triple, TripleSystem, Vertex};
pub use verify::{ClaimResult, SuiteReport};
