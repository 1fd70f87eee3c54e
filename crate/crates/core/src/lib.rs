//! Building blocks for size-Ramsey lower-bound experiments on bounded-degree
//! graphs.
//!
//! The crate constructs the random graphs `U_k` (complete binary tree plus a
//! uniform random cycle on its leaves) and `G'` (a disjoint union of
//! independent `U_k` copies), searches for rooted embeddings of them in
//! arbitrary hosts, checks the probability bounds governing those embeddings
//! by exact enumeration and Monte Carlo at desk scale, and plays the
//! adversarial red/blue edge-coloring strategy against concrete hosts,
//! together with a verifier and an inequality auditor.
//!
//! All randomness is seeded and splittable ([`rng::Rng`]); every generator
//! and search is deterministic given its inputs.

pub mod adversary;
pub mod analysis;
pub mod construct;
pub mod embed;
pub mod error;
pub mod graph;
pub mod hostgen;
pub mod lognum;
pub mod rng;

pub use adversary::{
    audit_inequalities, build_coloring, high_degree_edges, select_target, verify_coloring,
    AdversaryReport, AuditReport, Color, ColorVerdict, Coloring, VerifyOutcome,
};
pub use analysis::{
    ball_size_check, conditional_step_check, corollary_bound, estimate_rooted_prob,
    estimate_rooted_prob_parallel, exact_extension_probability, exact_rooted_probability,
    extension_bound, failure_bound, lemma_bound, Estimate, FailureBound,
};
pub use construct::{
    build_tree, cycle_from_ordering, params_from_log_n, sequential_leaf_cycle, uk_from_cycle, GPrime,
    HCount, Params, UkGraph,
};
pub use embed::{
    count_tree_embeddings, for_each_tree_embedding, gprime_embeds, root_candidates,
    rooted_embedding, rooted_embedding_exists, shared_root_indices, Embedding, RootSet,
};
pub use error::{Error, Result};
pub use graph::{disjoint_union, DisjointUnion, EdgeSet, Graph};
pub use hostgen::random_regular;
pub use lognum::LogNumber;
pub use rng::Rng;
