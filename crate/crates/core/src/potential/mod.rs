//! Divisors, piecewise-linear functions and the Laplacian on metric graphs.

pub mod cycles;
pub mod divisor;
pub mod laplacian;
pub mod lemmas;
pub mod linalg;
pub mod locus;
pub mod plfunction;
pub mod poisson;
pub mod reduce;
pub(crate) mod refine;

pub use cycles::{
    all_spanning_trees, bridges, fundamental_cycle, is_spanning_tree, maximal_bridge_chains,
    spanning_tree, spanning_tree_excluding, BridgeChain,
};
pub use divisor::GraphDivisor;
pub use laplacian::{canonical_divisor, compact_laplacian, div, laplacian, model_genus};
pub use lemmas::{check_bridge_lemma, check_min_locus_lemma, LemmaReport};
pub use locus::{min_locus, SubgraphLocus};
pub use plfunction::PlFunction;
pub use poisson::solve_poisson;
pub use reduce::{is_reduced_brute_force, reduce_divisor};
