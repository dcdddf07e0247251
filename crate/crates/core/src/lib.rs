//! # entagg
//!
//! Entropy-controlled reduction of finite probability distributions.
//!
//! Given `p` on `n` outcomes and a target alphabet size `m`, every
//! deterministic surjection onto `m` symbols merges `p` into an
//! *aggregation*: the block sums of a partition of its support. This crate
//! brackets the entropy achievable by such aggregations and constructs them.
//!
//! | Item | What it gives |
//! |------|---------------|
//! | [`r_operator`] | `R_m(p)`, whose entropy upper-bounds every aggregation |
//! | [`q_operator`] | `Q_m(p)`, the minimum-entropy aggregation |
//! | [`huffman_max_aggregation`] | an aggregation within [`alpha()`] bits of the maximum, in `O(n log n)` |
//! | [`exact_max_aggregation`] | exhaustive maximum for small `n` |
//! | [`theorem2_gap`] | entropy deficit bound under `p_1 / p_n <= rho` |
//! | [`min_entropy_coupling_exact`] | `W(p, q)` and `D(p, q)` on small supports |
//!
//! ```
//! use entagg::{make_dist, bound_report, huffman_max_aggregation};
//!
//! let p = make_dist(&[0.4, 0.3, 0.2, 0.1]).unwrap();
//! let b = bound_report(&p, 2).unwrap();
//! let (agg, _) = huffman_max_aggregation(&p, 2).unwrap();
//! assert!(agg.h.bits() >= b.h_upper.bits() - b.alpha);
//! ```

pub mod aggregation;
pub mod cli;
pub mod coupling;
pub mod dist;
pub mod error;
pub mod majorization;
pub mod ratio;
pub mod reduction;

pub use aggregation::{
    aggregate, exact_max_aggregation, exact_max_aggregation_capped, exact_min_aggregation,
    for_each_rgs, huffman_max_aggregation, stirling2, AggregationResult, Guarantee, HuffmanTrace,
    MergeStep, Partition, DEFAULT_EXACT_CAP,
};
pub use coupling::{
    approx_best_approximation, build_mq, d_upper_via_mq, divergence_for_partition,
    min_entropy_coupling_exact, min_entropy_coupling_exact_capped, Coupling, DivergenceReport,
    DEFAULT_COUPLING_CAP,
};
pub use dist::{alpha, entropy, make_dist, Dist, Entropy, EPS_SUM};
pub use error::{Error, Result};
pub use majorization::{majorizes, MajorizationVerdict};
pub use ratio::{prior_bound_epsilon, ratio_bound, theorem2_gap, z_rho, RatioBound, ZRho};
pub use reduction::{bound_report, i_star, q_operator, r_operator, BoundReport};
