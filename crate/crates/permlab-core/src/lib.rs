//! Exact, exhaustively checkable combinatorics of permutation statistics:
//! crossings and nestings, pattern avoidance, Dyck-path tunnels, the
//! bijections between 321- and 132-avoiding permutations, and the joint
//! distribution polynomials they control.
//!
//! Everything is a pure value computation over 1-based permutations; the
//! [`verify`] module packages the identity suite that ties the pieces
//! together.

pub mod bijections;
pub mod dist;
pub mod dyck;
pub mod error;
pub mod patterns;
pub mod perm;
pub mod poly;
pub mod stats;
pub mod tableaux;
pub mod verify;

pub use dist::{
    catalan_qp, cfrac_series, default_vars, distribution, distribution_with_vars, inv_dist_check,
    wilf_partition, CatalanQP, CfracSpec, Stat, WilfReport,
};
pub use dyck::{phi, phi_inv, DyckPath, Step, Tunnel, TunnelSide};
pub use error::{Error, Result};
pub use patterns::{avoids, avoids_all, enumerate_avoiders, occurrences, smallest_occurrence};
pub use perm::Permutation;
pub use poly::MultiPoly;
pub use stats::{arc_pairs, crossing_delta, statistics, ArcKind, ArcPair, Statistics};
pub use tableaux::{matching, psi, psi_inv, rsk, Matching, Tableau, TableauPair};
pub use bijections::{
    gamma, gamma_with_trace, m_step, theta, theta_composed, theta_inverse, theta_sum_product,
    theta_with_trace, GammaTrace, ThetaTrace,
};
