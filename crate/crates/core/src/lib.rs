//! Core-connectivity analysis of undirected graphs.
//!
//! The pipeline is: build a [`Graph`], decompose it into k-shells
//! ([`core_decompose`]), grow a core-connected set with
//! [`strict_core_connected`] or [`wide_core_connected`], then read certified
//! pairwise edge-connectivity lower bounds off the resulting [`Membership`].
//! The [`flowconn`] module provides exact max-flow and Gomory-Hu oracles used
//! to validate those bounds.

pub mod coreconnect;
pub mod coredecomp;
pub mod error;
pub mod expansion;
pub mod flowconn;
pub mod generators;
pub mod graph;
pub mod metrics;
pub mod validate;

pub use coreconnect::{
    core_connected, extend_shell_one, membership_report, pair_lower_bound, strict_core_connected,
    wide_core_connected, Class, Membership, Mode,
};
pub use coredecomp::{core_decompose, min_induced_degree, Cluster, ClusterId, CoreDecomposition};
pub use error::{Error, Result};
pub use expansion::{Admission, Base, ExpansionContext};
pub use graph::{bfs_distances, connected_components, induced_diameter, Distance, Graph, Label, NodeId, NodeSet};
