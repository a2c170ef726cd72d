use thiserror::Error;

use crate::graph::NodeId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("node {0} is not in the graph")]
    UnknownNode(NodeId),
    #[error("node {0} is outside the expansion set")]
    OutsideExpansion(NodeId),
    #[error("node {0} is outside the restricted node set")]
    OutsideRestriction(NodeId),
    #[error("operation requires a non-empty node set")]
    EmptySet,
    #[error("base and candidate sets overlap at node {0}")]
    Overlap(NodeId),
    #[error("pair endpoints must differ (got {0} twice)")]
    SamePair(NodeId),
    #[error("k = {k} exceeds the minimum degree {delta} of the expanded subgraph")]
    DegreeBound { k: usize, delta: usize },
    #[error("induced subgraph is disconnected")]
    Disconnected,
    #[error("graph has no shell above 0")]
    NoShells,
    #[error("cut enumeration limited to {limit} nodes, graph has {nodes}")]
    EnumerationLimit { nodes: usize, limit: usize },
    #[error("graph has {nodes} nodes, above the exact-connectivity guard of {limit}")]
    Guard { nodes: usize, limit: usize },
    #[error("node {0} has shell index 0")]
    IsolatedNode(NodeId),
}
