//! Checks certified bounds against exact connectivity.

use std::fmt;

use crate::coreconnect::{pair_lower_bound, Class, Membership, Mode};
use crate::coredecomp::CoreDecomposition;
use crate::error::{Error, Result};
use crate::flowconn::{flow_equivalent_tree, FlowOracle};
use crate::graph::{Graph, NodeId, NodeSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Two certified nodes are less connected than their common level.
    Guarantee { u: NodeId, v: NodeId, level: usize, flow: usize },
    /// A pair's bound exceeds a max-flow value it must not exceed.
    Bound { u: NodeId, v: NodeId, bound: usize, exact: usize },
    /// Connectivity inside a core exceeds connectivity in the whole graph.
    CoreAboveWhole { u: NodeId, v: NodeId, through_core: usize, exact: usize },
    /// Tree-derived value differs from a direct max-flow.
    Tree { u: NodeId, v: NodeId, tree: usize, flow: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::Guarantee { u, v, level, flow } => {
                write!(f, "guarantee: ({u}, {v}) certified at {level}, max-flow {flow}")
            }
            Violation::Bound { u, v, bound, exact } => {
                write!(f, "bound: ({u}, {v}) bound {bound} exceeds max-flow {exact}")
            }
            Violation::CoreAboveWhole { u, v, through_core, exact } => {
                write!(f, "core: ({u}, {v}) through-core {through_core} exceeds whole-graph {exact}")
            }
            Violation::Tree { u, v, tree, flow } => {
                write!(f, "tree: ({u}, {v}) tree value {tree}, max-flow {flow}")
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub checked_pairs: u64,
}

impl ValidationReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    fn merge(&mut self, other: ValidationReport) {
        self.violations.extend(other.violations);
        self.checked_pairs += other.checked_pairs;
    }
}

/// Checks every pair of certified nodes against its level.
///
/// For each level `g`, the nodes certified at `g` or above must be pairwise
/// `g`-edge-connected: inside the subgraph they induce for strict
/// membership, inside the `g`-core for wide membership. All pairs at a level
/// are read off one flow-equivalent tree of that subgraph.
pub fn check_guarantees(g: &Graph, d: &CoreDecomposition, m: &Membership) -> ValidationReport {
    let n = g.node_count();
    let mut levels: Vec<usize> = (0..n)
        .filter(|&v| m.class(v) != Class::White)
        .map(|v| m.guarantee(v))
        .collect();
    levels.sort_unstable();
    levels.dedup();
    let mut report = ValidationReport::default();
    for level in levels {
        let certified = NodeSet::from_mask(
            (0..n)
                .map(|v| m.class(v) != Class::White && m.guarantee(v) >= level)
                .collect(),
        );
        if certified.len() < 2 {
            continue;
        }
        let region = match m.mode() {
            Mode::Strict => certified.clone(),
            Mode::Wide => d.core(level).union(&certified),
        };
        let tree = flow_equivalent_tree(g, &region);
        for (u, v, flow) in tree.all_pairs() {
            if !certified.contains(u) || !certified.contains(v) {
                continue;
            }
            report.checked_pairs += 1;
            if flow < level {
                report.violations.push(Violation::Guarantee { u, v, level, flow });
            }
        }
    }
    report
}

/// For each pair: bound ≤ exact; when both ends are in `C`, also
/// bound ≤ through-core ≤ exact.
pub fn check_bounds(
    g: &Graph,
    d: &CoreDecomposition,
    m: &Membership,
    pairs: &[(NodeId, NodeId)],
) -> Result<ValidationReport> {
    let mut whole = FlowOracle::new(g, &NodeSet::full(g.node_count()));
    let mut cores = std::collections::HashMap::new();
    let mut report = ValidationReport::default();
    for &(u, v) in pairs {
        let bound = pair_lower_bound(m, u, v)?;
        let exact = whole.connectivity(u, v)?;
        report.checked_pairs += 1;
        if bound > exact {
            report.violations.push(Violation::Bound { u, v, bound, exact });
        }
        let k = d.shell_index(u).min(d.shell_index(v));
        if k == 0 || !(m.in_c(u) && m.in_c(v)) {
            continue;
        }
        let oracle = cores.entry(k).or_insert_with(|| FlowOracle::new(g, &d.core(k)));
        let through_core = oracle.connectivity(u, v)?;
        if bound > through_core {
            report.violations.push(Violation::Bound {
                u,
                v,
                bound,
                exact: through_core,
            });
        }
        if through_core > exact {
            report.violations.push(Violation::CoreAboveWhole {
                u,
                v,
                through_core,
                exact,
            });
        }
    }
    Ok(report)
}

/// Compares the whole-graph flow-equivalent tree with direct max-flow on
/// the given pairs.
pub fn check_tree(g: &Graph, pairs: &[(NodeId, NodeId)]) -> Result<ValidationReport> {
    let mut report = ValidationReport::default();
    if g.node_count() < 2 {
        return Ok(report);
    }
    let all = NodeSet::full(g.node_count());
    let tree = flow_equivalent_tree(g, &all);
    let mut oracle = FlowOracle::new(g, &all);
    for &(u, v) in pairs {
        let flow = oracle.connectivity(u, v)?;
        let tree_value = tree.value(u, v).ok_or(Error::SamePair(u))?;
        report.checked_pairs += 1;
        if tree_value != flow {
            report.violations.push(Violation::Tree {
                u,
                v,
                tree: tree_value,
                flow,
            });
        }
    }
    Ok(report)
}

/// Runs all checks. Refuses graphs above `node_limit` nodes.
pub fn validate(
    g: &Graph,
    d: &CoreDecomposition,
    m: &Membership,
    pairs: &[(NodeId, NodeId)],
    node_limit: usize,
) -> Result<ValidationReport> {
    if g.node_count() > node_limit {
        return Err(Error::Guard {
            nodes: g.node_count(),
            limit: node_limit,
        });
    }
    let mut report = check_guarantees(g, d, m);
    report.merge(check_bounds(g, d, m, pairs)?);
    report.merge(check_tree(g, pairs)?);
    Ok(report)
}
