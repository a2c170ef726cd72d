//! Immutable simple undirected graphs in compressed adjacency form.
//!
//! Nodes are addressed by a compact index (`NodeId`). Compact indices are
//! assigned in ascending label order, so every "ascending index" ordering used
//! downstream is also an ascending label ordering.

use std::cmp::Ordering;
use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

pub type NodeId = usize;

/// External node identifier as it appeared in the input.
///
/// Canonical decimal tokens (no sign, no leading zeros) are numeric and sort
/// by value before all textual labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Label {
    Num(u64),
    Text(String),
}

impl Label {
    pub fn parse(token: &str) -> Label {
        let canonical = !token.is_empty()
            && token.bytes().all(|b| b.is_ascii_digit())
            && (token == "0" || !token.starts_with('0'));
        if canonical {
            if let Ok(n) = token.parse() {
                return Label::Num(n);
            }
        }
        Label::Text(token.to_string())
    }
}

impl Ord for Label {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Label::Num(a), Label::Num(b)) => a.cmp(b),
            (Label::Num(_), Label::Text(_)) => Ordering::Less,
            (Label::Text(_), Label::Num(_)) => Ordering::Greater,
            (Label::Text(a), Label::Text(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for Label {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Num(n) => write!(f, "{n}"),
            Label::Text(s) => f.write_str(s),
        }
    }
}

impl From<u64> for Label {
    fn from(n: u64) -> Self {
        Label::Num(n)
    }
}

impl From<u32> for Label {
    fn from(n: u32) -> Self {
        Label::Num(n.into())
    }
}

impl From<i32> for Label {
    fn from(n: i32) -> Self {
        Label::parse(&n.to_string())
    }
}

impl From<usize> for Label {
    fn from(n: usize) -> Self {
        Label::Num(n as u64)
    }
}

impl From<&str> for Label {
    fn from(s: &str) -> Self {
        Label::parse(s)
    }
}

impl From<String> for Label {
    fn from(s: String) -> Self {
        Label::parse(&s)
    }
}

/// Counters for input pairs that were not kept as edges.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BuildStats {
    pub self_loops: usize,
    pub duplicates: usize,
}

/// Distance in hops, with a distinguished marker for unreachable targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(usize),
    Infinite,
}

impl Distance {
    pub fn finite(self) -> Option<usize> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Distance::Finite(_))
    }

    pub fn at_most(self, bound: usize) -> bool {
        matches!(self, Distance::Finite(d) if d <= bound)
    }
}

impl std::ops::Add for Distance {
    type Output = Distance;

    fn add(self, rhs: Distance) -> Distance {
        match (self, rhs) {
            (Distance::Finite(a), Distance::Finite(b)) => Distance::Finite(a + b),
            _ => Distance::Infinite,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => f.write_str("inf"),
        }
    }
}

/// A subset of the nodes of a graph with O(1) membership and sorted iteration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeSet {
    mask: Vec<bool>,
    members: Vec<NodeId>,
}

impl NodeSet {
    pub fn empty(universe: usize) -> Self {
        NodeSet {
            mask: vec![false; universe],
            members: Vec::new(),
        }
    }

    pub fn full(universe: usize) -> Self {
        NodeSet {
            mask: vec![true; universe],
            members: (0..universe).collect(),
        }
    }

    /// Builds a set from arbitrary node ids; ids `>= universe` are an error.
    pub fn from_nodes<I>(universe: usize, nodes: I) -> Result<Self>
    where
        I: IntoIterator<Item = NodeId>,
    {
        let mut mask = vec![false; universe];
        for v in nodes {
            if v >= universe {
                return Err(Error::UnknownNode(v));
            }
            mask[v] = true;
        }
        Ok(Self::from_mask(mask))
    }

    pub fn from_mask(mask: Vec<bool>) -> Self {
        let members = mask
            .iter()
            .enumerate()
            .filter_map(|(v, &m)| m.then_some(v))
            .collect();
        NodeSet { mask, members }
    }

    pub fn universe(&self) -> usize {
        self.mask.len()
    }

    #[inline]
    pub fn contains(&self, v: NodeId) -> bool {
        self.mask.get(v).copied().unwrap_or(false)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.members.iter().copied()
    }

    pub fn as_slice(&self) -> &[NodeId] {
        &self.members
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    pub fn insert(&mut self, v: NodeId) -> bool {
        if self.mask[v] {
            return false;
        }
        self.mask[v] = true;
        let at = self.members.partition_point(|&x| x < v);
        self.members.insert(at, v);
        true
    }

    pub fn union(&self, other: &NodeSet) -> NodeSet {
        let mask = self
            .mask
            .iter()
            .zip(&other.mask)
            .map(|(&a, &b)| a || b)
            .collect();
        Self::from_mask(mask)
    }

    pub fn intersection(&self, other: &NodeSet) -> NodeSet {
        let mask = self
            .mask
            .iter()
            .zip(&other.mask)
            .map(|(&a, &b)| a && b)
            .collect();
        Self::from_mask(mask)
    }

    pub fn is_disjoint(&self, other: &NodeSet) -> bool {
        self.members.iter().all(|&v| !other.contains(v))
    }
}

/// Simple undirected graph. Immutable once built.
#[derive(Debug, Clone)]
pub struct Graph {
    offsets: Vec<usize>,
    adjacency: Vec<NodeId>,
    labels: Vec<Label>,
    index: HashMap<Label, NodeId>,
}

impl Graph {
    /// Builds a graph from labelled pairs.
    ///
    /// Self-loops are dropped (their endpoint is still kept as a node) and
    /// repeated pairs, in either orientation, collapse to one edge.
    pub fn from_labeled_edges<I, L>(edges: I) -> (Graph, BuildStats)
    where
        I: IntoIterator<Item = (L, L)>,
        L: Into<Label>,
    {
        let mut interned: HashMap<Label, NodeId> = HashMap::new();
        let mut labels: Vec<Label> = Vec::new();
        let mut intern = |label: Label| -> NodeId {
            *interned.entry(label.clone()).or_insert_with(|| {
                labels.push(label);
                labels.len() - 1
            })
        };
        let raw: Vec<(NodeId, NodeId)> = edges
            .into_iter()
            .map(|(a, b)| (intern(a.into()), intern(b.into())))
            .collect();

        // Renumber so compact order equals label order.
        let mut order: Vec<NodeId> = (0..labels.len()).collect();
        order.sort_by(|&a, &b| labels[a].cmp(&labels[b]));
        let mut rank = vec![0; labels.len()];
        for (new, &old) in order.iter().enumerate() {
            rank[old] = new;
        }
        let sorted_labels: Vec<Label> = order.iter().map(|&old| labels[old].clone()).collect();
        let pairs: Vec<(NodeId, NodeId)> = raw.iter().map(|&(a, b)| (rank[a], rank[b])).collect();

        let (mut graph, stats) = Self::from_edges(sorted_labels.len(), &pairs);
        graph.index = sorted_labels
            .iter()
            .enumerate()
            .map(|(v, l)| (l.clone(), v))
            .collect();
        graph.labels = sorted_labels;
        (graph, stats)
    }

    /// Builds a graph on nodes `0..node_count` labelled by their own index.
    ///
    /// Panics if a pair references a node `>= node_count`.
    pub fn from_edges(node_count: usize, edges: &[(NodeId, NodeId)]) -> (Graph, BuildStats) {
        let mut stats = BuildStats::default();
        let mut pairs: Vec<(NodeId, NodeId)> = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            assert!(a < node_count && b < node_count, "edge ({a}, {b}) out of range");
            if a == b {
                stats.self_loops += 1;
            } else {
                pairs.push((a.min(b), a.max(b)));
            }
        }
        pairs.sort_unstable();
        let before = pairs.len();
        pairs.dedup();
        stats.duplicates = before - pairs.len();

        let mut degree = vec![0usize; node_count];
        for &(a, b) in &pairs {
            degree[a] += 1;
            degree[b] += 1;
        }
        let mut offsets = Vec::with_capacity(node_count + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut cursor = offsets[..node_count].to_vec();
        let mut adjacency = vec![0; offsets[node_count]];
        // Pairs are sorted by (min, max): filling in this order keeps every
        // list sorted without a second pass.
        for &(a, b) in &pairs {
            adjacency[cursor[a]] = b;
            cursor[a] += 1;
        }
        for &(a, b) in &pairs {
            adjacency[cursor[b]] = a;
            cursor[b] += 1;
        }
        for v in 0..node_count {
            adjacency[offsets[v]..offsets[v + 1]].sort_unstable();
        }

        let labels: Vec<Label> = (0..node_count).map(Label::from).collect();
        let index = labels.iter().enumerate().map(|(v, l)| (l.clone(), v)).collect();
        (
            Graph {
                offsets,
                adjacency,
                labels,
                index,
            },
            stats,
        )
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.len() / 2
    }

    pub fn contains(&self, v: NodeId) -> bool {
        v < self.node_count()
    }

    pub fn degree(&self, v: NodeId) -> Result<usize> {
        if !self.contains(v) {
            return Err(Error::UnknownNode(v));
        }
        Ok(self.offsets[v + 1] - self.offsets[v])
    }

    /// Sorted neighbours of `v`. Panics on an unknown node.
    #[inline]
    pub fn neighbors(&self, v: NodeId) -> &[NodeId] {
        &self.adjacency[self.offsets[v]..self.offsets[v + 1]]
    }

    /// Offset of `v`'s first adjacency slot; slot `i` of `v` is
    /// `neighbors(v)[i]`. Used by flow code that keys arcs by slot.
    pub(crate) fn slot_range(&self, v: NodeId) -> std::ops::Range<usize> {
        self.offsets[v]..self.offsets[v + 1]
    }

    pub(crate) fn slot_target(&self, slot: usize) -> NodeId {
        self.adjacency[slot]
    }

    pub(crate) fn slot_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.contains(u) && self.neighbors(u).binary_search(&v).is_ok()
    }

    pub fn label(&self, v: NodeId) -> &Label {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn node_by_label(&self, label: &Label) -> Option<NodeId> {
        self.index.get(label).copied()
    }

    /// Looks up a node by the textual form of its label.
    pub fn node(&self, label: &str) -> Option<NodeId> {
        self.node_by_label(&Label::parse(label))
    }

    pub fn nodes(&self) -> std::ops::Range<NodeId> {
        0..self.node_count()
    }

    /// Every edge once, as `(u, v)` with `u < v`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.nodes().flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    /// Number of neighbours of `v` inside `set`.
    pub fn degree_into(&self, v: NodeId, set: &NodeSet) -> usize {
        self.neighbors(v).iter().filter(|&&w| set.contains(w)).count()
    }

    /// Induced subgraph on `set`, relabelled compactly, plus the map from new
    /// index to original index.
    pub fn induced_subgraph(&self, set: &NodeSet) -> (Graph, Vec<NodeId>) {
        let originals: Vec<NodeId> = set.iter().collect();
        let mut local = vec![usize::MAX; self.node_count()];
        for (i, &v) in originals.iter().enumerate() {
            local[v] = i;
        }
        let mut pairs = Vec::new();
        for (i, &v) in originals.iter().enumerate() {
            for &w in self.neighbors(v) {
                if set.contains(w) && v < w {
                    pairs.push((i, local[w]));
                }
            }
        }
        let (mut sub, _) = Graph::from_edges(originals.len(), &pairs);
        sub.labels = originals.iter().map(|&v| self.labels[v].clone()).collect();
        sub.index = sub
            .labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i))
            .collect();
        (sub, originals)
    }
}

/// Multi-source BFS inside the induced graph `G(restrict)`.
///
/// Sources outside `restrict` are ignored. Nodes outside `restrict` or not
/// reachable are reported as [`Distance::Infinite`].
pub fn bfs_distances(g: &Graph, restrict: &NodeSet, sources: &NodeSet) -> Vec<Distance> {
    let mut dist = vec![Distance::Infinite; g.node_count()];
    let mut queue = VecDeque::new();
    for s in sources.iter() {
        if restrict.contains(s) {
            dist[s] = Distance::Finite(0);
            queue.push_back(s);
        }
    }
    while let Some(v) = queue.pop_front() {
        let next = Distance::Finite(dist[v].finite().unwrap() + 1);
        for &w in g.neighbors(v) {
            if restrict.contains(w) && dist[w] == Distance::Infinite {
                dist[w] = next;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Connected components of `G(restrict)`, each sorted, ordered by their
/// smallest node.
pub fn connected_components(g: &Graph, restrict: &NodeSet) -> Vec<Vec<NodeId>> {
    let mut seen = vec![false; g.node_count()];
    let mut components = Vec::new();
    let mut stack = Vec::new();
    for start in restrict.iter() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        stack.push(start);
        let mut component = Vec::new();
        while let Some(v) = stack.pop() {
            component.push(v);
            for &w in g.neighbors(v) {
                if restrict.contains(w) && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        component.sort_unstable();
        components.push(component);
    }
    components
}

/// Diameter of `G(set)`; infinite when the induced graph is disconnected.
pub fn induced_diameter(g: &Graph, set: &NodeSet) -> Result<Distance> {
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut diameter = 0;
    let mut single = NodeSet::empty(g.node_count());
    for v in set.iter() {
        single.insert(v);
        let dist = bfs_distances(g, set, &single);
        single = NodeSet::empty(g.node_count());
        for w in set.iter() {
            match dist[w] {
                Distance::Finite(d) => diameter = diameter.max(d),
                Distance::Infinite => return Ok(Distance::Infinite),
            }
        }
    }
    Ok(Distance::Finite(diameter))
}
