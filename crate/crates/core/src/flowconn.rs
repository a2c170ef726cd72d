//! Exact edge-connectivity oracles.
//!
//! Pairwise connectivity is a unit-capacity max-flow solved by shortest
//! augmenting paths; each undirected edge is a pair of opposed unit arcs
//! sharing residual capacity. Gomory-Hu trees use Gusfield's method, which
//! needs no graph contraction.

use std::collections::VecDeque;

use crate::coredecomp::CoreDecomposition;
use crate::error::{Error, Result};
use crate::graph::{connected_components, Graph, NodeId, NodeSet};

/// Reusable max-flow workspace over `G(restrict)`.
#[derive(Debug, Clone)]
pub struct FlowOracle<'g> {
    g: &'g Graph,
    active: NodeSet,
    reverse: Vec<usize>,
    flow: Vec<i8>,
    parent: Vec<usize>,
    stamp: Vec<u32>,
    round: u32,
}

impl<'g> FlowOracle<'g> {
    pub fn new(g: &'g Graph, restrict: &NodeSet) -> Self {
        // Slot i of u points at v; its reverse is u's slot in v's list.
        // Visiting u in ascending order fills each v's list front to back.
        let mut reverse = vec![0; g.slot_count()];
        let mut cursor: Vec<usize> = g.nodes().map(|v| g.slot_range(v).start).collect();
        for u in g.nodes() {
            for slot in g.slot_range(u) {
                let v = g.slot_target(slot);
                reverse[slot] = cursor[v];
                cursor[v] += 1;
            }
        }
        FlowOracle {
            g,
            active: restrict.clone(),
            reverse,
            flow: vec![0; g.slot_count()],
            parent: vec![usize::MAX; g.node_count()],
            stamp: vec![0; g.node_count()],
            round: 0,
        }
    }

    pub fn restriction(&self) -> &NodeSet {
        &self.active
    }

    fn check_pair(&self, u: NodeId, v: NodeId) -> Result<()> {
        if u == v {
            return Err(Error::SamePair(u));
        }
        for x in [u, v] {
            if !self.g.contains(x) {
                return Err(Error::UnknownNode(x));
            }
            if !self.active.contains(x) {
                return Err(Error::OutsideRestriction(x));
            }
        }
        Ok(())
    }

    fn next_round(&mut self) -> u32 {
        self.round = self.round.wrapping_add(1);
        if self.round == 0 {
            self.stamp.fill(0);
            self.round = 1;
        }
        self.round
    }

    /// Residual BFS from `s`; returns whether `t` was reached. Leaves
    /// `stamp == round` on every reached node.
    fn residual_bfs(&mut self, s: NodeId, t: Option<NodeId>) -> bool {
        let round = self.next_round();
        let mut queue = VecDeque::new();
        self.stamp[s] = round;
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            for slot in self.g.slot_range(v) {
                let w = self.g.slot_target(slot);
                if self.stamp[w] == round || !self.active.contains(w) || self.flow[slot] >= 1 {
                    continue;
                }
                self.stamp[w] = round;
                self.parent[w] = slot;
                if Some(w) == t {
                    return true;
                }
                queue.push_back(w);
            }
        }
        false
    }

    fn run(&mut self, s: NodeId, t: NodeId) -> usize {
        self.flow.fill(0);
        let mut value = 0;
        while self.residual_bfs(s, Some(t)) {
            let mut x = t;
            while x != s {
                let slot = self.parent[x];
                self.flow[slot] += 1;
                self.flow[self.reverse[slot]] -= 1;
                x = self.g.slot_target(self.reverse[slot]);
            }
            value += 1;
        }
        value
    }

    /// Maximum number of edge-disjoint `u`–`v` paths inside the restriction.
    pub fn connectivity(&mut self, u: NodeId, v: NodeId) -> Result<usize> {
        self.check_pair(u, v)?;
        Ok(self.run(u, v))
    }

    /// Minimum `u`–`v` cut: its value and the side containing `u` (nodes
    /// reachable from `u` in the final residual graph).
    pub fn min_cut(&mut self, u: NodeId, v: NodeId) -> Result<MinCut> {
        self.check_pair(u, v)?;
        let value = self.run(u, v);
        self.residual_bfs(u, None);
        let round = self.round;
        let mask = (0..self.g.node_count()).map(|x| self.stamp[x] == round).collect();
        Ok(MinCut {
            value,
            source_side: NodeSet::from_mask(mask),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinCut {
    pub value: usize,
    pub source_side: NodeSet,
}

/// Edge connectivity between `u` and `v` inside `G(restrict)`.
pub fn edge_connectivity_pair(g: &Graph, u: NodeId, v: NodeId, restrict: &NodeSet) -> Result<usize> {
    FlowOracle::new(g, restrict).connectivity(u, v)
}

/// Global minimum cut of `G(restrict)` as `(value, one side)`, found as the
/// minimum over `t` of the cut between the smallest node and `t`. `None` for
/// fewer than two nodes.
pub fn global_min_cut(g: &Graph, restrict: &NodeSet) -> Option<MinCut> {
    let mut nodes = restrict.iter();
    let s = nodes.next()?;
    let mut oracle = FlowOracle::new(g, restrict);
    let mut best: Option<MinCut> = None;
    for t in nodes {
        let cut = oracle.min_cut(s, t).expect("both endpoints are in the restriction");
        if best.as_ref().is_none_or(|b| cut.value < b.value) {
            let done = cut.value == 0;
            best = Some(cut);
            if done {
                break;
            }
        }
    }
    best
}

/// Edge connectivity of `G(restrict)`; `None` for fewer than two nodes.
pub fn global_edge_connectivity(g: &Graph, restrict: &NodeSet) -> Option<usize> {
    global_min_cut(g, restrict).map(|c| c.value)
}

/// Flow-equivalent tree: the minimum capacity on the tree path between two
/// nodes equals their edge connectivity in the graph it was built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GomoryHuTree {
    nodes: Vec<NodeId>,
    position: Vec<usize>,
    parent: Vec<usize>,
    capacity: Vec<usize>,
}

impl GomoryHuTree {
    pub fn root(&self) -> NodeId {
        self.nodes[0]
    }

    /// Tree nodes in ascending order.
    pub fn nodes(&self) -> &[NodeId] {
        &self.nodes
    }

    /// Parent of `v` and the capacity of the edge to it; `None` for the root
    /// and for nodes outside the tree.
    pub fn parent(&self, v: NodeId) -> Option<(NodeId, usize)> {
        let i = *self.position.get(v)?;
        if i == usize::MAX || i == 0 {
            return None;
        }
        Some((self.nodes[self.parent[i]], self.capacity[i]))
    }

    /// Tree edges as `(child, parent, capacity)`.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId, usize)> + '_ {
        (1..self.nodes.len()).map(move |i| (self.nodes[i], self.nodes[self.parent[i]], self.capacity[i]))
    }

    /// Edge connectivity between `u` and `v` read off the tree.
    pub fn value(&self, u: NodeId, v: NodeId) -> Option<usize> {
        let a = *self.position.get(u)?;
        let b = *self.position.get(v)?;
        if a == usize::MAX || b == usize::MAX || a == b {
            return None;
        }
        // Collect u's ancestors with running minimum, then climb from v.
        let mut seen = std::collections::HashMap::new();
        let (mut x, mut running) = (a, usize::MAX);
        loop {
            seen.insert(x, running);
            if x == 0 {
                break;
            }
            running = running.min(self.capacity[x]);
            x = self.parent[x];
        }
        let (mut y, mut running_v) = (b, usize::MAX);
        loop {
            if let Some(&from_u) = seen.get(&y) {
                return Some(from_u.min(running_v));
            }
            running_v = running_v.min(self.capacity[y]);
            y = self.parent[y];
        }
    }

    /// Values for every unordered pair, as `(u, v, value)` with `u < v`.
    pub fn all_pairs(&self) -> Vec<(NodeId, NodeId, usize)> {
        let n = self.nodes.len();
        let mut children = vec![Vec::new(); n];
        for i in 1..n {
            children[self.parent[i]].push(i);
        }
        let mut neighbours = vec![Vec::new(); n];
        for i in 1..n {
            neighbours[i].push((self.parent[i], self.capacity[i]));
            neighbours[self.parent[i]].push((i, self.capacity[i]));
        }
        let mut out = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        let mut best = vec![0usize; n];
        let mut seen = vec![false; n];
        for src in 0..n {
            seen.fill(false);
            seen[src] = true;
            best[src] = usize::MAX;
            let mut stack = vec![src];
            while let Some(x) = stack.pop() {
                for &(y, c) in &neighbours[x] {
                    if !seen[y] {
                        seen[y] = true;
                        best[y] = best[x].min(c);
                        stack.push(y);
                    }
                }
            }
            for dst in src + 1..n {
                out.push((self.nodes[src], self.nodes[dst], best[dst]));
            }
        }
        out
    }

    pub fn min_capacity(&self) -> Option<usize> {
        self.capacity.iter().skip(1).copied().min()
    }
}

/// Gomory-Hu tree of the connected graph `G(restrict)`.
pub fn gomory_hu_tree(g: &Graph, restrict: &NodeSet) -> Result<GomoryHuTree> {
    if restrict.len() < 2 {
        return Err(Error::EmptySet);
    }
    if connected_components(g, restrict).len() != 1 {
        return Err(Error::Disconnected);
    }
    Ok(flow_equivalent_tree(g, restrict))
}

/// Gusfield's construction without the connectivity precondition:
/// disconnected parts are joined by zero-capacity tree edges. Panics on an
/// empty restriction.
pub fn flow_equivalent_tree(g: &Graph, restrict: &NodeSet) -> GomoryHuTree {
    let nodes: Vec<NodeId> = restrict.iter().collect();
    assert!(!nodes.is_empty(), "tree over an empty node set");
    let mut position = vec![usize::MAX; g.node_count()];
    for (i, &v) in nodes.iter().enumerate() {
        position[v] = i;
    }
    let n = nodes.len();
    let mut parent = vec![0usize; n];
    let mut capacity = vec![0usize; n];
    let mut oracle = FlowOracle::new(g, restrict);
    for s in 1..n {
        let t = parent[s];
        let cut = oracle
            .min_cut(nodes[s], nodes[t])
            .expect("tree nodes are distinct members of the restriction");
        capacity[s] = cut.value;
        for i in s + 1..n {
            if parent[i] == t && cut.source_side.contains(nodes[i]) {
                parent[i] = s;
            }
        }
    }
    GomoryHuTree {
        nodes,
        position,
        parent,
        capacity,
    }
}

/// Edge connectivity of `u` and `v` inside the `k`-core with
/// `k = min(sh(u), sh(v))`.
pub fn connectivity_through_core(g: &Graph, d: &CoreDecomposition, u: NodeId, v: NodeId) -> Result<usize> {
    if u == v {
        return Err(Error::SamePair(u));
    }
    for x in [u, v] {
        if !g.contains(x) {
            return Err(Error::UnknownNode(x));
        }
    }
    let k = d.shell_index(u).min(d.shell_index(v));
    if k == 0 {
        let x = if d.shell_index(u) == 0 { u } else { v };
        return Err(Error::IsolatedNode(x));
    }
    edge_connectivity_pair(g, u, v, &d.core(k))
}

/// Wide-sense k-connected components: classes of the relation
/// `k'(u, v) >= k` in `G`, obtained by deleting tree edges below `k`.
/// Every node appears in exactly one class; classes are sorted and ordered
/// by smallest node.
pub fn wide_k_components(g: &Graph, k: usize) -> Vec<Vec<NodeId>> {
    let n = g.node_count();
    if n == 0 {
        return Vec::new();
    }
    let tree = flow_equivalent_tree(g, &NodeSet::full(n));
    let mut dsu: Vec<usize> = (0..n).collect();
    fn find(dsu: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while dsu[r] != r {
            r = dsu[r];
        }
        let mut y = x;
        while dsu[y] != r {
            let next = dsu[y];
            dsu[y] = r;
            y = next;
        }
        r
    }
    for (a, b, c) in tree.edges() {
        if c >= k {
            let (ra, rb) = (find(&mut dsu, a), find(&mut dsu, b));
            if ra != rb {
                dsu[ra.max(rb)] = ra.min(rb);
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<NodeId>> = Default::default();
    for v in 0..n {
        let r = find(&mut dsu, v);
        groups.entry(r).or_default().push(v);
    }
    let mut out: Vec<Vec<NodeId>> = groups.into_values().collect();
    out.sort_by_key(|c| c[0]);
    out
}

/// Strict-sense k-connected components: maximal sets `A` with `G(A)`
/// k-edge-connected, found by splitting along cuts of value below `k` until
/// every part is k-edge-connected. Single nodes are reported as singletons.
pub fn strict_k_components(g: &Graph, k: usize) -> Vec<Vec<NodeId>> {
    let n = g.node_count();
    let mut done = Vec::new();
    let mut work: Vec<Vec<NodeId>> = vec![(0..n).collect()];
    while let Some(part) = work.pop() {
        if part.len() <= 1 {
            done.extend(std::iter::once(part).filter(|p| !p.is_empty()));
            continue;
        }
        let set = NodeSet::from_nodes(n, part.iter().copied()).expect("nodes in range");
        let comps = connected_components(g, &set);
        if comps.len() > 1 {
            work.extend(comps);
            continue;
        }
        let cut = global_min_cut(g, &set).expect("part has at least two nodes");
        if cut.value >= k {
            done.push(part);
            continue;
        }
        let (inside, outside): (Vec<NodeId>, Vec<NodeId>) =
            part.iter().partition(|&&v| cut.source_side.contains(v));
        work.push(inside);
        work.push(outside);
    }
    for c in done.iter_mut() {
        c.sort_unstable();
    }
    done.sort_by_key(|c| c[0]);
    done
}

/// One bipartition `[S, S̄]` of a small graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cut {
    /// `S̄`, sorted.
    pub far_side: Vec<NodeId>,
    /// `|[S, S̄]|`.
    pub size: usize,
    /// Cut edges as `(s, s̄)`.
    pub edges: Vec<(NodeId, NodeId)>,
}

pub const MAX_ENUMERATION_NODES: usize = 24;

/// Iterator over every cut `[S, S̄]` with `base ⊆ S` and both sides
/// non-empty.
#[derive(Debug, Clone)]
pub struct CutIter<'g> {
    g: &'g Graph,
    free: Vec<NodeId>,
    adjacency: Vec<u32>,
    next: u64,
    end: u64,
    all_nodes: u32,
}

impl Iterator for CutIter<'_> {
    type Item = Cut;

    fn next(&mut self) -> Option<Cut> {
        while self.next < self.end {
            let pick = self.next;
            self.next += 1;
            let mut far = 0u32;
            for (i, &v) in self.free.iter().enumerate() {
                if pick >> i & 1 == 1 {
                    far |= 1 << v;
                }
            }
            if far == self.all_nodes {
                continue;
            }
            let far_side: Vec<NodeId> = (0..self.g.node_count()).filter(|&v| far >> v & 1 == 1).collect();
            let mut edges = Vec::new();
            for &v in &far_side {
                for &w in self.g.neighbors(v) {
                    if far >> w & 1 == 0 {
                        edges.push((w, v));
                    }
                }
            }
            let size = far_side
                .iter()
                .map(|&v| (self.adjacency[v] & !far).count_ones() as usize)
                .sum();
            debug_assert_eq!(size, edges.len());
            return Some(Cut { far_side, size, edges });
        }
        None
    }
}

/// Enumerates all `2^(n - |base|) - 1` cuts keeping `base` on the near side
/// (minus the one with an empty near side when `base` is empty).
pub fn enumerate_cuts<'g>(g: &'g Graph, base: &NodeSet) -> Result<CutIter<'g>> {
    let n = g.node_count();
    if n > MAX_ENUMERATION_NODES {
        return Err(Error::EnumerationLimit {
            nodes: n,
            limit: MAX_ENUMERATION_NODES,
        });
    }
    let free: Vec<NodeId> = g.nodes().filter(|&v| !base.contains(v)).collect();
    let adjacency = g
        .nodes()
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w))
        .collect();
    Ok(CutIter {
        g,
        end: 1u64 << free.len(),
        free,
        adjacency,
        next: 1,
        all_nodes: if n == 32 { u32::MAX } else { (1u32 << n) - 1 },
    })
}
