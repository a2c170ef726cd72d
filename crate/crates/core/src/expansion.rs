//! Expansion of a k-edge-connected base set `C` by a disjoint candidate set
//! `Q`.
//!
//! An [`ExpansionContext`] fixes `(C, Q)` and precomputes everything that the
//! admissibility test needs in time proportional to the edges incident to `Q`:
//! edges from each candidate node into `C`, distances to `C` inside
//! `G' = G(C ∪ Q)`, the minimum degree of `G'`, and the Φ sum.
//!
//! The admissibility test certifies that `G'` is k-edge-connected whenever
//! `G(C)` is: it requires `k <= δ(G')`, contracted diameter at most 2 and
//! `Ψ(k) >= 0`.

use std::borrow::Cow;
use std::cell::{Cell, OnceCell};
use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Distance, Graph, NodeId, NodeSet};

/// A growing node set with per-member induced degrees, kept so that the
/// minimum degree of `G(C ∪ Q)` can be found without rescanning `C`.
#[derive(Debug, Clone)]
pub struct Base {
    member: Vec<bool>,
    pending: Vec<bool>,
    degree: Vec<usize>,
    by_degree: BTreeSet<(usize, NodeId)>,
    len: usize,
}

impl Base {
    pub fn new(universe: usize) -> Self {
        Base {
            member: vec![false; universe],
            pending: vec![false; universe],
            degree: vec![0; universe],
            by_degree: BTreeSet::new(),
            len: 0,
        }
    }

    pub fn from_set(g: &Graph, set: &NodeSet) -> Self {
        let mut base = Base::new(g.node_count());
        base.absorb(g, set.as_slice());
        base
    }

    /// Adds `nodes` (ignoring ones already present), updating induced degrees.
    pub fn absorb(&mut self, g: &Graph, nodes: &[NodeId]) {
        let fresh: Vec<NodeId> = nodes.iter().copied().filter(|&v| !self.member[v]).collect();
        for &v in &fresh {
            self.pending[v] = true;
        }
        for &v in &fresh {
            let mut own = 0;
            for &w in g.neighbors(v) {
                if self.pending[w] {
                    own += 1;
                } else if self.member[w] {
                    own += 1;
                    self.by_degree.remove(&(self.degree[w], w));
                    self.degree[w] += 1;
                    self.by_degree.insert((self.degree[w], w));
                }
            }
            self.degree[v] = own;
        }
        for &v in &fresh {
            self.pending[v] = false;
            self.member[v] = true;
            self.by_degree.insert((self.degree[v], v));
        }
        self.len += fresh.len();
    }

    #[inline]
    pub fn contains(&self, v: NodeId) -> bool {
        self.member[v]
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn universe(&self) -> usize {
        self.member.len()
    }

    /// Degree of member `v` inside `G(C)`.
    pub fn induced_degree(&self, v: NodeId) -> usize {
        self.degree[v]
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.by_degree.first().map(|&(d, _)| d)
    }

    pub fn to_node_set(&self) -> NodeSet {
        NodeSet::from_mask(self.member.clone())
    }
}

/// Induced subgraph on a candidate set in local indices, with per-node edge
/// counts into an outside base set.
#[derive(Debug, Clone)]
pub(crate) struct LocalGraph {
    pub nodes: Vec<NodeId>,
    offsets: Vec<usize>,
    targets: Vec<usize>,
    pub edges_to_base: Vec<usize>,
    /// Base endpoints of edges leaving the candidate set, with repetition.
    pub base_hits: Vec<NodeId>,
}

impl LocalGraph {
    /// Returns the local graph and the number of adjacency entries read.
    pub fn build(g: &Graph, nodes: Vec<NodeId>, in_base: impl Fn(NodeId) -> bool) -> (Self, u64) {
        let local: HashMap<NodeId, usize> = nodes.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut offsets = Vec::with_capacity(nodes.len() + 1);
        offsets.push(0);
        let mut targets = Vec::new();
        let mut edges_to_base = Vec::with_capacity(nodes.len());
        let mut base_hits = Vec::new();
        let mut touches = 0u64;
        for &v in &nodes {
            let mut into_base = 0;
            for &w in g.neighbors(v) {
                touches += 1;
                if let Some(&j) = local.get(&w) {
                    targets.push(j);
                } else if in_base(w) {
                    into_base += 1;
                    base_hits.push(w);
                }
            }
            edges_to_base.push(into_base);
            offsets.push(targets.len());
        }
        (
            LocalGraph {
                nodes,
                offsets,
                targets,
                edges_to_base,
                base_hits,
            },
            touches,
        )
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    #[inline]
    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.targets[self.offsets[i]..self.offsets[i + 1]]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.offsets[i + 1] - self.offsets[i]
    }

    /// BFS distances inside the local graph from `sources` (all at distance
    /// `start`).
    pub fn bfs(&self, sources: impl Iterator<Item = usize>, start: usize, touches: &mut u64) -> Vec<Distance> {
        let mut dist = vec![Distance::Infinite; self.len()];
        let mut queue = VecDeque::new();
        for s in sources {
            dist[s] = Distance::Finite(start);
            queue.push_back(s);
        }
        while let Some(v) = queue.pop_front() {
            let next = Distance::Finite(dist[v].finite().unwrap() + 1);
            for &w in self.neighbors(v) {
                *touches += 1;
                if dist[w] == Distance::Infinite {
                    dist[w] = next;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// True when every node is within two hops of `source` inside the local
    /// graph. Stops as soon as coverage is complete.
    pub fn covers_within_two(&self, source: usize, stamp: &mut [u32], round: u32, touches: &mut u64) -> bool {
        let n = self.len();
        let mut reached = 1;
        stamp[source] = round;
        if reached == n {
            return true;
        }
        for &w in self.neighbors(source) {
            *touches += 1;
            if stamp[w] != round {
                stamp[w] = round;
                reached += 1;
            }
        }
        if reached == n {
            return true;
        }
        for &w in self.neighbors(source) {
            for &x in self.neighbors(w) {
                *touches += 1;
                if stamp[x] != round {
                    stamp[x] = round;
                    reached += 1;
                    if reached == n {
                        return true;
                    }
                }
            }
        }
        reached == n
    }

    /// Diameter at most two, checked by a two-hop sweep from every node.
    /// With `2δ ≥ n − 1` any two non-adjacent nodes share a neighbour, so the
    /// sweep is skipped.
    pub fn diameter_at_most_two(&self, touches: &mut u64) -> bool {
        let n = self.len();
        *touches += n as u64;
        if (0..n).all(|i| 2 * self.degree(i) + 1 >= n) {
            return true;
        }
        let mut stamp = vec![0u32; self.len()];
        (0..self.len()).all(|s| self.covers_within_two(s, &mut stamp, s as u32 + 1, touches))
    }
}

/// Which of the three sufficient alternatives certified an admission.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Alternative {
    /// Φ ≥ k.
    Phi,
    /// |∂¹Q| ≥ k.
    Boundary,
    /// Q = ∂¹Q.
    Covered,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rejection {
    /// k exceeds the minimum degree of `G(C ∪ Q)`.
    Delta { delta: usize },
    /// Contracted diameter above 2 (possibly infinite).
    Diameter,
    /// All three alternatives fail.
    Psi { psi: i64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Admission {
    Admitted(Alternative),
    Rejected(Rejection),
}

impl Admission {
    pub fn is_admitted(&self) -> bool {
        matches!(self, Admission::Admitted(_))
    }
}

impl fmt::Display for Alternative {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Alternative::Phi => "phi",
            Alternative::Boundary => "boundary",
            Alternative::Covered => "covered",
        })
    }
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rejection::Delta { delta } => write!(f, "delta={delta}"),
            Rejection::Diameter => f.write_str("diameter"),
            Rejection::Psi { psi } => write!(f, "psi={psi}"),
        }
    }
}

impl fmt::Display for Admission {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Admission::Admitted(alt) => write!(f, "admitted:{alt}"),
            Admission::Rejected(rej) => write!(f, "rejected:{rej}"),
        }
    }
}

/// A `(C, Q)` pair with its derived quantities.
#[derive(Debug, Clone)]
pub struct ExpansionContext<'a> {
    graph: &'a Graph,
    base: Cow<'a, Base>,
    local: LocalGraph,
    index: HashMap<NodeId, usize>,
    dist_to_base: OnceCell<Vec<Distance>>,
    delta: usize,
    phi: OnceCell<usize>,
    boundary: usize,
    touches: Cell<u64>,
}

impl<'a> ExpansionContext<'a> {
    /// Builds the context for base `C = base` and candidate `Q = candidate`.
    ///
    /// Both sets must be non-empty and disjoint.
    pub fn new(graph: &'a Graph, base: &'a Base, candidate: &[NodeId]) -> Result<Self> {
        Self::with_base(graph, Cow::Borrowed(base), candidate)
    }

    /// Convenience constructor from two node sets.
    pub fn from_sets(graph: &'a Graph, base: &NodeSet, candidate: &NodeSet) -> Result<Self> {
        Self::with_base(graph, Cow::Owned(Base::from_set(graph, base)), candidate.as_slice())
    }

    fn with_base(graph: &'a Graph, base: Cow<'a, Base>, candidate: &[NodeId]) -> Result<Self> {
        if base.is_empty() || candidate.is_empty() {
            return Err(Error::EmptySet);
        }
        let mut nodes = candidate.to_vec();
        nodes.sort_unstable();
        nodes.dedup();
        for &v in &nodes {
            if !graph.contains(v) {
                return Err(Error::UnknownNode(v));
            }
            if base.contains(v) {
                return Err(Error::Overlap(v));
            }
        }

        let (local, touches) = LocalGraph::build(graph, nodes, |w| base.contains(w));
        let index: HashMap<NodeId, usize> = local.nodes.iter().enumerate().map(|(i, &v)| (v, i)).collect();

        let boundary = local.edges_to_base.iter().filter(|&&c| c >= 1).count();
        let delta = min_degree_of_union(&base, &local);

        Ok(ExpansionContext {
            graph,
            base,
            local,
            index,
            dist_to_base: OnceCell::new(),
            delta,
            phi: OnceCell::new(),
            boundary,
            touches: Cell::new(touches),
        })
    }

    pub fn graph(&self) -> &Graph {
        self.graph
    }

    pub fn base(&self) -> &Base {
        &self.base
    }

    /// Candidate nodes, sorted.
    pub fn candidate(&self) -> &[NodeId] {
        &self.local.nodes
    }

    /// Adjacency entries read so far while evaluating this context.
    pub fn touches(&self) -> u64 {
        self.touches.get()
    }

    fn add_touches(&self, n: u64) {
        self.touches.set(self.touches.get() + n);
    }

    /// `|[x, C]|` for a candidate node.
    pub fn edges_to_base(&self, x: NodeId) -> Option<usize> {
        self.index.get(&x).map(|&i| self.local.edges_to_base[i])
    }

    /// `ρ_{G'}(x, C)`: 0 on the base, `None` outside `C ∪ Q`.
    pub fn distance_to_base(&self, x: NodeId) -> Option<Distance> {
        if self.base.contains(x) {
            return Some(Distance::Finite(0));
        }
        self.index.get(&x).map(|&i| self.distances()[i])
    }

    /// δ(G'), the minimum degree of `G(C ∪ Q)`.
    pub fn delta(&self) -> usize {
        self.delta
    }

    /// Contracted distance `ρ_{C'/C}(x, y)`.
    pub fn contracted_distance(&self, x: NodeId, y: NodeId) -> Result<Distance> {
        let dx = self.distance_to_base(x).ok_or(Error::OutsideExpansion(x))?;
        let dy = self.distance_to_base(y).ok_or(Error::OutsideExpansion(y))?;
        if self.base.contains(x) {
            return Ok(dy);
        }
        if self.base.contains(y) {
            return Ok(dx);
        }
        if x == y {
            return Ok(Distance::Finite(0));
        }
        let (ix, iy) = (self.index[&x], self.index[&y]);
        let mut touches = 0;
        let inside = self.local.bfs(std::iter::once(ix), 0, &mut touches)[iy];
        self.add_touches(touches);
        Ok(inside.min(dx + dy))
    }

    /// Exact contracted diameter of `C ∪ Q` (all-pairs inside `Q`).
    pub fn contracted_diameter(&self) -> Distance {
        let mut worst = Distance::Finite(0);
        for &d in self.distances() {
            worst = worst.max(d);
        }
        if worst == Distance::Infinite {
            return worst;
        }
        let mut touches = 0;
        for i in 0..self.local.len() {
            let inside = self.local.bfs(std::iter::once(i), 0, &mut touches);
            for j in i + 1..self.local.len() {
                let d = inside[j].min(self.distances()[i] + self.distances()[j]);
                worst = worst.max(d);
            }
        }
        self.add_touches(touches);
        worst
    }

    /// Whether the contracted diameter is at most 2.
    ///
    /// Every candidate must be within 2 of `C`. Pairs inside `∂¹Q` are at
    /// contracted distance 2 through `C`; every other pair has a C-route of
    /// length at least 3, so it must be within 2 inside `G(Q)`. That reduces
    /// to a two-hop sweep from each node of `Q \ ∂¹Q`.
    pub fn contracted_diameter_at_most_two(&self) -> bool {
        if !self.distances().iter().all(|d| d.at_most(2)) {
            return false;
        }
        let mut touches = 0;
        let mut stamp = vec![0u32; self.local.len()];
        let mut round = 0;
        let mut ok = true;
        for i in 0..self.local.len() {
            if self.local.edges_to_base[i] == 0 {
                round += 1;
                if !self.local.covers_within_two(i, &mut stamp, round, &mut touches) {
                    ok = false;
                    break;
                }
            }
        }
        self.add_touches(touches);
        ok
    }

    /// `(∂ʲQ, ∂̄ʲQ)`: candidates with at least / fewer than `j` edges into `C`.
    pub fn boundary_sets(&self, j: usize) -> (NodeSet, NodeSet) {
        let n = self.graph.node_count();
        let mut inner = vec![false; n];
        let mut outer = vec![false; n];
        for (i, &v) in self.local.nodes.iter().enumerate() {
            if self.local.edges_to_base[i] >= j {
                inner[v] = true;
            } else {
                outer[v] = true;
            }
        }
        (NodeSet::from_mask(inner), NodeSet::from_mask(outer))
    }

    /// |∂¹Q|.
    pub fn boundary_size(&self) -> usize {
        self.boundary
    }

    /// Φ = Σ_{x∈Q} min{max{1, |[x, ∂̄²Q]|}, |[x, C]|}.
    pub fn phi(&self) -> usize {
        *self.phi.get_or_init(|| {
            let local = &self.local;
            let mut phi = 0;
            for i in 0..local.len() {
                let into_thin = local
                    .neighbors(i)
                    .iter()
                    .filter(|&&j| local.edges_to_base[j] < 2)
                    .count();
                phi += into_thin.max(1).min(local.edges_to_base[i]);
            }
            self.add_touches(local.targets.len() as u64);
            phi
        })
    }

    /// ρ_{G'}(x, C) per candidate: one hop into C from ∂¹Q, then hops
    /// inside Q.
    fn distances(&self) -> &[Distance] {
        self.dist_to_base.get_or_init(|| {
            let mut touches = 0;
            let local = &self.local;
            let d = local.bfs((0..local.len()).filter(|&i| local.edges_to_base[i] > 0), 1, &mut touches);
            self.add_touches(touches);
            d
        })
    }

    /// Ψ(k) = max{Φ − k, |∂¹Q| − k, |∂¹Q| − |Q|}, defined for `k <= δ(G')`.
    pub fn psi(&self, k: usize) -> Result<i64> {
        if k > self.delta {
            return Err(Error::DegreeBound { k, delta: self.delta });
        }
        Ok(self.psi_unchecked(k))
    }

    fn psi_unchecked(&self, k: usize) -> i64 {
        let (phi, boundary, q, k) = (
            self.phi() as i64,
            self.boundary as i64,
            self.local.len() as i64,
            k as i64,
        );
        (phi - k).max(boundary - k).max(boundary - q)
    }

    /// Checks `k <= δ(G')`, contracted diameter `<= 2` and `Ψ(k) >= 0`, in
    /// that order, reporting the first failure.
    pub fn admissible(&self, k: usize) -> Admission {
        if k > self.delta {
            return Admission::Rejected(Rejection::Delta { delta: self.delta });
        }
        if !self.contracted_diameter_at_most_two() {
            return Admission::Rejected(Rejection::Diameter);
        }
        let k_i = k as i64;
        if self.phi() as i64 >= k_i {
            Admission::Admitted(Alternative::Phi)
        } else if self.boundary as i64 >= k_i {
            Admission::Admitted(Alternative::Boundary)
        } else if self.boundary == self.local.len() {
            Admission::Admitted(Alternative::Covered)
        } else {
            Admission::Rejected(Rejection::Psi {
                psi: self.psi_unchecked(k),
            })
        }
    }
}

/// δ(G(C ∪ Q)). Candidate degrees come from the local graph; base degrees are
/// the stored induced degree plus edges into `Q`. Base nodes are visited in
/// ascending stored degree, stopping once no further node can improve the
/// minimum, so only base nodes adjacent to `Q` (plus one) are inspected.
fn min_degree_of_union(base: &Base, local: &LocalGraph) -> usize {
    let mut best = (0..local.len())
        .map(|i| local.degree(i) + local.edges_to_base[i])
        .min()
        .unwrap_or(usize::MAX);
    let mut into_q: HashMap<NodeId, usize> = HashMap::new();
    for &w in &local.base_hits {
        *into_q.entry(w).or_insert(0) += 1;
    }
    for &(d, c) in &base.by_degree {
        if d >= best {
            break;
        }
        best = best.min(d + into_q.get(&c).copied().unwrap_or(0));
    }
    best
}
