//! k-core decomposition, shells and clusters.
//!
//! Shell indices are computed with the bucket-queue peeling of Batagelj and
//! Zaversnik, which touches every adjacency entry once: O(n + e).
//! Clusters are the connected components of each shell's induced subgraph.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId, NodeSet};

/// Identifies a cluster by its shell and its rank among that shell's
/// clusters (ordered by smallest node).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClusterId {
    pub shell: usize,
    pub ordinal: usize,
}

impl fmt::Display for ClusterId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.shell, self.ordinal)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cluster {
    pub id: ClusterId,
    /// Sorted member nodes.
    pub nodes: Vec<NodeId>,
}

impl Cluster {
    pub fn shell(&self) -> usize {
        self.id.shell
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct CoreDecomposition {
    shell_index: Vec<usize>,
    k_max: usize,
    shells: Vec<Vec<NodeId>>,
    clusters: Vec<Vec<Cluster>>,
    cluster_of: Vec<Option<ClusterId>>,
}

/// Computes shell indices, shells and clusters of `g`.
pub fn core_decompose(g: &Graph) -> CoreDecomposition {
    let shell_index = shell_indices(g);
    let n = g.node_count();
    let k_max = shell_index.iter().copied().max().unwrap_or(0);

    let mut shells = vec![Vec::new(); k_max + 1];
    for v in 0..n {
        shells[shell_index[v]].push(v);
    }

    // Components of G(S_k) for all k at once: only follow same-shell edges.
    let mut clusters: Vec<Vec<Cluster>> = vec![Vec::new(); k_max + 1];
    let mut cluster_of = vec![None; n];
    let mut stack = Vec::new();
    for start in 0..n {
        let k = shell_index[start];
        if k == 0 || cluster_of[start].is_some() {
            continue;
        }
        let id = ClusterId {
            shell: k,
            ordinal: clusters[k].len(),
        };
        cluster_of[start] = Some(id);
        stack.push(start);
        let mut nodes = Vec::new();
        while let Some(v) = stack.pop() {
            nodes.push(v);
            for &w in g.neighbors(v) {
                if shell_index[w] == k && cluster_of[w].is_none() {
                    cluster_of[w] = Some(id);
                    stack.push(w);
                }
            }
        }
        nodes.sort_unstable();
        clusters[k].push(Cluster { id, nodes });
    }

    CoreDecomposition {
        shell_index,
        k_max,
        shells,
        clusters,
        cluster_of,
    }
}

/// Bucket-queue peeling. Nodes of equal current degree are processed in
/// ascending index order.
fn shell_indices(g: &Graph) -> Vec<usize> {
    let n = g.node_count();
    if n == 0 {
        return Vec::new();
    }
    let mut degree: Vec<usize> = (0..n).map(|v| g.neighbors(v).len()).collect();
    let max_degree = degree.iter().copied().max().unwrap_or(0);

    // bin[d] = first position in `order` holding a node of degree d.
    let mut bin = vec![0usize; max_degree + 1];
    for &d in &degree {
        bin[d] += 1;
    }
    let mut start = 0;
    for count in bin.iter_mut() {
        let c = *count;
        *count = start;
        start += c;
    }
    let mut order = vec![0; n];
    let mut position = vec![0; n];
    for v in 0..n {
        let d = degree[v];
        position[v] = bin[d];
        order[bin[d]] = v;
        bin[d] += 1;
    }
    for d in (1..=max_degree).rev() {
        bin[d] = bin[d - 1];
    }
    bin[0] = 0;

    for i in 0..n {
        let v = order[i];
        for &w in g.neighbors(v) {
            if degree[w] > degree[v] {
                // Move w to the front of its bucket, then shrink the bucket.
                let dw = degree[w];
                let pw = position[w];
                let front = bin[dw];
                let u = order[front];
                if u != w {
                    order[pw] = u;
                    position[u] = pw;
                    order[front] = w;
                    position[w] = front;
                }
                bin[dw] += 1;
                degree[w] -= 1;
            }
        }
    }
    degree
}

impl CoreDecomposition {
    pub fn node_count(&self) -> usize {
        self.shell_index.len()
    }

    pub fn shell_index(&self, v: NodeId) -> usize {
        self.shell_index[v]
    }

    pub fn shell_indices(&self) -> &[usize] {
        &self.shell_index
    }

    pub fn k_max(&self) -> usize {
        self.k_max
    }

    /// Nodes with shell index exactly `k` (empty above `k_max`).
    pub fn shell(&self, k: usize) -> &[NodeId] {
        self.shells.get(k).map(Vec::as_slice).unwrap_or(&[])
    }

    /// The k-core `C_k`: union of all shells `>= k`.
    pub fn core(&self, k: usize) -> NodeSet {
        let mask = self.shell_index.iter().map(|&s| s >= k).collect();
        NodeSet::from_mask(mask)
    }

    /// Clusters of shell `k` ordered by smallest node; empty for `k == 0` and
    /// `k > k_max`.
    pub fn clusters_of_shell(&self, k: usize) -> &[Cluster] {
        if k == 0 {
            return &[];
        }
        self.clusters.get(k).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn cluster(&self, id: ClusterId) -> &Cluster {
        &self.clusters[id.shell][id.ordinal]
    }

    /// `None` for shell-0 (isolated) nodes.
    pub fn cluster_of(&self, v: NodeId) -> Option<ClusterId> {
        self.cluster_of[v]
    }

    /// All clusters, by ascending shell then ordinal.
    pub fn clusters(&self) -> impl Iterator<Item = &Cluster> {
        self.clusters.iter().flatten()
    }
}

/// ψ(A): minimum degree inside `G(A)`.
pub fn min_induced_degree(g: &Graph, set: &NodeSet) -> Result<usize> {
    set.iter()
        .map(|v| g.degree_into(v, set))
        .min()
        .ok_or(Error::EmptySet)
}
