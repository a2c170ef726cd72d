//! Fixtures and brute-force reference implementations shared by the
//! integration tests. Nothing here calls into the library's algorithms
//! except to build a `Graph`.

#![allow(dead_code)]

use coreconn::{Graph, NodeId};

pub fn labeled(edges: &[(&str, &str)]) -> Graph {
    Graph::from_labeled_edges(edges.iter().copied()).0
}

/// Two disjoint triangles.
pub fn tt() -> Graph {
    labeled(&[
        ("a1", "a2"),
        ("a2", "a3"),
        ("a3", "a1"),
        ("b1", "b2"),
        ("b2", "b3"),
        ("b3", "b1"),
    ])
}

/// K5 on 1..5 plus node 6 joined to 1 and 2.
pub fn k5w() -> Graph {
    let mut edges = Vec::new();
    for u in 1..=5u64 {
        for v in u + 1..=5 {
            edges.push((u, v));
        }
    }
    edges.push((6, 1));
    edges.push((6, 2));
    Graph::from_labeled_edges(edges).0
}

/// K6 on c1..c6, K5 on y1..y5, bridges y1-c1 and y2-c2, and z joined to y3
/// and y4.
pub fn w12() -> Graph {
    let mut edges: Vec<(String, String)> = Vec::new();
    for u in 1..=6 {
        for v in u + 1..=6 {
            edges.push((format!("c{u}"), format!("c{v}")));
        }
    }
    for u in 1..=5 {
        for v in u + 1..=5 {
            edges.push((format!("y{u}"), format!("y{v}")));
        }
    }
    for (a, b) in [("y1", "c1"), ("y2", "c2"), ("z", "y3"), ("z", "y4")] {
        edges.push((a.to_string(), b.to_string()));
    }
    Graph::from_labeled_edges(edges).0
}

pub fn id(g: &Graph, label: &str) -> NodeId {
    g.node(label).unwrap_or_else(|| panic!("no node {label}"))
}

pub fn ids(g: &Graph, labels: &[&str]) -> Vec<NodeId> {
    let mut v: Vec<NodeId> = labels.iter().map(|l| id(g, l)).collect();
    v.sort_unstable();
    v
}

pub fn all_pairs(n: usize) -> Vec<(NodeId, NodeId)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

/// Adjacency matrix view.
pub fn matrix(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.node_count();
    let mut m = vec![vec![false; n]; n];
    for (u, v) in g.edges() {
        m[u][v] = true;
        m[v][u] = true;
    }
    m
}

/// Shell indices by definition: for each k, strip nodes of degree < k
/// until none remain; sh(v) is the last k for which v survives.
pub fn naive_shell_indices(g: &Graph) -> Vec<usize> {
    let n = g.node_count();
    let adj = matrix(g);
    let mut shell = vec![0; n];
    for k in 1..=n {
        let mut alive = vec![true; n];
        loop {
            let mut changed = false;
            for v in 0..n {
                if alive[v] {
                    let deg = (0..n).filter(|&w| alive[w] && adj[v][w]).count();
                    if deg < k {
                        alive[v] = false;
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        if !alive.iter().any(|&a| a) {
            break;
        }
        for v in 0..n {
            if alive[v] {
                shell[v] = k;
            }
        }
    }
    shell
}

/// Max-flow by depth-first augmenting paths on a dense capacity matrix,
/// restricted to `allowed` nodes.
pub fn dense_max_flow(g: &Graph, s: NodeId, t: NodeId, allowed: &[bool]) -> usize {
    let n = g.node_count();
    let mut cap = vec![vec![0i32; n]; n];
    for (u, v) in g.edges() {
        if allowed[u] && allowed[v] {
            cap[u][v] = 1;
            cap[v][u] = 1;
        }
    }
    let mut flow = 0;
    loop {
        let mut prev = vec![usize::MAX; n];
        prev[s] = s;
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for y in 0..n {
                if cap[x][y] > 0 && prev[y] == usize::MAX {
                    prev[y] = x;
                    stack.push(y);
                }
            }
        }
        if prev[t] == usize::MAX {
            return flow;
        }
        let mut y = t;
        while y != s {
            let x = prev[y];
            cap[x][y] -= 1;
            cap[y][x] += 1;
            y = x;
        }
        flow += 1;
    }
}

/// Minimum cut separating `s` and `t` over all bipartitions (n ≤ 20).
pub fn brute_min_cut(g: &Graph, s: NodeId, t: NodeId) -> usize {
    let n = g.node_count();
    let edges: Vec<_> = g.edges().collect();
    let mut best = usize::MAX;
    for mask in 0u32..(1 << n) {
        if mask >> s & 1 == 1 && mask >> t & 1 == 0 {
            let size = edges
                .iter()
                .filter(|&&(u, v)| (mask >> u & 1) != (mask >> v & 1))
                .count();
            best = best.min(size);
        }
    }
    best
}

/// BFS distances on a bitmask graph restricted to `within`.
fn mask_bfs(adj: &[u32], within: u32, sources: u32) -> Vec<Option<u32>> {
    let n = adj.len();
    let mut dist = vec![None; n];
    let mut frontier = sources & within;
    let mut seen = frontier;
    let mut d = 0;
    while frontier != 0 {
        for v in 0..n {
            if frontier >> v & 1 == 1 {
                dist[v] = Some(d);
            }
        }
        let mut next = 0;
        for v in 0..n {
            if frontier >> v & 1 == 1 {
                next |= adj[v];
            }
        }
        frontier = next & within & !seen;
        seen |= frontier;
        d += 1;
    }
    dist
}

pub fn bit_adjacency(g: &Graph) -> Vec<u32> {
    assert!(g.node_count() <= 32);
    g.nodes()
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w))
        .collect()
}

/// The contracted distance computed from its definition. `INF` marks
/// unreachable pairs; entries outside `C ∪ Q` are unused.
pub const INF: u32 = u32::MAX / 4;

pub struct Contracted {
    /// rho[x][y] over C' = C ∪ Q.
    pub rho: Vec<Vec<u32>>,
    /// |[x, C]| for every node.
    pub to_c: Vec<u32>,
    /// Degree inside G'.
    pub deg: Vec<u32>,
    pub c: u32,
    pub q: u32,
    pub adj: Vec<u32>,
}

impl Contracted {
    pub fn new(adj: &[u32], c: u32, q: u32) -> Self {
        let n = adj.len();
        let cp = c | q;
        let d_c = mask_bfs(adj, cp, c);
        let dc = |x: usize| d_c[x].unwrap_or(INF);
        let mut rho = vec![vec![INF; n]; n];
        for x in 0..n {
            if cp >> x & 1 == 0 {
                continue;
            }
            let in_q = mask_bfs(adj, q, 1 << x);
            for y in 0..n {
                if cp >> y & 1 == 0 {
                    continue;
                }
                let xq = q >> x & 1 == 1;
                let yq = q >> y & 1 == 1;
                rho[x][y] = match (xq, yq) {
                    (true, true) => in_q[y].unwrap_or(INF).min(dc(x).saturating_add(dc(y))),
                    (true, false) => dc(x),
                    (false, true) => dc(y),
                    (false, false) => 0,
                };
            }
        }
        let to_c = adj.iter().map(|&a| (a & c).count_ones()).collect();
        let deg = adj.iter().map(|&a| (a & cp).count_ones()).collect();
        Contracted {
            rho,
            to_c,
            deg,
            c,
            q,
            adj: adj.to_vec(),
        }
    }

    pub fn diameter(&self) -> u32 {
        let cp = self.c | self.q;
        let mut best = 0;
        for x in bits(cp) {
            for y in bits(cp) {
                best = best.max(self.rho[x][y]);
            }
        }
        best
    }

    pub fn rho_to_set(&self, x: usize, set: u32) -> u32 {
        bits(set).map(|a| self.rho[x][a]).min().unwrap_or(INF)
    }

    pub fn boundary(&self, j: u32) -> u32 {
        bits(self.q)
            .filter(|&x| self.to_c[x] >= j)
            .fold(0, |m, x| m | 1 << x)
    }

    pub fn phi(&self) -> u32 {
        let not2 = self.q & !self.boundary(2);
        bits(self.q)
            .map(|x| (self.adj[x] & not2).count_ones().max(1).min(self.to_c[x]))
            .sum()
    }

    pub fn min_degree(&self) -> u32 {
        bits(self.c | self.q).map(|x| self.deg[x]).min().unwrap_or(0)
    }
}

pub fn bits(mask: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |&i| mask >> i & 1 == 1)
}

/// One failed implication.
#[derive(Debug, Clone)]
pub struct Failure {
    pub statement: &'static str,
    pub c: u32,
    pub q: u32,
    pub far: u32,
}

/// Checks every cut of G' = G(C ∪ Q) with C on the near side against the
/// six cut implications (A1-A6) and, for cuts smaller than the least
/// degree of a Q node, six further conclusions (B1-B6). Returns the
/// number of cuts examined. Requires contracted diameter ≤ 2.
pub fn check_cut_statements(ctx: &Contracted, failures: &mut Vec<Failure>) -> u64 {
    let (c, q) = (ctx.c, ctx.q);
    let q_nodes: Vec<usize> = bits(q).collect();
    let min_q_degree = q_nodes.iter().map(|&v| ctx.deg[v]).min().unwrap();
    let not2 = q & !ctx.boundary(2);
    let b2 = ctx.boundary(2);
    let phi = ctx.phi();
    let mut examined = 0;
    for pick in 1u32..(1 << q_nodes.len()) {
        let far = q_nodes
            .iter()
            .enumerate()
            .filter(|(i, _)| pick >> i & 1 == 1)
            .fold(0u32, |m, (_, &v)| m | 1 << v);
        let near = (c | q) & !far;
        let s1 = near & q;
        examined += 1;
        let mut fail = |statement| failures.push(Failure { statement, c, q, far });

        let cut: u32 = bits(far).map(|v| (ctx.adj[v] & near).count_ones()).sum();
        let cut_s1: u32 = bits(far).map(|v| (ctx.adj[v] & s1).count_ones()).sum();
        let cut_c: u32 = bits(far).map(|v| (ctx.adj[v] & c).count_ones()).sum();
        let far_to_near = bits(far).map(|v| ctx.rho_to_set(v, near)).max().unwrap();
        let near_to_far = bits(near).map(|v| ctx.rho_to_set(v, far)).max().unwrap();
        let s1_to_far = bits(s1).map(|v| ctx.rho_to_set(v, far)).max();
        let far_len = far.count_ones();
        let max_far_deg = bits(far).map(|v| ctx.deg[v]).max().unwrap();
        let min_far_deg = bits(far).map(|v| ctx.deg[v]).min().unwrap();

        if far_to_near == 1 {
            if cut < max_far_deg {
                fail("A1: cut >= max degree on the far side");
            }
            if cut < far_len {
                fail("A2: cut >= |far side|");
            }
        }
        if far_to_near == 2 {
            if far_len <= min_far_deg {
                fail("A3: |far side| > min degree on the far side");
            }
            if near_to_far != 1 {
                fail("A4: near side within distance 1 of the far side");
            }
        }
        if s1_to_far == Some(1) {
            let bound = bits(s1).map(|s| ctx.deg[s] - ctx.to_c[s]).max().unwrap();
            if cut_s1 < bound {
                fail("A5: [S1, far] >= max non-C degree in S1");
            }
            if cut_s1 < s1.count_ones() {
                fail("A6: [S1, far] >= |S1|");
            }
        }

        if cut < min_q_degree {
            if far_to_near != 2 {
                fail("B1: far side at distance 2");
            }
            if near_to_far != 1 {
                fail("B2: near side at distance 1");
            }
            if cut_c < 1 {
                fail("B3: far side touches C");
            }
            if !(s1.count_ones() < cut && min_q_degree < far_len) {
                fail("B4: |S1| < cut < min Q degree < |far side|");
            }
            if s1 & !b2 != 0 || not2 & !far != 0 {
                fail("B5: near Q nodes in the 2-boundary, far side holds the rest");
            }
            if phi > cut {
                fail("B6: phi <= cut");
            }
        }
    }
    examined
}

/// All (C, Q) pairs of non-empty disjoint subsets of `0..n` with contracted
/// diameter at most 2.
pub fn admissible_pairs(adj: &[u32]) -> impl Iterator<Item = Contracted> + '_ {
    let n = adj.len() as u32;
    let total = 3u64.pow(n);
    (0..total).filter_map(move |mut code| {
        let (mut c, mut q) = (0u32, 0u32);
        for v in 0..n {
            match code % 3 {
                1 => c |= 1 << v,
                2 => q |= 1 << v,
                _ => {}
            }
            code /= 3;
        }
        if c == 0 || q == 0 {
            return None;
        }
        let ctx = Contracted::new(adj, c, q);
        (ctx.diameter() <= 2).then_some(ctx)
    })
}

/// Every simple graph on `n` labelled nodes.
pub fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs = all_pairs(n);
    (0u64..1 << pairs.len()).map(move |mask| {
        let edges: Vec<_> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        Graph::from_edges(n, &edges).0
    })
}

pub fn is_connected(g: &Graph) -> bool {
    let n = g.node_count();
    if n == 0 {
        return true;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &w in g.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Largest BFS eccentricity; `None` if disconnected.
pub fn diameter(g: &Graph) -> Option<usize> {
    let n = g.node_count();
    let mut best = 0;
    for s in 0..n {
        let mut dist = vec![usize::MAX; n];
        dist[s] = 0;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &w in g.neighbors(v) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        best = best.max(*dist.iter().max()?);
        if best == usize::MAX {
            return None;
        }
    }
    Some(best)
}
