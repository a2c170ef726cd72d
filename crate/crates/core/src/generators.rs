//! Deterministic graph generators for tests, benchmarks and the validation
//! corpus. Random generators take a seed and use ChaCha8.

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, NodeId};

pub fn complete(n: usize) -> Graph {
    let mut edges = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    Graph::from_edges(n, &edges).0
}

pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
    Graph::from_edges(n, &edges).0
}

pub fn cycle(n: usize) -> Graph {
    let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
    if n > 2 {
        edges.push((n - 1, 0));
    }
    Graph::from_edges(n, &edges).0
}

/// G(n, p): every pair independently with probability `p`.
pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).0
}

/// G(n, m): `m` distinct edges drawn uniformly (capped at n(n-1)/2).
pub fn gnm(n: usize, m: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let max = n * n.saturating_sub(1) / 2;
    let m = m.min(max);
    let mut seen = std::collections::HashSet::with_capacity(m);
    let mut edges = Vec::with_capacity(m);
    while edges.len() < m {
        let u = rng.random_range(0..n);
        let v = rng.random_range(0..n);
        if u != v && seen.insert((u.min(v), u.max(v))) {
            edges.push((u, v));
        }
    }
    Graph::from_edges(n, &edges).0
}

/// Preferential attachment: starts from a clique on `m + 1` nodes, then each
/// new node attaches to `m` distinct existing nodes chosen proportionally to
/// degree.
pub fn barabasi_albert(n: usize, m: usize, seed: u64) -> Graph {
    barabasi_albert_varying(n, &[m], seed)
}

/// Preferential attachment where each new node draws its number of
/// attachments uniformly from `choices`. Mixed choices produce graphs with
/// several populated shells.
pub fn barabasi_albert_varying(n: usize, choices: &[usize], seed: u64) -> Graph {
    assert!(!choices.is_empty() && choices.iter().all(|&m| m >= 1));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m0 = *choices.iter().max().unwrap();
    let start = (m0 + 1).min(n);
    let mut edges = Vec::new();
    for u in 0..start {
        for v in u + 1..start {
            edges.push((u, v));
        }
    }
    attach(&mut edges, start, n, choices, &mut rng);
    Graph::from_edges(n, &edges).0
}

/// A dense G(core, p_core) core with the remaining nodes attached
/// preferentially, each with a number of edges drawn from `choices`.
pub fn core_periphery(n: usize, core: usize, p_core: f64, choices: &[usize], seed: u64) -> Graph {
    assert!(!choices.is_empty() && choices.iter().all(|&m| m >= 1));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let core = core.min(n);
    let mut edges = Vec::new();
    for u in 0..core {
        for v in u + 1..core {
            if rng.random_bool(p_core) {
                edges.push((u, v));
            }
        }
    }
    attach(&mut edges, core, n, choices, &mut rng);
    Graph::from_edges(n, &edges).0
}

/// Adds nodes `start..n`, each joined to distinct earlier nodes chosen with
/// probability proportional to degree + 1.
fn attach(edges: &mut Vec<(NodeId, NodeId)>, start: usize, n: usize, choices: &[usize], rng: &mut ChaCha8Rng) {
    // One entry per node plus one per edge endpoint.
    let mut targets: Vec<NodeId> = (0..start).collect();
    for &(u, v) in edges.iter() {
        targets.push(u);
        targets.push(v);
    }
    let mut picked = Vec::new();
    for v in start..n {
        let m = *choices.choose(rng).unwrap();
        picked.clear();
        while picked.len() < m.min(v) {
            let t = *targets.choose(rng).unwrap();
            if !picked.contains(&t) {
                picked.push(t);
            }
        }
        targets.push(v);
        for &t in &picked {
            edges.push((v, t));
            targets.push(v);
            targets.push(t);
        }
    }
}
