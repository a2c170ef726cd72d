//! Pair-output policies.

use std::fmt;
use std::str::FromStr;

use coreconn::{Graph, NodeId};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Above this many non-isolated nodes the default policy samples.
pub const DEFAULT_ALL_NODE_LIMIT: usize = 2_000;
pub const DEFAULT_SAMPLE: usize = 100_000;
pub const DEFAULT_MAX_PAIRS: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairPolicy {
    All,
    Sample(usize),
    None,
}

impl PairPolicy {
    /// Policy used when none is given on the command line.
    pub fn default_for(candidates: usize) -> PairPolicy {
        if candidates > DEFAULT_ALL_NODE_LIMIT {
            PairPolicy::Sample(DEFAULT_SAMPLE)
        } else {
            PairPolicy::All
        }
    }
}

impl fmt::Display for PairPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PairPolicy::All => f.write_str("all"),
            PairPolicy::Sample(n) => write!(f, "sample:{n}"),
            PairPolicy::None => f.write_str("none"),
        }
    }
}

impl FromStr for PairPolicy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "all" => Ok(PairPolicy::All),
            "none" => Ok(PairPolicy::None),
            _ => s
                .strip_prefix("sample:")
                .and_then(|n| n.parse().ok())
                .map(PairPolicy::Sample)
                .ok_or_else(|| format!("expected all, none or sample:N, got {s:?}")),
        }
    }
}

/// Pairs of distinct non-isolated nodes, `u < v`, in ascending order.
#[derive(Debug, Clone)]
pub enum PairSelection {
    All(Vec<NodeId>),
    Listed(Vec<(NodeId, NodeId)>),
}

impl PairSelection {
    pub fn len(&self) -> u64 {
        match self {
            PairSelection::All(nodes) => pair_count(nodes.len()),
            PairSelection::Listed(pairs) => pairs.len() as u64,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn iter(&self) -> Box<dyn Iterator<Item = (NodeId, NodeId)> + '_> {
        match self {
            PairSelection::All(nodes) => Box::new(
                nodes
                    .iter()
                    .enumerate()
                    .flat_map(move |(i, &u)| nodes[i + 1..].iter().map(move |&v| (u, v))),
            ),
            PairSelection::Listed(pairs) => Box::new(pairs.iter().copied()),
        }
    }

    pub fn to_vec(&self) -> Vec<(NodeId, NodeId)> {
        self.iter().collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TooManyPairs {
    pub pairs: u64,
    pub limit: u64,
}

pub fn pair_count(n: usize) -> u64 {
    let n = n as u64;
    n * n.saturating_sub(1) / 2
}

pub fn non_isolated(g: &Graph) -> Vec<NodeId> {
    g.nodes().filter(|&v| !g.neighbors(v).is_empty()).collect()
}

/// Applies `policy` to the non-isolated nodes of `g`. A sample at least as
/// large as the pair count degrades to all pairs.
pub fn select_pairs(g: &Graph, policy: PairPolicy, seed: u64, max_pairs: u64) -> Result<PairSelection, TooManyPairs> {
    let nodes = non_isolated(g);
    let total = pair_count(nodes.len());
    match policy {
        PairPolicy::None => Ok(PairSelection::Listed(Vec::new())),
        PairPolicy::All => {
            if total > max_pairs {
                return Err(TooManyPairs {
                    pairs: total,
                    limit: max_pairs,
                });
            }
            Ok(PairSelection::All(nodes))
        }
        PairPolicy::Sample(amount) if amount as u64 >= total => Ok(PairSelection::All(nodes)),
        PairPolicy::Sample(amount) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut picked: Vec<u64> = rand::seq::index::sample(&mut rng, total as usize, amount)
                .into_iter()
                .map(|i| i as u64)
                .collect();
            picked.sort_unstable();
            let m = nodes.len() as u64;
            let pairs = picked
                .into_iter()
                .map(|p| {
                    let (i, j) = unrank(p, m);
                    (nodes[i as usize], nodes[j as usize])
                })
                .collect();
            Ok(PairSelection::Listed(pairs))
        }
    }
}

/// Inverse of the row-major ranking of pairs `i < j < m`.
fn unrank(p: u64, m: u64) -> (u64, u64) {
    // Row i starts at i*m - i*(i+1)/2.
    let start = |i: u64| i * m - i * (i + 1) / 2;
    let b = 2.0 * m as f64 - 1.0;
    let mut i = ((b - (b * b - 8.0 * p as f64).max(0.0).sqrt()) / 2.0).floor() as u64;
    i = i.min(m.saturating_sub(2));
    while i > 0 && start(i) > p {
        i -= 1;
    }
    while start(i + 1) <= p {
        i += 1;
    }
    (i, i + 1 + p - start(i))
}
