//! Coverage statistics of a core-connected set over the shell hierarchy,
//! and comparisons of certified bounds with exact connectivity.

use std::collections::HashMap;

use crate::coreconnect::{pair_lower_bound, Membership};
use crate::coredecomp::CoreDecomposition;
use crate::error::{Error, Result};
use crate::flowconn::FlowOracle;
use crate::graph::{Graph, NodeId, NodeSet};

/// Per-shell fraction of nodes in `C` and its three aggregates.
///
/// `rho[k - 1]` is the fraction for shell `k`. `D` nodes are not in `C`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoverageMetrics {
    pub rho: Vec<f64>,
    /// Unweighted mean of `rho`.
    pub alpha: f64,
    /// Mean of `rho` weighted by shell index.
    pub beta: f64,
    /// Fraction of non-isolated nodes in `C`.
    pub gamma: f64,
    /// `|S_k|` for `k = 0..=k_max`.
    pub shell_sizes: Vec<usize>,
    pub c_size: usize,
}

pub fn coverage(d: &CoreDecomposition, m: &Membership) -> Result<CoverageMetrics> {
    let k_max = d.k_max();
    if k_max == 0 {
        return Err(Error::NoShells);
    }
    let shell_sizes: Vec<usize> = (0..=k_max).map(|k| d.shell(k).len()).collect();
    let in_c: Vec<usize> = (0..=k_max)
        .map(|k| d.shell(k).iter().filter(|&&v| m.in_c(v)).count())
        .collect();
    let rho: Vec<f64> = (1..=k_max)
        .map(|k| match shell_sizes[k] {
            0 => 0.0,
            size => in_c[k] as f64 / size as f64,
        })
        .collect();
    let kf = k_max as f64;
    let alpha = rho.iter().sum::<f64>() / kf;
    let weighted: f64 = rho.iter().enumerate().map(|(i, r)| r * (i + 1) as f64).sum();
    let beta = 2.0 * weighted / (kf * (kf + 1.0));
    let covered: usize = in_c[1..].iter().sum();
    let population: usize = shell_sizes[1..].iter().sum();
    let gamma = covered as f64 / population as f64;
    Ok(CoverageMetrics {
        rho,
        alpha,
        beta,
        gamma,
        shell_sizes,
        c_size: m.count(crate::coreconnect::Class::C),
    })
}

/// `Σ ρ_k |S_k| / |C|` taken literally. Equal to 1 whenever `C` is a
/// non-empty subset of the non-isolated nodes; `None` when `C` is empty.
pub fn literal_gamma(metrics: &CoverageMetrics) -> Option<f64> {
    if metrics.c_size == 0 {
        return None;
    }
    let sum: f64 = metrics
        .rho
        .iter()
        .enumerate()
        .map(|(i, r)| r * metrics.shell_sizes[i + 1] as f64)
        .sum();
    Some(sum / metrics.c_size as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct HistogramBin {
    /// Minimum shell index of the pair's endpoints.
    pub k: usize,
    pub both_in_c: u64,
    pub other: u64,
}

impl HistogramBin {
    pub fn total(&self) -> u64 {
        self.both_in_c + self.other
    }
}

fn pairs(n: u64) -> u64 {
    n * n.saturating_sub(1) / 2
}

/// Unordered pairs binned by the smaller shell index of their endpoints,
/// for `k = 0..=k_max`. Counted from cumulative shell sizes in O(n).
pub fn pair_histogram(d: &CoreDecomposition, m: &Membership) -> Vec<HistogramBin> {
    let k_max = d.k_max();
    // at_least[k]: nodes with shell >= k; c_at_least likewise within C.
    let mut at_least = vec![0u64; k_max + 2];
    let mut c_at_least = vec![0u64; k_max + 2];
    for k in (0..=k_max).rev() {
        let shell = d.shell(k);
        at_least[k] = at_least[k + 1] + shell.len() as u64;
        c_at_least[k] = c_at_least[k + 1] + shell.iter().filter(|&&v| m.in_c(v)).count() as u64;
    }
    (0..=k_max)
        .map(|k| {
            let total = pairs(at_least[k]) - pairs(at_least[k + 1]);
            let both = pairs(c_at_least[k]) - pairs(c_at_least[k + 1]);
            HistogramBin {
                k,
                both_in_c: both,
                other: total - both,
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairRecord {
    pub u: NodeId,
    pub v: NodeId,
    pub min_shell: usize,
    pub bound: usize,
    /// Connectivity in the whole graph.
    pub exact: usize,
    /// Connectivity inside the `min_shell`-core; `None` if an endpoint is
    /// isolated.
    pub through_core: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct MeanStd {
    pub mean: f64,
    /// Population standard deviation.
    pub std: f64,
}

impl MeanStd {
    fn of(values: impl Iterator<Item = f64> + Clone) -> Self {
        let n = values.clone().count();
        if n == 0 {
            return MeanStd::default();
        }
        let mean = values.clone().sum::<f64>() / n as f64;
        let var = values.map(|x| (x - mean).powi(2)).sum::<f64>() / n as f64;
        MeanStd { mean, std: var.sqrt() }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShellAggregate {
    pub k: usize,
    pub pairs: usize,
    pub bound: MeanStd,
    pub exact: MeanStd,
    pub through_core: MeanStd,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub records: Vec<PairRecord>,
    /// One entry per minimum shell index that occurs among the pairs.
    pub by_shell: Vec<ShellAggregate>,
}

/// Evaluates each pair's certified bound against exact max-flow values.
/// Refuses graphs with more than `node_limit` nodes.
pub fn bound_vs_exact(
    g: &Graph,
    d: &CoreDecomposition,
    m: &Membership,
    sample: &[(NodeId, NodeId)],
    node_limit: usize,
) -> Result<BoundReport> {
    if g.node_count() > node_limit {
        return Err(Error::Guard {
            nodes: g.node_count(),
            limit: node_limit,
        });
    }
    let all = NodeSet::full(g.node_count());
    let mut whole = FlowOracle::new(g, &all);
    let mut cores: HashMap<usize, FlowOracle> = HashMap::new();
    let mut records = Vec::with_capacity(sample.len());
    for &(u, v) in sample {
        let bound = pair_lower_bound(m, u, v)?;
        let exact = whole.connectivity(u, v)?;
        let min_shell = d.shell_index(u).min(d.shell_index(v));
        let through_core = if min_shell == 0 {
            None
        } else {
            let oracle = cores
                .entry(min_shell)
                .or_insert_with(|| FlowOracle::new(g, &d.core(min_shell)));
            Some(oracle.connectivity(u, v)?)
        };
        records.push(PairRecord {
            u,
            v,
            min_shell,
            bound,
            exact,
            through_core,
        });
    }
    let mut shells: Vec<usize> = records.iter().map(|r| r.min_shell).collect();
    shells.sort_unstable();
    shells.dedup();
    let by_shell = shells
        .into_iter()
        .map(|k| {
            let group: Vec<&PairRecord> = records.iter().filter(|r| r.min_shell == k).collect();
            let it = group.iter();
            ShellAggregate {
                k,
                pairs: group.len(),
                bound: MeanStd::of(it.clone().map(|r| r.bound as f64)),
                exact: MeanStd::of(it.clone().map(|r| r.exact as f64)),
                through_core: MeanStd::of(it.filter_map(|r| r.through_core).map(|x| x as f64)),
            }
        })
        .collect();
    Ok(BoundReport { records, by_shell })
}
