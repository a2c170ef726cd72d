//! Construction of core-connected node sets.
//!
//! Both algorithms walk the shells from the top down. A seed cluster of
//! contracted diameter at most 2 starts `C`; each later shell's clusters are
//! adjoined when the expansion test certifies that the union stays
//! k-edge-connected. The wide variant keeps skipped clusters in a pool and
//! may adjoin them later to an auxiliary set `D` at a lower `k`, which gives
//! more paths to the clusters of the following shells.
//!
//! Scans are deterministic: candidates are tried in ascending
//! `(shell, smallest node)` order, and each join phase repeats until a full
//! pass adjoins nothing. A repeat pass only re-evaluates candidates whose
//! inputs changed (adjacent to a newly joined node, or previously rejected on
//! the degree bound); the others would give the same answer.

use std::collections::HashMap;
use std::fmt;

use crate::coredecomp::{ClusterId, CoreDecomposition};
use crate::error::{Error, Result};
use crate::expansion::{Admission, Base, ExpansionContext, LocalGraph, Rejection};
use crate::graph::{Graph, Label, NodeId, NodeSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Strict,
    Wide,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Strict => "strict",
            Mode::Wide => "wide",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Class {
    C,
    D,
    White,
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Class::C => "C",
            Class::D => "D",
            Class::White => "white",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Action {
    Seed,
    JoinC,
    JoinD,
    Reject,
    Shell1Extend,
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Action::Seed => "seed",
            Action::JoinC => "join-C",
            Action::JoinD => "join-D",
            Action::Reject => "reject",
            Action::Shell1Extend => "shell1-extend",
        })
    }
}

/// Why a trace entry happened.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Reason {
    /// Seed cluster: diameter at most 2 and k-edge-connected on its own.
    SeedDiameter,
    /// Seed candidate whose own diameter exceeds 2.
    SeedTooWide,
    /// Seed candidate with diameter at most 2 but minimum internal degree
    /// below its shell index.
    SeedTooSparse { min_degree: usize },
    /// Not examined: another cluster of the same shell became the seed.
    SeedShellClosed,
    /// Outcome of the expansion test.
    Expansion(Admission),
    /// Shell-1 cluster attached to the certified set.
    Attached,
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Reason::SeedDiameter => f.write_str("seed:diameter<=2"),
            Reason::SeedTooWide => f.write_str("seed:diameter>2"),
            Reason::SeedTooSparse { min_degree } => write!(f, "seed:min-degree={min_degree}"),
            Reason::SeedShellClosed => f.write_str("seed-shell-closed"),
            Reason::Expansion(a) => write!(f, "{a}"),
            Reason::Attached => f.write_str("attached"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TraceEntry {
    pub cluster: ClusterId,
    pub action: Action,
    pub k: usize,
    pub reason: Reason,
}

/// Work counters for the complexity checks.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RunStats {
    /// Cluster evaluations (seed checks plus expansion tests).
    pub evaluations: u64,
    /// Adjacency entries read while evaluating clusters.
    pub edge_touches: u64,
    /// Outer iterations (distinct k values visited).
    pub levels: u64,
    /// Largest number of evaluations of any single cluster.
    pub max_evaluations_per_cluster: u64,
}

#[derive(Debug, Clone)]
pub struct Membership {
    mode: Mode,
    class: Vec<Class>,
    guarantee: Vec<usize>,
    trace: Vec<TraceEntry>,
    stats: RunStats,
}

impl Membership {
    fn all_white(n: usize, mode: Mode) -> Self {
        Membership {
            mode,
            class: vec![Class::White; n],
            guarantee: vec![0; n],
            trace: Vec::new(),
            stats: RunStats::default(),
        }
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn node_count(&self) -> usize {
        self.class.len()
    }

    pub fn class(&self, v: NodeId) -> Class {
        self.class[v]
    }

    pub fn classes(&self) -> &[Class] {
        &self.class
    }

    /// Certified edge-connectivity level of `v`: its shell index for `C`
    /// nodes, the adjunction level for `D` nodes, 0 for white nodes.
    pub fn guarantee(&self, v: NodeId) -> usize {
        self.guarantee[v]
    }

    pub fn trace(&self) -> &[TraceEntry] {
        &self.trace
    }

    pub fn stats(&self) -> RunStats {
        self.stats
    }

    pub fn in_c(&self, v: NodeId) -> bool {
        self.class[v] == Class::C
    }

    pub fn c_set(&self) -> NodeSet {
        NodeSet::from_mask(self.class.iter().map(|&c| c == Class::C).collect())
    }

    pub fn d_set(&self) -> NodeSet {
        NodeSet::from_mask(self.class.iter().map(|&c| c == Class::D).collect())
    }

    pub fn count(&self, class: Class) -> usize {
        self.class.iter().filter(|&&c| c == class).count()
    }
}

/// Core-connected set in the strict sense.
pub fn strict_core_connected(g: &Graph, d: &CoreDecomposition) -> Membership {
    Run::new(g, d, Mode::Strict).execute()
}

/// Core-connected set in the wide sense, with the auxiliary `D` set.
pub fn wide_core_connected(g: &Graph, d: &CoreDecomposition) -> Membership {
    Run::new(g, d, Mode::Wide).execute()
}

pub fn core_connected(g: &Graph, d: &CoreDecomposition, mode: Mode) -> Membership {
    Run::new(g, d, mode).execute()
}

struct Run<'a> {
    g: &'a Graph,
    d: &'a CoreDecomposition,
    mode: Mode,
    out: Membership,
    /// `C` in strict mode, `C ∪ D` in wide mode.
    base: Base,
    evaluations: HashMap<ClusterId, u64>,
}

impl<'a> Run<'a> {
    fn new(g: &'a Graph, d: &'a CoreDecomposition, mode: Mode) -> Self {
        Run {
            g,
            d,
            mode,
            out: Membership::all_white(g.node_count(), mode),
            base: Base::new(g.node_count()),
            evaluations: HashMap::new(),
        }
    }

    fn log(&mut self, cluster: ClusterId, action: Action, k: usize, reason: Reason) {
        self.out.trace.push(TraceEntry {
            cluster,
            action,
            k,
            reason,
        });
    }

    fn count_evaluation(&mut self, id: ClusterId, touches: u64) {
        self.out.stats.evaluations += 1;
        self.out.stats.edge_touches += touches;
        let e = self.evaluations.entry(id).or_insert(0);
        *e += 1;
        self.out.stats.max_evaluations_per_cluster = self.out.stats.max_evaluations_per_cluster.max(*e);
    }

    fn adjoin(&mut self, id: ClusterId, class: Class, level: usize) {
        let nodes = &self.d.cluster(id).nodes;
        for &v in nodes {
            self.out.class[v] = class;
            self.out.guarantee[v] = level;
        }
        self.base.absorb(self.g, nodes);
    }

    fn execute(mut self) -> Membership {
        let levels: Vec<usize> = (2..=self.d.k_max())
            .rev()
            .filter(|&k| !self.d.clusters_of_shell(k).is_empty())
            .collect();
        let mut pool: Vec<ClusterId> = Vec::new();
        let mut rest = levels.iter().copied();

        // Seed phase.
        let mut seeded = false;
        for k in rest.by_ref() {
            self.out.stats.levels += 1;
            let ids: Vec<ClusterId> = self.d.clusters_of_shell(k).iter().map(|c| c.id).collect();
            let mut seed = None;
            for &id in &ids {
                let reason = self.seed_check(id, k);
                if reason == Reason::SeedDiameter {
                    seed = Some(id);
                    self.adjoin(id, Class::C, k);
                    self.log(id, Action::Seed, k, reason);
                    break;
                }
                self.log(id, Action::Reject, k, reason);
            }
            for &id in &ids {
                if Some(id) == seed {
                    continue;
                }
                if self.mode == Mode::Wide {
                    pool.push(id);
                }
                if seed.is_some() && id > seed.unwrap() {
                    self.log(id, Action::Reject, k, Reason::SeedShellClosed);
                }
            }
            if seed.is_some() {
                seeded = true;
                break;
            }
        }
        if !seeded {
            return self.out;
        }

        // Expansion phase.
        for k in rest {
            self.out.stats.levels += 1;
            if self.mode == Mode::Wide && !pool.is_empty() {
                pool.sort_unstable();
                let leftover = self.join_phase(&pool, k, Class::D);
                pool = leftover;
            }
            let ids: Vec<ClusterId> = self.d.clusters_of_shell(k).iter().map(|c| c.id).collect();
            let leftover = self.join_phase(&ids, k, Class::C);
            if self.mode == Mode::Wide {
                pool.extend(leftover);
            }
        }
        self.out
    }

    /// Seed rule: diameter of `G(Q)` at most 2, and `G(Q)` k-edge-connected
    /// on its own, i.e. a single node or minimum internal degree at least k
    /// (for diameter-2 graphs edge connectivity equals minimum degree).
    fn seed_check(&mut self, id: ClusterId, k: usize) -> Reason {
        let nodes = self.d.cluster(id).nodes.clone();
        let (local, mut touches) = LocalGraph::build(self.g, nodes, |_| false);
        let reason = if !local.diameter_at_most_two(&mut touches) {
            Reason::SeedTooWide
        } else {
            let min_degree = (0..local.len()).map(|i| local.degree(i)).min().unwrap_or(0);
            if local.len() == 1 || min_degree >= k {
                Reason::SeedDiameter
            } else {
                Reason::SeedTooSparse { min_degree }
            }
        };
        self.count_evaluation(id, touches);
        reason
    }

    /// Adjoins admissible candidates at level `k` until a pass adjoins
    /// nothing. Returns the candidates left over, in input order.
    fn join_phase(&mut self, candidates: &[ClusterId], k: usize, class: Class) -> Vec<ClusterId> {
        let slot: HashMap<ClusterId, usize> = candidates.iter().enumerate().map(|(i, &id)| (id, i)).collect();
        let mut alive = vec![true; candidates.len()];
        let mut stale = vec![true; candidates.len()];
        let mut last: Vec<Option<Admission>> = vec![None; candidates.len()];
        let mut delta_rejected: Vec<usize> = Vec::new();

        loop {
            let mut joined_any = false;
            for i in 0..candidates.len() {
                if !alive[i] || !stale[i] {
                    continue;
                }
                stale[i] = false;
                let id = candidates[i];
                let (admission, touches) = {
                    let nodes = &self.d.cluster(id).nodes;
                    let ctx = ExpansionContext::new(self.g, &self.base, nodes)
                        .expect("candidate clusters are disjoint from the base");
                    let a = ctx.admissible(k);
                    (a, ctx.touches())
                };
                self.count_evaluation(id, touches);
                last[i] = Some(admission);
                if !admission.is_admitted() {
                    if matches!(admission, Admission::Rejected(Rejection::Delta { .. })) {
                        delta_rejected.push(i);
                    }
                    continue;
                }

                alive[i] = false;
                joined_any = true;
                let action = if class == Class::C { Action::JoinC } else { Action::JoinD };
                self.log(id, action, k, Reason::Expansion(admission));
                self.adjoin(id, class, k);

                for j in delta_rejected.drain(..) {
                    stale[j] = true;
                }
                for &v in &self.d.cluster(id).nodes {
                    for &w in self.g.neighbors(v) {
                        if let Some(other) = self.d.cluster_of(w) {
                            if let Some(&j) = slot.get(&other) {
                                if alive[j] {
                                    stale[j] = true;
                                }
                            }
                        }
                    }
                }
            }
            if !joined_any {
                break;
            }
        }

        let mut leftover = Vec::new();
        for (i, &id) in candidates.iter().enumerate() {
            if alive[i] {
                if let Some(a) = last[i] {
                    self.log(id, Action::Reject, k, Reason::Expansion(a));
                }
                leftover.push(id);
            }
        }
        leftover
    }
}

/// Adds every shell-1 cluster with an edge into `C` (strict) or `C ∪ D`
/// (wide) to `C` with guarantee 1. No-op when `C` is empty.
pub fn extend_shell_one(g: &Graph, d: &CoreDecomposition, mut m: Membership) -> Membership {
    if !m.class.contains(&Class::C) {
        return m;
    }
    let anchored = |m: &Membership, w: NodeId| match m.mode {
        Mode::Strict => m.class[w] == Class::C,
        Mode::Wide => m.class[w] != Class::White,
    };
    let mut attach = Vec::new();
    for cluster in d.clusters_of_shell(1) {
        let touches_set = cluster
            .nodes
            .iter()
            .any(|&v| g.neighbors(v).iter().any(|&w| anchored(&m, w)));
        if touches_set {
            attach.push(cluster.id);
        }
    }
    // Shell-1 clusters are never adjacent to each other, so attaching one
    // cannot enable another.
    for id in attach {
        for &v in &d.cluster(id).nodes {
            m.class[v] = Class::C;
            m.guarantee[v] = 1;
        }
        m.trace.push(TraceEntry {
            cluster: id,
            action: Action::Shell1Extend,
            k: 1,
            reason: Reason::Attached,
        });
    }
    m
}

/// Certified lower bound on the edge connectivity between `u` and `v`:
/// the smaller guarantee, 0 when either endpoint is white.
pub fn pair_lower_bound(m: &Membership, u: NodeId, v: NodeId) -> Result<usize> {
    if u == v {
        return Err(Error::SamePair(u));
    }
    for x in [u, v] {
        if x >= m.node_count() {
            return Err(Error::UnknownNode(x));
        }
    }
    if m.class[u] == Class::White || m.class[v] == Class::White {
        return Ok(0);
    }
    Ok(m.guarantee[u].min(m.guarantee[v]))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MemberRecord {
    pub node: NodeId,
    pub label: Label,
    pub shell: usize,
    pub class: Class,
    pub guarantee: usize,
}

/// One record per node, in label order.
pub fn membership_report(g: &Graph, d: &CoreDecomposition, m: &Membership) -> Vec<MemberRecord> {
    // Compact indices are assigned in label order.
    g.nodes()
        .map(|v| MemberRecord {
            node: v,
            label: g.label(v).clone(),
            shell: d.shell_index(v),
            class: m.class(v),
            guarantee: m.guarantee(v),
        })
        .collect()
}
