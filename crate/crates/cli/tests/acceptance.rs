//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the report always reaches stdout.
//! Expected values come from the brute-force oracles in the shared test
//! support module, never from the code under test.

#[path = "../../core/tests/support/mod.rs"]
mod support;

use std::collections::BTreeSet;
use std::fs;
use std::panic::{self, AssertUnwindSafe};
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use coreconn::flowconn::{flow_equivalent_tree, global_edge_connectivity, strict_k_components, wide_k_components};
use coreconn::metrics::coverage;
use coreconn::*;
use support::*;

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome {
            pass,
            detail: detail.into(),
        }
    }
}

fn timed<F: FnOnce() -> Outcome>(limit: Option<Duration>, f: F) -> Outcome {
    let start = Instant::now();
    let mut out = f();
    let spent = start.elapsed();
    out.detail = format!("{} [{:.2} s]", out.detail, spent.as_secs_f64());
    if let Some(limit) = limit {
        if spent > limit {
            out.pass = false;
            out.detail = format!("{} exceeds {} s", out.detail, limit.as_secs());
        }
    }
    out
}

fn membership(g: &Graph, d: &CoreDecomposition, mode: Mode) -> Membership {
    extend_shell_one(g, d, core_connected(g, d, mode))
}

fn mask(n: usize, keep: impl Fn(NodeId) -> bool) -> Vec<bool> {
    (0..n).map(keep).collect()
}

// 1. Decomposition matches repeated naive peeling.
fn decomposition_oracle() -> Outcome {
    let mut mismatches = 0;
    for seed in 0..200u64 {
        let n = 10 + (seed as usize * 37) % 191;
        let g = if seed % 2 == 0 {
            let p = [0.01, 0.03, 0.06, 0.12, 0.25][(seed / 2) as usize % 5];
            generators::erdos_renyi(n, p, seed)
        } else {
            generators::barabasi_albert_varying(n, &[1, 2, 3, 4, 5], seed)
        };
        if core_decompose(&g).shell_indices() != naive_shell_indices(&g).as_slice() {
            mismatches += 1;
        }
    }
    Outcome::new(mismatches == 0, format!("200 graphs, {mismatches} mismatches"))
}

/// Seeded graphs with n <= 150 and e <= 600. Half use a dense core with a
/// preferential periphery so that C and D are non-trivial.
fn soundness_corpus() -> Vec<Graph> {
    (0..100u64)
        .map(|seed| {
            let n = 40 + (seed as usize * 13) % 111;
            let g = match seed % 4 {
                0 => generators::gnm(n, 3 * n, seed),
                1 => generators::barabasi_albert_varying(n, &[1, 2, 3], seed),
                _ => generators::core_periphery(n, 8 + seed as usize % 10, 0.6, &[1, 2, 3, 4], seed),
            };
            assert!(g.node_count() <= 150 && g.edge_count() <= 600, "corpus graph {seed} too large");
            g
        })
        .collect()
}

/// Minimum max-flow from the first node of `nodes` to every other one,
/// within `region`. By λ(u, v) >= min(λ(u, s), λ(s, v)) this bounds every
/// pair.
fn weakest_link(g: &Graph, nodes: &[NodeId], region: &[bool]) -> Option<usize> {
    let (&s, rest) = nodes.split_first()?;
    rest.iter().map(|&t| dense_max_flow(g, s, t, region)).min()
}

// 2. Strict: pairs of C ∩ C_k are k-connected inside G(C ∩ C_k).
fn strict_soundness(corpus: &[Graph]) -> Outcome {
    let (mut violations, mut levels, mut certified) = (0, 0, 0);
    for g in corpus {
        let d = core_decompose(g);
        let m = membership(g, &d, Mode::Strict);
        certified += m.count(Class::C);
        let n = g.node_count();
        for k in 2..=d.k_max() {
            let nodes: Vec<NodeId> = (0..n).filter(|&v| m.in_c(v) && d.shell_index(v) >= k).collect();
            let region = mask(n, |v| m.in_c(v) && d.shell_index(v) >= k);
            if let Some(flow) = weakest_link(g, &nodes, &region) {
                levels += 1;
                violations += usize::from(flow < k);
            }
        }
    }
    Outcome::new(
        violations == 0 && levels > 0,
        format!("100 graphs, {certified} C nodes, {levels} levels checked, {violations} violations"),
    )
}

// 3. Wide: C ∩ C_k and the D nodes certified at k are k-connected in G(C_k).
fn wide_soundness(corpus: &[Graph]) -> Outcome {
    let (mut violations, mut levels, mut d_nodes) = (0, 0, 0);
    for g in corpus {
        let d = core_decompose(g);
        let m = membership(g, &d, Mode::Wide);
        d_nodes += m.count(Class::D);
        let n = g.node_count();
        for k in 2..=d.k_max() {
            let mut nodes: Vec<NodeId> = (0..n).filter(|&v| m.in_c(v) && d.shell_index(v) >= k).collect();
            if nodes.is_empty() {
                continue;
            }
            nodes.extend((0..n).filter(|&v| m.class(v) == Class::D && m.guarantee(v) >= k));
            let region = mask(n, |v| d.shell_index(v) >= k);
            if let Some(flow) = weakest_link(g, &nodes, &region) {
                levels += 1;
                violations += usize::from(flow < k);
            }
        }
    }
    Outcome::new(
        violations == 0 && levels > 0 && d_nodes > 0,
        format!("100 graphs, {d_nodes} D nodes, {levels} levels checked, {violations} violations"),
    )
}

// 4. Cut statements on every admissible (C, Q) pair and every cut.
fn cut_statements() -> Outcome {
    let mut failures = Vec::new();
    let mut cuts = 0;
    let mut graphs = 0;
    for n in 2..=5 {
        for g in all_graphs(n) {
            cuts += admissible_pairs(&bit_adjacency(&g))
                .map(|ctx| check_cut_statements(&ctx, &mut failures))
                .sum::<u64>();
            graphs += 1;
        }
    }
    let mut random = 0;
    let mut seed = 0u64;
    while random < 500 {
        seed += 1;
        let n = 6 + seed as usize % 3;
        let p = [0.35, 0.5, 0.65, 0.8][seed as usize % 4];
        let g = generators::erdos_renyi(n, p, seed);
        if !is_connected(&g) {
            continue;
        }
        cuts += admissible_pairs(&bit_adjacency(&g))
            .map(|ctx| check_cut_statements(&ctx, &mut failures))
            .sum::<u64>();
        random += 1;
    }
    let first = failures.first().map(|f| format!("; first: {f:?}")).unwrap_or_default();
    Outcome::new(
        failures.is_empty(),
        format!(
            "{graphs} exhaustive + {random} random graphs, {cuts} cuts, {} failures{first}",
            failures.len()
        ),
    )
}

// 5. Diameter-2 graphs have edge connectivity equal to minimum degree.
fn diameter_two_connectivity() -> Outcome {
    let (mut checked, mut bad, mut seed) = (0, 0, 0u64);
    while checked < 50 && seed < 10_000 {
        seed += 1;
        let n = 8 + seed as usize % 53;
        let g = generators::erdos_renyi(n, 0.3 + 0.1 * (seed % 4) as f64, seed);
        if diameter(&g) != Some(2) {
            continue;
        }
        let delta = g.nodes().map(|v| g.neighbors(v).len()).min().unwrap();
        let all = vec![true; n];
        let oracle = (1..n).map(|t| dense_max_flow(&g, 0, t, &all)).min().unwrap();
        let library = global_edge_connectivity(&g, &NodeSet::full(n));
        if oracle != delta || library != Some(delta) {
            bad += 1;
        }
        checked += 1;
    }
    Outcome::new(checked == 50 && bad == 0, format!("{checked} graphs, {bad} mismatches"))
}

// 6. Flow-equivalent tree values equal direct max-flow for all pairs.
fn gomory_hu() -> Outcome {
    let (mut pairs, mut bad) = (0, 0);
    for seed in 0..30u64 {
        let n = 10 + seed as usize;
        let g = match seed % 3 {
            0 => generators::erdos_renyi(n, 0.2, seed),
            1 => generators::barabasi_albert_varying(n, &[1, 2, 3, 4], seed),
            _ => generators::gnm(n, 3 * n, seed),
        };
        let tree = flow_equivalent_tree(&g, &NodeSet::full(n));
        let all = vec![true; n];
        for (u, v) in all_pairs(n) {
            pairs += 1;
            if tree.value(u, v) != Some(dense_max_flow(&g, u, v, &all)) {
                bad += 1;
            }
        }
    }
    Outcome::new(bad == 0, format!("30 graphs, {pairs} pairs, {bad} mismatches"))
}

// 7. Strict and wide k-components coincide for k in {1, 2}.
fn small_k_components() -> Outcome {
    let mut bad = 0;
    for seed in 0..100u64 {
        let n = 10 + (seed as usize * 7) % 71;
        let g = match seed % 2 {
            0 => generators::erdos_renyi(n, 2.5 / n as f64, seed),
            _ => generators::gnm(n, n + n / 2, seed),
        };
        for k in 1..=2 {
            if strict_k_components(&g, k) != wide_k_components(&g, k) {
                bad += 1;
            }
        }
    }
    Outcome::new(bad == 0, format!("100 graphs, {bad} mismatches"))
}

// 8. W12 end to end, through the library and the binary.
fn w12_end_to_end() -> Outcome {
    let g = w12();
    let d = core_decompose(&g);
    let label_set = |set: NodeSet| -> BTreeSet<String> { set.iter().map(|v| g.label(v).to_string()).collect() };
    let expect = |labels: &[&str]| -> BTreeSet<String> { labels.iter().map(|s| s.to_string()).collect() };
    let c6 = ["c1", "c2", "c3", "c4", "c5", "c6"];
    let ys = ["y1", "y2", "y3", "y4", "y5"];
    let mut problems = Vec::new();

    let strict = membership(&g, &d, Mode::Strict);
    if label_set(strict.c_set()) != expect(&c6) {
        problems.push("strict C".to_string());
    }
    let wide = membership(&g, &d, Mode::Wide);
    let mut c7 = c6.to_vec();
    c7.push("z");
    if label_set(wide.c_set()) != expect(&c7) {
        problems.push("wide C".to_string());
    }
    if label_set(wide.d_set()) != expect(&ys) || ys.iter().any(|y| wide.guarantee(id(&g, y)) != 2) {
        problems.push("wide D".to_string());
    }
    let cov = coverage(&d, &wide).expect("W12 has shells");
    for (name, got, want) in [
        ("alpha", cov.alpha, 0.4),
        ("beta", cov.beta, 14.0 / 30.0),
        ("gamma", cov.gamma, 7.0 / 12.0),
    ] {
        if (got - want).abs() > 1e-12 {
            problems.push(format!("{name} = {got}"));
        }
    }
    let all = vec![true; g.node_count()];
    for (u, v, want) in [("c1", "c2", 5), ("z", "c1", 2), ("y5", "c3", 2)] {
        let (u, v) = (id(&g, u), id(&g, v));
        let bound = pair_lower_bound(&wide, u, v).unwrap();
        let exact = dense_max_flow(&g, u, v, &all);
        if bound != want || bound > exact {
            problems.push(format!("bound {u}-{v} = {bound}, exact {exact}"));
        }
    }

    let dir = tempfile::TempDir::new().unwrap();
    let input = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/w12.edges");
    let status = run_cli(dir.path(), "connect", &input, &["--mode", "wide"]).0;
    let tsv = fs::read_to_string(dir.path().join("membership.tsv")).unwrap_or_default();
    let count = |class: &str| tsv.lines().filter(|l| l.split('\t').nth(2) == Some(class)).count();
    if !status || count("C") != 7 || count("D") != 5 {
        problems.push("cli membership".to_string());
    }

    let detail = if problems.is_empty() {
        "strict C, wide C/D, metrics, pair bounds and CLI rows match".to_string()
    } else {
        problems.join("; ")
    };
    Outcome::new(problems.is_empty(), detail)
}

// 9. bound <= through-core <= exact for sampled pairs inside C.
fn bound_ordering(corpus: &[Graph]) -> Outcome {
    let (mut pairs, mut bad) = (0, 0);
    for (i, g) in corpus.iter().enumerate() {
        let d = core_decompose(g);
        let n = g.node_count();
        let all = vec![true; n];
        for mode in [Mode::Strict, Mode::Wide] {
            let m = membership(g, &d, mode);
            let c: Vec<NodeId> = m.c_set().iter().collect();
            // Deterministic stride sample of at most ~40 pairs.
            let candidates: Vec<(NodeId, NodeId)> = c
                .iter()
                .enumerate()
                .flat_map(|(a, &u)| c[a + 1..].iter().map(move |&v| (u, v)))
                .collect();
            let stride = (candidates.len() / 40).max(1);
            for &(u, v) in candidates.iter().skip(i % stride).step_by(stride) {
                let bound = pair_lower_bound(&m, u, v).unwrap();
                let k = d.shell_index(u).min(d.shell_index(v));
                let core = mask(n, |x| d.shell_index(x) >= k);
                let through_core = dense_max_flow(g, u, v, &core);
                let exact = dense_max_flow(g, u, v, &all);
                pairs += 1;
                if !(bound <= through_core && through_core <= exact) {
                    bad += 1;
                }
            }
        }
    }
    Outcome::new(bad == 0 && pairs > 0, format!("{pairs} pairs, {bad} violations"))
}

// 10. Decomposition plus strict construction on a ~10^6-edge graph.
fn performance_smoke() -> Outcome {
    let g = generators::barabasi_albert_varying(222_223, &[1, 2, 3, 4, 5, 6, 7, 8], 7);
    let start = Instant::now();
    let d = core_decompose(&g);
    let m = strict_core_connected(&g, &d);
    let spent = start.elapsed();
    let e = g.edge_count() as u64;
    let touches = m.stats().edge_touches;
    Outcome::new(
        spent < Duration::from_secs(30) && touches <= 5 * e,
        format!(
            "e = {e}, k_max = {}, |C| = {}, touches = {touches} ({:.2} per edge), decompose + strict {:.2} s",
            d.k_max(),
            m.count(Class::C),
            touches as f64 / e as f64,
            spent.as_secs_f64()
        ),
    )
}

fn run_cli(out: &Path, cmd: &str, input: &Path, extra: &[&str]) -> (bool, Vec<u8>) {
    let mut args = vec![cmd, input.to_str().unwrap(), "-o", out.to_str().unwrap()];
    args.extend_from_slice(extra);
    let output = Command::new(env!("CARGO_BIN_EXE_coreconn"))
        .args(&args)
        .output()
        .expect("spawn coreconn");
    (output.status.success(), output.stdout)
}

// 11. Every command produces byte-identical output across runs.
fn determinism() -> Outcome {
    let work = tempfile::TempDir::new().unwrap();
    let g = generators::core_periphery(500, 14, 0.6, &[1, 2, 3], 11);
    let input = work.path().join("g.edges");
    let body: String = g.edges().map(|(u, v)| format!("{} {}\n", g.label(u), g.label(v))).collect();
    fs::write(&input, body).unwrap();
    let commands: [(&str, &[&str]); 8] = [
        ("decompose", &[]),
        ("connect", &["-m", "strict"]),
        ("connect", &["-m", "wide"]),
        ("bounds", &["-m", "wide", "--pairs", "sample:500", "--seed", "3"]),
        ("bounds", &["--pairs", "sample:200", "--exact"]),
        ("metrics", &["-m", "wide"]),
        ("validate", &["-m", "wide", "--pairs", "sample:100"]),
        ("render", &["-m", "wide"]),
    ];
    let mut differing = Vec::new();
    for (cmd, extra) in commands {
        let a = tempfile::TempDir::new().unwrap();
        let b = tempfile::TempDir::new().unwrap();
        let (ok_a, out_a) = run_cli(a.path(), cmd, &input, extra);
        let (ok_b, out_b) = run_cli(b.path(), cmd, &input, extra);
        let files = |dir: &Path| -> Vec<(String, Vec<u8>)> {
            let mut entries: Vec<_> = fs::read_dir(dir)
                .unwrap()
                .map(|e| {
                    let e = e.unwrap();
                    (e.file_name().to_string_lossy().into_owned(), fs::read(e.path()).unwrap())
                })
                .collect();
            entries.sort();
            entries
        };
        let fa = files(a.path());
        if !(ok_a && ok_b) || out_a != out_b || fa != files(b.path()) || fa.is_empty() {
            differing.push(format!("{cmd} {}", extra.join(" ")));
        }
    }
    let detail = if differing.is_empty() {
        format!("{} command runs repeated, outputs identical", commands.len())
    } else {
        format!("differing or failing: {}", differing.join(", "))
    };
    Outcome::new(differing.is_empty(), detail)
}

fn main() -> ExitCode {
    let corpus = soundness_corpus();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("decomposition oracle", Box::new(|| timed(Some(Duration::from_secs(10)), decomposition_oracle))),
        ("strict soundness", Box::new(|| timed(None, || strict_soundness(&corpus)))),
        ("wide soundness", Box::new(|| timed(None, || wide_soundness(&corpus)))),
        ("cut statements", Box::new(|| timed(Some(Duration::from_secs(60)), cut_statements))),
        ("diameter-2 connectivity", Box::new(|| timed(None, diameter_two_connectivity))),
        ("flow-equivalent tree", Box::new(|| timed(None, gomory_hu))),
        ("k-components for k <= 2", Box::new(|| timed(None, small_k_components))),
        ("W12 end to end", Box::new(|| timed(None, w12_end_to_end))),
        ("bound ordering", Box::new(|| timed(None, || bound_ordering(&corpus)))),
        ("performance smoke", Box::new(|| timed(None, performance_smoke))),
        ("CLI determinism", Box::new(|| timed(None, determinism))),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|_| Outcome::new(false, "panicked"));
        let verdict = if outcome.pass { "PASS" } else { "FAIL" };
        failed += usize::from(!outcome.pass);
        println!("criterion {:>2}  {verdict}  {name}: {}", i + 1, outcome.detail);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
