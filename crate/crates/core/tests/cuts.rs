//! Exhaustive cut checks on small graphs.

mod support;

use coreconn::generators;
use support::*;

fn check_graph(g: &coreconn::Graph, failures: &mut Vec<Failure>) -> u64 {
    let adj = bit_adjacency(g);
    admissible_pairs(&adj).map(|ctx| check_cut_statements(&ctx, failures)).sum()
}

#[test]
fn cut_statements_hold_on_all_graphs_up_to_five_nodes() {
    let mut failures = Vec::new();
    let mut cuts = 0;
    for n in 2..=5 {
        for g in all_graphs(n) {
            cuts += check_graph(&g, &mut failures);
        }
    }
    assert!(cuts > 0);
    assert!(failures.is_empty(), "{:?}", &failures[..failures.len().min(5)]);
}

#[test]
fn cut_statements_hold_on_random_graphs() {
    let mut failures = Vec::new();
    for seed in 0..40 {
        let n = 5 + (seed as usize % 3);
        let p = [0.3, 0.5, 0.7][seed as usize % 3];
        let g = generators::erdos_renyi(n, p, seed);
        check_graph(&g, &mut failures);
    }
    assert!(failures.is_empty(), "{:?}", &failures[..failures.len().min(5)]);
}

#[test]
fn single_cut_around_complete_base() {
    // K5 base with one pendant-like node joined by two edges: the only cut
    // keeping C together is {6}, of size 2.
    let g = k5w();
    let adj = bit_adjacency(&g);
    let c = (0..5).fold(0u32, |m, v| m | 1 << v);
    let ctx = Contracted::new(&adj, c, 1 << 5);
    let mut failures = Vec::new();
    assert_eq!(check_cut_statements(&ctx, &mut failures), 1);
    assert!(failures.is_empty());
}
