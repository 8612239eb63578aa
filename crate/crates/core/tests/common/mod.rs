#![allow(dead_code)]

use proptest::collection::vec;
use proptest::prelude::*;
use topoindex::{Graph, Kernel};

/// Uniformly random labelled graph on at most `max_n` vertices.
pub fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(move |bits| {
            let slots = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            let edges = slots.zip(bits).filter(|&(_, b)| b).map(|(e, _)| e);
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

/// A graph together with a permutation of its vertices.
pub fn arb_graph_with_perm(max_n: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    arb_graph(max_n).prop_flat_map(|g| {
        let perm = Just((0..g.order()).collect::<Vec<_>>()).prop_shuffle();
        (Just(g), perm)
    })
}

pub fn builtin_kernels() -> Vec<Kernel> {
    let mut ks = vec![Kernel::Randic, Kernel::ZagrebFirst, Kernel::ZagrebSecond];
    for a in [-1.5, -1.0, -0.75, -0.5, -0.25, 0.0, 0.5, 1.0, 2.0] {
        ks.push(Kernel::general_randic(a).unwrap());
    }
    ks
}
