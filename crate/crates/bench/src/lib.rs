//! Shared fixtures for the benchmark suite.

use zerograph_core::{double, GraphKind, OrientedGraph, UndirectedGraph};

/// The undirected path with `k` edges, vertices `1 … k+1`.
pub fn path(k: usize) -> UndirectedGraph {
    let vertices: Vec<String> = (1..=k + 1).map(|i| i.to_string()).collect();
    let edges: Vec<(String, String, String)> = (1..=k)
        .map(|i| (format!("e{i}"), i.to_string(), (i + 1).to_string()))
        .collect();
    UndirectedGraph::new(vertices, edges, None).unwrap()
}

/// The doubled path with `k` source edges (2k arcs).
pub fn doubled_path(k: usize) -> OrientedGraph {
    double(&path(k)).unwrap().graph().clone()
}

/// A seeded random oriented multigraph.
pub fn random_oriented(n: u64, m: u64, seed: u64) -> OrientedGraph {
    zerograph_core::random_graph(GraphKind::Oriented, n, m, seed)
        .unwrap()
        .as_oriented()
        .unwrap()
        .clone()
}

/// A seeded random bipartite simple undirected graph.
pub fn random_bipartite(n: u64, m: u64, seed: u64) -> UndirectedGraph {
    zerograph_core::random_graph(GraphKind::BipartiteUndirected, n, m, seed)
        .unwrap()
        .as_undirected()
        .unwrap()
        .clone()
}
