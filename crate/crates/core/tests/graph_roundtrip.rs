//! Property tests for the graph JSON round-trip and the 2-coloring check
//! against a brute-force oracle.

use proptest::prelude::*;
use zerograph_core::{
    check_bipartite, parse_graph, serialize_graph, GraphKind, NotBipartite, OrientedGraph,
    ParsedGraph, SplitMix64,
};

fn oriented_graph_strategy() -> impl Strategy<Value = OrientedGraph> {
    (1usize..7, proptest::collection::vec((0usize..6, 0usize..5), 0..10)).prop_map(
        |(n, raw_arcs)| {
            let vertices: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
            let arcs: Vec<(String, String, String)> = raw_arcs
                .into_iter()
                .enumerate()
                .filter_map(|(k, (t, h))| {
                    let t = t % n;
                    let h = h % n;
                    if t == h {
                        None
                    } else {
                        Some((format!("e{k}"), vertices[t].clone(), vertices[h].clone()))
                    }
                })
                .collect();
            OrientedGraph::new(vertices, arcs, None).unwrap()
        },
    )
}

proptest! {
    #[test]
    fn parse_serialize_identity(g in oriented_graph_strategy()) {
        let wrapped = ParsedGraph::Oriented(g);
        let text = serialize_graph(&wrapped);
        let parsed = parse_graph(&text).unwrap();
        prop_assert_eq!(&parsed, &wrapped);
        // Serialization is canonical: a second round trip is byte-identical.
        prop_assert_eq!(serialize_graph(&parsed), text);
    }

    #[test]
    fn bipartite_check_matches_brute_force(g in oriented_graph_strategy()) {
        let n = g.vertex_count();
        prop_assume!(n <= 8);
        // Brute force: some two-coloring with both colors used and every arc
        // crossing. Mirrors the convention that a valid bipartition needs
        // two nonempty parts.
        let mut feasible = false;
        'outer: for assignment in 0u32..(1 << n) {
            if assignment == 0 || assignment == (1 << n) - 1 {
                continue;
            }
            for a in g.arcs() {
                if (assignment >> a.tail()) & 1 == (assignment >> a.head()) & 1 {
                    continue 'outer;
                }
            }
            feasible = true;
            break;
        }
        match check_bipartite(&g) {
            Ok(bp) => {
                prop_assert!(feasible);
                g.bipartition_sides(&bp).unwrap();
            }
            Err(NotBipartite::OddClosedWalk(walk)) => {
                prop_assert!(!feasible);
                prop_assert_eq!(walk.first(), walk.last());
                prop_assert_eq!((walk.len() - 1) % 2, 1);
                for w in walk.windows(2) {
                    let a = g.vertex_position(&w[0]).unwrap();
                    let b = g.vertex_position(&w[1]).unwrap();
                    let adjacent = g.arcs().iter().any(|arc| {
                        (arc.tail() == a && arc.head() == b)
                            || (arc.tail() == b && arc.head() == a)
                    });
                    prop_assert!(adjacent, "walk step {:?} not an edge", w);
                }
            }
            Err(NotBipartite::SingleVertex) => {
                prop_assert_eq!(n, 1);
                prop_assert!(!feasible);
            }
        }
    }
}

#[test]
fn random_graphs_round_trip_through_json() {
    let mut rng = SplitMix64::new(0x1234_5678);
    for kind in [
        GraphKind::Oriented,
        GraphKind::SimpleUndirected,
        GraphKind::BipartiteUndirected,
    ] {
        for _ in 0..20 {
            let n = 2 + rng.next_below(6);
            let cap = match kind {
                GraphKind::Oriented => 10,
                GraphKind::SimpleUndirected => n * (n - 1) / 2,
                GraphKind::BipartiteUndirected => n.div_ceil(2) * (n / 2),
            };
            let m = rng.next_below(cap + 1);
            let g = zerograph_core::random_graph(kind, n, m, rng.next_u64()).unwrap();
            let text = serialize_graph(&g);
            assert_eq!(parse_graph(&text).unwrap(), g);
        }
    }
}
