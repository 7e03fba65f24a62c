//! Structural invariants of the subgraph families and their counting
//! polynomials, checked exhaustively at small sizes and on seeded ensembles.

use num_bigint::BigInt;
use zerograph_core::subgraph::MAX_ENUM_ARCS;
use zerograph_core::{
    check_bipartite, closed_form_oriented_unbranched, closed_form_oriented_unbranched_even,
    decompose, double, enum_family, is_unbranched, poly_family, EvenClosedFormVariant, Family,
    GraphKind, SplitMix64, Subgraph,
};

fn random_oriented(rng: &mut SplitMix64, max_edges: u64) -> zerograph_core::OrientedGraph {
    let n = 2 + rng.next_below(5);
    let m = rng.next_below(max_edges + 1);
    let seed = rng.next_u64();
    zerograph_core::random_graph(GraphKind::Oriented, n, m, seed)
        .unwrap()
        .as_oriented()
        .unwrap()
        .clone()
}

fn random_simple(rng: &mut SplitMix64, max_edges: u64) -> zerograph_core::UndirectedGraph {
    let n = 2 + rng.next_below(6);
    let pairs = n * (n - 1) / 2;
    let m = rng.next_below(pairs.min(max_edges) + 1);
    let seed = rng.next_u64();
    zerograph_core::random_graph(GraphKind::SimpleUndirected, n, m, seed)
        .unwrap()
        .as_undirected()
        .unwrap()
        .clone()
}

/// Brute-force oracle: filter all 2^m arc subsets by raw degree counting,
/// with no pruning and no shared code with the iterator under test.
fn naive_family(g: &zerograph_core::OrientedGraph, family: Family) -> Vec<u64> {
    let m = g.arc_count();
    let n = g.vertex_count();
    let mut out = Vec::new();
    'mask: for mask in 0..(1u64 << m) {
        let mut out_deg = vec![0usize; n];
        let mut in_deg = vec![0usize; n];
        for (k, a) in g.arcs().iter().enumerate() {
            if mask >> k & 1 == 1 {
                out_deg[a.tail()] += 1;
                in_deg[a.head()] += 1;
            }
        }
        if (0..n).any(|v| out_deg[v] > 1 || in_deg[v] > 1) {
            continue;
        }
        match family {
            Family::Unbranched => {}
            Family::Loop => {
                if (0..n).any(|v| out_deg[v] != in_deg[v]) {
                    continue 'mask;
                }
            }
            Family::UnbranchedEven => {
                // Component sizes by repeated flood fill over shared
                // endpoints.
                let mut assigned = vec![usize::MAX; m];
                let mut comp = 0usize;
                let mut sizes = Vec::new();
                for start in 0..m {
                    if mask >> start & 1 == 0 || assigned[start] != usize::MAX {
                        continue;
                    }
                    let mut frontier = vec![start];
                    assigned[start] = comp;
                    let mut size = 0usize;
                    while let Some(k) = frontier.pop() {
                        size += 1;
                        let (t, h) = (g.arcs()[k].tail(), g.arcs()[k].head());
                        for (j, slot) in assigned.iter_mut().enumerate() {
                            if mask >> j & 1 == 1 && *slot == usize::MAX {
                                let (jt, jh) = (g.arcs()[j].tail(), g.arcs()[j].head());
                                if [jt, jh].contains(&t) || [jt, jh].contains(&h) {
                                    *slot = comp;
                                    frontier.push(j);
                                }
                            }
                        }
                    }
                    sizes.push(size);
                    comp += 1;
                }
                if sizes.iter().any(|s| s % 2 == 1) {
                    continue 'mask;
                }
            }
        }
        out.push(mask);
    }
    out
}

#[test]
fn pruned_enumeration_matches_naive_oracle() {
    let mut rng = SplitMix64::new(0xFA00);
    for _ in 0..15 {
        let g = random_oriented(&mut rng, 8);
        for family in [Family::Unbranched, Family::Loop, Family::UnbranchedEven] {
            let bp = check_bipartite(&g).ok();
            if family == Family::UnbranchedEven && bp.is_none() {
                continue;
            }
            let pruned: Vec<u64> = enum_family(&g, family, bp.as_ref())
                .unwrap()
                .map(|f| f.mask())
                .collect();
            assert_eq!(pruned, naive_family(&g, family), "family {family:?} on {g:?}");
        }
    }
}

#[test]
fn undirected_enumeration_matches_naive_oracle() {
    let mut rng = SplitMix64::new(0xFA09);
    for _ in 0..15 {
        let g = random_simple(&mut rng, 8);
        let pruned: Vec<u64> =
            zerograph_core::enum_undirected_unbranched(&g).unwrap().collect();
        let mut naive = Vec::new();
        for mask in 0..(1u64 << g.edge_count()) {
            let mut deg = vec![0usize; g.vertex_count()];
            for (k, e) in g.edges().iter().enumerate() {
                if mask >> k & 1 == 1 {
                    deg[e.ends().0] += 1;
                    deg[e.ends().1] += 1;
                }
            }
            if deg.iter().all(|&d| d <= 2) {
                naive.push(mask);
            }
        }
        assert_eq!(pruned, naive);
    }
}

#[test]
fn unbranched_family_is_downward_closed() {
    let mut rng = SplitMix64::new(0xFA01);
    for _ in 0..12 {
        let g = random_oriented(&mut rng, 8);
        let members: Vec<u64> = enum_family(&g, Family::Unbranched, None)
            .unwrap()
            .map(|f| f.mask())
            .collect();
        let member_set: std::collections::HashSet<u64> = members.iter().copied().collect();
        for &mask in &members {
            // Walk all subsets of the mask.
            let mut sub = mask;
            loop {
                assert!(
                    member_set.contains(&sub),
                    "subset {sub:b} of member {mask:b} missing"
                );
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & mask;
            }
        }
    }
}

#[test]
fn family_containments_and_ordering() {
    let mut rng = SplitMix64::new(0xFA02);
    for _ in 0..12 {
        let g = random_oriented(&mut rng, 8);
        let u: Vec<u64> = enum_family(&g, Family::Unbranched, None)
            .unwrap()
            .map(|f| f.mask())
            .collect();
        assert!(u.windows(2).all(|w| w[0] < w[1]), "ascending mask order");
        let uset: std::collections::HashSet<u64> = u.iter().copied().collect();
        for f in enum_family(&g, Family::Loop, None).unwrap() {
            assert!(uset.contains(&f.mask()));
        }
        if let Ok(bp) = check_bipartite(&g) {
            for f in enum_family(&g, Family::UnbranchedEven, Some(&bp)).unwrap() {
                assert!(uset.contains(&f.mask()));
                assert!(
                    decompose(&f).unwrap().all_sizes_even(),
                    "even family member must have even components"
                );
            }
        }
        // Every emitted member is genuinely unbranched.
        for &mask in &u {
            assert!(is_unbranched(&Subgraph::new(&g, mask).unwrap()));
        }
    }
}

#[test]
fn counting_polynomial_basic_identities() {
    let mut rng = SplitMix64::new(0xFA03);
    for _ in 0..12 {
        let g = random_oriented(&mut rng, 10);
        let p = poly_family(&g, Family::Unbranched, None).unwrap();
        let count = enum_family(&g, Family::Unbranched, None).unwrap().count();
        assert_eq!(p.eval_at_one(), BigInt::from(count));
        assert_eq!(p.coeff(0), BigInt::from(1), "∅ is always unbranched");
        for c in p.coeffs() {
            assert!(c >= &BigInt::from(0));
        }
    }
}

#[test]
fn decompose_partitions_the_subgraph() {
    let mut rng = SplitMix64::new(0xFA04);
    for _ in 0..12 {
        let g = random_oriented(&mut rng, 8);
        for f in enum_family(&g, Family::Unbranched, None).unwrap() {
            let dec = decompose(&f).unwrap();
            assert_eq!(dec.total_size(), f.size());
            let mut rebuilt = 0u64;
            for c in &dec.components {
                for &k in &c.arcs {
                    assert_eq!(rebuilt >> k & 1, 0, "components must not overlap");
                    rebuilt |= 1 << k;
                }
            }
            assert_eq!(rebuilt, f.mask());
        }
    }
}

#[test]
fn even_polynomial_has_only_even_exponents() {
    let mut rng = SplitMix64::new(0xFA05);
    for _ in 0..12 {
        let g0 = random_simple(&mut rng, 7);
        let d = double(&g0).unwrap();
        let Ok(bp) = check_bipartite(d.graph()) else {
            continue;
        };
        let p = poly_family(d.graph(), Family::UnbranchedEven, Some(&bp)).unwrap();
        for (k, c) in p.coeffs().iter().enumerate() {
            if k % 2 == 1 {
                assert_eq!(c, &BigInt::from(0));
            }
        }
    }
}

#[test]
fn orientation_reversal_leaves_unbranched_polynomial_unchanged() {
    let mut rng = SplitMix64::new(0xFA06);
    for _ in 0..20 {
        let g = random_oriented(&mut rng, 10);
        let p = poly_family(&g, Family::Unbranched, None).unwrap();
        let q = poly_family(&g.reversed(), Family::Unbranched, None).unwrap();
        assert_eq!(p, q);
    }
}

#[test]
fn closed_forms_match_doubled_enumeration() {
    let mut rng = SplitMix64::new(0xFA07);
    for _ in 0..25 {
        let g0 = random_simple(&mut rng, 8);
        let d = double(&g0).unwrap();
        assert_eq!(d.graph().arc_count(), 2 * g0.edge_count());

        let closed = closed_form_oriented_unbranched(&g0).unwrap();
        let direct = poly_family(d.graph(), Family::Unbranched, None).unwrap();
        assert_eq!(closed, direct, "unbranched closed form, graph {g0:?}");

        let bp = check_bipartite(d.graph());
        if let Ok(bp) = bp {
            let closed_even =
                closed_form_oriented_unbranched_even(&g0, EvenClosedFormVariant::Corrected)
                    .unwrap();
            let direct_even =
                poly_family(d.graph(), Family::UnbranchedEven, Some(&bp)).unwrap();
            assert_eq!(closed_even, direct_even, "even closed form, graph {g0:?}");
        }
    }
}

#[test]
fn deg2_of_doubled_simple_graph_is_max_degree_squared() {
    let mut rng = SplitMix64::new(0xFA08);
    for _ in 0..25 {
        let g0 = random_simple(&mut rng, 9);
        let d = double(&g0).unwrap();
        let max_deg = g0.degrees().into_iter().max().unwrap_or(0) as u64;
        assert_eq!(d.graph().deg2(), max_deg * max_deg);
    }
}

#[test]
fn enumeration_rejects_oversized_graphs() {
    let n = 70;
    let vertices: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let arcs: Vec<(String, String, String)> = (1..n)
        .map(|i| (format!("e{i}"), i.to_string(), (i + 1).to_string()))
        .collect();
    assert!(arcs.len() > MAX_ENUM_ARCS);
    let g = zerograph_core::OrientedGraph::new(vertices, arcs, None).unwrap();
    assert!(enum_family(&g, Family::Unbranched, None).is_err());
}
