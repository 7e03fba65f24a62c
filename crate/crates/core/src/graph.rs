//! Oriented and non-oriented graph data model: validation, bipartiteness,
//! doubling, and degree statistics.
//!
//! Vertex, arc and edge ids are strings; every internal ordering derives from
//! input order so that enumerations, witnesses and reports are deterministic.
//! All types are immutable values after construction.

use std::collections::{HashMap, HashSet};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("vertex set must be nonempty")]
    EmptyVertexSet,
    #[error("duplicate vertex id {0:?}")]
    DuplicateVertexId(String),
    #[error("duplicate edge id {0:?}")]
    DuplicateEdgeId(String),
    #[error("edge {edge:?} references unknown vertex {vertex:?}")]
    UnknownVertex { edge: String, vertex: String },
    #[error("edge {0:?} is a self-loop")]
    SelfLoop(String),
    #[error("invalid bipartition: {0}")]
    InvalidBipartition(String),
    #[error("unknown vertex id {0:?}")]
    NoSuchVertex(String),
    #[error("invalid graph JSON: {0}")]
    Json(String),
    #[error("infeasible random graph request: {0}")]
    InfeasibleRandom(String),
}

/// A bipartition `{V1, V2}` of the vertex set, both parts nonempty, every
/// edge crossing between them. Listing order is preserved from the source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bipartition {
    pub v1: Vec<String>,
    pub v2: Vec<String>,
}

/// Which side of a bipartition a vertex lies on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    V1,
    V2,
}

/// An oriented edge `e: tail → head`, held as indices into the vertex list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arc {
    id: String,
    tail: usize,
    head: usize,
}

impl Arc {
    pub fn id(&self) -> &str {
        &self.id
    }
    pub fn tail(&self) -> usize {
        self.tail
    }
    pub fn head(&self) -> usize {
        self.head
    }
}

/// A finite oriented graph: nonempty vertex set, arcs with tail ≠ head.
/// Parallel and antiparallel duplicate arcs are permitted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientedGraph {
    vertices: Vec<String>,
    vertex_index: HashMap<String, usize>,
    arcs: Vec<Arc>,
    bipartition: Option<Bipartition>,
}

impl OrientedGraph {
    /// Validates and builds the graph. `arcs` entries are `(id, tail, head)`
    /// by vertex id; order is preserved.
    pub fn new(
        vertices: Vec<String>,
        arcs: Vec<(String, String, String)>,
        bipartition: Option<Bipartition>,
    ) -> Result<Self, GraphError> {
        let vertex_index = index_vertices(&vertices)?;
        let mut seen = HashSet::new();
        let mut built = Vec::with_capacity(arcs.len());
        for (id, tail, head) in arcs {
            if !seen.insert(id.clone()) {
                return Err(GraphError::DuplicateEdgeId(id));
            }
            let t = *vertex_index.get(&tail).ok_or_else(|| GraphError::UnknownVertex {
                edge: id.clone(),
                vertex: tail.clone(),
            })?;
            let h = *vertex_index.get(&head).ok_or_else(|| GraphError::UnknownVertex {
                edge: id.clone(),
                vertex: head.clone(),
            })?;
            if t == h {
                return Err(GraphError::SelfLoop(id));
            }
            built.push(Arc { id, tail: t, head: h });
        }
        let g = OrientedGraph {
            vertices,
            vertex_index,
            arcs: built,
            bipartition: None,
        };
        let bipartition = match bipartition {
            Some(bp) => {
                g.bipartition_sides(&bp)?;
                Some(bp)
            }
            None => None,
        };
        Ok(OrientedGraph { bipartition, ..g })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_id(&self, idx: usize) -> &str {
        &self.vertices[idx]
    }

    pub fn vertex_position(&self, id: &str) -> Option<usize> {
        self.vertex_index.get(id).copied()
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn bipartition(&self) -> Option<&Bipartition> {
        self.bipartition.as_ref()
    }

    /// Per-vertex (out-degree, in-degree) over the whole arc set.
    pub fn degrees(&self) -> (Vec<usize>, Vec<usize>) {
        let mut out = vec![0usize; self.vertices.len()];
        let mut inn = vec![0usize; self.vertices.len()];
        for a in &self.arcs {
            out[a.tail] += 1;
            inn[a.head] += 1;
        }
        (out, inn)
    }

    /// `deg₂`: (max out-degree) × (max in-degree); 0 when there are no arcs.
    pub fn deg2(&self) -> u64 {
        if self.arcs.is_empty() {
            return 0;
        }
        let (out, inn) = self.degrees();
        let max_out = out.into_iter().max().unwrap_or(0) as u64;
        let max_in = inn.into_iter().max().unwrap_or(0) as u64;
        max_out * max_in
    }

    /// Validates a bipartition against this graph and resolves each vertex to
    /// its side. Checks: parts nonempty, disjoint, covering, and every arc
    /// crossing between the parts.
    pub fn bipartition_sides(&self, bp: &Bipartition) -> Result<Vec<Side>, GraphError> {
        sides_for(&self.vertices, &self.vertex_index, bp, |f| {
            self.arcs
                .iter()
                .find(|a| !f(a.tail, a.head))
                .map(|a| a.id.clone())
        })
    }

    /// A copy of this graph with every arc reversed (same ids, same order).
    pub fn reversed(&self) -> OrientedGraph {
        let mut g = self.clone();
        for a in &mut g.arcs {
            std::mem::swap(&mut a.tail, &mut a.head);
        }
        g
    }
}

/// A non-oriented edge with distinct endpoints, held as vertex indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    id: String,
    ends: (usize, usize),
}

impl Edge {
    pub fn id(&self) -> &str {
        &self.id
    }
    pub fn ends(&self) -> (usize, usize) {
        self.ends
    }
}

/// A finite non-oriented graph. Multi-edges are representable; `is_simple`
/// reports whether any two edges share an endpoint pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UndirectedGraph {
    vertices: Vec<String>,
    vertex_index: HashMap<String, usize>,
    edges: Vec<Edge>,
    bipartition: Option<Bipartition>,
}

impl UndirectedGraph {
    pub fn new(
        vertices: Vec<String>,
        edges: Vec<(String, String, String)>,
        bipartition: Option<Bipartition>,
    ) -> Result<Self, GraphError> {
        let vertex_index = index_vertices(&vertices)?;
        let mut seen = HashSet::new();
        let mut built = Vec::with_capacity(edges.len());
        for (id, a, b) in edges {
            if !seen.insert(id.clone()) {
                return Err(GraphError::DuplicateEdgeId(id));
            }
            let ia = *vertex_index.get(&a).ok_or_else(|| GraphError::UnknownVertex {
                edge: id.clone(),
                vertex: a.clone(),
            })?;
            let ib = *vertex_index.get(&b).ok_or_else(|| GraphError::UnknownVertex {
                edge: id.clone(),
                vertex: b.clone(),
            })?;
            if ia == ib {
                return Err(GraphError::SelfLoop(id));
            }
            built.push(Edge { id, ends: (ia, ib) });
        }
        let g = UndirectedGraph {
            vertices,
            vertex_index,
            edges: built,
            bipartition: None,
        };
        let bipartition = match bipartition {
            Some(bp) => {
                g.bipartition_sides(&bp)?;
                Some(bp)
            }
            None => None,
        };
        Ok(UndirectedGraph { bipartition, ..g })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_id(&self, idx: usize) -> &str {
        &self.vertices[idx]
    }

    pub fn vertex_position(&self, id: &str) -> Option<usize> {
        self.vertex_index.get(id).copied()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn bipartition(&self) -> Option<&Bipartition> {
        self.bipartition.as_ref()
    }

    /// True when no two edges join the same endpoint pair.
    pub fn is_simple(&self) -> bool {
        let mut seen = HashSet::new();
        for e in &self.edges {
            let (a, b) = e.ends;
            let key = (a.min(b), a.max(b));
            if !seen.insert(key) {
                return false;
            }
        }
        true
    }

    /// Per-vertex degree over the whole edge set.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.vertices.len()];
        for e in &self.edges {
            deg[e.ends.0] += 1;
            deg[e.ends.1] += 1;
        }
        deg
    }

    pub fn bipartition_sides(&self, bp: &Bipartition) -> Result<Vec<Side>, GraphError> {
        sides_for(&self.vertices, &self.vertex_index, bp, |f| {
            self.edges
                .iter()
                .find(|e| !f(e.ends.0, e.ends.1))
                .map(|e| e.id.clone())
        })
    }
}

fn index_vertices(vertices: &[String]) -> Result<HashMap<String, usize>, GraphError> {
    if vertices.is_empty() {
        return Err(GraphError::EmptyVertexSet);
    }
    let mut map = HashMap::with_capacity(vertices.len());
    for (i, v) in vertices.iter().enumerate() {
        if map.insert(v.clone(), i).is_some() {
            return Err(GraphError::DuplicateVertexId(v.clone()));
        }
    }
    Ok(map)
}

fn sides_for(
    vertices: &[String],
    index: &HashMap<String, usize>,
    bp: &Bipartition,
    first_non_crossing: impl Fn(&dyn Fn(usize, usize) -> bool) -> Option<String>,
) -> Result<Vec<Side>, GraphError> {
    if bp.v1.is_empty() || bp.v2.is_empty() {
        return Err(GraphError::InvalidBipartition(
            "both parts must be nonempty".into(),
        ));
    }
    let mut sides: Vec<Option<Side>> = vec![None; vertices.len()];
    for (part, side) in [(&bp.v1, Side::V1), (&bp.v2, Side::V2)] {
        for id in part {
            let i = *index.get(id).ok_or_else(|| {
                GraphError::InvalidBipartition(format!("unknown vertex {id:?}"))
            })?;
            if sides[i].is_some() {
                return Err(GraphError::InvalidBipartition(format!(
                    "vertex {id:?} listed twice"
                )));
            }
            sides[i] = Some(side);
        }
    }
    let sides: Vec<Side> = sides
        .into_iter()
        .enumerate()
        .map(|(i, s)| {
            s.ok_or_else(|| {
                GraphError::InvalidBipartition(format!(
                    "vertex {:?} not covered",
                    vertices[i]
                ))
            })
        })
        .collect::<Result<_, _>>()?;
    let crossing = |a: usize, b: usize| sides[a] != sides[b];
    if let Some(id) = first_non_crossing(&crossing) {
        return Err(GraphError::InvalidBipartition(format!(
            "edge {id:?} does not cross the partition"
        )));
    }
    Ok(sides)
}

/// Witness that a graph admits no valid bipartition.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum NotBipartite {
    /// A closed walk of odd edge count, given as the vertex-id sequence
    /// `v0, v1, …, vk` with `v0 = vk` and `k` odd.
    #[error("odd closed walk: {}", .0.join(" -> "))]
    OddClosedWalk(Vec<String>),
    /// One vertex only: two nonempty parts cannot exist.
    #[error("a single-vertex graph has no bipartition with two nonempty parts")]
    SingleVertex,
}

/// Returns a valid bipartition, preferring the caller-supplied one (already
/// verified at construction). Otherwise 2-colors the underlying undirected
/// structure; the lexicographically-least vertex of each connected component
/// goes to V1. If every vertex is isolated the lexicographically-greatest one
/// is moved to V2 so that both parts are nonempty.
pub fn check_bipartite(g: &OrientedGraph) -> Result<Bipartition, NotBipartite> {
    if let Some(bp) = g.bipartition() {
        return Ok(bp.clone());
    }
    let n = g.vertex_count();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for a in g.arcs() {
        adj[a.tail()].push(a.head());
        adj[a.head()].push(a.tail());
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| g.vertex_id(a).cmp(g.vertex_id(b)));

    let mut color: Vec<Option<Side>> = vec![None; n];
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut depth: Vec<usize> = vec![0; n];
    for &root in &order {
        if color[root].is_some() {
            continue;
        }
        color[root] = Some(Side::V1);
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                match color[w] {
                    None => {
                        color[w] = Some(match color[u].unwrap() {
                            Side::V1 => Side::V2,
                            Side::V2 => Side::V1,
                        });
                        parent[w] = Some(u);
                        depth[w] = depth[u] + 1;
                        queue.push_back(w);
                    }
                    Some(c) if c == color[u].unwrap() => {
                        return Err(NotBipartite::OddClosedWalk(odd_walk(
                            g, &parent, &depth, u, w,
                        )));
                    }
                    Some(_) => {}
                }
            }
        }
    }

    let mut v1 = Vec::new();
    let mut v2 = Vec::new();
    for (i, c) in color.iter().enumerate() {
        match c.unwrap() {
            Side::V1 => v1.push(g.vertex_id(i).to_string()),
            Side::V2 => v2.push(g.vertex_id(i).to_string()),
        }
    }
    if v2.is_empty() {
        // No arcs at all: every component is an isolated vertex.
        if n == 1 {
            return Err(NotBipartite::SingleVertex);
        }
        let moved = order[n - 1];
        let id = g.vertex_id(moved).to_string();
        v1.retain(|v| v != &id);
        v2.push(id);
    }
    Ok(Bipartition { v1, v2 })
}

/// Closed odd walk through the BFS tree paths of `u` and `w` plus the
/// conflicting edge `u – w`.
fn odd_walk(
    g: &OrientedGraph,
    parent: &[Option<usize>],
    depth: &[usize],
    u: usize,
    w: usize,
) -> Vec<String> {
    let mut up = u;
    let mut wp = w;
    let mut u_path = vec![up];
    let mut w_path = vec![wp];
    while depth[up] > depth[wp] {
        up = parent[up].unwrap();
        u_path.push(up);
    }
    while depth[wp] > depth[up] {
        wp = parent[wp].unwrap();
        w_path.push(wp);
    }
    while up != wp {
        up = parent[up].unwrap();
        wp = parent[wp].unwrap();
        u_path.push(up);
        w_path.push(wp);
    }
    // u → … → lca → … → w → u
    let mut walk: Vec<usize> = u_path;
    walk.extend(w_path.into_iter().rev().skip(1));
    walk.push(u);
    walk.into_iter().map(|i| g.vertex_id(i).to_string()).collect()
}

/// An oriented graph obtained by replacing every non-oriented edge with two
/// antiparallel arcs, together with the pairing involution and the map back
/// to the source edges.
#[derive(Clone, Debug)]
pub struct DoubledGraph {
    graph: OrientedGraph,
    reversal: Vec<usize>,
    origin: Vec<usize>,
}

impl DoubledGraph {
    pub fn graph(&self) -> &OrientedGraph {
        &self.graph
    }

    /// The arc paired with `arc` by orientation reversal.
    pub fn reversal(&self, arc: usize) -> usize {
        self.reversal[arc]
    }

    /// Index of the source edge an arc came from.
    pub fn origin(&self, arc: usize) -> usize {
        self.origin[arc]
    }
}

/// Doubles an undirected graph: edge `e` with endpoint pair `(x1, x2)` yields
/// arcs `e'`: x1→x2 and `e''`: x2→x1, in source edge order. The source
/// bipartition, when present, is inherited. Fails only if the primed ids
/// collide with each other (possible when source ids already end in `'`).
pub fn double(g: &UndirectedGraph) -> Result<DoubledGraph, GraphError> {
    let mut arcs = Vec::with_capacity(2 * g.edge_count());
    let mut reversal = Vec::with_capacity(2 * g.edge_count());
    let mut origin = Vec::with_capacity(2 * g.edge_count());
    for (k, e) in g.edges().iter().enumerate() {
        let (a, b) = e.ends();
        let x1 = g.vertex_id(a).to_string();
        let x2 = g.vertex_id(b).to_string();
        arcs.push((format!("{}'", e.id()), x1.clone(), x2.clone()));
        arcs.push((format!("{}''", e.id()), x2, x1));
        let base = 2 * k;
        reversal.push(base + 1);
        reversal.push(base);
        origin.push(k);
        origin.push(k);
    }
    let graph = OrientedGraph::new(
        g.vertices().to_vec(),
        arcs,
        g.bipartition().cloned(),
    )?;
    Ok(DoubledGraph {
        graph,
        reversal,
        origin,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn triangle() -> OrientedGraph {
        OrientedGraph::new(
            vec!["1".into(), "2".into(), "3".into()],
            vec![
                ("a".into(), "1".into(), "2".into()),
                ("b".into(), "2".into(), "3".into()),
                ("c".into(), "3".into(), "1".into()),
            ],
            None,
        )
        .unwrap()
    }

    pub(crate) fn path3() -> UndirectedGraph {
        UndirectedGraph::new(
            vec!["1".into(), "2".into(), "3".into()],
            vec![
                ("a".into(), "1".into(), "2".into()),
                ("b".into(), "2".into(), "3".into()),
            ],
            None,
        )
        .unwrap()
    }

    #[test]
    fn rejects_self_loop() {
        let err = OrientedGraph::new(
            vec!["1".into()],
            vec![("a".into(), "1".into(), "1".into())],
            None,
        )
        .unwrap_err();
        assert!(matches!(err, GraphError::SelfLoop(_)));
    }

    #[test]
    fn rejects_duplicate_ids_and_unknown_vertices() {
        assert!(matches!(
            OrientedGraph::new(vec!["1".into(), "1".into()], vec![], None),
            Err(GraphError::DuplicateVertexId(_))
        ));
        assert!(matches!(
            OrientedGraph::new(
                vec!["1".into(), "2".into()],
                vec![
                    ("a".into(), "1".into(), "2".into()),
                    ("a".into(), "2".into(), "1".into())
                ],
                None
            ),
            Err(GraphError::DuplicateEdgeId(_))
        ));
        assert!(matches!(
            OrientedGraph::new(
                vec!["1".into()],
                vec![("a".into(), "1".into(), "9".into())],
                None
            ),
            Err(GraphError::UnknownVertex { .. })
        ));
    }

    #[test]
    fn double_single_edge() {
        let g = UndirectedGraph::new(
            vec!["1".into(), "2".into()],
            vec![("a".into(), "1".into(), "2".into())],
            None,
        )
        .unwrap();
        let d = double(&g).unwrap();
        assert_eq!(d.graph().arc_count(), 2);
        let arcs = d.graph().arcs();
        assert_eq!(arcs[0].id(), "a'");
        assert_eq!(
            (arcs[0].tail(), arcs[0].head()),
            (0, 1),
            "a' must run 1→2"
        );
        assert_eq!(arcs[1].id(), "a''");
        assert_eq!((arcs[1].tail(), arcs[1].head()), (1, 0));
    }

    #[test]
    fn double_p3_reversal_pairs() {
        let d = double(&path3()).unwrap();
        assert_eq!(d.graph().arc_count(), 4);
        for k in 0..4 {
            assert_eq!(d.reversal(d.reversal(k)), k);
            assert_ne!(d.reversal(k), k);
            assert_eq!(d.origin(k), d.origin(d.reversal(k)));
            let a = &d.graph().arcs()[k];
            let r = &d.graph().arcs()[d.reversal(k)];
            assert_eq!((a.tail(), a.head()), (r.head(), r.tail()));
        }
    }

    #[test]
    fn double_empty_edge_set() {
        let g = UndirectedGraph::new(vec!["1".into(), "2".into()], vec![], None).unwrap();
        let d = double(&g).unwrap();
        assert_eq!(d.graph().arc_count(), 0);
    }

    #[test]
    fn bipartite_doubled_p3() {
        let d = double(&path3()).unwrap();
        let bp = check_bipartite(d.graph()).unwrap();
        assert_eq!(bp.v1, vec!["1".to_string(), "3".to_string()]);
        assert_eq!(bp.v2, vec!["2".to_string()]);
    }

    #[test]
    fn triangle_is_not_bipartite_with_odd_witness() {
        let err = check_bipartite(&triangle()).unwrap_err();
        match err {
            NotBipartite::OddClosedWalk(walk) => {
                assert_eq!(walk.first(), walk.last());
                let edges = walk.len() - 1;
                assert_eq!(edges % 2, 1);
                assert_eq!(edges, 3);
            }
            other => panic!("unexpected: {other:?}"),
        }
    }

    #[test]
    fn single_arc_bipartition() {
        let g = OrientedGraph::new(
            vec!["1".into(), "2".into()],
            vec![("a".into(), "1".into(), "2".into())],
            None,
        )
        .unwrap();
        let bp = check_bipartite(&g).unwrap();
        assert_eq!(bp.v1, vec!["1".to_string()]);
        assert_eq!(bp.v2, vec!["2".to_string()]);
    }

    #[test]
    fn arcless_graphs_get_nonempty_parts() {
        let g = OrientedGraph::new(vec!["b".into(), "a".into()], vec![], None).unwrap();
        let bp = check_bipartite(&g).unwrap();
        assert_eq!(bp.v1, vec!["a".to_string()]);
        assert_eq!(bp.v2, vec!["b".to_string()]);

        let lone = OrientedGraph::new(vec!["x".into()], vec![], None).unwrap();
        assert_eq!(check_bipartite(&lone), Err(NotBipartite::SingleVertex));
    }

    #[test]
    fn supplied_bipartition_is_verified_and_preferred() {
        let bp = Bipartition {
            v1: vec!["2".into()],
            v2: vec!["1".into(), "3".into()],
        };
        let d0 = path3();
        let g = UndirectedGraph::new(
            d0.vertices().to_vec(),
            vec![
                ("a".into(), "1".into(), "2".into()),
                ("b".into(), "2".into(), "3".into()),
            ],
            Some(bp.clone()),
        )
        .unwrap();
        let d = double(&g).unwrap();
        assert_eq!(check_bipartite(d.graph()).unwrap(), bp);

        let bad = Bipartition {
            v1: vec!["1".into(), "2".into()],
            v2: vec!["3".into()],
        };
        assert!(matches!(
            UndirectedGraph::new(
                g.vertices().to_vec(),
                vec![("a".into(), "1".into(), "2".into())],
                Some(bad)
            ),
            Err(GraphError::InvalidBipartition(_))
        ));
    }

    #[test]
    fn deg2_examples() {
        assert_eq!(triangle().deg2(), 1);
        let d = double(&path3()).unwrap();
        assert_eq!(d.graph().deg2(), 4);
        let lone = OrientedGraph::new(vec!["1".into()], vec![], None).unwrap();
        assert_eq!(lone.deg2(), 0);
    }

    #[test]
    fn doubling_id_collisions_are_rejected() {
        let g = UndirectedGraph::new(
            vec!["1".into(), "2".into(), "3".into()],
            vec![
                ("a".into(), "1".into(), "2".into()),
                ("a'".into(), "2".into(), "3".into()),
            ],
            None,
        )
        .unwrap();
        assert!(matches!(double(&g), Err(GraphError::DuplicateEdgeId(_))));
    }
}
