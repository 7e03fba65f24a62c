//! Subgraphs of an oriented graph, their component decomposition, and lazy
//! enumeration of the unbranched / loop / even-unbranched families.
//!
//! A subgraph is an arc subset held as a bitmask with bit order equal to arc
//! input order. Enumerators emit each family member exactly once in ascending
//! bitmask order; the backtracking prunes a branch as soon as a per-vertex
//! in- or out-degree would exceed one.

use thiserror::Error;

use crate::graph::{Bipartition, GraphError, OrientedGraph, UndirectedGraph};

/// Enumeration and counting can index at most this many arcs per graph.
pub const MAX_ENUM_ARCS: usize = 64;

#[derive(Debug, Error)]
pub enum EnumError {
    #[error("graph has {count} arcs, enumeration supports at most {MAX_ENUM_ARCS}")]
    TooManyArcs { count: usize },
    #[error("subgraph mask has bits beyond the graph's {count} arcs")]
    MaskOutOfRange { count: usize },
    #[error("subgraph is branched: vertex {vertex:?} has {degree} {direction} arcs")]
    Branched {
        vertex: String,
        direction: &'static str,
        degree: usize,
    },
    #[error("the even-unbranched family requires a verified bipartition")]
    MissingBipartition,
    #[error("graph must have only simple edges between vertices")]
    NotSimple,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Engine(#[from] crate::multiaffine::EngineError),
}

/// An arc subset `F` of a fixed oriented graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Subgraph<'g> {
    graph: &'g OrientedGraph,
    mask: u64,
}

impl<'g> Subgraph<'g> {
    pub fn new(graph: &'g OrientedGraph, mask: u64) -> Result<Self, EnumError> {
        let m = graph.arc_count();
        if m > MAX_ENUM_ARCS {
            return Err(EnumError::TooManyArcs { count: m });
        }
        if m < 64 && mask >> m != 0 {
            return Err(EnumError::MaskOutOfRange { count: m });
        }
        Ok(Subgraph { graph, mask })
    }

    pub fn graph(&self) -> &'g OrientedGraph {
        self.graph
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    /// `|F|`, the number of arcs.
    pub fn size(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn contains(&self, arc: usize) -> bool {
        self.mask >> arc & 1 == 1
    }

    pub fn arc_indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.graph.arc_count()).filter(|&k| self.contains(k))
    }

    pub fn arc_ids(&self) -> Vec<String> {
        self.arc_indices()
            .map(|k| self.graph.arcs()[k].id().to_string())
            .collect()
    }

    /// Per-vertex (out, in) degree within `F`.
    pub fn degrees(&self) -> (Vec<usize>, Vec<usize>) {
        let n = self.graph.vertex_count();
        let mut out = vec![0usize; n];
        let mut inn = vec![0usize; n];
        for k in self.arc_indices() {
            let a = &self.graph.arcs()[k];
            out[a.tail()] += 1;
            inn[a.head()] += 1;
        }
        (out, inn)
    }
}

/// True iff every vertex has at most one outgoing and one ingoing arc in `F`.
pub fn is_unbranched(f: &Subgraph<'_>) -> bool {
    let (out, inn) = f.degrees();
    out.iter().all(|&d| d <= 1) && inn.iter().all(|&d| d <= 1)
}

/// True iff `F` is unbranched and every vertex has equally many outgoing and
/// ingoing arcs in `F`.
pub fn is_loop_subgraph(f: &Subgraph<'_>) -> bool {
    if !is_unbranched(f) {
        return false;
    }
    let (out, inn) = f.degrees();
    out.iter().zip(&inn).all(|(o, i)| o == i)
}

/// One connected component of an unbranched subgraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    /// Arc indices in walk order: around the cycle for loops (starting from
    /// the smallest arc index), along the directed walk for paths.
    pub arcs: Vec<usize>,
    pub kind: ComponentKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComponentKind {
    /// A directed cycle: in-degree equals out-degree at every vertex.
    Loop,
    /// A directed path from `start` to `end` (vertex indices, distinct).
    Path { start: usize, end: usize },
}

impl Component {
    pub fn size(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_loop(&self) -> bool {
        matches!(self.kind, ComponentKind::Loop)
    }

    /// The set of vertices touched by this component, sorted by index.
    pub fn vertex_set(&self, g: &OrientedGraph) -> Vec<usize> {
        let mut vs: Vec<usize> = self
            .arcs
            .iter()
            .flat_map(|&k| [g.arcs()[k].tail(), g.arcs()[k].head()])
            .collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }
}

/// The unique partition of an unbranched subgraph into connected components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentDecomposition {
    pub components: Vec<Component>,
}

impl ComponentDecomposition {
    pub fn total_size(&self) -> usize {
        self.components.iter().map(Component::size).sum()
    }

    pub fn all_sizes_even(&self) -> bool {
        self.components.iter().all(|c| c.size() % 2 == 0)
    }
}

/// Splits an unbranched subgraph into components (connectivity by shared
/// endpoints, regardless of arc direction) and classifies each as a loop or a
/// directed path with ordered endpoints. Rejects branched input.
pub fn decompose(f: &Subgraph<'_>) -> Result<ComponentDecomposition, EnumError> {
    let g = f.graph();
    let (out, inn) = f.degrees();
    for v in 0..g.vertex_count() {
        if out[v] > 1 {
            return Err(EnumError::Branched {
                vertex: g.vertex_id(v).to_string(),
                direction: "outgoing",
                degree: out[v],
            });
        }
        if inn[v] > 1 {
            return Err(EnumError::Branched {
                vertex: g.vertex_id(v).to_string(),
                direction: "ingoing",
                degree: inn[v],
            });
        }
    }

    // In an unbranched subgraph each vertex has at most one outgoing and one
    // ingoing arc, so components are traced by following unique successors.
    let n = g.vertex_count();
    let mut out_arc = vec![usize::MAX; n];
    let mut in_arc = vec![usize::MAX; n];
    for k in f.arc_indices() {
        out_arc[g.arcs()[k].tail()] = k;
        in_arc[g.arcs()[k].head()] = k;
    }

    let mut seen = vec![false; g.arc_count()];
    let mut components = Vec::new();
    for first in f.arc_indices() {
        if seen[first] {
            continue;
        }
        // Walk backwards to the start of the chain (or detect a cycle).
        let mut start_arc = first;
        let mut is_loop = false;
        loop {
            let prev = in_arc[g.arcs()[start_arc].tail()];
            if prev == usize::MAX {
                break;
            }
            if prev == first {
                is_loop = true;
                break;
            }
            start_arc = prev;
        }
        // For loops, the walk starts at the smallest arc index of the cycle.
        if is_loop {
            start_arc = first;
        }
        let mut arcs = Vec::new();
        let mut k = start_arc;
        loop {
            seen[k] = true;
            arcs.push(k);
            let next = out_arc[g.arcs()[k].head()];
            if next == usize::MAX || next == start_arc {
                break;
            }
            k = next;
        }
        let kind = if is_loop {
            ComponentKind::Loop
        } else {
            ComponentKind::Path {
                start: g.arcs()[start_arc].tail(),
                end: g.arcs()[*arcs.last().unwrap()].head(),
            }
        };
        components.push(Component { arcs, kind });
    }
    components.sort_by_key(|c| c.arcs[0]);
    Ok(ComponentDecomposition { components })
}

/// The subgraph families of an oriented graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// `U(E)`: in-degree ≤ 1 and out-degree ≤ 1 at every vertex.
    Unbranched,
    /// `L(E)`: unbranched with in-degree = out-degree at every vertex.
    Loop,
    /// `U_even(E)`: unbranched with every component size even.
    UnbranchedEven,
}

/// Lazily enumerates a family in ascending bitmask order.
///
/// The even family requires a bipartition (verified here); the evenness test
/// itself only needs component sizes.
pub fn enum_family<'g>(
    g: &'g OrientedGraph,
    family: Family,
    bipartition: Option<&Bipartition>,
) -> Result<FamilyIter<'g>, EnumError> {
    let m = g.arc_count();
    if m > MAX_ENUM_ARCS {
        return Err(EnumError::TooManyArcs { count: m });
    }
    if family == Family::UnbranchedEven {
        let bp = bipartition.ok_or(EnumError::MissingBipartition)?;
        g.bipartition_sides(bp)?;
    }
    Ok(FamilyIter::new(g, family))
}

struct Frame {
    level: usize,
    stage: u8,
    included: bool,
}

/// Depth-first enumerator over arc subsets. Arc `level-1` is decided at each
/// level, most significant first, exclude branch first, which yields ascending
/// bitmask order.
pub struct FamilyIter<'g> {
    graph: &'g OrientedGraph,
    family: Family,
    stack: Vec<Frame>,
    mask: u64,
    out_deg: Vec<u8>,
    in_deg: Vec<u8>,
    /// Number of vertices with out-degree ≠ in-degree in the current mask.
    imbalance: usize,
}

impl<'g> FamilyIter<'g> {
    fn new(graph: &'g OrientedGraph, family: Family) -> Self {
        let n = graph.vertex_count();
        FamilyIter {
            graph,
            family,
            stack: vec![Frame {
                level: graph.arc_count(),
                stage: 0,
                included: false,
            }],
            mask: 0,
            out_deg: vec![0; n],
            in_deg: vec![0; n],
            imbalance: 0,
        }
    }

    fn can_include(&self, arc: usize) -> bool {
        let a = &self.graph.arcs()[arc];
        self.out_deg[a.tail()] == 0 && self.in_deg[a.head()] == 0
    }

    fn apply(&mut self, arc: usize, on: bool) {
        let a = &self.graph.arcs()[arc];
        let (t, h) = (a.tail(), a.head());
        for v in [t, h] {
            if self.out_deg[v] != self.in_deg[v] {
                self.imbalance -= 1;
            }
        }
        if on {
            self.mask |= 1 << arc;
            self.out_deg[t] += 1;
            self.in_deg[h] += 1;
        } else {
            self.mask &= !(1 << arc);
            self.out_deg[t] -= 1;
            self.in_deg[h] -= 1;
        }
        for v in [t, h] {
            if self.out_deg[v] != self.in_deg[v] {
                self.imbalance += 1;
            }
        }
    }

    fn leaf_accepts(&self) -> bool {
        match self.family {
            Family::Unbranched => true,
            Family::Loop => self.imbalance == 0,
            Family::UnbranchedEven => components_all_even(self.graph, self.mask),
        }
    }
}

impl<'g> Iterator for FamilyIter<'g> {
    type Item = Subgraph<'g>;

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            let (level, stage) = {
                let top = self.stack.last()?;
                (top.level, top.stage)
            };
            if level == 0 {
                let emit = self.leaf_accepts();
                let mask = self.mask;
                self.stack.pop();
                if emit {
                    return Some(Subgraph {
                        graph: self.graph,
                        mask,
                    });
                }
                continue;
            }
            let arc = level - 1;
            match stage {
                0 => {
                    self.stack.last_mut().unwrap().stage = 1;
                    self.stack.push(Frame {
                        level: arc,
                        stage: 0,
                        included: false,
                    });
                }
                1 => {
                    self.stack.last_mut().unwrap().stage = 2;
                    if self.can_include(arc) {
                        self.stack.last_mut().unwrap().included = true;
                        self.apply(arc, true);
                        self.stack.push(Frame {
                            level: arc,
                            stage: 0,
                            included: false,
                        });
                    }
                }
                _ => {
                    let included = self.stack.pop().unwrap().included;
                    if included {
                        self.apply(arc, false);
                    }
                }
            }
        }
    }
}

/// Every connected component of `mask` (an unbranched subgraph) has even size.
fn components_all_even(g: &OrientedGraph, mask: u64) -> bool {
    let n = g.vertex_count();
    let mut root: Vec<usize> = (0..n).collect();
    fn find(root: &mut [usize], mut v: usize) -> usize {
        while root[v] != v {
            root[v] = root[root[v]];
            v = root[v];
        }
        v
    }
    for k in 0..g.arc_count() {
        if mask >> k & 1 == 1 {
            let a = &g.arcs()[k];
            let (rt, rh) = (find(&mut root, a.tail()), find(&mut root, a.head()));
            if rt != rh {
                root[rt] = rh;
            }
        }
    }
    let mut size = vec![0usize; n];
    for k in 0..g.arc_count() {
        if mask >> k & 1 == 1 {
            let r = find(&mut root, g.arcs()[k].tail());
            size[r] += 1;
        }
    }
    size.iter().all(|&s| s % 2 == 0)
}

/// Lazily enumerates edge subsets of a non-oriented graph in which every
/// vertex has degree at most two, in ascending bitmask order.
pub fn enum_undirected_unbranched<'g>(
    g: &'g UndirectedGraph,
) -> Result<UndirectedFamilyIter<'g>, EnumError> {
    let m = g.edge_count();
    if m > MAX_ENUM_ARCS {
        return Err(EnumError::TooManyArcs { count: m });
    }
    Ok(UndirectedFamilyIter {
        graph: g,
        stack: vec![Frame {
            level: m,
            stage: 0,
            included: false,
        }],
        mask: 0,
        deg: vec![0; g.vertex_count()],
    })
}

pub struct UndirectedFamilyIter<'g> {
    graph: &'g UndirectedGraph,
    stack: Vec<Frame>,
    mask: u64,
    deg: Vec<u8>,
}

impl UndirectedFamilyIter<'_> {
    pub fn graph(&self) -> &UndirectedGraph {
        self.graph
    }
}

impl Iterator for UndirectedFamilyIter<'_> {
    type Item = u64;

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            let (level, stage) = {
                let top = self.stack.last()?;
                (top.level, top.stage)
            };
            if level == 0 {
                let mask = self.mask;
                self.stack.pop();
                return Some(mask);
            }
            let edge = level - 1;
            let (a, b) = self.graph.edges()[edge].ends();
            match stage {
                0 => {
                    self.stack.last_mut().unwrap().stage = 1;
                    self.stack.push(Frame {
                        level: edge,
                        stage: 0,
                        included: false,
                    });
                }
                1 => {
                    self.stack.last_mut().unwrap().stage = 2;
                    if self.deg[a] < 2 && self.deg[b] < 2 {
                        self.stack.last_mut().unwrap().included = true;
                        self.mask |= 1 << edge;
                        self.deg[a] += 1;
                        self.deg[b] += 1;
                        self.stack.push(Frame {
                            level: edge,
                            stage: 0,
                            included: false,
                        });
                    }
                }
                _ => {
                    let included = self.stack.pop().unwrap().included;
                    if included {
                        self.mask &= !(1 << edge);
                        self.deg[a] -= 1;
                        self.deg[b] -= 1;
                    }
                }
            }
        }
    }
}

/// Component sizes of an undirected edge subset, connectivity by shared
/// endpoints.
pub fn undirected_component_sizes(g: &UndirectedGraph, mask: u64) -> Vec<usize> {
    let n = g.vertex_count();
    let mut root: Vec<usize> = (0..n).collect();
    fn find(root: &mut [usize], mut v: usize) -> usize {
        while root[v] != v {
            root[v] = root[root[v]];
            v = root[v];
        }
        v
    }
    for k in 0..g.edge_count() {
        if mask >> k & 1 == 1 {
            let (a, b) = g.edges()[k].ends();
            let (ra, rb) = (find(&mut root, a), find(&mut root, b));
            if ra != rb {
                root[ra] = rb;
            }
        }
    }
    let mut size = vec![0usize; n];
    for k in 0..g.edge_count() {
        if mask >> k & 1 == 1 {
            let r = find(&mut root, g.edges()[k].ends().0);
            size[r] += 1;
        }
    }
    size.into_iter().filter(|&s| s > 0).collect()
}
