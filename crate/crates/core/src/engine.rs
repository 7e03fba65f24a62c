//! The symbolic contraction engine: vertex factors over primed and
//! double-primed arc variables, their product over all vertices, and Asano
//! contractions `(z'_e, z''_e) → z_e` performed as soon as both endpoints of
//! an arc have been multiplied in.
//!
//! The engine universe for a graph with arcs `e1 … em` (input order) is
//! `e1.out, e1.in, …, em.out, em.in, e1, …, em`: the outgoing and ingoing
//! variable of every arc followed by one contracted slot per arc. The final
//! result of [`contract_graph`] is projected onto the arc-id variables alone,
//! which makes it directly comparable with the enumeration-built polynomial.

use std::sync::Arc;

use crate::cyc8::Cyc8;
use crate::graph::{Bipartition, OrientedGraph, Side};
use crate::multiaffine::{EngineError, MultiAffinePoly, Universe, VarMask};

/// Per-vertex weight assignment `(a′(x), a″(x))` plus the tilde flag that
/// swaps the vertex factor `p_x` for `1 + p_x`.
#[derive(Clone, Debug)]
pub struct AScheme {
    a_out: Vec<Cyc8>,
    a_in: Vec<Cyc8>,
    tilde: Vec<bool>,
}

impl AScheme {
    /// `a′ = a″ = 1` everywhere.
    pub fn ones(g: &OrientedGraph) -> AScheme {
        let n = g.vertex_count();
        AScheme {
            a_out: vec![Cyc8::one(); n],
            a_in: vec![Cyc8::one(); n],
            tilde: vec![false; n],
        }
    }

    /// `a′(x) = (1+i)/√2` on V1, `(1-i)/√2` on V2, and `a″(x) = a′(x)*`.
    /// The bipartition is verified against the graph.
    pub fn zeta_bipartite(g: &OrientedGraph, bp: &Bipartition) -> Result<AScheme, EngineError> {
        let sides = g.bipartition_sides(bp)?;
        let a_out: Vec<Cyc8> = sides
            .iter()
            .map(|s| match s {
                Side::V1 => Cyc8::zeta(),
                Side::V2 => Cyc8::zeta_conj(),
            })
            .collect();
        let a_in = a_out.iter().map(Cyc8::conj).collect();
        Ok(AScheme {
            a_out,
            a_in,
            tilde: vec![false; g.vertex_count()],
        })
    }

    /// `a′ = a″ = 1` on the given vertex set and `0` off it.
    pub fn v0<'a>(
        g: &OrientedGraph,
        set: impl IntoIterator<Item = &'a str>,
    ) -> Result<AScheme, EngineError> {
        let n = g.vertex_count();
        let mut member = vec![false; n];
        for id in set {
            let k = g
                .vertex_position(id)
                .ok_or_else(|| EngineError::UnknownVertex(id.to_string()))?;
            member[k] = true;
        }
        let value = |m: &bool| if *m { Cyc8::one() } else { Cyc8::zero() };
        Ok(AScheme {
            a_out: member.iter().map(value).collect(),
            a_in: member.iter().map(value).collect(),
            tilde: vec![false; n],
        })
    }

    /// Marks vertices whose factor becomes `1 + p_x`.
    pub fn with_tilde<'a>(
        mut self,
        g: &OrientedGraph,
        vertices: impl IntoIterator<Item = &'a str>,
    ) -> Result<AScheme, EngineError> {
        for id in vertices {
            let k = g
                .vertex_position(id)
                .ok_or_else(|| EngineError::UnknownVertex(id.to_string()))?;
            self.tilde[k] = true;
        }
        Ok(self)
    }

    pub fn a_out(&self, vertex: usize) -> &Cyc8 {
        &self.a_out[vertex]
    }

    pub fn a_in(&self, vertex: usize) -> &Cyc8 {
        &self.a_in[vertex]
    }

    pub fn is_tilde(&self, vertex: usize) -> bool {
        self.tilde[vertex]
    }
}

/// The engine universe of a graph; see the module docs for the layout.
pub fn engine_universe(g: &OrientedGraph) -> Result<Arc<Universe>, EngineError> {
    let mut ids = Vec::with_capacity(3 * g.arc_count());
    for a in g.arcs() {
        ids.push(format!("{}.out", a.id()));
        ids.push(format!("{}.in", a.id()));
    }
    for a in g.arcs() {
        ids.push(a.id().to_string());
    }
    Universe::new(ids)
}

fn out_var(arc: usize) -> usize {
    2 * arc
}

fn in_var(arc: usize) -> usize {
    2 * arc + 1
}

fn contracted_var(g: &OrientedGraph, arc: usize) -> usize {
    2 * g.arc_count() + arc
}

/// The vertex factor
/// `(a′(x) + Σ_{e: tail=x} z'_e)(a″(x) + Σ_{e: head=x} z''_e)`, expanded over
/// the engine universe; with the tilde flag set the factor is `1 +` that
/// product.
pub fn vertex_factor(
    g: &OrientedGraph,
    vertex: &str,
    scheme: &AScheme,
) -> Result<MultiAffinePoly, EngineError> {
    let x = g
        .vertex_position(vertex)
        .ok_or_else(|| EngineError::UnknownVertex(vertex.to_string()))?;
    let universe = engine_universe(g)?;
    vertex_factor_indexed(g, x, scheme, &universe)
}

fn vertex_factor_indexed(
    g: &OrientedGraph,
    x: usize,
    scheme: &AScheme,
    universe: &Arc<Universe>,
) -> Result<MultiAffinePoly, EngineError> {
    let mut outgoing = MultiAffinePoly::constant(universe.clone(), scheme.a_out(x).clone());
    let mut ingoing = MultiAffinePoly::constant(universe.clone(), scheme.a_in(x).clone());
    for (k, a) in g.arcs().iter().enumerate() {
        if a.tail() == x {
            outgoing.insert_add((1 as VarMask) << out_var(k), Cyc8::one());
        }
        if a.head() == x {
            ingoing.insert_add((1 as VarMask) << in_var(k), Cyc8::one());
        }
    }
    let mut p = outgoing.multiply(&ingoing)?;
    if scheme.is_tilde(x) {
        p.insert_add(0, Cyc8::one());
    }
    Ok(p)
}

/// Multiplies the vertex factors in vertex input order, contracting
/// `(z'_e, z''_e) → z_e` immediately after both endpoints of `e` have been
/// processed, and returns the result over the arc-id variables. Contraction
/// commutes with multiplication by factors free of the contracted pair, so
/// the result equals the simultaneous contraction of the full product.
pub fn contract_graph(
    g: &OrientedGraph,
    scheme: &AScheme,
) -> Result<MultiAffinePoly, EngineError> {
    let universe = engine_universe(g)?;
    let m = g.arc_count();
    let mut acc = MultiAffinePoly::one(universe.clone());
    let mut processed = vec![false; g.vertex_count()];
    for x in 0..g.vertex_count() {
        acc = acc.multiply(&vertex_factor_indexed(g, x, scheme, &universe)?)?;
        processed[x] = true;
        for (k, a) in g.arcs().iter().enumerate() {
            if (a.tail() == x || a.head() == x) && processed[a.tail()] && processed[a.head()] {
                acc = acc.asano_contract(out_var(k), in_var(k), contracted_var(g, k))?;
            }
        }
    }
    let keep: Vec<usize> = (0..m).map(|k| contracted_var(g, k)).collect();
    acc.project_onto(&keep)
}
