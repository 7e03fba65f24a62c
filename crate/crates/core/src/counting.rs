//! Graph-counting polynomials built by direct combinatorial construction:
//! family counting polynomials, the vertex-set–constrained variant, the
//! multivariate expansion over components with endpoint weights, the pairing
//! condition behind the even-polynomial cancellation, and the closed forms
//! for doubled graphs. These are the oracle side of every equivalence check
//! against the contraction engine.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::cyc8::Cyc8;
use crate::graph::{Bipartition, OrientedGraph, Side, UndirectedGraph};
use crate::multiaffine::{MultiAffinePoly, Universe};
use crate::subgraph::{
    decompose, enum_family, enum_undirected_unbranched, undirected_component_sizes,
    ComponentKind, EnumError, Family, Subgraph,
};

/// A univariate graph-counting polynomial with exact integer coefficients,
/// dense and ascending. The zero polynomial is the empty coefficient list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniGCPoly {
    coeffs: Vec<BigInt>,
}

impl UniGCPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniGCPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniGCPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniGCPoly {
            coeffs: vec![BigInt::one()],
        }
    }

    /// The monomial `c·z^k`.
    pub fn monomial(k: usize, c: BigInt) -> Self {
        if c.is_zero() {
            return UniGCPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        UniGCPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    fn add_to_coeff(&mut self, k: usize, c: &BigInt) {
        if self.coeffs.len() <= k {
            self.coeffs.resize(k + 1, BigInt::zero());
        }
        self.coeffs[k] += c;
    }

    pub fn add(&self, rhs: &UniGCPoly) -> UniGCPoly {
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len().max(rhs.coeffs.len())];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[k] += c;
        }
        for (k, c) in rhs.coeffs.iter().enumerate() {
            coeffs[k] += c;
        }
        UniGCPoly::new(coeffs)
    }

    pub fn mul(&self, rhs: &UniGCPoly) -> UniGCPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniGCPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        UniGCPoly::new(coeffs)
    }
}

/// Wire form: ascending exact decimal integer coefficient strings. The zero
/// polynomial serializes as an empty list.
#[derive(Serialize, Deserialize)]
pub struct PolynomialJson {
    pub coeffs: Vec<String>,
}

impl From<&UniGCPoly> for PolynomialJson {
    fn from(p: &UniGCPoly) -> PolynomialJson {
        PolynomialJson {
            coeffs: p.coeffs.iter().map(BigInt::to_string).collect(),
        }
    }
}

impl TryFrom<PolynomialJson> for UniGCPoly {
    type Error = String;

    fn try_from(j: PolynomialJson) -> Result<UniGCPoly, String> {
        let coeffs = j
            .coeffs
            .iter()
            .map(|s| {
                s.parse::<BigInt>()
                    .map_err(|_| format!("invalid integer literal {s:?}"))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(UniGCPoly::new(coeffs))
    }
}

/// Counting polynomial of a family: coefficient of `z^k` is the number of
/// members with `k` arcs.
pub fn poly_family(
    g: &OrientedGraph,
    family: Family,
    bipartition: Option<&Bipartition>,
) -> Result<UniGCPoly, EnumError> {
    let mut p = UniGCPoly::zero();
    let one = BigInt::one();
    for f in enum_family(g, family, bipartition)? {
        p.add_to_coeff(f.size(), &one);
    }
    Ok(UniGCPoly::new(p.coeffs))
}

/// Counting polynomial constrained to a vertex set, with an explicit flag for
/// the identically-zero outcome.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct V0Poly {
    pub poly: UniGCPoly,
    pub identically_zero: bool,
}

/// Counts unbranched subgraphs going through every vertex outside `v0`: each
/// such vertex must have exactly one ingoing and one outgoing arc in `F`.
pub fn poly_v0(g: &OrientedGraph, v0: &BTreeSet<String>) -> Result<V0Poly, EnumError> {
    let mut outside = Vec::new();
    for id in v0 {
        if g.vertex_position(id).is_none() {
            return Err(EnumError::Graph(crate::graph::GraphError::NoSuchVertex(
                id.clone(),
            )));
        }
    }
    for v in 0..g.vertex_count() {
        if !v0.contains(g.vertex_id(v)) {
            outside.push(v);
        }
    }
    let mut p = UniGCPoly::zero();
    let one = BigInt::one();
    for f in enum_family(g, Family::Unbranched, None)? {
        let (out, inn) = f.degrees();
        if outside.iter().all(|&v| out[v] == 1 && inn[v] == 1) {
            p.add_to_coeff(f.size(), &one);
        }
    }
    let poly = UniGCPoly::new(p.coeffs);
    let identically_zero = poly.is_zero();
    Ok(V0Poly {
        poly,
        identically_zero,
    })
}

/// Counts unbranched subgraphs with all component sizes even, by component
/// decomposition alone. Unlike the even family behind [`poly_family`] this
/// asks for no bipartition: the counting identity it serves (the closed form
/// for doubled graphs) is combinatorial, while the bipartition requirement on
/// the family belongs to the zero-location hypothesis.
pub fn poly_unbranched_even_by_sizes(g: &OrientedGraph) -> Result<UniGCPoly, EnumError> {
    let mut p = UniGCPoly::zero();
    let one = BigInt::one();
    for f in enum_family(g, Family::Unbranched, None)? {
        if decompose(&f)?.all_sizes_even() {
            p.add_to_coeff(f.size(), &one);
        }
    }
    Ok(UniGCPoly::new(p.coeffs))
}

/// Vertex-weight assignment for the multivariate expansion.
#[derive(Clone, Debug)]
pub enum PWeights {
    /// `a′(x) = a″(x) = 1`: every component weighs 1.
    Ones,
    /// `a′ = (1+i)/√2` on V1, `(1-i)/√2` on V2, `a″ = conj(a′)`: loops weigh
    /// 1, paths weigh `a″(x′)·a′(x″)`.
    ZetaBipartite(Bipartition),
    /// `a′ = a″ = 1` on the set, `0` off it: a member contributes 1 iff every
    /// vertex outside the set has exactly one ingoing and one outgoing arc.
    V0(BTreeSet<String>),
}

/// The multivariate polynomial over arc variables, built by summing over the
/// unbranched family with per-component weights.
pub fn multivar_p(g: &OrientedGraph, weights: &PWeights) -> Result<MultiAffinePoly, EnumError> {
    let ids: Vec<String> = g.arcs().iter().map(|a| a.id().to_string()).collect();
    let universe = Universe::new(ids)?;
    let sides = match weights {
        PWeights::ZetaBipartite(bp) => Some(g.bipartition_sides(bp)?),
        _ => None,
    };
    if let PWeights::V0(set) = weights {
        for id in set {
            if g.vertex_position(id).is_none() {
                return Err(EnumError::Graph(crate::graph::GraphError::NoSuchVertex(
                    id.clone(),
                )));
            }
        }
    }

    let mut p = MultiAffinePoly::zero(universe);
    for f in enum_family(g, Family::Unbranched, None)? {
        let coeff = match weights {
            PWeights::Ones => Cyc8::one(),
            PWeights::ZetaBipartite(_) => {
                let sides = sides.as_ref().unwrap();
                let mut w = Cyc8::one();
                for c in decompose(&f)?.components {
                    if let ComponentKind::Path { start, end } = c.kind {
                        // a″(x′)·a′(x″) with a′ = ζ on V1, ζ̄ on V2, a″ = conj a′.
                        let a_in_start = match sides[start] {
                            Side::V1 => Cyc8::zeta_conj(),
                            Side::V2 => Cyc8::zeta(),
                        };
                        let a_out_end = match sides[end] {
                            Side::V1 => Cyc8::zeta(),
                            Side::V2 => Cyc8::zeta_conj(),
                        };
                        w = &w * &(&a_in_start * &a_out_end);
                    }
                }
                w
            }
            PWeights::V0(set) => {
                let (out, inn) = f.degrees();
                let covered = (0..g.vertex_count()).all(|v| {
                    set.contains(g.vertex_id(v)) || (out[v] == 1 && inn[v] == 1)
                });
                if covered {
                    Cyc8::one()
                } else {
                    Cyc8::zero()
                }
            }
        };
        if !coeff.is_zero() {
            p.insert_add(f.mask() as u128, coeff);
        }
    }
    Ok(p)
}

/// Outcome of the pairing condition test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairingOutcome {
    Pass,
    /// Arc ids of a connected unbranched subgraph with no endpoint-swapped,
    /// size-matched counterpart.
    Fail { witness: Vec<String> },
}

/// Checks a finitely-verifiable form of the pairing hypothesis: connected
/// members of `U(E)` are grouped by (vertex set, size, loop flag, ordered
/// endpoint pair); for every odd size, each non-loop group must have the same
/// cardinality as its endpoint-swapped mirror. The bipartition argument
/// documents the intended context; the grouping itself does not consult it.
pub fn pairing_check(
    g: &OrientedGraph,
    _bipartition: &Bipartition,
) -> Result<PairingOutcome, EnumError> {
    type Key = (Vec<usize>, usize, Option<(usize, usize)>);
    let mut groups: BTreeMap<Key, (usize, u64)> = BTreeMap::new();
    for f in enum_family(g, Family::Unbranched, None)? {
        if f.size() == 0 {
            continue;
        }
        let dec = decompose(&f)?;
        if dec.components.len() != 1 {
            continue;
        }
        let c = &dec.components[0];
        let endpoints = match c.kind {
            ComponentKind::Loop => None,
            ComponentKind::Path { start, end } => Some((start, end)),
        };
        let key = (c.vertex_set(g), c.size(), endpoints);
        let entry = groups.entry(key).or_insert((0, f.mask()));
        entry.0 += 1;
        entry.1 = entry.1.min(f.mask());
    }

    for (key, &(count, mask)) in &groups {
        let (vs, size, endpoints) = key;
        if size % 2 == 0 {
            continue;
        }
        let Some((u, v)) = endpoints else { continue };
        let mirror = (vs.clone(), *size, Some((*v, *u)));
        let mirror_count = groups.get(&mirror).map_or(0, |&(c, _)| c);
        if count > mirror_count {
            let witness = Subgraph::new(g, mask)?.arc_ids();
            return Ok(PairingOutcome::Fail { witness });
        }
        if count < mirror_count {
            let mirror_mask = groups[&mirror].1;
            let witness = Subgraph::new(g, mirror_mask)?.arc_ids();
            return Ok(PairingOutcome::Fail { witness });
        }
    }
    Ok(PairingOutcome::Pass)
}

/// Counting polynomial of degree-≤-2 edge subsets of a non-oriented graph.
pub fn poly_undirected_unbranched(g: &UndirectedGraph) -> Result<UniGCPoly, EnumError> {
    let mut p = UniGCPoly::zero();
    let one = BigInt::one();
    for mask in enum_undirected_unbranched(g)? {
        p.add_to_coeff(mask.count_ones() as usize, &one);
    }
    Ok(UniGCPoly::new(p.coeffs))
}

/// Closed form for the oriented unbranched polynomial of a doubled simple
/// graph: a singleton component contributes `2z + z²`, a larger component
/// `2z^{|F_j|}`.
pub fn closed_form_oriented_unbranched(g: &UndirectedGraph) -> Result<UniGCPoly, EnumError> {
    if !g.is_simple() {
        return Err(EnumError::NotSimple);
    }
    let two = BigInt::from(2);
    let mut total = UniGCPoly::zero();
    for mask in enum_undirected_unbranched(g)? {
        let mut term = UniGCPoly::one();
        for s in undirected_component_sizes(g, mask) {
            let factor = if s == 1 {
                // 2z + z²
                UniGCPoly::new(vec![BigInt::zero(), two.clone(), BigInt::one()])
            } else {
                UniGCPoly::monomial(s, two.clone())
            };
            term = term.mul(&factor);
        }
        total = total.add(&term);
    }
    Ok(total)
}

/// Which per-component factor the even closed form uses for components with
/// more than one edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EvenClosedFormVariant {
    /// `2·z^{|F_j|}`: the form the doubled-graph enumeration confirms.
    Corrected,
    /// `(2z)^{|F_j|} = 2^{|F_j|}·z^{|F_j|}`: kept computable for comparison;
    /// refuted by direct enumeration already on the 2-edge path.
    PaperLiteral,
}

/// Closed form for the even oriented unbranched polynomial of a doubled
/// simple graph, summed over subsets whose components are singletons or even:
/// `z^{2·#singletons} · Π 2·z^{|F_j|}` over the larger components.
pub fn closed_form_oriented_unbranched_even(
    g: &UndirectedGraph,
    variant: EvenClosedFormVariant,
) -> Result<UniGCPoly, EnumError> {
    if !g.is_simple() {
        return Err(EnumError::NotSimple);
    }
    let mut total = UniGCPoly::zero();
    'subset: for mask in enum_undirected_unbranched(g)? {
        let mut degree = 0usize;
        let mut weight = BigInt::one();
        for s in undirected_component_sizes(g, mask) {
            if s == 1 {
                degree += 2;
            } else if s % 2 == 0 {
                degree += s;
                match variant {
                    EvenClosedFormVariant::Corrected => weight *= 2,
                    EvenClosedFormVariant::PaperLiteral => weight *= BigInt::from(1) << s,
                }
            } else {
                continue 'subset;
            }
        }
        total = total.add(&UniGCPoly::monomial(degree, weight));
    }
    Ok(total)
}
