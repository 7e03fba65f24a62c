//! Exact multiaffine polynomials over a fixed, ordered variable universe.
//!
//! A term maps a subset of the universe (a bitmask, bit order = universe
//! order) to a nonzero eighth-cyclotomic coefficient, so every variable
//! appears to power at most one by construction. Zero coefficients are never
//! stored.

use std::collections::BTreeMap;
use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyc8::Cyc8;

/// Hard cap on universe size: subsets are u128 bitmasks.
pub const MAX_VARS: usize = 128;

pub type VarMask = u128;

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("universe has {count} variables, at most {MAX_VARS} supported")]
    TooManyVariables { count: usize },
    #[error("duplicate variable id {0:?}")]
    DuplicateVariable(String),
    #[error("polynomials live over different universes")]
    UniverseMismatch,
    #[error("variable {0:?} occurs in terms of both factors")]
    SharedVariable(String),
    #[error("variable {0:?} is not in the universe")]
    VariableNotInUniverse(String),
    #[error("contraction target {0:?} already occurs in the polynomial")]
    ContractionTargetInUse(String),
    #[error("contraction needs three distinct variables")]
    ContractionVariablesOverlap,
    #[error("term references variables outside the universe")]
    TermOutOfRange,
    #[error("unknown vertex id {0:?}")]
    UnknownVertex(String),
    #[error(transparent)]
    Graph(#[from] crate::graph::GraphError),
}

/// An ordered set of distinct variable ids.
#[derive(Debug, PartialEq, Eq)]
pub struct Universe {
    ids: Vec<String>,
    index: HashMap<String, usize>,
}

impl Universe {
    pub fn new(ids: Vec<String>) -> Result<Arc<Self>, EngineError> {
        if ids.len() > MAX_VARS {
            return Err(EngineError::TooManyVariables { count: ids.len() });
        }
        let mut index = HashMap::with_capacity(ids.len());
        for (k, id) in ids.iter().enumerate() {
            if index.insert(id.clone(), k).is_some() {
                return Err(EngineError::DuplicateVariable(id.clone()));
            }
        }
        Ok(Arc::new(Universe { ids, index }))
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, k: usize) -> &str {
        &self.ids[k]
    }

    pub fn position(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }
}

/// A multiaffine polynomial: finite map from variable subsets to nonzero
/// coefficients.
#[derive(Clone, Debug)]
pub struct MultiAffinePoly {
    universe: Arc<Universe>,
    terms: BTreeMap<VarMask, Cyc8>,
}

impl PartialEq for MultiAffinePoly {
    fn eq(&self, other: &Self) -> bool {
        self.universe.ids() == other.universe.ids() && self.terms == other.terms
    }
}

impl Eq for MultiAffinePoly {}

impl MultiAffinePoly {
    pub fn zero(universe: Arc<Universe>) -> Self {
        MultiAffinePoly {
            universe,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(universe: Arc<Universe>, c: Cyc8) -> Self {
        let mut p = MultiAffinePoly::zero(universe);
        p.insert_add(0, c);
        p
    }

    pub fn one(universe: Arc<Universe>) -> Self {
        MultiAffinePoly::constant(universe, Cyc8::one())
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (VarMask, &Cyc8)> {
        self.terms.iter().map(|(&m, c)| (m, c))
    }

    pub fn coeff(&self, mask: VarMask) -> Option<&Cyc8> {
        self.terms.get(&mask)
    }

    /// Adds `c` to the coefficient of `mask`, dropping the term if it lands
    /// on zero.
    pub fn insert_add(&mut self, mask: VarMask, c: Cyc8) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mask) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Union of the variable sets of all terms.
    pub fn support(&self) -> VarMask {
        self.terms.keys().fold(0, |acc, &m| acc | m)
    }

    fn same_universe(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.universe, &other.universe)
            || self.universe.ids() == other.universe.ids()
    }

    /// Exact product of polynomials over the same universe whose terms touch
    /// disjoint variable sets, which keeps the result multiaffine.
    pub fn multiply(&self, other: &Self) -> Result<Self, EngineError> {
        if !self.same_universe(other) {
            return Err(EngineError::UniverseMismatch);
        }
        let shared = self.support() & other.support();
        if shared != 0 {
            let k = shared.trailing_zeros() as usize;
            return Err(EngineError::SharedVariable(self.universe.id(k).to_string()));
        }
        let mut out = MultiAffinePoly::zero(self.universe.clone());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.insert_add(m1 | m2, c1 * c2);
            }
        }
        Ok(out)
    }

    /// Asano contraction by variable index: writing the polynomial as
    /// `A + B·v1 + C·v2 + D·v1·v2` with A, B, C, D free of v1 and v2, returns
    /// `A + D·target`. The target slot must be distinct from v1, v2 and not
    /// occur in any term.
    pub fn asano_contract(
        &self,
        v1: usize,
        v2: usize,
        target: usize,
    ) -> Result<Self, EngineError> {
        let len = self.universe.len();
        for k in [v1, v2, target] {
            if k >= len {
                return Err(EngineError::VariableNotInUniverse(format!("#{k}")));
            }
        }
        if v1 == v2 || v1 == target || v2 == target {
            return Err(EngineError::ContractionVariablesOverlap);
        }
        let target_bit: VarMask = 1 << target;
        if self.support() & target_bit != 0 {
            return Err(EngineError::ContractionTargetInUse(
                self.universe.id(target).to_string(),
            ));
        }
        let b1: VarMask = 1 << v1;
        let b2: VarMask = 1 << v2;
        let mut out = MultiAffinePoly::zero(self.universe.clone());
        for (&m, c) in &self.terms {
            match (m & b1 != 0, m & b2 != 0) {
                (false, false) => out.insert_add(m, c.clone()),
                (true, true) => out.insert_add((m & !(b1 | b2)) | target_bit, c.clone()),
                _ => {}
            }
        }
        Ok(out)
    }

    /// Asano contraction by variable id.
    pub fn asano_contract_ids(
        &self,
        v1: &str,
        v2: &str,
        target: &str,
    ) -> Result<Self, EngineError> {
        let pos = |id: &str| {
            self.universe
                .position(id)
                .ok_or_else(|| EngineError::VariableNotInUniverse(id.to_string()))
        };
        self.asano_contract(pos(v1)?, pos(v2)?, pos(target)?)
    }

    /// Sets all variables equal to a single `z`: the coefficient of `z^k` is
    /// the sum of the coefficients of all k-subsets.
    pub fn specialize_all_equal(&self) -> CycUniPoly {
        let mut coeffs = vec![Cyc8::zero(); self.universe.len() + 1];
        for (&m, c) in &self.terms {
            coeffs[m.count_ones() as usize] += c;
        }
        CycUniPoly::new(coeffs)
    }

    /// Rewrites the polynomial over the sub-universe of the given variable
    /// indices (in the given order). Every term must be supported there.
    pub fn project_onto(&self, keep: &[usize]) -> Result<Self, EngineError> {
        let ids: Vec<String> = keep
            .iter()
            .map(|&k| {
                if k < self.universe.len() {
                    Ok(self.universe.id(k).to_string())
                } else {
                    Err(EngineError::VariableNotInUniverse(format!("#{k}")))
                }
            })
            .collect::<Result<_, _>>()?;
        let universe = Universe::new(ids)?;
        let mut keep_mask: VarMask = 0;
        for &k in keep {
            keep_mask |= 1 << k;
        }
        if self.support() & !keep_mask != 0 {
            return Err(EngineError::TermOutOfRange);
        }
        let mut out = MultiAffinePoly::zero(universe);
        for (&m, c) in &self.terms {
            let mut new_mask: VarMask = 0;
            for (new_bit, &old) in keep.iter().enumerate() {
                if m >> old & 1 == 1 {
                    new_mask |= 1 << new_bit;
                }
            }
            out.insert_add(new_mask, c.clone());
        }
        Ok(out)
    }
}

/// A univariate polynomial with eighth-cyclotomic coefficients, dense and
/// ascending; produced by specializing a multiaffine polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycUniPoly {
    coeffs: Vec<Cyc8>,
}

impl CycUniPoly {
    pub fn new(mut coeffs: Vec<Cyc8>) -> Self {
        while coeffs.last().is_some_and(Cyc8::is_zero) {
            coeffs.pop();
        }
        CycUniPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[Cyc8] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

/// Wire form of a multiaffine polynomial: the ordered universe plus one entry
/// per term, each a variable-id subset with its coefficient.
#[derive(Serialize, Deserialize)]
pub struct MultiAffineJson {
    pub vars: Vec<String>,
    pub terms: Vec<MultiAffineTermJson>,
}

#[derive(Serialize, Deserialize)]
pub struct MultiAffineTermJson {
    pub set: Vec<String>,
    pub coeff: Cyc8,
}

impl From<&MultiAffinePoly> for MultiAffineJson {
    fn from(p: &MultiAffinePoly) -> MultiAffineJson {
        let terms = p
            .terms()
            .map(|(m, c)| MultiAffineTermJson {
                set: (0..p.universe().len())
                    .filter(|&k| m >> k & 1 == 1)
                    .map(|k| p.universe().id(k).to_string())
                    .collect(),
                coeff: c.clone(),
            })
            .collect();
        MultiAffineJson {
            vars: p.universe().ids().to_vec(),
            terms,
        }
    }
}

impl TryFrom<MultiAffineJson> for MultiAffinePoly {
    type Error = EngineError;

    fn try_from(j: MultiAffineJson) -> Result<MultiAffinePoly, EngineError> {
        let universe = Universe::new(j.vars)?;
        let mut p = MultiAffinePoly::zero(universe);
        for t in j.terms {
            let mut mask: VarMask = 0;
            for id in &t.set {
                let k = p
                    .universe
                    .position(id)
                    .ok_or_else(|| EngineError::VariableNotInUniverse(id.clone()))?;
                mask |= 1 << k;
            }
            p.insert_add(mask, t.coeff);
        }
        Ok(p)
    }
}
