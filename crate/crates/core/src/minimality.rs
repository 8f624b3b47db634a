//! μ-multiplicativity and minimality.
//!
//! A submodule with an inherited basis is the span of some nonempty
//! `S ⊆ I` that is closed under forward edges, so the smallest such
//! submodule containing `v_i` is spanned by the forward closure of `i`.
//! Minimality therefore means every singleton closure is all of `I`.

use std::collections::{BTreeSet, VecDeque};

use crate::connections::{components, forward_edges};
use crate::error::{Error, Result};
use crate::structure::{KModuleStructure, ModuleIndex};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuReport {
    pub holds: bool,
    /// Ordered pairs `(i, i')` that are missing from the forward-edge
    /// relation although `(i', i)` is present.
    pub missing: Vec<(ModuleIndex, ModuleIndex)>,
}

/// The basis is μ-multiplicative iff every backward relation has a forward
/// witness, i.e. iff the forward-edge relation is symmetric.
pub fn is_mu_multiplicative(st: &KModuleStructure) -> MuReport {
    let edges = forward_edges(st);
    let missing: Vec<_> = edges
        .iter()
        .filter(|&&(a, b)| !edges.contains(&(b, a)))
        .map(|&(a, b)| (b, a))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    MuReport {
        holds: missing.is_empty(),
        missing,
    }
}

/// The smallest set containing `i` whose span is a submodule.
pub fn directed_closure(st: &KModuleStructure, i: ModuleIndex) -> BTreeSet<ModuleIndex> {
    let mut out_edges = vec![Vec::new(); st.module_dim()];
    for (a, b) in forward_edges(st) {
        out_edges[a].push(b);
    }
    closure_from(&out_edges, i)
}

fn closure_from(out_edges: &[Vec<ModuleIndex>], start: ModuleIndex) -> BTreeSet<ModuleIndex> {
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        for &y in &out_edges[x] {
            if seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    seen
}

/// True iff the only nonzero submodule with an inherited basis is the whole
/// module.
pub fn is_minimal(st: &KModuleStructure) -> bool {
    let dim = st.module_dim();
    let mut out_edges = vec![Vec::new(); dim];
    for (a, b) in forward_edges(st) {
        out_edges[a].push(b);
    }
    (0..dim).all(|i| closure_from(&out_edges, i).len() == dim)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TheoremReport {
    /// μ-multiplicative, and minimality agrees with connectivity.
    Agreement { minimal: bool, components: usize },
    /// Not μ-multiplicative; both values are reported without comparison.
    HypothesisNotMet {
        minimal: bool,
        components: usize,
        missing: Vec<(ModuleIndex, ModuleIndex)>,
    },
}

impl TheoremReport {
    pub fn minimal(&self) -> bool {
        match self {
            TheoremReport::Agreement { minimal, .. }
            | TheoremReport::HypothesisNotMet { minimal, .. } => *minimal,
        }
    }

    pub fn components(&self) -> usize {
        match self {
            TheoremReport::Agreement { components, .. }
            | TheoremReport::HypothesisNotMet { components, .. } => *components,
        }
    }
}

/// Under μ-multiplicativity, minimal iff all indices are connected.
pub fn check_minimality_theorem(st: &KModuleStructure) -> Result<TheoremReport> {
    let mu = is_mu_multiplicative(st);
    let minimal = is_minimal(st);
    let classes = components(st).num_classes();
    if !mu.holds {
        return Ok(TheoremReport::HypothesisNotMet {
            minimal,
            components: classes,
            missing: mu.missing,
        });
    }
    if minimal != (classes == 1) {
        return Err(Error::TheoremViolation(format!(
            "μ-multiplicative structure has minimal={minimal} but {classes} components"
        )));
    }
    Ok(TheoremReport::Agreement {
        minimal,
        components: classes,
    })
}
