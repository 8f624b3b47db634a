//! Depth-bounded connection search that replays chains literally.
//!
//! Unlike [`crate::connections::mu`], the image of a step here is computed
//! straight from the table: every permutation of the argument list is
//! resolved into a placement and looked up, and a backward image tests every
//! candidate preimage the same way. Every step over all argument multisets is
//! tried at each level. This is slow and exists to cross-check
//! [`crate::connections::components`].

use std::collections::{BTreeSet, HashMap, HashSet};

use itertools::Itertools;

use crate::budget::Budget;
use crate::connections::{Direction, Step};
use crate::error::{Error, Result};
use crate::partition::{ComponentPartition, DisjointSets};
use crate::structure::{KModuleStructure, ModuleIndex, Placement, Slot};

struct LiteralMu<'a> {
    st: &'a KModuleStructure,
    permutations: Vec<Vec<usize>>,
    cache: HashMap<(ModuleIndex, usize), BTreeSet<ModuleIndex>>,
    spent: u128,
    budget: Budget,
}

impl<'a> LiteralMu<'a> {
    fn new(st: &'a KModuleStructure, budget: Budget) -> Self {
        let n = st.n();
        LiteralMu {
            st,
            permutations: (0..n).permutations(n).collect(),
            cache: HashMap::new(),
            spent: 0,
            budget,
        }
    }

    fn charge(&mut self, amount: usize) -> Result<()> {
        self.spent += amount as u128;
        if self.spent > self.budget.get() as u128 {
            return Err(Error::Budget {
                needed: self.spent,
                budget: self.budget.get(),
            });
        }
        Ok(())
    }

    /// Union over all arrangements of `first, step args` of the product target.
    fn arranged_targets(&self, first: ModuleIndex, step: &Step) -> BTreeSet<ModuleIndex> {
        let args: Vec<Slot> = std::iter::once(Slot::Module(first))
            .chain(step.module_args().iter().map(|&i| Slot::Module(i)))
            .chain(step.space_args().iter().map(|&j| Slot::Space(j)))
            .collect();
        let mut out = BTreeSet::new();
        let mut slots = args.clone();
        for sigma in &self.permutations {
            for (arg, &pos) in args.iter().zip(sigma) {
                slots[pos] = *arg;
            }
            let placement = Placement::new(slots.clone());
            if let Some(product) = self.st.evaluate(&placement).ok().flatten() {
                out.insert(product.target);
            }
        }
        out
    }

    fn mu(
        &mut self,
        i: ModuleIndex,
        step_id: usize,
        step: &Step,
    ) -> Result<&BTreeSet<ModuleIndex>> {
        if !self.cache.contains_key(&(i, step_id)) {
            let image = match step.direction() {
                Direction::Forward => {
                    self.charge(self.permutations.len())?;
                    self.arranged_targets(i, step)
                }
                Direction::Backward => {
                    self.charge(self.permutations.len() * self.st.module_dim())?;
                    (0..self.st.module_dim())
                        .filter(|&cand| self.arranged_targets(cand, step).contains(&i))
                        .collect()
                }
            };
            self.cache.insert((i, step_id), image);
        }
        Ok(&self.cache[&(i, step_id)])
    }
}

/// Every step whose arguments are multisets over the index sets, forward and
/// backward.
pub fn all_steps(st: &KModuleStructure) -> Vec<Step> {
    let modules: Vec<Vec<usize>> = (0..st.module_dim())
        .combinations_with_replacement(st.k().saturating_sub(1))
        .collect();
    let spaces: Vec<Vec<usize>> = (0..st.space_dim())
        .combinations_with_replacement(st.n().saturating_sub(st.k()))
        .collect();
    let mut out = Vec::new();
    for direction in [Direction::Forward, Direction::Backward] {
        for m in &modules {
            for s in &spaces {
                out.push(Step::new(direction, m.clone(), s.clone()));
            }
        }
    }
    out
}

/// Indices reachable from `source` by some chain of at most `max_depth` steps
/// whose intermediate images are all nonempty. Always contains `source`.
pub fn oracle_reach(
    st: &KModuleStructure,
    source: ModuleIndex,
    max_depth: usize,
    budget: Budget,
) -> Result<BTreeSet<ModuleIndex>> {
    let steps = all_steps(st);
    let mut literal = LiteralMu::new(st, budget);
    reach_with(&mut literal, &steps, source, max_depth)
}

fn reach_with(
    literal: &mut LiteralMu<'_>,
    steps: &[Step],
    source: ModuleIndex,
    max_depth: usize,
) -> Result<BTreeSet<ModuleIndex>> {
    let start = BTreeSet::from([source]);
    let mut reached = start.clone();
    let mut seen: HashSet<BTreeSet<ModuleIndex>> = HashSet::from([start.clone()]);
    let mut frontier = vec![start];
    for _ in 0..max_depth {
        let mut next = Vec::new();
        for set in &frontier {
            for (step_id, step) in steps.iter().enumerate() {
                let mut image = BTreeSet::new();
                for &i in set {
                    image.extend(literal.mu(i, step_id, step)?.iter().copied());
                }
                if image.is_empty() {
                    continue;
                }
                reached.extend(image.iter().copied());
                if seen.insert(image.clone()) {
                    next.push(image);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    Ok(reached)
}

/// The connection classes found by literal chain search up to `max_depth`.
/// With `max_depth >= 2 * |I|` the search is saturated.
pub fn components_oracle(
    st: &KModuleStructure,
    max_depth: usize,
    budget: Budget,
) -> Result<ComponentPartition> {
    if max_depth == 0 {
        return Err(Error::Dimension("max_depth must be at least 1".into()));
    }
    let steps = all_steps(st);
    let mut literal = LiteralMu::new(st, budget);
    let mut sets = DisjointSets::new(st.module_dim());
    for source in 0..st.module_dim() {
        for target in reach_with(&mut literal, &steps, source, max_depth)? {
            sets.union(source, target);
        }
    }
    Ok(ComponentPartition::from_disjoint_sets(sets))
}
