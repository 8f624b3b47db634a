//! Direct-sum decomposition of a k-module into the spans of its connection
//! classes, plus checks that each class really is a submodule and that
//! distinct classes multiply to zero.

use std::collections::{BTreeMap, BTreeSet};

use crate::connections::components;
use crate::error::{Error, Result};
use crate::partition::ComponentPartition;
use crate::structure::{KModuleStructure, ModuleIndex, Placement, Product, Shape, Slot};

/// The span of one connection class. Its basis is inherited: it is exactly
/// the ambient basis vectors indexed by `members`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubmoduleComponent {
    pub representative: ModuleIndex,
    pub members: Vec<ModuleIndex>,
}

impl SubmoduleComponent {
    pub fn inherited_basis(&self) -> &[ModuleIndex] {
        &self.members
    }

    pub fn member_set(&self) -> BTreeSet<ModuleIndex> {
        self.members.iter().copied().collect()
    }
}

/// One component per connection class, ordered by representative (the
/// smallest member).
pub fn decompose(st: &KModuleStructure) -> Vec<SubmoduleComponent> {
    components(st)
        .classes()
        .iter()
        .map(|class| SubmoduleComponent {
            representative: class[0],
            members: class.clone(),
        })
        .collect()
}

/// More than one class rules out simplicity. One class says nothing.
pub fn obstructs_simplicity(st: &KModuleStructure) -> bool {
    components(st).num_classes() >= 2
}

/// True iff the span of `set` is closed: every nonzero product with some
/// module occupant in `set` lands in `set`.
pub fn verify_submodule(st: &KModuleStructure, set: &BTreeSet<ModuleIndex>) -> bool {
    st.support().all(|(placement, product)| {
        let touches = placement.module_occupants().iter().any(|i| set.contains(i));
        !touches || set.contains(&product.target)
    })
}

/// True iff no nonzero product involves two classes: its module occupants
/// and its target all share one class.
pub fn verify_orthogonality(st: &KModuleStructure, partition: &ComponentPartition) -> bool {
    st.support().all(|(placement, product)| {
        placement
            .module_occupants()
            .iter()
            .all(|&i| partition.same_class(i, product.target))
    })
}

/// The submodule spanned by `set`, reindexed to `0..set.len()` in ascending
/// order. Space indices are kept.
pub fn restrict(st: &KModuleStructure, set: &BTreeSet<ModuleIndex>) -> Result<KModuleStructure> {
    if set.iter().any(|&i| i >= st.module_dim()) || set.is_empty() {
        return Err(Error::NotASubmodule(format!(
            "{set:?} is empty or out of range"
        )));
    }
    if !verify_submodule(st, set) {
        return Err(Error::NotASubmodule(format!("{set:?} is not closed")));
    }
    let remap: BTreeMap<ModuleIndex, ModuleIndex> = set
        .iter()
        .enumerate()
        .map(|(new, &old)| (old, new))
        .collect();
    let mut table = BTreeMap::new();
    for (placement, product) in st.support() {
        let inside = placement.slots().iter().all(|s| match s {
            Slot::Module(i) => remap.contains_key(i),
            Slot::Space(_) => true,
        });
        if !inside {
            continue;
        }
        let slots = placement
            .slots()
            .iter()
            .map(|s| match *s {
                Slot::Module(i) => Slot::Module(remap[&i]),
                other => other,
            })
            .collect();
        table.insert(
            Placement::new(slots),
            Product::new(remap[&product.target], product.coeff),
        );
    }
    let shape = Shape::new(st.n(), st.k(), set.len(), st.space_dim());
    Ok(KModuleStructure::from_table(shape, table))
}
