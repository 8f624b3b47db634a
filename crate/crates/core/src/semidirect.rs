//! A k-module over an n-ary algebra, and the combined object `A ⊕ V`.
//!
//! The combined object is treated as a module over itself with every slot a
//! module slot (k' = n, no space part). Its basis indices are the module
//! basis first, `0..|I|`, followed by the algebra basis, `|I|..|I|+|J|`.
//! A product is nonzero only when all arguments come from the algebra (the
//! algebra product) or exactly k come from the module (the action).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::connections::components;
use crate::decomposition::decompose;
use crate::error::{Error, Result};
use crate::partition::ComponentPartition;
use crate::structure::{
    KModuleStructure, ModuleIndex, NAryAlgebra, Placement, Product, Shape, Slot, SpaceIndex,
};

/// A k-module whose acting space is an n-ary algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleOverAlgebra {
    algebra: NAryAlgebra,
    action: KModuleStructure,
}

impl ModuleOverAlgebra {
    pub fn new(algebra: NAryAlgebra, action: KModuleStructure) -> Result<Self> {
        if algebra.n() != action.n() {
            return Err(Error::ArityMismatch(format!(
                "algebra is {}-ary but the action is {}-linear",
                algebra.n(),
                action.n()
            )));
        }
        if algebra.dim() != action.space_dim() {
            return Err(Error::ArityMismatch(format!(
                "algebra has dimension {} but the action acts through {} basis elements",
                algebra.dim(),
                action.space_dim()
            )));
        }
        if action.k() >= action.n() {
            return Err(Error::ArityMismatch(format!(
                "an action needs an algebra slot, but k = {} and n = {}",
                action.k(),
                action.n()
            )));
        }
        Ok(ModuleOverAlgebra { algebra, action })
    }

    pub fn algebra(&self) -> &NAryAlgebra {
        &self.algebra
    }

    pub fn action(&self) -> &KModuleStructure {
        &self.action
    }
}

/// Which half of the combined index set an index belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Part {
    Module(ModuleIndex),
    Algebra(SpaceIndex),
}

/// `A ⊕ V` as a module over itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CombinedStructure {
    structure: KModuleStructure,
    module_dim: usize,
    algebra_dim: usize,
    k: usize,
}

impl CombinedStructure {
    pub fn structure(&self) -> &KModuleStructure {
        &self.structure
    }

    pub fn module_dim(&self) -> usize {
        self.module_dim
    }

    pub fn algebra_dim(&self) -> usize {
        self.algebra_dim
    }

    pub fn module_index(&self, i: ModuleIndex) -> usize {
        i
    }

    pub fn algebra_index(&self, j: SpaceIndex) -> usize {
        self.module_dim + j
    }

    pub fn part(&self, idx: usize) -> Part {
        if idx < self.module_dim {
            Part::Module(idx)
        } else {
            Part::Algebra(idx - self.module_dim)
        }
    }

    /// Every entry is either all-algebra or has exactly k module occupants.
    pub fn parts_are_consistent(&self) -> bool {
        self.structure.support().all(|(placement, product)| {
            let from_module = placement
                .module_occupants()
                .iter()
                .filter(|&&x| x < self.module_dim)
                .count();
            let target_in_module = product.target < self.module_dim;
            (from_module == 0 && !target_in_module) || (from_module == self.k && target_in_module)
        })
    }
}

/// Transcribes the algebra product and the action into one table on the
/// combined index set. Every other argument mix is zero.
pub fn build_semidirect(pair: &ModuleOverAlgebra) -> CombinedStructure {
    let action = pair.action();
    let module_dim = action.module_dim();
    let algebra_dim = pair.algebra().dim();
    let n = action.n();
    let mut table = BTreeMap::new();
    for (args, product) in pair.algebra().support() {
        let slots = args.iter().map(|&j| Slot::Module(module_dim + j)).collect();
        table.insert(
            Placement::new(slots),
            Product::new(module_dim + product.target, product.coeff),
        );
    }
    for (placement, product) in action.support() {
        let slots = placement
            .slots()
            .iter()
            .map(|s| match *s {
                Slot::Module(i) => Slot::Module(i),
                Slot::Space(j) => Slot::Module(module_dim + j),
            })
            .collect();
        table.insert(Placement::new(slots), product);
    }
    let shape = Shape::new(n, n, module_dim + algebra_dim, 0);
    CombinedStructure {
        structure: KModuleStructure::from_table(shape, table),
        module_dim,
        algebra_dim,
        k: action.k(),
    }
}

/// One class `U_α` of the combined decomposition, split into its module
/// part `V_α` and algebra part `A_α`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CombinedClass {
    pub representative: usize,
    pub module_part: Vec<ModuleIndex>,
    pub algebra_part: Vec<SpaceIndex>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CombinedDecomposition {
    pub classes: Vec<CombinedClass>,
    /// Classes with a nonzero module part.
    pub omega_v: Vec<usize>,
    /// Classes with a nonzero algebra part.
    pub omega_a: Vec<usize>,
    partition: ComponentPartition,
    module_dim: usize,
}

impl CombinedDecomposition {
    pub fn class_of_module(&self, i: ModuleIndex) -> usize {
        self.partition.class_id(i)
    }

    pub fn class_of_algebra(&self, j: SpaceIndex) -> usize {
        self.partition.class_id(self.module_dim + j)
    }

    pub fn partition(&self) -> &ComponentPartition {
        &self.partition
    }
}

pub fn decompose_combined(combined: &CombinedStructure) -> CombinedDecomposition {
    let st = combined.structure();
    let partition = components(st);
    let mut classes = Vec::new();
    for comp in decompose(st) {
        let mut module_part = Vec::new();
        let mut algebra_part = Vec::new();
        for idx in comp.members {
            match combined.part(idx) {
                Part::Module(i) => module_part.push(i),
                Part::Algebra(j) => algebra_part.push(j),
            }
        }
        classes.push(CombinedClass {
            representative: comp.representative,
            module_part,
            algebra_part,
        });
    }
    let omega_v = (0..classes.len())
        .filter(|&c| !classes[c].module_part.is_empty())
        .collect();
    let omega_a = (0..classes.len())
        .filter(|&c| !classes[c].algebra_part.is_empty())
        .collect();
    CombinedDecomposition {
        classes,
        omega_v,
        omega_a,
        partition,
        module_dim: combined.module_dim(),
    }
}

/// True iff the span of `set` absorbs the algebra product: any nonzero
/// product with a factor in `set` lands in `set`.
pub fn verify_ideal(algebra: &NAryAlgebra, set: &BTreeSet<SpaceIndex>) -> bool {
    algebra.support().all(|(args, product)| {
        !args.iter().any(|j| set.contains(j)) || set.contains(&product.target)
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairingViolation {
    /// One action entry has algebra factors in two or more classes.
    SplitAlgebraFactors {
        placement: Placement,
        classes: Vec<usize>,
    },
    /// One action entry has module factors in two or more classes.
    SplitModuleFactors {
        placement: Placement,
        classes: Vec<usize>,
    },
    /// Two action entries touching the same module class disagree on the
    /// algebra class.
    Inconsistent {
        module_class: usize,
        first: usize,
        second: usize,
    },
    NotInjective {
        algebra_class: usize,
        module_classes: Vec<usize>,
    },
    NotSurjective {
        algebra_class: usize,
    },
}

impl fmt::Display for PairingViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PairingViolation::SplitAlgebraFactors { placement, classes } => {
                write!(f, "{placement}: algebra factors span classes {classes:?}")
            }
            PairingViolation::SplitModuleFactors { placement, classes } => {
                write!(f, "{placement}: module factors span classes {classes:?}")
            }
            PairingViolation::Inconsistent {
                module_class,
                first,
                second,
            } => write!(
                f,
                "module class {module_class} pairs with algebra classes {first} and {second}"
            ),
            PairingViolation::NotInjective {
                algebra_class,
                module_classes,
            } => write!(
                f,
                "algebra class {algebra_class} is hit by module classes {module_classes:?}"
            ),
            PairingViolation::NotSurjective { algebra_class } => {
                write!(f, "algebra class {algebra_class} is not hit")
            }
        }
    }
}

/// Which module classes are acted on, which algebra classes act, and the
/// map between them. Class ids index [`CombinedDecomposition::classes`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingReport {
    pub decomposition: CombinedDecomposition,
    pub omega_v_active: Vec<usize>,
    pub omega_a_active: Vec<usize>,
    pub f: BTreeMap<usize, usize>,
    pub violations: Vec<PairingViolation>,
}

impl PairingReport {
    pub fn is_bijection(&self) -> bool {
        let image: BTreeSet<usize> = self.f.values().copied().collect();
        self.f.len() == self.omega_v_active.len()
            && self.omega_v_active.iter().all(|a| self.f.contains_key(a))
            && image.len() == self.f.len()
            && image.into_iter().eq(self.omega_a_active.iter().copied())
    }
}

/// Builds and decomposes `A ⊕ V`, then matches each acted-on module class
/// with the unique algebra class acting on it.
pub fn pairing(pair: &ModuleOverAlgebra) -> PairingReport {
    let combined = build_semidirect(pair);
    let dec = decompose_combined(&combined);
    let mut active_v = BTreeSet::new();
    let mut active_a = BTreeSet::new();
    let mut f: BTreeMap<usize, usize> = BTreeMap::new();
    let mut violations = Vec::new();

    for (placement, _) in pair.action().support() {
        let v_classes: BTreeSet<usize> = placement
            .module_occupants()
            .into_iter()
            .map(|i| dec.class_of_module(i))
            .collect();
        let a_classes: BTreeSet<usize> = placement
            .space_occupants()
            .into_iter()
            .map(|j| dec.class_of_algebra(j))
            .collect();
        if v_classes.len() > 1 {
            violations.push(PairingViolation::SplitModuleFactors {
                placement: placement.clone(),
                classes: v_classes.iter().copied().collect(),
            });
        }
        if a_classes.len() > 1 {
            violations.push(PairingViolation::SplitAlgebraFactors {
                placement: placement.clone(),
                classes: a_classes.iter().copied().collect(),
            });
        }
        active_v.extend(v_classes.iter().copied());
        active_a.extend(a_classes.iter().copied());
        for &alpha in &v_classes {
            for &beta in &a_classes {
                match f.get(&alpha) {
                    None => {
                        f.insert(alpha, beta);
                    }
                    Some(&prev) if prev != beta => {
                        violations.push(PairingViolation::Inconsistent {
                            module_class: alpha,
                            first: prev,
                            second: beta,
                        });
                    }
                    Some(_) => {}
                }
            }
        }
    }

    let mut preimages: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (&alpha, &beta) in &f {
        preimages.entry(beta).or_default().push(alpha);
    }
    for (&beta, alphas) in &preimages {
        if alphas.len() > 1 {
            violations.push(PairingViolation::NotInjective {
                algebra_class: beta,
                module_classes: alphas.clone(),
            });
        }
    }
    for &beta in &active_a {
        if !preimages.contains_key(&beta) {
            violations.push(PairingViolation::NotSurjective {
                algebra_class: beta,
            });
        }
    }

    PairingReport {
        decomposition: dec,
        omega_v_active: active_v.into_iter().collect(),
        omega_a_active: active_a.into_iter().collect(),
        f,
        violations,
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;
    use crate::scalar::Scalar;
    use crate::structure::Entry;

    /// Two idempotents acting on one module vector each.
    pub fn e4() -> ModuleOverAlgebra {
        let algebra = NAryAlgebra::new(
            2,
            2,
            vec![
                (vec![0, 0], 0, Scalar::one()),
                (vec![1, 1], 1, Scalar::one()),
            ],
        )
        .unwrap();
        let action = KModuleStructure::from_entries(
            Shape::new(2, 1, 2, 2),
            vec![
                Entry::new(vec![Slot::Module(0), Slot::Space(0)], 0, Scalar::one()),
                Entry::new(vec![Slot::Module(1), Slot::Space(1)], 1, Scalar::one()),
            ],
        )
        .unwrap();
        ModuleOverAlgebra::new(algebra, action).unwrap()
    }
}
