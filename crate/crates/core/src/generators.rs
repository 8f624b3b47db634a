//! Instance construction: seeded random tables, the cyclic-sum family, and a
//! completion step that makes a table μ-multiplicative.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::budget::Budget;
use crate::connections::forward_edges;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::semidirect::ModuleOverAlgebra;
use crate::structure::{
    KModuleStructure, ModuleIndex, NAryAlgebra, Placement, Product, Shape, Slot,
};

/// Coefficients drawn by the random generators.
pub fn coefficient_pool() -> [Scalar; 5] {
    [
        Scalar::integer(1),
        Scalar::integer(-1),
        Scalar::integer(2),
        Scalar::integer(-2),
        Scalar::new(1, 2).expect("nonzero denominator"),
    ]
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GenSpec {
    pub seed: u64,
    pub shape: Shape,
    /// Inclusion probability of each placement, in `[0, 1]`.
    pub density: f64,
}

impl GenSpec {
    pub fn new(seed: u64, shape: Shape, density: f64) -> Self {
        GenSpec {
            seed,
            shape,
            density,
        }
    }

    fn check(&self) -> Result<()> {
        let s = self.shape;
        if s.n == 0 || s.k == 0 || s.k > s.n || s.module_dim == 0 {
            return Err(Error::Dimension(format!("invalid shape {s:?}")));
        }
        if !(0.0..=1.0).contains(&self.density) {
            return Err(Error::Dimension(format!(
                "density {} not in [0, 1]",
                self.density
            )));
        }
        Ok(())
    }
}

/// All index tuples of the given length over `0..dim`, in lexicographic order.
fn tuples(dim: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..dim).map(move |x| {
                    let mut t = prefix.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    out
}

/// Every valid placement of the shape, in canonical order.
pub fn all_placements(shape: Shape) -> Vec<Placement> {
    let mut out = Vec::new();
    if shape.k > shape.n {
        return out;
    }
    let module_tuples = tuples(shape.module_dim, shape.k);
    let space_tuples = tuples(shape.space_dim, shape.n - shape.k);
    for positions in (0..shape.n).combinations(shape.k) {
        for mt in &module_tuples {
            for st in &space_tuples {
                let mut slots = Vec::with_capacity(shape.n);
                let (mut mi, mut si) = (0, 0);
                for pos in 0..shape.n {
                    if positions.contains(&pos) {
                        slots.push(Slot::Module(mt[mi]));
                        mi += 1;
                    } else {
                        slots.push(Slot::Space(st[si]));
                        si += 1;
                    }
                }
                out.push(Placement::new(slots));
            }
        }
    }
    out.sort();
    out
}

/// Includes each placement independently with probability `density`, with a
/// uniform target and a coefficient from [`coefficient_pool`]. The same spec
/// always yields the same structure.
pub fn random_structure(spec: &GenSpec, budget: Budget) -> Result<KModuleStructure> {
    spec.check()?;
    budget.check(spec.shape.placement_count())?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let pool = coefficient_pool();
    let mut table = BTreeMap::new();
    for placement in all_placements(spec.shape) {
        if rng.gen_bool(spec.density) {
            let target = rng.gen_range(0..spec.shape.module_dim);
            let coeff = pool[rng.gen_range(0..pool.len())];
            table.insert(placement, Product::new(target, coeff));
        }
    }
    Ok(KModuleStructure::from_table(spec.shape, table))
}

/// A random n-ary algebra on `dim` basis elements.
pub fn random_algebra(seed: u64, n: usize, dim: usize, density: f64) -> Result<NAryAlgebra> {
    if !(0.0..=1.0).contains(&density) || n == 0 {
        return Err(Error::Dimension(format!(
            "invalid algebra spec n={n}, density={density}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool = coefficient_pool();
    let mut rows = Vec::new();
    for args in tuples(dim, n) {
        if rng.gen_bool(density) {
            let target = rng.gen_range(0..dim);
            rows.push((args, target, pool[rng.gen_range(0..pool.len())]));
        }
    }
    NAryAlgebra::new(n, dim, rows)
}

/// A random module over a random algebra. The algebra is seeded from
/// `spec.seed` and the action from a derived seed.
pub fn random_module_over_algebra(
    spec: &GenSpec,
    algebra_density: f64,
    budget: Budget,
) -> Result<ModuleOverAlgebra> {
    let shape = spec.shape;
    let algebra = random_algebra(
        spec.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ 0x0A16_EB7A,
        shape.n,
        shape.space_dim,
        algebra_density,
    )?;
    let action = random_structure(spec, budget)?;
    ModuleOverAlgebra::new(algebra, action)
}

fn asymmetric(edges: &BTreeSet<(ModuleIndex, ModuleIndex)>) -> Vec<(ModuleIndex, ModuleIndex)> {
    edges
        .iter()
        .filter(|&&(a, b)| !edges.contains(&(b, a)))
        .copied()
        .collect()
}

/// Adds products until the forward-edge relation is symmetric.
///
/// For an edge `(i, r)` without its reverse, each witness placement with `i`
/// in a module slot and target `r` is tried in order: the copy with `r` put
/// into that slot gets target `i` if it is vacant. Additions can create new
/// one-way edges, so rounds repeat until nothing is missing. Edges whose
/// candidates are all taken by other targets are reported as a conflict.
pub fn symmetrize(st: &KModuleStructure) -> Result<KModuleStructure> {
    let mut table = st.table().clone();
    loop {
        let edges = forward_edges(&KModuleStructure::from_table(st.shape(), table.clone()));
        let pending = asymmetric(&edges);
        if pending.is_empty() {
            return Ok(KModuleStructure::from_table(st.shape(), table));
        }
        let mut added = false;
        let mut conflicts = Vec::new();
        for (i, r) in pending {
            let witnesses: Vec<Placement> = table
                .iter()
                .filter(|(p, v)| v.target == r && p.slots().contains(&Slot::Module(i)))
                .map(|(p, _)| p.clone())
                .collect();
            let mut resolved = false;
            'search: for p in witnesses {
                for (pos, slot) in p.slots().iter().enumerate() {
                    if *slot != Slot::Module(i) {
                        continue;
                    }
                    let mut slots = p.slots().to_vec();
                    slots[pos] = Slot::Module(r);
                    let candidate = Placement::new(slots);
                    match table.get(&candidate) {
                        None => {
                            table.insert(candidate, Product::new(i, Scalar::one()));
                            added = true;
                            resolved = true;
                            break 'search;
                        }
                        Some(v) if v.target == i => {
                            resolved = true;
                            break 'search;
                        }
                        Some(_) => {}
                    }
                }
            }
            if !resolved {
                conflicts.push((i, r));
            }
        }
        if !added && !conflicts.is_empty() {
            return Err(Error::SymmetrizeConflict { edges: conflicts });
        }
    }
}

/// `I = J = Z_m`, every placement present, target the sum of all occupants
/// mod m. When `k = n` there are no space slots and `J` is empty.
pub fn modular_family(n: usize, k: usize, m: usize) -> Result<KModuleStructure> {
    if n < 2 || k == 0 || k > n || m == 0 {
        return Err(Error::Dimension(format!(
            "modular family needs n >= 2, 1 <= k <= n, m >= 1 (got n={n}, k={k}, m={m})"
        )));
    }
    let shape = Shape::new(n, k, m, if k < n { m } else { 0 });
    let table = all_placements(shape)
        .into_iter()
        .map(|p| {
            let sum: usize = p
                .slots()
                .iter()
                .map(|s| match *s {
                    Slot::Module(i) | Slot::Space(i) => i,
                })
                .sum();
            (p, Product::new(sum % m, Scalar::one()))
        })
        .collect();
    Ok(KModuleStructure::from_table(shape, table))
}

/// The zero map.
pub fn trivial_structure(shape: Shape) -> KModuleStructure {
    KModuleStructure::empty(shape)
}
