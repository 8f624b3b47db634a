#![allow(dead_code)]

use modbasis::generators::{random_module_over_algebra, random_structure, GenSpec};
use modbasis::{
    Budget, Entry, KModuleStructure, ModuleOverAlgebra, NAryAlgebra, Scalar, Shape, Slot,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn m(i: usize) -> Slot {
    Slot::Module(i)
}

pub fn s(j: usize) -> Slot {
    Slot::Space(j)
}

pub fn e1_entries() -> Vec<Entry> {
    vec![
        Entry::new(vec![m(0), s(0)], 1, Scalar::one()),
        Entry::new(vec![m(1), s(0)], 0, Scalar::one()),
        Entry::new(vec![m(2), s(0)], 2, Scalar::integer(2)),
    ]
}

pub fn e1() -> KModuleStructure {
    KModuleStructure::from_entries(Shape::new(2, 1, 3, 1), e1_entries()).unwrap()
}

/// E1 without `[M1,S0] -> 0`.
pub fn e1_minus() -> KModuleStructure {
    let mut rows = e1_entries();
    rows.remove(1);
    KModuleStructure::from_entries(Shape::new(2, 1, 3, 1), rows).unwrap()
}

pub fn e2() -> KModuleStructure {
    let mut rows = Vec::new();
    for a in 0..2 {
        for b in 0..2 {
            for c in 0..2 {
                rows.push(Entry::new(
                    vec![m(a), m(b), m(c)],
                    (a + b + c) % 2,
                    Scalar::one(),
                ));
            }
        }
    }
    KModuleStructure::from_entries(Shape::new(3, 3, 2, 0), rows).unwrap()
}

pub fn e3(module_dim: usize) -> KModuleStructure {
    KModuleStructure::empty(Shape::new(2, 1, module_dim, 1))
}

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
            Entry::new(vec![m(0), s(0)], 0, Scalar::one()),
            Entry::new(vec![m(1), s(1)], 1, Scalar::one()),
        ],
    )
    .unwrap();
    ModuleOverAlgebra::new(algebra, action).unwrap()
}

/// Small random instance: n <= 3, 1 <= k <= n, |I| <= 5, |J| <= 3.
pub fn small_spec(seed: u64, max_density: f64) -> GenSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5EED_0F1D);
    let n = rng.gen_range(1..=3);
    let k = rng.gen_range(1..=n);
    let module_dim = rng.gen_range(1..=5);
    let space_dim = if k < n {
        rng.gen_range(1..=3)
    } else {
        rng.gen_range(0..=3)
    };
    let density = rng.gen_range(0.02..=max_density);
    GenSpec::new(seed, Shape::new(n, k, module_dim, space_dim), density)
}

pub fn small_instance(seed: u64, max_density: f64) -> KModuleStructure {
    random_structure(&small_spec(seed, max_density), Budget::default()).unwrap()
}

/// Random pair with n = 3, k = 2, |I| <= 4, 1 <= |J| <= 3.
pub fn small_pair(seed: u64) -> ModuleOverAlgebra {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xA1_6EB7A);
    let shape = Shape::new(3, 2, rng.gen_range(1..=4), rng.gen_range(1..=3));
    let action_density = rng.gen_range(0.02..=0.3);
    let algebra_density = rng.gen_range(0.0..=0.3);
    random_module_over_algebra(
        &GenSpec::new(seed, shape, action_density),
        algebra_density,
        Budget::default(),
    )
    .unwrap()
}
