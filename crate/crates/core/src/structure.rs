//! Data model for k-modules over a linear space with a multiplicative basis.
//!
//! The n-linear map is stored as a sparse product table. Each key is a
//! [`Placement`]: the sequence of basis elements occupying the n argument
//! positions, with exactly k of them taken from the module basis `{v_i}` and
//! the rest from the space basis `{w_j}`. The value is the unique basis
//! vector the product lands on, together with its nonzero coefficient. An
//! absent key means the product vanishes.

use std::collections::btree_map::{self, BTreeMap};
use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use crate::connections::OccupancyIndex;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub type ModuleIndex = usize;
pub type SpaceIndex = usize;

/// One argument position, holding either a module basis element or a space
/// basis element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Slot {
    Module(ModuleIndex),
    Space(SpaceIndex),
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slot::Module(i) => write!(f, "M{i}"),
            Slot::Space(j) => write!(f, "S{j}"),
        }
    }
}

/// A fully resolved argument list for the n-linear map.
///
/// Ordering is lexicographic on the slot sequence, with module slots sorting
/// before space slots at the same position.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Placement(Vec<Slot>);

impl Placement {
    pub fn new(slots: Vec<Slot>) -> Self {
        Placement(slots)
    }

    pub fn slots(&self) -> &[Slot] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn module_count(&self) -> usize {
        self.0
            .iter()
            .filter(|s| matches!(s, Slot::Module(_)))
            .count()
    }

    /// Module occupants as a sorted multiset.
    pub fn module_occupants(&self) -> Vec<ModuleIndex> {
        let mut out: Vec<_> = self
            .0
            .iter()
            .filter_map(|s| match s {
                Slot::Module(i) => Some(*i),
                Slot::Space(_) => None,
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// Space occupants as a sorted multiset.
    pub fn space_occupants(&self) -> Vec<SpaceIndex> {
        let mut out: Vec<_> = self
            .0
            .iter()
            .filter_map(|s| match s {
                Slot::Space(j) => Some(*j),
                Slot::Module(_) => None,
            })
            .collect();
        out.sort_unstable();
        out
    }
}

impl From<Vec<Slot>> for Placement {
    fn from(slots: Vec<Slot>) -> Self {
        Placement(slots)
    }
}

impl fmt::Display for Placement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (pos, slot) in self.0.iter().enumerate() {
            if pos > 0 {
                write!(f, ",")?;
            }
            write!(f, "{slot}")?;
        }
        write!(f, "]")
    }
}

/// Arity `n`, module-slot count `k` and the sizes of both index sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Shape {
    pub n: usize,
    pub k: usize,
    pub module_dim: usize,
    pub space_dim: usize,
}

impl Shape {
    pub fn new(n: usize, k: usize, module_dim: usize, space_dim: usize) -> Self {
        Shape {
            n,
            k,
            module_dim,
            space_dim,
        }
    }

    /// Number of distinct valid placements, `C(n,k) * |I|^k * |J|^(n-k)`,
    /// saturating at `u128::MAX`.
    pub fn placement_count(&self) -> u128 {
        if self.k > self.n {
            return 0;
        }
        let mut count = binomial(self.n, self.k);
        for _ in 0..self.k {
            count = count.saturating_mul(self.module_dim as u128);
        }
        for _ in self.k..self.n {
            count = count.saturating_mul(self.space_dim as u128);
        }
        count
    }

    fn violations(&self) -> Vec<ViolationKind> {
        let mut out = Vec::new();
        if self.n == 0 {
            out.push(ViolationKind::Arity);
        }
        if self.k == 0 || self.k > self.n {
            out.push(ViolationKind::ModuleSlots {
                k: self.k,
                n: self.n,
            });
        }
        if self.module_dim == 0 {
            out.push(ViolationKind::EmptyModuleBasis);
        }
        out
    }

    fn placement_violations(&self, placement: &Placement) -> Vec<ViolationKind> {
        let mut out = Vec::new();
        if placement.arity() != self.n {
            out.push(ViolationKind::Length {
                expected: self.n,
                found: placement.arity(),
            });
        }
        let modules = placement.module_count();
        if modules != self.k {
            out.push(ViolationKind::SlotCount {
                expected: self.k,
                found: modules,
            });
        }
        for slot in placement.slots() {
            match *slot {
                Slot::Module(i) if i >= self.module_dim => {
                    out.push(ViolationKind::ModuleIndexRange(i))
                }
                Slot::Space(j) if j >= self.space_dim => {
                    out.push(ViolationKind::SpaceIndexRange(j))
                }
                _ => {}
            }
        }
        out
    }

    /// Checks a placement against this shape.
    pub fn check_placement(&self, placement: &Placement) -> Result<()> {
        let found = self.placement_violations(placement);
        if found.is_empty() {
            Ok(())
        } else {
            let msg: Vec<String> = found.iter().map(ToString::to_string).collect();
            Err(Error::Dimension(format!("{placement}: {}", msg.join("; "))))
        }
    }
}

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for step in 0..k {
        acc = acc * (n - step) as u128 / (step + 1) as u128;
    }
    acc
}

/// The image of a nonzero basis product: `coeff * v_target`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Product {
    pub target: usize,
    pub coeff: Scalar,
}

impl Product {
    pub fn new(target: usize, coeff: Scalar) -> Self {
        Product { target, coeff }
    }
}

impl fmt::Display for Product {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.target, self.coeff)
    }
}

/// A table row, as read from a document or produced by a generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub placement: Placement,
    pub target: ModuleIndex,
    pub coeff: Scalar,
}

impl Entry {
    pub fn new(placement: impl Into<Placement>, target: ModuleIndex, coeff: Scalar) -> Self {
        Entry {
            placement: placement.into(),
            target,
            coeff,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    Arity,
    ModuleSlots {
        k: usize,
        n: usize,
    },
    EmptyModuleBasis,
    MissingSpaceBasis,
    Length {
        expected: usize,
        found: usize,
    },
    SlotCount {
        expected: usize,
        found: usize,
    },
    ModuleIndexRange(usize),
    SpaceIndexRange(usize),
    TargetRange(usize),
    ZeroCoefficient,
    /// The placement already appeared with a different product.
    Duplicate,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ViolationKind::Arity => write!(f, "arity must be at least 1"),
            ViolationKind::ModuleSlots { k, n } => {
                write!(f, "module slot count k={k} must satisfy 1 <= k <= n={n}")
            }
            ViolationKind::EmptyModuleBasis => write!(f, "module basis is empty"),
            ViolationKind::MissingSpaceBasis => {
                write!(f, "k < n with an empty space basis but a nonempty table")
            }
            ViolationKind::Length { expected, found } => {
                write!(f, "length: expected {expected} slots, found {found}")
            }
            ViolationKind::SlotCount { expected, found } => {
                write!(
                    f,
                    "slot-count: expected {expected} module slots, found {found}"
                )
            }
            ViolationKind::ModuleIndexRange(i) => write!(f, "module index {i} out of range"),
            ViolationKind::SpaceIndexRange(j) => write!(f, "space index {j} out of range"),
            ViolationKind::TargetRange(t) => write!(f, "target {t} out of range"),
            ViolationKind::ZeroCoefficient => write!(f, "zero coefficient"),
            ViolationKind::Duplicate => write!(f, "duplicate placement with a different product"),
        }
    }
}

/// A single invariant breach. `entry` is the row index in input order (or in
/// canonical order when validating a built structure).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub entry: Option<usize>,
    pub placement: Option<Placement>,
    pub kind: ViolationKind,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.entry, &self.placement) {
            (Some(e), Some(p)) => write!(f, "entry {e} {p}: {}", self.kind),
            (Some(e), None) => write!(f, "entry {e}: {}", self.kind),
            (None, Some(p)) => write!(f, "{p}: {}", self.kind),
            (None, None) => write!(f, "{}", self.kind),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn len(&self) -> usize {
        self.violations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(&mut self, entry: Option<usize>, placement: Option<&Placement>, kind: ViolationKind) {
        self.violations.push(Violation {
            entry,
            placement: placement.cloned(),
            kind,
        });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.violations {
            writeln!(f, "{v}")?;
        }
        Ok(())
    }
}

fn check_rows<'a>(
    shape: &Shape,
    rows: impl Iterator<Item = (&'a Placement, usize, Scalar)>,
    report: &mut ValidationReport,
) -> bool {
    let mut any = false;
    for (idx, (placement, target, coeff)) in rows.enumerate() {
        any = true;
        for kind in shape.placement_violations(placement) {
            report.push(Some(idx), Some(placement), kind);
        }
        if target >= shape.module_dim {
            report.push(
                Some(idx),
                Some(placement),
                ViolationKind::TargetRange(target),
            );
        }
        if coeff.is_zero() {
            report.push(Some(idx), Some(placement), ViolationKind::ZeroCoefficient);
        }
    }
    any
}

fn check_shape(shape: &Shape, nonempty: bool, report: &mut ValidationReport) {
    for kind in shape.violations() {
        report.push(None, None, kind);
    }
    if shape.k < shape.n && shape.space_dim == 0 && nonempty {
        report.push(None, None, ViolationKind::MissingSpaceBasis);
    }
}

/// A k-module over a linear space, given by a multiplicative-basis product
/// table. Immutable once built.
pub struct KModuleStructure {
    shape: Shape,
    table: BTreeMap<Placement, Product>,
    index: OnceLock<OccupancyIndex>,
}

impl KModuleStructure {
    /// Builds a structure from rows, validating every row. Rows repeating a
    /// placement with an identical product are merged; conflicting repeats
    /// are reported as violations.
    pub fn from_entries(shape: Shape, entries: impl IntoIterator<Item = Entry>) -> Result<Self> {
        let entries: Vec<Entry> = entries.into_iter().collect();
        let mut report = ValidationReport::default();
        let nonempty = check_rows(
            &shape,
            entries.iter().map(|e| (&e.placement, e.target, e.coeff)),
            &mut report,
        );
        check_shape(&shape, nonempty, &mut report);
        let mut table = BTreeMap::new();
        for (idx, e) in entries.into_iter().enumerate() {
            let product = Product::new(e.target, e.coeff);
            match table.entry(e.placement) {
                btree_map::Entry::Vacant(slot) => {
                    slot.insert(product);
                }
                btree_map::Entry::Occupied(slot) => {
                    if *slot.get() != product {
                        report.push(Some(idx), Some(slot.key()), ViolationKind::Duplicate);
                    }
                }
            }
        }
        if report.is_valid() {
            Ok(Self::from_table(shape, table))
        } else {
            Err(Error::Validation(report))
        }
    }

    /// Builds a structure without any checks; later rows overwrite earlier
    /// ones. Use [`KModuleStructure::validate`] to inspect the result.
    pub fn from_raw(shape: Shape, entries: impl IntoIterator<Item = Entry>) -> Self {
        let table = entries
            .into_iter()
            .map(|e| (e.placement, Product::new(e.target, e.coeff)))
            .collect();
        Self::from_table(shape, table)
    }

    pub(crate) fn from_table(shape: Shape, table: BTreeMap<Placement, Product>) -> Self {
        KModuleStructure {
            shape,
            table,
            index: OnceLock::new(),
        }
    }

    /// The zero map on the given shape.
    pub fn empty(shape: Shape) -> Self {
        Self::from_table(shape, BTreeMap::new())
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn n(&self) -> usize {
        self.shape.n
    }

    pub fn k(&self) -> usize {
        self.shape.k
    }

    pub fn module_dim(&self) -> usize {
        self.shape.module_dim
    }

    pub fn space_dim(&self) -> usize {
        self.shape.space_dim
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    /// Lists every invariant violation; an empty report means the structure
    /// is well formed.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let nonempty = check_rows(
            &self.shape,
            self.table.iter().map(|(p, v)| (p, v.target, v.coeff)),
            &mut report,
        );
        check_shape(&self.shape, nonempty, &mut report);
        report
    }

    /// Looks up a basis product. `None` means the product is zero.
    pub fn evaluate(&self, placement: &Placement) -> Result<Option<Product>> {
        self.shape.check_placement(placement)?;
        Ok(self.table.get(placement).copied())
    }

    /// Every nonzero product, in canonical placement order.
    pub fn support(&self) -> impl Iterator<Item = (&Placement, Product)> + '_ {
        self.table.iter().map(|(p, v)| (p, *v))
    }

    pub fn entries(&self) -> impl Iterator<Item = Entry> + '_ {
        self.table
            .iter()
            .map(|(p, v)| Entry::new(p.clone(), v.target, v.coeff))
    }

    pub(crate) fn table(&self) -> &BTreeMap<Placement, Product> {
        &self.table
    }

    pub(crate) fn occupancy(&self) -> &OccupancyIndex {
        self.index.get_or_init(|| OccupancyIndex::build(self))
    }
}

impl Clone for KModuleStructure {
    fn clone(&self) -> Self {
        Self::from_table(self.shape, self.table.clone())
    }
}

impl PartialEq for KModuleStructure {
    fn eq(&self, other: &Self) -> bool {
        self.shape == other.shape && self.table == other.table
    }
}

impl Eq for KModuleStructure {}

impl fmt::Debug for KModuleStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("KModuleStructure")
            .field("shape", &self.shape)
            .field("table", &self.table)
            .finish()
    }
}

/// One product in the permuted-argument notation: `module_args[l]` sits at
/// position `sigma[l]`, and `space_args[l]` at position `sigma[k + l]`.
/// Positions are zero-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaEntry {
    pub sigma: Vec<usize>,
    pub module_args: Vec<ModuleIndex>,
    pub space_args: Vec<SpaceIndex>,
    pub target: ModuleIndex,
    pub coeff: Scalar,
}

impl SigmaEntry {
    /// Resolves the permuted argument list into a placement.
    pub fn placement(&self, n: usize, k: usize) -> Result<Placement> {
        if self.sigma.len() != n || self.module_args.len() != k || self.space_args.len() + k != n {
            return Err(Error::Dimension(format!(
                "sigma entry has {} positions, {} module and {} space arguments; expected n={n}, k={k}",
                self.sigma.len(),
                self.module_args.len(),
                self.space_args.len()
            )));
        }
        let seen: BTreeSet<usize> = self.sigma.iter().copied().collect();
        if seen.len() != n || seen.iter().any(|&p| p >= n) {
            return Err(Error::Dimension(format!(
                "sigma {:?} is not a permutation of 0..{n}",
                self.sigma
            )));
        }
        let mut slots = vec![Slot::Module(0); n];
        let args = self
            .module_args
            .iter()
            .map(|&i| Slot::Module(i))
            .chain(self.space_args.iter().map(|&j| Slot::Space(j)));
        for (&pos, slot) in self.sigma.iter().zip(args) {
            slots[pos] = slot;
        }
        Ok(Placement(slots))
    }
}

/// Ingests products written in permuted-argument form. Entries that resolve to
/// the same placement must agree on target and coefficient.
pub fn from_sigma_entries(shape: Shape, entries: &[SigmaEntry]) -> Result<KModuleStructure> {
    let mut resolved: BTreeMap<Placement, Product> = BTreeMap::new();
    let mut rows = Vec::with_capacity(entries.len());
    for entry in entries {
        let placement = entry.placement(shape.n, shape.k)?;
        let product = Product::new(entry.target, entry.coeff);
        match resolved.get(&placement) {
            Some(prev) if *prev != product => {
                return Err(Error::Collision {
                    placement,
                    first: prev.to_string(),
                    second: product.to_string(),
                });
            }
            Some(_) => {}
            None => {
                resolved.insert(placement.clone(), product);
                rows.push(Entry::new(placement, entry.target, entry.coeff));
            }
        }
    }
    KModuleStructure::from_entries(shape, rows)
}

/// An n-ary algebra with a multiplicative basis `{e_j}`: every product of n
/// basis elements is a multiple of a single basis element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NAryAlgebra {
    n: usize,
    dim: usize,
    table: BTreeMap<Vec<SpaceIndex>, Product>,
}

impl NAryAlgebra {
    pub fn new(
        n: usize,
        dim: usize,
        entries: impl IntoIterator<Item = (Vec<SpaceIndex>, SpaceIndex, Scalar)>,
    ) -> Result<Self> {
        let mut report = ValidationReport::default();
        if n == 0 {
            report.push(None, None, ViolationKind::Arity);
        }
        let mut table = BTreeMap::new();
        for (idx, (args, target, coeff)) in entries.into_iter().enumerate() {
            let placement = Placement(args.iter().map(|&j| Slot::Space(j)).collect());
            if args.len() != n {
                report.push(
                    Some(idx),
                    Some(&placement),
                    ViolationKind::Length {
                        expected: n,
                        found: args.len(),
                    },
                );
            }
            for &j in &args {
                if j >= dim {
                    report.push(
                        Some(idx),
                        Some(&placement),
                        ViolationKind::SpaceIndexRange(j),
                    );
                }
            }
            if target >= dim {
                report.push(
                    Some(idx),
                    Some(&placement),
                    ViolationKind::TargetRange(target),
                );
            }
            if coeff.is_zero() {
                report.push(Some(idx), Some(&placement), ViolationKind::ZeroCoefficient);
            }
            let product = Product::new(target, coeff);
            if let Some(prev) = table.insert(args, product) {
                if prev != product {
                    report.push(Some(idx), Some(&placement), ViolationKind::Duplicate);
                }
            }
        }
        if report.is_valid() {
            Ok(NAryAlgebra { n, dim, table })
        } else {
            Err(Error::Validation(report))
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn product(&self, args: &[SpaceIndex]) -> Option<Product> {
        self.table.get(args).copied()
    }

    pub fn support(&self) -> impl Iterator<Item = (&[SpaceIndex], Product)> + '_ {
        self.table.iter().map(|(a, p)| (a.as_slice(), *p))
    }
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn e1_is_valid() {
        assert!(e1().validate().is_valid());
        assert!(e3(4).validate().is_valid());
    }

    #[test]
    fn zero_coefficient_is_reported() {
        let mut rows = e1_entries();
        rows[1].coeff = Scalar::zero();
        let report = KModuleStructure::from_raw(Shape::new(2, 1, 3, 1), rows).validate();
        assert_eq!(report.len(), 1);
        assert_eq!(report.violations[0].kind, ViolationKind::ZeroCoefficient);
        assert_eq!(report.violations[0].kind.to_string(), "zero coefficient");
    }

    #[test]
    fn slot_count_is_reported() {
        let mut rows = e1_entries();
        rows.push(Entry::new(vec![s(0), s(0)], 0, Scalar::one()));
        let report = KModuleStructure::from_raw(Shape::new(2, 1, 3, 1), rows).validate();
        assert_eq!(report.len(), 1);
        assert!(matches!(
            report.violations[0].kind,
            ViolationKind::SlotCount {
                expected: 1,
                found: 0
            }
        ));
        assert!(report.violations[0]
            .kind
            .to_string()
            .starts_with("slot-count"));
    }

    #[test]
    fn from_entries_rejects_conflicting_duplicates() {
        let mut rows = e1_entries();
        rows.push(Entry::new(vec![m(0), s(0)], 1, Scalar::one()));
        assert!(KModuleStructure::from_entries(Shape::new(2, 1, 3, 1), rows.clone()).is_ok());
        rows.push(Entry::new(vec![m(0), s(0)], 2, Scalar::one()));
        let err = KModuleStructure::from_entries(Shape::new(2, 1, 3, 1), rows).unwrap_err();
        match err {
            Error::Validation(r) => {
                assert_eq!(r.violations[0].kind, ViolationKind::Duplicate);
                assert_eq!(r.violations[0].entry, Some(4));
            }
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn bad_shapes() {
        let r = KModuleStructure::empty(Shape::new(2, 3, 1, 1)).validate();
        assert!(!r.is_valid());
        let r = KModuleStructure::empty(Shape::new(2, 1, 0, 1)).validate();
        assert_eq!(r.violations[0].kind, ViolationKind::EmptyModuleBasis);
        let r = KModuleStructure::from_raw(
            Shape::new(2, 1, 1, 0),
            vec![Entry::new(vec![m(0), s(0)], 0, Scalar::one())],
        )
        .validate();
        assert!(r
            .violations
            .iter()
            .any(|v| v.kind == ViolationKind::MissingSpaceBasis));
        // k = n with no space basis is fine
        assert!(e2().validate().is_valid());
    }

    #[test]
    fn sigma_identity_and_transposition() {
        let shape = Shape::new(2, 1, 2, 1);
        let entry = SigmaEntry {
            sigma: vec![0, 1],
            module_args: vec![0],
            space_args: vec![0],
            target: 1,
            coeff: Scalar::one(),
        };
        let st = from_sigma_entries(shape, std::slice::from_ref(&entry)).unwrap();
        let got: Vec<_> = st.support().collect();
        assert_eq!(got.len(), 1);
        assert_eq!(got[0].0, &Placement::new(vec![m(0), s(0)]));
        assert_eq!(got[0].1, Product::new(1, Scalar::one()));

        let swapped = SigmaEntry {
            sigma: vec![1, 0],
            ..entry
        };
        let st = from_sigma_entries(shape, &[swapped]).unwrap();
        let got: Vec<_> = st.support().collect();
        assert_eq!(got[0].0, &Placement::new(vec![s(0), m(0)]));
    }

    #[test]
    fn sigma_collision() {
        let shape = Shape::new(2, 1, 3, 1);
        let a = SigmaEntry {
            sigma: vec![0, 1],
            module_args: vec![0],
            space_args: vec![0],
            target: 1,
            coeff: Scalar::one(),
        };
        let b = SigmaEntry {
            target: 2,
            ..a.clone()
        };
        assert!(from_sigma_entries(shape, &[a.clone(), a.clone()]).is_ok());
        assert!(matches!(
            from_sigma_entries(shape, &[a, b]),
            Err(Error::Collision { .. })
        ));
    }

    #[test]
    fn sigma_rejects_non_permutation() {
        let bad = SigmaEntry {
            sigma: vec![0, 0],
            module_args: vec![0],
            space_args: vec![0],
            target: 0,
            coeff: Scalar::one(),
        };
        assert!(matches!(
            from_sigma_entries(Shape::new(2, 1, 1, 1), &[bad]),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn evaluate_reads_table() {
        let st = e1();
        assert_eq!(
            st.evaluate(&vec![m(0), s(0)].into()).unwrap(),
            Some(Product::new(1, Scalar::one()))
        );
        assert_eq!(
            st.evaluate(&vec![m(2), s(0)].into()).unwrap(),
            Some(Product::new(2, Scalar::integer(2)))
        );
        assert_eq!(e3(3).evaluate(&vec![s(0), m(2)].into()).unwrap(), None);
        assert!(matches!(
            st.evaluate(&vec![m(0), m(1)].into()),
            Err(Error::Dimension(_))
        ));
        assert!(matches!(
            st.evaluate(&vec![m(5), s(0)].into()),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn support_order_and_counts() {
        assert_eq!(e3(2).support().count(), 0);
        let keys: Vec<_> = e1().support().map(|(p, _)| p.clone()).collect();
        assert_eq!(
            keys,
            vec![
                Placement::new(vec![m(0), s(0)]),
                Placement::new(vec![m(1), s(0)]),
                Placement::new(vec![m(2), s(0)]),
            ]
        );
        assert_eq!(e2().support().count(), 8);
    }

    #[test]
    fn placement_count() {
        assert_eq!(Shape::new(2, 1, 3, 1).placement_count(), 6);
        assert_eq!(Shape::new(3, 2, 4, 3).placement_count(), 3 * 16 * 3);
        assert_eq!(Shape::new(3, 3, 2, 0).placement_count(), 8);
        assert_eq!(Shape::new(3, 1, 2, 0).placement_count(), 0);
    }

    #[test]
    fn algebra_validation() {
        let alg = NAryAlgebra::new(
            2,
            2,
            vec![
                (vec![0, 0], 0, Scalar::one()),
                (vec![1, 1], 1, Scalar::one()),
            ],
        )
        .unwrap();
        assert_eq!(alg.product(&[1, 1]), Some(Product::new(1, Scalar::one())));
        assert_eq!(alg.product(&[0, 1]), None);
        assert!(NAryAlgebra::new(2, 1, vec![(vec![0, 1], 0, Scalar::one())]).is_err());
        assert!(NAryAlgebra::new(2, 1, vec![(vec![0, 0], 0, Scalar::zero())]).is_err());
    }
}
