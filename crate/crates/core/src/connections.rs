//! Connections between module indices and the equivalence they generate.
//!
//! A [`Step`] fixes the remaining `k - 1` module arguments and the `n - k`
//! space arguments of a product. Applied forward to an index `i` it yields
//! the targets of all nonzero products whose module occupants are `i` plus
//! the step's module arguments; applied backward it yields every `i'` whose
//! such product lands on `i`. Argument order never matters, since the image
//! is taken over every slot arrangement, so step arguments are kept as
//! sorted multisets.
//!
//! Because a backward step is exactly a reversed forward edge, the relation
//! "connected by a chain of steps" is the symmetric-transitive closure of
//! [`forward_edges`]. [`components`] computes it with a disjoint-set forest;
//! the [`crate::oracle`] module replays chains literally to cross-check.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::partition::{ComponentPartition, DisjointSets};
use crate::structure::{KModuleStructure, ModuleIndex, Placement, SpaceIndex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    Forward,
    Backward,
}

impl Direction {
    pub fn flipped(self) -> Self {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }
}

/// One application of μ. All arguments are either plain or all barred; mixed
/// tuples give the empty image and are not representable.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Step {
    direction: Direction,
    module_args: Vec<ModuleIndex>,
    space_args: Vec<SpaceIndex>,
}

impl Step {
    pub fn new(
        direction: Direction,
        mut module_args: Vec<ModuleIndex>,
        mut space_args: Vec<SpaceIndex>,
    ) -> Self {
        module_args.sort_unstable();
        space_args.sort_unstable();
        Step {
            direction,
            module_args,
            space_args,
        }
    }

    pub fn forward(module_args: Vec<ModuleIndex>, space_args: Vec<SpaceIndex>) -> Self {
        Self::new(Direction::Forward, module_args, space_args)
    }

    pub fn backward(module_args: Vec<ModuleIndex>, space_args: Vec<SpaceIndex>) -> Self {
        Self::new(Direction::Backward, module_args, space_args)
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    /// Sorted multiset of the other module arguments.
    pub fn module_args(&self) -> &[ModuleIndex] {
        &self.module_args
    }

    /// Sorted multiset of the space arguments.
    pub fn space_args(&self) -> &[SpaceIndex] {
        &self.space_args
    }

    /// The same arguments with every bar toggled.
    pub fn flipped(&self) -> Self {
        Step {
            direction: self.direction.flipped(),
            module_args: self.module_args.clone(),
            space_args: self.space_args.clone(),
        }
    }

    fn check(&self, st: &KModuleStructure) -> Result<()> {
        if self.module_args.len() + 1 != st.k() || self.space_args.len() + st.k() != st.n() {
            return Err(Error::Dimension(format!(
                "step has {} module and {} space arguments; expected {} and {}",
                self.module_args.len(),
                self.space_args.len(),
                st.k() - 1,
                st.n() - st.k()
            )));
        }
        Ok(())
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dir = match self.direction {
            Direction::Forward => "forward",
            Direction::Backward => "backward",
        };
        write!(
            f,
            "{dir} module={:?} space={:?}",
            self.module_args, self.space_args
        )
    }
}

type OccKey = (Vec<ModuleIndex>, Vec<SpaceIndex>);

/// Support lookups keyed by occupant multisets.
pub(crate) struct OccupancyIndex {
    /// full module occupants + space occupants -> targets
    forward: HashMap<OccKey, BTreeSet<ModuleIndex>>,
    /// (target, module occupants minus one copy of a, space occupants) -> {a}
    backward: HashMap<(ModuleIndex, OccKey), BTreeSet<ModuleIndex>>,
}

impl OccupancyIndex {
    pub(crate) fn build(st: &KModuleStructure) -> Self {
        let mut forward: HashMap<OccKey, BTreeSet<ModuleIndex>> = HashMap::new();
        let mut backward: HashMap<(ModuleIndex, OccKey), BTreeSet<ModuleIndex>> = HashMap::new();
        for (placement, product) in st.support() {
            let modules = placement.module_occupants();
            let spaces = placement.space_occupants();
            for (pos, &a) in modules.iter().enumerate() {
                if pos > 0 && modules[pos - 1] == a {
                    continue;
                }
                let mut rest = modules.clone();
                rest.remove(pos);
                backward
                    .entry((product.target, (rest, spaces.clone())))
                    .or_default()
                    .insert(a);
            }
            forward
                .entry((modules, spaces))
                .or_default()
                .insert(product.target);
        }
        OccupancyIndex { forward, backward }
    }
}

/// The μ image of `i` under `step`.
pub fn mu(st: &KModuleStructure, i: ModuleIndex, step: &Step) -> Result<BTreeSet<ModuleIndex>> {
    step.check(st)?;
    if i >= st.module_dim() {
        return Err(Error::Dimension(format!("module index {i} out of range")));
    }
    let index = st.occupancy();
    let found = match step.direction {
        Direction::Forward => {
            let mut modules = step.module_args.clone();
            let at = modules.partition_point(|&x| x < i);
            modules.insert(at, i);
            index.forward.get(&(modules, step.space_args.clone()))
        }
        Direction::Backward => index
            .backward
            .get(&(i, (step.module_args.clone(), step.space_args.clone()))),
    };
    Ok(found.cloned().unwrap_or_default())
}

/// Union of [`mu`] over every index in `set`.
pub fn phi(
    st: &KModuleStructure,
    set: &BTreeSet<ModuleIndex>,
    step: &Step,
) -> Result<BTreeSet<ModuleIndex>> {
    step.check(st)?;
    let mut out = BTreeSet::new();
    for &i in set {
        out.extend(mu(st, i, step)?);
    }
    Ok(out)
}

/// Pairs `(i, r)` such that some nonzero product with `i` among its module
/// occupants lands on `v_r`.
pub fn forward_edges(st: &KModuleStructure) -> BTreeSet<(ModuleIndex, ModuleIndex)> {
    let mut edges = BTreeSet::new();
    for (placement, product) in st.support() {
        for i in placement.module_occupants() {
            edges.insert((i, product.target));
        }
    }
    edges
}

/// The quotient of the module index set by the connection relation.
pub fn components(st: &KModuleStructure) -> ComponentPartition {
    let mut sets = DisjointSets::new(st.module_dim());
    for (placement, product) in st.support() {
        for i in placement.module_occupants() {
            sets.union(i, product.target);
        }
    }
    ComponentPartition::from_disjoint_sets(sets)
}

/// A chain of steps starting at `source`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Connection {
    source: ModuleIndex,
    steps: Vec<Step>,
}

impl Connection {
    pub fn new(source: ModuleIndex, steps: Vec<Step>) -> Result<Self> {
        if steps.is_empty() {
            return Err(Error::InvalidWitness(
                "a connection needs at least one step".into(),
            ));
        }
        Ok(Connection { source, steps })
    }

    pub fn source(&self) -> ModuleIndex {
        self.source
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// The images after each prefix of the chain, stopping early at an empty
    /// image or a malformed step.
    pub fn replay(&self, st: &KModuleStructure) -> Vec<BTreeSet<ModuleIndex>> {
        let mut images = Vec::with_capacity(self.steps.len());
        if self.source >= st.module_dim() {
            return images;
        }
        let mut current = BTreeSet::from([self.source]);
        for step in &self.steps {
            match phi(st, &current, step) {
                Ok(next) => {
                    let stop = next.is_empty();
                    images.push(next.clone());
                    current = next;
                    if stop {
                        break;
                    }
                }
                Err(_) => break,
            }
        }
        images
    }
}

impl fmt::Display for Connection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "from {}:", self.source)?;
        for step in &self.steps {
            write!(f, " ({step})")?;
        }
        Ok(())
    }
}

/// Result of a successful connection search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConnectionWitness {
    /// Source and target coincide; every index is connected to itself.
    Reflexive,
    Chain(Connection),
}

/// Finds a shortest chain of steps from `from` to `to`, if one exists.
///
/// Each hop along an edge `(a, b)` is realized by the first support entry in
/// placement order with `a` among its module occupants and target `b`. When
/// only the reverse edge exists, the hop uses a backward step built from the
/// first entry realizing `(b, a)`.
pub fn find_connection(
    st: &KModuleStructure,
    from: ModuleIndex,
    to: ModuleIndex,
) -> Result<Option<ConnectionWitness>> {
    let dim = st.module_dim();
    for x in [from, to] {
        if x >= dim {
            return Err(Error::Dimension(format!("module index {x} out of range")));
        }
    }
    if from == to {
        return Ok(Some(ConnectionWitness::Reflexive));
    }

    let mut witness: BTreeMap<(ModuleIndex, ModuleIndex), &Placement> = BTreeMap::new();
    for (placement, product) in st.support() {
        for i in placement.module_occupants() {
            witness.entry((i, product.target)).or_insert(placement);
        }
    }
    let mut adjacent: Vec<BTreeSet<ModuleIndex>> = vec![BTreeSet::new(); dim];
    for &(a, b) in witness.keys() {
        if a != b {
            adjacent[a].insert(b);
            adjacent[b].insert(a);
        }
    }

    let mut parent: Vec<Option<ModuleIndex>> = vec![None; dim];
    let mut queue = VecDeque::from([from]);
    parent[from] = Some(from);
    while let Some(x) = queue.pop_front() {
        if x == to {
            break;
        }
        for &y in &adjacent[x] {
            if parent[y].is_none() {
                parent[y] = Some(x);
                queue.push_back(y);
            }
        }
    }
    if parent[to].is_none() {
        return Ok(None);
    }

    let mut path = vec![to];
    while let Some(&last) = path.last() {
        if last == from {
            break;
        }
        path.push(parent[last].expect("bfs parent"));
    }
    path.reverse();

    let steps = path
        .windows(2)
        .map(|hop| {
            let (a, b) = (hop[0], hop[1]);
            let (placement, dropped, direction) = match witness.get(&(a, b)) {
                Some(p) => (*p, a, Direction::Forward),
                None => (witness[&(b, a)], b, Direction::Backward),
            };
            let mut modules = placement.module_occupants();
            let at = modules.binary_search(&dropped).expect("occupant present");
            modules.remove(at);
            Step::new(direction, modules, placement.space_occupants())
        })
        .collect();
    let conn = Connection::new(from, steps)?;
    if !verify_connection(st, &conn, to) {
        return Err(Error::InvalidWitness(format!(
            "constructed chain {conn} does not replay"
        )));
    }
    Ok(Some(ConnectionWitness::Chain(conn)))
}

/// True iff every intermediate image of the chain is nonempty and the final
/// image contains `claimed_target`.
pub fn verify_connection(
    st: &KModuleStructure,
    conn: &Connection,
    claimed_target: ModuleIndex,
) -> bool {
    let images = conn.replay(st);
    images.len() == conn.steps.len()
        && images.iter().all(|img| !img.is_empty())
        && images
            .last()
            .is_some_and(|img| img.contains(&claimed_target))
}

/// Reverses a verified chain: the steps in opposite order with every bar
/// toggled, starting from the old target.
pub fn reverse_connection(
    st: &KModuleStructure,
    conn: &Connection,
    original_target: ModuleIndex,
) -> Result<Connection> {
    if !verify_connection(st, conn, original_target) {
        return Err(Error::InvalidWitness(format!(
            "{conn} does not reach {original_target}"
        )));
    }
    let steps = conn.steps.iter().rev().map(Step::flipped).collect();
    Connection::new(original_target, steps)
}
