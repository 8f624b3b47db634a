//! Disjoint-set forest and the partition of the module index set it yields.

use std::fmt;

use crate::error::{Error, Result};

/// Union-find with path halving and union by rank.
#[derive(Clone, Debug)]
pub struct DisjointSets {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl DisjointSets {
    pub fn new(len: usize) -> Self {
        DisjointSets {
            parent: (0..len).collect(),
            rank: vec![0; len],
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            let grand = self.parent[self.parent[x]];
            self.parent[x] = grand;
            x = grand;
        }
        x
    }

    /// Merges the sets of `a` and `b`. Returns false if they were already one set.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        true
    }
}

/// A partition of `0..len` into classes. Classes are sorted internally and
/// ordered by their minimum element, which also serves as representative.
#[derive(Clone, PartialEq, Eq)]
pub struct ComponentPartition {
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
}

impl ComponentPartition {
    pub fn from_disjoint_sets(mut sets: DisjointSets) -> Self {
        let len = sets.len();
        let mut by_root: Vec<Option<usize>> = vec![None; len];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut class_of = vec![0; len];
        // ascending scan: a class is opened at its minimum element
        for (x, slot) in class_of.iter_mut().enumerate() {
            let root = sets.find(x);
            let id = *by_root[root].get_or_insert_with(|| {
                classes.push(Vec::new());
                classes.len() - 1
            });
            classes[id].push(x);
            *slot = id;
        }
        ComponentPartition { class_of, classes }
    }

    /// Builds a partition from explicit classes, checking that they cover
    /// `0..len` exactly once.
    pub fn from_classes(len: usize, classes: Vec<Vec<usize>>) -> Result<Self> {
        let mut sets = DisjointSets::new(len);
        let mut seen = vec![false; len];
        for class in &classes {
            if class.is_empty() {
                return Err(Error::Dimension("empty class".into()));
            }
            for &x in class {
                if x >= len || std::mem::replace(&mut seen[x], true) {
                    return Err(Error::Dimension(format!(
                        "index {x} out of range or repeated in partition"
                    )));
                }
                sets.union(class[0], x);
            }
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(Error::Dimension(format!("index {missing} not covered")));
        }
        Ok(Self::from_disjoint_sets(sets))
    }

    pub fn singletons(len: usize) -> Self {
        Self::from_disjoint_sets(DisjointSets::new(len))
    }

    /// Size of the underlying index set.
    pub fn universe(&self) -> usize {
        self.class_of.len()
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_id(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn class_of(&self, x: usize) -> &[usize] {
        &self.classes[self.class_of[x]]
    }

    pub fn representative(&self, x: usize) -> usize {
        self.class_of(x)[0]
    }

    pub fn same_class(&self, a: usize, b: usize) -> bool {
        self.class_of[a] == self.class_of[b]
    }
}

impl fmt::Debug for ComponentPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.classes).finish()
    }
}

impl fmt::Display for ComponentPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (pos, class) in self.classes.iter().enumerate() {
            if pos > 0 {
                write!(f, " ")?;
            }
            let items: Vec<String> = class.iter().map(ToString::to_string).collect();
            write!(f, "{{{}}}", items.join(","))?;
        }
        Ok(())
    }
}
