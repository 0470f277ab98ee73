//! Per-tree accumulation of pair distances and tree counts.
//!
//! Walking a sampled tree, every ancestor/descendant pair `{j, i}` gets its
//! exact distance `dist[i] - dist[j]` and one more tree in its count. The
//! histogram of counts and its set of distinct values feed the stopping rule.

use std::collections::BTreeSet;

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::graph::{pair_key, unpack_pair};
use crate::sssp::{ShortestPathTree, NO_PARENT};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairEntry {
    pub dist: f64,
    /// Number of sampled trees in which the pair is ancestor/descendant.
    pub count: u32,
    /// Smallest sample index of a tree holding a shortest path for the pair.
    pub witness: u32,
}

/// Sparse table over unordered vertex pairs.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PairTable {
    entries: FxHashMap<u64, PairEntry>,
}

impl PairTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, u: usize, v: usize) -> Option<&PairEntry> {
        self.entries.get(&pair_key(u, v))
    }

    pub fn remove(&mut self, u: usize, v: usize) -> Option<PairEntry> {
        self.entries.remove(&pair_key(u, v))
    }

    /// Entries in arbitrary order, keyed `(u, v)` with `u < v`.
    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), &PairEntry)> {
        self.entries.iter().map(|(&k, e)| (unpack_pair(k), e))
    }

    /// Entries sorted by `(u, v)`.
    pub fn sorted(&self) -> Vec<((usize, usize), PairEntry)> {
        let mut out: Vec<_> = self.entries.iter().map(|(&k, &e)| (k, e)).collect();
        out.sort_unstable_by_key(|&(k, _)| k);
        out.into_iter().map(|(k, e)| (unpack_pair(k), e)).collect()
    }

    /// Increments the pair and returns its new count.
    fn bump(&mut self, u: usize, v: usize, dist: f64, sample_index: u32) -> u32 {
        let e = self.entries.entry(pair_key(u, v)).or_insert(PairEntry {
            dist,
            count: 0,
            witness: sample_index,
        });
        e.count += 1;
        e.witness = e.witness.min(sample_index);
        e.count
    }

    /// Folds another table in: counts add, the smaller witness wins.
    /// Distances are kept from whichever side holds the smaller witness.
    pub fn merge(&mut self, other: &PairTable) {
        for (&k, o) in &other.entries {
            self.entries
                .entry(k)
                .and_modify(|e| {
                    e.count += o.count;
                    if o.witness < e.witness {
                        e.witness = o.witness;
                        e.dist = o.dist;
                    }
                })
                .or_insert(*o);
        }
    }
}

/// How many pairs hold each count value, plus the set of values present.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValueHistogram {
    count: Vec<u64>,
    distinct: BTreeSet<u32>,
}

impl ValueHistogram {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_table(table: &PairTable) -> Self {
        let mut h = Self::new();
        for (_, e) in table.iter() {
            h.add_mass(e.count);
        }
        h
    }

    /// Number of pairs whose count is exactly `t`.
    pub fn count(&self, t: u32) -> u64 {
        self.count.get(t as usize).copied().unwrap_or(0)
    }

    /// Distinct positive count values, ascending.
    pub fn distinct(&self) -> &BTreeSet<u32> {
        &self.distinct
    }

    pub fn total_pairs(&self) -> u64 {
        self.count.iter().sum()
    }

    /// Moves one pair from `t - 1` to `t`.
    pub fn record_increment(&mut self, t: u32) {
        debug_assert!(t >= 1);
        if t > 1 {
            let prev = &mut self.count[(t - 1) as usize];
            *prev -= 1;
            if *prev == 0 {
                self.distinct.remove(&(t - 1));
            }
        }
        self.add_mass(t);
    }

    fn add_mass(&mut self, t: u32) {
        if self.count.len() <= t as usize {
            self.count.resize(t as usize + 1, 0);
        }
        self.count[t as usize] += 1;
        self.distinct.insert(t);
    }
}

/// Parent links and depths of a sampled tree, enough to rebuild paths.
#[derive(Debug, Clone, PartialEq)]
pub struct StoredTree {
    pub root: u32,
    pub parent: Vec<u32>,
    pub hop: Vec<u32>,
}

impl From<&ShortestPathTree> for StoredTree {
    fn from(t: &ShortestPathTree) -> Self {
        StoredTree {
            root: t.root as u32,
            parent: t.parent.clone(),
            hop: t.hop.clone(),
        }
    }
}

/// Sampled trees by sample index.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct TreeStore {
    trees: Vec<StoredTree>,
}

impl TreeStore {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, tree: StoredTree) -> u32 {
        self.trees.push(tree);
        (self.trees.len() - 1) as u32
    }

    pub fn len(&self) -> usize {
        self.trees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    pub fn get(&self, index: usize) -> Option<&StoredTree> {
        self.trees.get(index)
    }

    pub fn roots(&self) -> impl Iterator<Item = usize> + '_ {
        self.trees.iter().map(|t| t.root as usize)
    }
}

/// Calls `visit(ancestor, descendant)` for every ancestor/descendant pair of
/// `tree`, by iterative depth-first search from the root.
pub fn for_each_tree_pair(tree: &ShortestPathTree, mut visit: impl FnMut(usize, usize)) {
    // `path` holds the ancestors of the vertex on top of `stack`
    let mut path: Vec<usize> = Vec::new();
    let mut stack: Vec<(usize, usize)> = vec![(tree.root, 0)];
    while let Some(top) = stack.last_mut() {
        let (i, next) = *top;
        if next == 0 {
            for &j in &path {
                visit(j, i);
            }
        }
        let children = tree.children(i);
        if next < children.len() {
            top.1 += 1;
            path.push(i);
            stack.push((children[next] as usize, 0));
        } else {
            stack.pop();
            path.pop();
        }
    }
}

/// Adds every ancestor/descendant pair of `tree` to the table and histogram.
pub fn accumulate_tree(
    tree: &ShortestPathTree,
    sample_index: u32,
    table: &mut PairTable,
    hist: &mut ValueHistogram,
) {
    for_each_tree_pair(tree, |j, i| {
        let t = table.bump(j, i, tree.dist[i] - tree.dist[j], sample_index);
        hist.record_increment(t);
    });
}

/// Table, histogram and tree store grown together, one tree at a time.
#[derive(Debug, Clone, Default)]
pub struct PairAccumulator {
    pub table: PairTable,
    pub hist: ValueHistogram,
    pub store: TreeStore,
}

impl PairAccumulator {
    pub fn new() -> Self {
        Self::default()
    }

    /// Number of trees accumulated so far.
    pub fn samples(&self) -> usize {
        self.store.len()
    }

    pub fn add(&mut self, tree: &ShortestPathTree) {
        let index = self.store.push(StoredTree::from(tree));
        accumulate_tree(tree, index, &mut self.table, &mut self.hist);
    }

    pub fn path(&self, u: usize, v: usize) -> Result<Vec<usize>> {
        reconstruct_path(&self.table, &self.store, u, v)
    }
}

/// Rebuilds a `u`–`v` shortest path from the pair's witness tree.
pub fn reconstruct_path(
    table: &PairTable,
    store: &TreeStore,
    u: usize,
    v: usize,
) -> Result<Vec<usize>> {
    if u == v {
        return Err(Error::SelfPair(u));
    }
    let entry = table.get(u, v).ok_or(Error::PairAbsent { u, v })?;
    let tree = store
        .get(entry.witness as usize)
        .ok_or_else(|| Error::Invariant(format!("witness tree {} missing", entry.witness)))?;
    let (deep, shallow) = if tree.hop[u] > tree.hop[v] {
        (u, v)
    } else {
        (v, u)
    };
    let mut path = vec![deep];
    let mut x = deep;
    while x != shallow {
        let p = tree.parent[x];
        if p == NO_PARENT || tree.hop[x] <= tree.hop[shallow] {
            return Err(Error::Invariant(format!(
                "witness tree {} does not link {u} and {v}",
                entry.witness
            )));
        }
        x = p as usize;
        path.push(x);
    }
    if path[0] != u {
        path.reverse();
    }
    Ok(path)
}
