//! Free factor decompositions induced by edges of labelled trees, and the
//! keys used to compare them.

use crate::fold::{self, ClassKey};
use crate::tree;
use crate::word::ConjGen;
use serde::Serialize;
use std::cmp::Ordering;
use std::hash::{Hash, Hasher};

/// Identifier of a one-edge splitting `W_n = A * B`: the unordered pair of
/// conjugacy-class keys of `A` and `B`.
pub type EdgeKey = (ClassKey, ClassKey);

/// Identifier of a free splitting: the sorted edge keys of its edges.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SplittingKey(pub Vec<EdgeKey>);

impl SplittingKey {
    pub fn edge_count(&self) -> usize {
        self.0.len()
    }

    /// Whether every edge key of `self` occurs in `other`.
    pub fn is_subset_of(&self, other: &SplittingKey) -> bool {
        self.0.iter().all(|k| other.0.binary_search(k).is_ok())
    }
}

pub fn edge_key(n: usize, side_a: &[ConjGen], side_b: &[ConjGen]) -> EdgeKey {
    let a = fold::class_key(n, side_a);
    let b = fold::class_key(n, side_b);
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Labels on the two sides of edge `e`, the first side containing `edges[e].0`.
pub(crate) fn edge_sides(
    groups: &[Vec<ConjGen>],
    edges: &[(usize, usize)],
    e: usize,
) -> (Vec<ConjGen>, Vec<ConjGen>) {
    let adj = tree::adjacency(groups.len(), edges);
    let (a, b) = edges[e];
    let mut side = vec![false; groups.len()];
    let mut stack = vec![a];
    side[a] = true;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !side[w] && !(v == a && w == b) {
                side[w] = true;
                stack.push(w);
            }
        }
    }
    let mut left = Vec::new();
    let mut right = Vec::new();
    for (v, g) in groups.iter().enumerate() {
        if side[v] {
            left.extend(g.iter().cloned());
        } else {
            right.extend(g.iter().cloned());
        }
    }
    (left, right)
}

pub(crate) fn splitting_key(n: usize, groups: &[Vec<ConjGen>], edges: &[(usize, usize)]) -> SplittingKey {
    let mut keys: Vec<EdgeKey> = (0..edges.len())
        .map(|e| {
            let (l, r) = edge_sides(groups, edges, e);
            edge_key(n, &l, &r)
        })
        .collect();
    keys.sort();
    SplittingKey(keys)
}

/// The decomposition `W_n = <left> * <right>` induced by an edge. Equality
/// and hashing use the conjugacy-invariant key; `left` (the side holding
/// core 1) and `right` are the canonical one-edge representative.
#[derive(Clone, Debug, Serialize)]
pub struct FactorPartition {
    pub left: Vec<ConjGen>,
    pub right: Vec<ConjGen>,
    #[serde(skip)]
    key: EdgeKey,
}

impl FactorPartition {
    pub fn new(n: usize, side_a: &[ConjGen], side_b: &[ConjGen]) -> FactorPartition {
        let key = edge_key(n, side_a, side_b);
        let groups = vec![side_a.to_vec(), side_b.to_vec()];
        let canon = tree::canonicalize(n, &groups, &tree::adjacency(2, &[(0, 1)]));
        let mut it = canon.groups.into_iter();
        let left = it.next().unwrap_or_default();
        let right = it.next().unwrap_or_default();
        FactorPartition { left, right, key }
    }

    pub fn key(&self) -> &EdgeKey {
        &self.key
    }

    /// Core indices on the left and right, each sorted.
    pub fn core_sets(&self) -> (Vec<u8>, Vec<u8>) {
        let mut l: Vec<u8> = self.left.iter().map(|c| c.core).collect();
        let mut r: Vec<u8> = self.right.iter().map(|c| c.core).collect();
        l.sort();
        r.sort();
        (l, r)
    }
}

impl PartialEq for FactorPartition {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key
    }
}

impl Eq for FactorPartition {}

impl Hash for FactorPartition {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key.hash(state);
    }
}

impl PartialOrd for FactorPartition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FactorPartition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key.cmp(&other.key)
    }
}
