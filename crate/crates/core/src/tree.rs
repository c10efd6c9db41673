//! Canonical forms for finite trees whose vertices carry conjugates of
//! generators (marked graphs and free splittings share this machinery).
//!
//! Two labelled trees describe the same point when they differ by a global
//! conjugation, by a tree isomorphism, or by a twist: conjugating every label
//! in one branch at a vertex by an element of that vertex's group. The
//! canonical form roots the tree at the vertex carrying core 1, conjugates so
//! that this label is bare, and then chooses each branch lift top-down as the
//! one whose generated subgroup has the smallest canonical basis.

use crate::fold::{self, SubgroupGraph};
use crate::word::{ConjGen, Word};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Node {
    labels: Vec<ConjGen>,
    children: Vec<Node>,
}

/// A labelled tree in canonical form: vertices in preorder, edges as
/// `(parent, child)` pairs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct CanonTree {
    pub groups: Vec<Vec<ConjGen>>,
    pub edges: Vec<(usize, usize)>,
}

fn collect_branch(groups: &[Vec<ConjGen>], adj: &[Vec<usize>], u: usize, parent: usize, out: &mut Vec<ConjGen>) {
    out.extend(groups[u].iter().cloned());
    for &w in &adj[u] {
        if w != parent {
            collect_branch(groups, adj, w, u, out);
        }
    }
}

fn conj_all(labels: &[ConjGen], g: &Word) -> Vec<ConjGen> {
    labels.iter().map(|c| c.conjugated_by(g)).collect()
}

struct Ctx<'a> {
    n: usize,
    groups: &'a [Vec<ConjGen>],
    adj: &'a [Vec<usize>],
}

impl Ctx<'_> {
    fn build(&self, v: usize, parent: Option<usize>, acc: &Word) -> Node {
        let labels_v = conj_all(&self.groups[v], acc);
        let basis = match labels_v.len() {
            0 | 1 => labels_v.clone(),
            _ => fold::canonical_basis(self.n, &labels_v).expect("vertex group is a free factor"),
        };
        let mut children = Vec::new();
        for &u in &self.adj[v] {
            if Some(u) == parent {
                continue;
            }
            let mut branch = Vec::new();
            collect_branch(self.groups, self.adj, u, v, &mut branch);
            let branch = conj_all(&branch, acc);
            let branch_basis = fold::canonical_basis(self.n, &branch).expect("branch group is a free factor");
            let candidates: Vec<Word> = match basis.len() {
                0 => vec![Word::identity()],
                1 => vec![Word::identity(), basis[0].expand()],
                _ => {
                    let m = branch_basis.iter().map(|c| c.conj.len()).max().unwrap_or(0);
                    SubgroupGraph::generated_by(self.n, &basis).elements_up_to(2 * m)
                }
            };
            let mut best: Option<((usize, Vec<Word>), Word)> = None;
            for g in candidates {
                let key = fold::subgroup_order_key(self.n, &conj_all(&branch_basis, &g));
                if best.as_ref().is_none_or(|(k, _)| key < *k) {
                    best = Some((key, g));
                }
            }
            let g = best.expect("at least the identity is a candidate").1;
            children.push(self.build(u, Some(v), &g.multiply(acc)));
        }
        children.sort();
        let mut labels = basis;
        labels.sort();
        Node { labels, children }
    }
}

fn flatten(node: Node, parent: Option<usize>, out: &mut CanonTree) {
    let id = out.groups.len();
    out.groups.push(node.labels);
    if let Some(p) = parent {
        out.edges.push((p, id));
    }
    for child in node.children {
        flatten(child, Some(id), out);
    }
}

/// Canonical form of the labelled tree with vertex groups `groups` and
/// adjacency lists `adj`. Exactly one label must have core 1.
pub(crate) fn canonicalize(n: usize, groups: &[Vec<ConjGen>], adj: &[Vec<usize>]) -> CanonTree {
    let (root, root_label) = groups
        .iter()
        .enumerate()
        .find_map(|(v, g)| g.iter().find(|c| c.core == 1).map(|c| (v, c.clone())))
        .expect("some vertex carries core 1");
    let ctx = Ctx { n, groups, adj };
    let node = ctx.build(root, None, &root_label.conj.inverse());
    let mut out = CanonTree { groups: Vec::new(), edges: Vec::new() };
    flatten(node, None, &mut out);
    out
}

/// Adjacency lists of a tree on `m` vertices.
pub(crate) fn adjacency(m: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); m];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    adj
}

/// Whether `edges` form a spanning tree on `m` vertices.
pub(crate) fn is_tree(m: usize, edges: &[(usize, usize)]) -> bool {
    if m == 0 || edges.len() + 1 != m || edges.iter().any(|&(a, b)| a >= m || b >= m || a == b) {
        return false;
    }
    let adj = adjacency(m, edges);
    let mut seen = vec![false; m];
    let mut stack = vec![0];
    seen[0] = true;
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == m
}

/// Contracts the edges with indices in `forest`, merging vertex groups.
/// Returns the new groups, the new edge list and, for every old vertex, its
/// new index.
pub(crate) fn contract(
    groups: &[Vec<ConjGen>],
    edges: &[(usize, usize)],
    forest: &[usize],
) -> (Vec<Vec<ConjGen>>, Vec<(usize, usize)>, Vec<usize>) {
    let m = groups.len();
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(p: &mut [usize], mut v: usize) -> usize {
        while p[v] != v {
            p[v] = p[p[v]];
            v = p[v];
        }
        v
    }
    let mut in_forest = vec![false; edges.len()];
    for &e in forest {
        in_forest[e] = true;
        let (a, b) = edges[e];
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    let mut new_index = vec![usize::MAX; m];
    let mut count = 0;
    for v in 0..m {
        let r = find(&mut parent, v);
        if new_index[r] == usize::MAX {
            new_index[r] = count;
            count += 1;
        }
        new_index[v] = new_index[r];
    }
    let mut new_groups = vec![Vec::new(); count];
    for v in 0..m {
        new_groups[new_index[v]].extend(groups[v].iter().cloned());
    }
    let new_edges = edges
        .iter()
        .enumerate()
        .filter(|(e, _)| !in_forest[*e])
        .map(|(_, &(a, b))| (new_index[a], new_index[b]))
        .collect();
    (new_groups, new_edges, new_index)
}
