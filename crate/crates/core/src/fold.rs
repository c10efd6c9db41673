//! Folded graphs of finitely generated subgroups of W_n generated by
//! conjugates of generators.
//!
//! A subgroup is represented by a graph with at most one edge of each colour
//! at each vertex. A self-loop of colour `k` (a cone) at a vertex reached by
//! `w` records the element `w x_k w^{-1}`.

use crate::word::{ConjGen, Word};
use std::collections::VecDeque;
use thiserror::Error;

/// Errors raised when reading a basis off a folded graph.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FoldError {
    /// The folded graph has a cycle, so the subgroup is not generated by
    /// conjugates of generators forming a free-product basis.
    #[error("subgroup graph contains a cycle")]
    NotTree,
}

/// Canonical identifier of the conjugacy class of a subgroup.
pub type ClassKey = Vec<u32>;

struct Folder {
    n: usize,
    parent: Vec<usize>,
    adj: Vec<Vec<Option<usize>>>,
}

impl Folder {
    fn new(n: usize) -> Self {
        Folder { n, parent: vec![0], adj: vec![vec![None; n]] }
    }

    fn find(&mut self, mut v: usize) -> usize {
        let mut root = v;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[v] != root {
            let next = self.parent[v];
            self.parent[v] = root;
            v = next;
        }
        root
    }

    fn add_vertex(&mut self) -> usize {
        let id = self.parent.len();
        self.parent.push(id);
        self.adj.push(vec![None; self.n]);
        id
    }

    fn neighbor(&mut self, v: usize, c: usize) -> Option<usize> {
        let v = self.find(v);
        let t = self.adj[v][c]?;
        Some(self.find(t))
    }

    fn union(&mut self, a: usize, b: usize) {
        let mut stack = vec![(a, b)];
        while let Some((x, y)) = stack.pop() {
            let (x, y) = (self.find(x), self.find(y));
            if x == y {
                continue;
            }
            let (keep, gone) = if x < y { (x, y) } else { (y, x) };
            self.parent[gone] = keep;
            for c in 0..self.n {
                if let Some(t) = self.adj[gone][c] {
                    match self.adj[keep][c] {
                        Some(s) => stack.push((s, t)),
                        None => self.adj[keep][c] = Some(t),
                    }
                }
            }
        }
    }

    fn connect(&mut self, u: usize, c: usize, w: usize) {
        let (u, w) = (self.find(u), self.find(w));
        if let Some(s) = self.neighbor(u, c) {
            self.union(s, w);
        } else if let Some(r) = self.neighbor(w, c) {
            self.union(r, u);
        } else {
            self.adj[u][c] = Some(w);
            self.adj[w][c] = Some(u);
        }
    }

    fn add_conj_gen(&mut self, g: &ConjGen) {
        let mut v = self.find(0);
        for &a in g.conj.letters() {
            let c = a as usize - 1;
            v = match self.neighbor(v, c) {
                Some(t) => t,
                None => {
                    let t = self.add_vertex();
                    self.connect(v, c, t);
                    self.find(t)
                }
            };
        }
        self.connect(v, g.core as usize - 1, v);
    }
}

/// The folded graph of a subgroup with a distinguished base vertex (index 0).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupGraph {
    n: usize,
    nbr: Vec<Vec<Option<usize>>>,
}

impl SubgroupGraph {
    /// Folds the graph of the subgroup generated by `gens`.
    pub fn generated_by(n: usize, gens: &[ConjGen]) -> SubgroupGraph {
        let mut f = Folder::new(n);
        for g in gens {
            f.add_conj_gen(g);
        }
        let base = f.find(0);
        let mut order = vec![base];
        let mut index = std::collections::HashMap::new();
        index.insert(base, 0usize);
        let mut i = 0;
        while i < order.len() {
            let v = order[i];
            for c in 0..n {
                if let Some(t) = f.neighbor(v, c) {
                    if let std::collections::hash_map::Entry::Vacant(e) = index.entry(t) {
                        e.insert(order.len());
                        order.push(t);
                    }
                }
            }
            i += 1;
        }
        let mut nbr = vec![vec![None; n]; order.len()];
        for (new, &old) in order.iter().enumerate() {
            for c in 0..n {
                nbr[new][c] = f.neighbor(old, c).map(|t| index[&t]);
            }
        }
        SubgroupGraph { n, nbr }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        self.nbr.len()
    }

    /// Whether `w` lies in the subgroup.
    pub fn contains(&self, w: &Word) -> bool {
        let mut v = 0;
        for &a in w.letters() {
            match self.nbr[v][a as usize - 1] {
                Some(t) => v = t,
                None => return false,
            }
        }
        v == 0
    }

    /// Whether the subgroup is all of W_n.
    pub fn is_whole_group(&self) -> bool {
        self.nbr.len() == 1 && self.nbr[0].iter().all(|x| *x == Some(0))
    }

    fn cone_count(&self) -> usize {
        self.nbr.iter().enumerate().map(|(v, row)| row.iter().filter(|x| **x == Some(v)).count()).sum()
    }

    /// Canonical basis read from a breadth-first spanning tree, sorted by core.
    pub fn canonical_basis(&self) -> Result<Vec<ConjGen>, FoldError> {
        let m = self.nbr.len();
        let mut path: Vec<Option<Word>> = vec![None; m];
        path[0] = Some(Word::identity());
        let mut tree_edges = 0usize;
        let mut queue = VecDeque::from([0usize]);
        while let Some(v) = queue.pop_front() {
            for c in 0..self.n {
                if let Some(t) = self.nbr[v][c] {
                    if t != v && path[t].is_none() {
                        let p = path[v].as_ref().unwrap().multiply(&Word::generator(c as u8 + 1));
                        path[t] = Some(p);
                        tree_edges += 1;
                        queue.push_back(t);
                    }
                }
            }
        }
        let non_loop_edges: usize = self
            .nbr
            .iter()
            .enumerate()
            .map(|(v, row)| row.iter().filter(|x| matches!(x, Some(t) if *t != v)).count())
            .sum::<usize>()
            / 2;
        if non_loop_edges != tree_edges {
            return Err(FoldError::NotTree);
        }
        let mut basis = Vec::with_capacity(self.cone_count());
        for v in 0..m {
            for c in 0..self.n {
                if self.nbr[v][c] == Some(v) {
                    basis.push(ConjGen::new(c as u8 + 1, path[v].as_ref().unwrap()));
                }
            }
        }
        basis.sort();
        Ok(basis)
    }

    /// Distances from the base along non-loop edges.
    fn base_distances(&self) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.nbr.len()];
        dist[0] = 0;
        let mut queue = VecDeque::from([0usize]);
        while let Some(v) = queue.pop_front() {
            for t in self.nbr[v].iter().flatten() {
                if dist[*t] == usize::MAX {
                    dist[*t] = dist[v] + 1;
                    queue.push_back(*t);
                }
            }
        }
        dist
    }

    /// All subgroup elements of length at most `max_len`, sorted by length
    /// then lexicographically.
    pub fn elements_up_to(&self, max_len: usize) -> Vec<Word> {
        let dist = self.base_distances();
        let mut out = Vec::new();
        let mut stack: Vec<(usize, Vec<u8>)> = vec![(0, Vec::new())];
        while let Some((v, word)) = stack.pop() {
            if v == 0 {
                out.push(Word::from_reduced(word.clone()));
            }
            if word.len() == max_len {
                continue;
            }
            let last = word.last().copied();
            for c in 0..self.n {
                let letter = c as u8 + 1;
                if Some(letter) == last {
                    continue;
                }
                if let Some(t) = self.nbr[v][c] {
                    if dist[t] < max_len - word.len() {
                        let mut w2 = word.clone();
                        w2.push(letter);
                        stack.push((t, w2));
                    }
                }
            }
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    /// Identifier of the conjugacy class of the subgroup: a minimal
    /// breadth-first encoding of the core graph over all start vertices.
    pub fn conjugacy_key(&self) -> ClassKey {
        let m = self.nbr.len();
        let mut alive = vec![true; m];
        let is_cone = |v: usize, row: &Vec<Option<usize>>| row.contains(&Some(v));
        loop {
            let mut changed = false;
            for v in 0..m {
                if !alive[v] || is_cone(v, &self.nbr[v]) {
                    continue;
                }
                let deg = self.nbr[v].iter().flatten().filter(|t| alive[**t] && **t != v).count();
                if deg <= 1 {
                    alive[v] = false;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let core: Vec<usize> = (0..m).filter(|&v| alive[v]).collect();
        let mut best: Option<ClassKey> = None;
        for &s in &core {
            let mut idx = vec![usize::MAX; m];
            let mut order = vec![s];
            idx[s] = 0;
            let mut code: ClassKey = Vec::with_capacity(core.len() * self.n + 1);
            code.push(core.len() as u32);
            let mut i = 0;
            while i < order.len() {
                let v = order[i];
                for c in 0..self.n {
                    let entry = match self.nbr[v][c] {
                        Some(t) if t == v => 1,
                        Some(t) if alive[t] => {
                            if idx[t] == usize::MAX {
                                idx[t] = order.len();
                                order.push(t);
                            }
                            2 + idx[t] as u32
                        }
                        _ => 0,
                    };
                    code.push(entry);
                }
                i += 1;
                if let Some(b) = &best {
                    if code.as_slice() > &b[..code.len().min(b.len())] && code.len() <= b.len() {
                        break;
                    }
                }
            }
            if best.as_ref().is_none_or(|b| code < *b) {
                best = Some(code);
            }
        }
        best.unwrap_or_default()
    }
}

/// Folds, then returns the canonical basis of the subgroup generated by `gens`.
pub fn canonical_basis(n: usize, gens: &[ConjGen]) -> Result<Vec<ConjGen>, FoldError> {
    SubgroupGraph::generated_by(n, gens).canonical_basis()
}

/// Conjugacy-class identifier of the subgroup generated by `gens`.
pub fn class_key(n: usize, gens: &[ConjGen]) -> ClassKey {
    SubgroupGraph::generated_by(n, gens).conjugacy_key()
}

/// Whether `gens` generate W_n and have exactly `n` elements, i.e. form a
/// basis of conjugates of generators.
pub fn is_basis(n: usize, gens: &[ConjGen]) -> bool {
    gens.len() == n && SubgroupGraph::generated_by(n, gens).is_whole_group()
}

/// Sort key for a subgroup: total basis length, then the sorted expanded basis.
pub fn subgroup_order_key(n: usize, gens: &[ConjGen]) -> (usize, Vec<Word>) {
    let basis = canonical_basis(n, gens).expect("subgroup generated by a partial basis is a free factor");
    let mut words: Vec<Word> = basis.iter().map(|c| c.expand()).collect();
    words.sort();
    (words.iter().map(|w| w.len()).sum(), words)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cg(core: u8, conj: &[u8]) -> ConjGen {
        ConjGen::new(core, &Word::reduce(conj.iter().copied()))
    }

    #[test]
    fn standard_basis_is_whole_group() {
        let gens: Vec<ConjGen> = (1..=4).map(ConjGen::generator).collect();
        assert!(is_basis(4, &gens));
        assert!(!is_basis(4, &gens[..3]));
    }

    #[test]
    fn twisted_basis_is_whole_group() {
        let gens = vec![cg(1, &[]), cg(2, &[1]), cg(3, &[2, 1]), cg(4, &[])];
        assert!(is_basis(4, &gens));
        let bad = vec![cg(1, &[2]), cg(2, &[1]), cg(3, &[]), cg(4, &[])];
        assert!(!is_basis(4, &bad));
    }

    #[test]
    fn membership() {
        let g = SubgroupGraph::generated_by(3, &[cg(1, &[]), cg(2, &[])]);
        assert!(g.contains(&Word::reduce([1, 2, 1])));
        assert!(!g.contains(&Word::reduce([3])));
    }

    #[test]
    fn conjugate_subgroups_share_keys() {
        let a = class_key(4, &[cg(1, &[]), cg(2, &[])]);
        let b = class_key(4, &[cg(1, &[3]), cg(2, &[3])]);
        let c = class_key(4, &[cg(1, &[]), cg(2, &[3])]);
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn canonical_basis_of_conjugated_pair() {
        let basis = canonical_basis(4, &[cg(1, &[3]), cg(2, &[3, 1])]).unwrap();
        assert_eq!(basis, vec![cg(1, &[3]), cg(2, &[3])]);
        assert_eq!(class_key(4, &basis), class_key(4, &[cg(1, &[3]), cg(2, &[3, 1])]));
        let words: Vec<Word> = basis.iter().map(|c| c.expand()).collect();
        assert_eq!(words[0], Word::reduce([3, 1, 3]));
    }

    #[test]
    fn elements_of_dihedral_subgroup() {
        let g = SubgroupGraph::generated_by(3, &[cg(1, &[]), cg(2, &[])]);
        let els = g.elements_up_to(2);
        assert_eq!(els.len(), 5);
        assert!(els[0].is_empty());
    }
}
