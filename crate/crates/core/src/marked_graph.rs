//! Marked graphs of groups: finite trees with exactly `n` vertices carrying
//! order-two groups, each labelled by a conjugate of a generator. These are
//! the vertices of the spine K_n.

use crate::fold;
use crate::partition::{self, EdgeKey, FactorPartition, SplittingKey};
use crate::tree;
use crate::word::{Automorphism, ConjGen, Word, WordError};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt::Write as _;
use thiserror::Error;

/// Reasons a labelled tree is not a valid marked graph, or a move is illegal.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    /// The edge set is not a spanning tree of the vertex set.
    #[error("underlying graph is not a finite tree")]
    NotTree,
    /// Wrong number of labelled vertices.
    #[error("expected exactly {expected} labelled vertices, found {found}")]
    LabelCount { expected: usize, found: usize },
    /// A core index appears on two labels.
    #[error("core index {0} labels more than one vertex")]
    DuplicateCore(u8),
    /// An unlabelled vertex has degree below three.
    #[error("unlabelled vertex {vertex} has degree {degree}; trivial vertex groups need degree at least 3")]
    LowDegree { vertex: usize, degree: usize },
    /// A leaf carries the trivial group.
    #[error("leaf {0} carries the trivial group")]
    EmptyLeaf(usize),
    /// The labels do not form a free-product basis of W_n.
    #[error("labels do not form a basis of W_n")]
    NotBasis,
    /// The result of a move would be a single vertex.
    #[error("collapse would reduce the tree to a single vertex")]
    SinglePoint,
    /// A collapsed component contains two labelled vertices.
    #[error("collapsed component would merge two labelled vertices")]
    MergesLabels,
    /// An edge index is out of range.
    #[error("edge index {0} out of range")]
    EdgeOutOfRange(usize),
    /// A vertex index is out of range.
    #[error("vertex index {0} out of range")]
    VertexOutOfRange(usize),
    /// Operands have different ranks.
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    /// No edge upstairs induces the same decomposition as a given edge.
    #[error("edge {0} has no lift with the same factor partition")]
    NoLift(usize),
    /// Label data failed word-level validation.
    #[error(transparent)]
    Word(#[from] WordError),
    /// Malformed JSON input.
    #[error("invalid JSON: {0}")]
    Json(String),
}

/// A marked graph of groups with vertices `0..V`. Equality is structural;
/// use [`MarkedGraph::canonicalize`] or [`MarkedGraph::equivalent`] to
/// compare points of the spine.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MarkedGraph {
    n: usize,
    labels: Vec<Option<ConjGen>>,
    edges: Vec<(usize, usize)>,
}

pub(crate) fn groups_of(labels: &[Option<ConjGen>]) -> Vec<Vec<ConjGen>> {
    labels.iter().map(|l| l.iter().cloned().collect()).collect()
}

impl MarkedGraph {
    /// Validated constructor.
    pub fn new(n: usize, labels: Vec<Option<ConjGen>>, edges: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        let g = MarkedGraph { n, labels, edges };
        g.validate()?;
        Ok(g)
    }

    /// Checks every marked-graph invariant.
    pub fn validate(&self) -> Result<(), GraphError> {
        let m = self.labels.len();
        if !tree::is_tree(m, &self.edges) {
            return Err(GraphError::NotTree);
        }
        let found = self.labels.iter().flatten().count();
        if found != self.n {
            return Err(GraphError::LabelCount { expected: self.n, found });
        }
        let mut seen = vec![false; self.n + 1];
        for c in self.labels.iter().flatten() {
            c.check_rank(self.n)?;
            if std::mem::replace(&mut seen[c.core as usize], true) {
                return Err(GraphError::DuplicateCore(c.core));
            }
        }
        for v in 0..m {
            let d = self.degree(v);
            if self.labels[v].is_none() && d == 1 {
                return Err(GraphError::EmptyLeaf(v));
            }
            if self.labels[v].is_none() && d < 3 {
                return Err(GraphError::LowDegree { vertex: v, degree: d });
            }
        }
        let all: Vec<ConjGen> = self.labels.iter().flatten().cloned().collect();
        if !fold::is_basis(self.n, &all) {
            return Err(GraphError::NotBasis);
        }
        Ok(())
    }

    /// The star with an unlabelled centre (vertex 0) and leaf `i` labelled `x_i`.
    pub fn standard_zero_star(n: usize) -> Self {
        let mut labels = vec![None];
        labels.extend((1..=n as u8).map(|i| Some(ConjGen::generator(i))));
        let edges = (1..=n).map(|i| (0, i)).collect();
        MarkedGraph { n, labels, edges }
    }

    /// A {0}-star with the given leaf labels.
    pub fn zero_star_with_labels(labels: Vec<ConjGen>) -> Result<Self, GraphError> {
        let n = labels.len();
        let mut ls = vec![None];
        ls.extend(labels.into_iter().map(Some));
        MarkedGraph::new(n, ls, (1..=n).map(|i| (0, i)).collect())
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn labels(&self) -> &[Option<ConjGen>] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> Option<&ConjGen> {
        self.labels[v].as_ref()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        tree::adjacency(self.labels.len(), &self.edges)
    }

    pub fn leaf_count(&self) -> usize {
        (0..self.vertex_count()).filter(|&v| self.degree(v) == 1).count()
    }

    pub fn unlabeled_vertices(&self) -> Vec<usize> {
        (0..self.vertex_count()).filter(|&v| self.labels[v].is_none()).collect()
    }

    /// The vertex labelled with core `i`.
    pub fn vertex_with_core(&self, i: u8) -> Option<usize> {
        self.labels.iter().position(|l| l.as_ref().map(|c| c.core) == Some(i))
    }

    /// `n+1` vertices and `n` leaves.
    pub fn is_zero_star_shape(&self) -> bool {
        self.vertex_count() == self.n + 1 && self.leaf_count() == self.n
    }

    /// `n` vertices and `n-1` leaves.
    pub fn is_f_star_shape(&self) -> bool {
        self.vertex_count() == self.n && self.leaf_count() == self.n - 1
    }

    pub(crate) fn groups(&self) -> Vec<Vec<ConjGen>> {
        groups_of(&self.labels)
    }

    /// Canonical representative of the equivalence class (global conjugation,
    /// tree isomorphism and twists at labelled vertices).
    pub fn canonicalize(&self) -> MarkedGraph {
        let canon = tree::canonicalize(self.n, &self.groups(), &self.adjacency());
        let labels = canon.groups.into_iter().map(|g| g.into_iter().next()).collect();
        MarkedGraph { n: self.n, labels, edges: canon.edges }
    }

    pub fn equivalent(&self, other: &MarkedGraph) -> bool {
        self.n == other.n
            && self.vertex_count() == other.vertex_count()
            && self.canonicalize() == other.canonicalize()
    }

    /// Relabels every vertex by `f` and canonicalizes.
    pub fn act(&self, f: &Automorphism) -> Result<MarkedGraph, GraphError> {
        if f.rank() != self.n {
            return Err(GraphError::RankMismatch(f.rank(), self.n));
        }
        let labels = self.labels.iter().map(|l| l.as_ref().map(|c| f.apply_conj(c))).collect();
        Ok(MarkedGraph { n: self.n, labels, edges: self.edges.clone() }.canonicalize())
    }

    /// Conjugates every label by `w`.
    pub fn conjugate_labels(&self, w: &Word) -> MarkedGraph {
        let labels = self.labels.iter().map(|l| l.as_ref().map(|c| c.conjugated_by(w))).collect();
        MarkedGraph { n: self.n, labels, edges: self.edges.clone() }
    }

    /// Labels on the two sides of edge `e`.
    pub fn edge_sides(&self, e: usize) -> (Vec<ConjGen>, Vec<ConjGen>) {
        partition::edge_sides(&self.groups(), &self.edges, e)
    }

    /// Conjugacy-invariant identifier of the decomposition induced by `e`.
    pub fn edge_key(&self, e: usize) -> EdgeKey {
        let (l, r) = self.edge_sides(e);
        partition::edge_key(self.n, &l, &r)
    }

    /// The decomposition of W_n induced by edge `e`.
    pub fn edge_partition(&self, e: usize) -> Result<FactorPartition, GraphError> {
        if e >= self.edges.len() {
            return Err(GraphError::EdgeOutOfRange(e));
        }
        let (l, r) = self.edge_sides(e);
        Ok(FactorPartition::new(self.n, &l, &r))
    }

    /// Sorted edge keys; equal for equivalent marked graphs.
    pub fn splitting_key(&self) -> SplittingKey {
        partition::splitting_key(self.n, &self.groups(), &self.edges)
    }

    /// Whether contracting `forest` is a legal collapse.
    pub fn is_legal_forest(&self, forest: &[usize]) -> bool {
        self.collapse(forest).is_ok()
    }

    /// Contracts the edges listed in `forest`. Surviving edges keep their
    /// relative order.
    pub fn collapse(&self, forest: &[usize]) -> Result<MarkedGraph, GraphError> {
        if let Some(&e) = forest.iter().find(|&&e| e >= self.edges.len()) {
            return Err(GraphError::EdgeOutOfRange(e));
        }
        let forest: Vec<usize> = forest.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        let (groups, edges, _) = tree::contract(&self.groups(), &self.edges, &forest);
        if groups.len() == 1 {
            return Err(GraphError::SinglePoint);
        }
        if groups.iter().any(|g| g.len() > 1) {
            return Err(GraphError::MergesLabels);
        }
        let labels: Vec<Option<ConjGen>> = groups.into_iter().map(|g| g.into_iter().next()).collect();
        let out = MarkedGraph { n: self.n, labels, edges };
        for v in 0..out.vertex_count() {
            let d = out.degree(v);
            if out.labels[v].is_none() && d < 3 {
                return Err(GraphError::LowDegree { vertex: v, degree: d });
            }
        }
        Ok(out)
    }

    /// Every nonempty legal forest, as sorted edge-index lists.
    pub fn legal_forests(&self) -> Vec<Vec<usize>> {
        let m = self.edges.len();
        (1u64..(1u64 << m))
            .map(|mask| (0..m).filter(|e| mask >> e & 1 == 1).collect::<Vec<_>>())
            .filter(|f| self.is_legal_forest(f))
            .collect()
    }

    /// All marked graphs obtained by inserting one new edge at `v`,
    /// canonicalized, deduplicated and sorted.
    pub fn one_edge_blowups(&self, v: usize) -> Result<Vec<MarkedGraph>, GraphError> {
        if v >= self.vertex_count() {
            return Err(GraphError::VertexOutOfRange(v));
        }
        let adj = self.adjacency();
        let nbrs = &adj[v];
        let d = nbrs.len();
        let mut out = BTreeSet::new();
        let branch_vertices = |start: usize| -> Vec<usize> {
            let mut seen = vec![false; self.vertex_count()];
            seen[v] = true;
            seen[start] = true;
            let mut stack = vec![start];
            let mut vs = vec![start];
            while let Some(x) = stack.pop() {
                for &y in &adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                        vs.push(y);
                    }
                }
            }
            vs
        };
        for mask in 0u32..(1u32 << d) {
            let e2: Vec<usize> = (0..d).filter(|k| mask >> k & 1 == 1).collect();
            let e1_len = d - e2.len();
            let legal = match self.labels[v] {
                None => e1_len >= 2 && e2.len() >= 2,
                Some(_) => e2.len() >= 2,
            };
            if !legal {
                continue;
            }
            let new_v = self.vertex_count();
            let mut edges: Vec<(usize, usize)> = self
                .edges
                .iter()
                .map(|&(a, b)| {
                    let moved = |x: usize, y: usize| x == v && e2.iter().any(|&k| nbrs[k] == y);
                    if moved(a, b) {
                        (new_v, b)
                    } else if moved(b, a) {
                        (a, new_v)
                    } else {
                        (a, b)
                    }
                })
                .collect();
            edges.push((v, new_v));
            let mut labels = self.labels.clone();
            labels.push(None);
            match &self.labels[v] {
                None => {
                    out.insert(MarkedGraph { n: self.n, labels, edges }.canonicalize());
                }
                Some(c) => {
                    let cw = c.expand();
                    let branches: Vec<Vec<usize>> = e2.iter().map(|&k| branch_vertices(nbrs[k])).collect();
                    for tmask in 0u32..(1u32 << e2.len()) {
                        let mut ls = labels.clone();
                        for (bi, vs) in branches.iter().enumerate() {
                            if tmask >> bi & 1 == 1 {
                                for &x in vs {
                                    ls[x] = ls[x].as_ref().map(|l| l.conjugated_by(&cw));
                                }
                            }
                        }
                        out.insert(MarkedGraph { n: self.n, labels: ls, edges: edges.clone() }.canonicalize());
                    }
                }
            }
        }
        Ok(out.into_iter().collect())
    }

    /// The edges of `self` inducing the same decompositions as the edges `h`
    /// of a collapse `y` of `self`.
    pub fn canonical_lift(&self, y: &MarkedGraph, h: &[usize]) -> Result<Vec<usize>, GraphError> {
        if y.n != self.n {
            return Err(GraphError::RankMismatch(self.n, y.n));
        }
        let keys: Vec<EdgeKey> = (0..self.edges.len()).map(|e| self.edge_key(e)).collect();
        let mut out = Vec::with_capacity(h.len());
        for &f in h {
            if f >= y.edges.len() {
                return Err(GraphError::EdgeOutOfRange(f));
            }
            let kf = y.edge_key(f);
            let e = keys.iter().position(|k| *k == kf).ok_or(GraphError::NoLift(f))?;
            out.push(e);
        }
        out.sort();
        Ok(out)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(MarkedGraphJson::from(self)).expect("serializable")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&MarkedGraphJson::from(self)).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<MarkedGraph, GraphError> {
        let raw: MarkedGraphJson = serde_json::from_str(s).map_err(|e| GraphError::Json(e.to_string()))?;
        raw.into_graph()
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph marked {\n");
        for (v, l) in self.labels.iter().enumerate() {
            let text = l.as_ref().map_or("•".to_string(), |c| c.expand().to_string());
            let _ = writeln!(s, "  v{v} [label=\"{text}\"];");
        }
        for &(a, b) in &self.edges {
            let _ = writeln!(s, "  v{a} -- v{b};");
        }
        s.push_str("}\n");
        s
    }
}

#[derive(Serialize, Deserialize)]
pub(crate) struct RawConjGen {
    pub core: usize,
    pub conj: Vec<usize>,
}

impl RawConjGen {
    pub(crate) fn from_conj(c: &ConjGen) -> Self {
        RawConjGen { core: c.core as usize, conj: c.conj.letters().iter().map(|&a| a as usize).collect() }
    }

    pub(crate) fn into_conj(self, n: usize) -> Result<ConjGen, WordError> {
        if self.core == 0 || self.core > n {
            return Err(WordError::IndexOutOfRange { index: self.core, n });
        }
        let mut letters = Vec::with_capacity(self.conj.len());
        for a in self.conj {
            if a == 0 || a > n {
                return Err(WordError::IndexOutOfRange { index: a, n });
            }
            letters.push(a as u8);
        }
        let w = Word::try_from_letters(letters, n)?;
        Ok(ConjGen::new(self.core as u8, &w))
    }
}

#[derive(Serialize, Deserialize)]
struct VertexJson {
    id: i64,
    label: Option<RawConjGen>,
}

#[derive(Serialize, Deserialize)]
struct MarkedGraphJson {
    n: usize,
    vertices: Vec<VertexJson>,
    edges: Vec<[i64; 2]>,
}

impl From<&MarkedGraph> for MarkedGraphJson {
    fn from(g: &MarkedGraph) -> Self {
        MarkedGraphJson {
            n: g.n,
            vertices: g
                .labels
                .iter()
                .enumerate()
                .map(|(v, l)| VertexJson { id: v as i64, label: l.as_ref().map(RawConjGen::from_conj) })
                .collect(),
            edges: g.edges.iter().map(|&(a, b)| [a as i64, b as i64]).collect(),
        }
    }
}

/// Maps arbitrary vertex ids to `0..V`, rejecting duplicates and dangling ids.
pub(crate) fn index_ids(ids: &[i64], edges: &[[i64; 2]]) -> Result<Vec<(usize, usize)>, String> {
    let mut index = std::collections::HashMap::new();
    for (k, &id) in ids.iter().enumerate() {
        if index.insert(id, k).is_some() {
            return Err(format!("duplicate vertex id {id}"));
        }
    }
    edges
        .iter()
        .map(|[a, b]| match (index.get(a), index.get(b)) {
            (Some(&x), Some(&y)) => Ok((x, y)),
            _ => Err(format!("edge [{a},{b}] references an unknown vertex id")),
        })
        .collect()
}

impl MarkedGraphJson {
    fn into_graph(self) -> Result<MarkedGraph, GraphError> {
        let ids: Vec<i64> = self.vertices.iter().map(|v| v.id).collect();
        let edges = index_ids(&ids, &self.edges).map_err(GraphError::Json)?;
        let n = self.n;
        let labels = self
            .vertices
            .into_iter()
            .map(|v| v.label.map(|l| l.into_conj(n)).transpose())
            .collect::<Result<Vec<_>, _>>()?;
        MarkedGraph::new(n, labels, edges)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_star_blowups_at_leaf_are_empty() {
        let x = MarkedGraph::standard_zero_star(4);
        assert!(x.one_edge_blowups(1).unwrap().is_empty());
    }

    #[test]
    fn degree_four_centre_has_three_splittings() {
        let x = MarkedGraph::standard_zero_star(4);
        assert_eq!(x.one_edge_blowups(0).unwrap().len(), 3);
    }

    #[test]
    fn collapse_rejects_merging_labels() {
        let x = MarkedGraph::standard_zero_star(4);
        let y = x.collapse(&[0]).unwrap();
        assert_eq!(y.collapse(&[0]), Err(GraphError::MergesLabels));
    }
}
