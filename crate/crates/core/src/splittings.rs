//! Free splittings of W_n (vertices of the completion of the spine):
//! collapses, one-edge collapses, compatibility, common refinements,
//! neighbour streams and the F-one-edge profile.

use crate::budget::{Budget, BudgetError};
use crate::fold::{self, SubgroupGraph};
use crate::links;
use crate::marked_graph::{index_ids, GraphError, MarkedGraph, RawConjGen};
use crate::partition::{self, EdgeKey, FactorPartition, SplittingKey};
use crate::spine::Kind;
use crate::tree;
use crate::word::{Automorphism, ConjGen, Word, WordError};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt::Write as _;
use std::sync::{Arc, Mutex, OnceLock};
use thiserror::Error;

/// Number of partial conjugations allowed in the candidate spaces searched
/// by [`compatible`] and [`common_refinement`].
pub const SEARCH_DEPTH: usize = 2;

/// Longest vertex-group element tried by [`neighbor_stream`].
pub const NEIGHBOR_MAX_TWIST_LEN: usize = 512;

/// Errors from free splitting operations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SplittingError {
    /// The edge set is not a spanning tree of the vertex set.
    #[error("underlying graph is not a finite tree")]
    NotTree,
    /// A splitting must have at least one edge.
    #[error("splitting is reduced to a point")]
    SinglePoint,
    /// A vertex with trivial group has degree below three.
    #[error("vertex {vertex} has trivial group and degree {degree}; trivial vertex groups need degree at least 3")]
    LowDegree { vertex: usize, degree: usize },
    /// A leaf carries the trivial group.
    #[error("leaf {0} carries the trivial group, violating minimality")]
    EmptyLeaf(usize),
    /// A core index is used twice.
    #[error("core index {0} appears on more than one label")]
    DuplicateCore(u8),
    /// A core index is missing.
    #[error("core index {0} is not covered by any label")]
    MissingCore(u8),
    /// The labels do not form a basis of W_n.
    #[error("labels do not form a basis of W_n")]
    NotBasis,
    /// An edge index is out of range.
    #[error("edge index {0} out of range")]
    EdgeOutOfRange(usize),
    /// The operation needs a vertex group of order at least four.
    #[error("splitting lies in the spine and has finite valence; its full link has {link_size} vertices")]
    InSpine { link_size: usize },
    /// The operation needs a splitting in the spine.
    #[error("splitting has a vertex group with two or more labels")]
    NotInSpine,
    /// The operation needs a one-edge splitting.
    #[error("expected a one-edge splitting")]
    NotOneEdge,
    /// Two inputs describe the same splitting.
    #[error("input splittings are not pairwise distinct")]
    Duplicate,
    /// No candidate refinement has the requested collapses.
    #[error("no common refinement found in the bounded candidate space")]
    NoRefinement,
    /// Several candidates share the requested collapses.
    #[error("{0} distinct refinements share the requested collapses")]
    MultipleRefinements(usize),
    /// The neighbour stream ran out of twist elements.
    #[error("only {found} distinct neighbours found up to twist length {max_len}")]
    Stalled { found: usize, max_len: usize },
    /// Operands have different ranks.
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    /// Label data failed word-level validation.
    #[error(transparent)]
    Word(#[from] WordError),
    /// Marked-graph level failure.
    #[error(transparent)]
    Graph(#[from] GraphError),
    /// A resource cap was reached.
    #[error(transparent)]
    Budget(#[from] BudgetError),
    /// Malformed JSON input.
    #[error("invalid JSON: {0}")]
    Json(String),
}

/// A free splitting presented by its quotient tree of groups. Each vertex
/// carries a (possibly empty) set of labels generating its vertex group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeSplitting {
    n: usize,
    groups: Vec<Vec<ConjGen>>,
    edges: Vec<(usize, usize)>,
}

impl FreeSplitting {
    /// Validated constructor.
    pub fn new(n: usize, groups: Vec<Vec<ConjGen>>, edges: Vec<(usize, usize)>) -> Result<Self, SplittingError> {
        let s = FreeSplitting { n, groups, edges };
        s.validate()?;
        Ok(s)
    }

    /// Checks every free splitting invariant.
    pub fn validate(&self) -> Result<(), SplittingError> {
        let m = self.groups.len();
        if m < 2 {
            return Err(SplittingError::SinglePoint);
        }
        if !tree::is_tree(m, &self.edges) {
            return Err(SplittingError::NotTree);
        }
        let mut seen = vec![false; self.n + 1];
        for c in self.groups.iter().flatten() {
            c.check_rank(self.n)?;
            if std::mem::replace(&mut seen[c.core as usize], true) {
                return Err(SplittingError::DuplicateCore(c.core));
            }
        }
        if let Some(i) = (1..=self.n).find(|&i| !seen[i]) {
            return Err(SplittingError::MissingCore(i as u8));
        }
        for v in 0..m {
            let d = self.degree(v);
            if self.groups[v].is_empty() {
                if d == 1 {
                    return Err(SplittingError::EmptyLeaf(v));
                }
                if d < 3 {
                    return Err(SplittingError::LowDegree { vertex: v, degree: d });
                }
            }
        }
        let all: Vec<ConjGen> = self.groups.iter().flatten().cloned().collect();
        if !fold::is_basis(self.n, &all) {
            return Err(SplittingError::NotBasis);
        }
        Ok(())
    }

    /// The image of a marked graph: the same tree with singleton groups.
    pub fn from_marked_graph(x: &MarkedGraph) -> FreeSplitting {
        FreeSplitting { n: x.rank(), groups: x.groups(), edges: x.edges().to_vec() }
    }

    /// One-edge splitting `<a> * <b>`.
    pub fn one_edge(n: usize, a: Vec<ConjGen>, b: Vec<ConjGen>) -> Result<FreeSplitting, SplittingError> {
        FreeSplitting::new(n, vec![a, b], vec![(0, 1)])
    }

    /// One-edge splitting `<x_i : i in left> * <x_j : j not in left>`.
    pub fn standard_one_edge(n: usize, left: &[u8]) -> Result<FreeSplitting, SplittingError> {
        let a: Vec<ConjGen> = left.iter().map(|&i| ConjGen::generator(i)).collect();
        let b: Vec<ConjGen> = (1..=n as u8).filter(|i| !left.contains(i)).map(ConjGen::generator).collect();
        FreeSplitting::one_edge(n, a, b)
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        self.groups.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn groups(&self) -> &[Vec<ConjGen>] {
        &self.groups
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        tree::adjacency(self.groups.len(), &self.edges)
    }

    /// Whether every vertex group has order at most two.
    pub fn is_in_spine(&self) -> bool {
        self.groups.iter().all(|g| g.len() <= 1)
    }

    /// The marked graph with the same data, when the splitting is in the spine.
    pub fn to_marked_graph(&self) -> Option<MarkedGraph> {
        if !self.is_in_spine() {
            return None;
        }
        let labels = self.groups.iter().map(|g| g.first().cloned()).collect();
        MarkedGraph::new(self.n, labels, self.edges.clone()).ok()
    }

    pub fn is_one_edge(&self) -> bool {
        self.edges.len() == 1
    }

    /// One edge with sides of sizes one and `n-1`.
    pub fn is_f_one_edge(&self) -> bool {
        if !self.is_one_edge() {
            return false;
        }
        let (a, b) = (self.groups[0].len(), self.groups[1].len());
        a.min(b) == 1 && a.max(b) == self.n - 1
    }

    /// Canonical representative (global conjugation, tree isomorphism, twists
    /// by vertex groups and change of basis inside vertex groups).
    pub fn canonicalize(&self) -> FreeSplitting {
        let canon = tree::canonicalize(self.n, &self.groups, &self.adjacency());
        FreeSplitting { n: self.n, groups: canon.groups, edges: canon.edges }
    }

    pub fn equivalent(&self, other: &FreeSplitting) -> bool {
        self.n == other.n && self.edge_count() == other.edge_count() && self.canonicalize() == other.canonicalize()
    }

    pub fn edge_key(&self, e: usize) -> EdgeKey {
        let (l, r) = partition::edge_sides(&self.groups, &self.edges, e);
        partition::edge_key(self.n, &l, &r)
    }

    /// Sorted edge keys; a complete invariant of the splitting.
    pub fn key(&self) -> SplittingKey {
        partition::splitting_key(self.n, &self.groups, &self.edges)
    }

    /// The decomposition of W_n induced by edge `e`.
    pub fn edge_partition(&self, e: usize) -> Result<FactorPartition, SplittingError> {
        if e >= self.edges.len() {
            return Err(SplittingError::EdgeOutOfRange(e));
        }
        let (l, r) = partition::edge_sides(&self.groups, &self.edges, e);
        Ok(FactorPartition::new(self.n, &l, &r))
    }

    /// Contracts the edges in `forest`, merging label sets.
    pub fn collapse(&self, forest: &[usize]) -> Result<FreeSplitting, SplittingError> {
        if let Some(&e) = forest.iter().find(|&&e| e >= self.edges.len()) {
            return Err(SplittingError::EdgeOutOfRange(e));
        }
        let forest: Vec<usize> = forest.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        let (groups, edges, _) = tree::contract(&self.groups, &self.edges, &forest);
        if groups.len() < 2 {
            return Err(SplittingError::SinglePoint);
        }
        let out = FreeSplitting { n: self.n, groups, edges };
        for v in 0..out.vertex_count() {
            let d = out.degree(v);
            if out.groups[v].is_empty() && d < 3 {
                return Err(SplittingError::LowDegree { vertex: v, degree: d });
            }
        }
        Ok(out)
    }

    /// For every edge, the one-edge splitting obtained by collapsing all other
    /// edges, canonicalized and in edge order.
    pub fn one_edge_collapses(&self) -> Vec<FreeSplitting> {
        (0..self.edges.len())
            .map(|e| {
                let others: Vec<usize> = (0..self.edges.len()).filter(|&f| f != e).collect();
                self.collapse(&others).expect("collapsing all but one edge is legal").canonicalize()
            })
            .collect()
    }

    /// Conjugates every label by `w`.
    pub fn conjugate_labels(&self, w: &Word) -> FreeSplitting {
        let groups = self.groups.iter().map(|g| g.iter().map(|c| c.conjugated_by(w)).collect()).collect();
        FreeSplitting { n: self.n, groups, edges: self.edges.clone() }
    }

    /// Relabels by `f` without canonicalizing.
    pub fn apply(&self, f: &Automorphism) -> FreeSplitting {
        let groups = self.groups.iter().map(|g| g.iter().map(|c| f.apply_conj(c)).collect()).collect();
        FreeSplitting { n: self.n, groups, edges: self.edges.clone() }
    }

    /// Relabels by `f` and canonicalizes.
    pub fn act(&self, f: &Automorphism) -> Result<FreeSplitting, SplittingError> {
        if f.rank() != self.n {
            return Err(SplittingError::RankMismatch(f.rank(), self.n));
        }
        Ok(self.apply(f).canonicalize())
    }

    /// Vertices of the branch at `v` through neighbour `u`.
    fn branch(&self, v: usize, u: usize) -> Vec<usize> {
        let adj = self.adjacency();
        let mut seen = vec![false; self.vertex_count()];
        seen[v] = true;
        seen[u] = true;
        let mut stack = vec![u];
        let mut out = vec![u];
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                    out.push(y);
                }
            }
        }
        out
    }

    /// Conjugates every label in the branch at `v` through `u` by `h`.
    pub fn twist(&self, v: usize, u: usize, h: &Word) -> FreeSplitting {
        let mut groups = self.groups.clone();
        for x in self.branch(v, u) {
            groups[x] = groups[x].iter().map(|c| c.conjugated_by(h)).collect();
        }
        FreeSplitting { n: self.n, groups, edges: self.edges.clone() }
    }

    /// The automorphism sending `x_i` to the label with core `i`.
    pub fn frame(&self) -> Automorphism {
        let mut labels: Vec<ConjGen> = self.groups.iter().flatten().cloned().collect();
        labels.sort_by_key(|c| c.core);
        Automorphism::from_images_unchecked(labels)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&SplittingJson::from(self)).expect("serializable")
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(SplittingJson::from(self)).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<FreeSplitting, SplittingError> {
        let raw: SplittingJson = serde_json::from_str(s).map_err(|e| SplittingError::Json(e.to_string()))?;
        raw.into_splitting()
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph splitting {\n");
        for (v, g) in self.groups.iter().enumerate() {
            let text: Vec<String> = g.iter().map(|c| c.expand().to_string()).collect();
            let text = if text.is_empty() { "•".to_string() } else { format!("<{}>", text.join(", ")) };
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
struct SplittingVertexJson {
    id: i64,
    labels: Vec<RawConjGen>,
}

#[derive(Serialize, Deserialize)]
struct SplittingJson {
    n: usize,
    vertices: Vec<SplittingVertexJson>,
    edges: Vec<[i64; 2]>,
}

impl From<&FreeSplitting> for SplittingJson {
    fn from(s: &FreeSplitting) -> Self {
        SplittingJson {
            n: s.n,
            vertices: s
                .groups
                .iter()
                .enumerate()
                .map(|(v, g)| SplittingVertexJson { id: v as i64, labels: g.iter().map(RawConjGen::from_conj).collect() })
                .collect(),
            edges: s.edges.iter().map(|&(a, b)| [a as i64, b as i64]).collect(),
        }
    }
}

impl SplittingJson {
    fn into_splitting(self) -> Result<FreeSplitting, SplittingError> {
        let ids: Vec<i64> = self.vertices.iter().map(|v| v.id).collect();
        let edges = index_ids(&ids, &self.edges).map_err(SplittingError::Json)?;
        let n = self.n;
        let groups = self
            .vertices
            .into_iter()
            .map(|v| v.labels.into_iter().map(|l| l.into_conj(n)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        FreeSplitting::new(n, groups, edges)
    }
}

/// All labelled trees on `m` vertices, from Prüfer sequences.
fn labelled_trees(m: usize) -> Vec<Vec<(usize, usize)>> {
    if m == 1 {
        return vec![Vec::new()];
    }
    if m == 2 {
        return vec![vec![(0, 1)]];
    }
    let mut out = Vec::new();
    let total = m.pow((m - 2) as u32);
    for code in 0..total {
        let mut seq = Vec::with_capacity(m - 2);
        let mut c = code;
        for _ in 0..m - 2 {
            seq.push(c % m);
            c /= m;
        }
        let mut degree = vec![1usize; m];
        for &s in &seq {
            degree[s] += 1;
        }
        let mut edges = Vec::with_capacity(m - 1);
        for &s in &seq {
            let leaf = (0..m).find(|&v| degree[v] == 1).expect("a leaf exists");
            edges.push((leaf.min(s), leaf.max(s)));
            degree[leaf] -= 1;
            degree[s] -= 1;
        }
        let rest: Vec<usize> = (0..m).filter(|&v| degree[v] == 1).collect();
        edges.push((rest[0], rest[1]));
        edges.sort();
        out.push(edges);
    }
    out
}

/// Splittings with `k` edges whose labels are the bare generators.
fn untwisted_arrangements(n: usize, k: usize) -> Vec<FreeSplitting> {
    let m = k + 1;
    let mut out = Vec::new();
    for edges in labelled_trees(m) {
        let total = m.pow(n as u32);
        for code in 0..total {
            let mut groups = vec![Vec::new(); m];
            let mut c = code;
            for i in 1..=n as u8 {
                groups[c % m].push(ConjGen::generator(i));
                c /= m;
            }
            let s = FreeSplitting { n, groups, edges: edges.clone() };
            if s.validate().is_ok() {
                out.push(s);
            }
        }
    }
    out
}

/// Images of `s` under every partial conjugation `x_j -> x_i x_j x_i`.
fn partial_conjugation_moves(s: &FreeSplitting) -> Vec<FreeSplitting> {
    let n = s.rank();
    let mut out = Vec::with_capacity(n * (n - 1));
    for i in 1..=n {
        for j in (1..=n).filter(|&j| j != i) {
            let f = Automorphism::sigma(n, j, i).expect("indices in range");
            out.push(s.act(&f).expect("automorphic images stay valid"));
        }
    }
    out
}

/// A finite candidate space of `k`-edge splittings: untwisted arrangements
/// and their images under products of at most `depth` partial conjugations,
/// canonicalized.
#[derive(Debug)]
pub struct Universe {
    pub n: usize,
    pub k: usize,
    pub depth: usize,
    pub members: Vec<FreeSplitting>,
    pub keys: Vec<SplittingKey>,
    by_key: HashMap<SplittingKey, Vec<usize>>,
}

impl Universe {
    pub fn build(n: usize, k: usize, depth: usize) -> Universe {
        let seeds: BTreeSet<FreeSplitting> =
            untwisted_arrangements(n, k).par_iter().map(|s| s.canonicalize()).collect::<Vec<_>>().into_iter().collect();
        let mut frontier: Vec<FreeSplitting> = seeds.iter().cloned().collect();
        let mut all = seeds;
        for _ in 0..depth {
            let images: Vec<Vec<FreeSplitting>> = frontier.par_iter().map(partial_conjugation_moves).collect();
            let mut next = Vec::new();
            for t in images.into_iter().flatten() {
                if all.insert(t.clone()) {
                    next.push(t);
                }
            }
            next.sort();
            frontier = next;
        }
        let members: Vec<FreeSplitting> = all.into_iter().collect();
        let keys: Vec<SplittingKey> = members.par_iter().map(|s| s.key()).collect();
        let mut by_key: HashMap<SplittingKey, Vec<usize>> = HashMap::new();
        for (i, key) in keys.iter().enumerate() {
            by_key.entry(key.clone()).or_default().push(i);
        }
        Universe { n, k, depth, members, keys, by_key }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Members whose edge keys equal `key`.
    pub fn lookup(&self, key: &SplittingKey) -> &[usize] {
        self.by_key.get(key).map(|v| v.as_slice()).unwrap_or(&[])
    }

    /// Keys carried by more than one canonical member.
    pub fn key_collisions(&self) -> Vec<SplittingKey> {
        let mut out: Vec<SplittingKey> =
            self.by_key.iter().filter(|(_, v)| v.len() > 1).map(|(k, _)| k.clone()).collect();
        out.sort();
        out
    }
}

type UniverseCache = Mutex<HashMap<(usize, usize, usize), Arc<Universe>>>;

/// Cached candidate space; building is deterministic.
pub fn universe(n: usize, k: usize, depth: usize) -> Arc<Universe> {
    static CACHE: OnceLock<UniverseCache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(u) = cache.lock().expect("cache lock").get(&(n, k, depth)) {
        return Arc::clone(u);
    }
    let built = Arc::new(Universe::build(n, k, depth));
    let mut guard = cache.lock().expect("cache lock");
    Arc::clone(guard.entry((n, k, depth)).or_insert(built))
}

/// Canonical `k`-edge splittings reachable by `depth` partial conjugations.
pub fn enumerate_splittings(n: usize, k: usize, depth: usize) -> Vec<FreeSplitting> {
    universe(n, k, depth).members.clone()
}

/// Looks up the unique splitting whose edge keys are `key`, after moving
/// into the frame of `anchor` (where `anchor` has bare labels).
fn search_refinement(parts: &[FreeSplitting], anchor: &FreeSplitting) -> Result<FreeSplitting, SplittingError> {
    let n = anchor.rank();
    let phi = anchor.frame();
    let phi_inv = phi.inverse();
    let mut keys: Vec<EdgeKey> = parts.iter().map(|p| p.apply(&phi_inv).edge_key(0)).collect();
    keys.sort();
    let target = SplittingKey(keys);
    let u = universe(n, parts.len(), SEARCH_DEPTH);
    let hits = u.lookup(&target);
    match hits.len() {
        0 => Err(SplittingError::NoRefinement),
        1 => Ok(u.members[hits[0]].apply(&phi).canonicalize()),
        h => Err(SplittingError::MultipleRefinements(h)),
    }
}

fn require_one_edge(s: &FreeSplitting) -> Result<(), SplittingError> {
    if s.is_one_edge() {
        Ok(())
    } else {
        Err(SplittingError::NotOneEdge)
    }
}

/// Whether two one-edge splittings have a common refinement, searched among
/// two-edge candidates in the frame of `s1`.
pub fn compatible(s1: &FreeSplitting, s2: &FreeSplitting) -> Result<bool, SplittingError> {
    require_one_edge(s1)?;
    require_one_edge(s2)?;
    if s1.rank() != s2.rank() {
        return Err(SplittingError::RankMismatch(s1.rank(), s2.rank()));
    }
    if s1.key() == s2.key() {
        return Ok(true);
    }
    match search_refinement(&[s1.clone(), s2.clone()], s1) {
        Ok(_) => Ok(true),
        Err(SplittingError::NoRefinement) => Ok(false),
        Err(e) => Err(e),
    }
}

/// The unique splitting whose one-edge collapses are exactly `parts`.
pub fn common_refinement(parts: &[FreeSplitting]) -> Result<FreeSplitting, SplittingError> {
    let first = parts.first().ok_or(SplittingError::NoRefinement)?;
    for p in parts {
        require_one_edge(p)?;
        if p.rank() != first.rank() {
            return Err(SplittingError::RankMismatch(first.rank(), p.rank()));
        }
    }
    let keys: BTreeSet<SplittingKey> = parts.iter().map(|p| p.key()).collect();
    if keys.len() != parts.len() {
        return Err(SplittingError::Duplicate);
    }
    if parts.len() == 1 {
        return Ok(first.canonicalize());
    }
    search_refinement(parts, first)
}

/// Neighbours of a splitting outside the spine: split a vertex group of
/// order at least four as `<a> * <rest>` and conjugate one branch by
/// elements of the original vertex group, taken in order of length.
pub fn neighbor_stream(s: &FreeSplitting, count: usize) -> Result<Vec<FreeSplitting>, SplittingError> {
    if s.is_in_spine() {
        let link_size = finite_link(s)?.len();
        return Err(SplittingError::InSpine { link_size });
    }
    let s = s.canonicalize();
    let n = s.rank();
    let v = (0..s.vertex_count()).find(|&v| s.groups[v].len() >= 2).expect("a vertex group of order at least four");
    let group = s.groups[v].clone();
    let mut groups = s.groups.clone();
    groups[v] = group[1..].to_vec();
    groups.push(vec![group[0].clone()]);
    let new_v = groups.len() - 1;
    let mut edges = s.edges.clone();
    edges.push((v, new_v));
    let base = FreeSplitting { n, groups, edges };
    let branch_root = base.adjacency()[v].iter().copied().find(|&u| u != new_v).expect("the vertex has an edge");
    let graph = SubgroupGraph::generated_by(n, &group);
    let mut seen: HashSet<SplittingKey> = HashSet::new();
    seen.insert(s.key());
    let mut out = Vec::new();
    let mut len = 0usize;
    while out.len() < count {
        if len > NEIGHBOR_MAX_TWIST_LEN {
            return Err(SplittingError::Stalled { found: out.len(), max_len: NEIGHBOR_MAX_TWIST_LEN });
        }
        for h in graph.elements_up_to(len).into_iter().filter(|h| h.len() == len) {
            let cand = base.twist(v, branch_root, &h);
            if seen.insert(cand.key()) {
                out.push(cand.canonicalize());
                if out.len() == count {
                    break;
                }
            }
        }
        len += 1;
    }
    Ok(out)
}

/// The whole link of a splitting in the spine: every collapse (including
/// those merging labelled vertices) and every refinement in the spine.
pub fn finite_link(s: &FreeSplitting) -> Result<Vec<FreeSplitting>, SplittingError> {
    let x = s.to_marked_graph().ok_or(SplittingError::NotInSpine)?;
    let mut out: BTreeSet<FreeSplitting> = BTreeSet::new();
    let m = s.edge_count();
    for mask in 1u64..(1u64 << m) {
        let forest: Vec<usize> = (0..m).filter(|e| mask >> e & 1 == 1).collect();
        if let Ok(c) = s.collapse(&forest) {
            out.insert(c.canonicalize());
        }
    }
    for y in links::positive_link(&x, &Budget::default())? {
        out.insert(FreeSplitting::from_marked_graph(&y.graph));
    }
    Ok(out.into_iter().collect())
}

impl From<links::LinkError> for SplittingError {
    fn from(e: links::LinkError) -> Self {
        match e {
            links::LinkError::Graph(g) => SplittingError::Graph(g),
            links::LinkError::Budget(b) => SplittingError::Budget(b),
        }
    }
}

/// The three properties of a splitting examined by the F-one-edge
/// characterization: infinite link, a {0}-star in the link, and the
/// constructed pair of two-edge splittings joined only through `S`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Lemma54Profile {
    pub a: bool,
    pub b: bool,
    pub c: Option<bool>,
}

/// Whether some {0}-star lies in the link of `s`.
fn zero_star_in_link(s: &FreeSplitting) -> bool {
    if let Some(x) = s.to_marked_graph() {
        return Kind::of(&x) == Kind::FStar || links::negative_link(&x).iter().any(|v| v.kind == Kind::ZeroStar);
    }
    let adj = s.adjacency();
    (0..s.vertex_count()).any(|c| {
        !s.groups[c].is_empty()
            && (0..s.vertex_count()).all(|u| u == c || (adj[u] == [c] && s.groups[u].len() == 1))
    })
}

/// The two-edge splittings `<x1,x2> - <x3..x_{n-1}> - <x_n>` and
/// `<x1,x3> - <x2,x4..x_{n-1}> - <x_n>` transported to the frame of an
/// F-one-edge splitting, together with the one-edge splittings
/// `<x1,x2> | rest` and `<x1,x3> | rest`.
pub fn f_one_edge_witnesses(s: &FreeSplitting) -> Result<[FreeSplitting; 4], SplittingError> {
    if !s.is_f_one_edge() {
        return Err(SplittingError::NotOneEdge);
    }
    let n = s.rank();
    let (big, small) = if s.groups[0].len() > s.groups[1].len() { (0, 1) } else { (1, 0) };
    let mut big_labels = s.groups[big].clone();
    big_labels.sort_by_key(|c| c.core);
    let mut images = big_labels;
    images.push(s.groups[small][0].clone());
    // phi sends x_j to images[j-1]; composing with a relabelling keeps the
    // permutation-plus-conjugator shape.
    let phi = relabelled_frame(&images);
    let g = |ids: &[u8]| -> Vec<ConjGen> { ids.iter().map(|&i| ConjGen::generator(i)).collect() };
    let mid1: Vec<u8> = (3..n as u8).collect();
    let mid2: Vec<u8> = std::iter::once(2).chain(4..n as u8).collect();
    let s1 = FreeSplitting::new(n, vec![g(&[1, 2]), g(&mid1), g(&[n as u8])], vec![(0, 1), (1, 2)])?;
    let s2 = FreeSplitting::new(n, vec![g(&[1, 3]), g(&mid2), g(&[n as u8])], vec![(0, 1), (1, 2)])?;
    let rest12: Vec<u8> = (3..=n as u8).collect();
    let rest13: Vec<u8> = std::iter::once(2).chain(4..=n as u8).collect();
    let t1 = FreeSplitting::one_edge(n, g(&[1, 2]), g(&rest12))?;
    let t2 = FreeSplitting::one_edge(n, g(&[1, 3]), g(&rest13))?;
    Ok([s1, s2, t1, t2].map(|x| x.apply(&phi).canonicalize()))
}

/// The automorphism sending `x_j` to `images[j-1]`, where the cores of the
/// images may be any permutation.
fn relabelled_frame(images: &[ConjGen]) -> Automorphism {
    Automorphism::from_images_unchecked(images.to_vec())
}

/// Evaluates the three properties. Property (c) is only evaluated for
/// F-one-edge splittings and is reported as `None` otherwise.
pub fn lemma54_profile(s: &FreeSplitting) -> Result<Lemma54Profile, SplittingError> {
    let a = !s.is_in_spine();
    let b = zero_star_in_link(s);
    let c = if s.is_f_one_edge() && s.rank() >= 4 {
        let [s1, s2, t1, t2] = f_one_edge_witnesses(s)?;
        let distinct = s1.key() != s2.key();
        let k1: BTreeSet<SplittingKey> = s1.one_edge_collapses().iter().map(|x| x.key()).collect();
        let k2: BTreeSet<SplittingKey> = s2.one_edge_collapses().iter().map(|x| x.key()).collect();
        let common: Vec<&SplittingKey> = k1.intersection(&k2).collect();
        let only_s = common.len() == 1 && *common[0] == s.key();
        let incompatible = !compatible(&t1, &t2)?;
        Some(distinct && only_s && incompatible)
    } else {
        None
    };
    Ok(Lemma54Profile { a, b, c })
}

/// Groups the members of a list of splittings by key, reporting keys shared
/// by inequivalent canonical forms.
pub fn key_conflicts(items: &[FreeSplitting]) -> Vec<SplittingKey> {
    let mut by_key: BTreeMap<SplittingKey, BTreeSet<FreeSplitting>> = BTreeMap::new();
    for s in items {
        by_key.entry(s.key()).or_default().insert(s.canonicalize());
    }
    by_key.into_iter().filter(|(_, v)| v.len() > 1).map(|(k, _)| k).collect()
}

/// Whether every label of `s` is a bare generator.
pub fn is_untwisted(s: &FreeSplitting) -> bool {
    s.groups.iter().flatten().all(|c| c.is_bare())
}

/// Core sets of the two sides of a one-edge splitting.
pub fn core_partition(s: &FreeSplitting) -> Result<(BTreeSet<u8>, BTreeSet<u8>), SplittingError> {
    require_one_edge(s)?;
    let a = s.groups[0].iter().map(|c| c.core).collect();
    let b = s.groups[1].iter().map(|c| c.core).collect();
    Ok((a, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prufer_counts() {
        assert_eq!(labelled_trees(3).len(), 3);
        assert_eq!(labelled_trees(4).len(), 16);
        assert!(labelled_trees(4).iter().all(|e| tree::is_tree(4, e)));
    }

    #[test]
    fn standard_one_edge_shapes() {
        let s = FreeSplitting::standard_one_edge(4, &[1, 2, 3]).unwrap();
        assert!(s.is_f_one_edge());
        let t = FreeSplitting::standard_one_edge(4, &[1, 2]).unwrap();
        assert!(!t.is_f_one_edge());
    }
}
