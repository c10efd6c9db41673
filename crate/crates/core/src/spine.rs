//! The graph L_n of {0}-stars and F-stars: neighbours, balls, twist vectors,
//! the first and second term complexities, and arc counting.

use crate::budget::{Budget, BudgetError};
use crate::marked_graph::{GraphError, MarkedGraph};
use crate::word::{Automorphism, ConjGen, Word};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;
use thiserror::Error;

/// Errors from spine operations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpineError {
    /// The vertex is neither a {0}-star nor an F-star.
    #[error("vertex is not in L_n (kind {0:?})")]
    NotInLn(Kind),
    /// An argument of the wrong kind was supplied.
    #[error("expected a {expected:?}, got {got:?}")]
    WrongKind { expected: Kind, got: Kind },
    /// The {0}-star is not adjacent to the F-star `Y_i` of the base.
    #[error("{{0}}-star is not adjacent to Y_{0}")]
    NotAdjacent(u8),
    /// No presentation with at most two twistors matches the labels.
    #[error("labels match no shape with at most two twistors")]
    NoShapeMatch,
    /// A vertex was looked up in a ball that does not contain it.
    #[error("vertex not found in ball")]
    NotInBall,
    /// A documented precondition failed.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// Invalid index.
    #[error("index {0} out of range")]
    Index(usize),
    /// Marked-graph level failure.
    #[error(transparent)]
    Graph(#[from] GraphError),
    /// A resource cap was reached.
    #[error(transparent)]
    Budget(#[from] BudgetError),
}

/// Classification of a spine vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Kind {
    ZeroStar,
    FStar,
    Other,
}

impl Kind {
    /// Classification by vertex and leaf counts.
    pub fn of(g: &MarkedGraph) -> Kind {
        if g.is_zero_star_shape() {
            Kind::ZeroStar
        } else if g.is_f_star_shape() {
            Kind::FStar
        } else {
            Kind::Other
        }
    }
}

/// A canonical marked graph with its classification.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpineVertex {
    pub graph: MarkedGraph,
    pub kind: Kind,
}

impl SpineVertex {
    pub fn new(g: &MarkedGraph) -> SpineVertex {
        let graph = g.canonicalize();
        let kind = Kind::of(&graph);
        SpineVertex { graph, kind }
    }

    pub(crate) fn from_canonical(graph: MarkedGraph) -> SpineVertex {
        let kind = Kind::of(&graph);
        SpineVertex { graph, kind }
    }

    pub fn standard(n: usize) -> SpineVertex {
        SpineVertex::new(&MarkedGraph::standard_zero_star(n))
    }

    pub fn rank(&self) -> usize {
        self.graph.rank()
    }
}

/// Neighbours of a {0}-star or F-star in L_n, canonical and sorted.
pub fn ln_neighbors(v: &SpineVertex) -> Result<Vec<SpineVertex>, SpineError> {
    let g = &v.graph;
    let mut out: BTreeSet<MarkedGraph> = BTreeSet::new();
    match v.kind {
        Kind::ZeroStar => {
            for e in 0..g.edge_count() {
                out.insert(g.collapse(&[e])?.canonicalize());
            }
        }
        Kind::FStar => {
            let centre = (0..g.vertex_count()).find(|&u| g.degree(u) > 1).ok_or(SpineError::NotInLn(v.kind))?;
            for b in g.one_edge_blowups(centre)? {
                if b.is_zero_star_shape() {
                    out.insert(b);
                }
            }
        }
        Kind::Other => return Err(SpineError::NotInLn(Kind::Other)),
    }
    Ok(out.into_iter().map(SpineVertex::from_canonical).collect())
}

/// The closed ball of radius `radius` about `center` in L_n.
#[derive(Clone, Debug)]
pub struct Ball {
    pub center: SpineVertex,
    pub radius: usize,
    pub vertices: Vec<SpineVertex>,
    pub dist: Vec<usize>,
    pub adj: Vec<Vec<usize>>,
    index: HashMap<MarkedGraph, usize>,
}

impl Ball {
    /// Breadth-first construction with global canonical deduplication.
    /// Neighbour lists of a layer are computed in parallel and merged in
    /// vertex order, so the result does not depend on the thread count.
    pub fn build(center: &SpineVertex, radius: usize, budget: &Budget) -> Result<Ball, SpineError> {
        if center.kind == Kind::Other {
            return Err(SpineError::NotInLn(Kind::Other));
        }
        let mut vertices = vec![center.clone()];
        let mut dist = vec![0];
        let mut adj: Vec<Vec<usize>> = vec![Vec::new()];
        let mut index = HashMap::new();
        index.insert(center.graph.clone(), 0);
        let mut layer_start = 0;
        for d in 0..radius {
            let layer_end = vertices.len();
            let frontier: Vec<SpineVertex> = vertices[layer_start..layer_end].to_vec();
            let lists: Vec<Result<Vec<SpineVertex>, SpineError>> = frontier.par_iter().map(ln_neighbors).collect();
            for (offset, list) in lists.into_iter().enumerate() {
                let u = layer_start + offset;
                for w in list? {
                    let idx = match index.get(&w.graph) {
                        Some(&i) => i,
                        None => {
                            let i = vertices.len();
                            index.insert(w.graph.clone(), i);
                            vertices.push(w);
                            dist.push(d + 1);
                            adj.push(Vec::new());
                            budget.check_vertices(vertices.len())?;
                            i
                        }
                    };
                    if !adj[u].contains(&idx) {
                        adj[u].push(idx);
                        adj[idx].push(u);
                    }
                }
                budget.check_time()?;
            }
            layer_start = layer_end;
        }
        for list in adj.iter_mut() {
            list.sort_unstable();
        }
        Ok(Ball { center: center.clone(), radius, vertices, dist, adj, index })
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Index of the vertex equivalent to `g`.
    pub fn index_of(&self, g: &MarkedGraph) -> Option<usize> {
        self.index.get(&g.canonicalize()).copied()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (u, list) in self.adj.iter().enumerate() {
            for &w in list {
                if u < w {
                    out.push((u, w));
                }
            }
        }
        out
    }

    /// Indices of the vertices at distance at most `r` from the centre.
    pub fn within(&self, r: usize) -> Vec<usize> {
        (0..self.len()).filter(|&v| self.dist[v] <= r).collect()
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let vertices: Vec<serde_json::Value> = self.vertices.iter().map(|v| v.graph.to_json_value()).collect();
        let edges: Vec<[usize; 2]> = self.edges().into_iter().map(|(a, b)| [a, b]).collect();
        serde_json::json!({ "vertices": vertices, "edges": edges })
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph ball {\n");
        for (i, v) in self.vertices.iter().enumerate() {
            let shape = match v.kind {
                Kind::ZeroStar => "circle",
                Kind::FStar => "box",
                Kind::Other => "diamond",
            };
            let _ = writeln!(s, "  n{i} [shape={shape}, label=\"{i}:d{}\"];", self.dist[i]);
        }
        for (a, b) in self.edges() {
            let _ = writeln!(s, "  n{a} -- n{b};");
        }
        s.push_str("}\n");
        s
    }
}

/// Convenience wrapper around [`Ball::build`].
pub fn ball(center: &SpineVertex, radius: usize, budget: &Budget) -> Result<Ball, SpineError> {
    Ball::build(center, radius, budget)
}

fn require_zero_star(g: &MarkedGraph) -> Result<(), SpineError> {
    match Kind::of(g) {
        Kind::ZeroStar => Ok(()),
        k => Err(SpineError::WrongKind { expected: Kind::ZeroStar, got: k }),
    }
}

/// Labels of a {0}-star indexed by core (position `m-1` holds core `m`).
fn labels_by_core(g: &MarkedGraph) -> Vec<ConjGen> {
    let mut out: Vec<ConjGen> = g.labels().iter().flatten().cloned().collect();
    out.sort_by_key(|c| c.core);
    out
}

/// Labels of the {0}-star `z` expressed in the frame where the base {0}-star
/// `x` is the standard one.
pub fn labels_in_frame(x: &MarkedGraph, z: &MarkedGraph) -> Result<Vec<ConjGen>, SpineError> {
    require_zero_star(x)?;
    require_zero_star(z)?;
    let base = labels_by_core(x);
    let zl = labels_by_core(z);
    if base.iter().all(|c| c.is_bare()) {
        return Ok(zl);
    }
    let phi_inv = Automorphism::from_images_unchecked(base).inverse();
    Ok(zl.iter().map(|c| phi_inv.apply_conj(c)).collect())
}

/// The F-star `Y_i` of the base: collapse of the edge at the leaf with core `i`.
pub fn y_star(x: &MarkedGraph, i: u8) -> Result<MarkedGraph, SpineError> {
    require_zero_star(x)?;
    let v = x.vertex_with_core(i).ok_or(SpineError::Index(i as usize))?;
    let e = x.edges().iter().position(|&(a, b)| a == v || b == v).ok_or(SpineError::Index(i as usize))?;
    Ok(x.collapse(&[e])?.canonicalize())
}

/// Normalized conjugation pattern of a {0}-star adjacent to `Y_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TwistVector {
    pub base_index: u8,
    pub alphas: Vec<u8>,
}

impl TwistVector {
    pub fn popcount(&self) -> usize {
        self.alphas.iter().filter(|&&a| a == 1).count()
    }

    /// Indices `j` with `alpha_j = 1`.
    pub fn support(&self) -> BTreeSet<u8> {
        (1..=self.alphas.len() as u8).filter(|&j| self.alphas[j as usize - 1] == 1).collect()
    }

    /// The other representative: all bits flipped except at the base index.
    pub fn complement(&self) -> TwistVector {
        let i = self.base_index as usize - 1;
        let alphas = self.alphas.iter().enumerate().map(|(j, &a)| if j == i { 0 } else { 1 - a }).collect();
        TwistVector { base_index: self.base_index, alphas }
    }
}

/// The twist vector of `xp` relative to `Y_i`, choosing the representative
/// with fewer ones and, on a tie, the lexicographically smaller one.
pub fn twist_vector(x: &MarkedGraph, i: u8, xp: &MarkedGraph) -> Result<TwistVector, SpineError> {
    let n = x.rank();
    if i == 0 || i as usize > n {
        return Err(SpineError::Index(i as usize));
    }
    let labels = labels_in_frame(x, xp)?;
    let g = labels[i as usize - 1].conj.inverse();
    let mut alphas = vec![0u8; n];
    for (m, c) in labels.iter().enumerate() {
        let c = c.conjugated_by(&g);
        if m + 1 == i as usize {
            continue;
        }
        if c.conj.is_empty() {
            alphas[m] = 0;
        } else if c.conj.letters() == [i] {
            alphas[m] = 1;
        } else {
            return Err(SpineError::NotAdjacent(i));
        }
    }
    let tv = TwistVector { base_index: i, alphas };
    let comp = tv.complement();
    Ok(match tv.popcount().cmp(&comp.popcount()) {
        std::cmp::Ordering::Less => tv,
        std::cmp::Ordering::Greater => comp,
        std::cmp::Ordering::Equal => {
            if tv.alphas <= comp.alphas {
                tv
            } else {
                comp
            }
        }
    })
}

/// First term complexity with its realizing index sets (one set, or two on
/// the tie `k = n-1-k`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FirstTerm {
    pub k: usize,
    pub sets: Vec<BTreeSet<u8>>,
}

pub fn first_term_complexity(x: &MarkedGraph, i: u8, xp: &MarkedGraph) -> Result<FirstTerm, SpineError> {
    let tv = twist_vector(x, i, xp)?;
    let n = x.rank();
    let m = tv.popcount();
    let k = m.min(n - 1 - m);
    let mut sets = vec![tv.support()];
    if m == n - 1 - m {
        sets.push(tv.complement().support());
    }
    sets.sort();
    sets.dedup();
    Ok(FirstTerm { k, sets })
}

/// Second term complexity and its realizing twistor sets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SecondTerm {
    pub ell: usize,
    pub sets: Vec<BTreeSet<u8>>,
}

impl SecondTerm {
    pub fn unique_set(&self) -> Option<&BTreeSet<u8>> {
        if self.sets.len() == 1 {
            self.sets.first()
        } else {
            None
        }
    }
}

/// Result of the exact second-term criterion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ExactSecondTerm {
    Exact(SecondTerm),
    AtLeast3,
}

/// The two elements `g` with `g z_m g^{-1} = x_m`.
fn normalizers(c: &ConjGen) -> [Word; 2] {
    let inv = c.conj.inverse();
    [inv.clone(), Word::generator(c.core).multiply(&inv)]
}

fn conj_words(labels: &[ConjGen], g: &Word) -> Vec<ConjGen> {
    labels.iter().map(|c| c.conjugated_by(g)).collect()
}

fn shape_matches(c: &ConjGen, j: u8, k: u8) -> bool {
    let shapes: [&[u8]; 5] = [&[], &[j], &[k], &[k, j, k], &[k, j]];
    shapes.iter().any(|s| ConjGen::new(c.core, &Word::reduce(s.iter().copied())).conj == c.conj)
}

/// Second term complexity of the {0}-star `z` relative to the base `x`,
/// computed by matching every label against the five two-twistor shapes
/// over all normalizations that make one label bare.
pub fn second_term_complexity(x: &MarkedGraph, z: &MarkedGraph) -> Result<SecondTerm, SpineError> {
    let labels = labels_in_frame(x, z)?;
    let mut found: BTreeSet<(usize, BTreeSet<u8>)> = BTreeSet::new();
    for c in &labels {
        for g in normalizers(c) {
            let cs = conj_words(&labels, &g);
            let letters: BTreeSet<u8> = cs.iter().flat_map(|c| c.conj.letters().iter().copied()).collect();
            let ok = match letters.len() {
                0 | 1 => true,
                2 => {
                    let v: Vec<u8> = letters.iter().copied().collect();
                    [(v[0], v[1]), (v[1], v[0])].iter().any(|&(j, k)| cs.iter().all(|c| shape_matches(c, j, k)))
                }
                _ => false,
            };
            if ok {
                found.insert((letters.len(), letters));
            }
        }
    }
    let ell = found.iter().map(|(l, _)| *l).min().ok_or(SpineError::NoShapeMatch)?;
    let sets = found.into_iter().filter(|(l, _)| *l == ell).map(|(_, s)| s).collect();
    Ok(SecondTerm { ell, sets })
}

/// Exact second term complexity for values up to two: a twistor set `A`
/// realizes the labels iff some global conjugation makes the labels with
/// cores in `A` bare while every conjugator uses only letters from `A`.
pub fn second_term_exact(x: &MarkedGraph, z: &MarkedGraph) -> Result<ExactSecondTerm, SpineError> {
    let labels = labels_in_frame(x, z)?;
    let n = labels.len() as u8;
    let realizable = |a: &BTreeSet<u8>| -> bool {
        let anchor = a.iter().next().map(|&m| m as usize - 1).unwrap_or(0);
        normalizers(&labels[anchor]).iter().any(|g| {
            let cs = conj_words(&labels, g);
            cs.iter().all(|c| {
                c.conj.letters().iter().all(|l| a.contains(l)) && (!a.contains(&c.core) || c.conj.is_empty())
            })
        })
    };
    if realizable(&BTreeSet::new()) {
        return Ok(ExactSecondTerm::Exact(SecondTerm { ell: 0, sets: vec![BTreeSet::new()] }));
    }
    let singles: Vec<BTreeSet<u8>> = (1..=n).map(|a| BTreeSet::from([a])).filter(|s| realizable(s)).collect();
    if !singles.is_empty() {
        return Ok(ExactSecondTerm::Exact(SecondTerm { ell: 1, sets: singles }));
    }
    let mut pairs = Vec::new();
    for j in 1..=n {
        for k in j + 1..=n {
            let s = BTreeSet::from([j, k]);
            if realizable(&s) {
                pairs.push(s);
            }
        }
    }
    if !pairs.is_empty() {
        return Ok(ExactSecondTerm::Exact(SecondTerm { ell: 2, sets: pairs }));
    }
    Ok(ExactSecondTerm::AtLeast3)
}

/// Number of injective edge paths of length `1..=max_len` from `from` to
/// `to` in the ball with its centre removed. Paths end on reaching `to`.
pub fn count_arcs(ball: &Ball, from: usize, to: usize, max_len: usize) -> Result<u64, SpineError> {
    let m = ball.len();
    if from >= m || to >= m {
        return Err(SpineError::NotInBall);
    }
    if from == 0 || to == 0 || from == to {
        return Ok(0);
    }
    let mut visited = vec![false; m];
    visited[0] = true;
    fn dfs(ball: &Ball, v: usize, to: usize, left: usize, visited: &mut [bool]) -> u64 {
        if v == to {
            return 1;
        }
        if left == 0 {
            return 0;
        }
        visited[v] = true;
        let mut total = 0;
        for &w in &ball.adj[v] {
            if !visited[w] {
                total += dfs(ball, w, to, left - 1, visited);
            }
        }
        visited[v] = false;
        total
    }
    Ok(dfs(ball, from, to, max_len, &mut visited))
}

/// Predicted number of arcs of length at most five from `X'` to `Y_j`:
/// `2^{n-k-2}-1` when `j` lies outside the chosen realizing set and
/// `2^{k-1}-1` when it lies inside.
pub fn predicted_arc_count(n: usize, first: &FirstTerm, j: u8) -> u64 {
    let outside = first.sets.iter().any(|s| !s.contains(&j));
    let exp = if outside { n as i64 - first.k as i64 - 2 } else { first.k as i64 - 1 };
    if exp < 0 {
        0
    } else {
        (1u64 << exp) - 1
    }
}

/// Whether a path of length at most four joins `X'` to `Z`, decided from
/// complexities. `Z` must be adjacent to `Y_j` with first term complexity
/// one realized by `{t}`, and `j` must lie outside a realizing set of `X'`.
pub fn arc_existence(
    x: &MarkedGraph,
    i: u8,
    xp: &MarkedGraph,
    j: u8,
    z: &MarkedGraph,
    t: u8,
) -> Result<bool, SpineError> {
    let fz = first_term_complexity(x, j, z)?;
    if fz.k != 1 || !fz.sets.iter().any(|s| s.len() == 1 && s.contains(&t)) {
        return Err(SpineError::Precondition(format!("Z is not realized by {{{t}}} relative to Y_{j}")));
    }
    let fx = first_term_complexity(x, i, xp)?;
    let set = fx
        .sets
        .iter()
        .find(|s| !s.contains(&j))
        .ok_or_else(|| SpineError::Precondition(format!("label {j} of X' is conjugated")))?;
    Ok(!set.contains(&t))
}

/// Whether an arc of length at most `max_len` joins `from` to `to` in the
/// ball with its centre removed.
pub fn arc_exists_in_ball(ball: &Ball, from: usize, to: usize, max_len: usize) -> Result<bool, SpineError> {
    Ok(count_arcs(ball, from, to, max_len)? > 0)
}

/// Neighbours in L_n at distance exactly two from a {0}-star, excluding it.
pub fn zero_stars_at_distance_two(v: &SpineVertex) -> Result<Vec<SpineVertex>, SpineError> {
    let mut out = BTreeSet::new();
    for y in ln_neighbors(v)? {
        for z in ln_neighbors(&y)? {
            if z != *v {
                out.insert(z);
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// One configuration examined by the three-twistor shadow.
#[derive(Clone, Debug, Serialize)]
pub struct ThreeTwistorCase {
    pub i: u8,
    pub k: u8,
    pub l: u8,
    pub x2: usize,
    pub ell: Option<usize>,
    pub violation: bool,
}

/// Builds configurations `(X', X2, X3)`: `X' != X` adjacent to `Y_i`, `X2` at
/// distance two from `X'` with second term complexity two realized by
/// `{i,k}`, and `X3` at distance two from `X2`. For every `l` outside
/// `{i,k}` such that all realizing sets of `X3` contain `l`, a case is
/// recorded; it is a violation when `X3` nevertheless has second term
/// complexity at most two. Vertices with complexity at least three satisfy
/// the hypothesis vacuously and are recorded as passing cases.
pub fn three_twistor_cases(n: usize, limit_per_i: Option<usize>) -> Result<Vec<ThreeTwistorCase>, SpineError> {
    let base = SpineVertex::standard(n);
    let x = &base.graph;
    let mut cases = Vec::new();
    let mut x2_seen = 0usize;
    for i in 1..=n as u8 {
        let yi = SpineVertex::new(&y_star(x, i)?);
        let mut taken = 0usize;
        'outer: for xp in ln_neighbors(&yi)? {
            if xp == base {
                continue;
            }
            for x2 in zero_stars_at_distance_two(&xp)? {
                let ExactSecondTerm::Exact(st2) = second_term_exact(x, &x2.graph)? else { continue };
                if st2.ell != 2 {
                    continue;
                }
                let ks: Vec<u8> =
                    (1..=n as u8).filter(|&k| k != i && st2.sets.contains(&BTreeSet::from([i, k]))).collect();
                if ks.is_empty() {
                    continue;
                }
                let x3s = zero_stars_at_distance_two(&x2)?;
                let exacts: Vec<ExactSecondTerm> =
                    x3s.iter().map(|x3| second_term_exact(x, &x3.graph)).collect::<Result<_, _>>()?;
                for &k in &ks {
                    for l in (1..=n as u8).filter(|&l| l != i && l != k) {
                        for ex in &exacts {
                            match ex {
                                ExactSecondTerm::Exact(st) => {
                                    if st.sets.iter().all(|s| s.contains(&l)) {
                                        cases.push(ThreeTwistorCase { i, k, l, x2: x2_seen, ell: Some(st.ell), violation: true });
                                    }
                                }
                                ExactSecondTerm::AtLeast3 => {
                                    cases.push(ThreeTwistorCase { i, k, l, x2: x2_seen, ell: None, violation: false });
                                }
                            }
                        }
                    }
                }
                x2_seen += 1;
                taken += 1;
                if limit_per_i.is_some_and(|lim| taken >= lim) {
                    break 'outer;
                }
            }
        }
    }
    Ok(cases)
}
