//! Positive and negative links of spine vertices, join decompositions and
//! link-based classification.

use crate::budget::{Budget, BudgetError};
use crate::marked_graph::{GraphError, MarkedGraph};
use crate::partition::SplittingKey;
use crate::spine::{Kind, SpineVertex};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;
use thiserror::Error;

/// Errors from link computations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinkError {
    /// Marked-graph level failure.
    #[error(transparent)]
    Graph(#[from] GraphError),
    /// A resource cap was reached.
    #[error(transparent)]
    Budget(#[from] BudgetError),
}

/// Side of a link vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Polarity {
    Plus,
    Minus,
}

/// A finite simple graph on `0..vertex_count`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AbstractGraph {
    adj: Vec<BTreeSet<usize>>,
}

impl AbstractGraph {
    pub fn new(vertex_count: usize) -> Self {
        AbstractGraph { adj: vec![BTreeSet::new(); vertex_count] }
    }

    pub fn from_edges(vertex_count: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = AbstractGraph::new(vertex_count);
        for &(a, b) in edges {
            g.add_edge(a, b);
        }
        g
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        if a != b {
            self.adj[a].insert(b);
            self.adj[b].insert(a);
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].contains(&b)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().copied()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (a, s) in self.adj.iter().enumerate() {
            out.extend(s.iter().filter(|&&b| a < b).map(|&b| (a, b)));
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|s| s.len()).sum::<usize>() / 2
    }

    /// Connected components of the complement graph, each sorted, ordered by
    /// smallest member.
    pub fn complement_components(&self) -> Vec<Vec<usize>> {
        let m = self.vertex_count();
        let mut unvisited: BTreeSet<usize> = (0..m).collect();
        let mut comps = Vec::new();
        while let Some(&s) = unvisited.iter().next() {
            unvisited.remove(&s);
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                let next: Vec<usize> = unvisited.iter().copied().filter(|w| !self.adj[v].contains(w)).collect();
                for w in next {
                    unvisited.remove(&w);
                    comp.push(w);
                    queue.push_back(w);
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }
}

/// All nontrivial join bipartitions `(A, B)` of `g`, with `A` holding vertex 0.
/// A bipartition is a join iff it is a union split of the complement
/// components, so there are `2^{c-1} - 1` of them for `c` components.
pub fn join_decompositions(g: &AbstractGraph) -> Vec<(Vec<usize>, Vec<usize>)> {
    let comps = g.complement_components();
    let c = comps.len();
    if c < 2 {
        return Vec::new();
    }
    assert!(c <= 30, "too many complement components to enumerate join decompositions");
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << (c - 1)) {
        let mut a: Vec<usize> = comps[0].clone();
        let mut b: Vec<usize> = Vec::new();
        for (k, comp) in comps.iter().enumerate().skip(1) {
            if mask >> (k - 1) & 1 == 1 {
                b.extend(comp);
            } else {
                a.extend(comp);
            }
        }
        if !b.is_empty() {
            a.sort_unstable();
            b.sort_unstable();
            out.push((a, b));
        }
    }
    out
}

/// All distinct canonical collapses of `x` over nonempty legal forests.
pub fn negative_link(x: &MarkedGraph) -> Vec<SpineVertex> {
    let set: BTreeSet<MarkedGraph> =
        x.legal_forests().iter().map(|f| x.collapse(f).expect("legal forest").canonicalize()).collect();
    set.into_iter().map(SpineVertex::from_canonical).collect()
}

/// All one-edge blow-ups of `x` at every vertex, canonical and deduplicated.
pub fn positive_link_depth1(x: &MarkedGraph) -> Vec<SpineVertex> {
    let set: BTreeSet<MarkedGraph> = (0..x.vertex_count())
        .flat_map(|v| x.one_edge_blowups(v).expect("vertex in range"))
        .collect();
    set.into_iter().map(SpineVertex::from_canonical).collect()
}

/// Closure of one-edge blow-ups up to `depth` iterations. Refinements of a
/// marked graph have at most `2n-2` vertices, so the closure stabilises and
/// large depths give the whole positive link.
pub fn positive_link_bounded(x: &MarkedGraph, depth: usize, budget: &Budget) -> Result<Vec<SpineVertex>, LinkError> {
    let mut seen: BTreeSet<MarkedGraph> = BTreeSet::new();
    let mut frontier: Vec<MarkedGraph> = vec![x.canonicalize()];
    for _ in 0..depth {
        let lists: Vec<Vec<MarkedGraph>> = frontier
            .par_iter()
            .map(|g| (0..g.vertex_count()).flat_map(|v| g.one_edge_blowups(v).expect("vertex in range")).collect())
            .collect();
        let mut next = Vec::new();
        for g in lists.into_iter().flatten() {
            if seen.insert(g.clone()) {
                next.push(g);
                budget.check_vertices(seen.len())?;
            }
        }
        budget.check_time()?;
        if next.is_empty() {
            break;
        }
        next.sort();
        frontier = next;
    }
    Ok(seen.into_iter().map(SpineVertex::from_canonical).collect())
}

/// The whole positive link.
pub fn positive_link(x: &MarkedGraph, budget: &Budget) -> Result<Vec<SpineVertex>, LinkError> {
    positive_link_bounded(x, usize::MAX, budget)
}

/// Whether `y` has a collapse equivalent to `z`, decided by edge keys.
pub fn collapses_onto(y_key: &SplittingKey, z_key: &SplittingKey) -> bool {
    z_key.edge_count() < y_key.edge_count() && z_key.is_subset_of(y_key)
}

/// The link of a spine vertex with polarity tags and induced adjacency.
#[derive(Clone, Debug)]
pub struct LinkGraph {
    pub base: MarkedGraph,
    pub vertices: Vec<SpineVertex>,
    pub polarity: Vec<Polarity>,
    pub graph: AbstractGraph,
}

impl LinkGraph {
    pub fn side(&self, p: Polarity) -> Vec<usize> {
        (0..self.vertices.len()).filter(|&v| self.polarity[v] == p).collect()
    }

    pub fn plus_count(&self) -> usize {
        self.side(Polarity::Plus).len()
    }

    pub fn minus_count(&self) -> usize {
        self.side(Polarity::Minus).len()
    }

    /// Whether the subgraph induced by one side has no edges.
    pub fn side_has_no_edges(&self, p: Polarity) -> bool {
        let s = self.side(p);
        s.iter().all(|&a| s.iter().all(|&b| !self.graph.has_edge(a, b)))
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let vertices: Vec<serde_json::Value> = self
            .vertices
            .iter()
            .zip(&self.polarity)
            .map(|(v, p)| serde_json::json!({ "polarity": p, "kind": v.kind, "graph": v.graph.to_json_value() }))
            .collect();
        let edges: Vec<[usize; 2]> = self.graph.edges().into_iter().map(|(a, b)| [a, b]).collect();
        serde_json::json!({ "base": self.base.to_json_value(), "vertices": vertices, "edges": edges })
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph link {\n");
        for (i, p) in self.polarity.iter().enumerate() {
            let colour = match p {
                Polarity::Plus => "red",
                Polarity::Minus => "blue",
            };
            let _ = writeln!(s, "  l{i} [color={colour}, label=\"{i}\"];");
        }
        for (a, b) in self.graph.edges() {
            let _ = writeln!(s, "  l{a} -- l{b};");
        }
        s.push_str("}\n");
        s
    }
}

/// Full link of `x`: positive side, negative side, adjacency inside each side
/// by collapse relations, and every cross pair adjacent.
pub fn link_graph(x: &MarkedGraph, budget: &Budget) -> Result<LinkGraph, LinkError> {
    let plus = positive_link(x, budget)?;
    let minus = negative_link(x);
    let mut vertices = plus;
    let plus_len = vertices.len();
    vertices.extend(minus);
    let mut polarity = vec![Polarity::Plus; plus_len];
    polarity.resize(vertices.len(), Polarity::Minus);
    let keys: Vec<SplittingKey> = vertices.par_iter().map(|v| v.graph.splitting_key()).collect();
    let m = vertices.len();
    let mut graph = AbstractGraph::new(m);
    for a in 0..m {
        for b in a + 1..m {
            let adjacent = polarity[a] != polarity[b]
                || collapses_onto(&keys[a], &keys[b])
                || collapses_onto(&keys[b], &keys[a]);
            if adjacent {
                graph.add_edge(a, b);
            }
        }
    }
    Ok(LinkGraph { base: x.canonicalize(), vertices, polarity, graph })
}

fn no_edge_among(vs: &[SpineVertex]) -> bool {
    let keys: Vec<SplittingKey> = vs.iter().map(|v| v.graph.splitting_key()).collect();
    (0..keys.len()).all(|a| (0..keys.len()).all(|b| a == b || !collapses_onto(&keys[a], &keys[b])))
}

fn negative_link_marks_zero_star(x: &MarkedGraph) -> bool {
    let minus = negative_link(x);
    minus.len() == x.rank() && no_edge_among(&minus)
}

/// Classification from link data alone: a {0}-star has exactly `n` negative
/// link vertices and no edges among them; an F-star has an empty negative
/// link and a {0}-star among its one-edge blow-ups.
pub fn classify(x: &MarkedGraph) -> Kind {
    if negative_link_marks_zero_star(x) {
        return Kind::ZeroStar;
    }
    if negative_link(x).is_empty() && positive_link_depth1(x).iter().any(|v| negative_link_marks_zero_star(&v.graph)) {
        return Kind::FStar;
    }
    Kind::Other
}

/// Neighbours of `x` in the spine K_n: every collapse and every refinement.
pub fn kn_neighbors(x: &MarkedGraph, budget: &Budget) -> Result<Vec<SpineVertex>, LinkError> {
    let mut out: BTreeSet<SpineVertex> = negative_link(x).into_iter().collect();
    out.extend(positive_link(x, budget)?);
    Ok(out.into_iter().collect())
}

/// Canonical vertices of K_n within distance `radius` of `center`, in BFS
/// order with their distances. Layers are sorted, so the order does not
/// depend on the thread count.
pub fn kn_ball(center: &MarkedGraph, radius: usize, budget: &Budget) -> Result<Vec<(MarkedGraph, usize)>, LinkError> {
    let start = center.canonicalize();
    let mut seen: BTreeSet<MarkedGraph> = BTreeSet::from([start.clone()]);
    let mut out = vec![(start.clone(), 0)];
    let mut frontier = vec![start];
    for d in 1..=radius {
        let lists: Vec<Vec<SpineVertex>> =
            frontier.par_iter().map(|g| kn_neighbors(g, budget)).collect::<Result<_, _>>()?;
        let mut next: Vec<MarkedGraph> = Vec::new();
        for v in lists.into_iter().flatten() {
            if seen.insert(v.graph.clone()) {
                next.push(v.graph);
                budget.check_vertices(seen.len())?;
            }
        }
        budget.check_time()?;
        next.sort();
        out.extend(next.iter().map(|g| (g.clone(), d)));
        frontier = next;
    }
    Ok(out)
}
