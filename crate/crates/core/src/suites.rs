//! Verification suites. Each suite runs exhaustively (or on a seeded sample
//! where noted) at a fixed rank and returns a [`SuiteReport`] whose
//! deterministic part is identical for every thread count.

use crate::budget::{Budget, BudgetError};
use crate::links::{self, LinkError, Polarity};
use crate::marked_graph::{GraphError, MarkedGraph};
use crate::rigidity;
use crate::spine::{self, Ball, ExactSecondTerm, Kind, SpineError, SpineVertex};
use crate::splittings::{self, FreeSplitting, SplittingError};
use crate::word::Automorphism;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use std::collections::BTreeSet;
use std::time::Instant;
use thiserror::Error;

/// Names accepted by [`run_suite`].
pub const SUITES: &[&str] = &[
    "degree-law",
    "lemma-3-2",
    "lemma-3-4",
    "lemma-3-3",
    "prop-3-5",
    "lemma-4-2",
    "lemma-4-3",
    "lemma-4-4",
    "prop-4-6",
    "scott-swarup",
    "lemma-5-4",
];

/// At most this many counterexamples are stored per report.
pub const MAX_STORED_COUNTEREXAMPLES: usize = 50;

/// Errors that stop a suite before it produces a report.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SuiteError {
    /// The suite name is not one of [`SUITES`].
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    /// The suite does not support this rank.
    #[error("suite `{suite}` does not support n = {n}")]
    UnsupportedRank { suite: String, n: usize },
    /// The thread pool could not be created.
    #[error("thread pool: {0}")]
    ThreadPool(String),
    /// A resource cap was reached.
    #[error(transparent)]
    Budget(#[from] BudgetError),
    /// Spine failure.
    #[error(transparent)]
    Spine(SpineError),
    /// Link failure.
    #[error(transparent)]
    Link(LinkError),
    /// Splitting failure.
    #[error(transparent)]
    Splitting(SplittingError),
    /// Marked-graph failure.
    #[error(transparent)]
    Graph(GraphError),
}

impl From<SpineError> for SuiteError {
    fn from(e: SpineError) -> Self {
        match e {
            SpineError::Budget(b) => SuiteError::Budget(b),
            e => SuiteError::Spine(e),
        }
    }
}

impl From<LinkError> for SuiteError {
    fn from(e: LinkError) -> Self {
        match e {
            LinkError::Budget(b) => SuiteError::Budget(b),
            e => SuiteError::Link(e),
        }
    }
}

impl From<SplittingError> for SuiteError {
    fn from(e: SplittingError) -> Self {
        match e {
            SplittingError::Budget(b) => SuiteError::Budget(b),
            e => SuiteError::Splitting(e),
        }
    }
}

impl From<GraphError> for SuiteError {
    fn from(e: GraphError) -> Self {
        SuiteError::Graph(e)
    }
}

/// Parameters shared by all suites.
#[derive(Clone, Debug)]
pub struct SuiteOptions {
    /// Seed for sampling suites.
    pub seed: u64,
    /// Number of samples for sampling suites.
    pub samples: usize,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
    pub budget: Budget,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { seed: 0, samples: 1000, threads: None, budget: Budget::default() }
    }
}

/// Outcome of one suite.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub n: usize,
    pub run: u64,
    pub passed: u64,
    pub counterexamples: Vec<Value>,
    pub wall_time_ms: u128,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.run == self.passed
    }

    /// The report without wall time.
    pub fn deterministic_json(&self) -> Value {
        json!({
            "suite": self.suite,
            "n": self.n,
            "run": self.run,
            "passed": self.passed,
            "counterexamples": self.counterexamples,
        })
    }

    pub fn to_json_value(&self) -> Value {
        serde_json::to_value(self).expect("serializable")
    }
}

/// Accumulates checks in a deterministic order.
struct Tally {
    run: u64,
    passed: u64,
    counterexamples: Vec<Value>,
}

impl Tally {
    fn new() -> Self {
        Tally { run: 0, passed: 0, counterexamples: Vec::new() }
    }

    fn check(&mut self, ok: bool, witness: impl FnOnce() -> Value) {
        self.run += 1;
        if ok {
            self.passed += 1;
        } else if self.counterexamples.len() < MAX_STORED_COUNTEREXAMPLES {
            self.counterexamples.push(witness());
        }
    }

    fn absorb(&mut self, other: Tally) {
        self.run += other.run;
        self.passed += other.passed;
        for c in other.counterexamples {
            if self.counterexamples.len() < MAX_STORED_COUNTEREXAMPLES {
                self.counterexamples.push(c);
            }
        }
    }
}

/// Runs a suite, inside a dedicated pool when `opts.threads` is set.
pub fn run_suite(name: &str, n: usize, opts: &SuiteOptions) -> Result<SuiteReport, SuiteError> {
    if !SUITES.contains(&name) {
        return Err(SuiteError::UnknownSuite(name.to_string()));
    }
    let supported = match name {
        "degree-law" => (4..=6).contains(&n),
        _ => (4..=5).contains(&n),
    };
    if !supported {
        return Err(SuiteError::UnsupportedRank { suite: name.to_string(), n });
    }
    let started = Instant::now();
    let body = || -> Result<Tally, SuiteError> {
        match name {
            "degree-law" => degree_law(n, opts),
            "lemma-3-2" => lemma_3_2(n, opts),
            "lemma-3-4" => lemma_3_4(n, opts),
            "lemma-3-3" => lemma_3_3(n),
            "prop-3-5" => prop_3_5(n, opts),
            "lemma-4-2" => lemma_4_2(n, opts),
            "lemma-4-3" => lemma_4_3(n, opts),
            "lemma-4-4" => lemma_4_4(n, opts),
            "prop-4-6" => prop_4_6(n, opts),
            "scott-swarup" => scott_swarup(n),
            "lemma-5-4" => lemma_5_4(n),
            _ => unreachable!("checked above"),
        }
    };
    let tally = match opts.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t.max(1))
            .build()
            .map_err(|e| SuiteError::ThreadPool(e.to_string()))?
            .install(body)?,
        None => body()?,
    };
    Ok(SuiteReport {
        suite: name.to_string(),
        n,
        run: tally.run,
        passed: tally.passed,
        counterexamples: tally.counterexamples,
        wall_time_ms: started.elapsed().as_millis(),
    })
}

fn expected_degree(n: usize, kind: Kind) -> Option<usize> {
    match kind {
        Kind::ZeroStar => Some(n),
        Kind::FStar => Some(1 << (n - 2)),
        Kind::Other => None,
    }
}

/// Degree and bipartiteness of one vertex, plus symmetry of its adjacency.
fn degree_checks(v: &SpineVertex) -> Result<Tally, SuiteError> {
    let mut t = Tally::new();
    let n = v.rank();
    let nbrs = spine::ln_neighbors(v)?;
    let want = expected_degree(n, v.kind);
    t.check(want == Some(nbrs.len()), || {
        json!({"check": "degree", "kind": v.kind, "degree": nbrs.len(), "expected": want, "vertex": v.graph.to_json_value()})
    });
    let other = if v.kind == Kind::ZeroStar { Kind::FStar } else { Kind::ZeroStar };
    for w in &nbrs {
        t.check(w.kind == other, || json!({"check": "bipartite", "vertex": v.graph.to_json_value()}));
        let back = spine::ln_neighbors(w)?;
        t.check(back.contains(v), || {
            json!({"check": "symmetric", "vertex": v.graph.to_json_value(), "neighbor": w.graph.to_json_value()})
        });
    }
    Ok(t)
}

fn merge(parts: Vec<Result<Tally, SuiteError>>) -> Result<Tally, SuiteError> {
    let mut total = Tally::new();
    for p in parts {
        total.absorb(p?);
    }
    Ok(total)
}

fn base_ball(n: usize, opts: &SuiteOptions) -> Result<Ball, SuiteError> {
    Ok(spine::ball(&SpineVertex::standard(n), 4, &opts.budget)?)
}

/// Degrees in `B(X,4)` for n = 4, 5; seeded random walks of length at most
/// four from `X` for n = 6.
fn degree_law(n: usize, opts: &SuiteOptions) -> Result<Tally, SuiteError> {
    let vertices: Vec<SpineVertex> = if n <= 5 {
        base_ball(n, opts)?.vertices
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let start = SpineVertex::standard(n);
        let mut picked = BTreeSet::new();
        for _ in 0..opts.samples {
            let steps = rng.gen_range(0..=4);
            let mut v = start.clone();
            for _ in 0..steps {
                let nbrs = spine::ln_neighbors(&v)?;
                v = nbrs[rng.gen_range(0..nbrs.len())].clone();
            }
            picked.insert(v);
            opts.budget.check_time()?;
        }
        picked.into_iter().collect()
    };
    merge(vertices.par_iter().map(degree_checks).collect())
}

fn y_indices(ball: &Ball) -> Result<Vec<usize>, SuiteError> {
    let x = &ball.center.graph;
    (1..=x.rank() as u8)
        .map(|i| {
            let y = spine::y_star(x, i)?;
            ball.index_of(&y).ok_or(SuiteError::Spine(SpineError::NotInBall))
        })
        .collect()
}

fn sets_json(sets: &[BTreeSet<u8>]) -> Value {
    json!(sets.iter().map(|s| s.iter().copied().collect::<Vec<u8>>()).collect::<Vec<_>>())
}

/// Second term complexity over every {0}-star of `B(X,4)`, by the exact
/// criterion and by shape matching.
fn lemma_3_2(n: usize, opts: &SuiteOptions) -> Result<Tally, SuiteError> {
    let ball = base_ball(n, opts)?;
    let ys = y_indices(&ball)?;
    let x = &ball.center.graph;
    let zs: Vec<usize> = (0..ball.len()).filter(|&v| ball.vertices[v].kind == Kind::ZeroStar).collect();
    let parts = zs
        .par_iter()
        .map(|&z| -> Result<Tally, SuiteError> {
            let mut t = Tally::new();
            let zg = &ball.vertices[z].graph;
            let exact = spine::second_term_exact(x, zg)?;
            let witness = |what: &str| json!({"check": what, "z": zg.to_json_value(), "exact": exact});
            let st = match &exact {
                ExactSecondTerm::Exact(st) => Some(st.clone()),
                ExactSecondTerm::AtLeast3 => None,
            };
            t.check(st.as_ref().is_some_and(|s| s.ell <= 2 && s.sets.len() == 1), || witness("ell-at-most-two-unique"));
            let shapes = spine::second_term_complexity(x, zg).ok();
            t.check(shapes == st, || witness("shape-route-agrees"));
            if z != 0 {
                for (i, &y) in ys.iter().enumerate() {
                    if ball.adj[z].binary_search(&y).is_ok() {
                        let want = BTreeSet::from([i as u8 + 1]);
                        t.check(st.as_ref().is_some_and(|s| s.ell == 1 && s.sets == [want.clone()]), || {
                            witness("adjacent-to-y-has-single-twistor")
                        });
                    }
                }
            }
            Ok(t)
        })
        .collect();
    merge(parts)
}

/// Arc counts from `X'` to `Y_j` and the existence dichotomy for `Z`
/// adjacent to `Y_j` with first term complexity one.
fn lemma_3_4(n: usize, opts: &SuiteOptions) -> Result<Tally, SuiteError> {
    let ball = base_ball(n, opts)?;
    let ys = y_indices(&ball)?;
    let x = ball.center.graph.clone();
    let mut jobs = Vec::new();
    for i in 1..=n as u8 {
        for &xp in &ball.adj[ys[i as usize - 1]] {
            if xp != 0 {
                jobs.push((i, xp));
            }
        }
    }
    let parts = jobs
        .par_iter()
        .map(|&(i, xp)| -> Result<Tally, SuiteError> {
            let mut t = Tally::new();
            let xpg = &ball.vertices[xp].graph;
            let first = spine::first_term_complexity(&x, i, xpg)?;
            for j in (1..=n as u8).filter(|&j| j != i) {
                let yj = ys[j as usize - 1];
                let count = spine::count_arcs(&ball, xp, yj, 5)?;
                let predicted = spine::predicted_arc_count(n, &first, j);
                t.check(count == predicted, || {
                    json!({"check": "arc-count", "i": i, "j": j, "k": first.k, "sets": sets_json(&first.sets),
                           "count": count, "predicted": predicted, "x_prime": xpg.to_json_value()})
                });
                if !first.sets.iter().any(|s| !s.contains(&j)) {
                    continue;
                }
                for &z in &ball.adj[yj] {
                    if z == 0 || z == xp {
                        continue;
                    }
                    let zg = &ball.vertices[z].graph;
                    let fz = spine::first_term_complexity(&x, j, zg)?;
                    if fz.k != 1 {
                        continue;
                    }
                    let Some(&t_idx) = fz.sets.iter().find(|s| s.len() == 1).and_then(|s| s.iter().next()) else {
                        continue;
                    };
                    let predicted = spine::arc_existence(&x, i, xpg, j, zg, t_idx)?;
                    let actual = spine::arc_exists_in_ball(&ball, xp, z, 4)?;
                    t.check(predicted == actual, || {
                        json!({"check": "arc-existence", "i": i, "j": j, "t": t_idx, "t_equals_i": t_idx == i, "predicted": predicted,
                               "actual": actual, "x_prime": xpg.to_json_value(), "z": zg.to_json_value()})
                    });
                }
            }
            Ok(t)
        })
        .collect();
    merge(parts)
}

/// Configurations with a third twistor forced: the exact minimizer must
/// report complexity at least three.
fn lemma_3_3(n: usize) -> Result<Tally, SuiteError> {
    let cases = spine::three_twistor_cases(n, None)?;
    let mut t = Tally::new();
    t.check(!cases.is_empty(), || json!({"check": "configurations-found", "count": 0}));
    for c in &cases {
        t.check(!c.violation, || json!({"check": "third-twistor", "case": c}));
    }
    Ok(t)
}

/// Star-fixing automorphisms of `B(X,4)` fix `B(X,2)`, and every partial
/// conjugation embeds `B(X,2)` into `B(X,4)`.
fn prop_3_5(n: usize, opts: &SuiteOptions) -> Result<Tally, SuiteError> {
    let ball = base_ball(n, opts)?;
    let report = rigidity::rigidity_shadow(&ball, 2, &opts.budget)?;
    let mut t = Tally::new();
    let moved: BTreeSet<usize> = report.counterexamples.iter().map(|&(v, _)| v).collect();
    for v in ball.within(2) {
        t.check(!moved.contains(&v), || {
            let targets: Vec<usize> = report.counterexamples.iter().filter(|p| p.0 == v).map(|p| p.1).collect();
            json!({"check": "fixed", "vertex": v, "moved_to": targets})
        });
    }
    let autos = rigidity::star_fixing_automorphisms(&ball, 2, &opts.budget)?;
    t.check(autos.first().is_some_and(|a| a.iter().enumerate().all(|(i, &j)| i == j)), || {
        json!({"check": "identity-found-first"})
    });
    for i in 1..=n as u8 {
        for j in (1..=n as u8).filter(|&j| j != i) {
            let f = Automorphism::sigma(n, j as usize, i as usize).map_err(|e| SuiteError::Graph(GraphError::Word(e)))?;
            let ok = rigidity::embeds_under(&ball, &f, 2)?;
            t.check(ok, || json!({"check": "sigma-embedding", "j": j, "i": i}));
        }
    }
    Ok(t)
}

struct KnData {
    graph: MarkedGraph,
    plus: Vec<SpineVertex>,
    plus1: usize,
    minus: Vec<SpineVertex>,
}

fn kn_data(n: usize, opts: &SuiteOptions) -> Result<Vec<KnData>, SuiteError> {
    let x = MarkedGraph::standard_zero_star(n);
    let ball = links::kn_ball(&x, 2, &opts.budget)?;
    ball.par_iter()
        .map(|(g, _)| -> Result<KnData, SuiteError> {
            Ok(KnData {
                graph: g.clone(),
                plus: links::positive_link(g, &opts.budget)?,
                plus1: links::positive_link_depth1(g).len(),
                minus: links::negative_link(g),
            })
        })
        .collect()
}

fn no_edge_among(vs: &[SpineVertex]) -> bool {
    let keys: Vec<_> = vs.iter().map(|v| v.graph.splitting_key()).collect();
    (0..keys.len()).all(|a| (0..keys.len()).all(|b| a == b || !links::collapses_onto(&keys[a], &keys[b])))
}

/// Positive links without edges have two or three vertices, three exactly
/// when the graph has `n` leaves; one-edge blow-ups give at least two.
fn lemma_4_2(n: usize, opts: &SuiteOptions) -> Result<Tally, SuiteError> {
    let data = kn_data(n, opts)?;
    let mut t = Tally::new();
    for d in data.iter().filter(|d| !d.plus.is_empty()) {
        let witness = |what: &str| {
            json!({"check": what, "graph": d.graph.to_json_value(), "plus": d.plus.len(), "plus1": d.plus1,
                   "leaves": d.graph.leaf_count()})
        };
        t.check(d.plus1 >= 2, || witness("one-edge-blowups-at-least-two"));
        if no_edge_among(&d.plus) {
            let size = d.plus.len();
            t.check((2..=3).contains(&size), || witness("size-two-or-three"));
            t.check((size == 3) == (d.graph.leaf_count() == n), || witness("three-iff-n-leaves"));
        }
    }
    Ok(t)
}

/// Negative links without edges come from graphs with one unlabelled
/// vertex, have between three and `n` vertices, and `n` exactly at {0}-stars.
fn lemma_4_3(n: usize, opts: &SuiteOptions) -> Result<Tally, SuiteError> {
    let data = kn_data(n, opts)?;
    let mut t = Tally::new();
    for d in data.iter().filter(|d| !d.minus.is_empty() && no_edge_among(&d.minus)) {
        let size = d.minus.len();
        let witness =
            |what: &str| json!({"check": what, "graph": d.graph.to_json_value(), "minus": size});
        t.check(d.graph.unlabeled_vertices().len() == 1, || witness("unique-unlabelled-vertex"));
        t.check((3..=n).contains(&size), || witness("size-between-three-and-n"));
        t.check((size == n) == (Kind::of(&d.graph) == Kind::ZeroStar), || witness("n-iff-zero-star"));
    }
    Ok(t)
}

/// Edge partitions are pairwise distinct on every enumerated graph, and the
/// canonical lift of a random forest in a random collapse is its natural
/// preimage.
fn lemma_4_4(n: usize, opts: &SuiteOptions) -> Result<Tally, SuiteError> {
    let x = MarkedGraph::standard_zero_star(n);
    let radius = if n == 4 { 2 } else { 1 };
    let mut graphs: BTreeSet<MarkedGraph> =
        links::kn_ball(&x, radius, &opts.budget)?.into_iter().map(|(g, _)| g).collect();
    graphs.extend(spine::ball(&SpineVertex::standard(n), 2, &opts.budget)?.vertices.into_iter().map(|v| v.graph));
    let graphs: Vec<MarkedGraph> = graphs.into_iter().collect();
    let mut t = merge(
        graphs
            .par_iter()
            .map(|g| {
                let mut t = Tally::new();
                let keys: BTreeSet<_> = (0..g.edge_count()).map(|e| g.edge_key(e)).collect();
                t.check(keys.len() == g.edge_count(), || json!({"check": "distinct-partitions", "graph": g.to_json_value()}));
                Ok(t)
            })
            .collect(),
    )?;
    let candidates: Vec<(&MarkedGraph, Vec<Vec<usize>>)> = graphs
        .iter()
        .map(|g| (g, g.legal_forests().into_iter().filter(|f| f.len() < g.edge_count()).collect::<Vec<_>>()))
        .filter(|(_, fs)| !fs.is_empty())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut instances = Vec::with_capacity(opts.samples);
    for _ in 0..opts.samples {
        let (g, forests) = &candidates[rng.gen_range(0..candidates.len())];
        let forest = forests[rng.gen_range(0..forests.len())].clone();
        let remaining = g.edge_count() - forest.len();
        let mask: u64 = rng.gen_range(1..(1u64 << remaining));
        let h: Vec<usize> = (0..remaining).filter(|e| mask >> e & 1 == 1).collect();
        instances.push((*g, forest, h));
    }
    let parts: Vec<Result<Tally, SuiteError>> = instances
        .par_iter()
        .map(|(g, forest, h)| {
            let mut t = Tally::new();
            let y = g.collapse(forest)?;
            let surviving: Vec<usize> = (0..g.edge_count()).filter(|e| !forest.contains(e)).collect();
            let mut expected: Vec<usize> = h.iter().map(|&f| surviving[f]).collect();
            expected.sort_unstable();
            let lift = g.canonical_lift(&y, h);
            t.check(lift.as_ref().ok() == Some(&expected), || {
                json!({"check": "canonical-lift", "graph": g.to_json_value(), "forest": forest, "h": h,
                       "expected": expected, "lift": lift.as_ref().ok()})
            });
            Ok(t)
        })
        .collect();
    t.absorb(merge(parts)?);
    Ok(t)
}

/// The only join decomposition of a link with both sides nonempty is the
/// split into positive and negative parts.
fn prop_4_6(n: usize, opts: &SuiteOptions) -> Result<Tally, SuiteError> {
    let x = MarkedGraph::standard_zero_star(n);
    let ball = links::kn_ball(&x, 2, &opts.budget)?;
    let parts = ball
        .par_iter()
        .map(|(g, _)| -> Result<Tally, SuiteError> {
            let mut t = Tally::new();
            let link = links::link_graph(g, &opts.budget)?;
            if link.plus_count() == 0 || link.minus_count() == 0 {
                return Ok(t);
            }
            let comps = link.graph.complement_components();
            let sides: BTreeSet<Vec<usize>> = [link.side(Polarity::Plus), link.side(Polarity::Minus)].into();
            let found: BTreeSet<Vec<usize>> = comps.iter().cloned().collect();
            t.check(comps.len() == 2 && found == sides, || {
                json!({"check": "unique-join", "graph": g.to_json_value(), "components": comps.len(),
                       "plus": link.plus_count(), "minus": link.minus_count()})
            });
            Ok(t)
        })
        .collect();
    merge(parts)
}

/// Largest edge count checked by the refinement suite.
fn max_edges(n: usize) -> usize {
    if n == 4 {
        3
    } else {
        2
    }
}

/// Every enumerated `k`-edge splitting has `k` distinct pairwise compatible
/// one-edge collapses whose common refinement is the splitting itself, and
/// the candidate space carries no two splittings with the same keys.
fn scott_swarup(n: usize) -> Result<Tally, SuiteError> {
    let mut t = Tally::new();
    for k in 1..=max_edges(n) {
        let u = splittings::universe(n, k, splittings::SEARCH_DEPTH);
        let collisions = u.key_collisions();
        t.check(collisions.is_empty(), || json!({"check": "unique-in-search-space", "k": k, "collisions": collisions.len()}));
        let inputs = splittings::universe(n, k, 1);
        let parts = inputs
            .members
            .par_iter()
            .map(|s| -> Result<Tally, SuiteError> {
                let mut t = Tally::new();
                let witness = |what: &str| json!({"check": what, "k": k, "splitting": s.to_json_value()});
                let collapses = s.one_edge_collapses();
                let keys: BTreeSet<_> = collapses.iter().map(|c| c.key()).collect();
                t.check(collapses.len() == k && keys.len() == k, || witness("k-distinct-collapses"));
                let mut all_compatible = true;
                for a in 0..collapses.len() {
                    for b in a + 1..collapses.len() {
                        all_compatible &= splittings::compatible(&collapses[a], &collapses[b])?;
                    }
                }
                t.check(all_compatible, || witness("pairwise-compatible"));
                let refined = splittings::common_refinement(&collapses);
                t.check(refined.as_ref().is_ok_and(|r| r.key() == s.key() && *r == s.canonicalize()), || {
                    witness("refinement-recovers-splitting")
                });
                Ok(t)
            })
            .collect();
        t.absorb(merge(parts)?);
    }
    Ok(t)
}

/// The profile is all true exactly on F-one-edge splittings; splittings
/// outside the spine have at least 100 neighbours, and those inside have a
/// finite link.
fn lemma_5_4(n: usize) -> Result<Tally, SuiteError> {
    let mut t = Tally::new();
    for k in 1..=2 {
        let u = splittings::universe(n, k, 1);
        let parts = u
            .members
            .par_iter()
            .map(|s| -> Result<Tally, SuiteError> {
                let mut t = Tally::new();
                let profile = splittings::lemma54_profile(s)?;
                let all = profile.a && profile.b && profile.c == Some(true);
                t.check(all == s.is_f_one_edge(), || {
                    json!({"check": "profile", "splitting": s.to_json_value(), "profile": profile})
                });
                if s.is_in_spine() {
                    let link = splittings::finite_link(s)?;
                    t.check(!link.is_empty(), || json!({"check": "finite-link", "splitting": s.to_json_value()}));
                } else {
                    let nbrs = neighbors_or_empty(s)?;
                    let key = s.key();
                    let distinct: BTreeSet<_> = nbrs.iter().map(|x| x.key()).collect();
                    let ok = distinct.len() >= 100
                        && !distinct.contains(&key)
                        && nbrs.iter().all(|x| links::collapses_onto(&x.key(), &key));
                    t.check(ok, || {
                        json!({"check": "infinite-link", "splitting": s.to_json_value(), "found": distinct.len()})
                    });
                }
                Ok(t)
            })
            .collect();
        t.absorb(merge(parts)?);
    }
    Ok(t)
}

fn neighbors_or_empty(s: &FreeSplitting) -> Result<Vec<FreeSplitting>, SuiteError> {
    match splittings::neighbor_stream(s, 100) {
        Ok(v) => Ok(v),
        Err(SplittingError::Stalled { .. }) => Ok(Vec::new()),
        Err(e) => Err(e.into()),
    }
}
