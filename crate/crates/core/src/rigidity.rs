//! Automorphisms of finite balls in L_n that fix the star of the centre, by
//! colour refinement and individualization.

use crate::budget::Budget;
use crate::spine::{Ball, SpineError};
use crate::word::Automorphism;
use serde::Serialize;
use std::collections::HashMap;

/// Stable colouring of two copies of the same graph under a shared palette.
fn refine_pair(adj: &[Vec<usize>], c1: &[u64], c2: &[u64]) -> (Vec<u64>, Vec<u64>) {
    let mut a = c1.to_vec();
    let mut b = c2.to_vec();
    let distinct = |a: &[u64], b: &[u64]| {
        let mut v: Vec<u64> = a.iter().chain(b).copied().collect();
        v.sort_unstable();
        v.dedup();
        v.len()
    };
    let mut classes = distinct(&a, &b);
    loop {
        let sig = |cols: &[u64], v: usize| {
            let mut nb: Vec<u64> = adj[v].iter().map(|&w| cols[w]).collect();
            nb.sort_unstable();
            (cols[v], nb)
        };
        let sa: Vec<(u64, Vec<u64>)> = (0..adj.len()).map(|v| sig(&a, v)).collect();
        let sb: Vec<(u64, Vec<u64>)> = (0..adj.len()).map(|v| sig(&b, v)).collect();
        let mut palette: Vec<&(u64, Vec<u64>)> = sa.iter().chain(sb.iter()).collect();
        palette.sort();
        palette.dedup();
        let index: HashMap<&(u64, Vec<u64>), u64> = palette.iter().enumerate().map(|(i, s)| (*s, i as u64)).collect();
        a = sa.iter().map(|s| index[s]).collect();
        b = sb.iter().map(|s| index[s]).collect();
        let next = distinct(&a, &b);
        if next == classes {
            return (a, b);
        }
        classes = next;
    }
}

fn histogram(c: &[u64]) -> HashMap<u64, usize> {
    let mut h = HashMap::new();
    for &x in c {
        *h.entry(x).or_insert(0) += 1;
    }
    h
}

fn is_automorphism(adj: &[Vec<usize>], map: &[usize]) -> bool {
    adj.iter().enumerate().all(|(v, list)| {
        let mut img: Vec<usize> = list.iter().map(|&w| map[w]).collect();
        img.sort_unstable();
        img == adj[map[v]]
    })
}

struct Search<'a> {
    adj: &'a [Vec<usize>],
    base: &'a [u64],
    limit: usize,
    found: Vec<Vec<usize>>,
    budget: &'a Budget,
    nodes: usize,
}

impl Search<'_> {
    fn run(&mut self, pairs: &mut Vec<(usize, usize)>) -> Result<(), SpineError> {
        if self.found.len() >= self.limit {
            return Ok(());
        }
        self.nodes += 1;
        if self.nodes.is_multiple_of(64) {
            self.budget.check_time()?;
        }
        let offset = self.base.iter().copied().max().unwrap_or(0) + 1;
        let mut c1 = self.base.to_vec();
        let mut c2 = self.base.to_vec();
        for (k, &(x, y)) in pairs.iter().enumerate() {
            c1[x] = offset + k as u64;
            c2[y] = offset + k as u64;
        }
        let (c1, c2) = refine_pair(self.adj, &c1, &c2);
        let (h1, h2) = (histogram(&c1), histogram(&c2));
        if h1 != h2 {
            return Ok(());
        }
        let target = h1.iter().filter(|(_, &s)| s > 1).min_by_key(|(&c, &s)| (s, c)).map(|(&c, _)| c);
        match target {
            None => {
                let pos: HashMap<u64, usize> = c2.iter().enumerate().map(|(v, &c)| (c, v)).collect();
                let map: Vec<usize> = c1.iter().map(|c| pos[c]).collect();
                if is_automorphism(self.adj, &map) {
                    self.found.push(map);
                }
            }
            Some(colour) => {
                let x = (0..c1.len()).find(|&v| c1[v] == colour).expect("colour present");
                let mut ys: Vec<usize> = (0..c2.len()).filter(|&v| c2[v] == colour).collect();
                ys.sort_by_key(|&y| (y != x, y));
                for y in ys {
                    pairs.push((x, y));
                    self.run(pairs)?;
                    pairs.pop();
                    if self.found.len() >= self.limit {
                        break;
                    }
                }
            }
        }
        Ok(())
    }
}

fn star_pairs(ball: &Ball) -> Vec<(usize, usize)> {
    let mut star = vec![0usize];
    star.extend(ball.adj[0].iter().copied());
    star.into_iter().map(|v| (v, v)).collect()
}

/// Up to `limit` automorphisms of the ball's graph fixing the centre and its
/// neighbours, identity first. Each is a vertex permutation.
pub fn star_fixing_automorphisms(ball: &Ball, limit: usize, budget: &Budget) -> Result<Vec<Vec<usize>>, SpineError> {
    let base: Vec<u64> = ball.dist.iter().map(|&d| d as u64).collect();
    let mut search = Search { adj: &ball.adj, base: &base, limit, found: Vec::new(), budget, nodes: 0 };
    let mut pairs = star_pairs(ball);
    search.run(&mut pairs)?;
    Ok(search.found)
}

/// Outcome of the finite rigidity check.
#[derive(Clone, Debug, Serialize)]
pub struct RigidityReport {
    pub ball_size: usize,
    pub inner_radius: usize,
    pub inner_size: usize,
    pub singleton_inner: usize,
    pub pairs_searched: usize,
    pub counterexamples: Vec<(usize, usize)>,
}

/// Checks that every automorphism of the ball fixing the star of the centre
/// fixes the inner ball of radius `inner_radius` pointwise. Vertices whose
/// refined colour class is a singleton are fixed by every such automorphism;
/// for the others an automorphism moving them is searched for directly.
pub fn rigidity_shadow(ball: &Ball, inner_radius: usize, budget: &Budget) -> Result<RigidityReport, SpineError> {
    let base: Vec<u64> = ball.dist.iter().map(|&d| d as u64).collect();
    let offset = base.iter().copied().max().unwrap_or(0) + 1;
    let pairs = star_pairs(ball);
    let mut c = base.clone();
    for (k, &(x, _)) in pairs.iter().enumerate() {
        c[x] = offset + k as u64;
    }
    let (colours, _) = refine_pair(&ball.adj, &c, &c);
    let hist = histogram(&colours);
    let inner = ball.within(inner_radius);
    let mut singleton_inner = 0;
    let mut pairs_searched = 0;
    let mut counterexamples = Vec::new();
    for &v in &inner {
        if hist[&colours[v]] == 1 {
            singleton_inner += 1;
            continue;
        }
        for u in (0..ball.len()).filter(|&u| u != v && colours[u] == colours[v]) {
            pairs_searched += 1;
            let mut search = Search { adj: &ball.adj, base: &base, limit: 1, found: Vec::new(), budget, nodes: 0 };
            let mut p = pairs.clone();
            p.push((v, u));
            search.run(&mut p)?;
            if !search.found.is_empty() {
                counterexamples.push((v, u));
            }
        }
    }
    Ok(RigidityReport {
        ball_size: ball.len(),
        inner_radius,
        inner_size: inner.len(),
        singleton_inner,
        pairs_searched,
        counterexamples,
    })
}

/// Whether `f` maps the inner ball of radius `inner_radius` into `ball`
/// injectively and preserving adjacency.
pub fn embeds_under(ball: &Ball, f: &Automorphism, inner_radius: usize) -> Result<bool, SpineError> {
    let inner = ball.within(inner_radius);
    let mut image = HashMap::new();
    for &v in &inner {
        let g = ball.vertices[v].graph.act(f)?;
        match ball.index_of(&g) {
            Some(i) => {
                image.insert(v, i);
            }
            None => return Ok(false),
        }
    }
    let mut targets: Vec<usize> = image.values().copied().collect();
    targets.sort_unstable();
    targets.dedup();
    if targets.len() != inner.len() {
        return Ok(false);
    }
    for &v in &inner {
        for &w in &ball.adj[v] {
            if let Some(&iw) = image.get(&w) {
                if ball.adj[image[&v]].binary_search(&iw).is_err() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
