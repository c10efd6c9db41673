#![allow(dead_code)]

use coxspine::spine::Kind;
use coxspine::{Automorphism, ConjGen, MarkedGraph, SplittingKey, Word};
use proptest::prelude::*;
use std::collections::{HashSet, VecDeque};

/// The conjugate of a generator spelled by an odd palindrome.
pub fn label(letters: &[u8]) -> ConjGen {
    ConjGen::from_word(&Word::reduce(letters.iter().copied())).expect("odd palindrome")
}

/// A {0}-star whose leaves carry the given palindromes.
pub fn star(leaves: &[&[u8]]) -> MarkedGraph {
    MarkedGraph::zero_star_with_labels(leaves.iter().map(|l| label(l)).collect()).expect("valid star")
}

/// Strategy for products of partial conjugations and transpositions.
pub fn automorphism(n: usize, max_factors: usize) -> impl Strategy<Value = Automorphism> {
    let factor = (1..=n, 1..=n, any::<bool>()).prop_filter("distinct indices", |(a, b, _)| a != b);
    prop::collection::vec(factor, 0..=max_factors).prop_map(move |fs| {
        fs.into_iter().fold(Automorphism::identity(n), |acc, (a, b, sigma)| {
            let f = if sigma { Automorphism::sigma(n, a, b) } else { Automorphism::transposition(n, a, b) };
            acc.compose(&f.expect("valid indices"))
        })
    })
}

/// Strategy for reduced words over `x_1..x_n`.
pub fn word(n: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(1..=n as u8, 0..=max_len).prop_map(Word::reduce)
}

/// Neighbours in L_n built from raw collapses and blow-ups, without
/// canonicalization of the collapses.
fn raw_neighbors(g: &MarkedGraph) -> Vec<MarkedGraph> {
    if g.is_zero_star_shape() {
        (0..g.edge_count()).map(|e| g.collapse(&[e]).expect("leaf edge collapses")).collect()
    } else {
        let centre = (0..g.vertex_count()).max_by_key(|&v| g.degree(v)).expect("nonempty");
        g.one_edge_blowups(centre).expect("centre in range").into_iter().filter(|h| h.is_zero_star_shape()).collect()
    }
}

/// Layer sizes of the ball in L_n, deduplicated by edge keys only.
pub fn key_dedup_layers(n: usize, radius: usize) -> Vec<usize> {
    let start = MarkedGraph::standard_zero_star(n);
    let mut seen: HashSet<SplittingKey> = HashSet::from([start.splitting_key()]);
    let mut layers = vec![1];
    let mut frontier = VecDeque::from([start]);
    for _ in 0..radius {
        let mut next = VecDeque::new();
        while let Some(g) = frontier.pop_front() {
            for h in raw_neighbors(&g) {
                if seen.insert(h.splitting_key()) {
                    next.push_back(h);
                }
            }
        }
        layers.push(next.len());
        frontier = next;
    }
    layers
}

pub fn kind(g: &MarkedGraph) -> Kind {
    Kind::of(g)
}
