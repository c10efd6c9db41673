//! Positive and negative links, the join structure and classification.
//!
//! Run with `cargo run --release --example links`.

use coxspine::links::{classify, join_decompositions, link_graph, kn_ball};
use coxspine::{Budget, MarkedGraph};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let budget = Budget::default();
    let x = MarkedGraph::standard_zero_star(4);
    let link = link_graph(&x, &budget)?;
    println!("{{0}}-star: {} positive, {} negative link vertices", link.plus_count(), link.minus_count());
    println!("join decompositions of its link: {}", join_decompositions(&link.graph).len());
    let y = x.collapse(&[0])?.canonicalize();
    println!("F-star classified as {:?}, {{0}}-star as {:?}", classify(&y), classify(&x));
    let ball = kn_ball(&x, 2, &budget)?;
    println!("K_4 ball of radius 2 around the {{0}}-star has {} vertices", ball.len());
    Ok(())
}
