//! Free splittings: collapses, compatibility, common refinements and links.
//!
//! Run with `cargo run --release --example splittings`.

use coxspine::splittings::{common_refinement, compatible, lemma54_profile, neighbor_stream, FreeSplitting};
use coxspine::MarkedGraph;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n = 4;
    let star = FreeSplitting::from_marked_graph(&MarkedGraph::standard_zero_star(n));
    let parts = star.one_edge_collapses();
    println!("the {{0}}-star splitting has {} one-edge collapses", parts.len());
    println!("first two are compatible: {}", compatible(&parts[0], &parts[1])?);
    let refined = common_refinement(&parts)?;
    println!("their common refinement is the star again: {}", refined.equivalent(&star));

    let a = FreeSplitting::standard_one_edge(n, &[1, 2])?;
    let b = FreeSplitting::standard_one_edge(n, &[1, 3])?;
    println!("<x1,x2>|<x3,x4> and <x1,x3>|<x2,x4> compatible: {}", compatible(&a, &b)?);

    let f = FreeSplitting::standard_one_edge(n, &[1, 2, 3])?;
    println!("F-one-edge profile {:?}", lemma54_profile(&f)?);
    println!("2|2 profile {:?}", lemma54_profile(&a)?);
    let nbrs = neighbor_stream(&f, 20)?;
    println!("first of 20 distinct neighbours: {}", nbrs[0].to_json());
    Ok(())
}
