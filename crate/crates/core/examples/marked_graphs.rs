//! Marked graphs of groups: equivalence, collapses, blow-ups and export.
//!
//! Run with `cargo run --example marked_graphs`.

use coxspine::{ConjGen, MarkedGraph, Word};

fn label(letters: &[u8]) -> ConjGen {
    ConjGen::from_word(&Word::reduce(letters.iter().copied())).expect("odd palindrome")
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // Two {0}-stars at n = 5 that differ by a global conjugation by x3.
    let left = MarkedGraph::zero_star_with_labels(vec![label(&[3, 1, 3]), label(&[3, 2, 3]), label(&[3]), label(&[4]), label(&[5])])?;
    let right = MarkedGraph::zero_star_with_labels(vec![label(&[1]), label(&[2]), label(&[3]), label(&[3, 4, 3]), label(&[3, 5, 3])])?;
    println!("the two stars are equivalent: {}", left.equivalent(&right));
    println!("canonical form: {}", left.canonicalize().to_json());

    let x = MarkedGraph::standard_zero_star(4);
    println!("standard {{0}}-star at n = 4 has {} legal forests", x.legal_forests().len());
    let y = x.collapse(&[0])?.canonicalize();
    println!("collapsing one leaf edge gives an F-star: {}", y.is_f_star_shape());
    for e in 0..y.edge_count() {
        let p = y.edge_partition(e)?;
        println!("  edge {e} splits the cores as {:?}", p.core_sets());
    }
    let centre = (0..y.vertex_count()).find(|&v| y.degree(v) > 1).expect("a centre");
    println!("the F-star has {} one-edge blow-ups at its centre", y.one_edge_blowups(centre)?.len());
    print!("{}", x.to_dot());
    Ok(())
}
