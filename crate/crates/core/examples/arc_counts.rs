//! First term complexities and arc counts around the standard {0}-star.
//!
//! Run with `cargo run --release --example arc_counts`.

use coxspine::spine::{ball, count_arcs, first_term_complexity, predicted_arc_count, y_star, SpineVertex};
use coxspine::Budget;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n = 4;
    let b = ball(&SpineVertex::standard(n), 4, &Budget::default())?;
    let x = b.center.graph.clone();
    let i = 1u8;
    let yi = b.index_of(&y_star(&x, i)?).expect("Y_1 is in the ball");
    for &xp in b.adj[yi].iter().filter(|&&v| v != 0) {
        let first = first_term_complexity(&x, i, &b.vertices[xp].graph)?;
        print!("X' = vertex {xp}: k = {}, realizing sets {:?};", first.k, first.sets);
        for j in (1..=n as u8).filter(|&j| j != i) {
            let yj = b.index_of(&y_star(&x, j)?).expect("Y_j is in the ball");
            let count = count_arcs(&b, xp, yj, 5)?;
            print!(" j={j}: {count} (predicted {})", predicted_arc_count(n, &first, j));
        }
        println!();
    }
    Ok(())
}
