//! Breadth-first balls in L_n around the standard {0}-star.
//!
//! Run with `cargo run --release --example spine_ball -- 5 4` (rank, radius).

use coxspine::spine::{ball, Kind, SpineVertex};
use coxspine::Budget;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<usize> = std::env::args().skip(1).map(|a| a.parse()).collect::<Result<_, _>>()?;
    let n = args.first().copied().unwrap_or(4);
    let radius = args.get(1).copied().unwrap_or(4);
    let b = ball(&SpineVertex::standard(n), radius, &Budget::from_env())?;
    let mut layers = vec![0usize; radius + 1];
    for &d in &b.dist {
        layers[d] += 1;
    }
    println!("n = {n}, radius = {radius}: {} vertices, layers {layers:?}", b.len());
    let zero = b.vertices.iter().filter(|v| v.kind == Kind::ZeroStar).count();
    println!("{zero} {{0}}-stars and {} F-stars, {} edges", b.len() - zero, b.edges().len());
    Ok(())
}
