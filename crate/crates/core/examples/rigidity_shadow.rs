//! Automorphisms of the ball B(X,4) fixing the star of X.
//!
//! Run with `cargo run --release --example rigidity_shadow`.

use coxspine::rigidity::{rigidity_shadow, star_fixing_automorphisms};
use coxspine::spine::{ball, SpineVertex};
use coxspine::Budget;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let budget = Budget::default();
    let b = ball(&SpineVertex::standard(4), 4, &budget)?;
    let autos = star_fixing_automorphisms(&b, 10, &budget)?;
    let moved: Vec<usize> = autos.iter().map(|a| a.iter().enumerate().filter(|(i, &j)| *i != j).count()).collect();
    println!("{} star-fixing automorphisms found (limit 10); vertices moved by each: {moved:?}", autos.len());
    let report = rigidity_shadow(&b, 2, &budget)?;
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(())
}
