//! Reduced words in W_n, partial conjugations and their inverses.
//!
//! Run with `cargo run --example words_and_automorphisms`.

use coxspine::{Automorphism, ConjGen, Word};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n = 4;
    let w = Word::reduce([1, 2, 2, 3, 1]);
    println!("x1 x2 x2 x3 x1 reduces to {w}, inverse {}", w.inverse());

    let c = ConjGen::from_word(&Word::reduce([3, 1, 3]))?;
    println!("x3x1x3 has core x{} and conjugator {}", c.core, c.conj);

    let s = Automorphism::sigma(n, 2, 1)?;
    println!("s(2,1) sends x2 to {}", s.image_of_generator(2));
    println!("s(2,1) is an involution: {}", s.compose(&s) == Automorphism::identity(n));

    let f = Automorphism::parse_product(n, "s(2,1) t(1,3) s(4,2)")?;
    let g = f.inverse();
    println!("f = s(2,1) t(1,3) s(4,2): images {:?}", f.images().iter().map(|c| c.to_string()).collect::<Vec<_>>());
    println!("f composed with its inverse is the identity: {}", f.compose(&g) == Automorphism::identity(n));

    let inner = Automorphism::inner(n, &Word::reduce([2, 3]));
    println!("conjugation by x2x3 is inner: {:?}", inner.is_inner().map(|w| w.to_string()));
    println!("its outer normal form is the identity: {}", inner.outer_normal_form() == Automorphism::identity(n));
    Ok(())
}
