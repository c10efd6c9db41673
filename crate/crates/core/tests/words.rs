mod common;

use common::{automorphism, word};
use coxspine::{Automorphism, ConjGen, Word, WordError};
use proptest::prelude::*;

#[test]
fn reduction_cancels_adjacent_letters() {
    assert_eq!(Word::reduce([1, 2, 2, 1]), Word::identity());
    assert_eq!(Word::reduce([1, 2, 3, 3, 2]).letters(), &[1]);
    assert_eq!(Word::reduce([1, 2, 1]).to_string(), "x1x2x1");
}

#[test]
fn rank_is_checked() {
    assert_eq!(Word::try_from_letters(vec![1, 5], 4), Err(WordError::IndexOutOfRange { index: 5, n: 4 }));
}

#[test]
fn palindromes_are_conjugates_of_generators() {
    let c = ConjGen::from_word(&Word::reduce([3, 1, 3])).unwrap();
    assert_eq!((c.core, c.conj.letters()), (1, &[3u8][..]));
    assert!(ConjGen::from_word(&Word::reduce([1, 2])).is_err());
    assert_eq!(ConjGen::new(2, &Word::reduce([1, 2])), ConjGen::new(2, &Word::reduce([1])));
}

#[test]
fn partial_conjugation_images() {
    let s = Automorphism::sigma(4, 2, 1).unwrap();
    assert_eq!(s.image_of_generator(2).to_string(), "x1x2x1");
    assert_eq!(s.image_of_generator(3).to_string(), "x3");
    assert_eq!(Automorphism::sigma(4, 2, 2), Err(WordError::SameIndex(2)));
}

#[test]
fn product_parsing_applies_leftmost_last() {
    let f = Automorphism::parse_product(3, "t(1,2) s(1,3)").unwrap();
    let t = Automorphism::transposition(3, 1, 2).unwrap();
    let s = Automorphism::sigma(3, 1, 3).unwrap();
    assert_eq!(f, t.compose(&s));
    assert_eq!(f.apply(&Word::generator(1)), t.apply(&s.apply(&Word::generator(1))));
    assert_eq!(Automorphism::parse_product(3, "t(1,2) t(1,2)").unwrap(), Automorphism::identity(3));
    assert!(matches!(Automorphism::parse_product(3, "q(1,2)"), Err(WordError::Parse(_))));
    assert!(Automorphism::parse_product(3, "s(1,4)").is_err());
}

#[test]
fn inner_automorphisms_are_recognised() {
    let w = Word::reduce([2, 3, 1]);
    assert_eq!(Automorphism::inner(4, &w).is_inner(), Some(w));
    assert_eq!(Automorphism::sigma(4, 1, 2).unwrap().is_inner(), None);
}

proptest! {
    #[test]
    fn reduction_is_idempotent(w in word(5, 20)) {
        prop_assert_eq!(Word::reduce(w.letters().iter().copied()), w);
    }

    #[test]
    fn words_times_inverses_are_trivial(w in word(5, 20)) {
        prop_assert!(w.multiply(&w.inverse()).is_empty());
    }

    #[test]
    fn automorphisms_are_homomorphisms(f in automorphism(4, 6), a in word(4, 8), b in word(4, 8)) {
        prop_assert_eq!(f.apply(&a.multiply(&b)), f.apply(&a).multiply(&f.apply(&b)));
    }

    #[test]
    fn peak_reduction_inverts(f in automorphism(5, 8)) {
        let g = f.try_inverse().unwrap();
        prop_assert_eq!(f.compose(&g), Automorphism::identity(5));
        prop_assert_eq!(g.compose(&f), Automorphism::identity(5));
    }

    #[test]
    fn outer_normal_form_ignores_inner_factors(f in automorphism(4, 6), w in word(4, 6)) {
        let g = Automorphism::inner(4, &w).compose(&f);
        prop_assert_eq!(g.outer_normal_form(), f.outer_normal_form());
    }
}
