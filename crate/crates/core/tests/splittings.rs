mod common;

use common::automorphism;
use coxspine::links::collapses_onto;
use coxspine::splittings::{
    common_refinement, compatible, core_partition, enumerate_splittings, finite_link, is_untwisted, lemma54_profile,
    neighbor_stream, universe, FreeSplitting, SplittingError,
};
use coxspine::{Automorphism, ConjGen, MarkedGraph};
use proptest::prelude::*;
use std::collections::{BTreeSet, HashSet};

fn untwisted_one_edge(n: usize) -> Vec<(BTreeSet<u8>, FreeSplitting)> {
    (1u32..(1 << (n - 1)))
        .map(|mask| {
            let left: Vec<u8> = (1..n as u8).filter(|i| mask >> (i - 1) & 1 == 1).collect();
            (left.iter().copied().collect(), FreeSplitting::standard_one_edge(n, &left).unwrap())
        })
        .collect()
}

fn nested(n: usize, a: &BTreeSet<u8>, c: &BTreeSet<u8>) -> bool {
    let all: BTreeSet<u8> = (1..=n as u8).collect();
    let ac: BTreeSet<u8> = all.difference(a).copied().collect();
    let cc: BTreeSet<u8> = all.difference(c).copied().collect();
    [&ac, a].iter().any(|x| [&cc, c].iter().any(|y| x.is_subset(y) || y.is_subset(x)))
}

fn f_one_edge(n: usize) -> FreeSplitting {
    let left: Vec<u8> = (1..n as u8).collect();
    FreeSplitting::standard_one_edge(n, &left).unwrap()
}

#[test]
fn frozen_universe_sizes() {
    let expected = [(1, [7, 31, 175]), (2, [18, 126, 846]), (3, [22, 202, 1498])];
    for (k, sizes) in expected {
        for (depth, size) in sizes.into_iter().enumerate() {
            let u = universe(4, k, depth);
            assert_eq!(u.len(), size, "k={k} depth={depth}");
            assert!(u.key_collisions().is_empty());
        }
    }
    assert_eq!(universe(5, 1, 1).len(), 125);
    assert_eq!(universe(5, 2, 1).len(), 925);
}

#[test]
fn untwisted_compatibility_is_nesting() {
    for n in 4..=5 {
        let all = untwisted_one_edge(n);
        for (a, s) in &all {
            for (c, t) in &all {
                assert_eq!(compatible(s, t).unwrap(), nested(n, a, c), "{a:?} {c:?}");
            }
        }
    }
}

#[test]
fn refinement_of_nested_splittings() {
    let s = FreeSplitting::standard_one_edge(4, &[1]).unwrap();
    let t = FreeSplitting::standard_one_edge(4, &[1, 2]).unwrap();
    let r = common_refinement(&[s.clone(), t.clone()]).unwrap();
    assert_eq!(r.edge_count(), 2);
    let collapses: BTreeSet<_> = r.one_edge_collapses().iter().map(|x| x.key()).collect();
    assert_eq!(collapses, BTreeSet::from([s.key(), t.key()]));
    assert_eq!(common_refinement(&[s.clone(), s.clone()]), Err(SplittingError::Duplicate));
    let crossing = FreeSplitting::standard_one_edge(4, &[2, 3]).unwrap();
    assert_eq!(common_refinement(&[t, crossing]), Err(SplittingError::NoRefinement));
}

#[test]
fn refinement_recovers_universe_members() {
    for s in enumerate_splittings(4, 2, 1) {
        let parts = s.one_edge_collapses();
        assert_eq!(parts.len(), 2);
        assert!(common_refinement(&parts).unwrap().equivalent(&s));
    }
}

#[test]
fn twisted_compatibility_follows_the_frame() {
    let f = Automorphism::parse_product(5, "s(1,3) s(4,2)").unwrap();
    let s = FreeSplitting::standard_one_edge(5, &[1, 2]).unwrap().act(&f).unwrap();
    let t = FreeSplitting::standard_one_edge(5, &[1, 2, 3]).unwrap().act(&f).unwrap();
    let u = FreeSplitting::standard_one_edge(5, &[1, 3]).unwrap().act(&f).unwrap();
    assert!(compatible(&s, &t).unwrap());
    assert!(!compatible(&s, &u).unwrap());
}

#[test]
fn neighbours_of_an_f_one_edge_splitting() {
    let s = f_one_edge(5);
    let nbrs = neighbor_stream(&s, 50).unwrap();
    let keys: HashSet<_> = nbrs.iter().map(|x| x.key()).collect();
    assert_eq!(keys.len(), 50);
    assert!(!keys.contains(&s.key()));
    assert!(keys.iter().all(|k| collapses_onto(k, &s.key())));
}

#[test]
fn splittings_in_the_spine_have_finite_links() {
    let x = MarkedGraph::standard_zero_star(4);
    let s = FreeSplitting::from_marked_graph(&x);
    let link = finite_link(&s).unwrap();
    assert!(!link.is_empty());
    assert_eq!(neighbor_stream(&s, 5), Err(SplittingError::InSpine { link_size: link.len() }));
    assert_eq!(finite_link(&f_one_edge(4)), Err(SplittingError::NotInSpine));
}

#[test]
fn profiles_of_small_splittings() {
    let p = lemma54_profile(&f_one_edge(5)).unwrap();
    assert_eq!((p.a, p.b, p.c), (true, true, Some(true)));
    let two_two = FreeSplitting::standard_one_edge(4, &[1, 2]).unwrap();
    let p = lemma54_profile(&two_two).unwrap();
    assert_eq!((p.a, p.b, p.c), (true, false, None));
    let p = lemma54_profile(&FreeSplitting::from_marked_graph(&MarkedGraph::standard_zero_star(4))).unwrap();
    assert!(!p.a);
}

#[test]
fn zero_star_collapses_are_never_balanced() {
    for n in 4..=5 {
        let s = FreeSplitting::from_marked_graph(&MarkedGraph::standard_zero_star(n));
        for c in s.one_edge_collapses() {
            let (a, b) = core_partition(&c).unwrap();
            assert_eq!(a.len().min(b.len()), 1);
        }
    }
}

#[test]
fn validation_and_json() {
    let all: Vec<ConjGen> = (1..=4).map(ConjGen::generator).collect();
    assert_eq!(FreeSplitting::new(4, vec![all.clone(), vec![]], vec![(0, 1)]), Err(SplittingError::EmptyLeaf(1)));
    assert_eq!(FreeSplitting::new(4, vec![vec![], vec![]], vec![(0, 1)]), Err(SplittingError::MissingCore(1)));
    assert_eq!(FreeSplitting::new(4, vec![all], vec![]), Err(SplittingError::SinglePoint));
    let s = f_one_edge(4);
    assert_eq!(FreeSplitting::from_json(&s.to_json()).unwrap(), s);
    assert!(matches!(FreeSplitting::from_json("{"), Err(SplittingError::Json(_))));
    assert!(is_untwisted(&s));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn compatibility_is_invariant_under_the_action(f in automorphism(4, 4), a in 1u32..8, c in 1u32..8) {
        let side = |mask: u32| -> Vec<u8> { (1..4u8).filter(|i| mask >> (i - 1) & 1 == 1).collect() };
        let s = FreeSplitting::standard_one_edge(4, &side(a)).unwrap();
        let t = FreeSplitting::standard_one_edge(4, &side(c)).unwrap();
        let before = compatible(&s, &t).unwrap();
        let after = compatible(&s.act(&f).unwrap(), &t.act(&f).unwrap()).unwrap();
        prop_assert_eq!(before, after);
    }

    #[test]
    fn canonical_form_is_a_class_function(f in automorphism(4, 4)) {
        let s = FreeSplitting::standard_one_edge(4, &[1, 2]).unwrap().act(&f).unwrap();
        let inner = Automorphism::inner(4, &coxspine::Word::reduce([3, 1]));
        prop_assert_eq!(s.canonicalize(), s.act(&inner).unwrap().canonicalize());
        prop_assert_eq!(s.key(), s.canonicalize().key());
    }
}
