mod common;

use common::{automorphism, label, star, word};
use coxspine::marked_graph::GraphError;
use coxspine::{Automorphism, MarkedGraph};
use proptest::prelude::*;

fn twisted_star() -> MarkedGraph {
    star(&[&[3, 1, 3], &[3, 2, 3], &[3], &[4], &[5]])
}

fn conjugated_star() -> MarkedGraph {
    star(&[&[1], &[2], &[3], &[3, 4, 3], &[3, 5, 3]])
}

#[test]
fn globally_conjugate_stars_are_equivalent() {
    assert!(twisted_star().equivalent(&conjugated_star()));
    assert_eq!(twisted_star().canonicalize(), conjugated_star().canonicalize());
    assert!(!twisted_star().equivalent(&MarkedGraph::standard_zero_star(5)));
}

#[test]
fn validation_names_the_broken_invariant() {
    let l = |c: u8| Some(label(&[c]));
    let two = MarkedGraph::new(3, vec![l(1), None, l(2), l(3)], vec![(0, 1), (1, 2), (2, 3)]);
    assert_eq!(two, Err(GraphError::LowDegree { vertex: 1, degree: 2 }));
    let dup = MarkedGraph::new(3, vec![l(1), None, l(1), l(3)], vec![(0, 1), (1, 2), (1, 3)]);
    assert_eq!(dup, Err(GraphError::DuplicateCore(1)));
    let cyc = MarkedGraph::new(3, vec![l(1), l(2), l(3)], vec![(0, 1), (1, 2), (2, 0)]);
    assert_eq!(cyc, Err(GraphError::NotTree));
    let not_basis = MarkedGraph::new(3, vec![l(1), None, Some(label(&[1, 2, 1])), Some(label(&[2, 3, 2]))], vec![(0, 1), (1, 2), (1, 3)]);
    assert!(not_basis.is_ok());
    let leaf = MarkedGraph::new(2, vec![l(1), None, l(2), None], vec![(0, 1), (1, 2), (1, 3)]);
    assert_eq!(leaf, Err(GraphError::EmptyLeaf(3)));
}

#[test]
fn json_round_trip() {
    let g = twisted_star();
    assert_eq!(MarkedGraph::from_json(&g.to_json()).unwrap(), g);
    assert!(matches!(MarkedGraph::from_json("{\"n\":2}"), Err(GraphError::Json(_))));
}

#[test]
fn partial_conjugation_twists_one_leaf() {
    let x = MarkedGraph::standard_zero_star(6);
    let y = x.act(&Automorphism::parse_product(6, "s(1,6)").unwrap()).unwrap();
    assert_eq!(y, star(&[&[6, 1, 6], &[2], &[3], &[4], &[5], &[6]]).canonicalize());
    let z = x.act(&Automorphism::parse_product(6, "s(1,6) s(4,6)").unwrap()).unwrap();
    assert_eq!(z, star(&[&[6, 1, 6], &[2], &[3], &[6, 4, 6], &[5], &[6]]).canonicalize());
}

#[test]
fn involutive_products_fix_the_base() {
    let x = MarkedGraph::standard_zero_star(4).canonicalize();
    for p in ["t(1,2) t(1,2)", "s(2,1) s(2,1)", "t(3,4)"] {
        assert_eq!(x.act(&Automorphism::parse_product(4, p).unwrap()).unwrap(), x);
    }
}

#[test]
fn collapses_and_blowups_are_inverse_moves() {
    let x = MarkedGraph::standard_zero_star(4);
    let y = x.collapse(&[2]).unwrap().canonicalize();
    assert!(y.is_f_star_shape());
    let centre = (0..y.vertex_count()).max_by_key(|&v| y.degree(v)).unwrap();
    let ups = y.one_edge_blowups(centre).unwrap();
    assert!(ups.contains(&x.canonicalize()));
    assert_eq!(ups.iter().filter(|g| g.is_zero_star_shape()).count(), 4);
    assert_eq!(x.collapse(&[0, 1]), Err(GraphError::MergesLabels));
}

#[test]
fn edge_partitions_of_a_star() {
    let x = MarkedGraph::standard_zero_star(4);
    let parts: Vec<_> = (0..4).map(|e| x.edge_partition(e).unwrap().core_sets()).collect();
    assert_eq!(parts[0], (vec![1], vec![2, 3, 4]));
    assert_eq!(x.canonical_lift(&x.collapse(&[0]).unwrap(), &[1]).unwrap(), vec![2]);
}

fn relabelled(g: &MarkedGraph, perm: &[usize]) -> MarkedGraph {
    let mut labels = vec![None; g.vertex_count()];
    for (v, l) in g.labels().iter().enumerate() {
        labels[perm[v]] = l.clone();
    }
    let edges = g.edges().iter().map(|&(a, b)| (perm[b], perm[a])).collect();
    MarkedGraph::new(g.rank(), labels, edges).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_form_is_a_class_function(
        f in automorphism(4, 5),
        w in word(4, 5),
        seed in any::<u64>(),
    ) {
        let g = MarkedGraph::standard_zero_star(4).act(&f).unwrap();
        let centre = (0..g.vertex_count()).find(|&v| g.label(v).is_none()).unwrap();
        let g = g.one_edge_blowups(centre).unwrap().into_iter().next().unwrap_or(g);
        let m = g.vertex_count();
        let mut perm: Vec<usize> = (0..m).collect();
        let mut s = seed;
        for i in (1..m).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let h = relabelled(&g.conjugate_labels(&w), &perm);
        prop_assert_eq!(h.canonicalize(), g.canonicalize());
        prop_assert_eq!(h.splitting_key(), g.splitting_key());
        prop_assert_eq!(g.canonicalize().canonicalize(), g.canonicalize());
    }

    #[test]
    fn acting_then_inverting_returns(f in automorphism(4, 6)) {
        let x = MarkedGraph::standard_zero_star(4);
        let y = x.act(&f).unwrap();
        prop_assert_eq!(y.act(&f.inverse()).unwrap(), x.canonicalize());
    }
}
