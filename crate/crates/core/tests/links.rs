mod common;

use coxspine::links::{
    classify, join_decompositions, kn_ball, link_graph, negative_link, positive_link, positive_link_depth1,
    AbstractGraph, Polarity,
};
use coxspine::spine::{y_star, Kind, SpineVertex};
use coxspine::{Automorphism, Budget, MarkedGraph};

fn f_star(n: usize) -> MarkedGraph {
    y_star(&MarkedGraph::standard_zero_star(n), n as u8).unwrap()
}

/// Whether some legal forest collapse of `a` is equivalent to `b`.
fn collapses_by_brute_force(a: &MarkedGraph, b: &MarkedGraph) -> bool {
    let target = b.canonicalize();
    a.legal_forests().iter().any(|f| a.collapse(f).unwrap().canonicalize() == target)
}

#[test]
fn negative_links_of_the_two_star_kinds() {
    for n in 4..=6 {
        let x = MarkedGraph::standard_zero_star(n);
        let minus = negative_link(&x);
        assert_eq!(minus.len(), n);
        assert!(minus.iter().all(|v| v.kind == Kind::FStar));
        assert!(negative_link(&f_star(n)).is_empty());
    }
}

#[test]
fn f_star_blow_ups_contain_its_zero_star_neighbours() {
    let plus = positive_link_depth1(&f_star(6));
    assert_eq!(plus.iter().filter(|v| v.kind == Kind::ZeroStar).count(), 16);
}

#[test]
fn link_of_the_standard_star_at_rank_four() {
    let link = link_graph(&MarkedGraph::standard_zero_star(4), &Budget::unlimited()).unwrap();
    assert_eq!((link.plus_count(), link.minus_count()), (3, 4));
    assert!(link.side_has_no_edges(Polarity::Minus));
    assert_eq!(join_decompositions(&link.graph).len(), 1);
    let mut comps = link.graph.complement_components();
    comps.sort();
    let mut sides = vec![link.side(Polarity::Plus), link.side(Polarity::Minus)];
    sides.sort();
    assert_eq!(comps, sides);
}

#[test]
fn link_adjacency_matches_forest_collapses() {
    let twisted = MarkedGraph::standard_zero_star(5).act(&Automorphism::parse_product(5, "s(1,5) s(2,3)").unwrap()).unwrap();
    for x in [MarkedGraph::standard_zero_star(4), f_star(4), twisted] {
        let link = link_graph(&x, &Budget::unlimited()).unwrap();
        let m = link.vertices.len();
        for a in 0..m {
            for b in a + 1..m {
                let (ga, gb) = (&link.vertices[a].graph, &link.vertices[b].graph);
                let expected = link.polarity[a] != link.polarity[b]
                    || collapses_by_brute_force(ga, gb)
                    || collapses_by_brute_force(gb, ga);
                assert_eq!(link.graph.has_edge(a, b), expected, "pair {a} {b}");
            }
        }
    }
}

#[test]
fn positive_link_refines_the_base() {
    let x = f_star(4);
    for v in positive_link(&x, &Budget::unlimited()).unwrap() {
        assert!(collapses_by_brute_force(&v.graph, &x));
    }
}

#[test]
fn join_decompositions_count_complement_components() {
    let empty = AbstractGraph::new(3);
    assert_eq!(join_decompositions(&empty), Vec::<(Vec<usize>, Vec<usize>)>::new());
    let k3 = AbstractGraph::from_edges(3, &[(0, 1), (0, 2), (1, 2)]);
    assert_eq!(join_decompositions(&k3).len(), 3);
    let path = AbstractGraph::from_edges(3, &[(0, 1), (1, 2)]);
    assert_eq!(join_decompositions(&path), vec![(vec![0, 2], vec![1])]);
}

#[test]
fn classification_from_links() {
    let x = MarkedGraph::standard_zero_star(5);
    assert_eq!(classify(&x), Kind::ZeroStar);
    assert_eq!(classify(&f_star(5)), Kind::FStar);
    let other = positive_link_depth1(&x).into_iter().find(|v| v.kind == Kind::Other).unwrap();
    assert_eq!(classify(&other.graph), Kind::Other);
    for v in kn_ball(&x, 1, &Budget::unlimited()).unwrap() {
        assert_eq!(classify(&v.0), Kind::of(&v.0));
    }
}

#[test]
fn kn_ball_around_the_standard_star() {
    let ball = kn_ball(&MarkedGraph::standard_zero_star(4), 2, &Budget::unlimited()).unwrap();
    assert_eq!(ball.len(), 92);
    assert_eq!(ball[0].0, SpineVertex::standard(4).graph);
    assert!(ball.windows(2).all(|w| w[0].1 <= w[1].1));
}
