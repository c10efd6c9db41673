use coxspine::rigidity::{embeds_under, rigidity_shadow, star_fixing_automorphisms};
use coxspine::spine::{ball, SpineVertex};
use coxspine::{Automorphism, Budget};

#[test]
fn star_fixing_automorphisms_start_with_the_identity() {
    let b = ball(&SpineVertex::standard(4), 2, &Budget::unlimited()).unwrap();
    let autos = star_fixing_automorphisms(&b, 4, &Budget::unlimited()).unwrap();
    assert_eq!(autos[0], (0..b.len()).collect::<Vec<_>>());
    for a in &autos {
        for v in b.within(1) {
            assert_eq!(a[v], v);
        }
    }
}

#[test]
fn small_balls_are_not_rigid_at_distance_two() {
    let b = ball(&SpineVertex::standard(4), 2, &Budget::unlimited()).unwrap();
    let report = rigidity_shadow(&b, 2, &Budget::unlimited()).unwrap();
    assert!(!report.counterexamples.is_empty());
}

#[test]
fn radius_four_ball_fixes_its_inner_ball() {
    let b = ball(&SpineVertex::standard(4), 4, &Budget::unlimited()).unwrap();
    let report = rigidity_shadow(&b, 2, &Budget::unlimited()).unwrap();
    assert_eq!(report.inner_size, 17);
    assert!(report.counterexamples.is_empty(), "{:?}", report.counterexamples);
}

#[test]
fn partial_conjugations_embed_the_inner_ball() {
    let b = ball(&SpineVertex::standard(4), 4, &Budget::unlimited()).unwrap();
    for (j, i) in [(1, 2), (3, 4), (4, 1)] {
        assert!(embeds_under(&b, &Automorphism::sigma(4, j, i).unwrap(), 2).unwrap());
    }
    assert!(embeds_under(&b, &Automorphism::identity(4), 4).unwrap());
}
