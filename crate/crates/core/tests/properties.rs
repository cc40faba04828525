use std::collections::HashSet;

use proptest::prelude::*;

use ksnake_core::extended::extended_s7;
use ksnake_core::{
    assemble_he_snake, kendall_distance, missing_codewords, verify_snake, Permutation, Transition,
    VerifyMode,
};

fn perm(len: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=len as u8).collect::<Vec<u8>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::new(&v).unwrap())
}

fn t(i: usize) -> Transition {
    Transition::new(i).unwrap()
}

proptest! {
    #[test]
    fn rewrite_identity_on_larger_groups(p in prop_oneof![perm(9), perm(11)]) {
        let n = p.len();
        let (a, b) = (t(n - 4), t(n - 2));
        let lhs = p.apply_inverse(a).unwrap().apply_transition(b).unwrap().apply_inverse(a).unwrap();
        let rhs = p.apply_inverse(b).unwrap().apply_transition(a).unwrap().apply_inverse(b).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn inverse_law_and_cost(p in perm(11), i in 2usize..=11) {
        let q = p.apply_transition(t(i)).unwrap();
        prop_assert_eq!(q.apply_inverse(t(i)).unwrap(), p);
        prop_assert_eq!(kendall_distance(&p, &q).unwrap(), i - 1);
        prop_assert_eq!(q.is_even() == p.is_even(), i % 2 == 1);
    }

    #[test]
    fn distance_is_symmetric(a in perm(11), b in perm(11)) {
        prop_assert_eq!(kendall_distance(&a, &b).unwrap(), kendall_distance(&b, &a).unwrap());
    }
}

#[test]
fn structural_and_full_modes_agree() {
    for s in [assemble_he_snake(2).unwrap(), assemble_he_snake(3).unwrap(), extended_s7().unwrap().snake] {
        let structural = verify_snake(&s, Some(s.len()), VerifyMode::Structural);
        let full = verify_snake(&s, Some(s.len()), VerifyMode::Full);
        assert!(structural.passed() && full.passed());
    }
}

#[test]
fn s5_missing_is_the_single_linkage() {
    let missing = missing_codewords(&assemble_he_snake(2).unwrap());
    assert_eq!(missing.len(), 3);
    assert!(missing.iter().all(|w| w.tail(2) == [2, 1]));
}

#[test]
fn extended_alphabet() {
    let s = extended_s7().unwrap().snake;
    let used: HashSet<usize> = s.histogram().into_keys().collect();
    assert!(used.is_subset(&HashSet::from([3, 5, 7])));
    let missing = missing_codewords(&s);
    assert_eq!(missing.len(), 3);
    assert!(missing.iter().all(|w| w.tail(2) == [2, 1]));
}

#[test]
fn he_s9_is_structurally_valid() {
    let s = assemble_he_snake(4).unwrap();
    assert_eq!(s.len(), 181433);
    assert!(verify_snake(&s, Some(181433), VerifyMode::Structural).passed());
    let keys: Vec<usize> = s.histogram().into_keys().collect();
    assert_eq!(keys, vec![7, 9]);
    assert_eq!(missing_codewords(&s).len(), 7);
}

#[test]
fn s9_endpoint_formula_matches_tracing() {
    // every edge is cross-checked against the chain index while building
    let chains = ksnake_core::build_all_chains(4).unwrap();
    let g = ksnake_core::build_chain_graph(&chains).unwrap();
    assert_eq!(g.edges().len(), 360 * 4);
}
