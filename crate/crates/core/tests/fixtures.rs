use std::collections::{BTreeMap, HashSet};

use ksnake_core::chain::build_all_chains;
use ksnake_core::extended::{
    apply_sew_rewrite, applicable_rewrites, embed_inner_snake, insert_chain_pairs,
    insertion_sites, InsertionSite, S7_MAP, S7_PAIRS, S7_PIVOT,
};
use ksnake_core::{
    assemble_he_snake, verify_snake, Cycle, EmbeddingMap, Permutation, SewRewrite, Snake,
    VerifyMode,
};

fn fixture(name: &str) -> Vec<Permutation> {
    let path = format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(path)
        .unwrap()
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| {
            let v: Vec<u8> = l.split_whitespace().map(|t| t.parse().unwrap()).collect();
            Permutation::new(&v).unwrap()
        })
        .collect()
}

fn snake(name: &str) -> Snake {
    Snake::from_codewords(&fixture(name)).unwrap()
}

fn s7_map() -> EmbeddingMap {
    EmbeddingMap::new(S7_MAP.to_vec()).unwrap()
}

#[test]
fn tables_are_valid_snakes() {
    for (name, size) in [
        ("s5_chain_57.txt", 57),
        ("s7_embedded_57.txt", 57),
        ("s7_embedded_sewn_57.txt", 57),
    ] {
        let r = verify_snake(&snake(name), Some(size), VerifyMode::Full);
        assert!(r.passed(), "{name}: {r}");
    }
}

#[test]
fn s5_table_is_the_constructed_snake() {
    let mut built = assemble_he_snake(2).unwrap().codewords();
    let table = fixture("s5_chain_57.txt");
    let start = built.iter().position(|w| *w == table[0]).unwrap();
    built.rotate_left(start);
    assert_eq!(built, table);
}

#[test]
fn embedding_reproduces_table() {
    let embedded = embed_inner_snake(&snake("s5_chain_57.txt"), &s7_map()).unwrap();
    assert_eq!(embedded.codewords(), fixture("s7_embedded_57.txt"));
    assert!(embedded.codewords().iter().all(|w| w.tail(2) == [2, 1] && w.is_even()));
}

#[test]
fn rewrite_reproduces_table() {
    let r = SewRewrite::new(Permutation::new(&S7_PIVOT).unwrap()).unwrap();
    let before = snake("s7_embedded_57.txt");
    let after = apply_sew_rewrite(&before, &r).unwrap();
    let table = snake("s7_embedded_sewn_57.txt");
    assert_eq!(after.rotated_to(&table.initial()).unwrap(), table);
    // three t_3 seams become t_5
    assert_eq!(before.histogram(), BTreeMap::from([(3, 30), (5, 27)]));
    assert_eq!(after.histogram(), BTreeMap::from([(3, 27), (5, 30)]));
}

#[test]
fn sewn_table_sites_absorb_the_listed_pairs() {
    let chains = build_all_chains(3).unwrap();
    let sewn = snake("s7_embedded_sewn_57.txt");
    let sites = insertion_sites(&sewn, &chains);
    assert_eq!(sites.len(), 13);
    assert!(sites.iter().all(|s| s.sign() == 6 || s.sign() == 7));
    let mut chosen = Vec::new();
    for (p, q) in S7_PAIRS {
        let a = chains.index_of(&Cycle::new(p.to_vec()).unwrap()).unwrap();
        let b = chains.index_of(&Cycle::new(q.to_vec()).unwrap()).unwrap();
        let site = sites.iter().find(|s| s.chains == (a, b) || s.chains == (b, a)).unwrap();
        chosen.push(*site);
    }
    // no other choice of six sites covers all chains
    fn perfect(k: usize, used: u32, sites: &[InsertionSite]) -> usize {
        if used.count_ones() == 12 {
            return 1;
        }
        if k == sites.len() {
            return 0;
        }
        let (a, b) = sites[k].chains;
        let take = if used & (1 << a | 1 << b) == 0 { perfect(k + 1, used | 1 << a | 1 << b, sites) } else { 0 };
        take + perfect(k + 1, used, sites)
    }
    assert_eq!(perfect(0, 0, &sites), 1);
    let full = insert_chain_pairs(&sewn, &chosen, &chains).unwrap();
    assert_eq!(full.len(), 2517);
    let r = verify_snake(&full, Some(2517), VerifyMode::Full);
    assert!(r.passed(), "{r}");
}

#[test]
fn every_applicable_rewrite_is_sound() {
    let inner = assemble_he_snake(2).unwrap();
    let embedded = embed_inner_snake(&inner, &s7_map()).unwrap();
    let words: HashSet<_> = embedded.codewords().into_iter().collect();
    let rewrites = applicable_rewrites(&embedded);
    assert!(!rewrites.is_empty());
    for r in rewrites {
        let after = apply_sew_rewrite(&embedded, &r).unwrap();
        let set: HashSet<_> = after.codewords().into_iter().collect();
        assert_eq!(set, words);
        assert!(verify_snake(&after, Some(57), VerifyMode::Full).passed());
        let (b, a) = (embedded.histogram(), after.histogram());
        assert_eq!(a[&5], b[&5] + 3);
        assert_eq!(a[&3] + 3, b[&3]);
    }
}
