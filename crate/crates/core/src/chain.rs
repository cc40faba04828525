//! Chains: one necklace from every class but `[2,1]`, merged along the
//! nearly spanning tree.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::merge_tree::{build_merge_tree, HyperEdge, MergeTree};
use crate::partition::{check_n, enumerate_necklaces, ClassLabel, Necklace};
use crate::perm::{Cycle, Permutation};
use crate::snake::Snake;

/// Largest `n` for which rank-indexed tables over `S_{2n+1}` are built.
pub const MAX_CONSTRUCTION_N: usize = 5;

const NO_OWNER: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    name: Cycle,
    snake: Snake,
}

impl Chain {
    /// Front cycle of the chain's `[1,2]`-necklace.
    pub fn name(&self) -> &Cycle {
        &self.name
    }

    pub fn snake(&self) -> &Snake {
        &self.snake
    }

    pub fn len(&self) -> usize {
        self.snake.len()
    }

    pub fn is_empty(&self) -> bool {
        self.snake.is_empty()
    }

    pub fn codewords(&self) -> Vec<Permutation> {
        self.snake.codewords()
    }
}

/// A chain under construction, kept as its cyclic codeword sequence.
#[derive(Debug, Clone)]
pub struct ChainInProgress {
    name: Cycle,
    words: Vec<Permutation>,
    present: HashSet<ClassLabel>,
}

impl ChainInProgress {
    pub fn start(necklace: &Necklace) -> Self {
        Self {
            name: necklace.front().clone(),
            words: necklace.codewords(),
            present: HashSet::from([necklace.class()]),
        }
    }

    pub fn codewords(&self) -> &[Permutation] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains_class(&self, c: ClassLabel) -> bool {
        self.present.contains(&c)
    }

    /// Inserts the two missing necklaces of `edge` after the unique codeword
    /// `[β,z,x,y]` of the present `[x,y]`-necklace:
    /// `t_{2n+1}`, the `[z,x]`-necklace, `t_{2n+1}`, the `[y,z]`-necklace,
    /// `t_{2n+1}` back to `[z,β,x,y]`.
    pub fn splice_edge(&mut self, edge: &HyperEdge) -> Result<()> {
        let present = edge.classes().iter().filter(|c| self.present.contains(c)).count();
        if present != 1 {
            return Err(Error::ConstructionOrder { edge: *edge, present });
        }
        let e = edge
            .rotations()
            .into_iter()
            .find(|r| self.present.contains(&ClassLabel::new(r.x, r.y)))
            .unwrap();
        let (x, y, z) = (e.x, e.y, e.z);
        let len = self.words[0].len();
        let k = len - 2;

        let mut hits = self
            .words
            .iter()
            .enumerate()
            .filter(|(_, w)| w.tail(3) == [z, x, y])
            .map(|(i, _)| i);
        let (Some(at), None) = (hits.next(), hits.next()) else {
            let found = self.words.iter().filter(|w| w.tail(3) == [z, x, y]).count();
            return Err(Error::SplicePoint { edge: *edge, found });
        };
        let beta = &self.words[at].as_slice()[..k - 1];

        let mut inserted = Vec::with_capacity(2 * k);
        for (head, tail) in [(y, [z, x]), (x, [y, z])] {
            let mut front = vec![head];
            front.extend_from_slice(beta);
            let mut cur = Permutation::from_parts(&front, &tail)?;
            for _ in 0..k {
                inserted.push(cur);
                cur = cur.push(k);
            }
        }
        self.words.splice(at + 1..at + 1, inserted);
        self.present.insert(ClassLabel::new(z, x));
        self.present.insert(ClassLabel::new(y, z));
        Ok(())
    }

    pub fn finish(self) -> Result<Chain> {
        Ok(Chain {
            name: self.name,
            snake: Snake::from_codewords(&self.words)?,
        })
    }
}

/// Processes every tree edge in order starting from a `[1,2]`-necklace.
pub fn build_chain(tree: &MergeTree, start: &Necklace) -> Result<Chain> {
    if start.class() != ClassLabel::new(1, 2) || start.len() != 2 * tree.n() - 1 {
        return Err(Error::InvalidParameter(format!(
            "chains start from a [1,2]-necklace of S_{}, got {start}",
            2 * tree.n() + 1
        )));
    }
    let mut chain = ChainInProgress::start(start);
    for e in tree.edges() {
        chain.splice_edge(e)?;
    }
    chain.finish()
}

/// All chains of `S_{2n+1}` with a codeword -> chain lookup.
pub struct ChainSet {
    n: usize,
    chains: Vec<Chain>,
    owner: Vec<u32>,
    by_name: HashMap<Cycle, usize>,
}

impl ChainSet {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Chains sorted by name.
    pub fn chains(&self) -> &[Chain] {
        &self.chains
    }

    pub fn chain(&self, index: usize) -> &Chain {
        &self.chains[index]
    }

    pub fn len(&self) -> usize {
        self.chains.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chains.is_empty()
    }

    pub fn owner_of(&self, p: &Permutation) -> Option<usize> {
        if p.len() != 2 * self.n + 1 {
            return None;
        }
        match self.owner[p.rank()] {
            NO_OWNER => None,
            i => Some(i as usize),
        }
    }

    pub fn index_of(&self, name: &Cycle) -> Option<usize> {
        self.by_name.get(name).copied()
    }
}

pub fn build_all_chains(n: usize) -> Result<ChainSet> {
    check_n(n, 2)?;
    if n > MAX_CONSTRUCTION_N {
        return Err(Error::InvalidParameter(format!(
            "chain tables are limited to n <= {MAX_CONSTRUCTION_N}"
        )));
    }
    let tree = build_merge_tree(n)?;
    let starts = enumerate_necklaces(n, ClassLabel::new(1, 2))?;
    let chains: Vec<Chain> = starts
        .par_iter()
        .map(|nk| build_chain(&tree, nk))
        .collect::<Result<_>>()?;

    let len = 2 * n + 1;
    let mut owner = vec![NO_OWNER; crate::perm::factorial(len)];
    let mut by_name = HashMap::with_capacity(chains.len());
    for (i, chain) in chains.iter().enumerate() {
        by_name.insert(chain.name.clone(), i);
        for w in chain.codewords() {
            let slot = &mut owner[w.rank()];
            if *slot != NO_OWNER {
                return Err(Error::Splice(format!(
                    "{w} lies in chains {} and {}",
                    chains[*slot as usize].name, chain.name
                )));
            }
            *slot = i as u32;
        }
    }
    Ok(ChainSet { n, chains, owner, by_name })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::{class_of, necklace_of};

    fn p(v: &[u8]) -> Permutation {
        Permutation::new(v).unwrap()
    }

    fn start_s5() -> Necklace {
        necklace_of(&p(&[3, 4, 5, 1, 2])).unwrap()
    }

    #[test]
    fn first_splice_in_s5() {
        let mut c = ChainInProgress::start(&start_s5());
        c.splice_edge(&HyperEdge::new(1, 2, 3)).unwrap();
        let want: Vec<Permutation> = [
            [3, 4, 5, 1, 2],
            [5, 3, 4, 1, 2],
            [4, 5, 3, 1, 2],
            [2, 4, 5, 3, 1],
            [5, 2, 4, 3, 1],
            [4, 5, 2, 3, 1],
            [1, 4, 5, 2, 3],
            [5, 1, 4, 2, 3],
            [4, 5, 1, 2, 3],
        ]
        .iter()
        .map(|v| p(v))
        .collect();
        assert_eq!(c.codewords(), &want[..]);
    }

    #[test]
    fn splice_growth_and_transitions() {
        let tree = build_merge_tree(3).unwrap();
        let start = necklace_of(&p(&[3, 4, 5, 6, 7, 1, 2])).unwrap();
        let mut c = ChainInProgress::start(&start);
        for e in tree.edges() {
            let before = c.len();
            c.splice_edge(e).unwrap();
            assert_eq!(c.len(), before + 2 * 5);
        }
        let chain = c.finish().unwrap();
        assert_eq!(chain.len(), 205);
        let h = chain.snake().histogram();
        assert_eq!(h.keys().copied().collect::<Vec<_>>(), vec![5, 7]);
        assert_eq!(h[&7], 3 * tree.edges().len());
    }

    #[test]
    fn construction_order_errors() {
        let mut c = ChainInProgress::start(&start_s5());
        let err = c.splice_edge(&HyperEdge::new(1, 5, 3)).unwrap_err();
        assert!(matches!(err, Error::ConstructionOrder { present: 0, .. }));
        c.splice_edge(&HyperEdge::new(1, 2, 3)).unwrap();
        let err = c.splice_edge(&HyperEdge::new(1, 2, 3)).unwrap_err();
        assert!(matches!(err, Error::ConstructionOrder { present: 3, .. }));
    }

    #[test]
    fn build_chain_requires_class_12() {
        let tree = build_merge_tree(2).unwrap();
        let wrong = necklace_of(&p(&[4, 3, 5, 2, 1])).unwrap();
        assert!(build_chain(&tree, &wrong).is_err());
    }

    #[test]
    fn chains_partition_everything_but_class_21() {
        for n in 2..=3 {
            let set = build_all_chains(n).unwrap();
            let per_chain = (2 * n - 1) * (2 * n * (2 * n + 1) - 1);
            assert_eq!(set.len(), (1..=2 * n - 2).product::<usize>() / 2);
            let mut total = 0;
            for (i, chain) in set.chains().iter().enumerate() {
                assert_eq!(chain.len(), per_chain);
                let mut classes = HashSet::new();
                for w in chain.codewords() {
                    assert_eq!(set.owner_of(&w), Some(i));
                    classes.insert(necklace_of(&w).unwrap());
                }
                // one necklace from every class but [2,1]
                assert_eq!(classes.len(), 2 * n * (2 * n + 1) - 1);
                total += chain.len();
            }
            let len = 2 * n + 1;
            for q in Permutation::all_even(len) {
                let in_21 = class_of(&q).unwrap() == ClassLabel::new(2, 1);
                assert_eq!(set.owner_of(&q).is_none(), in_21, "{q}");
            }
            assert_eq!(total + (1..=2 * n - 1).product::<usize>() / 2, (1..=len).product::<usize>() / 2);
        }
    }

    #[test]
    fn lookup_by_codeword() {
        let set = build_all_chains(3).unwrap();
        let c1 = Cycle::new(vec![4, 5, 6, 7, 3]).unwrap();
        assert_eq!(set.owner_of(&p(&[4, 5, 6, 7, 3, 1, 2])), set.index_of(&c1));
        assert_eq!(set.owner_of(&p(&[4, 5, 6, 7, 3, 2, 1])), None);
    }
}
