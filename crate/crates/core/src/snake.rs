//! Snakes as an initial permutation plus a cyclic transition sequence, and
//! the pointer-splicing table used to merge cycles of codewords.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::perm::{factorial, Permutation, Transition};

/// A cyclic Gray code given by its first codeword and the transitions
/// leading from each codeword to the next (the last one closes the cycle).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Snake {
    initial: Permutation,
    transitions: Vec<Transition>,
}

impl Snake {
    pub fn new(initial: Permutation, transitions: Vec<Transition>) -> Result<Self> {
        if let Some(t) = transitions.iter().find(|t| t.index() > initial.len()) {
            return Err(Error::TransitionOutOfRange {
                index: t.index(),
                len: initial.len(),
            });
        }
        Ok(Self { initial, transitions })
    }

    /// Derives the transitions of a cyclic codeword sequence.
    pub fn from_codewords(words: &[Permutation]) -> Result<Self> {
        let Some(&initial) = words.first() else {
            return Err(Error::Splice("empty codeword sequence".into()));
        };
        let mut transitions = Vec::with_capacity(words.len());
        for (k, w) in words.iter().enumerate() {
            let next = &words[(k + 1) % words.len()];
            let t = w.transition_to(next).ok_or(Error::NotATransition(*w, *next))?;
            transitions.push(t);
        }
        Ok(Self { initial, transitions })
    }

    pub fn initial(&self) -> Permutation {
        self.initial
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    /// Number of codewords.
    pub fn len(&self) -> usize {
        self.transitions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.transitions.is_empty()
    }

    /// Length of the codeword permutations, `2n+1`.
    pub fn degree(&self) -> usize {
        self.initial.len()
    }

    /// `π_0, .., π_{M-1}`; the closing transition is not applied.
    pub fn codewords(&self) -> Vec<Permutation> {
        let mut out = Vec::with_capacity(self.len());
        let mut cur = self.initial;
        for t in &self.transitions {
            out.push(cur);
            cur = cur.push(t.index());
        }
        out
    }

    /// Transition index -> occurrences.
    pub fn histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for t in &self.transitions {
            *h.entry(t.index()).or_default() += 1;
        }
        h
    }

    /// The same cycle read from `start`, if `start` is a codeword.
    pub fn rotated_to(&self, start: &Permutation) -> Option<Snake> {
        let k = self.codewords().iter().position(|w| w == start)?;
        let mut transitions = self.transitions.clone();
        transitions.rotate_left(k);
        Some(Snake { initial: *start, transitions })
    }
}

/// Successor table over all of `S_len`, indexed by lexicographic rank.
///
/// Each present codeword stores the transition to its successor. Merging
/// cycles is a three-way exchange of successors, see [`Splicer::rotate3`].
pub struct Splicer {
    degree: usize,
    next: Vec<u8>,
    count: usize,
}

impl Splicer {
    pub fn new(len: usize) -> Self {
        Self {
            degree: len,
            next: vec![0; factorial(len)],
            count: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.next[p.rank()] != 0
    }

    pub fn successor(&self, p: &Permutation) -> Option<Permutation> {
        match self.next[p.rank()] {
            0 => None,
            t => Some(p.push(t as usize)),
        }
    }

    pub fn insert_snake(&mut self, snake: &Snake) -> Result<()> {
        if snake.degree() != self.degree {
            return Err(Error::LengthMismatch {
                left: snake.degree(),
                right: self.degree,
            });
        }
        let mut cur = snake.initial();
        for t in snake.transitions() {
            let slot = &mut self.next[cur.rank()];
            if *slot != 0 {
                return Err(Error::Splice(format!("{cur} inserted twice")));
            }
            *slot = t.index() as u8;
            self.count += 1;
            cur = cur.push(t.index());
        }
        Ok(())
    }

    /// Exchanges successors: `u -> succ(v)`, `v -> succ(w)`, `w -> succ(u)`.
    ///
    /// When `u`, `v`, `w` lie on three distinct cycles the result is one
    /// cycle; on a single cycle traversed in the order `u, v, w` the cycle
    /// stays whole.
    pub fn rotate3(&mut self, u: &Permutation, v: &Permutation, w: &Permutation) -> Result<()> {
        let succ = |p: &Permutation| {
            self.successor(p)
                .ok_or_else(|| Error::Splice(format!("{p} is not present")))
        };
        let (su, sv, sw) = (succ(u)?, succ(v)?, succ(w)?);
        let link = |from: &Permutation, to: &Permutation| {
            from.transition_to(to)
                .ok_or(Error::NotATransition(*from, *to))
        };
        let (tu, tv, tw) = (link(u, &sv)?, link(v, &sw)?, link(w, &su)?);
        self.next[u.rank()] = tu.index() as u8;
        self.next[v.rank()] = tv.index() as u8;
        self.next[w.rank()] = tw.index() as u8;
        Ok(())
    }

    /// Follows successors from `start` until it returns.
    pub fn walk(&self, start: &Permutation) -> Result<Snake> {
        let mut transitions = Vec::new();
        let mut cur = *start;
        loop {
            let t = self.next[cur.rank()];
            if t == 0 {
                return Err(Error::Splice(format!("walk fell off at {cur}")));
            }
            transitions.push(Transition::new(t as usize)?);
            cur = cur.push(t as usize);
            if cur == *start {
                break;
            }
            if transitions.len() > self.count {
                return Err(Error::Splice(format!("walk from {start} does not close")));
            }
        }
        Snake::new(*start, transitions)
    }
}
