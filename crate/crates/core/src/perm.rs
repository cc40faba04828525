//! Permutations in vector notation, push-to-the-top transitions and the
//! Kendall tau metric.
//!
//! Positions and values are 1-based in every public interface: for
//! `p = [a_1, .., a_n]`, `p.get(i) == a_i`.

use std::fmt;

use crate::error::{Error, Result};

/// Longest permutation representable inline.
pub const MAX_LEN: usize = 16;

/// A permutation of `[n] = {1..n}` in vector notation.
///
/// Stored inline so that codeword lists and hash sets stay allocation free.
/// Ordering is lexicographic on the entries (for equal lengths).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    len: u8,
    entries: [u8; MAX_LEN],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Permutation {
    /// Validates that `entries` is a bijection on `1..=entries.len()`.
    pub fn new(entries: &[u8]) -> Result<Self> {
        let n = entries.len();
        let bad = || Error::NotAPermutation {
            entries: entries.to_vec(),
            len: n,
        };
        if n == 0 || n > MAX_LEN {
            return Err(bad());
        }
        let mut seen = [false; MAX_LEN + 1];
        for &v in entries {
            let v = v as usize;
            if v == 0 || v > n || seen[v] {
                return Err(bad());
            }
            seen[v] = true;
        }
        Ok(Self::from_slice_unchecked(entries))
    }

    pub(crate) fn from_slice_unchecked(entries: &[u8]) -> Self {
        let mut buf = [0u8; MAX_LEN];
        buf[..entries.len()].copy_from_slice(entries);
        Self {
            len: entries.len() as u8,
            entries: buf,
        }
    }

    /// Concatenates a front segment and a tail into one permutation.
    pub fn from_parts(front: &[u8], tail: &[u8]) -> Result<Self> {
        let mut v = Vec::with_capacity(front.len() + tail.len());
        v.extend_from_slice(front);
        v.extend_from_slice(tail);
        Self::new(&v)
    }

    pub fn identity(n: usize) -> Self {
        assert!((1..=MAX_LEN).contains(&n), "length {n} unsupported");
        let mut buf = [0u8; MAX_LEN];
        for (i, slot) in buf.iter_mut().take(n).enumerate() {
            *slot = i as u8 + 1;
        }
        Self {
            len: n as u8,
            entries: buf,
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn as_slice(&self) -> &[u8] {
        &self.entries[..self.len as usize]
    }

    /// Entry at 1-based position `pos`.
    #[inline]
    pub fn get(&self, pos: usize) -> u8 {
        assert!(pos >= 1 && pos <= self.len(), "position {pos} out of range");
        self.entries[pos - 1]
    }

    /// 1-based position of `value`.
    pub fn position_of(&self, value: u8) -> Option<usize> {
        self.as_slice().iter().position(|&v| v == value).map(|i| i + 1)
    }

    /// The last `k` entries.
    pub fn tail(&self, k: usize) -> &[u8] {
        &self.as_slice()[self.len() - k..]
    }

    fn check_index(&self, t: Transition) -> Result<()> {
        if t.index() > self.len() {
            Err(Error::TransitionOutOfRange {
                index: t.index(),
                len: self.len(),
            })
        } else {
            Ok(())
        }
    }

    /// `t_i`: moves the entry at position `i` to the front.
    pub fn apply_transition(&self, t: Transition) -> Result<Self> {
        self.check_index(t)?;
        Ok(self.push(t.index()))
    }

    /// `t_i^{-1}`: moves the front entry to position `i`.
    pub fn apply_inverse(&self, t: Transition) -> Result<Self> {
        self.check_index(t)?;
        Ok(self.push_inverse(t.index()))
    }

    #[inline]
    pub(crate) fn push(&self, index: usize) -> Self {
        let mut out = *self;
        out.entries[..index].rotate_right(1);
        out
    }

    #[inline]
    pub(crate) fn push_inverse(&self, index: usize) -> Self {
        let mut out = *self;
        out.entries[..index].rotate_left(1);
        out
    }

    /// The transition `t_i` with `t_i(self) == next`, if any.
    pub fn transition_to(&self, next: &Permutation) -> Option<Transition> {
        if self.len != next.len {
            return None;
        }
        let i = self.position_of(next.get(1))?;
        if i < 2 {
            return None;
        }
        (self.push(i) == *next).then_some(Transition(i as u8))
    }

    /// Composition `self ∘ other`: `result(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Self> {
        if self.len != other.len {
            return Err(Error::LengthMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(other.relabel(|v| self.get(v as usize)))
    }

    /// Replaces every value `v` by `map(v)`. The caller guarantees `map` is
    /// a bijection on the values present.
    pub(crate) fn relabel(&self, map: impl Fn(u8) -> u8) -> Self {
        let mut out = *self;
        for e in out.entries[..self.len()].iter_mut() {
            *e = map(*e);
        }
        out
    }

    pub fn inverse(&self) -> Self {
        let mut out = *self;
        for (i, &v) in self.as_slice().iter().enumerate() {
            out.entries[v as usize - 1] = i as u8 + 1;
        }
        out
    }

    pub fn inversions(&self) -> usize {
        count_inversions(self.as_slice())
    }

    pub fn parity(&self) -> Parity {
        if self.inversions().is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    #[inline]
    pub fn is_even(&self) -> bool {
        self.parity() == Parity::Even
    }

    /// Lexicographic rank in `0..n!`.
    pub fn rank(&self) -> usize {
        let s = self.as_slice();
        let n = s.len();
        let mut rank = 0usize;
        for i in 0..n {
            let smaller = s[i + 1..].iter().filter(|&&v| v < s[i]).count();
            rank = rank * (n - i) + smaller;
        }
        rank
    }

    /// Inverse of [`Permutation::rank`].
    pub fn unrank(n: usize, mut rank: usize) -> Self {
        let mut digits = [0usize; MAX_LEN];
        for i in (0..n).rev() {
            let base = n - i;
            digits[i] = rank % base;
            rank /= base;
        }
        let mut pool: Vec<u8> = (1..=n as u8).collect();
        let mut buf = [0u8; MAX_LEN];
        for i in 0..n {
            buf[i] = pool.remove(digits[i]);
        }
        Self {
            len: n as u8,
            entries: buf,
        }
    }

    /// Advances to the lexicographic successor; false once the last
    /// permutation is reached.
    pub fn next_lex(&mut self) -> bool {
        let s = &mut self.entries[..self.len as usize];
        let Some(i) = (1..s.len()).rev().find(|&i| s[i - 1] < s[i]) else {
            return false;
        };
        let j = (i..s.len()).rev().find(|&j| s[j] > s[i - 1]).unwrap();
        s.swap(i - 1, j);
        s[i..].reverse();
        true
    }

    /// All of `S_n` in lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = Permutation> {
        let mut cur = Some(Permutation::identity(n));
        std::iter::from_fn(move || {
            let out = cur?;
            let mut next = out;
            cur = next.next_lex().then_some(next);
            Some(out)
        })
    }

    /// All of `A_n` in lexicographic order.
    pub fn all_even(n: usize) -> impl Iterator<Item = Permutation> {
        Self::all(n).filter(|p| p.is_even())
    }
}

pub(crate) fn count_inversions(s: &[u8]) -> usize {
    let mut count = 0;
    for i in 0..s.len() {
        for j in i + 1..s.len() {
            if s[i] > s[j] {
                count += 1;
            }
        }
    }
    count
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, v) in self.as_slice().iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("]")
    }
}

/// Kendall tau distance: the minimum number of adjacent transpositions
/// turning `a` into `b`.
pub fn kendall_distance(a: &Permutation, b: &Permutation) -> Result<usize> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    // Relative order of b's entries as positions in a.
    let pos = a.inverse();
    let relative: Vec<u8> = b.as_slice().iter().map(|&v| pos.get(v as usize)).collect();
    Ok(count_inversions(&relative))
}

/// Push-to-the-top transition `t_i`, `i >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transition(u8);

impl Transition {
    pub fn new(index: usize) -> Result<Self> {
        if !(2..=MAX_LEN).contains(&index) {
            return Err(Error::TransitionOutOfRange {
                index,
                len: MAX_LEN,
            });
        }
        Ok(Self(index as u8))
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn is_odd(self) -> bool {
        self.0 % 2 == 1
    }
}

impl fmt::Display for Transition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t{}", self.0)
    }
}

/// A cyclic sequence of distinct values.
///
/// Serves both as a cycle in cyclic notation, e.g. `(5 6 7)` acting on
/// values, and as the cyclic order naming a necklace or chain. Rotations
/// compare equal: the stored form starts with the minimum element.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cycle {
    elements: Vec<u8>,
}

impl Cycle {
    pub fn new(elements: impl Into<Vec<u8>>) -> Result<Self> {
        let mut elements = elements.into();
        let mut sorted = elements.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if elements.is_empty() || sorted.len() != elements.len() {
            return Err(Error::InvalidCycle(elements));
        }
        let min = elements.iter().enumerate().min_by_key(|(_, &v)| v).unwrap().0;
        elements.rotate_left(min);
        Ok(Self { elements })
    }

    pub fn elements(&self) -> &[u8] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, v: u8) -> bool {
        self.elements.contains(&v)
    }

    /// Image of `v` under the cycle viewed as a permutation.
    pub fn image(&self, v: u8) -> u8 {
        match self.elements.iter().position(|&e| e == v) {
            Some(i) => self.elements[(i + 1) % self.elements.len()],
            None => v,
        }
    }

    /// The same cyclic order with every value relabeled by `perm`.
    pub fn relabeled_by(&self, perm: &Cycle) -> Cycle {
        let mapped: Vec<u8> = self.elements.iter().map(|&v| perm.image(v)).collect();
        Cycle::new(mapped).expect("relabeling by a cycle is a bijection")
    }

    /// The sequence read starting from `start`.
    pub fn rotated_to(&self, start: u8) -> Option<Vec<u8>> {
        let i = self.elements.iter().position(|&v| v == start)?;
        let mut out = self.elements.clone();
        out.rotate_left(i);
        Some(out)
    }

    /// Renders as `[a,b,c]` starting from `start` when present.
    pub fn display_from(&self, start: u8) -> String {
        let seq = self.rotated_to(start).unwrap_or_else(|| self.elements.clone());
        let body: Vec<String> = seq.iter().map(|v| v.to_string()).collect();
        format!("[{}]", body.join(","))
    }
}

impl fmt::Debug for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, v) in self.elements.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(")")
    }
}
