//! Classes `[x,y]` (even permutations ending in `x, y`) and necklaces
//! (orbits of `t_{2n-1}` inside a class).

use std::fmt;

use crate::error::{Error, Result};
use crate::perm::{Cycle, Permutation};

/// Largest `n` for which the `S_{2n+1}` machinery is available.
pub const MAX_N: usize = 7;

pub(crate) fn check_n(n: usize, min: usize) -> Result<()> {
    if n < min || n > MAX_N {
        return Err(Error::InvalidParameter(format!(
            "n = {n} outside supported range {min}..={MAX_N}"
        )));
    }
    Ok(())
}

/// `2n + 1` for a permutation length, when odd and at least 5.
pub(crate) fn half_of(len: usize) -> Result<usize> {
    if len < 5 || len.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!(
            "length {len} is not an odd number >= 5"
        )));
    }
    Ok((len - 1) / 2)
}

/// Class vertex `[x,y]`: `x` at position `2n`, `y` at position `2n+1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassLabel {
    pub x: u8,
    pub y: u8,
}

impl ClassLabel {
    pub fn new(x: u8, y: u8) -> Self {
        Self { x, y }
    }

    pub(crate) fn validate(&self, len: usize) -> Result<()> {
        let ok = |v: u8| v >= 1 && v as usize <= len;
        if self.x == self.y || !ok(self.x) || !ok(self.y) {
            return Err(Error::InvalidLabel {
                x: self.x,
                y: self.y,
                len,
            });
        }
        Ok(())
    }

    /// Elements of `[2n+1]` not in the label, ascending.
    pub fn front_elements(&self, len: usize) -> Vec<u8> {
        (1..=len as u8).filter(|&v| v != self.x && v != self.y).collect()
    }
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.x, self.y)
    }
}

/// All `2n(2n+1)` labels of `S_{2n+1}`.
pub fn class_labels(n: usize) -> Vec<ClassLabel> {
    let len = (2 * n + 1) as u8;
    let mut out = Vec::new();
    for x in 1..=len {
        for y in 1..=len {
            if x != y {
                out.push(ClassLabel::new(x, y));
            }
        }
    }
    out
}

pub fn class_of(p: &Permutation) -> Result<ClassLabel> {
    half_of(p.len())?;
    if !p.is_even() {
        return Err(Error::OddPermutation(*p));
    }
    let len = p.len();
    Ok(ClassLabel::new(p.get(len - 1), p.get(len)))
}

/// A `t_{2n-1}` orbit: the rotations of a fixed cyclic front segment
/// followed by the class tail.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Necklace {
    class: ClassLabel,
    front: Cycle,
}

impl Necklace {
    pub(crate) fn from_parts(class: ClassLabel, front: Cycle) -> Self {
        Self { class, front }
    }

    pub fn class(&self) -> ClassLabel {
        self.class
    }

    /// Cyclic order of the first `2n-1` positions.
    pub fn front(&self) -> &Cycle {
        &self.front
    }

    /// Number of codewords, `2n-1`.
    pub fn len(&self) -> usize {
        self.front.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    fn with_front(&self, front: &[u8]) -> Permutation {
        let mut v = front.to_vec();
        v.push(self.class.x);
        v.push(self.class.y);
        Permutation::from_slice_unchecked(&v)
    }

    /// The rotation whose first entry is the minimum front element.
    pub fn representative(&self) -> Permutation {
        self.with_front(self.front.elements())
    }

    /// Codewords in `t_{2n-1}` order starting from the representative.
    pub fn codewords(&self) -> Vec<Permutation> {
        let k = self.front.len();
        let mut cur = self.representative();
        let mut out = Vec::with_capacity(k);
        for _ in 0..k {
            out.push(cur);
            cur = cur.push(k);
        }
        out
    }

    /// The rotation with `v` in the last front position.
    pub fn codeword_ending_with(&self, v: u8) -> Option<Permutation> {
        let mut seq = self.front.rotated_to(v)?;
        seq.rotate_left(1);
        Some(self.with_front(&seq))
    }

    /// The rotation with `v` in the first position.
    pub fn codeword_starting_with(&self, v: u8) -> Option<Permutation> {
        Some(self.with_front(&self.front.rotated_to(v)?))
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        let len = p.len();
        len == self.front.len() + 2
            && p.get(len - 1) == self.class.x
            && p.get(len) == self.class.y
            && Cycle::new(p.as_slice()[..len - 2].to_vec()).ok().as_ref() == Some(&self.front)
    }
}

impl fmt::Display for Necklace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let seq: Vec<String> = self.front.elements().iter().map(|v| v.to_string()).collect();
        write!(f, "[{}]-{}", seq.join(","), self.class)
    }
}

pub fn necklace_of(p: &Permutation) -> Result<Necklace> {
    let class = class_of(p)?;
    let front = Cycle::new(p.as_slice()[..p.len() - 2].to_vec())?;
    Ok(Necklace { class, front })
}

/// Every necklace of class `label` in `S_{2n+1}`, sorted by representative.
pub fn enumerate_necklaces(n: usize, label: ClassLabel) -> Result<Vec<Necklace>> {
    check_n(n, 2)?;
    let len = 2 * n + 1;
    label.validate(len)?;
    let front = label.front_elements(len);
    let (first, rest) = front.split_first().unwrap();
    let mut out = Vec::new();
    // Arrangements of the non-minimal front elements, first element fixed.
    for perm in Permutation::all(rest.len()) {
        let mut seq = Vec::with_capacity(len);
        seq.push(*first);
        seq.extend(perm.as_slice().iter().map(|&i| rest[i as usize - 1]));
        seq.push(label.x);
        seq.push(label.y);
        let word = Permutation::from_slice_unchecked(&seq);
        if word.is_even() {
            out.push(Necklace {
                class: label,
                front: Cycle::new(seq[..len - 2].to_vec())?,
            });
        }
    }
    out.sort_by_key(|nk| nk.representative());
    Ok(out)
}
