//! Checks a snake against the definitions directly, using only permutation
//! arithmetic.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;

use crate::perm::{factorial, kendall_distance, Permutation};
use crate::snake::Snake;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyMode {
    /// Closure, distinctness, odd indices, parity and size.
    Structural,
    /// Structural checks plus every pairwise Kendall distance.
    Full,
}

impl VerifyMode {
    /// Full below `S_9`.
    pub fn default_for(len: usize) -> Self {
        if len <= 7 {
            Self::Full
        } else {
            Self::Structural
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// Walking all transitions from the first codeword ends elsewhere.
    Closure { start: Permutation, end: Permutation },
    /// Codeword positions `first < second` hold equal or too-close words.
    Pair { first: usize, second: usize, words: (Permutation, Permutation), distance: usize },
    EvenIndex { position: usize, index: usize },
    OddCodeword { position: usize, word: Permutation },
    Size { declared: usize, actual: usize },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Closure { start, end } => write!(f, "walk from {start} ends at {end}"),
            Self::Pair { first, second, words, distance } => write!(
                f,
                "codewords #{first} {} and #{second} {} at distance {distance}",
                words.0, words.1
            ),
            Self::EvenIndex { position, index } => write!(f, "transition #{position} is t{index}"),
            Self::OddCodeword { position, word } => write!(f, "codeword #{position} {word} is odd"),
            Self::Size { declared, actual } => write!(f, "declared {declared}, actual {actual}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub witness: Option<Witness>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub mode: VerifyMode,
    pub size: usize,
    pub checks: Vec<Check>,
    /// Pairs compared in full mode.
    pub pairs_checked: usize,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed())
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "mode: {:?}, size: {}", self.mode, self.size)?;
        for c in &self.checks {
            match &c.witness {
                None => writeln!(f, "  pass  {}", c.name)?,
                Some(w) => writeln!(f, "  FAIL  {}: {w}", c.name)?,
            }
        }
        if self.mode == VerifyMode::Full {
            writeln!(f, "  pairs checked: {}", self.pairs_checked)?;
        }
        write!(f, "result: {}", if self.passed() { "ok" } else { "failed" })
    }
}

pub const CLOSURE: &str = "closure";
pub const DISTINCT: &str = "distinct";
pub const ODD_INDICES: &str = "odd-indices-even-codewords";
pub const DISTANCE: &str = "pairwise-distance";
pub const SIZE: &str = "size";

fn walk(s: &Snake) -> (Vec<Permutation>, Permutation) {
    let mut words = Vec::with_capacity(s.len());
    let mut cur = s.initial();
    for &t in s.transitions() {
        words.push(cur);
        cur = cur.apply_transition(t).expect("snake transitions are in range");
    }
    (words, cur)
}

/// Runs every check and reports each with a witness on failure.
/// `declared_size` is compared when present.
pub fn verify_snake(s: &Snake, declared_size: Option<usize>, mode: VerifyMode) -> VerificationReport {
    let (words, end) = walk(s);
    let mut checks = Vec::new();

    let closure = (end != s.initial()).then_some(Witness::Closure { start: s.initial(), end });
    checks.push(Check { name: CLOSURE, witness: closure });

    let mut seen: HashMap<Permutation, usize> = HashMap::with_capacity(words.len());
    let mut dup = None;
    for (i, w) in words.iter().enumerate() {
        if let Some(&j) = seen.get(w) {
            dup = Some(Witness::Pair { first: j, second: i, words: (*w, *w), distance: 0 });
            break;
        }
        seen.insert(*w, i);
    }
    checks.push(Check { name: DISTINCT, witness: dup });

    let odd = s
        .transitions()
        .iter()
        .position(|t| !t.is_odd())
        .map(|position| Witness::EvenIndex { position, index: s.transitions()[position].index() })
        .or_else(|| {
            words
                .iter()
                .position(|w| !w.is_even())
                .map(|position| Witness::OddCodeword { position, word: words[position] })
        });
    checks.push(Check { name: ODD_INDICES, witness: odd });

    let mut pairs_checked = 0;
    if mode == VerifyMode::Full {
        let m = words.len();
        pairs_checked = m * m.saturating_sub(1) / 2;
        let close = (0..m).into_par_iter().find_map_first(|i| {
            (i + 1..m).find_map(|j| {
                let d = kendall_distance(&words[i], &words[j]).expect("equal lengths");
                (d < 2).then_some(Witness::Pair { first: i, second: j, words: (words[i], words[j]), distance: d })
            })
        });
        checks.push(Check { name: DISTANCE, witness: close });
    }

    let size = declared_size
        .filter(|&d| d != s.len())
        .map(|declared| Witness::Size { declared, actual: s.len() });
    checks.push(Check { name: SIZE, witness: size });

    VerificationReport { mode, size: s.len(), checks, pairs_checked }
}

/// Even permutations of the snake's degree that are not codewords, in
/// lexicographic order.
pub fn missing_codewords(s: &Snake) -> Vec<Permutation> {
    let len = s.degree();
    let mut present = vec![false; factorial(len)];
    for w in walk(s).0 {
        present[w.rank()] = true;
    }
    Permutation::all_even(len).filter(|p| !present[p.rank()]).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub size: usize,
    /// `|S_n|/2`.
    pub half: usize,
    /// The tighter bound, checked only when an even index occurs.
    pub strict: Option<f64>,
    pub passed: bool,
}

/// `M <= |S_n|/2`, and `M <= |S_n|/2 - C(floor(n/2)-1, 2)/(n-1)` when the
/// snake uses an even-index transition.
pub fn check_upper_bounds(s: &Snake) -> BoundReport {
    let n = s.degree();
    let half = factorial(n) / 2;
    let size = s.len();
    let strict = s.transitions().iter().any(|t| !t.is_odd()).then(|| {
        let k = (n / 2).saturating_sub(1) as f64;
        half as f64 - (k * (k - 1.0) / 2.0) / (n as f64 - 1.0)
    });
    let passed = size <= half && strict.is_none_or(|b| size as f64 <= b);
    BoundReport { size, half, strict, passed }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Transition;

    fn p(v: &[u8]) -> Permutation {
        Permutation::new(v).unwrap()
    }

    fn t(i: usize) -> Transition {
        Transition::new(i).unwrap()
    }

    fn necklace() -> Snake {
        Snake::new(p(&[3, 4, 5, 1, 2]), vec![t(3); 3]).unwrap()
    }

    #[test]
    fn necklace_passes() {
        let r = verify_snake(&necklace(), Some(3), VerifyMode::Full);
        assert!(r.passed(), "{r}");
        assert_eq!(r.pairs_checked, 3);
        assert!(check_upper_bounds(&necklace()).passed);
        assert!(check_upper_bounds(&necklace()).strict.is_none());
    }

    #[test]
    fn size_mismatch() {
        let r = verify_snake(&necklace(), Some(4), VerifyMode::Structural);
        assert_eq!(r.first_failure().unwrap().name, SIZE);
        assert!(r.check(DISTANCE).is_none());
    }

    #[test]
    fn adjacent_pair_is_found() {
        let s = Snake::new(p(&[1, 2, 3, 4, 5]), vec![t(2), t(2)]).unwrap();
        let r = verify_snake(&s, None, VerifyMode::Full);
        assert!(matches!(
            r.check(DISTANCE).unwrap().witness,
            Some(Witness::Pair { first: 0, second: 1, distance: 1, .. })
        ));
        assert!(matches!(r.check(ODD_INDICES).unwrap().witness, Some(Witness::EvenIndex { position: 0, index: 2 })));
    }

    #[test]
    fn odd_codeword_is_found() {
        let s = Snake::new(p(&[2, 1, 3, 4, 5]), vec![t(3); 3]).unwrap();
        let r = verify_snake(&s, None, VerifyMode::Structural);
        assert!(matches!(r.check(ODD_INDICES).unwrap().witness, Some(Witness::OddCodeword { position: 0, .. })));
    }

    #[test]
    fn missing_from_necklace() {
        assert_eq!(missing_codewords(&necklace()).len(), 57);
    }

    #[test]
    fn strict_bound_applies_with_even_index() {
        let s = Snake::new(p(&[1, 2, 3, 4, 5]), vec![t(2), t(2)]).unwrap();
        let b = check_upper_bounds(&s);
        assert!(b.strict.is_some());
        assert!(b.passed);
    }
}
