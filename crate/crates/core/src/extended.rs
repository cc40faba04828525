//! A snake of `S_{2n-1}` embedded in class `[2,1]`, rewritten to expose
//! insertion sites, with every chain inserted in pairs.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::assemble::assemble_he_snake;
use crate::chain::{build_all_chains, ChainSet};
use crate::error::{Error, Result};
use crate::graph::SpliceSite;
use crate::matching::Matcher;
use crate::partition::check_n;
use crate::perm::{count_inversions, factorial, Cycle, Permutation};
use crate::snake::{Snake, Splicer};

/// `(2n+1)!/2 - 2n + 3`.
pub fn extended_size(n: usize) -> usize {
    factorial(2 * n + 1) / 2 - 2 * n + 3
}

/// Bijection `f: {1..2n-1} -> {3..2n+1}`; a codeword `w` becomes
/// `[f(w_1), .., f(w_{2n-1}), 2, 1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EmbeddingMap {
    images: Vec<u8>,
}

impl EmbeddingMap {
    /// `images[i]` is `f(i+1)`.
    pub fn new(images: Vec<u8>) -> Result<Self> {
        let k = images.len();
        let mut sorted = images.clone();
        sorted.sort_unstable();
        if k < 3 || sorted != (3..=k as u8 + 2).collect::<Vec<_>>() {
            return Err(Error::InvalidMap(format!("{images:?} is not a bijection onto 3..={}", k + 2)));
        }
        // The tail (2,1) behind 2n-1 larger values adds an odd number of
        // inversions, so the values of f must appear in odd order.
        if count_inversions(&images).is_multiple_of(2) {
            return Err(Error::InvalidMap(format!(
                "{images:?} maps even permutations to odd ones"
            )));
        }
        Ok(Self { images })
    }

    pub fn images(&self) -> &[u8] {
        &self.images
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn apply(&self, p: &Permutation) -> Result<Permutation> {
        if p.len() != self.len() {
            return Err(Error::LengthMismatch { left: p.len(), right: self.len() });
        }
        let front: Vec<u8> = p.as_slice().iter().map(|&v| self.images[v as usize - 1]).collect();
        Permutation::from_parts(&front, &[2, 1])
    }

    /// Every valid map for inner length `k`, in lexicographic order.
    pub fn all(k: usize) -> impl Iterator<Item = EmbeddingMap> {
        Permutation::all(k).filter_map(|p| {
            EmbeddingMap::new(p.as_slice().iter().map(|v| v + 2).collect()).ok()
        })
    }
}

impl fmt::Display for EmbeddingMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "f({})={v}", i + 1)?;
        }
        Ok(())
    }
}

pub fn embed_inner_snake(inner: &Snake, f: &EmbeddingMap) -> Result<Snake> {
    Snake::new(f.apply(&inner.initial())?, inner.transitions().to_vec())
}

/// Rewrite at `π`, with `a = 2n-3` and `b = 2n-1`: the segment from
/// `t_a(π)` to `σ = t_a^{-1} t_b(π)` is cut out, `π` is joined to `t_b(π)`,
/// and the segment is reinserted after `ρ = t_b^{-1} t_a(π)`.
///
/// All three seams become `t_b` transitions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SewRewrite {
    pivot: Permutation,
}

impl SewRewrite {
    pub fn new(pivot: Permutation) -> Result<Self> {
        if pivot.len() < 5 || pivot.len().is_multiple_of(2) {
            return Err(Error::InvalidParameter(format!("rewrite pivot {pivot} must have odd length >= 5")));
        }
        Ok(Self { pivot })
    }

    pub fn pivot(&self) -> Permutation {
        self.pivot
    }

    fn a(&self) -> usize {
        self.pivot.len() - 4
    }

    fn b(&self) -> usize {
        self.pivot.len() - 2
    }

    /// `t_a(π)`, first codeword of the cut segment.
    pub fn cut_start(&self) -> Permutation {
        self.pivot.push(self.a())
    }

    /// `σ = t_a^{-1} t_b(π)`, last codeword of the cut segment.
    pub fn cut_end(&self) -> Permutation {
        self.pivot.push(self.b()).push_inverse(self.a())
    }

    /// `ρ = t_b^{-1} t_a(π)`.
    pub fn insert_after(&self) -> Permutation {
        self.pivot.push(self.a()).push_inverse(self.b())
    }
}

/// Codewords with a position index.
struct Sequence {
    words: Vec<Permutation>,
    pos: HashMap<Permutation, usize>,
}

impl Sequence {
    fn new(words: Vec<Permutation>) -> Self {
        let pos = words.iter().enumerate().map(|(i, w)| (*w, i)).collect();
        Self { words, pos }
    }

    fn next(&self, i: usize) -> Permutation {
        self.words[(i + 1) % self.words.len()]
    }

    /// Pivot position and the offsets of `σ` and `ρ` after it.
    fn locate(&self, r: &SewRewrite) -> std::result::Result<(usize, usize, usize), String> {
        let m = self.words.len();
        let at = |p: Permutation| self.pos.get(&p).copied().ok_or(format!("{p} is not a codeword"));
        let i = at(r.pivot)?;
        let s = at(r.cut_end())?;
        let q = at(r.insert_after())?;
        if self.next(i) != r.cut_start() {
            return Err("pivot is not followed by its t_a image".into());
        }
        if self.next(s) != r.pivot.push(r.b()) {
            return Err("cut segment does not end before the pivot's t_b image".into());
        }
        if self.next(q) != r.insert_after().push(r.a()) {
            return Err("reinsertion point is not followed by its t_a image".into());
        }
        let (ds, dq) = ((s + m - i) % m, (q + m - i) % m);
        if ds >= dq {
            return Err("reinsertion point lies inside the cut segment".into());
        }
        Ok((i, ds, dq))
    }

    fn apply(&self, r: &SewRewrite) -> std::result::Result<Vec<Permutation>, String> {
        let (i, ds, dq) = self.locate(r)?;
        let mut rot = self.words.clone();
        rot.rotate_left(i);
        let mut out = Vec::with_capacity(rot.len());
        out.push(rot[0]);
        out.extend_from_slice(&rot[ds + 1..=dq]);
        out.extend_from_slice(&rot[1..=ds]);
        out.extend_from_slice(&rot[dq + 1..]);
        let start = out.iter().position(|w| *w == self.words[0]).unwrap();
        out.rotate_left(start);
        Ok(out)
    }

    fn applicable(&self) -> Vec<SewRewrite> {
        let Some(len) = self.words.first().map(|w| w.len()) else {
            return Vec::new();
        };
        (0..self.words.len())
            .filter(|&i| self.next(i) == self.words[i].push(len - 4))
            .map(|i| SewRewrite { pivot: self.words[i] })
            .filter(|r| self.locate(r).is_ok())
            .collect()
    }
}

pub fn apply_sew_rewrite(s: &Snake, r: &SewRewrite) -> Result<Snake> {
    if r.pivot.len() != s.degree() {
        return Err(Error::LengthMismatch { left: r.pivot.len(), right: s.degree() });
    }
    let words = Sequence::new(s.codewords())
        .apply(r)
        .map_err(|reason| Error::InapplicableRewrite { pivot: r.pivot, reason })?;
    Snake::from_codewords(&words)
}

/// Every rewrite applicable to `s`, in snake order of the pivot.
pub fn applicable_rewrites(s: &Snake) -> Vec<SewRewrite> {
    if s.degree() < 5 {
        return Vec::new();
    }
    Sequence::new(s.codewords()).applicable()
}

/// A consecutive pair `[α,x,2,1] -> [x,α,2,1]` with `x > 5` and the two
/// distinct chains it can absorb.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InsertionSite {
    pub site: SpliceSite,
    pub chains: (usize, usize),
}

impl InsertionSite {
    pub fn sign(&self) -> u8 {
        self.site.sign()
    }
}

/// Site at `w`, ignoring whether `w` is followed by `t_{2n-1}(w)`.
fn site_at(w: &Permutation, chains: &ChainSet) -> Option<InsertionSite> {
    if w.tail(2) != [2, 1] || w.get(w.len() - 2) <= 5 {
        return None;
    }
    let site = SpliceSite::at(w);
    let a = chains.owner_of(&site.first)?;
    let b = chains.owner_of(&site.second)?;
    (a != b).then_some(InsertionSite { site, chains: (a, b) })
}

fn sites_in(seq: &Sequence, chains: &ChainSet) -> Vec<InsertionSite> {
    let b = seq.words[0].len() - 2;
    (0..seq.words.len())
        .filter(|&i| seq.next(i) == seq.words[i].push(b))
        .filter_map(|i| site_at(&seq.words[i], chains))
        .collect()
}

pub fn insertion_sites(s: &Snake, chains: &ChainSet) -> Vec<InsertionSite> {
    if s.degree() != 2 * chains.n() + 1 {
        return Vec::new();
    }
    sites_in(&Sequence::new(s.codewords()), chains)
}

/// Inserts both chains of every site; each chain may be used once.
pub fn insert_chain_pairs(s: &Snake, sites: &[InsertionSite], chains: &ChainSet) -> Result<Snake> {
    let len = 2 * chains.n() + 1;
    if s.degree() != len {
        return Err(Error::LengthMismatch { left: s.degree(), right: len });
    }
    let seq = Sequence::new(s.codewords());
    let mut used = HashSet::new();
    for st in sites {
        let w = st.site.linkage_word;
        let ok = seq.pos.get(&w).is_some_and(|&i| seq.next(i) == w.push(len - 2));
        if !ok {
            return Err(Error::InvalidSite(format!("{w} is not followed by its t_{} image", len - 2)));
        }
        match site_at(&w, chains) {
            Some(found) if found.chains == st.chains => {}
            _ => {
                return Err(Error::InvalidSite(format!(
                    "{w} does not join two distinct chains {:?}",
                    st.chains
                )))
            }
        }
        for c in [st.chains.0, st.chains.1] {
            if !used.insert(c) {
                return Err(Error::InvalidSite(format!("chain {} inserted twice", chains.chain(c).name())));
            }
        }
    }
    let mut splicer = Splicer::new(len);
    splicer.insert_snake(s)?;
    for st in sites {
        splicer.insert_snake(chains.chain(st.chains.0).snake())?;
        splicer.insert_snake(chains.chain(st.chains.1).snake())?;
        splicer.rotate3(&st.site.linkage_word, &st.site.first, &st.site.second)?;
    }
    let out = splicer.walk(&s.initial())?;
    if out.len() != splicer.len() {
        return Err(Error::Splice(format!("walk covers {} of {} codewords", out.len(), splicer.len())));
    }
    Ok(out)
}

pub fn insert_chain_pair(s: &Snake, site: &InsertionSite, chains: &ChainSet) -> Result<Snake> {
    insert_chain_pairs(s, std::slice::from_ref(site), chains)
}

/// A finished extended snake and how it was obtained.
#[derive(Debug, Clone)]
pub struct ExtendedSnake {
    pub snake: Snake,
    pub map: EmbeddingMap,
    pub rewrites: Vec<SewRewrite>,
    pub sites: Vec<InsertionSite>,
}

pub const S7_MAP: [u8; 5] = [5, 6, 3, 7, 4];
pub const S7_PIVOT: [u8; 7] = [3, 5, 4, 6, 7, 2, 1];

/// Chain pairs absorbed by the S_7 snake, names read from 4.
pub const S7_PAIRS: [([u8; 5], [u8; 5]); 6] = [
    ([4, 7, 5, 6, 3], [4, 5, 3, 6, 7]),
    ([4, 6, 7, 5, 3], [4, 3, 7, 6, 5]),
    ([4, 7, 3, 5, 6], [4, 5, 7, 3, 6]),
    ([4, 7, 6, 3, 5], [4, 3, 6, 5, 7]),
    ([4, 6, 5, 3, 7], [4, 6, 3, 7, 5]),
    ([4, 5, 6, 7, 3], [4, 3, 5, 7, 6]),
];

/// The fixed S_7 construction: one rewrite and six prescribed pairs.
pub fn extended_s7() -> Result<ExtendedSnake> {
    let inner = assemble_he_snake(2)?;
    let chains = build_all_chains(3)?;
    let map = EmbeddingMap::new(S7_MAP.to_vec())?;
    let rewrite = SewRewrite::new(Permutation::new(&S7_PIVOT)?)?;
    let sewn = apply_sew_rewrite(&embed_inner_snake(&inner, &map)?, &rewrite)?;
    let available = insertion_sites(&sewn, &chains);
    let mut sites = Vec::with_capacity(S7_PAIRS.len());
    for (p, q) in S7_PAIRS {
        let idx = |v: [u8; 5]| {
            let name = Cycle::new(v.to_vec())?;
            chains
                .index_of(&name)
                .ok_or_else(|| Error::InvalidSite(format!("{name} is not a chain")))
        };
        let want = (idx(p)?, idx(q)?);
        let site = available
            .iter()
            .find(|s| s.chains == want || s.chains == (want.1, want.0))
            .ok_or_else(|| Error::InvalidSite(format!("no site joins chains {p:?} and {q:?}")))?;
        sites.push(*site);
    }
    let snake = insert_chain_pairs(&sewn, &sites, &chains)?;
    Ok(ExtendedSnake { snake, map, rewrites: vec![rewrite], sites })
}

/// Statistics of an unsuccessful search.
#[derive(Debug, Clone, Default)]
pub struct SearchReport {
    pub n: usize,
    pub chains: usize,
    pub maps_total: usize,
    pub maps_tried: usize,
    pub matching_attempts: usize,
    pub rewrites_applied: usize,
    pub best_matching: usize,
    pub best_map: Option<EmbeddingMap>,
    pub best_rewrites: usize,
    pub best_sites_per_x: BTreeMap<u8, usize>,
    pub budget: Duration,
    pub elapsed: Duration,
    pub budget_exhausted: bool,
}

impl fmt::Display for SearchReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "search: n={} (S_{})", self.n, 2 * self.n + 1)?;
        writeln!(f, "chains: {} (perfect matching needs {} pairs)", self.chains, self.chains / 2)?;
        writeln!(
            f,
            "maps tried: {} of {} ({})",
            self.maps_tried,
            self.maps_total,
            if self.budget_exhausted { "budget exhausted" } else { "all maps exhausted" }
        )?;
        writeln!(f, "budget: {:.1?}, elapsed: {:.1?}", self.budget, self.elapsed)?;
        writeln!(f, "matching attempts: {}", self.matching_attempts)?;
        writeln!(f, "rewrites applied: {}", self.rewrites_applied)?;
        match &self.best_map {
            Some(m) => {
                writeln!(
                    f,
                    "best: {}/{} pairs after {} rewrites with {m}",
                    self.best_matching,
                    self.chains / 2,
                    self.best_rewrites
                )?;
                let per_x: Vec<String> =
                    self.best_sites_per_x.iter().map(|(x, c)| format!("x={x}: {c}")).collect();
                write!(f, "sites in best: {}", per_x.join(", "))
            }
            None => write!(f, "best: none"),
        }
    }
}

struct MapStats {
    map: EmbeddingMap,
    matching: usize,
    attempts: usize,
    rewrites: usize,
    sites_per_x: BTreeMap<u8, usize>,
}

enum Attempt {
    Found(Box<ExtendedSnake>),
    Failed(MapStats),
}

/// Greedy rewriting for one map: prefer rewrites whose new sites touch an
/// unmatched chain, then any that adds a site, then any at all. Rewrites
/// never remove a `t_{2n-1}`, so the site set only grows.
fn try_map(inner: &Snake, map: &EmbeddingMap, chains: &ChainSet, deadline: Instant) -> Result<Attempt> {
    let embedded = embed_inner_snake(inner, map)?;
    let mut seq = Sequence::new(embedded.codewords());
    let mut sites = sites_in(&seq, chains);
    let mut matcher = Matcher::new(chains.len());
    for (id, s) in sites.iter().enumerate() {
        matcher.add_edge(s.chains.0, s.chains.1, id);
    }
    let mut rewrites = Vec::new();
    let mut attempts = 0;
    loop {
        attempts += 1;
        if matcher.augment() * 2 == chains.len() {
            let chosen: Vec<InsertionSite> = matcher.matched_ids().into_iter().map(|id| sites[id]).collect();
            let base = Snake::from_codewords(&seq.words)?;
            let snake = insert_chain_pairs(&base, &chosen, chains)?;
            return Ok(Attempt::Found(Box::new(ExtendedSnake {
                snake,
                map: map.clone(),
                rewrites,
                sites: chosen,
            })));
        }
        let candidates = seq.applicable();
        let new_sites = |r: &SewRewrite| -> Vec<InsertionSite> {
            [r.pivot, r.cut_end(), r.insert_after()]
                .iter()
                .filter_map(|w| site_at(w, chains))
                .collect()
        };
        let unmatched = |s: &InsertionSite| {
            matcher.mate(s.chains.0).is_none() || matcher.mate(s.chains.1).is_none()
        };
        let pick = candidates
            .iter()
            .find(|r| new_sites(r).iter().any(unmatched))
            .or_else(|| candidates.iter().find(|r| !new_sites(r).is_empty()))
            .or_else(|| candidates.first())
            .copied();
        let Some(r) = pick.filter(|_| Instant::now() < deadline) else {
            let mut sites_per_x = BTreeMap::new();
            for s in &sites {
                *sites_per_x.entry(s.sign()).or_insert(0) += 1;
            }
            return Ok(Attempt::Failed(MapStats {
                map: map.clone(),
                matching: matcher.size(),
                attempts,
                rewrites: rewrites.len(),
                sites_per_x,
            }));
        };
        let added = new_sites(&r);
        seq = Sequence::new(seq.apply(&r).expect("candidate is applicable"));
        for s in added {
            matcher.add_edge(s.chains.0, s.chains.1, sites.len());
            sites.push(s);
        }
        rewrites.push(r);
    }
}

/// Searches embedding maps in lexicographic order (evaluated in parallel,
/// first success in order wins) within `budget`.
pub fn search_extended_snake(n: usize, budget: Duration) -> Result<ExtendedSnake> {
    check_n(n, 3)?;
    let started = Instant::now();
    let deadline = started + budget;
    let inner = assemble_he_snake(n - 1)?;
    let chains = build_all_chains(n)?;
    let maps: Vec<EmbeddingMap> = EmbeddingMap::all(2 * n - 1).collect();
    let report = Mutex::new(SearchReport {
        n,
        chains: chains.len(),
        maps_total: maps.len(),
        budget,
        ..Default::default()
    });
    let found = maps.par_iter().find_map_first(|map| {
        if Instant::now() >= deadline {
            return None;
        }
        match try_map(&inner, map, &chains, deadline) {
            Ok(Attempt::Found(x)) => Some(Ok(x)),
            Ok(Attempt::Failed(st)) => {
                let mut r = report.lock().unwrap();
                r.maps_tried += 1;
                r.matching_attempts += st.attempts;
                r.rewrites_applied += st.rewrites;
                let better = st.matching > r.best_matching
                    || (st.matching == r.best_matching
                        && r.best_map.as_ref().is_some_and(|m| st.map < *m));
                if r.best_map.is_none() || better {
                    r.best_matching = st.matching;
                    r.best_rewrites = st.rewrites;
                    r.best_sites_per_x = st.sites_per_x;
                    r.best_map = Some(st.map);
                }
                None
            }
            Err(e) => Some(Err(e)),
        }
    });
    match found {
        Some(res) => res.map(|b| *b),
        None => {
            let mut r = report.into_inner().unwrap();
            r.elapsed = started.elapsed();
            r.budget_exhausted = r.maps_tried < r.maps_total;
            Err(Error::ConjectureUnresolved(Box::new(r)))
        }
    }
}

/// `n = 3` uses the fixed construction; larger `n` searches within `budget`.
pub fn assemble_extended_snake(n: usize, budget: Duration) -> Result<Snake> {
    check_n(n, 3)?;
    if n == 3 {
        return Ok(extended_s7()?.snake);
    }
    Ok(search_extended_snake(n, budget)?.snake)
}
