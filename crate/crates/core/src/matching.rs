//! Maximum-cardinality matching in general graphs (Edmonds' blossom
//! algorithm, `O(V^3)`).

use std::collections::{HashMap, VecDeque};

const NONE: usize = usize::MAX;

/// Maximum matching on vertices `0..n`. Edges are `(u, v, id)`; the result
/// holds the chosen edge ids, ordered by the smaller endpoint.
///
/// Parallel edges are allowed; for each matched pair the smallest id
/// between the two vertices is reported. Self-loops are ignored.
pub fn maximum_matching(n: usize, edges: &[(usize, usize, usize)]) -> Vec<usize> {
    let mut m = Matcher::new(n);
    for &(u, v, id) in edges {
        m.add_edge(u, v, id);
    }
    m.augment();
    m.matched_ids()
}

/// Incremental matcher: edges may be added between calls to
/// [`Matcher::augment`], and the current matching is kept as the start.
pub struct Matcher {
    inner: Blossom,
    ids: HashMap<(usize, usize), usize>,
}

impl Matcher {
    pub fn new(n: usize) -> Self {
        Self { inner: Blossom::new(vec![Vec::new(); n]), ids: HashMap::new() }
    }

    pub fn add_edge(&mut self, u: usize, v: usize, id: usize) {
        if u == v {
            return;
        }
        let key = (u.min(v), u.max(v));
        match self.ids.get_mut(&key) {
            Some(old) => *old = (*old).min(id),
            None => {
                self.ids.insert(key, id);
                self.inner.adj[u].push(v);
                self.inner.adj[v].push(u);
            }
        }
    }

    /// Augments to a maximum matching; returns its size.
    pub fn augment(&mut self) -> usize {
        self.inner.run();
        self.size()
    }

    pub fn size(&self) -> usize {
        self.inner.mate.iter().filter(|&&m| m != NONE).count() / 2
    }

    pub fn mate(&self, v: usize) -> Option<usize> {
        match self.inner.mate[v] {
            NONE => None,
            m => Some(m),
        }
    }

    pub fn matched_ids(&self) -> Vec<usize> {
        let mut pairs: Vec<_> = (0..self.inner.mate.len())
            .filter_map(|u| self.mate(u).filter(|&v| u < v).map(|v| ((u, v), self.ids[&(u, v)])))
            .collect();
        pairs.sort();
        pairs.into_iter().map(|(_, id)| id).collect()
    }
}

struct Blossom {
    adj: Vec<Vec<usize>>,
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
    queue: VecDeque<usize>,
}

impl Blossom {
    fn new(adj: Vec<Vec<usize>>) -> Self {
        let n = adj.len();
        Self {
            adj,
            mate: vec![NONE; n],
            parent: vec![NONE; n],
            base: (0..n).collect(),
            used: vec![false; n],
            in_blossom: vec![false; n],
            queue: VecDeque::new(),
        }
    }

    fn run(&mut self) {
        let n = self.adj.len();
        // greedy start
        for v in 0..n {
            if self.mate[v] == NONE {
                if let Some(&u) = self.adj[v].iter().find(|&&u| self.mate[u] == NONE) {
                    self.mate[v] = u;
                    self.mate[u] = v;
                }
            }
        }
        for root in 0..n {
            if self.mate[root] != NONE {
                continue;
            }
            let mut v = self.find_path(root);
            while v != NONE {
                let pv = self.parent[v];
                let ppv = self.mate[pv];
                self.mate[v] = pv;
                self.mate[pv] = v;
                v = ppv;
            }
        }
    }

    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.adj.len()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    /// Grows an alternating tree from `root`; returns the free vertex
    /// ending an augmenting path, or `NONE`.
    fn find_path(&mut self, root: usize) -> usize {
        let n = self.adj.len();
        self.used.iter_mut().for_each(|u| *u = false);
        self.parent.iter_mut().for_each(|p| *p = NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        self.queue.clear();
        self.queue.push_back(root);
        while let Some(v) = self.queue.pop_front() {
            for k in 0..self.adj[v].len() {
                let to = self.adj[v][k];
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let cur = self.lca(v, to);
                    self.in_blossom.iter_mut().for_each(|b| *b = false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return to;
                    }
                    let m = self.mate[to];
                    self.used[m] = true;
                    self.queue.push_back(m);
                }
            }
        }
        NONE
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute_force(edges: &[(usize, usize, usize)]) -> usize {
        fn go(k: usize, used: u32, edges: &[(usize, usize, usize)]) -> usize {
            if k == edges.len() {
                return 0;
            }
            let skip = go(k + 1, used, edges);
            let (u, v, _) = edges[k];
            if u != v && used & (1 << u) == 0 && used & (1 << v) == 0 {
                skip.max(1 + go(k + 1, used | 1 << u | 1 << v, edges))
            } else {
                skip
            }
        }
        go(0, 0, edges)
    }

    fn is_matching(n: usize, edges: &[(usize, usize, usize)], ids: &[usize]) -> bool {
        let mut used = vec![false; n];
        ids.iter().all(|&id| {
            let (u, v, _) = edges.iter().copied().find(|e| e.2 == id).unwrap();
            let ok = u != v && !used[u] && !used[v];
            used[u] = true;
            used[v] = true;
            ok
        })
    }

    #[test]
    fn odd_cycle_with_tail() {
        // triangle 0-1-2 with pendant 3 on 2 and 4 on 0
        let e = [(0, 1, 0), (1, 2, 1), (2, 0, 2), (2, 3, 3), (0, 4, 4)];
        let m = maximum_matching(5, &e);
        assert_eq!(m.len(), 2);
        assert!(is_matching(5, &e, &m));
    }

    #[test]
    fn petersen_has_perfect_matching() {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5, e.len()));
            e.push((i, i + 5, e.len()));
            e.push((i + 5, (i + 2) % 5 + 5, e.len()));
        }
        assert_eq!(maximum_matching(10, &e).len(), 5);
    }

    #[test]
    fn parallel_edges_report_smallest_id() {
        let e = [(0, 1, 7), (1, 0, 3), (1, 1, 0)];
        assert_eq!(maximum_matching(2, &e), vec![3]);
    }

    proptest! {
        #[test]
        fn agrees_with_brute_force(
            n in 2usize..9,
            raw in proptest::collection::vec((0usize..9, 0usize..9), 0..14),
        ) {
            let edges: Vec<_> = raw
                .into_iter()
                .filter(|&(u, v)| u < n && v < n)
                .enumerate()
                .map(|(id, (u, v))| (u, v, id))
                .collect();
            let m = maximum_matching(n, &edges);
            prop_assert!(is_matching(n, &edges, &m));
            prop_assert_eq!(m.len(), brute_force(&edges));
        }
    }
}
