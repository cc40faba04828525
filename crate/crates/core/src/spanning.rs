//! Spanning trees of the chain graph whose edges carry distinct linkages.
//!
//! The construction is recursive on the positions of the two largest
//! values in the names (read from 4). At level `m` the names are reduced
//! to the values `3..=2m+1`; the components `C_{i,j}` collect the names with
//! `2m` at position `i` and `2m+1` at position `j`, and a cycle through all
//! components is formed from one chosen linkage per `L_{i,j}`. Inside each
//! component the recursion continues while avoiding the linkage already
//! used, down to the 12-chain blocks of level 3.

use std::collections::{BTreeMap, HashMap, HashSet};

use crate::error::{Error, Result};
use crate::graph::{m_connection_endpoints, Linkage};
use crate::partition::{check_n, enumerate_necklaces, ClassLabel};
use crate::perm::Cycle;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelectedEdge {
    pub label: Cycle,
    pub sign: u8,
    /// Chain names from the relabeling formula.
    pub endpoints: (Cycle, Cycle),
}

#[derive(Debug, Clone)]
pub struct SpanningSelection {
    pub edges: Vec<SelectedEdge>,
    /// The one linkage left out.
    pub unused: Cycle,
}

/// Edge of the component-level cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentEdge {
    pub label: Cycle,
    pub sign: u8,
    pub from: (usize, usize),
    pub to: (usize, usize),
}

/// Wraps a position into `2..=2m-1` modulo `2m-2`.
fn wrap(pos: isize, m: usize) -> usize {
    let modulus = (2 * m - 2) as isize;
    ((pos - 2).rem_euclid(modulus) + 2) as usize
}

/// Name read from 4, restricted to the values `3..=2m+1`.
fn reduced(name: &Cycle, m: usize) -> Vec<u8> {
    name.rotated_to(4)
        .expect("names contain 4")
        .into_iter()
        .filter(|&v| v as usize <= 2 * m + 1)
        .collect()
}

fn position(seq: &[u8], v: u8) -> usize {
    seq.iter().position(|&e| e == v).expect("value present") + 1
}

fn component_at(name: &Cycle, m: usize) -> (usize, usize) {
    let r = reduced(name, m);
    (position(&r, (2 * m) as u8), position(&r, (2 * m + 1) as u8))
}

fn endpoints(label: &Cycle, sign: u8) -> Result<(Cycle, Cycle)> {
    let link = Linkage::from_name(label.clone())?;
    m_connection_endpoints(&link, sign)?
        .ok_or_else(|| Error::Selection(format!("M[{sign}] via {label} has no endpoints")))
}

/// Positions of 3 and `2m-1`, and the sign, prescribed for `L_{i,j}`.
fn rule(i: usize, j: usize, m: usize) -> (usize, usize, u8) {
    let (i, j_) = (i as isize, j);
    if j_ == wrap(i - 1, m) {
        (wrap(i - 2, m), wrap(i - 3, m), (2 * m) as u8)
    } else if j_ == wrap(i - 2, m) {
        (wrap(i - 1, m), wrap(i + 1, m), (2 * m + 1) as u8)
    } else {
        let j = j as isize;
        (wrap(j + 1, m), wrap(j + 2, m), (2 * m + 1) as u8)
    }
}

/// Checks that `edges` form one cycle through every vertex in `vertices`.
fn check_hamiltonian<V: Clone + Eq + std::hash::Hash + std::fmt::Debug>(
    vertices: &[V],
    edges: &[(V, V)],
    what: &str,
) -> Result<()> {
    let mut adj: HashMap<V, Vec<V>> = vertices.iter().map(|v| (v.clone(), Vec::new())).collect();
    for (a, b) in edges {
        for (x, y) in [(a, b), (b, a)] {
            adj.get_mut(x)
                .ok_or_else(|| Error::Selection(format!("{what}: edge leaves the vertex set at {x:?}")))?
                .push(y.clone());
        }
    }
    if let Some((v, _)) = adj.iter().find(|(_, n)| n.len() != 2) {
        return Err(Error::Selection(format!("{what}: vertex {v:?} does not have degree 2")));
    }
    let start = vertices[0].clone();
    let (mut prev, mut cur) = (start.clone(), adj[&start][0].clone());
    let mut seen = 1;
    while cur != start {
        let nbrs = &adj[&cur];
        let next = if nbrs[0] == prev { nbrs[1].clone() } else { nbrs[0].clone() };
        prev = std::mem::replace(&mut cur, next);
        seen += 1;
        if seen > vertices.len() {
            break;
        }
    }
    if seen != vertices.len() || edges.len() != vertices.len() {
        return Err(Error::Selection(format!(
            "{what}: edges do not form a single cycle through all {} vertices",
            vertices.len()
        )));
    }
    Ok(())
}

/// The 12-edge cycle of a level-3 block: `M[6]` when `j ≡ i-1`, else `M[7]`.
fn block_cycle(members: &[Cycle]) -> Result<Vec<SelectedEdge>> {
    if members.len() != 12 {
        return Err(Error::Selection(format!("level-3 block has {} linkages", members.len())));
    }
    let mut edges = Vec::with_capacity(12);
    for label in members {
        let (i, j) = component_at(label, 3);
        let sign = if j == wrap(i as isize - 1, 3) { 6 } else { 7 };
        let ends = endpoints(label, sign)?;
        edges.push(SelectedEdge { label: label.clone(), sign, endpoints: ends });
    }
    let mut chains: Vec<Cycle> = edges
        .iter()
        .flat_map(|e| [e.endpoints.0.clone(), e.endpoints.1.clone()])
        .collect();
    chains.sort();
    chains.dedup();
    let pairs: Vec<_> = edges.iter().map(|e| e.endpoints.clone()).collect();
    check_hamiltonian(&chains, &pairs, "level-3 block cycle")?;
    Ok(edges)
}

fn group_by_component(members: &[Cycle], m: usize) -> BTreeMap<(usize, usize), Vec<Cycle>> {
    let mut groups: BTreeMap<(usize, usize), Vec<Cycle>> = BTreeMap::new();
    for label in members {
        groups.entry(component_at(label, m)).or_default().push(label.clone());
    }
    groups
}

/// Chooses one linkage per `L_{i,j}` (the smallest satisfying its rule) and
/// checks that the resulting edges form a cycle over all components.
fn component_cycle_at(members: &[Cycle], m: usize) -> Result<Vec<ComponentEdge>> {
    let groups = group_by_component(members, m);
    let expected = (2 * m - 2) * (2 * m - 3);
    if groups.len() != expected {
        return Err(Error::Selection(format!(
            "level {m}: {} components, expected {expected}",
            groups.len()
        )));
    }
    let mut edges = Vec::with_capacity(groups.len());
    for (&(i, j), group) in &groups {
        let (p, q, sign) = rule(i, j, m);
        let label = group
            .iter()
            .filter(|l| {
                let r = reduced(l, m);
                position(&r, 3) == p && position(&r, (2 * m - 1) as u8) == q
            })
            .min()
            .ok_or_else(|| {
                Error::Selection(format!(
                    "level {m}: no linkage in L_{{{i},{j}}} has 3 at {p} and {} at {q}",
                    2 * m - 1
                ))
            })?;
        let (a, b) = endpoints(label, sign)?;
        edges.push(ComponentEdge {
            label: label.clone(),
            sign,
            from: component_at(&a, m),
            to: component_at(&b, m),
        });
    }
    let vertices: Vec<(usize, usize)> = groups.keys().copied().collect();
    let pairs: Vec<_> = edges.iter().map(|e| (e.from, e.to)).collect();
    check_hamiltonian(&vertices, &pairs, &format!("level-{m} component cycle"))?;
    Ok(edges)
}

fn span(members: &[Cycle], m: usize, avoid: &Cycle, out: &mut Vec<SelectedEdge>) -> Result<()> {
    if m == 3 {
        let cycle = block_cycle(members)?;
        if !cycle.iter().any(|e| &e.label == avoid) {
            return Err(Error::Selection(format!("{avoid} is not in its level-3 block")));
        }
        out.extend(cycle.into_iter().filter(|e| &e.label != avoid));
        return Ok(());
    }
    let cycle = component_cycle_at(members, m)?;
    let avoid_component = component_at(avoid, m);
    let groups = group_by_component(members, m);
    for (edge, (&comp, group)) in cycle.iter().zip(&groups) {
        debug_assert_eq!(component_at(&edge.label, m), comp);
        if comp == avoid_component {
            span(group, m - 1, avoid, out)?;
        } else {
            out.push(SelectedEdge {
                label: edge.label.clone(),
                sign: edge.sign,
                endpoints: endpoints(&edge.label, edge.sign)?,
            });
            span(group, m - 1, &edge.label, out)?;
        }
    }
    Ok(())
}

fn linkage_names(n: usize) -> Result<Vec<Cycle>> {
    Ok(enumerate_necklaces(n, ClassLabel::new(2, 1))?
        .into_iter()
        .map(|nk| nk.front().clone())
        .collect())
}

/// The component-level cycle of `S_{2n+1}`, `n >= 4`.
pub fn component_cycle(n: usize) -> Result<Vec<ComponentEdge>> {
    check_n(n, 4)?;
    component_cycle_at(&linkage_names(n)?, n)
}

/// The 12-linkage cycle of `S_7` minus the edge with the largest label.
pub fn select_spanning_tree_s7() -> Result<SpanningSelection> {
    select_spanning_tree(3)
}

/// Distinct-label spanning tree of the chain graph; the deleted cycle edge
/// at the top level is the one with the largest label.
pub fn select_spanning_tree(n: usize) -> Result<SpanningSelection> {
    check_n(n, 3)?;
    let names = linkage_names(n)?;
    let unused = if n == 3 {
        names.iter().max().unwrap().clone()
    } else {
        component_cycle_at(&names, n)?.into_iter().map(|e| e.label).max().unwrap()
    };
    let mut edges = Vec::with_capacity(names.len());
    span(&names, n, &unused, &mut edges)?;
    let selection = SpanningSelection { edges, unused };
    validate_selection(n, &selection)?;
    Ok(selection)
}

/// Edge count, label distinctness and spanning-tree shape over all chains.
pub fn validate_selection(n: usize, sel: &SpanningSelection) -> Result<()> {
    let chains: Vec<Cycle> = enumerate_necklaces(n, ClassLabel::new(1, 2))?
        .into_iter()
        .map(|nk| nk.front().clone())
        .collect();
    if sel.edges.len() + 1 != chains.len() {
        return Err(Error::Selection(format!(
            "{} edges for {} chains",
            sel.edges.len(),
            chains.len()
        )));
    }
    let mut labels = HashSet::new();
    for e in &sel.edges {
        if !labels.insert(&e.label) || e.label == sel.unused {
            return Err(Error::Selection(format!("label {} used twice", e.label)));
        }
    }
    let index: HashMap<&Cycle, usize> = chains.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let mut parent: Vec<usize> = (0..chains.len()).collect();
    fn find(parent: &mut [usize], mut v: usize) -> usize {
        while parent[v] != v {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        v
    }
    for e in &sel.edges {
        let lookup = |c: &Cycle| {
            index
                .get(c)
                .copied()
                .ok_or_else(|| Error::Selection(format!("{c} does not name a chain")))
        };
        let (a, b) = (lookup(&e.endpoints.0)?, lookup(&e.endpoints.1)?);
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            return Err(Error::Selection(format!("edge via {} closes a cycle", e.label)));
        }
        parent[ra] = rb;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wrap_positions() {
        // positions 2..=7 for m = 4
        assert_eq!(wrap(1, 4), 7);
        assert_eq!(wrap(0, 4), 6);
        assert_eq!(wrap(8, 4), 2);
        assert_eq!(wrap(5, 4), 5);
        // positions 2..=5 for m = 3
        assert_eq!(wrap(1, 3), 5);
    }

    #[test]
    fn s7_cycle_uses_every_linkage_once() {
        let names = linkage_names(3).unwrap();
        let cycle = block_cycle(&names).unwrap();
        let labels: HashSet<_> = cycle.iter().map(|e| e.label.clone()).collect();
        assert_eq!(labels.len(), 12);
        assert_eq!(cycle.iter().filter(|e| e.sign == 6).count(), 4);
    }

    #[test]
    fn dropping_any_s7_cycle_edge_leaves_a_tree() {
        let names = linkage_names(3).unwrap();
        let cycle = block_cycle(&names).unwrap();
        for k in 0..cycle.len() {
            let mut edges = cycle.clone();
            let removed = edges.remove(k);
            validate_selection(3, &SpanningSelection { edges, unused: removed.label }).unwrap();
        }
    }

    #[test]
    fn s7_tree() {
        let sel = select_spanning_tree_s7().unwrap();
        assert_eq!(sel.edges.len(), 11);
        assert_eq!(sel.unused, linkage_names(3).unwrap().into_iter().max().unwrap());
    }

    #[test]
    fn s9_tree() {
        let sel = select_spanning_tree(4).unwrap();
        assert_eq!(sel.edges.len(), 359);
        let cycle = component_cycle(4).unwrap();
        assert_eq!(cycle.len(), 30);
        assert!(cycle.iter().any(|e| e.label == sel.unused));
    }

    #[test]
    fn rejects_small_n() {
        assert!(select_spanning_tree(2).is_err());
        assert!(component_cycle(3).is_err());
    }

    #[test]
    fn duplicate_labels_are_rejected() {
        let mut sel = select_spanning_tree_s7().unwrap();
        sel.edges[1] = sel.edges[0].clone();
        assert!(validate_selection(3, &sel).is_err());
    }
}
