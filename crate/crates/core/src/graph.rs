//! The chain graph: chains as vertices, `M[x]`-connections through
//! `[2,1]`-necklaces (linkages) as edges.

use std::fmt;

use rayon::prelude::*;

use crate::chain::ChainSet;
use crate::error::{Error, Result};
use crate::partition::{check_n, enumerate_necklaces, ClassLabel, Necklace};
use crate::perm::{Cycle, Permutation};

/// A `[2,1]`-necklace used to join two chains.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Linkage {
    necklace: Necklace,
}

impl Linkage {
    pub fn new(necklace: Necklace) -> Result<Self> {
        if necklace.class() != ClassLabel::new(2, 1) {
            return Err(Error::InvalidParameter(format!("{necklace} is not a [2,1]-necklace")));
        }
        Ok(Self { necklace })
    }

    pub fn from_name(name: Cycle) -> Result<Self> {
        let front = name.elements().to_vec();
        let word = Permutation::from_parts(&front, &[2, 1])?;
        if !word.is_even() {
            return Err(Error::InvalidParameter(format!("{name} does not name a linkage")));
        }
        Self::new(Necklace::from_parts(ClassLabel::new(2, 1), name))
    }

    pub fn name(&self) -> &Cycle {
        self.necklace.front()
    }

    pub fn necklace(&self) -> &Necklace {
        &self.necklace
    }

    /// Where an `M[x]`-connection through this linkage is spliced in.
    pub fn splice_site(&self, x: u8) -> Option<SpliceSite> {
        let word = self.necklace.codeword_ending_with(x)?;
        Some(SpliceSite::at(&word))
    }
}

impl fmt::Display for Linkage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.necklace)
    }
}

/// The codewords touched by an `M[x]`-connection.
///
/// `linkage_word = [α,x,2,1]` is followed by `[x,α,2,1]` inside the linkage;
/// `first = [α,1,x,2]` precedes `[1,α,x,2]` in one chain and
/// `second = [α,2,1,x]` precedes `[2,α,1,x]` in the other.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SpliceSite {
    pub linkage_word: Permutation,
    pub first: Permutation,
    pub second: Permutation,
}

impl SpliceSite {
    /// Site for a `[2,1]` codeword `[α,x,2,1]`.
    pub fn at(word: &Permutation) -> Self {
        let len = word.len();
        let alpha = &word.as_slice()[..len - 3];
        let x = word.get(len - 2);
        let mk = |tail: [u8; 3]| {
            let mut v = alpha.to_vec();
            v.extend_from_slice(&tail);
            Permutation::from_slice_unchecked(&v)
        };
        Self {
            linkage_word: *word,
            first: mk([1, x, 2]),
            second: mk([2, 1, x]),
        }
    }

    pub fn sign(&self) -> u8 {
        self.linkage_word.get(self.linkage_word.len() - 2)
    }
}

/// Every linkage of `S_{2n+1}`, sorted by name.
pub fn linkages(n: usize) -> Result<Vec<Linkage>> {
    enumerate_necklaces(n, ClassLabel::new(2, 1))?
        .into_iter()
        .map(Linkage::new)
        .collect()
}

/// The cycle `(5 6 .. x)` for even `x`, `(5 6 .. x-2 x)` for odd `x`.
fn relabel_cycle(x: u8) -> Cycle {
    let mut elems: Vec<u8> = if x.is_multiple_of(2) { (5..=x).collect() } else { (5..=x - 2).collect() };
    if x % 2 == 1 {
        elems.push(x);
    }
    Cycle::new(elems).expect("nonempty distinct")
}

/// Chain names joined by the `M[x]`-connection through `link`, from the
/// closed-form relabeling: `(3 x)π` and `σπ`. `None` for `x` in `3..=5`.
///
/// The first name owns `[1,α,x,2]`, the second owns `[2,α,1,x]`.
pub fn m_connection_endpoints(link: &Linkage, x: u8) -> Result<Option<(Cycle, Cycle)>> {
    let len = link.name().len() + 2;
    if x < 3 || x as usize > len {
        return Err(Error::InvalidParameter(format!(
            "sign M[{x}] outside 3..={len}"
        )));
    }
    if x <= 5 {
        return Ok(None);
    }
    let swap = Cycle::new(vec![3, x])?;
    let name = link.name();
    Ok(Some((name.relabeled_by(&swap), name.relabeled_by(&relabel_cycle(x)))))
}

/// Owning chain of `p`, read from the chain index.
pub fn trace_chain_of(p: &Permutation, chains: &ChainSet) -> Result<usize> {
    chains.owner_of(p).ok_or(Error::NotInAnyChain(*p))
}

/// Chain indices joined through `link` with sign `x`, by tracing the two
/// splice codewords. Equal indices mean no edge.
pub fn traced_endpoints(link: &Linkage, x: u8, chains: &ChainSet) -> Result<(usize, usize)> {
    let site = link
        .splice_site(x)
        .ok_or_else(|| Error::InvalidParameter(format!("{x} not in linkage {link}")))?;
    Ok((trace_chain_of(&site.first, chains)?, trace_chain_of(&site.second, chains)?))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectionEdge {
    pub sign: u8,
    pub label: Cycle,
    pub endpoints: (usize, usize),
    pub site: SpliceSite,
}

/// Positions `(i, j)` of `2n` and `2n+1` in a name read from 4.
pub fn component_of(name: &Cycle, n: usize) -> (usize, usize) {
    let seq = name.rotated_to(4).expect("names contain 4");
    let pos = |v: u8| seq.iter().position(|&e| e == v).unwrap() + 1;
    (pos((2 * n) as u8), pos((2 * n + 1) as u8))
}

pub struct ChainGraph {
    n: usize,
    vertices: Vec<Cycle>,
    edges: Vec<ConnectionEdge>,
    components: Vec<(usize, usize)>,
}

impl ChainGraph {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> &[Cycle] {
        &self.vertices
    }

    pub fn edges(&self) -> &[ConnectionEdge] {
        &self.edges
    }

    /// Component `C_{i,j}` of each vertex.
    pub fn component(&self, vertex: usize) -> (usize, usize) {
        self.components[vertex]
    }

    /// Vertex list then one edge per line: `M[x] label a b`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (i, v) in self.vertices.iter().enumerate() {
            out.push_str(&format!("vertex {i} {}\n", v.display_from(4)));
        }
        for e in &self.edges {
            out.push_str(&format!(
                "edge M[{}] {} {} {}\n",
                e.sign,
                e.label.display_from(4),
                e.endpoints.0,
                e.endpoints.1
            ));
        }
        out
    }
}

/// All `M[x]` edges for `6 <= x <= 2n+1`. Each edge's endpoints are
/// computed by the relabeling formula and must agree with chain tracing.
pub fn build_chain_graph(chains: &ChainSet) -> Result<ChainGraph> {
    let n = chains.n();
    check_n(n, 3)?;
    let len = (2 * n + 1) as u8;
    let links = linkages(n)?;
    let per_link: Vec<Vec<ConnectionEdge>> = links
        .par_iter()
        .map(|link| {
            (6..=len)
                .map(|x| {
                    let (a, b) = m_connection_endpoints(link, x)?.unwrap();
                    let ia = chains.index_of(&a);
                    let ib = chains.index_of(&b);
                    let traced = traced_endpoints(link, x, chains)?;
                    if (ia, ib) != (Some(traced.0), Some(traced.1)) {
                        return Err(Error::FormulaMismatch(format!(
                            "M[{x}] via {link}: formula gives {a}/{b}, tracing gives {}/{}",
                            chains.chain(traced.0).name(),
                            chains.chain(traced.1).name()
                        )));
                    }
                    if traced.0 == traced.1 {
                        return Err(Error::FormulaMismatch(format!(
                            "M[{x}] via {link} is a self-loop"
                        )));
                    }
                    Ok(ConnectionEdge {
                        sign: x,
                        label: link.name().clone(),
                        endpoints: traced,
                        site: link.splice_site(x).unwrap(),
                    })
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    let vertices: Vec<Cycle> = chains.chains().iter().map(|c| c.name().clone()).collect();
    let components = vertices.iter().map(|v| component_of(v, n)).collect();
    Ok(ChainGraph {
        n,
        vertices,
        edges: per_link.into_iter().flatten().collect(),
        components,
    })
}
