//! Splicing all chains and all but one linkage into one snake.

use crate::chain::{build_all_chains, ChainSet};
use crate::error::{Error, Result};
use crate::graph::{traced_endpoints, Linkage};
use crate::partition::{check_n, enumerate_necklaces, ClassLabel};
use crate::perm::Permutation;
use crate::snake::{Snake, Splicer};
use crate::spanning::{select_spanning_tree, SelectedEdge};

/// Size of the snake built from chains and linkages, `(2n+1)!/2 - 2n + 1`.
pub fn he_size(n: usize) -> usize {
    crate::perm::factorial(2 * n + 1) / 2 - 2 * n + 1
}

/// First codeword of every assembled snake: the representative of the
/// `[1,2]`-necklace of the chain with the smallest name.
pub fn snake_start(n: usize) -> Result<Permutation> {
    Ok(enumerate_necklaces(n, ClassLabel::new(1, 2))?[0].representative())
}

/// Applies the `M[x]`-connection of `edge`, after checking that its formula
/// endpoints agree with the traced owners of the two splice codewords.
pub(crate) fn connect(splicer: &mut Splicer, chains: &ChainSet, edge: &SelectedEdge) -> Result<()> {
    let link = Linkage::from_name(edge.label.clone())?;
    let traced = traced_endpoints(&link, edge.sign, chains)?;
    let named = (chains.index_of(&edge.endpoints.0), chains.index_of(&edge.endpoints.1));
    if named != (Some(traced.0), Some(traced.1)) || traced.0 == traced.1 {
        return Err(Error::FormulaMismatch(format!(
            "M[{}] via {}: formula {:?}, traced {:?}",
            edge.sign, edge.label, named, traced
        )));
    }
    let site = link.splice_site(edge.sign).expect("sign is in the linkage");
    if !splicer.contains(&site.linkage_word) {
        splicer.insert_snake(&link_snake(&link)?)?;
    }
    splicer.rotate3(&site.linkage_word, &site.first, &site.second)
}

fn link_snake(link: &Linkage) -> Result<Snake> {
    Snake::from_codewords(&link.necklace().codewords())
}

/// Assembles from prebuilt chains, splicing the edges in the given order.
pub fn assemble_with_edges(chains: &ChainSet, edges: &[SelectedEdge]) -> Result<Snake> {
    let n = chains.n();
    let mut splicer = Splicer::new(2 * n + 1);
    for chain in chains.chains() {
        splicer.insert_snake(chain.snake())?;
    }
    for edge in edges {
        connect(&mut splicer, chains, edge)?;
    }
    let snake = splicer.walk(&snake_start(n)?)?;
    if snake.len() != splicer.len() {
        return Err(Error::Splice(format!(
            "walk covers {} of {} codewords",
            snake.len(),
            splicer.len()
        )));
    }
    Ok(snake)
}

pub fn assemble_he_snake(n: usize) -> Result<Snake> {
    check_n(n, 2)?;
    let chains = build_all_chains(n)?;
    if n == 2 {
        return Ok(chains.chain(0).snake().clone());
    }
    let selection = select_spanning_tree(n)?;
    assemble_with_edges(&chains, &selection.edges)
}
