//! Difference-hierarchy conditions and their translation to ranks.
//!
//! A condition of index `x` is a family `psi(y, f)` for `y < x`, each in the
//! normal form `forall z exists u delta(y, z, u, f|u)`. The labelling below
//! assigns each finite play prefix a rank in `0..=x` so that along every
//! infinite play the liminf of ranks is the least `y` with `y = x` or
//! `psi(y, f)`.

use std::fmt;
use std::sync::Arc;

use super::Player;
use crate::machine::Lasso;
use crate::{Error, Result};

/// `delta(y, z, u, prefix)` where `prefix` is the play restricted to its
/// first `u` moves.
pub type DeltaFn = dyn Fn(u32, usize, usize, &[u8]) -> std::result::Result<bool, String> + Send + Sync;

#[derive(Clone)]
pub struct DifferenceCondition {
    pub x: u32,
    pub delta: Arc<DeltaFn>,
}

impl DifferenceCondition {
    pub fn new(
        x: u32,
        delta: impl Fn(u32, usize, usize, &[u8]) -> std::result::Result<bool, String> + Send + Sync + 'static,
    ) -> Self {
        DifferenceCondition { x, delta: Arc::new(delta) }
    }
}

impl fmt::Debug for DifferenceCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DifferenceCondition").field("x", &self.x).finish_non_exhaustive()
    }
}

/// Rank of the node `node` (a binary string) in the tree-like game of
/// index `(0, x)` defined by `c`.
pub fn difference_to_rank_labelling(c: &DifferenceCondition, node: &[u8]) -> Result<u32> {
    Ok(*ranks_along(c, node)?.last().expect("at least the root"))
}

/// Ranks of every prefix `node|0, ..., node|len` in order, computed in one
/// pass since each rank depends on the ranks of shorter prefixes.
///
/// The rank at length `i` is the least `y < x` such that
/// `forall z <= c exists u <= i delta(y, z, u, node|u)`, where `c` counts
/// the earlier prefixes that received rank `y`; otherwise `x`. Choosing the
/// bound `j = c + 1` suffices because a larger `j` only strengthens the
/// universal quantifier.
pub fn ranks_along(c: &DifferenceCondition, node: &[u8]) -> Result<Vec<u32>> {
    if node.iter().any(|&b| b > 1) {
        return Err(Error::malformed("tree node", "nodes are strings over {0,1}"));
    }
    let mut ranks: Vec<u32> = Vec::with_capacity(node.len() + 1);
    let mut counts = vec![0usize; c.x as usize + 1];
    // per (y, z): whether some u seen so far satisfies delta, else the next u to try
    let mut search: Vec<Vec<Result<(), usize>>> = vec![Vec::new(); c.x as usize];
    for i in 0..=node.len() {
        let mut rank = c.x;
        for y in 0..c.x {
            let row = &mut search[y as usize];
            let mut holds = true;
            for z in 0..=counts[y as usize] {
                if row.len() <= z {
                    row.push(Err(0));
                }
                while let Err(u) = row[z] {
                    if u > i {
                        break;
                    }
                    row[z] = if (c.delta)(y, z, u, &node[..u]).map_err(Error::Predicate)? { Ok(()) } else { Err(u + 1) };
                }
                if row[z].is_err() {
                    holds = false;
                    break;
                }
            }
            if holds {
                rank = y;
                break;
            }
        }
        counts[rank as usize] += 1;
        ranks.push(rank);
    }
    Ok(ranks)
}

/// Winner of an ultimately periodic ranked play: the parity of the least
/// rank in the period.
pub fn parity_play_winner(play: &Lasso<u32>, x: u32) -> Result<Player> {
    if let Some(&r) = play.prefix.iter().chain(&play.period).find(|&&r| r > x) {
        return Err(Error::RankOutOfRange { rank: r, max: x });
    }
    let min = play.period.iter().copied().min().expect("period is non-empty");
    Ok(Player::of_parity(min))
}
