use std::collections::BTreeSet;

use super::{ParityGame, Player, PositionalStrategy};
use crate::graph;
use crate::{Error, Result};

/// Checks that `strategy` wins every play starting in `region`.
///
/// The owner's vertices keep only their strategy edge, the opponent keeps
/// all edges. The strategy wins iff no play leaves `region` and every cycle
/// inside it has a least rank of the owner's parity. Cycles are found per
/// wrong-parity rank `r` as cyclic components of the subgraph of ranks `>= r`
/// that contain a vertex of rank `r`.
pub fn verify_positional_strategy(
    game: &ParityGame,
    strategy: &PositionalStrategy,
    region: &BTreeSet<usize>,
) -> Result<bool> {
    let n = game.vertex_count();
    for (&v, &w) in &strategy.moves {
        if v >= n || w >= n || !game.has_edge(v, w) {
            return Err(Error::IllegalMove {
                from: name(game, v),
                to: name(game, w),
            });
        }
    }
    let player = strategy.player;
    let mut in_region = vec![false; n];
    for &v in region {
        if v >= n {
            return Err(Error::malformed("strategy region", "vertex out of range"));
        }
        in_region[v] = true;
    }
    let mut adj = vec![Vec::new(); n];
    for &v in region {
        if game.owner(v) == player {
            let w = strategy.get(v).ok_or_else(|| Error::MissingMove(game.name(v).to_string()))?;
            adj[v].push(w);
        } else {
            adj[v].extend_from_slice(game.successors(v));
        }
        if adj[v].iter().any(|&w| !in_region[w]) {
            return Ok(false);
        }
    }
    let wrong = player.opponent();
    let mut bad_ranks: Vec<u32> = region
        .iter()
        .map(|&v| game.rank(v))
        .filter(|&r| Player::of_parity(r) == wrong)
        .collect();
    bad_ranks.sort_unstable();
    bad_ranks.dedup();
    for r in bad_ranks {
        let active: Vec<bool> = (0..n).map(|v| in_region[v] && game.rank(v) >= r).collect();
        let (comp, cyclic) = graph::sccs(&adj, &active);
        if (0..n).any(|v| active[v] && game.rank(v) == r && cyclic[comp[v]]) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn name(game: &ParityGame, v: usize) -> String {
    if v < game.vertex_count() {
        game.name(v).to_string()
    } else {
        format!("#{v}")
    }
}
