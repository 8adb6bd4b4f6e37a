use std::collections::BTreeSet;

use super::{GameSolution, ParityGame, Player, PositionalStrategy};
use crate::{Error, Result};

pub const DEFAULT_BRUTE_FORCE_LIMIT: usize = 8;

pub fn brute_force_solve(game: &ParityGame) -> Result<GameSolution> {
    brute_force_solve_with_limit(game, DEFAULT_BRUTE_FORCE_LIMIT)
}

/// Test oracle: tries every pair of positional strategies.
///
/// `Exists` wins from `v` iff some strategy of hers wins `v` against every
/// counter-strategy; positional determinacy makes this exact and guarantees
/// one strategy that wins the whole region.
pub fn brute_force_solve_with_limit(game: &ParityGame, limit: usize) -> Result<GameSolution> {
    let n = game.vertex_count();
    if n > limit.min(32) {
        return Err(Error::GameTooLarge { vertices: n, limit });
    }
    let owned = |p: Player| -> Vec<usize> { (0..n).filter(|&v| game.owner(v) == p).collect() };
    let ex = owned(Player::Exists);
    let fa = owned(Player::Forall);
    let sigmas = all_strategies(game, &ex);
    let taus = all_strategies(game, &fa);
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };

    // outcome[i][j]: vertices from which Exists wins under (sigma_i, tau_j)
    let mut choice = vec![0usize; n];
    let mut outcome = vec![vec![0u32; taus.len()]; sigmas.len()];
    for (i, sigma) in sigmas.iter().enumerate() {
        for (&v, &w) in ex.iter().zip(sigma) {
            choice[v] = w;
        }
        for (j, tau) in taus.iter().enumerate() {
            for (&v, &w) in fa.iter().zip(tau) {
                choice[v] = w;
            }
            outcome[i][j] = exists_wins(game, &choice);
        }
    }
    let wins_sigma: Vec<u32> = outcome.iter().map(|row| row.iter().fold(full, |m, &o| m & o)).collect();
    let wins_tau: Vec<u32> = (0..taus.len())
        .map(|j| outcome.iter().fold(full, |m, row| m & !row[j]))
        .collect();
    let region_exists = wins_sigma.iter().fold(0, |m, &w| m | w);
    let region_forall = wins_tau.iter().fold(0, |m, &w| m | w);
    debug_assert_eq!(region_exists & region_forall, 0);
    debug_assert_eq!(region_exists | region_forall, full);

    let pick = |wins: &[u32], region: u32| wins.iter().position(|&w| w == region).unwrap_or(0);
    let make = |player: Player, vertices: &[usize], moves: &[usize], region: u32| {
        let mut s = PositionalStrategy::new(player);
        for (&v, &w) in vertices.iter().zip(moves) {
            if region >> v & 1 == 1 {
                s.moves.insert(v, w);
            }
        }
        s
    };
    let set = |mask: u32| -> BTreeSet<usize> { (0..n).filter(|&v| mask >> v & 1 == 1).collect() };
    Ok(GameSolution {
        region_exists: set(region_exists),
        region_forall: set(region_forall),
        strategy_exists: make(Player::Exists, &ex, &sigmas[pick(&wins_sigma, region_exists)], region_exists),
        strategy_forall: make(Player::Forall, &fa, &taus[pick(&wins_tau, region_forall)], region_forall),
    })
}

fn all_strategies(game: &ParityGame, vertices: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &v in vertices {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                game.successors(v).iter().map(move |&w| {
                    let mut s = prefix.clone();
                    s.push(w);
                    s
                })
            })
            .collect();
    }
    out
}

/// Bitmask of start vertices whose unique play has an even least cycle rank.
fn exists_wins(game: &ParityGame, choice: &[usize]) -> u32 {
    let n = choice.len();
    let mut mask = 0;
    for start in 0..n {
        let mut seen = vec![usize::MAX; n];
        let mut path = Vec::new();
        let mut v = start;
        while seen[v] == usize::MAX {
            seen[v] = path.len();
            path.push(v);
            v = choice[v];
        }
        let min = path[seen[v]..].iter().map(|&u| game.rank(u)).min().expect("cycle is non-empty");
        if min % 2 == 0 {
            mask |= 1 << start;
        }
    }
    mask
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games::solve;

    #[test]
    fn agrees_on_two_vertex_example() {
        let g = ParityGame::parse("parity-game index 0 1\nv0 E(1) -> v0,v1\nv1 A(0) -> v1\n").unwrap();
        let b = brute_force_solve(&g).unwrap();
        assert_eq!(b.region_exists, BTreeSet::from([0, 1]));
        assert_eq!(b.region_exists, solve(&g).region_exists);
        assert_eq!(b.strategy_exists.get(0), Some(1));
    }

    #[test]
    fn too_large() {
        let names: Vec<String> = (0..9).map(|i| format!("v{i}")).collect();
        let g = ParityGame::new(names, vec![Player::Exists; 9], vec![0; 9], (0..9).map(|v| vec![v]).collect(), 0, None)
            .unwrap();
        assert!(matches!(brute_force_solve(&g), Err(Error::GameTooLarge { vertices: 9, limit: 8 })));
    }
}
