mod common;

use std::collections::BTreeSet;

use common::rng;
use proptest::prelude::*;
use rabin_core::games::{
    brute_force_solve, difference_to_rank_labelling, ranks_along, solve, verify_positional_strategy,
    DifferenceCondition, ParityGame, Player,
};
use rabin_core::generate;
use rand::Rng;

fn check_against_brute_force(g: &ParityGame) {
    let fast = solve(g);
    let slow = brute_force_solve(g).unwrap();
    for p in [Player::Exists, Player::Forall] {
        assert_eq!(fast.region(p), slow.region(p), "{p} regions differ on\n{g}");
        assert!(verify_positional_strategy(g, fast.strategy(p), fast.region(p)).unwrap(), "solver {p}\n{g}");
        assert!(verify_positional_strategy(g, slow.strategy(p), slow.region(p)).unwrap(), "brute {p}\n{g}");
    }
    let all: BTreeSet<usize> = fast.region(Player::Exists).union(fast.region(Player::Forall)).copied().collect();
    assert_eq!(all.len(), g.vertex_count());
}

#[test]
fn solver_matches_brute_force() {
    let mut r = rng(3);
    for _ in 0..600 {
        let n = r.gen_range(1..=6);
        let g = generate::parity_game(&mut r, n, 3, 3);
        check_against_brute_force(&g);
    }
}

#[test]
fn solver_matches_brute_force_on_two_vertex_family() {
    // every owner, rank and edge pattern on two vertices
    let patterns: [&[&[usize]]; 4] = [&[&[0], &[1]], &[&[1], &[0]], &[&[0, 1], &[0]], &[&[1], &[0, 1]]];
    for succ in patterns {
        for owners in 0..4 {
            for ranks in 0..9u32 {
                let g = ParityGame::new(
                    vec!["a".into(), "b".into()],
                    (0..2).map(|i| if owners >> i & 1 == 0 { Player::Exists } else { Player::Forall }).collect(),
                    vec![ranks % 3, ranks / 3],
                    succ.iter().map(|s| s.to_vec()).collect(),
                    2,
                    None,
                )
                .unwrap();
                check_against_brute_force(&g);
            }
        }
    }
}

/// Removing top-rank vertices that are unreachable from the initial vertex
/// leaves its winner unchanged.
#[test]
fn unreachable_top_rank_vertices_do_not_matter() {
    let mut r = rng(5);
    let mut checked = 0;
    for _ in 0..400 {
        let n = r.gen_range(2..=6);
        let g = generate::parity_game(&mut r, n, 3, 2);
        let top = g.max_rank();
        let mut reach = BTreeSet::from([0]);
        let mut stack = vec![0];
        while let Some(v) = stack.pop() {
            for &w in g.successors(v) {
                if reach.insert(w) {
                    stack.push(w);
                }
            }
        }
        if (0..n).any(|v| reach.contains(&v) && g.rank(v) == top) || (0..n).all(|v| g.rank(v) != top) {
            continue;
        }
        // the reachable part is closed under moves and has no top-rank vertex
        let keep: Vec<usize> = reach.into_iter().collect();
        let index = |v: usize| keep.iter().position(|&k| k == v).unwrap();
        let h = ParityGame::new(
            keep.iter().map(|&v| g.name(v).to_string()).collect(),
            keep.iter().map(|&v| g.owner(v)).collect(),
            keep.iter().map(|&v| g.rank(v)).collect(),
            keep.iter().map(|&v| g.successors(v).iter().map(|&w| index(w)).collect()).collect(),
            top,
            Some(0),
        )
        .unwrap();
        assert_eq!(solve(&g).winner(0), solve(&h).winner(0));
        checked += 1;
    }
    assert!(checked > 20);
}

proptest! {
    #[test]
    fn shifting_ranks_by_two_keeps_regions(seed in any::<u64>(), n in 1usize..7) {
        let mut r = rng(seed);
        let g = generate::parity_game(&mut r, n, 3, 3);
        let h = ParityGame::new(
            g.names().to_vec(),
            (0..n).map(|v| g.owner(v)).collect(),
            (0..n).map(|v| g.rank(v) + 2).collect(),
            (0..n).map(|v| g.successors(v).to_vec()).collect(),
            g.max_rank() + 2,
            None,
        ).unwrap();
        let (a, b) = (solve(&g), solve(&h));
        prop_assert_eq!(a.region(Player::Exists), b.region(Player::Exists));
    }

    #[test]
    fn swapping_roles_swaps_regions(seed in any::<u64>(), n in 1usize..7) {
        let mut r = rng(seed);
        let g = generate::parity_game(&mut r, n, 3, 3);
        let h = ParityGame::new(
            g.names().to_vec(),
            (0..n).map(|v| g.owner(v).opponent()).collect(),
            (0..n).map(|v| g.rank(v) + 1).collect(),
            (0..n).map(|v| g.successors(v).to_vec()).collect(),
            g.max_rank() + 1,
            None,
        ).unwrap();
        let (a, b) = (solve(&g), solve(&h));
        prop_assert_eq!(a.region(Player::Exists), b.region(Player::Forall));
    }
}

/// Occurrences of any of `patterns` ending within `prefix`.
fn occurrences(patterns: &[&str], prefix: &[u8]) -> usize {
    let s: String = prefix.iter().map(|b| if *b == 1 { '1' } else { '0' }).collect();
    (1..=s.len()).filter(|&end| patterns.iter().any(|p| s[..end].ends_with(p))).count()
}

fn infinitely_often(patterns: &[&str], period: &[u8]) -> bool {
    let reps = patterns.iter().map(|p| p.len()).max().unwrap_or(0) + 1;
    let cycle: Vec<u8> = period.iter().copied().cycle().take(period.len() * reps).collect();
    occurrences(patterns, &cycle) > 0
}

#[test]
fn rank_labelling_liminf_is_least_true_level() {
    const PATTERNS: [&str; 7] = ["11", "00", "101", "1", "01", "0", "10"];
    let mut r = rng(19);
    for _ in 0..40 {
        let x = r.gen_range(1..=3u32);
        // nested pattern sets make the family monotone in y
        let mut levels: Vec<Vec<&'static str>> = Vec::new();
        let mut current = Vec::new();
        for _ in 0..x {
            current.push(PATTERNS[r.gen_range(0..PATTERNS.len())]);
            levels.push(current.clone());
        }
        let prefix: Vec<u8> = (0..r.gen_range(0..4)).map(|_| r.gen_range(0..2)).collect();
        let period: Vec<u8> = (0..r.gen_range(1..5)).map(|_| r.gen_range(0..2)).collect();
        let expected = (0..x).find(|&y| infinitely_often(&levels[y as usize], &period)).unwrap_or(x);

        let table = levels.clone();
        let c = DifferenceCondition::new(x, move |y, z, _, p| Ok(occurrences(&table[y as usize], p) > z));
        let play: Vec<u8> = prefix.iter().chain(period.iter().cycle().take(period.len() * 60)).copied().collect();
        let ranks = ranks_along(&c, &play).unwrap();
        let tail = *ranks[ranks.len() * 2 / 3..].iter().min().unwrap();
        assert_eq!(tail, expected, "levels {levels:?}, prefix {prefix:?}, period {period:?}");
        assert_eq!(difference_to_rank_labelling(&c, &play).unwrap(), *ranks.last().unwrap());
    }
}
