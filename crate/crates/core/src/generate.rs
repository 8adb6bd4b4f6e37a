//! Seeded random instances for property tests and experiments.

use std::collections::BTreeSet;

use rand::Rng;

use crate::automata::{Alphabet, NondetTreeAutomaton, NondetWordAutomaton, TreeTransition, UltimatelyPeriodicWord, WordTransition};
use crate::games::{ParityGame, Player};
use crate::regular_trees::{AlmostTreeLikeGame, GameSymbol, RegularTree};

/// Alphabet `a, b, c, ...` of the given size (at most 26).
pub fn letters(size: usize) -> Alphabet {
    assert!((1..=26).contains(&size));
    Alphabet::new((0..size).map(|i| ((b'a' + i as u8) as char).to_string())).expect("distinct letters")
}

fn state_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("q{i}")).collect()
}

/// Each (state, symbol, target) triple is present with probability `density`.
pub fn word_automaton<R: Rng>(rng: &mut R, states: usize, alphabet: usize, max_rank: u32, density: f64) -> NondetWordAutomaton {
    let mut transitions = Vec::new();
    for source in 0..states {
        for symbol in 0..alphabet {
            for target in 0..states {
                if rng.gen_bool(density) {
                    transitions.push(WordTransition { source, symbol, target });
                }
            }
        }
    }
    NondetWordAutomaton::new(
        "random",
        letters(alphabet),
        state_names(states),
        0,
        transitions,
        (0..states).map(|_| rng.gen_range(0..=max_rank)).collect(),
    )
    .expect("random automaton is well formed")
}

/// Random tree automaton with exactly one transition per (state, symbol)
/// pair plus up to `extra` further random transitions.
pub fn complete_tree_automaton<R: Rng>(
    rng: &mut R,
    states: usize,
    alphabet: usize,
    extra: usize,
    max_rank: u32,
) -> NondetTreeAutomaton {
    let mut transitions = BTreeSet::new();
    let random_target = |rng: &mut R, source: usize, symbol: usize| TreeTransition {
        source,
        symbol,
        left: rng.gen_range(0..states),
        right: rng.gen_range(0..states),
    };
    for q in 0..states {
        for a in 0..alphabet {
            transitions.insert(random_target(rng, q, a));
        }
    }
    let extra = rng.gen_range(0..=extra);
    for _ in 0..extra {
        let (q, a) = (rng.gen_range(0..states), rng.gen_range(0..alphabet));
        transitions.insert(random_target(rng, q, a));
    }
    NondetTreeAutomaton::new(
        "random",
        letters(alphabet),
        state_names(states),
        0,
        transitions.into_iter().collect(),
        (0..states).map(|_| rng.gen_range(0..=max_rank)).collect(),
    )
    .expect("random automaton is well formed")
}

/// Random tree automaton where each transition is present with
/// probability `density`; may be incomplete.
pub fn tree_automaton<R: Rng>(rng: &mut R, states: usize, alphabet: usize, max_rank: u32, density: f64) -> NondetTreeAutomaton {
    let mut transitions = Vec::new();
    for source in 0..states {
        for symbol in 0..alphabet {
            for left in 0..states {
                for right in 0..states {
                    if rng.gen_bool(density) {
                        transitions.push(TreeTransition { source, symbol, left, right });
                    }
                }
            }
        }
    }
    NondetTreeAutomaton::new(
        "random",
        letters(alphabet),
        state_names(states),
        0,
        transitions,
        (0..states).map(|_| rng.gen_range(0..=max_rank)).collect(),
    )
    .expect("random automaton is well formed")
}

/// Random regular tree with at most `max_nodes` nodes, all reachable.
pub fn regular_tree<R: Rng>(rng: &mut R, alphabet: &Alphabet, max_nodes: usize) -> RegularTree {
    let n = rng.gen_range(1..=max_nodes);
    let labels: Vec<usize> = (0..n).map(|_| rng.gen_range(0..alphabet.len())).collect();
    let left: Vec<usize> = (0..n).map(|_| rng.gen_range(0..n)).collect();
    let right: Vec<usize> = (0..n).map(|_| rng.gen_range(0..n)).collect();
    let (order, index) = reachable_order(0, |v| [left[v], right[v]], n);
    RegularTree::new(
        alphabet.clone(),
        (0..order.len()).map(|i| format!("n{i}")).collect(),
        0,
        order.iter().map(|&v| labels[v]).collect(),
        order.iter().map(|&v| index[left[v]]).collect(),
        order.iter().map(|&v| index[right[v]]).collect(),
    )
    .expect("only reachable nodes are kept")
}

fn reachable_order(root: usize, next: impl Fn(usize) -> [usize; 2], n: usize) -> (Vec<usize>, Vec<usize>) {
    let mut index = vec![usize::MAX; n];
    let mut order = vec![root];
    index[root] = 0;
    let mut i = 0;
    while i < order.len() {
        for w in next(order[i]) {
            if index[w] == usize::MAX {
                index[w] = order.len();
                order.push(w);
            }
        }
        i += 1;
    }
    (order, index)
}

/// Random ultimately periodic word with the given length bounds.
pub fn lasso_word<R: Rng>(rng: &mut R, alphabet: &Alphabet, max_prefix: usize, max_period: usize) -> UltimatelyPeriodicWord {
    let pick = |rng: &mut R, len: usize| -> Vec<String> {
        (0..len)
            .map(|_| alphabet.symbol(rng.gen_range(0..alphabet.len())).to_string())
            .collect()
    };
    let prefix_len = rng.gen_range(0..=max_prefix);
    let prefix = pick(rng, prefix_len);
    let period_len = rng.gen_range(1..=max_period.max(1));
    let period = pick(rng, period_len);
    UltimatelyPeriodicWord::new(prefix, period).expect("non-empty period")
}

/// Random parity game on `n` vertices with ranks `0..=max_rank`, each
/// vertex having between 1 and `max_out` successors.
pub fn parity_game<R: Rng>(rng: &mut R, n: usize, max_rank: u32, max_out: usize) -> ParityGame {
    let succ = (0..n)
        .map(|_| {
            let out = rng.gen_range(1..=max_out.min(n));
            (0..out).map(|_| rng.gen_range(0..n)).collect()
        })
        .collect();
    ParityGame::new(
        (0..n).map(|i| format!("v{i}")).collect(),
        (0..n)
            .map(|_| if rng.gen_bool(0.5) { Player::Exists } else { Player::Forall })
            .collect(),
        (0..n).map(|_| rng.gen_range(0..=max_rank)).collect(),
        succ,
        max_rank,
        Some(0),
    )
    .expect("random game has no dead ends")
}

/// Random symbol of `Σ_{x,k}` in which every layer has at least one edge.
pub fn game_symbol<R: Rng>(rng: &mut R, x: u32, k: usize) -> GameSymbol {
    let ranks = (0..=k).map(|_| rng.gen_range(0..=x)).collect();
    let mut edges = BTreeSet::new();
    for i in 0..=k {
        edges.insert((i, rng.gen_range(0..2u8), rng.gen_range(0..=k)));
        for b in 0..2u8 {
            for j in 0..=k {
                if rng.gen_bool(0.3) {
                    edges.insert((i, b, j));
                }
            }
        }
    }
    GameSymbol { ranks, edges }
}

/// Random almost tree-like game presented by `states` automaton states.
pub fn almost_tree_like_game<R: Rng>(rng: &mut R, x: u32, k: usize, states: usize) -> AlmostTreeLikeGame {
    AlmostTreeLikeGame {
        x,
        k,
        symbols: (0..states).map(|_| game_symbol(rng, x, k)).collect(),
        next: (0..states).map(|_| [rng.gen_range(0..states), rng.gen_range(0..states)]).collect(),
        initial: 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generators_respect_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let a = complete_tree_automaton(&mut rng, 2, 2, 0, 2);
            assert!(a.is_complete());
            assert!(a.transitions().len() <= 4);
            let t = regular_tree(&mut rng, &letters(2), 3);
            assert!(t.node_count() <= 3);
            let g = parity_game(&mut rng, 6, 3, 3);
            assert_eq!(g.vertex_count(), 6);
            let s = game_symbol(&mut rng, 2, 1);
            assert!(s.check(2, 1).is_ok());
        }
    }
}
