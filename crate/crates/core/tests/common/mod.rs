//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{HashMap, VecDeque};

use rabin_core::automata::{NondetTreeAutomaton, NondetWordAutomaton, UltimatelyPeriodicWord};
use rabin_core::games::Player;
use rabin_core::regular_trees::{GameSymbol, RegularTree};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Vertices reachable from `from` (excluding `from` unless on a cycle)
/// through vertices satisfying `allowed`.
fn reach(adj: &[Vec<usize>], from: usize, allowed: &dyn Fn(usize) -> bool) -> Vec<bool> {
    let mut seen = vec![false; adj.len()];
    let mut queue = VecDeque::new();
    for &w in &adj[from] {
        if allowed(w) && !seen[w] {
            seen[w] = true;
            queue.push_back(w);
        }
    }
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if allowed(w) && !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    seen
}

/// Some reachable cycle (through `allowed_cycle` vertices) has an even least rank.
fn has_even_cycle(adj: &[Vec<usize>], ranks: &[u32], start: usize, in_cycle_zone: &dyn Fn(usize) -> bool) -> bool {
    let reachable = {
        let mut r = reach(adj, start, &|_| true);
        r[start] = true;
        r
    };
    (0..adj.len()).any(|v| {
        reachable[v]
            && in_cycle_zone(v)
            && ranks[v] % 2 == 0
            && reach(adj, v, &|w| in_cycle_zone(w) && ranks[w] >= ranks[v])[v]
    })
}

/// Lasso membership by explicit product construction and per-vertex
/// cycle search (no strongly connected components).
pub fn lasso_oracle(a: &NondetWordAutomaton, w: &UltimatelyPeriodicWord) -> bool {
    let lasso = w.to_lasso(a.alphabet()).unwrap();
    let positions = lasso.prefix.len() + lasso.period.len();
    let n = a.state_count();
    let id = |q: usize, p: usize| q * positions + p;
    let mut adj = vec![Vec::new(); n * positions];
    let mut ranks = vec![0; n * positions];
    for q in 0..n {
        for p in 0..positions {
            ranks[id(q, p)] = a.ranks()[q];
            let np = if p + 1 < positions { p + 1 } else { lasso.prefix.len() };
            for &t in a.targets(q, *lasso.letter(p)) {
                adj[id(q, p)].push(id(t, np));
            }
        }
    }
    let prefix = lasso.prefix.len();
    has_even_cycle(&adj, &ranks, id(a.initial(), 0), &|v| v % positions >= prefix)
}

/// Tree membership by trying every positional choice of transitions on
/// reachable (tree node, state) pairs and checking every branch cycle.
pub fn tree_member_oracle(a: &NondetTreeAutomaton, t: &RegularTree) -> bool {
    let label = |v: usize| a.alphabet().index_of(t.alphabet().symbol(t.label(v))).unwrap();
    // pairs reachable under some choice
    let mut index: HashMap<(usize, usize), usize> = HashMap::new();
    let mut pairs = vec![(t.root(), a.initial())];
    index.insert(pairs[0], 0);
    let mut i = 0;
    while i < pairs.len() {
        let (v, q) = pairs[i];
        for &tr in a.transitions_from(q, label(v)) {
            let tr = a.transitions()[tr];
            for next in [(t.left(v), tr.left), (t.right(v), tr.right)] {
                if !index.contains_key(&next) {
                    index.insert(next, pairs.len());
                    pairs.push(next);
                }
            }
        }
        i += 1;
    }
    let options: Vec<&[usize]> = pairs.iter().map(|&(v, q)| a.transitions_from(q, label(v))).collect();
    let ranks: Vec<u32> = pairs.iter().map(|&(_, q)| a.ranks()[q]).collect();
    let mut choice = vec![0usize; pairs.len()];
    loop {
        // graph induced by the choice, from the root pair
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); pairs.len()];
        let mut dead = vec![false; pairs.len()];
        for (k, &(v, _)) in pairs.iter().enumerate() {
            if options[k].is_empty() {
                dead[k] = true;
                continue;
            }
            let tr = a.transitions()[options[k][choice[k]]];
            adj[k].push(index[&(t.left(v), tr.left)]);
            adj[k].push(index[&(t.right(v), tr.right)]);
        }
        let mut reachable = reach(&adj, 0, &|_| true);
        reachable[0] = true;
        let accepting = !(0..pairs.len()).any(|k| reachable[k] && dead[k])
            && !(0..pairs.len()).any(|k| {
                reachable[k] && ranks[k] % 2 == 1 && reach(&adj, k, &|w| ranks[w] >= ranks[k])[k]
            });
        if accepting {
            return true;
        }
        // next choice vector
        let mut k = 0;
        loop {
            if k == pairs.len() {
                return false;
            }
            if options[k].is_empty() {
                k += 1;
                continue;
            }
            choice[k] += 1;
            if choice[k] < options[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

/// Winner of the game played directly on the unfolding of `tree`, stopped
/// at the first repeated (node, depth parity, layer); the least rank on the
/// repeated segment decides. The stop happens within `horizon` moves.
pub fn first_cycle_winner(tree: &RegularTree, symbols: &[GameSymbol], history: &mut Vec<(usize, u8, usize)>, horizon: usize) -> Player {
    let (v, p, i) = *history.last().unwrap();
    assert!(history.len() <= horizon + 1, "no repetition within the horizon");
    let owner = if p == 0 { Player::Exists } else { Player::Forall };
    let sym = &symbols[tree.label(v)];
    let moves: Vec<(u8, usize)> = sym.edges.iter().filter(|e| e.0 == i).map(|e| (e.1, e.2)).collect();
    assert!(!moves.is_empty());
    for (b, j) in moves {
        let next = (tree.child(v, b), 1 - p, j);
        let winner = if let Some(h) = history.iter().position(|&s| s == next) {
            let least = history[h..].iter().map(|&(w, _, l)| symbols[tree.label(w)].ranks[l]).min().unwrap();
            Player::of_parity(least)
        } else {
            history.push(next);
            let w = first_cycle_winner(tree, symbols, history, horizon);
            history.pop();
            w
        };
        if winner == owner {
            return owner;
        }
    }
    owner.opponent()
}
