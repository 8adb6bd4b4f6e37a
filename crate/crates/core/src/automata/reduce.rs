//! Language-preserving size reductions for tree automata.

use std::collections::HashMap;

use super::{NondetTreeAutomaton, TreeTransition};
use crate::games::{solve, Player};

/// Above this many states the simulation preorder is replaced by the
/// cheaper forward bisimulation.
pub const SIMULATION_LIMIT: usize = 150;

/// Restricts to `keep` (which must contain the initial state), renumbering in order.
fn restrict(a: &NondetTreeAutomaton, keep: &[bool]) -> NondetTreeAutomaton {
    let mut map = vec![usize::MAX; a.state_count()];
    let mut states = Vec::new();
    let mut ranks = Vec::new();
    for q in 0..a.state_count() {
        if keep[q] {
            map[q] = states.len();
            states.push(a.states[q].clone());
            ranks.push(a.ranks[q]);
        }
    }
    let transitions = a
        .transitions
        .iter()
        .filter(|t| keep[t.source] && keep[t.left] && keep[t.right])
        .map(|t| TreeTransition {
            source: map[t.source],
            symbol: t.symbol,
            left: map[t.left],
            right: map[t.right],
        })
        .collect();
    NondetTreeAutomaton::new(a.name.clone(), a.alphabet.clone(), states, map[a.initial], transitions, ranks)
        .expect("restriction keeps the initial state")
}

/// Drops states unreachable from the initial state.
pub fn trim(a: &NondetTreeAutomaton) -> NondetTreeAutomaton {
    let mut seen = vec![false; a.state_count()];
    seen[a.initial] = true;
    let mut stack = vec![a.initial];
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); a.state_count()];
    for t in &a.transitions {
        out[t.source].push(t.left);
        out[t.source].push(t.right);
    }
    while let Some(q) = stack.pop() {
        for &p in &out[q] {
            if !seen[p] {
                seen[p] = true;
                stack.push(p);
            }
        }
    }
    if seen.iter().all(|&s| s) {
        return a.clone();
    }
    restrict(a, &seen)
}

/// Drops states with empty language and every transition touching them.
/// An automaton with empty language becomes the one-state rejecting loop.
pub fn remove_empty_states(a: &NondetTreeAutomaton) -> NondetTreeAutomaton {
    let game = super::emptiness_game(a);
    let solution = solve(&game);
    let nonempty: Vec<bool> = (0..a.state_count()).map(|q| solution.winner(q) == Player::Exists).collect();
    if !nonempty[a.initial] {
        return NondetTreeAutomaton::empty_language(a.name.clone(), a.alphabet.clone());
    }
    if nonempty.iter().all(|&s| s) {
        return a.clone();
    }
    restrict(a, &nonempty)
}

/// Compresses ranks to a window starting at 0 or 1 while keeping their
/// order and parity: runs of equal-parity neighbours share one value.
pub fn normalize_tree_ranks(a: &NondetTreeAutomaton) -> NondetTreeAutomaton {
    a.with_ranks(compress_ranks(&a.ranks))
}

pub(crate) fn compress_ranks(ranks: &[u32]) -> Vec<u32> {
    let mut distinct: Vec<u32> = ranks.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    let mut map = HashMap::new();
    let mut current: Option<u32> = None;
    for &r in &distinct {
        let v = match current {
            None => r % 2,
            Some(c) if c % 2 == r % 2 => c,
            Some(c) => c + 1,
        };
        map.insert(r, v);
        current = Some(v);
    }
    ranks.iter().map(|r| map[r]).collect()
}

/// Direct simulation preorder: `sim[q][p]` iff `p` has the rank of `q` and
/// answers every transition of `q` with a transition on the same symbol
/// whose targets simulate `q`'s targets componentwise.
fn direct_simulation(a: &NondetTreeAutomaton) -> Vec<Vec<bool>> {
    let n = a.state_count();
    let k = a.alphabet.len();
    let mut sim: Vec<Vec<bool>> = (0..n)
        .map(|q| {
            (0..n)
                .map(|p| {
                    a.ranks[q] == a.ranks[p]
                        && (0..k).all(|s| a.transitions_from(q, s).is_empty() || !a.transitions_from(p, s).is_empty())
                })
                .collect()
        })
        .collect();
    loop {
        let mut changed = false;
        for q in 0..n {
            for p in 0..n {
                if q == p || !sim[q][p] {
                    continue;
                }
                let ok = (0..k).all(|s| {
                    a.transitions_from(q, s).iter().all(|&t| {
                        let t = a.transitions[t];
                        a.transitions_from(p, s).iter().any(|&u| {
                            let u = a.transitions[u];
                            sim[t.left][u.left] && sim[t.right][u.right]
                        })
                    })
                });
                if !ok {
                    sim[q][p] = false;
                    changed = true;
                }
            }
        }
        if !changed {
            return sim;
        }
    }
}

/// Merges simulation-equivalent states, then removes every transition
/// dominated by another one from the same state on the same symbol.
pub fn simulation_quotient(a: &NondetTreeAutomaton) -> NondetTreeAutomaton {
    let sim = direct_simulation(a);
    let n = a.state_count();
    let mut class = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for q in 0..n {
        if class[q] != usize::MAX {
            continue;
        }
        let c = reps.len();
        reps.push(q);
        for p in q..n {
            if sim[q][p] && sim[p][q] {
                class[p] = c;
            }
        }
    }
    let quotient = quotient_by(a, &class, &reps);
    let csim: Vec<Vec<bool>> = reps.iter().map(|&q| reps.iter().map(|&p| sim[q][p]).collect()).collect();
    let dominated = |t: &TreeTransition, u: &TreeTransition| {
        t != u && csim[t.left][u.left] && csim[t.right][u.right]
    };
    let kept: Vec<TreeTransition> = quotient
        .transitions
        .iter()
        .filter(|t| {
            !quotient
                .transitions_from(t.source, t.symbol)
                .iter()
                .any(|&u| dominated(t, &quotient.transitions[u]))
        })
        .copied()
        .collect();
    NondetTreeAutomaton::new(
        quotient.name.clone(),
        quotient.alphabet.clone(),
        quotient.states.clone(),
        quotient.initial,
        kept,
        quotient.ranks.clone(),
    )
    .expect("pruning keeps the automaton well formed")
}

fn quotient_by(a: &NondetTreeAutomaton, class: &[usize], reps: &[usize]) -> NondetTreeAutomaton {
    let transitions = a
        .transitions
        .iter()
        .map(|t| TreeTransition {
            source: class[t.source],
            symbol: t.symbol,
            left: class[t.left],
            right: class[t.right],
        })
        .collect();
    NondetTreeAutomaton::new(
        a.name.clone(),
        a.alphabet.clone(),
        reps.iter().map(|&q| a.states[q].clone()).collect(),
        class[a.initial],
        transitions,
        reps.iter().map(|&q| a.ranks[q]).collect(),
    )
    .expect("quotient is well formed")
}

/// Coarsest partition where equivalent states have equal ranks and the
/// same transitions up to equivalence of targets.
fn bisimulation_quotient(a: &NondetTreeAutomaton) -> NondetTreeAutomaton {
    let n = a.state_count();
    let mut class: Vec<usize> = a.ranks.iter().map(|&r| r as usize).collect();
    let mut count = 0;
    loop {
        let mut sig_ids: HashMap<(usize, Vec<(usize, usize, usize)>), usize> = HashMap::new();
        let next: Vec<usize> = (0..n)
            .map(|q| {
                let mut sig: Vec<(usize, usize, usize)> = Vec::new();
                for s in 0..a.alphabet.len() {
                    for &t in a.transitions_from(q, s) {
                        let t = a.transitions[t];
                        sig.push((s, class[t.left], class[t.right]));
                    }
                }
                sig.sort_unstable();
                sig.dedup();
                let len = sig_ids.len();
                *sig_ids.entry((class[q], sig)).or_insert(len)
            })
            .collect();
        let new_count = sig_ids.len();
        class = next;
        if new_count == count {
            break;
        }
        count = new_count;
    }
    let mut reps = vec![usize::MAX; count];
    for q in 0..n {
        if reps[class[q]] == usize::MAX {
            reps[class[q]] = q;
        }
    }
    // renumber classes by representative order
    let mut order: Vec<usize> = (0..count).collect();
    order.sort_by_key(|&c| reps[c]);
    let mut rename = vec![0; count];
    for (i, &c) in order.iter().enumerate() {
        rename[c] = i;
    }
    let class: Vec<usize> = class.iter().map(|&c| rename[c]).collect();
    let reps: Vec<usize> = order.iter().map(|&c| reps[c]).collect();
    quotient_by(a, &class, &reps)
}

/// Trim, drop empty states, quotient (simulation up to
/// [`SIMULATION_LIMIT`] states, bisimulation above) and compress ranks.
pub fn reduce(a: &NondetTreeAutomaton) -> NondetTreeAutomaton {
    let a = trim(a);
    let a = trim(&remove_empty_states(&a));
    let a = if a.state_count() <= SIMULATION_LIMIT {
        simulation_quotient(&a)
    } else {
        bisimulation_quotient(&a)
    };
    normalize_tree_ranks(&trim(&a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::Alphabet;

    #[test]
    fn rank_compression() {
        assert_eq!(compress_ranks(&[2, 3]), vec![0, 1]);
        assert_eq!(compress_ranks(&[1, 2]), vec![1, 2]);
        assert_eq!(compress_ranks(&[0, 2, 4, 5, 7, 8]), vec![0, 0, 0, 1, 1, 2]);
        assert_eq!(compress_ranks(&[3, 3]), vec![1, 1]);
    }

    #[test]
    fn duplicated_states_merge() {
        let a = NondetTreeAutomaton::from_names(
            "dup",
            &["a"],
            &[("p", 0), ("q", 0), ("r", 0)],
            "p",
            &[("p", "a", "q", "r"), ("q", "a", "q", "q"), ("r", "a", "r", "r")],
        )
        .unwrap();
        let r = reduce(&a);
        assert_eq!(r.state_count(), 1);
        assert_eq!(r.transitions().len(), 1);
    }

    #[test]
    fn empty_language_collapses() {
        let a = NondetTreeAutomaton::from_names(
            "none",
            &["a", "b"],
            &[("p", 0), ("q", 1)],
            "p",
            &[("p", "a", "q", "q"), ("q", "a", "q", "q")],
        )
        .unwrap();
        let r = reduce(&a);
        assert_eq!(r, NondetTreeAutomaton::empty_language("none", Alphabet::new(["a", "b"]).unwrap()));
    }

    #[test]
    fn unreachable_states_are_trimmed() {
        let a = NondetTreeAutomaton::from_names(
            "t",
            &["a"],
            &[("p", 0), ("q", 1)],
            "p",
            &[("p", "a", "p", "p"), ("q", "a", "p", "q")],
        )
        .unwrap();
        assert_eq!(trim(&a).state_count(), 1);
    }
}
