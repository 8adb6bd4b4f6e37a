use std::collections::{BTreeSet, HashMap, VecDeque};

use super::{NondetTreeAutomaton, TreeTransition};
use crate::games::{solve, ParityGame, Player, PositionalStrategy};
use crate::regular_trees::RegularTree;
use crate::{Error, Result};

/// Adds a rejecting absorbing sink (rank 1) as the target of every missing
/// (state, symbol) pair. Complete automata are returned unchanged.
pub fn complete_tree_automaton(a: &NondetTreeAutomaton) -> NondetTreeAutomaton {
    if a.is_complete() {
        return a.clone();
    }
    let mut name = "⊥".to_string();
    while a.states.contains(&name) {
        name.push('\'');
    }
    let sink = a.states.len();
    let mut states = a.states.clone();
    states.push(name);
    let mut ranks = a.ranks.clone();
    ranks.push(1);
    let mut transitions = a.transitions.clone();
    for q in 0..=sink {
        for s in 0..a.alphabet.len() {
            if q == sink || a.transitions_from(q, s).is_empty() {
                transitions.push(TreeTransition {
                    source: q,
                    symbol: s,
                    left: sink,
                    right: sink,
                });
            }
        }
    }
    NondetTreeAutomaton::new(a.name.clone(), a.alphabet.clone(), states, a.initial, transitions, ranks)
        .expect("completion keeps the automaton well formed")
}

/// The Automaton–Pathfinder game of `a` on `tree`.
///
/// `Exists` (Automaton) owns positions (node, state) and picks a transition
/// for the node's label; `Forall` (Pathfinder) owns (node, transition) and
/// picks a direction. State positions carry the state's rank, transition
/// positions the automaton's maximal rank.
#[derive(Debug, Clone)]
pub struct PathfinderGame {
    pub game: ParityGame,
    pub initial: usize,
    /// Vertex of each reachable (tree node, state) position.
    pub state_positions: HashMap<(usize, usize), usize>,
}

pub fn pathfinder_game(a: &NondetTreeAutomaton, tree: &RegularTree) -> Result<PathfinderGame> {
    let labels = tree_labels_in(a, tree)?;
    let x = a.max_rank();
    #[derive(Clone, Copy, PartialEq, Eq, Hash)]
    enum Pos {
        State(usize, usize),
        Trans(usize, usize),
    }
    let mut index: HashMap<Pos, usize> = HashMap::new();
    let mut order = Vec::new();
    let start = Pos::State(tree.root(), a.initial);
    index.insert(start, 0);
    order.push(start);
    let mut succ: Vec<Vec<usize>> = Vec::new();
    let mut next = 0;
    while next < order.len() {
        let targets: Vec<Pos> = match order[next] {
            Pos::State(v, q) => a
                .transitions_from(q, labels[v])
                .iter()
                .map(|&t| Pos::Trans(v, t))
                .collect(),
            Pos::Trans(v, t) => {
                let tr = &a.transitions[t];
                vec![Pos::State(tree.left(v), tr.left), Pos::State(tree.right(v), tr.right)]
            }
        };
        let mut out = Vec::new();
        for p in targets {
            let id = *index.entry(p).or_insert_with(|| {
                order.push(p);
                order.len() - 1
            });
            out.push(id);
        }
        succ.push(out);
        next += 1;
    }
    let mut names = Vec::with_capacity(order.len());
    let mut owners = Vec::with_capacity(order.len());
    let mut ranks = Vec::with_capacity(order.len());
    let mut state_positions = HashMap::new();
    for (i, p) in order.iter().enumerate() {
        match *p {
            Pos::State(v, q) => {
                names.push(format!("{}/{}", tree.node_name(v), a.states[q]));
                owners.push(Player::Exists);
                ranks.push(a.ranks[q]);
                state_positions.insert((v, q), i);
            }
            Pos::Trans(v, t) => {
                let tr = &a.transitions[t];
                names.push(format!(
                    "{}/{}:{}:{}:{}",
                    tree.node_name(v),
                    a.states[tr.source],
                    a.alphabet.symbol(tr.symbol),
                    a.states[tr.left],
                    a.states[tr.right]
                ));
                owners.push(Player::Forall);
                ranks.push(x);
            }
        }
    }
    let game = ParityGame::new(names, owners, ranks, succ, x, Some(0))?;
    Ok(PathfinderGame {
        game,
        initial: 0,
        state_positions,
    })
}

/// Symbol index (in `a`'s alphabet) of every tree node.
fn tree_labels_in(a: &NondetTreeAutomaton, tree: &RegularTree) -> Result<Vec<usize>> {
    (0..tree.node_count())
        .map(|v| {
            let s = tree.alphabet().symbol(tree.label(v));
            a.alphabet
                .index_of(s)
                .ok_or_else(|| Error::AlphabetMismatch(format!("tree symbol `{s}` is not in the automaton's alphabet")))
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct TreeMembership {
    pub accepted: bool,
    /// The membership game that was solved (on the completed automaton).
    pub game: ParityGame,
    /// Winning region and positional winning strategy of the winner:
    /// Automaton if `accepted`, Pathfinder otherwise.
    pub region: BTreeSet<usize>,
    pub strategy: PositionalStrategy,
}

/// Decides whether `a` accepts the unfolding of `tree` by solving the
/// Automaton–Pathfinder game. Incomplete automata are completed first.
pub fn npt_member(a: &NondetTreeAutomaton, tree: &RegularTree) -> Result<TreeMembership> {
    let complete = complete_tree_automaton(a);
    let pf = pathfinder_game(&complete, tree)?;
    let solution = solve(&pf.game);
    let winner = solution.winner(pf.initial);
    Ok(TreeMembership {
        accepted: winner == Player::Exists,
        region: solution.region(winner).clone(),
        strategy: solution.strategy(winner).clone(),
        game: pf.game,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Emptiness {
    Empty,
    /// An accepted regular tree with at most one node per automaton state.
    Witness(RegularTree),
}

impl Emptiness {
    pub fn is_empty(&self) -> bool {
        matches!(self, Emptiness::Empty)
    }
}

/// The emptiness game: `Exists` owns the states (vertex `q`) and picks any
/// transition leaving them (vertex `|Q| + t`); `Forall` picks a direction.
/// Transition vertices carry the maximal rank. States without transitions
/// lead to one extra losing vertex, placed last.
pub fn emptiness_game(a: &NondetTreeAutomaton) -> ParityGame {
    let n = a.state_count();
    let m = a.transitions.len();
    let x = a.max_rank().max(1);
    let lose = n + m;
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n + m + 1];
    for (t, tr) in a.transitions.iter().enumerate() {
        succ[tr.source].push(n + t);
        succ[n + t] = vec![tr.left, tr.right];
    }
    for s in succ.iter_mut().take(n) {
        if s.is_empty() {
            s.push(lose);
        }
    }
    succ[lose].push(lose);
    let mut names: Vec<String> = a.states.clone();
    let mut owners = vec![Player::Exists; n];
    let mut ranks = a.ranks.clone();
    for tr in &a.transitions {
        names.push(format!(
            "{}:{}:{}:{}",
            a.states[tr.source],
            a.alphabet.symbol(tr.symbol),
            a.states[tr.left],
            a.states[tr.right]
        ));
        owners.push(Player::Forall);
        ranks.push(x);
    }
    let mut lose_name = "lose".to_string();
    while names.contains(&lose_name) {
        lose_name.push('\'');
    }
    names.push(lose_name);
    owners.push(Player::Forall);
    ranks.push(1);
    ParityGame::new(names, owners, ranks, succ, x, Some(a.initial)).expect("emptiness game is well formed")
}

/// Nonemptiness via the emptiness game; a positional winning strategy of
/// `Exists` is read off as a regular witness tree.
pub fn npt_emptiness(a: &NondetTreeAutomaton) -> Emptiness {
    let game = emptiness_game(a);
    let solution = solve(&game);
    if solution.winner(a.initial) != Player::Exists {
        return Emptiness::Empty;
    }
    let n = a.state_count();
    let chosen = |q: usize| {
        let v = solution.strategy_exists.get(q).expect("strategy defined on the winning region");
        a.transitions[v - n]
    };
    let mut index = HashMap::from([(a.initial, 0usize)]);
    let mut order = vec![a.initial];
    let mut queue = VecDeque::from([a.initial]);
    while let Some(q) = queue.pop_front() {
        let t = chosen(q);
        for p in [t.left, t.right] {
            if !index.contains_key(&p) {
                index.insert(p, order.len());
                order.push(p);
                queue.push_back(p);
            }
        }
    }
    let tree = RegularTree::new(
        a.alphabet.clone(),
        (0..order.len()).map(|i| format!("n{i}")).collect(),
        0,
        order.iter().map(|&q| chosen(q).symbol).collect(),
        order.iter().map(|&q| index[&chosen(q).left]).collect(),
        order.iter().map(|&q| index[&chosen(q).right]).collect(),
    )
    .expect("witness nodes are reachable by construction");
    Emptiness::Witness(tree.minimized())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::Alphabet;
    use crate::games::verify_positional_strategy;

    fn eventually_b() -> NondetTreeAutomaton {
        NondetTreeAutomaton::from_names(
            "eventually-b",
            &["a", "b"],
            &[("wait", 1), ("done", 0)],
            "wait",
            &[
                ("wait", "a", "wait", "wait"),
                ("wait", "b", "done", "done"),
                ("done", "a", "done", "done"),
                ("done", "b", "done", "done"),
            ],
        )
        .unwrap()
    }

    fn ab() -> Alphabet {
        Alphabet::new(["a", "b"]).unwrap()
    }

    #[test]
    fn completion_adds_single_sink() {
        let a = NondetTreeAutomaton::from_names("p", &["a", "b"], &[("q0", 0)], "q0", &[("q0", "a", "q0", "q0")]).unwrap();
        let c = complete_tree_automaton(&a);
        assert_eq!(c.state_count(), 2);
        assert_eq!(c.states()[1], "⊥");
        assert_eq!(c.rank(1), 1);
        assert!(c.is_complete());
        assert_eq!(c.transitions_from(0, 1).len(), 1);
        let u = NondetTreeAutomaton::universal("u", ab());
        assert_eq!(complete_tree_automaton(&u), u);
    }

    #[test]
    fn membership_examples() {
        let a = eventually_b();
        let all_a = RegularTree::constant(ab(), 0);
        let all_b = RegularTree::constant(ab(), 1);
        let m = npt_member(&a, &all_a).unwrap();
        assert!(!m.accepted);
        assert!(verify_positional_strategy(&m.game, &m.strategy, &m.region).unwrap());
        let m = npt_member(&a, &all_b).unwrap();
        assert!(m.accepted);
        assert!(verify_positional_strategy(&m.game, &m.strategy, &m.region).unwrap());
        assert!(npt_member(&NondetTreeAutomaton::universal("u", ab()), &all_a).unwrap().accepted);
    }

    #[test]
    fn alphabet_mismatch() {
        let t = RegularTree::constant(Alphabet::new(["c"]).unwrap(), 0);
        assert!(matches!(npt_member(&eventually_b(), &t), Err(Error::AlphabetMismatch(_))));
    }

    #[test]
    fn emptiness_examples() {
        assert!(npt_emptiness(&NondetTreeAutomaton::empty_language("e", ab())).is_empty());
        let Emptiness::Witness(t) = npt_emptiness(&NondetTreeAutomaton::universal("u", ab())) else {
            panic!("universal automaton is nonempty")
        };
        assert_eq!(t.node_count(), 1);
        let a = eventually_b();
        let Emptiness::Witness(t) = npt_emptiness(&a) else {
            panic!("eventually-b is nonempty")
        };
        assert!(t.node_count() <= a.state_count());
        assert!(npt_member(&a, &t).unwrap().accepted);
    }
}
