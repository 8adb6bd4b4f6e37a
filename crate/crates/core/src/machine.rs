//! Lazily explored parity word automata.
//!
//! Constructions such as determinization or the complementation pipeline
//! work over alphabets far too large to enumerate, so they are expressed as
//! machines whose successor function is evaluated on demand. Explicit
//! automata implement the same traits.

use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;

use crate::graph;

pub trait WordMachine {
    type State: Clone + Eq + Hash + Ord + Debug;
    type Letter: Clone + Debug;

    fn initial_state(&self) -> Self::State;
    fn successors(&self, state: &Self::State, letter: &Self::Letter) -> Vec<Self::State>;
    fn rank(&self, state: &Self::State) -> u32;
    fn state_name(&self, state: &Self::State) -> String;

    /// Absorbing states of odd rank. Nondeterministic constructions may drop
    /// them from successor sets without changing the language.
    fn is_rejecting_sink(&self, _state: &Self::State) -> bool {
        false
    }

    /// Absorbing states of even rank.
    fn is_accepting_sink(&self, _state: &Self::State) -> bool {
        false
    }
}

pub trait DetMachine: WordMachine {
    fn step(&self, state: &Self::State, letter: &Self::Letter) -> Self::State;
}

/// An ultimately periodic word `prefix · period^ω`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Lasso<L> {
    pub prefix: Vec<L>,
    pub period: Vec<L>,
}

impl<L> Lasso<L> {
    /// Panics if `period` is empty.
    pub fn new(prefix: Vec<L>, period: Vec<L>) -> Self {
        assert!(!period.is_empty(), "period of an ultimately periodic word must be non-empty");
        Lasso { prefix, period }
    }

    pub fn positions(&self) -> usize {
        self.prefix.len() + self.period.len()
    }

    pub fn letter(&self, pos: usize) -> &L {
        if pos < self.prefix.len() {
            &self.prefix[pos]
        } else {
            &self.period[pos - self.prefix.len()]
        }
    }

    pub fn next_position(&self, pos: usize) -> usize {
        if pos + 1 < self.positions() {
            pos + 1
        } else {
            self.prefix.len()
        }
    }

    /// Letter at index `i` of the infinite word.
    pub fn at(&self, i: usize) -> &L {
        if i < self.prefix.len() {
            &self.prefix[i]
        } else {
            &self.period[(i - self.prefix.len()) % self.period.len()]
        }
    }

    pub fn map<M>(&self, mut f: impl FnMut(&L) -> M) -> Lasso<M> {
        Lasso {
            prefix: self.prefix.iter().map(&mut f).collect(),
            period: self.period.iter().map(&mut f).collect(),
        }
    }
}

/// A run on a lasso: `stem` followed by `cycle` repeated forever. The cycle
/// starts at a period position and its length is a multiple of the period.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LassoRun<S> {
    pub stem: Vec<S>,
    pub cycle: Vec<S>,
}

struct Product<S> {
    nodes: Vec<(S, usize)>,
    adj: Vec<Vec<usize>>,
}

fn explore_product<M: WordMachine>(machine: &M, word: &Lasso<M::Letter>) -> Product<M::State> {
    let mut index: HashMap<(M::State, usize), usize> = HashMap::new();
    let mut nodes = vec![(machine.initial_state(), 0)];
    index.insert(nodes[0].clone(), 0);
    let mut adj: Vec<Vec<usize>> = vec![Vec::new()];
    let mut next = 0;
    while next < nodes.len() {
        let (state, pos) = nodes[next].clone();
        let npos = word.next_position(pos);
        let mut succ = machine.successors(&state, word.letter(pos));
        succ.sort();
        succ.dedup();
        for s in succ {
            let key = (s, npos);
            let id = match index.get(&key) {
                Some(&id) => id,
                None => {
                    let id = nodes.len();
                    index.insert(key.clone(), id);
                    nodes.push(key);
                    adj.push(Vec::new());
                    id
                }
            };
            adj[next].push(id);
        }
        next += 1;
    }
    Product { nodes, adj }
}

/// Searches the product of `machine` with the positions of `word` for a
/// reachable cycle, inside the period, whose least rank is even.
pub fn lasso_accepting_run<M: WordMachine>(machine: &M, word: &Lasso<M::Letter>) -> Option<LassoRun<M::State>> {
    assert!(!word.period.is_empty(), "empty period");
    let product = explore_product(machine, word);
    let ranks: Vec<u32> = product.nodes.iter().map(|(s, _)| machine.rank(s)).collect();
    let mut even: Vec<u32> = ranks.iter().copied().filter(|r| r % 2 == 0).collect();
    even.sort_unstable();
    even.dedup();
    let n = product.nodes.len();
    for r in even {
        let active: Vec<bool> = (0..n)
            .map(|v| product.nodes[v].1 >= word.prefix.len() && ranks[v] >= r)
            .collect();
        let (comp, cyclic) = graph::sccs(&product.adj, &active);
        let Some(target) = (0..n).find(|&v| active[v] && ranks[v] == r && cyclic[comp[v]]) else {
            continue;
        };
        let in_comp: Vec<bool> = (0..n).map(|v| active[v] && comp[v] == comp[target]).collect();
        let all = vec![true; n];
        let mut stem_ids = vec![0];
        if target != 0 {
            stem_ids.extend(graph::bfs_path(&product.adj, &all, 0, target).expect("target is reachable"));
        }
        stem_ids.pop();
        let mut cycle_ids = vec![target];
        let back = graph::bfs_path(&product.adj, &in_comp, target, target).expect("target lies on a cycle");
        cycle_ids.extend(&back[..back.len() - 1]);
        let state = |v: &usize| product.nodes[*v].0.clone();
        return Some(LassoRun {
            stem: stem_ids.iter().map(state).collect(),
            cycle: cycle_ids.iter().map(state).collect(),
        });
    }
    None
}

pub fn lasso_accepts<M: WordMachine>(machine: &M, word: &Lasso<M::Letter>) -> bool {
    lasso_accepting_run(machine, word).is_some()
}

/// Replays `run` against `machine` on `word` and checks that it is a
/// consistent accepting run.
pub fn verify_lasso_run<M: WordMachine>(machine: &M, word: &Lasso<M::Letter>, run: &LassoRun<M::State>) -> bool {
    if run.cycle.is_empty() || run.cycle.len() % word.period.len() != 0 {
        return false;
    }
    if run.stem.len() < word.prefix.len() {
        // the cycle has to start inside the period
        return false;
    }
    let first = run.stem.first().unwrap_or(&run.cycle[0]);
    if *first != machine.initial_state() {
        return false;
    }
    let seq: Vec<&M::State> = run.stem.iter().chain(run.cycle.iter()).chain(std::iter::once(&run.cycle[0])).collect();
    for i in 0..seq.len() - 1 {
        let letter = word.at(i);
        if !machine.successors(seq[i], letter).contains(seq[i + 1]) {
            return false;
        }
    }
    let min = run.cycle.iter().map(|s| machine.rank(s)).min().expect("non-empty cycle");
    min % 2 == 0
}

/// Deterministic run on a lasso: returns the least rank repeated forever.
pub fn deterministic_liminf<M: DetMachine>(machine: &M, word: &Lasso<M::Letter>) -> u32 {
    let mut seen: HashMap<(M::State, usize), usize> = HashMap::new();
    let mut trace = Vec::new();
    let mut state = machine.initial_state();
    let mut pos = 0;
    loop {
        let key = (state.clone(), pos);
        if let Some(&start) = seen.get(&key) {
            return trace[start..].iter().copied().min().expect("non-empty cycle");
        }
        seen.insert(key, trace.len());
        trace.push(machine.rank(&state));
        state = machine.step(&state, word.letter(pos));
        pos = word.next_position(pos);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Counts modulo 2; rank = current count.
    struct Parity;
    impl WordMachine for Parity {
        type State = u32;
        type Letter = u32;
        fn initial_state(&self) -> u32 {
            0
        }
        fn successors(&self, s: &u32, l: &u32) -> Vec<u32> {
            vec![self.step(s, l)]
        }
        fn rank(&self, s: &u32) -> u32 {
            *s
        }
        fn state_name(&self, s: &u32) -> String {
            s.to_string()
        }
    }
    impl DetMachine for Parity {
        fn step(&self, s: &u32, l: &u32) -> u32 {
            (s + l) % 2
        }
    }

    #[test]
    fn deterministic_runs() {
        // period (1): states alternate 0,1 -> liminf 0
        let w = Lasso::new(vec![], vec![1]);
        assert_eq!(deterministic_liminf(&Parity, &w), 0);
        assert!(lasso_accepts(&Parity, &w));
        // 1 then (0): stays in 1 forever
        let w = Lasso::new(vec![1], vec![0]);
        assert_eq!(deterministic_liminf(&Parity, &w), 1);
        assert!(!lasso_accepts(&Parity, &w));
    }

    #[test]
    fn witness_replays() {
        let w = Lasso::new(vec![1, 1, 0], vec![1, 0, 0]);
        let run = lasso_accepting_run(&Parity, &w).unwrap();
        assert!(verify_lasso_run(&Parity, &w, &run));
        let mut broken = run.clone();
        broken.cycle[0] = 1 - broken.cycle[0];
        assert!(!verify_lasso_run(&Parity, &w, &broken));
    }

    #[test]
    fn lasso_indexing() {
        let w = Lasso::new(vec!['a'], vec!['b', 'c']);
        let s: String = (0..6).map(|i| *w.at(i)).collect();
        assert_eq!(s, "abcbcb");
        assert_eq!(w.next_position(2), 1);
    }
}
