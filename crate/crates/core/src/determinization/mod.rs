//! Determinization of parity word automata: a Büchi view of a parity
//! automaton, Safra/Piterman trees, and complementation of deterministic
//! automata by shifting ranks.

mod buchi;
mod safra;

use std::collections::HashMap;

pub use buchi::{BuchiState, BuchiView};
pub use safra::{SafraDet, SafraState};

use crate::automata::{Alphabet, DetWordAutomaton, NondetWordAutomaton, WordTransition};
use crate::machine::{DetMachine, WordMachine};
use crate::{Error, Result};

/// Default cap on explored macro-states.
pub const DEFAULT_BUDGET: usize = 200_000;

/// Language-equivalent automaton of index (0,1). Automata whose ranks are
/// already in {0,1} are returned unchanged.
pub fn parity_to_buchi(a: &NondetWordAutomaton) -> NondetWordAutomaton {
    if a.max_rank() <= 1 {
        return a.clone();
    }
    let view = BuchiView::new(a.clone());
    let letters: Vec<usize> = (0..a.alphabet().len()).collect();
    let mut index: HashMap<BuchiState<usize>, usize> = HashMap::new();
    let mut states = vec![view.initial_state()];
    index.insert(states[0].clone(), 0);
    let mut transitions = Vec::new();
    let mut next = 0;
    while next < states.len() {
        let s = states[next].clone();
        for &l in &letters {
            for t in view.successors(&s, &l) {
                let id = *index.entry(t.clone()).or_insert_with(|| {
                    states.push(t);
                    states.len() - 1
                });
                transitions.push(WordTransition {
                    source: next,
                    symbol: l,
                    target: id,
                });
            }
        }
        next += 1;
    }
    NondetWordAutomaton::new(
        a.name.clone(),
        a.alphabet().clone(),
        states.iter().map(|s| view.state_name(s)).collect(),
        0,
        transitions,
        states.iter().map(|s| view.rank(s)).collect(),
    )
    .expect("explored automaton is well formed")
}

/// Deterministic parity automaton equivalent to the Büchi automaton `b`.
pub fn safra_determinize(b: &NondetWordAutomaton, budget: usize) -> Result<DetWordAutomaton> {
    if b.max_rank() > 1 {
        return Err(Error::malformed("Büchi automaton", "ranks must lie in {0, 1}"));
    }
    let machine = SafraDet::new(b.clone());
    let letters: Vec<usize> = (0..b.alphabet().len()).collect();
    explore_deterministic(&machine, &letters, b.alphabet().clone(), &b.name, "determinization", budget)
}

/// Materializes the reachable part of a deterministic machine, naming
/// states by the machine's canonical names.
pub fn explore_deterministic<M: DetMachine>(
    machine: &M,
    letters: &[M::Letter],
    alphabet: Alphabet,
    name: &str,
    step: &str,
    budget: usize,
) -> Result<DetWordAutomaton> {
    assert_eq!(letters.len(), alphabet.len());
    let mut index: HashMap<M::State, usize> = HashMap::new();
    let mut states = vec![machine.initial_state()];
    index.insert(states[0].clone(), 0);
    let mut next_table = Vec::new();
    let mut next = 0;
    while next < states.len() {
        let s = states[next].clone();
        for l in letters {
            let t = machine.step(&s, l);
            let id = match index.get(&t) {
                Some(&id) => id,
                None => {
                    if states.len() >= budget {
                        return Err(Error::BudgetExceeded {
                            step: step.to_string(),
                            budget,
                        });
                    }
                    index.insert(t.clone(), states.len());
                    states.push(t);
                    states.len() - 1
                }
            };
            next_table.push(id);
        }
        next += 1;
    }
    DetWordAutomaton::new(
        name,
        alphabet,
        states.iter().map(|s| machine.state_name(s)).collect(),
        0,
        next_table,
        states.iter().map(|s| machine.rank(s)).collect(),
    )
}

/// Complement of a deterministic automaton: every rank shifted by one.
pub fn complement_dpw(d: &DetWordAutomaton) -> DetWordAutomaton {
    d.with_ranks(d.ranks().iter().map(|r| r + 1).collect())
}

/// Smallest parity- and order-preserving rank window.
pub fn normalize_ranks(d: &DetWordAutomaton) -> DetWordAutomaton {
    d.with_ranks(crate::automata::compress_ranks(d.ranks()))
}

/// Lazy complement of a deterministic machine.
#[derive(Debug, Clone)]
pub struct Complemented<M> {
    pub inner: M,
}

impl<M: WordMachine> WordMachine for Complemented<M> {
    type State = M::State;
    type Letter = M::Letter;

    fn initial_state(&self) -> M::State {
        self.inner.initial_state()
    }
    fn successors(&self, state: &M::State, letter: &M::Letter) -> Vec<M::State> {
        self.inner.successors(state, letter)
    }
    fn rank(&self, state: &M::State) -> u32 {
        self.inner.rank(state) + 1
    }
    fn state_name(&self, state: &M::State) -> String {
        self.inner.state_name(state)
    }
    fn is_rejecting_sink(&self, state: &M::State) -> bool {
        self.inner.is_accepting_sink(state)
    }
    fn is_accepting_sink(&self, state: &M::State) -> bool {
        self.inner.is_rejecting_sink(state)
    }
}

impl<M: DetMachine> DetMachine for Complemented<M> {
    fn step(&self, state: &M::State, letter: &M::Letter) -> M::State {
        self.inner.step(state, letter)
    }
}
