//! The word automata behind tree complementation, built lazily over
//! structured letters so that strategy maps are never enumerated.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::automata::NondetTreeAutomaton;
use crate::determinization::{BuchiView, Complemented, SafraDet};
use crate::machine::{DetMachine, WordMachine};

/// A map from transitions of the tree automaton to directions, stored as
/// the set of transition indices sent to 1 (right).
pub type StrategyMap = BTreeSet<usize>;

/// Direction a strategy map assigns to transition `t`.
pub fn direction(s: &StrategyMap, t: usize) -> u8 {
    u8::from(s.contains(&t))
}

/// Letter `(s, a, δ, π)` of the first word automaton.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StepOneLetter {
    pub strategy: Arc<StrategyMap>,
    pub symbol: usize,
    pub transition: usize,
    pub direction: u8,
}

/// Letter `(s, a, π)` of the second word automaton.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StepTwoLetter {
    pub strategy: Arc<StrategyMap>,
    pub symbol: usize,
    pub direction: u8,
}

/// Deterministic automaton following one branch of a run of `A`: it reads
/// the strategy label, the tree label, Automaton's transition and
/// Pathfinder's direction. `None` is the accepting sink reached when the
/// transition does not fit or the direction disagrees with the strategy.
/// Ranks are shifted by one so that it accepts the branches lost by
/// Automaton.
#[derive(Debug, Clone)]
pub struct StepOne {
    pub automaton: Arc<NondetTreeAutomaton>,
}

pub fn build_step1(a: &NondetTreeAutomaton) -> StepOne {
    StepOne {
        automaton: Arc::new(a.clone()),
    }
}

impl WordMachine for StepOne {
    type State = Option<usize>;
    type Letter = StepOneLetter;

    fn initial_state(&self) -> Option<usize> {
        Some(self.automaton.initial())
    }
    fn successors(&self, state: &Option<usize>, letter: &StepOneLetter) -> Vec<Option<usize>> {
        vec![self.step(state, letter)]
    }
    fn rank(&self, state: &Option<usize>) -> u32 {
        state.map_or(0, |q| self.automaton.rank(q) + 1)
    }
    fn state_name(&self, state: &Option<usize>) -> String {
        state.map_or_else(|| "⊤".to_string(), |q| self.automaton.states()[q].clone())
    }
    fn is_accepting_sink(&self, state: &Option<usize>) -> bool {
        state.is_none()
    }
}

impl DetMachine for StepOne {
    fn step(&self, state: &Option<usize>, letter: &StepOneLetter) -> Option<usize> {
        let q = (*state)?;
        let t = self.automaton.transitions().get(letter.transition)?;
        if t.source != q || t.symbol != letter.symbol || direction(&letter.strategy, letter.transition) != letter.direction
        {
            return None;
        }
        Some(t.target(letter.direction))
    }
}

/// Complement of the first automaton with the transition component
/// guessed: a run exists iff some choice of transitions consistent with
/// the strategy yields a branch won by Automaton. The complemented sink is
/// rejecting and therefore dropped.
#[derive(Debug, Clone)]
pub struct GuessTransition {
    pub step_one: Complemented<StepOne>,
}

impl WordMachine for GuessTransition {
    type State = usize;
    type Letter = StepTwoLetter;

    fn initial_state(&self) -> usize {
        self.step_one.inner.automaton.initial()
    }
    fn successors(&self, state: &usize, letter: &StepTwoLetter) -> Vec<usize> {
        let a = &self.step_one.inner.automaton;
        let mut out: Vec<usize> = a
            .transitions_from(*state, letter.symbol)
            .iter()
            .filter(|&&t| direction(&letter.strategy, t) == letter.direction)
            .map(|&t| a.transitions()[t].target(letter.direction))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }
    fn rank(&self, state: &usize) -> u32 {
        self.step_one.rank(&Some(*state))
    }
    fn state_name(&self, state: &usize) -> String {
        self.step_one.state_name(&Some(*state))
    }
}

/// Deterministic automaton accepting the words `(s, a, π)` for which every
/// choice of transitions is accepted by the first automaton.
pub type StepTwo = Complemented<SafraDet<BuchiView<GuessTransition>>>;

pub fn build_step2(a1: &StepOne) -> StepTwo {
    let guess = GuessTransition {
        step_one: Complemented { inner: a1.clone() },
    };
    Complemented {
        inner: SafraDet::new(BuchiView::new(guess)),
    }
}

/// Deterministic tree automaton over (strategy, symbol): both sons continue
/// the second automaton in their direction.
#[derive(Debug, Clone)]
pub struct StepThree {
    pub step_two: StepTwo,
}

pub fn build_step3(a2: &StepTwo) -> StepThree {
    StepThree { step_two: a2.clone() }
}

impl StepThree {
    pub fn initial_state(&self) -> <StepTwo as WordMachine>::State {
        self.step_two.initial_state()
    }

    pub fn transition(
        &self,
        state: &<StepTwo as WordMachine>::State,
        strategy: &Arc<StrategyMap>,
        symbol: usize,
    ) -> (<StepTwo as WordMachine>::State, <StepTwo as WordMachine>::State) {
        let letter = |direction| StepTwoLetter {
            strategy: strategy.clone(),
            symbol,
            direction,
        };
        (self.step_two.step(state, &letter(0)), self.step_two.step(state, &letter(1)))
    }

    pub fn rank(&self, state: &<StepTwo as WordMachine>::State) -> u32 {
        self.step_two.rank(state)
    }
}
