//! Complementation of nondeterministic parity tree automata through
//! Pathfinder strategies.
//!
//! `B` accepts a tree iff Pathfinder has a positional winning strategy in
//! the Automaton–Pathfinder game. Strategy labels are guessed node by node;
//! whether a labelling wins is checked branch-wise by a deterministic word
//! automaton obtained by determinizing the complement of the branch
//! automaton.

mod steps;

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;
use std::time::{Duration, Instant};

pub use crate::automata::{pathfinder_game, PathfinderGame};
pub use steps::{
    build_step1, build_step2, build_step3, direction, GuessTransition, StepOne, StepOneLetter, StepThree, StepTwo,
    StepTwoLetter, StrategyMap,
};

use crate::automata::{complete_tree_automaton, reduce, NondetTreeAutomaton, TreeTransition};
use crate::machine::WordMachine;
use crate::{Error, Result};

pub use crate::determinization::DEFAULT_BUDGET;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplementationReport {
    /// States of the input automaton.
    pub input_states: usize,
    /// Whether completion had to add a rejecting sink.
    pub sink_added: bool,
    /// States of the branch automaton (reduced input plus the escape state).
    pub step1_states: usize,
    /// Explored states of the determinized strategy checker.
    pub step2_states: usize,
    /// States of the deterministic tree automaton over (strategy, symbol).
    pub step3_states: usize,
    /// States and transitions of the reduced complement.
    pub result_states: usize,
    pub result_transitions: usize,
    pub budget: usize,
    pub timings: Vec<(&'static str, Duration)>,
}

impl fmt::Display for ComplementationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "input_states={}", self.input_states)?;
        writeln!(f, "sink_added={}", self.sink_added)?;
        writeln!(f, "step1_states={}", self.step1_states)?;
        writeln!(f, "step2_states={}", self.step2_states)?;
        writeln!(f, "step3_states={}", self.step3_states)?;
        writeln!(f, "result_states={}", self.result_states)?;
        writeln!(f, "result_transitions={}", self.result_transitions)?;
        writeln!(f, "budget={}", self.budget)?;
        for (step, t) in &self.timings {
            writeln!(f, "time_{step}_ms={:.3}", t.as_secs_f64() * 1000.0)?;
        }
        Ok(())
    }
}

/// Tree automaton accepting exactly the trees `a` rejects.
///
/// Exploration is bounded by `budget` states of the strategy checker.
pub fn complement(a: &NondetTreeAutomaton, budget: usize) -> Result<(NondetTreeAutomaton, ComplementationReport)> {
    let start = Instant::now();
    let completed = complete_tree_automaton(a);
    let sink_added = completed.state_count() != a.state_count();
    let base = reduce(&completed);
    let mut report = ComplementationReport {
        input_states: a.state_count(),
        sink_added,
        step1_states: base.state_count() + 1,
        step2_states: 0,
        step3_states: 0,
        result_states: 0,
        result_transitions: 0,
        budget,
        timings: vec![("prepare", start.elapsed())],
    };
    let name = format!("not-{}", a.name);
    let alphabet = a.alphabet().clone();
    let finish = |b: NondetTreeAutomaton, mut report: ComplementationReport| {
        report.result_states = b.state_count();
        report.result_transitions = b.transitions().len();
        (b, report)
    };
    if is_empty_form(&base) {
        return Ok(finish(NondetTreeAutomaton::universal(name, alphabet), report));
    }
    if is_universal_form(&base) {
        return Ok(finish(NondetTreeAutomaton::empty_language(name, alphabet), report));
    }

    let explore = Instant::now();
    let step3 = build_step3(&build_step2(&build_step1(&base)));
    type S = <StepTwo as WordMachine>::State;
    let mut index: HashMap<S, usize> = HashMap::new();
    let mut states: Vec<S> = vec![step3.initial_state()];
    index.insert(states[0].clone(), 0);
    let mut transitions = Vec::new();
    let mut next = 0;
    while next < states.len() {
        let state = states[next].clone();
        let sources: BTreeSet<usize> = state.reachable().iter().map(|b| *b.inner()).collect();
        for symbol in 0..alphabet.len() {
            for strategy in useful_strategies(&base, &sources, symbol) {
                let (l, r) = step3.transition(&state, &strategy, symbol);
                let mut id = |s: S| -> Result<usize> {
                    if let Some(&id) = index.get(&s) {
                        return Ok(id);
                    }
                    if states.len() >= budget {
                        return Err(Error::BudgetExceeded {
                            step: "complementation: strategy checker".into(),
                            budget,
                        });
                    }
                    index.insert(s.clone(), states.len());
                    states.push(s);
                    Ok(states.len() - 1)
                };
                let left = id(l)?;
                let right = id(r)?;
                transitions.push(TreeTransition {
                    source: next,
                    symbol,
                    left,
                    right,
                });
            }
        }
        next += 1;
    }
    report.step2_states = states.len();
    report.step3_states = states.len();
    report.timings.push(("explore", explore.elapsed()));

    let shrink = Instant::now();
    let b = NondetTreeAutomaton::new(
        name,
        alphabet,
        (0..states.len()).map(|i| format!("c{i}")).collect(),
        0,
        transitions,
        states.iter().map(|s| step3.rank(s)).collect(),
    )?;
    let b = reduce(&b).with_numbered_states("c");
    report.timings.push(("reduce", shrink.elapsed()));
    Ok(finish(b, report))
}

/// One-state rejecting loop, the shape `reduce` gives an empty language.
fn is_empty_form(a: &NondetTreeAutomaton) -> bool {
    a.state_count() == 1 && a.rank(0) % 2 == 1
}

/// One state of even rank looping on every symbol.
fn is_universal_form(a: &NondetTreeAutomaton) -> bool {
    a.state_count() == 1 && a.rank(0) % 2 == 0 && a.is_complete()
}

/// Strategy maps worth guessing at a macro-state whose runs are in
/// `sources`, reading `symbol`.
///
/// Only transitions leaving `sources` on `symbol` matter. For each source,
/// a choice sends some of its transitions left and the rest right; it is
/// summarized by the pair (left targets, right targets). Pathfinder never
/// loses by picking a choice whose pair is componentwise smaller, so only
/// minimal pairs are kept.
fn useful_strategies(a: &NondetTreeAutomaton, sources: &BTreeSet<usize>, symbol: usize) -> Vec<Arc<StrategyMap>> {
    let mut per_source: Vec<Vec<Vec<usize>>> = Vec::new();
    for &q in sources {
        let ts = a.transitions_from(q, symbol);
        if ts.is_empty() {
            continue;
        }
        let mut options: Vec<(BTreeSet<usize>, BTreeSet<usize>, Vec<usize>)> = Vec::new();
        for mask in 0u64..(1u64 << ts.len()) {
            let mut left = BTreeSet::new();
            let mut right = BTreeSet::new();
            let mut ones = Vec::new();
            for (i, &t) in ts.iter().enumerate() {
                let tr = a.transitions()[t];
                if mask >> i & 1 == 1 {
                    right.insert(tr.right);
                    ones.push(t);
                } else {
                    left.insert(tr.left);
                }
            }
            if !options.iter().any(|(l, r, _)| *l == left && *r == right) {
                options.push((left, right, ones));
            }
        }
        let minimal: Vec<Vec<usize>> = options
            .iter()
            .filter(|(l, r, _)| {
                !options
                    .iter()
                    .any(|(l2, r2, _)| (l2 != l || r2 != r) && l2.is_subset(l) && r2.is_subset(r))
            })
            .map(|(_, _, ones)| ones.clone())
            .collect();
        per_source.push(minimal);
    }
    let mut maps: Vec<StrategyMap> = vec![StrategyMap::new()];
    for choices in per_source {
        maps = maps
            .into_iter()
            .flat_map(|m| {
                choices.iter().map(move |ones| {
                    let mut m = m.clone();
                    m.extend(ones.iter().copied());
                    m
                })
            })
            .collect();
    }
    maps.into_iter().map(Arc::new).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{npt_emptiness, npt_member, Alphabet};
    use crate::regular_trees::RegularTree;

    fn ab() -> Alphabet {
        Alphabet::new(["a", "b"]).unwrap()
    }

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

    #[test]
    fn trivial_languages() {
        let (b, _) = complement(&NondetTreeAutomaton::universal("u", ab()), DEFAULT_BUDGET).unwrap();
        assert!(npt_emptiness(&b).is_empty());
        let (b, _) = complement(&NondetTreeAutomaton::empty_language("e", ab()), DEFAULT_BUDGET).unwrap();
        assert!(npt_member(&b, &RegularTree::constant(ab(), 0)).unwrap().accepted);
    }

    #[test]
    fn some_branch_without_b() {
        let (b, report) = complement(&eventually_b(), DEFAULT_BUDGET).unwrap();
        assert!(report.step2_states > 0);
        // all-a: accepted by the complement
        assert!(npt_member(&b, &RegularTree::constant(ab(), 0)).unwrap().accepted);
        // b at the root: every branch sees b
        let t = RegularTree::from_names(&["a", "b"], &[("r", "b", "s", "s"), ("s", "a", "s", "s")]).unwrap();
        assert!(!npt_member(&b, &t).unwrap().accepted);
        // b only on the left spine below the root: the right branch is all a
        let t = RegularTree::from_names(&["a", "b"], &[("r", "a", "l", "s"), ("l", "b", "l", "l"), ("s", "a", "s", "s")])
            .unwrap();
        assert!(npt_member(&b, &t).unwrap().accepted);
    }

    #[test]
    fn budget_overflow_is_reported() {
        let err = complement(&eventually_b(), 1).unwrap_err();
        assert!(err.is_budget());
    }
}
