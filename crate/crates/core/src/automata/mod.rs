//! Parity automata on infinite words and infinite binary trees.
//!
//! States and symbols are stored by index; their names are only used for
//! input/output. Transition lists are kept sorted and free of duplicates so
//! that every construction is reproducible.

mod reduce;
mod text;
mod tree;
mod word;

use std::collections::BTreeSet;
use std::fmt;

pub use reduce::{normalize_tree_ranks, reduce, remove_empty_states, simulation_quotient, trim, SIMULATION_LIMIT};
pub(crate) use reduce::compress_ranks;
pub use text::{parse_automaton, ParsedAutomaton};
pub use tree::{
    complete_tree_automaton, emptiness_game, npt_emptiness, npt_member, pathfinder_game, Emptiness, PathfinderGame,
    TreeMembership,
};
pub use word::{npw_member, verify_word_witness, UltimatelyPeriodicWord, WordMembership};

use crate::machine::{DetMachine, WordMachine};
use crate::{Error, Result};

/// Ordered list of distinct symbol names.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    symbols: Vec<String>,
}

impl Alphabet {
    pub fn new<I, S>(symbols: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(Error::malformed("alphabet", "no symbols"));
        }
        let mut seen = BTreeSet::new();
        for s in &symbols {
            if s.is_empty() || s.chars().any(char::is_whitespace) {
                return Err(Error::malformed("alphabet", format!("invalid symbol `{s}`")));
            }
            if !seen.insert(s.as_str()) {
                return Err(Error::malformed("alphabet", format!("duplicate symbol `{s}`")));
            }
        }
        Ok(Alphabet { symbols })
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn symbol(&self, index: usize) -> &str {
        &self.symbols[index]
    }

    pub fn index_of(&self, symbol: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s == symbol)
    }

    /// Same symbols, regardless of order.
    pub fn same_symbols(&self, other: &Alphabet) -> bool {
        let a: BTreeSet<&String> = self.symbols.iter().collect();
        let b: BTreeSet<&String> = other.symbols.iter().collect();
        a == b
    }
}

fn check_states(what: &'static str, states: &[String], ranks: &[u32], initial: usize) -> Result<()> {
    if states.is_empty() {
        return Err(Error::malformed(what, "an automaton needs at least one state"));
    }
    if ranks.len() != states.len() {
        return Err(Error::malformed(what, "rank must be defined on every state"));
    }
    if initial >= states.len() {
        return Err(Error::malformed(what, "initial state is not declared"));
    }
    let mut seen = BTreeSet::new();
    for s in states {
        if !seen.insert(s.as_str()) {
            return Err(Error::malformed(what, format!("duplicate state `{s}`")));
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WordTransition {
    pub source: usize,
    pub symbol: usize,
    pub target: usize,
}

/// Nondeterministic parity automaton on infinite words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NondetWordAutomaton {
    pub name: String,
    alphabet: Alphabet,
    states: Vec<String>,
    initial: usize,
    transitions: Vec<WordTransition>,
    ranks: Vec<u32>,
    successors: Vec<Vec<usize>>,
}

impl NondetWordAutomaton {
    pub fn new(
        name: impl Into<String>,
        alphabet: Alphabet,
        states: Vec<String>,
        initial: usize,
        mut transitions: Vec<WordTransition>,
        ranks: Vec<u32>,
    ) -> Result<Self> {
        check_states("word automaton", &states, &ranks, initial)?;
        for t in &transitions {
            if t.source >= states.len() || t.target >= states.len() || t.symbol >= alphabet.len() {
                return Err(Error::malformed("word automaton", "transition references an undeclared state or symbol"));
            }
        }
        transitions.sort();
        transitions.dedup();
        let k = alphabet.len();
        let mut successors = vec![Vec::new(); states.len() * k];
        for t in &transitions {
            successors[t.source * k + t.symbol].push(t.target);
        }
        Ok(NondetWordAutomaton {
            name: name.into(),
            alphabet,
            states,
            initial,
            transitions,
            ranks,
            successors,
        })
    }

    /// Convenience constructor from names: transitions are `(source, symbol, target)`.
    pub fn from_names(
        name: &str,
        alphabet: &[&str],
        states: &[(&str, u32)],
        initial: &str,
        transitions: &[(&str, &str, &str)],
    ) -> Result<Self> {
        let alphabet = Alphabet::new(alphabet.iter().copied())?;
        let names: Vec<String> = states.iter().map(|(s, _)| s.to_string()).collect();
        let ranks = states.iter().map(|(_, r)| *r).collect();
        let state = |n: &str| {
            names
                .iter()
                .position(|s| s == n)
                .ok_or_else(|| Error::malformed("word automaton", format!("unknown state `{n}`")))
        };
        let symbol = |a: &str| {
            alphabet
                .index_of(a)
                .ok_or_else(|| Error::malformed("word automaton", format!("unknown symbol `{a}`")))
        };
        let mut ts = Vec::new();
        for (s, a, t) in transitions {
            ts.push(WordTransition {
                source: state(s)?,
                symbol: symbol(a)?,
                target: state(t)?,
            });
        }
        let init = state(initial)?;
        NondetWordAutomaton::new(name, alphabet.clone(), names, init, ts, ranks)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }
    pub fn states(&self) -> &[String] {
        &self.states
    }
    pub fn state_count(&self) -> usize {
        self.states.len()
    }
    pub fn initial(&self) -> usize {
        self.initial
    }
    pub fn transitions(&self) -> &[WordTransition] {
        &self.transitions
    }
    pub fn ranks(&self) -> &[u32] {
        &self.ranks
    }
    pub fn max_rank(&self) -> u32 {
        self.ranks.iter().copied().max().unwrap_or(0)
    }
    pub fn targets(&self, state: usize, symbol: usize) -> &[usize] {
        &self.successors[state * self.alphabet.len() + symbol]
    }

    /// Deterministic iff every (state, symbol) pair has exactly one successor.
    pub fn is_deterministic(&self) -> bool {
        self.successors.iter().all(|s| s.len() == 1)
    }

    pub fn to_deterministic(&self) -> Result<DetWordAutomaton> {
        if !self.is_deterministic() {
            return Err(Error::malformed(
                "deterministic automaton",
                "some (state, symbol) pair does not have exactly one successor",
            ));
        }
        Ok(DetWordAutomaton {
            name: self.name.clone(),
            alphabet: self.alphabet.clone(),
            states: self.states.clone(),
            initial: self.initial,
            next: self.successors.iter().map(|s| s[0]).collect(),
            ranks: self.ranks.clone(),
        })
    }

    pub fn with_ranks(&self, ranks: Vec<u32>) -> Self {
        assert_eq!(ranks.len(), self.states.len());
        NondetWordAutomaton {
            ranks,
            ..self.clone()
        }
    }
}

impl WordMachine for NondetWordAutomaton {
    type State = usize;
    type Letter = usize;

    fn initial_state(&self) -> usize {
        self.initial
    }
    fn successors(&self, state: &usize, letter: &usize) -> Vec<usize> {
        self.targets(*state, *letter).to_vec()
    }
    fn rank(&self, state: &usize) -> u32 {
        self.ranks[*state]
    }
    fn state_name(&self, state: &usize) -> String {
        self.states[*state].clone()
    }
}

/// Deterministic parity word automaton: the transition relation is the
/// graph of a total function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DetWordAutomaton {
    pub name: String,
    alphabet: Alphabet,
    states: Vec<String>,
    initial: usize,
    next: Vec<usize>,
    ranks: Vec<u32>,
}

impl DetWordAutomaton {
    /// `next[q * |alphabet| + a]` is the successor of `q` on symbol `a`.
    pub fn new(
        name: impl Into<String>,
        alphabet: Alphabet,
        states: Vec<String>,
        initial: usize,
        next: Vec<usize>,
        ranks: Vec<u32>,
    ) -> Result<Self> {
        check_states("deterministic automaton", &states, &ranks, initial)?;
        if next.len() != states.len() * alphabet.len() {
            return Err(Error::malformed(
                "deterministic automaton",
                "every (state, symbol) pair needs exactly one transition",
            ));
        }
        if next.iter().any(|&t| t >= states.len()) {
            return Err(Error::malformed("deterministic automaton", "transition to an undeclared state"));
        }
        Ok(DetWordAutomaton {
            name: name.into(),
            alphabet,
            states,
            initial,
            next,
            ranks,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }
    pub fn states(&self) -> &[String] {
        &self.states
    }
    pub fn state_count(&self) -> usize {
        self.states.len()
    }
    pub fn initial(&self) -> usize {
        self.initial
    }
    pub fn ranks(&self) -> &[u32] {
        &self.ranks
    }
    pub fn max_rank(&self) -> u32 {
        self.ranks.iter().copied().max().unwrap_or(0)
    }
    pub fn next(&self, state: usize, symbol: usize) -> usize {
        self.next[state * self.alphabet.len() + symbol]
    }

    pub fn with_ranks(&self, ranks: Vec<u32>) -> Self {
        assert_eq!(ranks.len(), self.states.len());
        DetWordAutomaton {
            ranks,
            ..self.clone()
        }
    }

    pub fn to_nondet(&self) -> NondetWordAutomaton {
        let k = self.alphabet.len();
        let transitions = (0..self.states.len())
            .flat_map(|q| {
                (0..k).map(move |a| WordTransition {
                    source: q,
                    symbol: a,
                    target: self.next[q * k + a],
                })
            })
            .collect();
        NondetWordAutomaton::new(
            self.name.clone(),
            self.alphabet.clone(),
            self.states.clone(),
            self.initial,
            transitions,
            self.ranks.clone(),
        )
        .expect("a deterministic automaton is a well-formed nondeterministic one")
    }
}

impl WordMachine for DetWordAutomaton {
    type State = usize;
    type Letter = usize;

    fn initial_state(&self) -> usize {
        self.initial
    }
    fn successors(&self, state: &usize, letter: &usize) -> Vec<usize> {
        vec![self.next(*state, *letter)]
    }
    fn rank(&self, state: &usize) -> u32 {
        self.ranks[*state]
    }
    fn state_name(&self, state: &usize) -> String {
        self.states[*state].clone()
    }
}

impl DetMachine for DetWordAutomaton {
    fn step(&self, state: &usize, letter: &usize) -> usize {
        self.next(*state, *letter)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TreeTransition {
    pub source: usize,
    pub symbol: usize,
    pub left: usize,
    pub right: usize,
}

impl TreeTransition {
    /// Target in direction `dir` (0 = left son, 1 = right son).
    pub fn target(&self, dir: u8) -> usize {
        if dir == 0 {
            self.left
        } else {
            self.right
        }
    }
}

/// Nondeterministic parity automaton on infinite binary trees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NondetTreeAutomaton {
    pub name: String,
    alphabet: Alphabet,
    states: Vec<String>,
    initial: usize,
    transitions: Vec<TreeTransition>,
    ranks: Vec<u32>,
    by_source_symbol: Vec<Vec<usize>>,
}

impl NondetTreeAutomaton {
    pub fn new(
        name: impl Into<String>,
        alphabet: Alphabet,
        states: Vec<String>,
        initial: usize,
        mut transitions: Vec<TreeTransition>,
        ranks: Vec<u32>,
    ) -> Result<Self> {
        check_states("tree automaton", &states, &ranks, initial)?;
        let n = states.len();
        for t in &transitions {
            if t.source >= n || t.left >= n || t.right >= n || t.symbol >= alphabet.len() {
                return Err(Error::malformed("tree automaton", "transition references an undeclared state or symbol"));
            }
        }
        transitions.sort();
        transitions.dedup();
        let k = alphabet.len();
        let mut by_source_symbol = vec![Vec::new(); n * k];
        for (i, t) in transitions.iter().enumerate() {
            by_source_symbol[t.source * k + t.symbol].push(i);
        }
        Ok(NondetTreeAutomaton {
            name: name.into(),
            alphabet,
            states,
            initial,
            transitions,
            ranks,
            by_source_symbol,
        })
    }

    /// Convenience constructor from names: transitions are `(source, symbol, left, right)`.
    pub fn from_names(
        name: &str,
        alphabet: &[&str],
        states: &[(&str, u32)],
        initial: &str,
        transitions: &[(&str, &str, &str, &str)],
    ) -> Result<Self> {
        let alphabet = Alphabet::new(alphabet.iter().copied())?;
        let names: Vec<String> = states.iter().map(|(s, _)| s.to_string()).collect();
        let ranks = states.iter().map(|(_, r)| *r).collect();
        let state = |n: &str| {
            names
                .iter()
                .position(|s| s == n)
                .ok_or_else(|| Error::malformed("tree automaton", format!("unknown state `{n}`")))
        };
        let mut ts = Vec::new();
        for (s, a, l, r) in transitions {
            ts.push(TreeTransition {
                source: state(s)?,
                symbol: alphabet
                    .index_of(a)
                    .ok_or_else(|| Error::malformed("tree automaton", format!("unknown symbol `{a}`")))?,
                left: state(l)?,
                right: state(r)?,
            });
        }
        let init = state(initial)?;
        NondetTreeAutomaton::new(name, alphabet.clone(), names, init, ts, ranks)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }
    pub fn states(&self) -> &[String] {
        &self.states
    }
    pub fn state_count(&self) -> usize {
        self.states.len()
    }
    pub fn initial(&self) -> usize {
        self.initial
    }
    pub fn transitions(&self) -> &[TreeTransition] {
        &self.transitions
    }
    pub fn ranks(&self) -> &[u32] {
        &self.ranks
    }
    pub fn rank(&self, state: usize) -> u32 {
        self.ranks[state]
    }
    pub fn max_rank(&self) -> u32 {
        self.ranks.iter().copied().max().unwrap_or(0)
    }

    /// Indices (into `transitions()`) of the transitions leaving `state` on `symbol`.
    pub fn transitions_from(&self, state: usize, symbol: usize) -> &[usize] {
        &self.by_source_symbol[state * self.alphabet.len() + symbol]
    }

    pub fn is_complete(&self) -> bool {
        self.by_source_symbol.iter().all(|ts| !ts.is_empty())
    }

    /// Deterministic as a tree automaton: one transition per (state, symbol).
    pub fn is_deterministic(&self) -> bool {
        self.by_source_symbol.iter().all(|ts| ts.len() == 1)
    }

    pub fn with_ranks(&self, ranks: Vec<u32>) -> Self {
        assert_eq!(ranks.len(), self.states.len());
        NondetTreeAutomaton {
            ranks,
            ..self.clone()
        }
    }

    pub fn renamed(&self, name: impl Into<String>) -> Self {
        NondetTreeAutomaton {
            name: name.into(),
            ..self.clone()
        }
    }

    /// Renames states to `{prefix}{index}`.
    pub fn with_numbered_states(&self, prefix: &str) -> Self {
        NondetTreeAutomaton {
            states: (0..self.states.len()).map(|i| format!("{prefix}{i}")).collect(),
            ..self.clone()
        }
    }

    /// One state of odd rank, looping on every symbol: accepts nothing.
    pub fn empty_language(name: impl Into<String>, alphabet: Alphabet) -> Self {
        Self::single_state(name, alphabet, 1)
    }

    /// One state of rank 0, looping on every symbol: accepts every tree.
    pub fn universal(name: impl Into<String>, alphabet: Alphabet) -> Self {
        Self::single_state(name, alphabet, 0)
    }

    fn single_state(name: impl Into<String>, alphabet: Alphabet, rank: u32) -> Self {
        let transitions = (0..alphabet.len())
            .map(|a| TreeTransition {
                source: 0,
                symbol: a,
                left: 0,
                right: 0,
            })
            .collect();
        NondetTreeAutomaton::new(name, alphabet, vec!["q".into()], 0, transitions, vec![rank])
            .expect("single-state automaton is well formed")
    }
}

impl fmt::Display for NondetWordAutomaton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        text::write_word(f, "npw", &self.name, &self.alphabet, &self.states, self.initial, &self.ranks, self.transitions.iter().map(|t| (t.source, t.symbol, t.target)))
    }
}

impl fmt::Display for DetWordAutomaton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = self.alphabet.len();
        let ts = (0..self.states.len()).flat_map(|q| (0..k).map(move |a| (q, a, self.next[q * k + a])));
        text::write_word(f, "dpw", &self.name, &self.alphabet, &self.states, self.initial, &self.ranks, ts)
    }
}

impl fmt::Display for NondetTreeAutomaton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        text::write_tree(f, self)
    }
}
