//! Line-based textual automaton format.
//!
//! ```text
//! npt every-branch-b      # header: npw | npt | dpw, then a name
//! alphabet a b
//! states wait done
//! initial wait
//! rank wait 1
//! rank done 0
//! wait a -> wait wait
//! wait b -> done done
//! done a -> done done
//! done b -> done done
//! ```

use std::collections::HashMap;
use std::fmt;

use super::{Alphabet, DetWordAutomaton, NondetTreeAutomaton, NondetWordAutomaton, TreeTransition, WordTransition};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParsedAutomaton {
    Word(NondetWordAutomaton),
    Deterministic(DetWordAutomaton),
    Tree(NondetTreeAutomaton),
}

impl fmt::Display for ParsedAutomaton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParsedAutomaton::Word(a) => a.fmt(f),
            ParsedAutomaton::Deterministic(a) => a.fmt(f),
            ParsedAutomaton::Tree(a) => a.fmt(f),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Npw,
    Npt,
    Dpw,
}

pub fn parse_automaton(text: &str) -> Result<ParsedAutomaton> {
    let mut header: Option<(Kind, String)> = None;
    let mut alphabet: Option<(usize, Vec<String>)> = None;
    let mut states: Option<(usize, Vec<String>)> = None;
    let mut initial: Option<(usize, String)> = None;
    let mut ranks: HashMap<String, (usize, u32)> = HashMap::new();
    let mut transitions: Vec<(usize, Vec<String>)> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let Some(&first) = tokens.first() else { continue };
        if header.is_none() {
            let kind = match first {
                "npw" => Kind::Npw,
                "npt" => Kind::Npt,
                "dpw" => Kind::Dpw,
                other => return Err(Error::parse(line_no, format!("expected header `npw|npt|dpw <name>`, found `{other}`"))),
            };
            if tokens.len() != 2 {
                return Err(Error::parse(line_no, "header must be `npw|npt|dpw <name>`"));
            }
            header = Some((kind, tokens[1].to_string()));
            continue;
        }
        match first {
            "alphabet" => {
                if alphabet.is_some() {
                    return Err(Error::parse(line_no, "alphabet declared twice"));
                }
                alphabet = Some((line_no, tokens[1..].iter().map(|s| s.to_string()).collect()));
            }
            "states" => {
                if states.is_some() {
                    return Err(Error::parse(line_no, "states declared twice"));
                }
                states = Some((line_no, tokens[1..].iter().map(|s| s.to_string()).collect()));
            }
            "initial" => {
                if initial.is_some() {
                    return Err(Error::parse(line_no, "initial state declared twice"));
                }
                if tokens.len() != 2 {
                    return Err(Error::parse(line_no, "expected `initial <state>`"));
                }
                initial = Some((line_no, tokens[1].to_string()));
            }
            "rank" => {
                if tokens.len() != 3 {
                    return Err(Error::parse(line_no, "expected `rank <state> <n>`"));
                }
                let r: u32 = tokens[2]
                    .parse()
                    .map_err(|_| Error::parse(line_no, format!("rank `{}` is not a non-negative integer", tokens[2])))?;
                if ranks.insert(tokens[1].to_string(), (line_no, r)).is_some() {
                    return Err(Error::parse(line_no, format!("duplicate rank for `{}`", tokens[1])));
                }
            }
            _ => {
                if tokens.len() < 2 || tokens.get(2) != Some(&"->") {
                    return Err(Error::parse(line_no, format!("unrecognised line `{}`", line.trim())));
                }
                transitions.push((line_no, tokens.iter().map(|s| s.to_string()).collect()));
            }
        }
    }

    let (kind, name) = header.ok_or_else(|| Error::parse(1, "missing header"))?;
    let (_, symbols) = alphabet.ok_or_else(|| Error::parse(1, "missing `alphabet` line"))?;
    let (states_line, state_names) = states.ok_or_else(|| Error::parse(1, "missing `states` line"))?;
    let alphabet = Alphabet::new(symbols).map_err(|e| Error::parse(1, e.to_string()))?;
    if state_names.is_empty() {
        return Err(Error::parse(states_line, "an automaton needs at least one state"));
    }
    let mut index = HashMap::new();
    for (i, s) in state_names.iter().enumerate() {
        if index.insert(s.clone(), i).is_some() {
            return Err(Error::parse(states_line, format!("duplicate state `{s}`")));
        }
    }
    let (init_line, init_name) = initial.ok_or_else(|| Error::parse(1, "missing `initial` line"))?;
    let init = *index
        .get(&init_name)
        .ok_or_else(|| Error::parse(init_line, format!("initial state `{init_name}` is not declared")))?;
    let mut rank_vec = vec![None; state_names.len()];
    for (s, (line, r)) in &ranks {
        let q = *index
            .get(s)
            .ok_or_else(|| Error::parse(*line, format!("rank given for undeclared state `{s}`")))?;
        rank_vec[q] = Some(*r);
    }
    let rank_vec: Vec<u32> = rank_vec
        .into_iter()
        .enumerate()
        .map(|(q, r)| r.ok_or_else(|| Error::parse(states_line, format!("state `{}` has no rank", state_names[q]))))
        .collect::<Result<_>>()?;

    let state = |line: usize, s: &str| {
        index
            .get(s)
            .copied()
            .ok_or_else(|| Error::parse(line, format!("undeclared state `{s}`")))
    };
    let symbol = |line: usize, a: &str| {
        alphabet
            .index_of(a)
            .ok_or_else(|| Error::parse(line, format!("undeclared symbol `{a}`")))
    };

    match kind {
        Kind::Npw | Kind::Dpw => {
            let mut ts = Vec::new();
            for (line, toks) in &transitions {
                if toks.len() != 4 {
                    return Err(Error::parse(*line, "word transitions have the form `q a -> p`"));
                }
                ts.push(WordTransition {
                    source: state(*line, &toks[0])?,
                    symbol: symbol(*line, &toks[1])?,
                    target: state(*line, &toks[3])?,
                });
            }
            let npw = NondetWordAutomaton::new(name, alphabet, state_names, init, ts, rank_vec)
                .map_err(|e| Error::parse(1, e.to_string()))?;
            if kind == Kind::Npw {
                Ok(ParsedAutomaton::Word(npw))
            } else {
                let dpw = npw.to_deterministic().map_err(|e| Error::parse(1, e.to_string()))?;
                Ok(ParsedAutomaton::Deterministic(dpw))
            }
        }
        Kind::Npt => {
            let mut ts = Vec::new();
            for (line, toks) in &transitions {
                if toks.len() != 5 {
                    return Err(Error::parse(*line, "tree transitions have the form `q a -> l r`"));
                }
                ts.push(TreeTransition {
                    source: state(*line, &toks[0])?,
                    symbol: symbol(*line, &toks[1])?,
                    left: state(*line, &toks[3])?,
                    right: state(*line, &toks[4])?,
                });
            }
            let npt = NondetTreeAutomaton::new(name, alphabet, state_names, init, ts, rank_vec)
                .map_err(|e| Error::parse(1, e.to_string()))?;
            Ok(ParsedAutomaton::Tree(npt))
        }
    }
}

fn write_preamble(
    f: &mut fmt::Formatter<'_>,
    kind: &str,
    name: &str,
    alphabet: &Alphabet,
    states: &[String],
    initial: usize,
    ranks: &[u32],
) -> fmt::Result {
    writeln!(f, "{kind} {name}")?;
    writeln!(f, "alphabet {}", alphabet.symbols().join(" "))?;
    writeln!(f, "states {}", states.join(" "))?;
    writeln!(f, "initial {}", states[initial])?;
    for (s, r) in states.iter().zip(ranks) {
        writeln!(f, "rank {s} {r}")?;
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
pub(super) fn write_word(
    f: &mut fmt::Formatter<'_>,
    kind: &str,
    name: &str,
    alphabet: &Alphabet,
    states: &[String],
    initial: usize,
    ranks: &[u32],
    transitions: impl Iterator<Item = (usize, usize, usize)>,
) -> fmt::Result {
    write_preamble(f, kind, name, alphabet, states, initial, ranks)?;
    for (q, a, p) in transitions {
        writeln!(f, "{} {} -> {}", states[q], alphabet.symbol(a), states[p])?;
    }
    Ok(())
}

pub(super) fn write_tree(f: &mut fmt::Formatter<'_>, a: &NondetTreeAutomaton) -> fmt::Result {
    write_preamble(f, "npt", &a.name, &a.alphabet, &a.states, a.initial, &a.ranks)?;
    for t in &a.transitions {
        writeln!(
            f,
            "{} {} -> {} {}",
            a.states[t.source],
            a.alphabet.symbol(t.symbol),
            a.states[t.left],
            a.states[t.right]
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    const EVENTUALLY_B: &str = "
        npt eventually-b   # every branch eventually reads b
        alphabet a b
        states wait done
        initial wait
        rank wait 1
        rank done 0
        wait a -> wait wait
        wait b -> done done
        done a -> done done
        done b -> done done
    ";

    #[test]
    fn parses_and_prints_tree_automaton() {
        let ParsedAutomaton::Tree(a) = parse_automaton(EVENTUALLY_B).unwrap() else {
            panic!("expected a tree automaton")
        };
        assert_eq!(a.state_count(), 2);
        assert_eq!(a.transitions().len(), 4);
        assert!(a.is_complete());
        let again = parse_automaton(&a.to_string()).unwrap();
        assert_eq!(again, ParsedAutomaton::Tree(a));
    }

    #[test]
    fn rejects_duplicates() {
        let dup_rank = "npw x\nalphabet a\nstates q\ninitial q\nrank q 0\nrank q 1\n";
        assert!(matches!(parse_automaton(dup_rank), Err(Error::Parse { line: 6, .. })));
        let dup_state = "npw x\nalphabet a\nstates q q\ninitial q\nrank q 0\n";
        assert!(matches!(parse_automaton(dup_state), Err(Error::Parse { line: 3, .. })));
    }

    #[test]
    fn rejects_zero_states_and_missing_ranks() {
        assert!(parse_automaton("npw x\nalphabet a\nstates\ninitial q\n").is_err());
        assert!(parse_automaton("npw x\nalphabet a\nstates q p\ninitial q\nrank q 0\n").is_err());
    }

    #[test]
    fn deterministic_header_checks_totality() {
        let partial = "dpw d\nalphabet a b\nstates q\ninitial q\nrank q 0\nq a -> q\n";
        assert!(parse_automaton(partial).is_err());
        let total = format!("{partial}q b -> q\n");
        assert!(matches!(parse_automaton(&total), Ok(ParsedAutomaton::Deterministic(_))));
    }

    #[test]
    fn transition_shape_is_checked() {
        let bad = "npt t\nalphabet a\nstates q\ninitial q\nrank q 0\nq a -> q\n";
        assert!(matches!(parse_automaton(bad), Err(Error::Parse { line: 6, .. })));
    }
}
