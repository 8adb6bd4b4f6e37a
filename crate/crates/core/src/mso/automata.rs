//! Tree automata over valuation alphabets and the boolean operations the
//! compiler needs.

use std::collections::{HashMap, VecDeque};

use super::ast::Var;
use crate::automata::{complete_tree_automaton, reduce, Alphabet, NondetTreeAutomaton, TreeTransition, WordTransition};
use crate::automata::NondetWordAutomaton;
use crate::complementation::complement;
use crate::determinization::safra_determinize;
use crate::graph::sccs;
use crate::{Error, Result};

/// Most free variables a single automaton may track.
pub const MAX_VARIABLES: usize = 16;

/// An automaton whose symbol `m` assigns bit `(m >> j) & 1` to `vars[j]`.
#[derive(Debug, Clone)]
pub struct Valued {
    pub vars: Vec<Var>,
    pub aut: NondetTreeAutomaton,
}

/// Symbols are bit strings in variable order; the single symbol of the
/// empty valuation is `_`.
pub fn valuation_alphabet(m: usize) -> Result<Alphabet> {
    if m > MAX_VARIABLES {
        return Err(Error::IndexOverflow(format!("{m} free variables; at most {MAX_VARIABLES} are supported")));
    }
    if m == 0 {
        return Alphabet::new(["_"]);
    }
    Alphabet::new((0..1usize << m).map(|mask| (0..m).map(|j| if mask >> j & 1 == 1 { '1' } else { '0' }).collect::<String>()))
}

/// Builds an automaton from a successor function; `next(state, mask)`
/// lists the (left, right) pairs allowed.
pub fn build(
    vars: Vec<Var>,
    ranks: Vec<u32>,
    next: impl Fn(usize, &dyn Fn(&str) -> bool) -> Vec<(usize, usize)>,
) -> Result<Valued> {
    let alphabet = valuation_alphabet(vars.len())?;
    let mut transitions = Vec::new();
    for q in 0..ranks.len() {
        for mask in 0..alphabet.len() {
            let bit = |v: &str| vars.iter().position(|w| w == v).is_some_and(|j| mask >> j & 1 == 1);
            for (left, right) in next(q, &bit) {
                transitions.push(TreeTransition {
                    source: q,
                    symbol: mask,
                    left,
                    right,
                });
            }
        }
    }
    let states = (0..ranks.len()).map(|i| format!("s{i}")).collect();
    let aut = NondetTreeAutomaton::new("formula", alphabet, states, 0, transitions, ranks)?;
    Ok(Valued { vars, aut })
}

pub fn constant(value: bool) -> Valued {
    let alphabet = valuation_alphabet(0).expect("empty valuation");
    Valued {
        vars: Vec::new(),
        aut: if value {
            NondetTreeAutomaton::universal("formula", alphabet)
        } else {
            NondetTreeAutomaton::empty_language("formula", alphabet)
        },
    }
}

/// Exactly one node carries the bit of `x`.
pub fn singleton(x: &Var) -> Result<Valued> {
    build(vec![x.clone()], vec![1, 0], |q, bit| match (q, bit(x)) {
        (0, true) => vec![(1, 1)],
        (0, false) => vec![(0, 1), (1, 0)],
        (_, true) => vec![],
        (_, false) => vec![(1, 1)],
    })
}

fn sorted_union(a: &[Var], b: &[Var]) -> Vec<Var> {
    let mut v: Vec<Var> = a.iter().chain(b).cloned().collect();
    v.sort();
    v.dedup();
    v
}

/// Re-reads `v` over the larger variable list `vars`, ignoring the new bits.
pub fn cylindrify(v: &Valued, vars: &[Var]) -> Result<Valued> {
    if v.vars == vars {
        return Ok(v.clone());
    }
    let alphabet = valuation_alphabet(vars.len())?;
    let position: Vec<usize> = v.vars.iter().map(|x| vars.iter().position(|y| y == x).expect("subset")).collect();
    let old = |mask: usize| position.iter().enumerate().fold(0, |acc, (j, &p)| acc | (mask >> p & 1) << j);
    let mut by_old: Vec<Vec<usize>> = vec![Vec::new(); v.aut.alphabet().len()];
    for mask in 0..alphabet.len() {
        by_old[old(mask)].push(mask);
    }
    let transitions = v
        .aut
        .transitions()
        .iter()
        .flat_map(|t| by_old[t.symbol].iter().map(move |&symbol| TreeTransition { symbol, ..*t }))
        .collect();
    let aut = NondetTreeAutomaton::new(
        "formula",
        alphabet,
        v.aut.states().to_vec(),
        v.aut.initial(),
        transitions,
        v.aut.ranks().to_vec(),
    )?;
    Ok(Valued { vars: vars.to_vec(), aut })
}

/// Removes `x` from the alphabet, guessing its bit nondeterministically.
pub fn project(v: &Valued, x: &Var) -> Result<Valued> {
    let Some(j) = v.vars.iter().position(|y| y == x) else {
        return Ok(v.clone());
    };
    let mut vars = v.vars.clone();
    vars.remove(j);
    let low = (1usize << j) - 1;
    let transitions = v
        .aut
        .transitions()
        .iter()
        .map(|t| TreeTransition {
            symbol: (t.symbol & low) | ((t.symbol >> (j + 1)) << j),
            ..*t
        })
        .collect();
    let aut = NondetTreeAutomaton::new(
        "formula",
        valuation_alphabet(vars.len())?,
        v.aut.states().to_vec(),
        v.aut.initial(),
        transitions,
        v.aut.ranks().to_vec(),
    )?;
    Ok(Valued { vars, aut: reduce(&aut) })
}

pub fn union(a: &Valued, b: &Valued) -> Result<Valued> {
    let vars = sorted_union(&a.vars, &b.vars);
    let (a, b) = (cylindrify(a, &vars)?, cylindrify(b, &vars)?);
    let (a, b) = (&a.aut, &b.aut);
    let na = a.state_count();
    let fresh = na + b.state_count();
    let mut transitions: Vec<TreeTransition> = a.transitions().to_vec();
    transitions.extend(b.transitions().iter().map(|t| TreeTransition {
        source: t.source + na,
        symbol: t.symbol,
        left: t.left + na,
        right: t.right + na,
    }));
    for (aut, offset) in [(a, 0), (b, na)] {
        for t in aut.transitions().iter().filter(|t| t.source == aut.initial()) {
            transitions.push(TreeTransition {
                source: fresh,
                symbol: t.symbol,
                left: t.left + offset,
                right: t.right + offset,
            });
        }
    }
    let mut ranks: Vec<u32> = a.ranks().iter().chain(b.ranks()).copied().collect();
    ranks.push(0);
    let states = (0..=fresh).map(|i| format!("s{i}")).collect();
    let aut = NondetTreeAutomaton::new("formula", a.alphabet().clone(), states, fresh, transitions, ranks)?;
    Ok(Valued { vars, aut: reduce(&aut) })
}

/// Whether every strongly connected part of the state graph has ranks of a
/// single parity, so that the rank parity along any branch stabilizes.
fn is_weak(a: &NondetTreeAutomaton) -> bool {
    let n = a.state_count();
    let mut adj = vec![Vec::new(); n];
    for t in a.transitions() {
        adj[t.source].push(t.left);
        adj[t.source].push(t.right);
    }
    let (comp, _) = sccs(&adj, &vec![true; n]);
    let mut parity: HashMap<usize, u32> = HashMap::new();
    (0..n).all(|q| *parity.entry(comp[q]).or_insert(a.rank(q) % 2) == a.rank(q) % 2)
}

/// Deterministic word automaton over rank pairs `(r1, r2)`, read as the
/// letter `r1 * (x2 + 1) + r2`, accepting iff both rank sequences satisfy
/// the parity condition.
fn pair_condition(x1: u32, x2: u32, budget: usize) -> Result<crate::automata::DetWordAutomaton> {
    let letters: Vec<(u32, u32)> = (0..=x1).flat_map(|r1| (0..=x2).map(move |r2| (r1, r2))).collect();
    let alphabet = Alphabet::new(letters.iter().map(|(r1, r2)| format!("{r1}.{r2}")))?;
    // state 0 waits; (y1, y2, phase) commits to even minima y1, y2
    let mut states = vec!["wait".to_string()];
    let mut ranks = vec![1];
    let mut index = HashMap::new();
    for y1 in (0..=x1).step_by(2) {
        for y2 in (0..=x2).step_by(2) {
            for phase in 0..3 {
                index.insert((y1, y2, phase), states.len());
                states.push(format!("{y1}.{y2}.{phase}"));
                ranks.push(if phase == 2 { 0 } else { 1 });
            }
        }
    }
    let mut transitions = Vec::new();
    for (symbol, &(r1, r2)) in letters.iter().enumerate() {
        transitions.push(WordTransition { source: 0, symbol, target: 0 });
        for (&(y1, y2, phase), &source) in &index {
            if phase == 0 {
                transitions.push(WordTransition { source: 0, symbol, target: source });
            }
            if r1 < y1 || r2 < y2 {
                continue;
            }
            let next = match phase {
                1 if r2 == y2 => 2,
                1 => 1,
                _ if r1 == y1 => 1,
                _ => 0,
            };
            transitions.push(WordTransition {
                source,
                symbol,
                target: index[&(y1, y2, next)],
            });
        }
    }
    let nbw = NondetWordAutomaton::new("pair", alphabet, states, 0, transitions, ranks)?;
    safra_determinize(&nbw, budget)
}

pub fn intersection(a: &Valued, b: &Valued, budget: usize) -> Result<Valued> {
    let vars = sorted_union(&a.vars, &b.vars);
    let (a, b) = (cylindrify(a, &vars)?, cylindrify(b, &vars)?);
    let (a, b) = (&a.aut, &b.aut);
    // the rank of a product state is a function of the component states and
    // an optional memory state
    let (weak_a, weak_b) = (a.max_rank() == 0 || is_weak(a), b.max_rank() == 0 || is_weak(b));
    let memory = if weak_a || weak_b {
        None
    } else {
        Some(pair_condition(a.max_rank(), b.max_rank(), budget)?)
    };
    let letter = |q1: usize, q2: usize| (a.rank(q1) * (b.max_rank() + 1) + b.rank(q2)) as usize;
    let start_memory = |q1: usize, q2: usize| memory.as_ref().map_or(0, |d| d.next(d.initial(), letter(q1, q2)));
    let step_memory = |m: usize, q1: usize, q2: usize| memory.as_ref().map_or(0, |d| d.next(m, letter(q1, q2)));
    let rank = |(q1, q2, m): (usize, usize, usize)| -> u32 {
        if let Some(d) = &memory {
            d.ranks()[m]
        } else if weak_a {
            if a.rank(q1) % 2 == 0 {
                b.rank(q2)
            } else {
                1
            }
        } else if b.rank(q2) % 2 == 0 {
            a.rank(q1)
        } else {
            1
        }
    };
    let first = (a.initial(), b.initial(), start_memory(a.initial(), b.initial()));
    let mut index = HashMap::from([(first, 0)]);
    let mut order = vec![first];
    let mut queue = VecDeque::from([first]);
    let mut transitions = Vec::new();
    let k = a.alphabet().len();
    while let Some(s @ (q1, q2, m)) = queue.pop_front() {
        let source = index[&s];
        for symbol in 0..k {
            for &i in a.transitions_from(q1, symbol) {
                for &j in b.transitions_from(q2, symbol) {
                    let (t1, t2) = (a.transitions()[i], b.transitions()[j]);
                    let mut child = |l1: usize, l2: usize| {
                        let c = (l1, l2, step_memory(m, l1, l2));
                        *index.entry(c).or_insert_with(|| {
                            order.push(c);
                            queue.push_back(c);
                            order.len() - 1
                        })
                    };
                    let left = child(t1.left, t2.left);
                    let right = child(t1.right, t2.right);
                    transitions.push(TreeTransition { source, symbol, left, right });
                }
            }
        }
    }
    let ranks = order.iter().map(|&s| rank(s)).collect();
    let states = (0..order.len()).map(|i| format!("s{i}")).collect();
    let aut = NondetTreeAutomaton::new("formula", a.alphabet().clone(), states, 0, transitions, ranks)?;
    Ok(Valued { vars, aut: reduce(&aut) })
}

/// Complement of a deterministic automaton: some branch carries a
/// rejecting run. Linear in the input.
fn complement_deterministic(a: &NondetTreeAutomaton) -> Result<NondetTreeAutomaton> {
    let c = complete_tree_automaton(a);
    let n = c.state_count();
    let all = n;
    let mut transitions = Vec::new();
    for t in c.transitions() {
        transitions.push(TreeTransition { right: all, ..*t });
        transitions.push(TreeTransition { left: all, ..*t });
    }
    for symbol in 0..c.alphabet().len() {
        transitions.push(TreeTransition { source: all, symbol, left: all, right: all });
    }
    let mut ranks: Vec<u32> = c.ranks().iter().map(|r| r + 1).collect();
    ranks.push(0);
    let states = (0..=n).map(|i| format!("s{i}")).collect();
    NondetTreeAutomaton::new("formula", c.alphabet().clone(), states, c.initial(), transitions, ranks)
}

pub fn negation(v: &Valued, budget: usize) -> Result<Valued> {
    let aut = if v.aut.is_deterministic() || complete_tree_automaton(&v.aut).is_deterministic() {
        complement_deterministic(&v.aut)?
    } else {
        complement(&v.aut, budget)?.0
    };
    Ok(Valued {
        vars: v.vars.clone(),
        aut: reduce(&aut),
    })
}
