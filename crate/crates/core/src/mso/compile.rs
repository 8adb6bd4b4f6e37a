use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::time::{Duration, Instant};

use super::ast::{is_set_variable, Formula, Var};
use super::local::{is_local_universal, local_universal};
use super::automata::{build, constant, cylindrify, intersection, negation, project, singleton, union, Valued};
use crate::automata::{npt_emptiness, NondetTreeAutomaton};
use crate::determinization::DEFAULT_BUDGET;
use crate::{Error, Result};

/// Cost of one compiled subformula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LedgerEntry {
    pub subformula: String,
    pub variables: usize,
    pub states: usize,
    pub transitions: usize,
    pub complemented: bool,
    pub elapsed: Duration,
}

impl fmt::Display for LedgerEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:>6} states {:>7} transitions {:>2} vars {:>9.3} ms{} {}",
            self.states,
            self.transitions,
            self.variables,
            self.elapsed.as_secs_f64() * 1000.0,
            if self.complemented { " [complement]" } else { "" },
            self.subformula
        )
    }
}

/// Automaton for a formula over the valuations of its free variables.
#[derive(Debug, Clone)]
pub struct CompiledFormula {
    /// Free variables in symbol order: bit `j` of symbol `m` is `variables[j]`.
    pub variables: Vec<Var>,
    pub automaton: NondetTreeAutomaton,
    pub ledger: Vec<LedgerEntry>,
}

pub(crate) struct Compiler {
    pub budget: usize,
    pub ledger: Vec<LedgerEntry>,
    cache: HashMap<Formula, Valued>,
    truth: HashMap<Formula, bool>,
}

fn shorten(f: &Formula) -> String {
    let s = f.to_string();
    if s.chars().count() > 120 {
        format!("{}...", s.chars().take(117).collect::<String>())
    } else {
        s
    }
}

fn conjuncts(f: Formula, out: &mut Vec<Formula>) {
    match f {
        Formula::And(a, b) => {
            conjuncts(*a, out);
            conjuncts(*b, out);
        }
        f => out.push(f),
    }
}

fn disjuncts(f: Formula, out: &mut Vec<Formula>) {
    match f {
        Formula::Or(a, b) => {
            disjuncts(*a, out);
            disjuncts(*b, out);
        }
        f => out.push(f),
    }
}

fn and_fold(parts: Vec<Formula>) -> Formula {
    if parts.contains(&Formula::False) {
        return Formula::False;
    }
    let mut seen = BTreeSet::new();
    Formula::all(parts.into_iter().filter(|p| *p != Formula::True && seen.insert(p.clone())))
}

fn or_fold(parts: Vec<Formula>) -> Formula {
    if parts.contains(&Formula::True) {
        return Formula::True;
    }
    let mut seen = BTreeSet::new();
    Formula::any(parts.into_iter().filter(|p| *p != Formula::False && seen.insert(p.clone())))
}

/// Pushes quantifiers inward on a formula in negation normal form and
/// folds constants.
pub(crate) fn miniscope(f: &Formula) -> Formula {
    use Formula::*;
    match f {
        And(..) => {
            let mut parts = Vec::new();
            conjuncts(f.clone(), &mut parts);
            and_fold(parts.iter().map(miniscope).collect())
        }
        Or(..) => {
            let mut parts = Vec::new();
            disjuncts(f.clone(), &mut parts);
            or_fold(parts.iter().map(miniscope).collect())
        }
        Forall(..) if is_local_universal(f) => f.clone(),
        Exists(v, g) | Forall(v, g) => {
            let existential = matches!(f, Exists(..));
            let body = miniscope(g);
            if !body.free_variables().contains(v) {
                return body;
            }
            let quantify = |g: Formula| {
                let q = if existential { Formula::exists(v.clone(), g) } else { Formula::forall(v.clone(), g) };
                // re-run on the new, smaller scope
                match &q {
                    Exists(_, g) | Forall(_, g) if matches!(**g, And(..) | Or(..)) => miniscope(&q),
                    _ => q,
                }
            };
            let mut parts = Vec::new();
            let distributes = match (&body, existential) {
                (Or(..), true) | (And(..), false) => true,
                (And(..), true) | (Or(..), false) => false,
                _ => return quantify(body),
            };
            if existential {
                if distributes { disjuncts(body, &mut parts) } else { conjuncts(body, &mut parts) }
            } else if distributes {
                conjuncts(body, &mut parts)
            } else {
                disjuncts(body, &mut parts)
            }
            let rejoin = |ps: Vec<Formula>| if existential == distributes { or_fold(ps) } else { and_fold(ps) };
            if distributes {
                return rejoin(
                    parts
                        .into_iter()
                        .map(|p| {
                            if p.free_variables().contains(v) {
                                let q = if existential { Formula::exists(v.clone(), p) } else { Formula::forall(v.clone(), p) };
                                miniscope(&q)
                            } else {
                                p
                            }
                        })
                        .collect(),
                );
            }
            let (with, without): (Vec<Formula>, Vec<Formula>) = parts.into_iter().partition(|p| p.free_variables().contains(v));
            if without.is_empty() {
                let q = if existential { Formula::exists(v.clone(), rejoin(with)) } else { Formula::forall(v.clone(), rejoin(with)) };
                return q;
            }
            let mut all = without;
            all.push(quantify(rejoin(with)));
            rejoin(all)
        }
        _ => f.clone(),
    }
}

impl Compiler {
    pub fn new(budget: usize) -> Self {
        Compiler {
            budget,
            ledger: Vec::new(),
            cache: HashMap::new(),
            truth: HashMap::new(),
        }
    }

    fn record(&mut self, f: &Formula, v: &Valued, complemented: bool, start: Instant) {
        self.ledger.push(LedgerEntry {
            subformula: shorten(f),
            variables: v.vars.len(),
            states: v.aut.state_count(),
            transitions: v.aut.transitions().len(),
            complemented,
            elapsed: start.elapsed(),
        });
    }

    /// Truth value of a miniscoped sentence in negation normal form.
    pub fn truth(&mut self, f: &Formula) -> Result<bool> {
        if let Some(&t) = self.truth.get(f) {
            return Ok(t);
        }
        let t = match f {
            Formula::True => true,
            Formula::False => false,
            Formula::And(a, b) => self.truth(a)? && self.truth(b)?,
            Formula::Or(a, b) => self.truth(a)? || self.truth(b)?,
            Formula::Forall(v, g) => {
                let dual = miniscope(&Formula::exists(v.clone(), g.nnf_negated()));
                !self.truth(&dual)?
            }
            Formula::Exists(x, g) => {
                let body = self.automaton(g)?;
                let body = if is_set_variable(x) {
                    body
                } else {
                    intersection(&body, &singleton(x)?, self.budget)?
                };
                !npt_emptiness(&body.aut).is_empty()
            }
            other => return Err(Error::malformed("sentence", format!("unexpected closed formula `{other}`"))),
        };
        self.truth.insert(f.clone(), t);
        Ok(t)
    }

    /// Automaton for a miniscoped formula in negation normal form, over its
    /// free variables. Node variables are only meaningful on singleton
    /// valuations.
    pub fn automaton(&mut self, f: &Formula) -> Result<Valued> {
        if let Some(v) = self.cache.get(f) {
            return Ok(v.clone());
        }
        let start = Instant::now();
        let free = f.free_variables();
        let mut complemented = false;
        let v = match f {
            Formula::True => constant(true),
            Formula::False => constant(false),
            _ if free.is_empty() => constant(self.truth(f)?),
            Formula::Not(atom) => {
                complemented = true;
                negation(&atom_automaton(atom)?, self.budget)?
            }
            Formula::And(a, b) => {
                let (a, b) = (self.automaton(a)?, self.automaton(b)?);
                intersection(&a, &b, self.budget)?
            }
            Formula::Or(a, b) => {
                let (a, b) = (self.automaton(a)?, self.automaton(b)?);
                union(&a, &b)?
            }
            Formula::Exists(x, g) => {
                let body = self.automaton(g)?;
                let body = if is_set_variable(x) {
                    body
                } else {
                    intersection(&body, &singleton(x)?, self.budget)?
                };
                project(&body, x)?
            }
            Formula::Forall(..) if is_local_universal(f) => local_universal(f)?.expect("local shape"),
            Formula::Forall(x, g) => {
                complemented = true;
                let dual = miniscope(&Formula::exists(x.clone(), g.nnf_negated()));
                let inner = self.automaton(&dual)?;
                negation(&inner, self.budget).map_err(|e| match e {
                    Error::Compile { .. } => e,
                    e => Error::Compile {
                        subformula: shorten(f),
                        source: Box::new(e),
                    },
                })?
            }
            atom => atom_automaton(atom)?,
        };
        // simplification can drop variables; keep the alphabet honest
        let vars: Vec<Var> = free.into_iter().collect();
        let v = if v.vars == vars { v } else { cylindrify(&v, &vars)? };
        if !matches!(f, Formula::True | Formula::False) {
            self.record(f, &v, complemented, start);
        }
        self.cache.insert(f.clone(), v.clone());
        Ok(v)
    }
}

impl Formula {
    fn nnf_negated(&self) -> Formula {
        Formula::not(self.clone()).nnf()
    }
}

fn atom_automaton(f: &Formula) -> Result<Valued> {
    let mut vars: Vec<Var> = f.free_variables().into_iter().collect();
    vars.sort();
    match f {
        Formula::Eq(x, y) => build(vars, vec![0], |_, bit| if bit(x) == bit(y) { vec![(0, 0)] } else { vec![] }),
        Formula::In(x, s) => build(vars, vec![0], |_, bit| if !bit(x) || bit(s) { vec![(0, 0)] } else { vec![] }),
        Formula::Root(x) => build(vars, vec![0, 0], |q, bit| if q == 0 || !bit(x) { vec![(1, 1)] } else { vec![] }),
        Formula::Succ(d, x, y) => build(vars, vec![0, 0], |q, bit| {
            // state 1: this node must carry y
            if q == 1 && !bit(y) {
                return vec![];
            }
            match (bit(x), d) {
                (false, _) => vec![(0, 0)],
                (true, 0) => vec![(1, 0)],
                (true, _) => vec![(0, 1)],
            }
        }),
        Formula::Prefix(x, y) => build(vars, vec![0, 0], |q, bit| match (q, bit(x), bit(y)) {
            (1, _, _) | (0, true, _) => vec![(1, 1)],
            (_, false, true) => vec![],
            _ => vec![(0, 0)],
        }),
        other => Err(Error::malformed("formula", format!("`{other}` is not an atom"))),
    }
}

/// Tree automaton over valuations of the free variables of `f` accepting
/// exactly the valuations satisfying it (node variables as singletons).
pub fn compile(f: &Formula) -> Result<CompiledFormula> {
    compile_with_budget(f, DEFAULT_BUDGET)
}

pub fn compile_with_budget(f: &Formula, budget: usize) -> Result<CompiledFormula> {
    let mut c = Compiler::new(budget);
    let (variables, automaton) = c.compile_free(f)?;
    Ok(CompiledFormula {
        variables,
        automaton,
        ledger: c.ledger,
    })
}

impl Compiler {
    /// Automaton for `f` over all its free variables, with the singleton
    /// constraint on node variables.
    pub fn compile_free(&mut self, f: &Formula) -> Result<(Vec<Var>, NondetTreeAutomaton)> {
        let variables: Vec<Var> = f.free_variables().into_iter().collect();
        let mut v = self.automaton(&miniscope(&f.nnf()))?;
        for x in variables.iter().filter(|x| !is_set_variable(x)) {
            v = intersection(&v, &singleton(x)?, self.budget)?;
        }
        let v = cylindrify(&v, &variables)?;
        let automaton = v.aut.renamed(format!("compiled: {}", shorten(f)));
        Ok((variables, automaton))
    }
}
