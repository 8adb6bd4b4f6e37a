//! Universal first-order formulas that only look at a node and its sons,
//! compiled to safety automata without complementation.
//!
//! The accepted shape is `ALL v. ALL w... . !S_b(v, w) | ... | body` where
//! every further variable is guarded as a distinct son of `v` and `body`
//! is quantifier-free over membership, `root`, `=` and successor atoms.

use std::collections::HashMap;

use super::ast::{is_set_variable, Formula, Var};
use super::automata::{build, Valued};
use crate::Result;

struct Local {
    center: Var,
    /// Son variable for direction 0 and 1, if any.
    sons: [Option<Var>; 2],
    body: Formula,
}

/// Flattens nested disjunctions and universal node quantifiers into one
/// block; each disjunct is returned with the variables in scope at it.
fn gather<'a>(f: &'a Formula, scope: &mut Vec<Var>, block: &mut Vec<Var>, out: &mut Vec<(&'a Formula, Vec<Var>)>) -> bool {
    match f {
        Formula::Or(a, b) => gather(a, scope, block, out) && gather(b, scope, block, out),
        Formula::Forall(x, g) if !is_set_variable(x) => {
            if block.contains(x) {
                return false;
            }
            block.push(x.clone());
            scope.push(x.clone());
            let ok = gather(g, scope, block, out);
            scope.pop();
            ok
        }
        f => {
            out.push((f, scope.clone()));
            true
        }
    }
}

fn quantifier_free(f: &Formula) -> bool {
    use Formula::*;
    match f {
        True | False | Eq(..) | Succ(..) | In(..) | Root(_) => true,
        Prefix(..) | Exists(..) | Forall(..) => false,
        Not(g) => quantifier_free(g),
        And(a, b) | Or(a, b) | Implies(a, b) => quantifier_free(a) && quantifier_free(b),
    }
}

fn analyse(f: &Formula) -> Option<Local> {
    if !matches!(f, Formula::Forall(x, _) if !is_set_variable(x)) {
        return None;
    }
    let mut block = Vec::new();
    let mut scoped = Vec::new();
    if !gather(f, &mut Vec::new(), &mut block, &mut scoped) || block.len() > 3 {
        return None;
    }
    // a disjunct may only mention block variables that are in scope at it
    for (p, scope) in &scoped {
        if !quantifier_free(p) || p.free_variables().iter().any(|x| block.contains(x) && !scope.contains(x)) {
            return None;
        }
    }
    let center = block[0].clone();
    let mut sons: [Option<Var>; 2] = [None, None];
    let mut rest = Vec::new();
    for (p, _) in scoped {
        match p {
            Formula::Not(atom) => match &**atom {
                Formula::Succ(b, v, w) if *v == center && *w != center && block.contains(w) && sons[*b as usize].is_none() => {
                    sons[*b as usize] = Some(w.clone());
                }
                _ => rest.push(p.clone()),
            },
            _ => rest.push(p.clone()),
        }
    }
    let guarded = |x: &Var| *x == center || sons.iter().flatten().any(|s| s == x);
    if !block.iter().all(guarded) || sons[0].is_some() && sons[0] == sons[1] {
        return None;
    }
    let body = Formula::any(rest);
    // every node variable in the body must be one of the block's
    if !body.free_variables().iter().filter(|x| !is_set_variable(x)).all(guarded) {
        return None;
    }
    Some(Local { center, sons, body })
}

pub fn is_local_universal(f: &Formula) -> bool {
    analyse(f).is_some()
}

/// Position of a node variable in the neighbourhood: the centre or a son.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Place {
    Center,
    Son(u8),
}

struct Env<'a> {
    place: HashMap<&'a str, Place>,
    is_root: bool,
    holds: &'a dyn Fn(Place, &str) -> bool,
}

fn eval(f: &Formula, env: &Env) -> bool {
    use Formula::*;
    let at = |x: &Var| env.place[x.as_str()];
    match f {
        True => true,
        False => false,
        Eq(x, y) => at(x) == at(y),
        Succ(b, x, y) => at(x) == Place::Center && at(y) == Place::Son(*b),
        In(x, s) => (env.holds)(at(x), s),
        Root(x) => env.is_root && at(x) == Place::Center,
        Not(g) => !eval(g, env),
        And(a, b) => eval(a, env) && eval(b, env),
        Or(a, b) => eval(a, env) || eval(b, env),
        Implies(a, b) => !eval(a, env) || eval(b, env),
        Prefix(..) | Exists(..) | Forall(..) => unreachable!("checked quantifier-free"),
    }
}

/// Safety automaton for a local universal formula, or `None` when the
/// formula does not have the local shape.
pub fn local_universal(f: &Formula) -> Result<Option<Valued>> {
    let Some(local) = analyse(f) else {
        return Ok(None);
    };
    let vars: Vec<Var> = f.free_variables().into_iter().collect();
    // set variables each son must be checked against
    let mut son_sets: [Vec<Var>; 2] = [Vec::new(), Vec::new()];
    collect_son_sets(&local.body, &local.sons, &mut son_sets);
    for s in &mut son_sets {
        s.sort();
        s.dedup();
    }
    // states: 0 root, 1 unconstrained, then (side, expected bits)
    let mut offset = [2usize, 2 + (1 << son_sets[0].len())];
    if son_sets[0].is_empty() {
        offset[1] = 2;
    }
    let count = |b: usize| if son_sets[b].is_empty() { 0 } else { 1usize << son_sets[b].len() };
    let total = 2 + count(0) + count(1);
    let expectation = |q: usize| -> Option<(usize, usize)> {
        (0..2).find(|&b| count(b) > 0 && q >= offset[b] && q < offset[b] + count(b)).map(|b| (b, q - offset[b]))
    };
    let target = |b: usize, bits: usize| if count(b) == 0 { 1 } else { offset[b] + bits };
    let mut place = HashMap::new();
    place.insert(local.center.as_str(), Place::Center);
    for (b, s) in local.sons.iter().enumerate() {
        if let Some(s) = s {
            place.insert(s.as_str(), Place::Son(b as u8));
        }
    }
    let body = &local.body;
    let automaton = build(vars.clone(), vec![0; total], |q, bit| {
        if let Some((b, expected)) = expectation(q) {
            if son_sets[b].iter().enumerate().any(|(t, s)| bit(s) != (expected >> t & 1 == 1)) {
                return vec![];
            }
        }
        let mut out = Vec::new();
        for l0 in 0..count(0).max(1) {
            for l1 in 0..count(1).max(1) {
                let labels = [l0, l1];
                let holds = |p: Place, s: &str| match p {
                    Place::Center => bit(s),
                    Place::Son(b) => {
                        let b = b as usize;
                        son_sets[b].iter().position(|x| x == s).is_some_and(|t| labels[b] >> t & 1 == 1)
                    }
                };
                let env = Env {
                    place: place.clone(),
                    is_root: q == 0,
                    holds: &holds,
                };
                if eval(body, &env) {
                    out.push((target(0, l0), target(1, l1)));
                }
            }
        }
        out
    })?;
    Ok(Some(automaton))
}

fn collect_son_sets(f: &Formula, sons: &[Option<Var>; 2], out: &mut [Vec<Var>; 2]) {
    use Formula::*;
    match f {
        In(x, s) => {
            for b in 0..2 {
                if sons[b].as_ref() == Some(x) {
                    out[b].push(s.clone());
                }
            }
        }
        Not(g) => collect_son_sets(g, sons, out),
        And(a, b) | Or(a, b) | Implies(a, b) => {
            collect_son_sets(a, sons, out);
            collect_son_sets(b, sons, out);
        }
        _ => {}
    }
}
