use std::collections::BTreeSet;
use std::fmt;

/// Variables are plain names; lowercase initials range over nodes,
/// uppercase initials over sets of nodes.
pub type Var = String;

pub fn is_set_variable(name: &str) -> bool {
    name.chars().next().is_some_and(|c| c.is_ascii_uppercase())
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    True,
    False,
    /// `x = y`
    Eq(Var, Var),
    /// `S0(x, y)` or `S1(x, y)`: `y` is the left or right son of `x`.
    Succ(u8, Var, Var),
    /// `x in X`
    In(Var, Var),
    /// `root(x)`
    Root(Var),
    /// `x <= y`: `x` is a prefix of `y`.
    Prefix(Var, Var),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Exists(Var, Box<Formula>),
    Forall(Var, Box<Formula>),
}

use Formula::*;

impl Formula {
    pub fn not(f: Formula) -> Formula {
        Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Implies(Box::new(a), Box::new(b))
    }

    pub fn exists(v: impl Into<Var>, f: Formula) -> Formula {
        Exists(v.into(), Box::new(f))
    }

    pub fn forall(v: impl Into<Var>, f: Formula) -> Formula {
        Forall(v.into(), Box::new(f))
    }

    pub fn member(x: impl Into<Var>, set: impl Into<Var>) -> Formula {
        In(x.into(), set.into())
    }

    /// Conjunction of all `fs`; `true` when empty.
    pub fn all(fs: impl IntoIterator<Item = Formula>) -> Formula {
        fs.into_iter().reduce(Formula::and).unwrap_or(True)
    }

    /// Disjunction of all `fs`; `false` when empty.
    pub fn any(fs: impl IntoIterator<Item = Formula>) -> Formula {
        fs.into_iter().reduce(Formula::or).unwrap_or(False)
    }

    pub fn exists_all<S: Into<Var>>(vars: impl IntoIterator<Item = S>, f: Formula) -> Formula {
        let vars: Vec<Var> = vars.into_iter().map(Into::into).collect();
        vars.into_iter().rev().fold(f, |f, v| Formula::exists(v, f))
    }

    pub fn forall_all<S: Into<Var>>(vars: impl IntoIterator<Item = S>, f: Formula) -> Formula {
        let vars: Vec<Var> = vars.into_iter().map(Into::into).collect();
        vars.into_iter().rev().fold(f, |f, v| Formula::forall(v, f))
    }

    pub fn free_variables(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<Var>, out: &mut BTreeSet<Var>) {
        let mut note = |v: &Var, bound: &Vec<Var>| {
            if !bound.contains(v) {
                out.insert(v.clone());
            }
        };
        match self {
            True | False => {}
            Eq(a, b) | Succ(_, a, b) | In(a, b) | Prefix(a, b) => {
                note(a, bound);
                note(b, bound);
            }
            Root(a) => note(a, bound),
            Not(f) => f.collect_free(bound, out),
            And(a, b) | Or(a, b) | Implies(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Exists(v, f) | Forall(v, f) => {
                bound.push(v.clone());
                f.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn is_sentence(&self) -> bool {
        self.free_variables().is_empty()
    }

    /// Negation normal form: `->` removed, negations only on atoms.
    pub fn nnf(&self) -> Formula {
        self.nnf_signed(true)
    }

    fn nnf_signed(&self, positive: bool) -> Formula {
        match (self, positive) {
            (True, true) | (False, false) => True,
            (True, false) | (False, true) => False,
            (Not(f), _) => f.nnf_signed(!positive),
            (And(a, b), true) => Formula::and(a.nnf_signed(true), b.nnf_signed(true)),
            (And(a, b), false) => Formula::or(a.nnf_signed(false), b.nnf_signed(false)),
            (Or(a, b), true) => Formula::or(a.nnf_signed(true), b.nnf_signed(true)),
            (Or(a, b), false) => Formula::and(a.nnf_signed(false), b.nnf_signed(false)),
            (Implies(a, b), true) => Formula::or(a.nnf_signed(false), b.nnf_signed(true)),
            (Implies(a, b), false) => Formula::and(a.nnf_signed(true), b.nnf_signed(false)),
            (Exists(v, f), true) => Formula::exists(v.clone(), f.nnf_signed(true)),
            (Exists(v, f), false) => Formula::forall(v.clone(), f.nnf_signed(false)),
            (Forall(v, f), true) => Formula::forall(v.clone(), f.nnf_signed(true)),
            (Forall(v, f), false) => Formula::exists(v.clone(), f.nnf_signed(false)),
            (atom, true) => atom.clone(),
            (atom, false) => Formula::not(atom.clone()),
        }
    }

    /// Binding strength for printing; quantifiers and negation bind like atoms
    /// but extend to the right.
    fn precedence(&self) -> u8 {
        match self {
            Implies(..) => 0,
            Or(..) => 1,
            And(..) => 2,
            _ => 3,
        }
    }

    /// Prints the formula, returning whether the text ends in a quantifier
    /// body that would swallow anything appended after it.
    fn render(&self, out: &mut String) -> bool {
        match self {
            True => out.push_str("true"),
            False => out.push_str("false"),
            Eq(a, b) => out.push_str(&format!("{a} = {b}")),
            Succ(d, a, b) => out.push_str(&format!("S{d}({a}, {b})")),
            In(a, b) => out.push_str(&format!("{a} in {b}")),
            Root(a) => out.push_str(&format!("root({a})")),
            Prefix(a, b) => out.push_str(&format!("{a} <= {b}")),
            Not(f) => {
                out.push('!');
                return render_operand(f, 3, out);
            }
            And(a, b) | Or(a, b) | Implies(a, b) => {
                let (op, left, right) = match self {
                    And(..) => (" & ", 2, 3),
                    Or(..) => (" | ", 1, 2),
                    _ => (" -> ", 1, 0),
                };
                let len = out.len();
                if render_operand(a, left, out) {
                    let text = out.split_off(len);
                    out.push('(');
                    out.push_str(&text);
                    out.push(')');
                }
                out.push_str(op);
                return render_operand(b, right, out);
            }
            Exists(v, f) | Forall(v, f) => {
                out.push_str(if matches!(self, Exists(..)) { "EX " } else { "ALL " });
                out.push_str(v);
                out.push_str(". ");
                f.render(out);
                return true;
            }
        }
        false
    }
}

fn render_operand(f: &Formula, min: u8, out: &mut String) -> bool {
    if f.precedence() < min {
        out.push('(');
        f.render(out);
        out.push(')');
        false
    } else {
        f.render(out)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        self.render(&mut s);
        f.write_str(&s)
    }
}
