use super::ast::{is_set_variable, Formula, Var};
use super::compile::{miniscope, Compiler, LedgerEntry};
use crate::automata::{npt_emptiness, Emptiness};
use crate::determinization::DEFAULT_BUDGET;
use crate::regular_trees::RegularTree;
use crate::{Error, Result};

/// Values for a leading block of existential set quantifiers: node `w` of
/// the tree carries the bits of `w` in each set, in `variables` order.
#[derive(Debug, Clone)]
pub struct Witness {
    pub variables: Vec<Var>,
    pub tree: RegularTree,
}

#[derive(Debug, Clone)]
pub struct Decision {
    pub value: bool,
    pub witness: Option<Witness>,
    pub ledger: Vec<LedgerEntry>,
}

/// Truth value of a sentence in the full binary tree.
pub fn decide(f: &Formula) -> Result<bool> {
    Ok(decide_with(f, DEFAULT_BUDGET, false)?.value)
}

/// Decides `f` with at most `budget` macro-states per complementation;
/// with `witness`, also extracts sets for a leading `EX X.` block of a true
/// sentence.
pub fn decide_with(f: &Formula, budget: usize, witness: bool) -> Result<Decision> {
    let free = f.free_variables();
    if !free.is_empty() {
        return Err(Error::NotASentence(free.into_iter().collect::<Vec<_>>().join(", ")));
    }
    let mut c = Compiler::new(budget);
    let value = c.truth(&miniscope(&f.nnf()))?;
    let mut found = None;
    if witness && value {
        let mut body = f;
        let mut block = Vec::new();
        while let Formula::Exists(x, g) = body {
            if !is_set_variable(x) {
                break;
            }
            block.push(x.clone());
            body = g;
        }
        if !block.is_empty() {
            let (variables, automaton) = c.compile_free(body)?;
            if let Emptiness::Witness(tree) = npt_emptiness(&automaton) {
                found = Some(Witness { variables, tree });
            }
        }
    }
    Ok(Decision {
        value,
        witness: found,
        ledger: c.ledger,
    })
}
