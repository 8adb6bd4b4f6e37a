//! Monadic second-order logic over the full binary tree with the two
//! successor relations, decided through tree automata.

mod ast;
mod automata;
mod blocks;
mod compile;
mod decide;
mod local;
mod parser;
mod psi;

pub use ast::{is_set_variable, Formula, Var};
pub use automata::{valuation_alphabet, MAX_VARIABLES};
pub use blocks::{is_pi13, quantifier_blocks, set_quantifier_blocks};
pub use compile::{compile, compile_with_budget, CompiledFormula, LedgerEntry};
pub use decide::{decide, decide_with, Decision, Witness};
pub use parser::{parse, parse_sentence};
pub use psi::{player_wins, positional_determinacy_sentence};
