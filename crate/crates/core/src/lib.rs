//! Parity automata on infinite words and infinite binary trees, finite parity
//! games, Safra-style determinization, complementation of nondeterministic
//! parity tree automata through Automaton/Pathfinder games, and a decision
//! procedure for monadic second-order logic over the infinite binary tree.
//!
//! All automata use min-parity acceptance: a run is accepting when the least
//! rank seen infinitely often is even.

pub mod automata;
pub mod complementation;
pub mod determinization;
mod error;
mod graph;
pub mod games;
pub mod generate;
pub mod machine;
pub mod mso;
pub mod regular_trees;

pub use error::{Error, Result};
