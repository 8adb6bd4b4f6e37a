use std::fmt;
use std::str::FromStr;

use super::{Alphabet, NondetWordAutomaton};
use crate::machine::{lasso_accepting_run, verify_lasso_run, Lasso, LassoRun};
use crate::{Error, Result};

/// `prefix · period^ω` over symbol names.
///
/// Text form: whitespace-separated symbols with the period in parentheses,
/// e.g. `a b (a b)`; a trailing `^w` is accepted and ignored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UltimatelyPeriodicWord {
    pub prefix: Vec<String>,
    pub period: Vec<String>,
}

impl UltimatelyPeriodicWord {
    pub fn new<S: Into<String>>(
        prefix: impl IntoIterator<Item = S>,
        period: impl IntoIterator<Item = S>,
    ) -> Result<Self> {
        let prefix: Vec<String> = prefix.into_iter().map(Into::into).collect();
        let period: Vec<String> = period.into_iter().map(Into::into).collect();
        if period.is_empty() {
            return Err(Error::malformed("ultimately periodic word", "period must be non-empty"));
        }
        Ok(UltimatelyPeriodicWord { prefix, period })
    }

    /// Symbol indices over `alphabet`.
    pub fn to_lasso(&self, alphabet: &Alphabet) -> Result<Lasso<usize>> {
        let index = |s: &String| {
            alphabet
                .index_of(s)
                .ok_or_else(|| Error::AlphabetMismatch(format!("symbol `{s}` is not in the alphabet")))
        };
        Ok(Lasso::new(
            self.prefix.iter().map(index).collect::<Result<_>>()?,
            self.period.iter().map(index).collect::<Result<_>>()?,
        ))
    }

    pub fn from_lasso(lasso: &Lasso<usize>, alphabet: &Alphabet) -> Self {
        let name = |a: &usize| alphabet.symbol(*a).to_string();
        UltimatelyPeriodicWord {
            prefix: lasso.prefix.iter().map(name).collect(),
            period: lasso.period.iter().map(name).collect(),
        }
    }
}

impl FromStr for UltimatelyPeriodicWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let s = s.strip_suffix("^w").or_else(|| s.strip_suffix("^ω")).unwrap_or(s);
        let open = s
            .find('(')
            .ok_or_else(|| Error::malformed("ultimately periodic word", "expected `prefix (period)`"))?;
        let close = s
            .rfind(')')
            .filter(|&c| c > open && s[c + 1..].trim().is_empty())
            .ok_or_else(|| Error::malformed("ultimately periodic word", "period must end the word in parentheses"))?;
        UltimatelyPeriodicWord::new(s[..open].split_whitespace(), s[open + 1..close].split_whitespace())
    }
}

impl fmt::Display for UltimatelyPeriodicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in &self.prefix {
            write!(f, "{a} ")?;
        }
        write!(f, "({})", self.period.join(" "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordMembership {
    pub accepted: bool,
    /// Accepting run over state indices, present iff `accepted`.
    pub witness: Option<LassoRun<usize>>,
}

pub fn npw_member(a: &NondetWordAutomaton, w: &UltimatelyPeriodicWord) -> Result<WordMembership> {
    let lasso = w.to_lasso(a.alphabet())?;
    let witness = lasso_accepting_run(a, &lasso);
    Ok(WordMembership {
        accepted: witness.is_some(),
        witness,
    })
}

/// Replays a claimed accepting run.
pub fn verify_word_witness(a: &NondetWordAutomaton, w: &UltimatelyPeriodicWord, run: &LassoRun<usize>) -> Result<bool> {
    let lasso = w.to_lasso(a.alphabet())?;
    Ok(verify_lasso_run(a, &lasso, run))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eventually_b() -> NondetWordAutomaton {
        NondetWordAutomaton::from_names(
            "eventually-b",
            &["a", "b"],
            &[("wait", 1), ("done", 0)],
            "wait",
            &[
                ("wait", "a", "wait"),
                ("wait", "b", "done"),
                ("done", "a", "done"),
                ("done", "b", "done"),
            ],
        )
        .unwrap()
    }

    #[test]
    fn word_text_roundtrip() {
        let w: UltimatelyPeriodicWord = "a b (a b)^w".parse().unwrap();
        assert_eq!(w.prefix, ["a", "b"]);
        assert_eq!(w.period, ["a", "b"]);
        assert_eq!(w.to_string().parse::<UltimatelyPeriodicWord>().unwrap(), w);
        assert!("a b".parse::<UltimatelyPeriodicWord>().is_err());
        assert!("a ()".parse::<UltimatelyPeriodicWord>().is_err());
    }

    #[test]
    fn eventually_b_membership() {
        let a = eventually_b();
        let yes: UltimatelyPeriodicWord = "a (b)".parse().unwrap();
        let no: UltimatelyPeriodicWord = "a (a)".parse().unwrap();
        let m = npw_member(&a, &yes).unwrap();
        assert!(m.accepted);
        assert!(verify_word_witness(&a, &yes, m.witness.as_ref().unwrap()).unwrap());
        assert!(!npw_member(&a, &no).unwrap().accepted);
    }

    #[test]
    fn foreign_symbol_is_an_alphabet_mismatch() {
        let w: UltimatelyPeriodicWord = "(c)".parse().unwrap();
        assert!(matches!(npw_member(&eventually_b(), &w), Err(Error::AlphabetMismatch(_))));
    }
}
