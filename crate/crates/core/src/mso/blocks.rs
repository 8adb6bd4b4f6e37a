use super::ast::{is_set_variable, Formula};

/// Least `(s, p)` such that the formula has a prenex form with `s` blocks
/// starting existentially and one with `p` blocks starting universally.
fn levels(f: &Formula, counts: &dyn Fn(&str) -> bool) -> (usize, usize) {
    use Formula::*;
    match f {
        True | False | Eq(..) | Succ(..) | In(..) | Root(_) | Prefix(..) => (0, 0),
        Not(g) => {
            let (s, p) = levels(g, counts);
            (p, s)
        }
        And(a, b) | Or(a, b) => {
            let (s1, p1) = levels(a, counts);
            let (s2, p2) = levels(b, counts);
            (s1.max(s2), p1.max(p2))
        }
        Implies(a, b) => {
            let (s1, p1) = levels(a, counts);
            let (s2, p2) = levels(b, counts);
            (p1.max(s2), s1.max(p2))
        }
        Exists(v, g) | Forall(v, g) => {
            let (s, p) = levels(g, counts);
            if !counts(v) {
                return (s, p);
            }
            if matches!(f, Exists(..)) {
                let s = s.max(1).min(p + 1);
                (s, s + 1)
            } else {
                let p = p.max(1).min(s + 1);
                (p + 1, p)
            }
        }
    }
}

/// Number of alternating quantifier blocks in the shortest prenex form,
/// counting node quantifiers as well as set quantifiers.
pub fn quantifier_blocks(f: &Formula) -> usize {
    let (s, p) = levels(f, &|_| true);
    s.min(p)
}

/// Number of alternating set-quantifier blocks, node quantifiers ignored.
pub fn set_quantifier_blocks(f: &Formula) -> (usize, usize) {
    levels(f, &is_set_variable)
}

/// Whether the formula is equivalent, by prenexing, to one of the form
/// `ALL X. EX Y. ALL Z. ...` with a first-order matrix.
pub fn is_pi13(f: &Formula) -> bool {
    set_quantifier_blocks(f).1 <= 3
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mso::parse;

    #[test]
    fn counts() {
        assert_eq!(quantifier_blocks(&parse("true & x = y").unwrap()), 0);
        let f = parse("ALL X. EX Y. ALL Z. EX x. x in X & x in Y & x in Z").unwrap();
        assert_eq!(quantifier_blocks(&f), 4);
        assert_eq!(set_quantifier_blocks(&f), (4, 3));
        assert!(is_pi13(&f));
        assert!(!is_pi13(&parse("EX W. ALL X. EX Y. ALL Z. true").unwrap()));
        // ALL-EX or EX-ALL prenexes with three blocks
        let f = parse("EX S. ALL P. (ALL x. EX y. x in S & y in P) | (EX x. ALL y. x in S & y in P)").unwrap();
        assert_eq!(quantifier_blocks(&f), 4);
        assert_eq!(quantifier_blocks(&parse("!EX X. ALL Y. true").unwrap()), 2);
    }
}
