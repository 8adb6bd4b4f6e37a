mod common;

use common::{rng, tree_member_oracle};
use rabin_core::automata::{npt_emptiness, npt_member, NondetTreeAutomaton};
use rabin_core::complementation::{complement, DEFAULT_BUDGET};
use rabin_core::generate;
use rand::Rng;

fn check_exactly_one(a: &NondetTreeAutomaton, b: &NondetTreeAutomaton, seed: u64, trees: usize, max_nodes: usize) {
    let mut r = rng(seed);
    let alphabet = a.alphabet().clone();
    for _ in 0..trees {
        let t = generate::regular_tree(&mut r, &alphabet, max_nodes);
        let in_a = npt_member(a, &t).unwrap().accepted;
        let in_b = npt_member(b, &t).unwrap().accepted;
        assert_eq!(in_a, tree_member_oracle(a, &t), "membership disagrees with oracle\n{a}\n{t}");
        assert!(in_a != in_b, "tree in both or neither (in A: {in_a})\nA:\n{a}\nB:\n{b}\ntree:\n{t}");
    }
}

#[test]
fn small_complete_automata() {
    let mut r = rng(7);
    for i in 0..200 {
        let states = r.gen_range(1..=2);
        let a = generate::complete_tree_automaton(&mut r, states, 2, 4 - 2 * states, 3);
        let (b, _) = complement(&a, DEFAULT_BUDGET).unwrap();
        check_exactly_one(&a, &b, 1000 + i, 20, 3);
    }
}

#[test]
fn larger_nondeterministic_automata() {
    let mut r = rng(11);
    for i in 0..30 {
        let a = generate::complete_tree_automaton(&mut r, 3, 2, 3, 3);
        let (b, _) = complement(&a, DEFAULT_BUDGET).unwrap();
        check_exactly_one(&a, &b, 5000 + i, 20, 4);
    }
}

#[test]
fn incomplete_automata_are_completed() {
    let mut r = rng(13);
    for i in 0..30 {
        let a = generate::tree_automaton(&mut r, 2, 2, 2, 0.3);
        let (b, report) = complement(&a, DEFAULT_BUDGET).unwrap();
        assert_eq!(report.sink_added, !a.is_complete());
        check_exactly_one(&a, &b, 7000 + i, 15, 3);
    }
}

#[test]
fn double_complement_preserves_language() {
    let mut r = rng(17);
    for i in 0..25 {
        let states = r.gen_range(1..=2);
        let a = generate::complete_tree_automaton(&mut r, states, 2, 1, 2);
        let (b, _) = complement(&a, DEFAULT_BUDGET).unwrap();
        let (c, _) = complement(&b, DEFAULT_BUDGET).unwrap();
        let mut tr = rng(9000 + i);
        for _ in 0..15 {
            let t = generate::regular_tree(&mut tr, a.alphabet(), 3);
            assert_eq!(npt_member(&a, &t).unwrap().accepted, npt_member(&c, &t).unwrap().accepted);
        }
    }
}

#[test]
fn complement_of_universal_is_empty() {
    let a = NondetTreeAutomaton::universal("all", generate::letters(2));
    let (b, report) = complement(&a, DEFAULT_BUDGET).unwrap();
    assert!(npt_emptiness(&b).is_empty());
    assert!(report.to_string().contains("result_states="));
}
