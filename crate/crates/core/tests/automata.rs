mod common;

use common::{rng, tree_member_oracle};
use rabin_core::automata::{
    complete_tree_automaton, npt_emptiness, npt_member, parse_automaton, reduce, Emptiness, ParsedAutomaton,
};
use rabin_core::games::verify_positional_strategy;
use rabin_core::generate;
use rand::Rng;

#[test]
fn tree_membership_matches_oracle() {
    let mut r = rng(41);
    for _ in 0..150 {
        let states = r.gen_range(1..=3);
        let a = generate::tree_automaton(&mut r, states, 2, 3, 0.25);
        for _ in 0..10 {
            let t = generate::regular_tree(&mut r, a.alphabet(), 4);
            let m = npt_member(&a, &t).unwrap();
            assert_eq!(m.accepted, tree_member_oracle(&a, &t), "{a}\n{t}");
            let winner = if m.accepted { rabin_core::games::Player::Exists } else { rabin_core::games::Player::Forall };
            assert_eq!(m.strategy.player, winner);
            assert!(m.region.contains(&m.game.initial().unwrap()));
            assert!(verify_positional_strategy(&m.game, &m.strategy, &m.region).unwrap());
        }
    }
}

#[test]
fn completion_and_reduction_preserve_membership() {
    let mut r = rng(43);
    for _ in 0..150 {
        let states = r.gen_range(1..=4);
        let a = generate::tree_automaton(&mut r, states, 2, 3, 0.2);
        let c = complete_tree_automaton(&a);
        assert!(c.is_complete());
        let small = reduce(&a);
        assert!(small.state_count() <= c.state_count());
        for _ in 0..10 {
            let t = generate::regular_tree(&mut r, a.alphabet(), 4);
            let expected = npt_member(&a, &t).unwrap().accepted;
            assert_eq!(npt_member(&c, &t).unwrap().accepted, expected);
            assert_eq!(npt_member(&small, &t).unwrap().accepted, expected, "reduce changed\n{a}\nto\n{small}\non\n{t}");
        }
    }
}

#[test]
fn emptiness_witnesses_are_small_and_accepted() {
    let mut r = rng(47);
    let mut nonempty = 0;
    for _ in 0..200 {
        let states = r.gen_range(1..=4);
        let a = generate::tree_automaton(&mut r, states, 2, 3, 0.2);
        match npt_emptiness(&a) {
            Emptiness::Witness(t) => {
                nonempty += 1;
                assert!(t.minimized().node_count() <= a.state_count());
                assert!(npt_member(&a, &t).unwrap().accepted);
            }
            Emptiness::Empty => {
                for _ in 0..10 {
                    let t = generate::regular_tree(&mut r, a.alphabet(), 4);
                    assert!(!npt_member(&a, &t).unwrap().accepted);
                }
            }
        }
    }
    assert!(nonempty > 20);
}

#[test]
fn tree_automaton_text_round_trip() {
    let mut r = rng(53);
    for _ in 0..30 {
        let a = generate::tree_automaton(&mut r, 3, 2, 2, 0.3);
        match parse_automaton(&a.to_string()).unwrap() {
            ParsedAutomaton::Tree(b) => assert_eq!(b.to_string(), a.to_string()),
            other => panic!("parsed as {other}"),
        }
    }
}
