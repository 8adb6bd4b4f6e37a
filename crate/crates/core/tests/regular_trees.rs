mod common;

use std::collections::BTreeSet;

use common::{first_cycle_winner, rng};
use proptest::prelude::*;
use rabin_core::automata::Alphabet;
use rabin_core::games::solve;
use rabin_core::generate;
use rabin_core::regular_trees::{
    decode_game, encode_game, GameSymbol, GameTreeAlphabet, RegularTree,
};
use rand::Rng;

fn game_alphabet<R: Rng>(r: &mut R, x: u32, k: usize, size: usize) -> Alphabet {
    let symbols: BTreeSet<String> = (0..size).map(|_| generate::game_symbol(r, x, k).to_string()).collect();
    Alphabet::new(symbols).unwrap()
}

#[test]
fn quotient_game_matches_unfolding() {
    let mut r = rng(23);
    let mut nontrivial = 0;
    for _ in 0..80 {
        let x = r.gen_range(0..=2);
        let k = r.gen_range(0..=1);
        let alphabet = game_alphabet(&mut r, x, k, 3);
        let tree = generate::regular_tree(&mut r, &alphabet, 3);
        let symbols: Vec<GameSymbol> = alphabet.symbols().iter().map(|s| s.parse().unwrap()).collect();
        let decoded = decode_game(&tree, x, k).unwrap();
        let expected = solve(&decoded.game).winner(decoded.initial);
        let horizon = 2 * tree.node_count() * (k + 1);
        let direct = first_cycle_winner(&tree, &symbols, &mut vec![(tree.root(), 0, 0)], horizon);
        assert_eq!(expected, direct, "tree\n{tree}");
        if decoded.game.vertex_count() > 2 {
            nontrivial += 1;
        }
    }
    assert!(nontrivial > 20);
}

#[test]
fn encoding_round_trip_preserves_winner() {
    let mut r = rng(29);
    for _ in 0..60 {
        let x = r.gen_range(0..=2);
        let k = r.gen_range(0..=1);
        let states = r.gen_range(1..=4);
        let game = generate::almost_tree_like_game(&mut r, x, k, states);
        let tree = encode_game(&game).unwrap();
        let decoded = decode_game(&tree, x, k).unwrap();
        let finite = game.to_finite_game().unwrap();
        assert_eq!(solve(&decoded.game).winner(decoded.initial), solve(&finite).winner(0));
        for s in tree.alphabet().symbols() {
            assert!(GameTreeAlphabet::new(x, k).contains(&s.parse().unwrap()));
        }
    }
}

#[test]
fn symbol_counts() {
    assert_eq!(GameTreeAlphabet::new(0, 0).symbol_count(), Some(4));
    assert_eq!(GameTreeAlphabet::new(1, 1).symbol_count(), Some(1024));
    assert_eq!(GameTreeAlphabet::new(2, 0).symbol_count(), Some(12));
}

#[test]
fn minimized_tree_has_same_unfolding() {
    let mut r = rng(31);
    let alphabet = generate::letters(2);
    for _ in 0..100 {
        let t = generate::regular_tree(&mut r, &alphabet, 6);
        let m = t.minimized();
        assert!(m.node_count() <= t.node_count());
        assert_eq!(t.unfold(8), m.unfold(8));
    }
}

proptest! {
    #[test]
    fn text_round_trip(seed in any::<u64>(), nodes in 1usize..8) {
        let mut r = rng(seed);
        let t = generate::regular_tree(&mut r, &generate::letters(3), nodes);
        let back = RegularTree::parse(&t.to_string()).unwrap();
        prop_assert_eq!(back.unfold(6), t.unfold(6));
    }

    #[test]
    fn symbol_round_trip(seed in any::<u64>(), x in 0u32..4, k in 0usize..3) {
        let mut r = rng(seed);
        let s = generate::game_symbol(&mut r, x, k);
        let back: GameSymbol = s.to_string().parse().unwrap();
        prop_assert_eq!(&back, &s);
        prop_assert!(back.check(x, k).is_ok());
    }

    #[test]
    fn subtree_classes_agree_with_unfoldings(seed in any::<u64>()) {
        let mut r = rng(seed);
        let t = generate::regular_tree(&mut r, &generate::letters(2), 5);
        let depth = 2 * t.node_count();
        let sub = |v: usize| {
            let nodes: Vec<String> = t.nodes().to_vec();
            let s = RegularTree::new(t.alphabet().clone(), nodes, v,
                (0..t.node_count()).map(|w| t.label(w)).collect(),
                (0..t.node_count()).map(|w| t.left(w)).collect(),
                (0..t.node_count()).map(|w| t.right(w)).collect());
            s.map(|s| s.unfold(depth))
        };
        for u in 0..t.node_count() {
            for v in 0..t.node_count() {
                if let (Ok(a), Ok(b)) = (sub(u), sub(v)) {
                    prop_assert_eq!(t.subtree_equiv(u, v), a == b);
                }
            }
        }
    }
}
