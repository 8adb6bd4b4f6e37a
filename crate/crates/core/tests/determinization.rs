mod common;

use common::{lasso_oracle, rng};
use rabin_core::automata::npw_member;
use rabin_core::determinization::{complement_dpw, normalize_ranks, parity_to_buchi, safra_determinize, DEFAULT_BUDGET};
use rabin_core::generate;
use rabin_core::machine::deterministic_liminf;

#[test]
fn safra_agrees_with_lasso_oracle() {
    let mut rng = rng(11);
    for _ in 0..100 {
        let n = 1 + rand::Rng::gen_range(&mut rng, 0..4);
        let b = generate::word_automaton(&mut rng, n, 2, 1, 0.4);
        let d = safra_determinize(&b, DEFAULT_BUDGET).unwrap();
        for _ in 0..30 {
            let w = generate::lasso_word(&mut rng, b.alphabet(), 4, 4);
            let lasso = w.to_lasso(d.alphabet()).unwrap();
            let det = deterministic_liminf(&d, &lasso) % 2 == 0;
            assert_eq!(det, lasso_oracle(&b, &w), "{b}\n{w}");
        }
    }
}

#[test]
fn parity_to_buchi_preserves_language() {
    let mut rng = rng(12);
    for _ in 0..60 {
        let a = generate::word_automaton(&mut rng, 3, 2, 3, 0.4);
        let b = parity_to_buchi(&a);
        assert!(b.max_rank() <= 1);
        for _ in 0..20 {
            let w = generate::lasso_word(&mut rng, a.alphabet(), 3, 4);
            assert_eq!(npw_member(&b, &w).unwrap().accepted, lasso_oracle(&a, &w), "{a}\n{w}");
        }
        assert_eq!(parity_to_buchi(&b), b);
    }
}

#[test]
fn complement_is_disjoint_and_covering() {
    let mut rng = rng(13);
    for _ in 0..40 {
        let b = generate::word_automaton(&mut rng, 3, 2, 1, 0.5);
        let d = safra_determinize(&b, DEFAULT_BUDGET).unwrap();
        let c = complement_dpw(&d);
        let cc = normalize_ranks(&complement_dpw(&c));
        let nd = normalize_ranks(&d);
        assert!(nd.max_rank() <= d.max_rank());
        for _ in 0..30 {
            let w = generate::lasso_word(&mut rng, b.alphabet(), 3, 3);
            let lasso = w.to_lasso(d.alphabet()).unwrap();
            let in_d = deterministic_liminf(&d, &lasso) % 2 == 0;
            let in_c = deterministic_liminf(&c, &lasso) % 2 == 0;
            assert_ne!(in_d, in_c);
            assert_eq!(deterministic_liminf(&cc, &lasso) % 2 == 0, in_d);
            assert_eq!(deterministic_liminf(&nd, &lasso) % 2 == 0, in_d);
        }
    }
}

#[test]
fn npw_member_agrees_with_oracle_and_witnesses_replay() {
    let mut rng = rng(14);
    for _ in 0..200 {
        let n = 1 + rand::Rng::gen_range(&mut rng, 0..4);
        let a = generate::word_automaton(&mut rng, n, 2, 3, 0.35);
        let w = generate::lasso_word(&mut rng, a.alphabet(), 3, 3);
        let m = npw_member(&a, &w).unwrap();
        assert_eq!(m.accepted, lasso_oracle(&a, &w));
        if let Some(run) = &m.witness {
            assert!(rabin_core::automata::verify_word_witness(&a, &w, run).unwrap());
        }
    }
}
