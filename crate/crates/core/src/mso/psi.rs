//! Sentences stating that tree-like parity games are positionally
//! determined.
//!
//! A game of index `(0, x)` with `k + 1` layers is given by a labelling of
//! the binary tree held in free set variables: `R{i}_{t}` is bit `t` of the
//! rank of layer `i`, and `E{i}_{b}_{j}` holds at `v` when position
//! `(v, i)` has a move to `(vb, j)`. Positions at even depth belong to the
//! existential player.
//!
//! A positional strategy is a set `Ev` of even-depth nodes (forced to be
//! exactly those) together with choice bits `C{i}_{t}` naming a move per
//! layer. A play is a family `P{i}` of sets: the nodes visited in layer `i`.

use super::ast::Formula;
use crate::games::Player;

fn bits_for(values: u32) -> u32 {
    if values <= 1 {
        0
    } else {
        32 - (values - 1).leading_zeros()
    }
}

struct Shape {
    x: u32,
    layers: usize,
    rank_bits: u32,
    choice_bits: u32,
}

impl Shape {
    fn new(x: u32, k: usize) -> Self {
        Shape {
            x,
            layers: k + 1,
            rank_bits: bits_for(x + 1),
            choice_bits: bits_for(2 * (k as u32 + 1)),
        }
    }

    fn moves(&self) -> impl Iterator<Item = (usize, u8, usize)> + '_ {
        (0..self.layers).flat_map(move |i| (0..2u8).flat_map(move |b| (0..self.layers).map(move |j| (i, b, j))))
    }

    fn labelling(&self) -> Vec<String> {
        let mut vars = Vec::new();
        for i in 0..self.layers {
            vars.extend((0..self.rank_bits).map(|t| format!("R{i}_{t}")));
        }
        vars.extend(self.moves().map(|(i, b, j)| edge(i, b, j)));
        vars
    }
}

fn edge(i: usize, b: u8, j: usize) -> String {
    format!("E{i}_{b}_{j}")
}

fn play(i: usize) -> String {
    format!("P{i}")
}

fn bits_equal(prefix: &str, count: u32, value: u32, v: &str) -> Formula {
    Formula::all((0..count).map(|t| {
        let m = Formula::member(v, format!("{prefix}_{t}"));
        if value >> t & 1 == 1 {
            m
        } else {
            Formula::not(m)
        }
    }))
}

fn rank_is(s: &Shape, i: usize, r: u32, v: &str) -> Formula {
    bits_equal(&format!("R{i}"), s.rank_bits, r, v)
}

fn rank_below(s: &Shape, i: usize, r: u32, v: &str) -> Formula {
    Formula::any((0..r).map(|q| rank_is(s, i, q, v)))
}

fn chooses(s: &Shape, i: usize, b: u8, j: usize, v: &str) -> Formula {
    bits_equal(&format!("C{i}"), s.choice_bits, 2 * j as u32 + b as u32, v)
}

fn owns(player: Player, v: &str) -> Formula {
    let even = Formula::member(v, "Ev");
    match player {
        Player::Exists => even,
        Player::Forall => Formula::not(even),
    }
}

fn in_play(s: &Shape, v: &str) -> Formula {
    Formula::any((0..s.layers).map(|i| Formula::member(v, play(i))))
}

fn iff(a: Formula, b: Formula) -> Formula {
    Formula::and(Formula::implies(a.clone(), b.clone()), Formula::implies(b, a))
}

/// Every position has a move and every rank is at most `x`.
fn well_formed(s: &Shape) -> Formula {
    let layer = |i: usize| {
        let has_move = Formula::any((0..2u8).flat_map(|b| (0..s.layers).map(move |j| Formula::member("v", edge(i, b, j)))));
        let too_big = Formula::any(((s.x + 1)..(1 << s.rank_bits)).map(|r| rank_is(s, i, r, "v")));
        Formula::and(has_move, Formula::not(too_big))
    };
    Formula::forall("v", Formula::all((0..s.layers).map(layer)))
}

/// `Ev` is the set of even-depth nodes and the choice bits of `player`
/// name an available move at each of its positions.
fn legal_strategy(s: &Shape, player: Player) -> Formula {
    let parity = Formula::and(
        Formula::forall("v", Formula::implies(Formula::Root("v".into()), Formula::member("v", "Ev"))),
        Formula::all((0..2u8).map(|b| {
            Formula::forall_all(
                ["v", "w"],
                Formula::implies(
                    Formula::Succ(b, "v".into(), "w".into()),
                    iff(Formula::member("w", "Ev"), Formula::not(Formula::member("v", "Ev"))),
                ),
            )
        })),
    );
    let available = |i: usize| {
        Formula::any(
            (0..2u8)
                .flat_map(|b| (0..s.layers).map(move |j| (b, j)))
                .map(|(b, j)| Formula::and(chooses(s, i, b, j, "v"), Formula::member("v", edge(i, b, j)))),
        )
    };
    let legal = Formula::forall("v", Formula::implies(owns(player, "v"), Formula::all((0..s.layers).map(available))));
    Formula::and(parity, legal)
}

/// The sets `P{i}` fail to describe a play from `(root, 0)` that follows
/// the moves and the strategy of `player`.
fn not_a_consistent_play(s: &Shape, player: Player) -> Formula {
    let at = |v: &str, i: usize| Formula::member(v, play(i));
    let sons = ["w0", "w1"];
    let mut local = vec![
        Formula::and(Formula::not(in_play(s, "v")), Formula::or(in_play(s, "w0"), in_play(s, "w1"))),
        Formula::all([in_play(s, "v"), Formula::not(in_play(s, "w0")), Formula::not(in_play(s, "w1"))]),
        Formula::and(in_play(s, "w0"), in_play(s, "w1")),
    ];
    for i in 0..s.layers {
        for j in i + 1..s.layers {
            local.push(Formula::and(at("v", i), at("v", j)));
        }
    }
    for (i, b, j) in s.moves() {
        let step = Formula::and(at("v", i), at(sons[b as usize], j));
        local.push(Formula::and(step.clone(), Formula::not(Formula::member("v", edge(i, b, j)))));
        local.push(Formula::all([owns(player, "v"), step, Formula::not(chooses(s, i, b, j, "v"))]));
    }
    let bad_root = Formula::exists("v", Formula::and(Formula::Root("v".into()), Formula::not(at("v", 0))));
    let bad_node = Formula::exists_all(
        ["v", "w0", "w1"],
        Formula::all([
            Formula::Succ(0, "v".into(), "w0".into()),
            Formula::Succ(1, "v".into(), "w1".into()),
            Formula::any(local),
        ]),
    );
    Formula::or(bad_root, bad_node)
}

/// The least rank seen infinitely often along the play is `r`.
fn liminf_is(s: &Shape, r: u32) -> Formula {
    let seen_at = |w: &str| Formula::any((0..s.layers).map(|i| Formula::and(Formula::member(w, play(i)), rank_is(s, i, r, w))));
    let infinitely_often = Formula::forall(
        "v",
        Formula::implies(
            in_play(s, "v"),
            Formula::exists(
                "w",
                Formula::all([Formula::Prefix("v".into(), "w".into()), Formula::not(Formula::Eq("v".into(), "w".into())), seen_at("w")]),
            ),
        ),
    );
    let never_below = Formula::all(
        (0..s.layers).map(|i| Formula::implies(Formula::member("w", play(i)), Formula::not(rank_below(s, i, r, "w")))),
    );
    let eventually = Formula::exists(
        "v",
        Formula::and(
            in_play(s, "v"),
            Formula::forall("w", Formula::implies(Formula::and(Formula::Prefix("v".into(), "w".into()), in_play(s, "w")), never_below)),
        ),
    );
    Formula::and(infinitely_often, eventually)
}

/// `player` has a positional winning strategy from `(root, 0)` in the game
/// labelled by the free variables `R*` and `E*`.
pub fn player_wins(player: Player, x: u32, k: usize) -> Formula {
    let s = Shape::new(x, k);
    let wanted = match player {
        Player::Exists => 0,
        Player::Forall => 1,
    };
    let winning = Formula::any((wanted..=x).step_by(2).map(|r| liminf_is(&s, r)));
    let strategy: Vec<String> = (0..s.layers)
        .flat_map(|i| (0..s.choice_bits).map(move |t| format!("C{i}_{t}")))
        .chain(["Ev".to_string()])
        .collect();
    let plays: Vec<String> = (0..s.layers).map(play).collect();
    Formula::exists_all(
        strategy,
        Formula::forall_all(
            plays,
            Formula::and(legal_strategy(&s, player), Formula::or(not_a_consistent_play(&s, player), winning)),
        ),
    )
}

/// Every well-formed game of index `(0, x)` with `k + 1` layers is won
/// positionally by one of the players.
pub fn positional_determinacy_sentence(x: u32, k: usize) -> Formula {
    let s = Shape::new(x, k);
    let body = Formula::any([
        Formula::not(well_formed(&s)),
        player_wins(Player::Exists, x, k),
        player_wins(Player::Forall, x, k),
    ]);
    Formula::forall_all(s.labelling(), body)
}
