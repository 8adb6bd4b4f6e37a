use std::collections::{BTreeSet, VecDeque};

use super::{GameSolution, ParityGame, Player, PositionalStrategy};

const NONE: usize = usize::MAX;

struct Solver<'a> {
    game: &'a ParityGame,
    /// Chosen successor per vertex, for the vertex's owner.
    choice: Vec<usize>,
}

/// Zielonka's recursive algorithm on the least rank.
///
/// Output is canonical: attractors are computed in layers and attracted
/// vertices pick the least successor from an earlier layer; other choices
/// pick the least successor inside the current subgame.
pub fn solve(game: &ParityGame) -> GameSolution {
    let n = game.vertex_count();
    let mut solver = Solver {
        game,
        choice: vec![NONE; n],
    };
    let active = vec![true; n];
    let win = solver.solve(&active);
    let mut solution = GameSolution {
        region_exists: BTreeSet::new(),
        region_forall: BTreeSet::new(),
        strategy_exists: PositionalStrategy::new(Player::Exists),
        strategy_forall: PositionalStrategy::new(Player::Forall),
    };
    for v in 0..n {
        let p = win[v].expect("every vertex is won by someone");
        match p {
            Player::Exists => solution.region_exists.insert(v),
            Player::Forall => solution.region_forall.insert(v),
        };
        if game.owner(v) == p {
            let strategy = match p {
                Player::Exists => &mut solution.strategy_exists,
                Player::Forall => &mut solution.strategy_forall,
            };
            debug_assert_ne!(solver.choice[v], NONE);
            strategy.moves.insert(v, solver.choice[v]);
        }
    }
    solution
}

impl Solver<'_> {
    /// Solves the subgame on `active` (a trap for both players'
    /// opponents, so every vertex keeps a successor inside it).
    fn solve(&mut self, active: &[bool]) -> Vec<Option<Player>> {
        let n = active.len();
        let mut win = vec![None; n];
        let Some(r) = (0..n).filter(|&v| active[v]).map(|v| self.game.rank(v)).min() else {
            return win;
        };
        let p = Player::of_parity(r);
        let top: Vec<usize> = (0..n).filter(|&v| active[v] && self.game.rank(v) == r).collect();
        for &v in &top {
            if self.game.owner(v) == p {
                self.choice[v] = self.least_successor(v, active);
            }
        }
        let attr = self.attractor(p, &top, active);
        let rest: Vec<bool> = (0..n).map(|v| active[v] && !attr[v]).collect();
        let sub = self.solve(&rest);
        let opp_region: Vec<usize> = (0..n).filter(|&v| sub[v] == Some(p.opponent())).collect();
        if opp_region.is_empty() {
            for v in 0..n {
                if active[v] {
                    win[v] = Some(p);
                }
            }
            return win;
        }
        let opp_attr = self.attractor(p.opponent(), &opp_region, active);
        let rest: Vec<bool> = (0..n).map(|v| active[v] && !opp_attr[v]).collect();
        let sub = self.solve(&rest);
        for v in 0..n {
            if opp_attr[v] {
                win[v] = Some(p.opponent());
            } else if active[v] {
                win[v] = sub[v];
            }
        }
        win
    }

    fn least_successor(&self, v: usize, active: &[bool]) -> usize {
        *self
            .game
            .successors(v)
            .iter()
            .find(|&&w| active[w])
            .expect("subgames are traps, so active vertices keep a successor")
    }

    /// Attractor of `player` to `target` inside `active`; records choices
    /// for the player's attracted vertices.
    fn attractor(&mut self, player: Player, target: &[usize], active: &[bool]) -> Vec<bool> {
        let n = active.len();
        let mut layer = vec![usize::MAX; n];
        let mut remaining: Vec<usize> = (0..n)
            .map(|v| {
                if active[v] {
                    self.game.successors(v).iter().filter(|&&w| active[w]).count()
                } else {
                    0
                }
            })
            .collect();
        let mut queue = VecDeque::new();
        for &v in target {
            layer[v] = 0;
            queue.push_back(v);
        }
        while let Some(w) = queue.pop_front() {
            for &v in self.game.predecessors(w) {
                if !active[v] || layer[v] != usize::MAX {
                    continue;
                }
                let attracted = if self.game.owner(v) == player {
                    true
                } else {
                    remaining[v] -= 1;
                    remaining[v] == 0
                };
                if attracted {
                    layer[v] = layer[w] + 1;
                    queue.push_back(v);
                }
            }
        }
        let in_attr: Vec<bool> = layer.iter().map(|&l| l != usize::MAX).collect();
        for v in 0..n {
            if in_attr[v] && layer[v] > 0 && self.game.owner(v) == player {
                self.choice[v] = *self
                    .game
                    .successors(v)
                    .iter()
                    .find(|&&w| active[w] && layer[w] < layer[v])
                    .expect("attracted vertex has a successor in an earlier layer");
            }
        }
        in_attr
    }
}
