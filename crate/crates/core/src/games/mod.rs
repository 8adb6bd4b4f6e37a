//! Finite parity games: construction, a textual format, Zielonka's
//! recursive solver, strategy verification and a brute-force oracle.

mod brute;
mod difference;
mod verify;
mod zielonka;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

pub use brute::{brute_force_solve, brute_force_solve_with_limit, DEFAULT_BRUTE_FORCE_LIMIT};
pub use difference::{difference_to_rank_labelling, parity_play_winner, ranks_along, DeltaFn, DifferenceCondition};
pub use verify::verify_positional_strategy;
pub use zielonka::solve;

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Player {
    Exists,
    Forall,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::Exists => Player::Forall,
            Player::Forall => Player::Exists,
        }
    }

    /// The player who wins when `rank` is the least rank seen infinitely often.
    pub fn of_parity(rank: u32) -> Player {
        if rank % 2 == 0 {
            Player::Exists
        } else {
            Player::Forall
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Player::Exists => "Exists",
            Player::Forall => "Forall",
        })
    }
}

/// Finite arena with min-parity winning condition for `Exists`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityGame {
    names: Vec<String>,
    owners: Vec<Player>,
    ranks: Vec<u32>,
    succ: Vec<Vec<usize>>,
    pred: Vec<Vec<usize>>,
    max_rank: u32,
    initial: Option<usize>,
}

impl ParityGame {
    /// `succ[v]` lists the successors of `v`; ranks must lie in `0..=max_rank`.
    pub fn new(
        names: Vec<String>,
        owners: Vec<Player>,
        ranks: Vec<u32>,
        mut succ: Vec<Vec<usize>>,
        max_rank: u32,
        initial: Option<usize>,
    ) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::malformed("parity game", "no vertices"));
        }
        if owners.len() != n || ranks.len() != n || succ.len() != n {
            return Err(Error::malformed("parity game", "owner, rank and edges must be given for every vertex"));
        }
        if let Some(i) = initial {
            if i >= n {
                return Err(Error::malformed("parity game", "initial vertex out of range"));
            }
        }
        let mut seen = BTreeSet::new();
        for name in &names {
            if !seen.insert(name.as_str()) {
                return Err(Error::malformed("parity game", format!("duplicate vertex `{name}`")));
            }
        }
        for (v, &r) in ranks.iter().enumerate() {
            if r > max_rank {
                return Err(Error::RankOutOfRange { rank: r, max: max_rank });
            }
            let s = &mut succ[v];
            s.sort_unstable();
            s.dedup();
            if s.is_empty() {
                return Err(Error::DeadEnd(names[v].clone()));
            }
            if s.iter().any(|&w| w >= n) {
                return Err(Error::malformed("parity game", "edge to an undeclared vertex"));
            }
        }
        let mut pred = vec![Vec::new(); n];
        for (v, s) in succ.iter().enumerate() {
            for &w in s {
                pred[w].push(v);
            }
        }
        Ok(ParityGame {
            names,
            owners,
            ranks,
            succ,
            pred,
            max_rank,
            initial,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }
    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }
    pub fn names(&self) -> &[String] {
        &self.names
    }
    pub fn owner(&self, v: usize) -> Player {
        self.owners[v]
    }
    pub fn rank(&self, v: usize) -> u32 {
        self.ranks[v]
    }
    pub fn successors(&self, v: usize) -> &[usize] {
        &self.succ[v]
    }
    pub fn predecessors(&self, v: usize) -> &[usize] {
        &self.pred[v]
    }
    /// Declared index: ranks lie in `0..=max_rank`.
    pub fn max_rank(&self) -> u32 {
        self.max_rank
    }
    pub fn initial(&self) -> Option<usize> {
        self.initial
    }
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
    pub fn has_edge(&self, v: usize, w: usize) -> bool {
        self.succ[v].binary_search(&w).is_ok()
    }

    /// Parses the `parity-game index 0 <x>` format.
    pub fn parse(text: &str) -> Result<Self> {
        let mut max_rank = None;
        let mut initial_name: Option<(usize, String)> = None;
        let mut rows: Vec<(usize, String, Player, u32, Vec<String>)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if max_rank.is_none() {
                if tokens.len() != 4 || tokens[0] != "parity-game" || tokens[1] != "index" || tokens[2] != "0" {
                    return Err(Error::parse(line_no, "expected header `parity-game index 0 <x>`"));
                }
                max_rank = Some(
                    tokens[3]
                        .parse::<u32>()
                        .map_err(|_| Error::parse(line_no, "index bound must be a non-negative integer"))?,
                );
                continue;
            }
            if tokens[0] == "initial" {
                if tokens.len() != 2 || initial_name.is_some() {
                    return Err(Error::parse(line_no, "expected a single `initial <id>` line"));
                }
                initial_name = Some((line_no, tokens[1].to_string()));
                continue;
            }
            let (lhs, rhs) = line
                .split_once("->")
                .ok_or_else(|| Error::parse(line_no, "expected `id owner(rank) -> succ,...`"))?;
            let lhs: Vec<&str> = lhs.split_whitespace().collect();
            if lhs.len() != 2 {
                return Err(Error::parse(line_no, "expected `id owner(rank)` before `->`"));
            }
            let spec = lhs[1];
            let (owner, rest) = if let Some(r) = spec.strip_prefix("Exists").or_else(|| spec.strip_prefix('E')) {
                (Player::Exists, r)
            } else if let Some(r) = spec.strip_prefix("Forall").or_else(|| spec.strip_prefix('A')) {
                (Player::Forall, r)
            } else {
                return Err(Error::parse(line_no, format!("unknown owner in `{spec}`, use E or A")));
            };
            let rank = rest
                .strip_prefix('(')
                .and_then(|r| r.strip_suffix(')'))
                .and_then(|r| r.parse::<u32>().ok())
                .ok_or_else(|| Error::parse(line_no, format!("expected `(rank)` after the owner in `{spec}`")))?;
            let succs: Vec<String> = rhs
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(str::to_string)
                .collect();
            rows.push((line_no, lhs[0].to_string(), owner, rank, succs));
        }
        let max_rank = max_rank.ok_or_else(|| Error::parse(1, "missing header"))?;
        let mut index = HashMap::new();
        for (line, name, ..) in &rows {
            if index.insert(name.clone(), index.len()).is_some() {
                return Err(Error::parse(*line, format!("vertex `{name}` declared twice")));
            }
        }
        let mut succ = Vec::new();
        for (line, name, _, rank, succs) in &rows {
            if *rank > max_rank {
                return Err(Error::parse(*line, format!("rank {rank} of `{name}` exceeds the index bound {max_rank}")));
            }
            if succs.is_empty() {
                return Err(Error::DeadEnd(name.clone()));
            }
            let mut s = Vec::new();
            for w in succs {
                s.push(*index.get(w).ok_or_else(|| Error::parse(*line, format!("undeclared vertex `{w}`")))?);
            }
            succ.push(s);
        }
        let initial = match initial_name {
            Some((line, name)) => {
                Some(*index.get(&name).ok_or_else(|| Error::parse(line, format!("undeclared initial vertex `{name}`")))?)
            }
            None => None,
        };
        ParityGame::new(
            rows.iter().map(|r| r.1.clone()).collect(),
            rows.iter().map(|r| r.2).collect(),
            rows.iter().map(|r| r.3).collect(),
            succ,
            max_rank,
            initial,
        )
    }
}

impl fmt::Display for ParityGame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "parity-game index 0 {}", self.max_rank)?;
        if let Some(i) = self.initial {
            writeln!(f, "initial {}", self.names[i])?;
        }
        for v in 0..self.vertex_count() {
            let owner = match self.owners[v] {
                Player::Exists => 'E',
                Player::Forall => 'A',
            };
            let succ: Vec<&str> = self.succ[v].iter().map(|&w| self.names[w].as_str()).collect();
            writeln!(f, "{} {}({}) -> {}", self.names[v], owner, self.ranks[v], succ.join(","))?;
        }
        Ok(())
    }
}

/// Memoryless strategy of one player: a successor for each of the
/// player's vertices in its domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositionalStrategy {
    pub player: Player,
    pub moves: BTreeMap<usize, usize>,
}

impl PositionalStrategy {
    pub fn new(player: Player) -> Self {
        PositionalStrategy {
            player,
            moves: BTreeMap::new(),
        }
    }

    pub fn get(&self, v: usize) -> Option<usize> {
        self.moves.get(&v).copied()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameSolution {
    pub region_exists: BTreeSet<usize>,
    pub region_forall: BTreeSet<usize>,
    pub strategy_exists: PositionalStrategy,
    pub strategy_forall: PositionalStrategy,
}

impl GameSolution {
    pub fn winner(&self, v: usize) -> Player {
        if self.region_exists.contains(&v) {
            Player::Exists
        } else {
            Player::Forall
        }
    }

    pub fn region(&self, player: Player) -> &BTreeSet<usize> {
        match player {
            Player::Exists => &self.region_exists,
            Player::Forall => &self.region_forall,
        }
    }

    pub fn strategy(&self, player: Player) -> &PositionalStrategy {
        match player {
            Player::Exists => &self.strategy_exists,
            Player::Forall => &self.strategy_forall,
        }
    }

    /// Canonical listing used by the CLI.
    pub fn render(&self, game: &ParityGame) -> String {
        let mut out = String::new();
        for p in [Player::Exists, Player::Forall] {
            out.push_str(&format!("win {p}:"));
            for &v in self.region(p) {
                out.push_str(&format!(" {}", game.name(v)));
            }
            out.push('\n');
        }
        for p in [Player::Exists, Player::Forall] {
            for (&v, &w) in &self.strategy(p).moves {
                out.push_str(&format!("strategy {p}: {} -> {}\n", game.name(v), game.name(w)));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TWO: &str = "
        parity-game index 0 1
        initial v0
        v0 E(1) -> v0, v1
        v1 A(0) -> v1
    ";

    #[test]
    fn parse_and_print() {
        let g = ParityGame::parse(TWO).unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.owner(0), Player::Exists);
        assert_eq!(g.successors(0), &[0, 1]);
        assert_eq!(g.initial(), Some(0));
        assert_eq!(ParityGame::parse(&g.to_string()).unwrap(), g);
    }

    #[test]
    fn rejects_dead_ends_and_ranks_above_index() {
        assert!(matches!(
            ParityGame::parse("parity-game index 0 1\nv E(0) ->\n"),
            Err(Error::DeadEnd(_))
        ));
        assert!(ParityGame::parse("parity-game index 0 1\nv E(2) -> v\n").is_err());
        assert!(matches!(
            ParityGame::new(vec!["v".into()], vec![Player::Exists], vec![3], vec![vec![0]], 2, None),
            Err(Error::RankOutOfRange { rank: 3, max: 2 })
        ));
    }
}
