//! Almost tree-like parity games encoded as labelled trees.
//!
//! Positions are pairs (binary-string node, layer in `0..=k`); edges only
//! lead from a node to one of its sons, and even-depth positions belong to
//! `Exists`. The label of a node lists the ranks of its `k + 1` positions
//! and the edges leaving them.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use super::RegularTree;
use crate::automata::Alphabet;
use crate::games::{ParityGame, Player};
use crate::{Error, Result};

/// Label of one node: `ranks[i]` is the rank of layer `i`, and `(i, b, j)`
/// in `edges` is a move from layer `i` to layer `j` of son `b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GameSymbol {
    pub ranks: Vec<u32>,
    pub edges: BTreeSet<(usize, u8, usize)>,
}

impl GameSymbol {
    /// Layers of this symbol minus one.
    pub fn k(&self) -> usize {
        self.ranks.len() - 1
    }

    /// Checks the symbol against the alphabet `Σ_{x,k}`.
    pub fn check(&self, x: u32, k: usize) -> Result<()> {
        if self.ranks.len() != k + 1 {
            return Err(Error::IndexOverflow(format!("symbol has {} layers, expected {}", self.ranks.len(), k + 1)));
        }
        if let Some(r) = self.ranks.iter().find(|&&r| r > x) {
            return Err(Error::IndexOverflow(format!("rank {r} exceeds {x}")));
        }
        if let Some(e) = self.edges.iter().find(|&&(i, b, j)| i > k || j > k || b > 1) {
            return Err(Error::IndexOverflow(format!("edge {e:?} leaves layers 0..={k}")));
        }
        Ok(())
    }
}

impl fmt::Display for GameSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ranks: Vec<String> = self.ranks.iter().map(u32::to_string).collect();
        write!(f, "rank:({});edges:", ranks.join(","))?;
        let edges: Vec<String> = self.edges.iter().map(|(i, b, j)| format!("({i},{b},{j})")).collect();
        write!(f, "{}", edges.join(","))
    }
}

impl FromStr for GameSymbol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::MalformedSymbol(s.to_string());
        let (ranks, edges) = s.split_once(";edges:").ok_or_else(bad)?;
        let ranks = ranks
            .strip_prefix("rank:(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        let ranks: Vec<u32> = ranks
            .split(',')
            .map(|r| r.trim().parse::<u32>().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        let mut set = BTreeSet::new();
        let edges = edges.trim();
        if !edges.is_empty() {
            let inner = edges.strip_prefix('(').and_then(|e| e.strip_suffix(')')).ok_or_else(bad)?;
            for triple in inner.split("),(") {
                let parts: Vec<&str> = triple.split(',').collect();
                if parts.len() != 3 {
                    return Err(bad());
                }
                let i = parts[0].trim().parse::<usize>().map_err(|_| bad())?;
                let b = parts[1].trim().parse::<u8>().map_err(|_| bad())?;
                let j = parts[2].trim().parse::<usize>().map_err(|_| bad())?;
                if b > 1 || i >= ranks.len() || j >= ranks.len() {
                    return Err(bad());
                }
                set.insert((i, b, j));
            }
        }
        Ok(GameSymbol { ranks, edges: set })
    }
}

/// The alphabet `Σ_{x,k}`; kept symbolic since it is astronomically large.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GameTreeAlphabet {
    pub x: u32,
    pub k: usize,
}

impl GameTreeAlphabet {
    pub fn new(x: u32, k: usize) -> Self {
        GameTreeAlphabet { x, k }
    }

    /// `(x+1)^(k+1) * 2^(2(k+1)^2)`, or `None` on overflow.
    pub fn symbol_count(&self) -> Option<u128> {
        let layers = u32::try_from(self.k + 1).ok()?;
        let ranks = (u128::from(self.x) + 1).checked_pow(layers)?;
        let edge_bits = 2u32.checked_mul(layers.checked_mul(layers)?)?;
        ranks.checked_mul(2u128.checked_pow(edge_bits)?)
    }

    pub fn contains(&self, symbol: &GameSymbol) -> bool {
        symbol.check(self.x, self.k).is_ok()
    }
}

/// Finite parity game obtained from a regular game tree, together with the
/// map back to tree positions.
#[derive(Debug, Clone)]
pub struct DecodedGame {
    pub game: ParityGame,
    pub initial: usize,
    /// Subtree class of every tree node.
    pub classes: Vec<usize>,
    /// `(subtree class, depth parity, layer)` of each game vertex.
    pub positions: Vec<(usize, u8, usize)>,
    index: HashMap<(usize, u8, usize), usize>,
}

impl DecodedGame {
    /// Game vertex standing for position `(v, layer)` of the encoded game,
    /// where `v` is a tree node reached at a depth of parity `depth_parity`.
    pub fn vertex_of(&self, node: usize, depth_parity: u8, layer: usize) -> Option<usize> {
        self.index.get(&(self.classes[node], depth_parity, layer)).copied()
    }
}

pub fn decode_game(tree: &RegularTree, x: u32, k: usize) -> Result<DecodedGame> {
    decode_game_at_layer(tree, x, k, 0)
}

/// Builds the quotient game on (subtree class × depth parity × layer) for
/// every class and parity occurring in the tree; the initial vertex is
/// (root, even, `layer`).
pub fn decode_game_at_layer(tree: &RegularTree, x: u32, k: usize, layer: usize) -> Result<DecodedGame> {
    if layer > k {
        return Err(Error::IndexOverflow(format!("initial layer {layer} exceeds {k}")));
    }
    let symbols: Vec<GameSymbol> = tree
        .alphabet()
        .symbols()
        .iter()
        .map(|s| {
            let sym: GameSymbol = s.parse()?;
            sym.check(x, k).map_err(|_| Error::MalformedSymbol(s.clone()))?;
            Ok(sym)
        })
        .collect::<Result<_>>()?;
    let classes = tree.subtree_classes();
    let count = classes.iter().max().map_or(0, |m| m + 1);
    let mut rep = vec![usize::MAX; count];
    for (v, &c) in classes.iter().enumerate() {
        if rep[c] == usize::MAX {
            rep[c] = v;
        }
    }
    // (class, parity) pairs occurring in the unfolding
    let mut seen = HashMap::new();
    let mut order = Vec::new();
    let mut queue = VecDeque::from([(classes[tree.root()], 0u8)]);
    seen.insert((classes[tree.root()], 0u8), ());
    while let Some((c, p)) = queue.pop_front() {
        order.push((c, p));
        for b in 0..2 {
            let next = (classes[tree.child(rep[c], b)], 1 - p);
            if seen.insert(next, ()).is_none() {
                queue.push_back(next);
            }
        }
    }
    let mut positions = Vec::new();
    let mut index = HashMap::new();
    for &(c, p) in &order {
        for i in 0..=k {
            index.insert((c, p, i), positions.len());
            positions.push((c, p, i));
        }
    }
    let mut names = Vec::new();
    let mut owners = Vec::new();
    let mut ranks = Vec::new();
    let mut succ = Vec::new();
    for &(c, p, i) in &positions {
        let v = rep[c];
        let sym = &symbols[tree.label(v)];
        names.push(format!("{}.{}.{}", tree.node_name(v), p, i));
        owners.push(if p == 0 { Player::Exists } else { Player::Forall });
        ranks.push(sym.ranks[i]);
        succ.push(
            sym.edges
                .range((i, 0, 0)..=(i, 1, usize::MAX))
                .map(|&(_, b, j)| index[&(classes[tree.child(v, b)], 1 - p, j)])
                .collect::<Vec<_>>(),
        );
    }
    let initial = index[&(classes[tree.root()], 0, layer)];
    let game = ParityGame::new(names, owners, ranks, succ, x, Some(initial))?;
    Ok(DecodedGame {
        game,
        initial,
        classes,
        positions,
        index,
    })
}

/// An almost tree-like game presented by a finite automaton over the
/// binary tree: node `v` is in state `next`-reached from `initial` along
/// `v`, and carries that state's symbol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlmostTreeLikeGame {
    pub x: u32,
    pub k: usize,
    pub symbols: Vec<GameSymbol>,
    pub next: Vec<[usize; 2]>,
    pub initial: usize,
}

impl AlmostTreeLikeGame {
    fn check(&self) -> Result<()> {
        let n = self.symbols.len();
        if n == 0 || self.next.len() != n || self.initial >= n || self.next.iter().flatten().any(|&s| s >= n) {
            return Err(Error::malformed("almost tree-like game", "inconsistent state table"));
        }
        for s in &self.symbols {
            s.check(self.x, self.k)?;
        }
        Ok(())
    }

    /// The game on (state × depth parity × layer) without any quotient.
    pub fn to_finite_game(&self) -> Result<ParityGame> {
        self.check()?;
        let mut index = HashMap::new();
        let mut order = Vec::new();
        let mut queue = VecDeque::from([(self.initial, 0u8)]);
        index.insert((self.initial, 0u8), 0);
        while let Some((s, p)) = queue.pop_front() {
            order.push((s, p));
            for b in 0..2 {
                let t = (self.next[s][b], 1 - p);
                if !index.contains_key(&t) {
                    index.insert(t, index.len());
                    queue.push_back(t);
                }
            }
        }
        let layers = self.k + 1;
        let vertex = |s: usize, p: u8, i: usize| index[&(s, p)] * layers + i;
        let mut names = Vec::new();
        let mut owners = Vec::new();
        let mut ranks = Vec::new();
        let mut succ = Vec::new();
        for &(s, p) in &order {
            let sym = &self.symbols[s];
            for i in 0..layers {
                names.push(format!("s{s}.{p}.{i}"));
                owners.push(if p == 0 { Player::Exists } else { Player::Forall });
                ranks.push(sym.ranks[i]);
                succ.push(
                    sym.edges
                        .range((i, 0, 0)..=(i, 1, usize::MAX))
                        .map(|&(_, b, j)| vertex(self.next[s][b as usize], 1 - p, j))
                        .collect(),
                );
            }
        }
        ParityGame::new(names, owners, ranks, succ, self.x, Some(0))
    }
}

/// Regular tree over `Σ_{x,k}` representing `game`; nodes are the states
/// reachable from the initial one.
pub fn encode_game(game: &AlmostTreeLikeGame) -> Result<RegularTree> {
    game.check()?;
    let mut index = HashMap::new();
    let mut order = Vec::new();
    let mut queue = VecDeque::from([game.initial]);
    index.insert(game.initial, 0);
    while let Some(s) = queue.pop_front() {
        order.push(s);
        for b in 0..2 {
            let t = game.next[s][b];
            if !index.contains_key(&t) {
                index.insert(t, index.len());
                queue.push_back(t);
            }
        }
    }
    let mut symbols: Vec<String> = Vec::new();
    let mut labels = Vec::new();
    for &s in &order {
        let text = game.symbols[s].to_string();
        let id = match symbols.iter().position(|t| *t == text) {
            Some(id) => id,
            None => {
                symbols.push(text);
                symbols.len() - 1
            }
        };
        labels.push(id);
    }
    RegularTree::new(
        Alphabet::new(symbols)?,
        (0..order.len()).map(|i| format!("n{i}")).collect(),
        0,
        labels,
        order.iter().map(|&s| index[&game.next[s][0]]).collect(),
        order.iter().map(|&s| index[&game.next[s][1]]).collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games::solve;

    fn sym(ranks: &[u32], edges: &[(usize, u8, usize)]) -> GameSymbol {
        GameSymbol {
            ranks: ranks.to_vec(),
            edges: edges.iter().copied().collect(),
        }
    }

    #[test]
    fn symbol_text_roundtrip() {
        let s = sym(&[0, 2], &[(0, 0, 1), (1, 1, 0)]);
        assert_eq!(s.to_string(), "rank:(0,2);edges:(0,0,1),(1,1,0)");
        assert_eq!(s.to_string().parse::<GameSymbol>().unwrap(), s);
        let empty = sym(&[1], &[]);
        assert_eq!(empty.to_string().parse::<GameSymbol>().unwrap(), empty);
        assert!("rank:(0);edges:(0,2,0)".parse::<GameSymbol>().is_err());
        assert!("rank:0;edges:".parse::<GameSymbol>().is_err());
    }

    #[test]
    fn alphabet_counts() {
        assert_eq!(GameTreeAlphabet::new(0, 0).symbol_count(), Some(4));
        assert_eq!(GameTreeAlphabet::new(1, 1).symbol_count(), Some(1024));
        assert_eq!(GameTreeAlphabet::new(1, 10).symbol_count(), None);
    }

    #[test]
    fn trivial_games() {
        let all_zero = AlmostTreeLikeGame {
            x: 0,
            k: 0,
            symbols: vec![sym(&[0], &[(0, 0, 0), (0, 1, 0)])],
            next: vec![[0, 0]],
            initial: 0,
        };
        let tree = encode_game(&all_zero).unwrap();
        assert_eq!(tree.node_count(), 1);
        let d = decode_game(&tree, 0, 0).unwrap();
        assert!(d.game.vertex_count() <= 2);
        assert_eq!(solve(&d.game).winner(d.initial), Player::Exists);

        let all_one = AlmostTreeLikeGame {
            x: 1,
            symbols: vec![sym(&[1], &[(0, 0, 0)])],
            ..all_zero
        };
        let d = decode_game(&encode_game(&all_one).unwrap(), 1, 0).unwrap();
        let s = solve(&d.game);
        assert!(s.region_exists.is_empty());
    }

    #[test]
    fn dead_end_is_reported() {
        let tree = RegularTree::from_names(&["rank:(0);edges:"], &[("n0", "rank:(0);edges:", "n0", "n0")]).unwrap();
        assert!(matches!(decode_game(&tree, 0, 0), Err(Error::DeadEnd(_))));
    }

    #[test]
    fn overflowing_symbol() {
        let g = AlmostTreeLikeGame {
            x: 0,
            k: 0,
            symbols: vec![sym(&[1], &[(0, 0, 0)])],
            next: vec![[0, 0]],
            initial: 0,
        };
        assert!(matches!(encode_game(&g), Err(Error::IndexOverflow(_))));
    }
}
