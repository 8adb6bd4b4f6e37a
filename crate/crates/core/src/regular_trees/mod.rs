//! Regular infinite binary trees as finite labelled graphs, and the
//! encoding of almost tree-like parity games as such trees.

mod game_tree;

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

pub use game_tree::{
    decode_game, decode_game_at_layer, encode_game, AlmostTreeLikeGame, DecodedGame, GameSymbol, GameTreeAlphabet,
};

use crate::automata::Alphabet;
use crate::{Error, Result};

/// A labelled infinite binary tree given by a finite graph: the tree is the
/// unfolding of the graph from `root`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularTree {
    alphabet: Alphabet,
    nodes: Vec<String>,
    root: usize,
    labels: Vec<usize>,
    left: Vec<usize>,
    right: Vec<usize>,
}

impl RegularTree {
    pub fn new(
        alphabet: Alphabet,
        nodes: Vec<String>,
        root: usize,
        labels: Vec<usize>,
        left: Vec<usize>,
        right: Vec<usize>,
    ) -> Result<Self> {
        let n = nodes.len();
        if n == 0 {
            return Err(Error::malformed("regular tree", "no nodes"));
        }
        if labels.len() != n || left.len() != n || right.len() != n || root >= n {
            return Err(Error::malformed("regular tree", "label, left and right must be total"));
        }
        if labels.iter().any(|&a| a >= alphabet.len()) || left.iter().chain(&right).any(|&v| v >= n) {
            return Err(Error::malformed("regular tree", "reference to an undeclared node or symbol"));
        }
        let mut seen = std::collections::BTreeSet::new();
        for name in &nodes {
            if name.is_empty() || name.chars().any(char::is_whitespace) || !seen.insert(name.as_str()) {
                return Err(Error::malformed("regular tree", format!("bad or duplicate node name `{name}`")));
            }
        }
        let tree = RegularTree {
            alphabet,
            nodes,
            root,
            labels,
            left,
            right,
        };
        if let Some(v) = tree.reachable().iter().position(|r| !r) {
            return Err(Error::malformed(
                "regular tree",
                format!("node `{}` is not reachable from the root", tree.nodes[v]),
            ));
        }
        Ok(tree)
    }

    /// Nodes given as `(name, label, left, right)`; the first node is the root.
    pub fn from_names(alphabet: &[&str], nodes: &[(&str, &str, &str, &str)]) -> Result<Self> {
        let alphabet = Alphabet::new(alphabet.iter().copied())?;
        let index: HashMap<&str, usize> = nodes.iter().enumerate().map(|(i, n)| (n.0, i)).collect();
        let node = |s: &str| {
            index
                .get(s)
                .copied()
                .ok_or_else(|| Error::malformed("regular tree", format!("unknown node `{s}`")))
        };
        let mut labels = Vec::new();
        let mut left = Vec::new();
        let mut right = Vec::new();
        for (_, a, l, r) in nodes {
            labels.push(
                alphabet
                    .index_of(a)
                    .ok_or_else(|| Error::malformed("regular tree", format!("unknown symbol `{a}`")))?,
            );
            left.push(node(l)?);
            right.push(node(r)?);
        }
        let names = nodes.iter().map(|n| n.0.to_string()).collect();
        RegularTree::new(alphabet, names, 0, labels, left, right)
    }

    /// The tree labelled `symbol` everywhere.
    pub fn constant(alphabet: Alphabet, symbol: usize) -> Self {
        RegularTree::new(alphabet, vec!["n0".into()], 0, vec![symbol], vec![0], vec![0]).expect("one-node tree")
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }
    pub fn nodes(&self) -> &[String] {
        &self.nodes
    }
    pub fn node_name(&self, v: usize) -> &str {
        &self.nodes[v]
    }
    pub fn root(&self) -> usize {
        self.root
    }
    pub fn label(&self, v: usize) -> usize {
        self.labels[v]
    }
    pub fn left(&self, v: usize) -> usize {
        self.left[v]
    }
    pub fn right(&self, v: usize) -> usize {
        self.right[v]
    }
    /// Son of `v` in direction `dir` (0 = left, 1 = right).
    pub fn child(&self, v: usize, dir: u8) -> usize {
        if dir == 0 {
            self.left[v]
        } else {
            self.right[v]
        }
    }

    /// Graph node reached from the root along `path`.
    pub fn node_at(&self, path: &[u8]) -> usize {
        path.iter().fold(self.root, |v, &d| self.child(v, d))
    }

    pub fn label_at(&self, path: &[u8]) -> &str {
        self.alphabet.symbol(self.labels[self.node_at(path)])
    }

    fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.nodes.len()];
        let mut stack = vec![self.root];
        seen[self.root] = true;
        while let Some(v) = stack.pop() {
            for w in [self.left[v], self.right[v]] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    }

    /// Labels of the unfolding at depths `0..=depth`, level by level, each
    /// level listed left to right.
    pub fn unfold(&self, depth: usize) -> Vec<Vec<String>> {
        let mut levels = Vec::with_capacity(depth + 1);
        let mut frontier = vec![self.root];
        for d in 0..=depth {
            levels.push(frontier.iter().map(|&v| self.alphabet.symbol(self.labels[v]).to_string()).collect());
            if d < depth {
                frontier = frontier.iter().flat_map(|&v| [self.left[v], self.right[v]]).collect();
            }
        }
        levels
    }

    /// Bisimulation classes: nodes with identical unfoldings share a class.
    /// Classes are numbered in breadth-first order from the root.
    pub fn subtree_classes(&self) -> Vec<usize> {
        let n = self.nodes.len();
        let mut class: Vec<usize> = self.labels.clone();
        let mut count = 0;
        loop {
            let mut sig: HashMap<(usize, usize, usize), usize> = HashMap::new();
            let next: Vec<usize> = (0..n)
                .map(|v| {
                    let key = (class[v], class[self.left[v]], class[self.right[v]]);
                    let len = sig.len();
                    *sig.entry(key).or_insert(len)
                })
                .collect();
            let new_count = sig.len();
            class = next;
            if new_count == count {
                break;
            }
            count = new_count;
        }
        // canonical renumbering
        let mut order = vec![usize::MAX; count];
        let mut next_id = 0;
        let mut queue = VecDeque::from([self.root]);
        let mut seen = vec![false; n];
        seen[self.root] = true;
        while let Some(v) = queue.pop_front() {
            if order[class[v]] == usize::MAX {
                order[class[v]] = next_id;
                next_id += 1;
            }
            for w in [self.left[v], self.right[v]] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        class.iter().map(|&c| order[c]).collect()
    }

    pub fn subtree_equiv(&self, u: usize, v: usize) -> bool {
        u == v || {
            let c = self.subtree_classes();
            c[u] == c[v]
        }
    }

    /// Quotient by subtree equivalence: the smallest graph with the same unfolding.
    pub fn minimized(&self) -> RegularTree {
        let class = self.subtree_classes();
        let count = class.iter().max().map_or(0, |m| m + 1);
        let mut rep = vec![usize::MAX; count];
        for (v, &c) in class.iter().enumerate() {
            if rep[c] == usize::MAX {
                rep[c] = v;
            }
        }
        RegularTree {
            alphabet: self.alphabet.clone(),
            nodes: (0..count).map(|c| format!("n{c}")).collect(),
            root: class[self.root],
            labels: rep.iter().map(|&v| self.labels[v]).collect(),
            left: rep.iter().map(|&v| class[self.left[v]]).collect(),
            right: rep.iter().map(|&v| class[self.right[v]]).collect(),
        }
    }

    /// Same tree over a larger alphabet containing every used symbol.
    pub fn with_alphabet(&self, alphabet: &Alphabet) -> Result<RegularTree> {
        let labels = self
            .labels
            .iter()
            .map(|&a| {
                let s = self.alphabet.symbol(a);
                alphabet
                    .index_of(s)
                    .ok_or_else(|| Error::AlphabetMismatch(format!("symbol `{s}` is not in the target alphabet")))
            })
            .collect::<Result<_>>()?;
        Ok(RegularTree {
            alphabet: alphabet.clone(),
            labels,
            ..self.clone()
        })
    }

    /// Parses the `regtree` format.
    pub fn parse(text: &str) -> Result<Self> {
        let mut header = false;
        let mut alphabet: Option<Alphabet> = None;
        let mut root: Option<(usize, String)> = None;
        let mut rows: Vec<(usize, String, BTreeMap<String, String>)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("");
            let tokens: Vec<&str> = line.split_whitespace().collect();
            let Some(&first) = tokens.first() else { continue };
            if !header {
                if tokens != ["regtree"] {
                    return Err(Error::parse(line_no, "expected header `regtree`"));
                }
                header = true;
                continue;
            }
            match first {
                "alphabet" => {
                    if alphabet.is_some() {
                        return Err(Error::parse(line_no, "alphabet declared twice"));
                    }
                    alphabet = Some(Alphabet::new(tokens[1..].iter().copied()).map_err(|e| Error::parse(line_no, e.to_string()))?);
                }
                "root" => {
                    if tokens.len() != 2 || root.is_some() {
                        return Err(Error::parse(line_no, "expected a single `root <node>` line"));
                    }
                    root = Some((line_no, tokens[1].to_string()));
                }
                name => {
                    let mut fields = BTreeMap::new();
                    for t in &tokens[1..] {
                        let (k, v) = t
                            .split_once('=')
                            .ok_or_else(|| Error::parse(line_no, format!("expected key=value, found `{t}`")))?;
                        if !matches!(k, "label" | "left" | "right") || fields.insert(k.to_string(), v.to_string()).is_some() {
                            return Err(Error::parse(line_no, format!("unexpected or repeated field `{k}`")));
                        }
                    }
                    if fields.len() != 3 {
                        return Err(Error::parse(line_no, "a node needs label=, left= and right="));
                    }
                    rows.push((line_no, name.to_string(), fields));
                }
            }
        }
        let alphabet = alphabet.ok_or_else(|| Error::parse(1, "missing `alphabet` line"))?;
        let mut index = HashMap::new();
        for (line, name, _) in &rows {
            if index.insert(name.clone(), index.len()).is_some() {
                return Err(Error::parse(*line, format!("node `{name}` declared twice")));
            }
        }
        let (root_line, root_name) = root.ok_or_else(|| Error::parse(1, "missing `root` line"))?;
        let root = *index
            .get(&root_name)
            .ok_or_else(|| Error::parse(root_line, format!("undeclared root `{root_name}`")))?;
        let mut labels = Vec::new();
        let mut left = Vec::new();
        let mut right = Vec::new();
        for (line, _, f) in &rows {
            let node = |k: &str| {
                index
                    .get(&f[k])
                    .copied()
                    .ok_or_else(|| Error::parse(*line, format!("undeclared node `{}`", f[k])))
            };
            labels.push(
                alphabet
                    .index_of(&f["label"])
                    .ok_or_else(|| Error::parse(*line, format!("undeclared symbol `{}`", f["label"])))?,
            );
            left.push(node("left")?);
            right.push(node("right")?);
        }
        RegularTree::new(alphabet, rows.into_iter().map(|r| r.1).collect(), root, labels, left, right)
            .map_err(|e| Error::parse(root_line, e.to_string()))
    }
}

impl fmt::Display for RegularTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "regtree")?;
        writeln!(f, "alphabet {}", self.alphabet.symbols().join(" "))?;
        writeln!(f, "root {}", self.nodes[self.root])?;
        for v in 0..self.nodes.len() {
            writeln!(
                f,
                "{} label={} left={} right={}",
                self.nodes[v],
                self.alphabet.symbol(self.labels[v]),
                self.nodes[self.left[v]],
                self.nodes[self.right[v]]
            )?;
        }
        Ok(())
    }
}
