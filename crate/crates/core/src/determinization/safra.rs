//! Safra trees with Piterman's dynamic names, producing a deterministic
//! parity automaton from a Büchi one.
//!
//! Node names are `1..=m` in order of age and are compacted after every
//! step, so a node that survives forever eventually keeps a fixed name.
//! Each step emits the priority `min(2e - 1, 2f)` where `e` is the least name
//! of a removed node and `f` the least name of a node whose label is
//! covered by its children; without events it emits `2m + 1`.

use std::collections::BTreeSet;

use crate::machine::{DetMachine, WordMachine};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Node<S> {
    name: u32,
    /// Index of the parent in the preorder list.
    parent: Option<usize>,
    label: Vec<S>,
}

/// A Safra tree in preorder (children in age order) together with the
/// priority emitted by the step that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SafraState<S> {
    nodes: Vec<Node<S>>,
    pub priority: u32,
}

impl<S> SafraState<S> {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// States in the root label: every state some run can be in.
    pub fn reachable(&self) -> &[S] {
        self.nodes.first().map_or(&[], |n| &n.label)
    }
}

/// Lazy deterministic parity machine over a Büchi machine (ranks 0/1,
/// rank 0 accepting).
#[derive(Debug, Clone)]
pub struct SafraDet<M> {
    pub inner: M,
}

impl<M: WordMachine> SafraDet<M> {
    pub fn new(inner: M) -> Self {
        SafraDet { inner }
    }
}

struct Work<S> {
    /// Old name, or `None` for nodes created in this step.
    old: Option<u32>,
    /// Age key: old names first, then creation order.
    age: (u8, u32),
    children: Vec<usize>,
    label: BTreeSet<S>,
    alive: bool,
}

impl<M: WordMachine> SafraDet<M> {
    fn successor(&self, state: &SafraState<M::State>, letter: &M::Letter) -> SafraState<M::State> {
        let mut work: Vec<Work<M::State>> = Vec::with_capacity(state.nodes.len() * 2);
        for (i, node) in state.nodes.iter().enumerate() {
            let mut label = BTreeSet::new();
            for q in &node.label {
                for p in self.inner.successors(q, letter) {
                    if !self.inner.is_rejecting_sink(&p) {
                        label.insert(p);
                    }
                }
            }
            work.push(Work {
                old: Some(node.name),
                age: (0, node.name),
                children: Vec::new(),
                label,
                alive: true,
            });
            if let Some(p) = node.parent {
                work[p].children.push(i);
            }
        }
        // spawn a youngest child holding the accepting states of each old node
        let old_count = work.len();
        let mut created = 0;
        for v in 0..old_count {
            let accepting: BTreeSet<M::State> =
                work[v].label.iter().filter(|q| self.inner.rank(q) == 0).cloned().collect();
            if !accepting.is_empty() {
                work.push(Work {
                    old: None,
                    age: (1, created),
                    children: Vec::new(),
                    label: accepting,
                    alive: true,
                });
                created += 1;
                let c = work.len() - 1;
                work[v].children.push(c);
            }
        }
        if work.is_empty() {
            return SafraState {
                nodes: Vec::new(),
                priority: 1,
            };
        }
        // horizontal merge: a state stays only with its oldest holder
        let mut stack = vec![0usize];
        while let Some(v) = stack.pop() {
            let mut taken: BTreeSet<M::State> = BTreeSet::new();
            let children = work[v].children.clone();
            for &c in &children {
                let label: BTreeSet<M::State> = work[c]
                    .label
                    .iter()
                    .filter(|q| work[v].label.contains(q) && !taken.contains(q))
                    .cloned()
                    .collect();
                taken.extend(label.iter().cloned());
                work[c].label = label;
            }
            stack.extend(children.iter().rev());
        }
        let mut removed: Option<u32> = None;
        let mut flashed: Option<u32> = None;
        let note = |slot: &mut Option<u32>, name: Option<u32>| {
            if let Some(n) = name {
                *slot = Some(slot.map_or(n, |s| s.min(n)));
            }
        };
        // drop empty nodes, then vertical merge top-down
        let mut order = Vec::new();
        let mut stack = vec![0usize];
        while let Some(v) = stack.pop() {
            order.push(v);
            stack.extend(work[v].children.iter().rev());
        }
        for &v in &order {
            if work[v].label.is_empty() {
                work[v].alive = false;
                note(&mut removed, work[v].old);
            }
        }
        for &v in &order {
            if !work[v].alive {
                continue;
            }
            let covered: usize = work[v]
                .children
                .iter()
                .filter(|&&c| work[c].alive)
                .map(|&c| work[c].label.len())
                .sum();
            if covered > 0 && covered == work[v].label.len() {
                note(&mut flashed, work[v].old);
                let mut below: Vec<usize> = work[v].children.clone();
                while let Some(d) = below.pop() {
                    if work[d].alive {
                        work[d].alive = false;
                        note(&mut removed, work[d].old);
                    }
                    below.extend(work[d].children.iter().copied());
                }
            }
        }
        // compact names in age order
        let mut alive: Vec<usize> = (0..work.len()).filter(|&v| work[v].alive).collect();
        alive.sort_by_key(|&v| work[v].age);
        let mut new_name = vec![0u32; work.len()];
        for (i, &v) in alive.iter().enumerate() {
            new_name[v] = i as u32 + 1;
        }
        let mut nodes = Vec::with_capacity(alive.len());
        let mut stack: Vec<(usize, Option<usize>)> = if work[0].alive { vec![(0, None)] } else { Vec::new() };
        while let Some((v, parent)) = stack.pop() {
            let idx = nodes.len();
            nodes.push(Node {
                name: new_name[v],
                parent,
                label: std::mem::take(&mut work[v].label).into_iter().collect(),
            });
            let mut kids: Vec<usize> = work[v].children.iter().copied().filter(|&c| work[c].alive).collect();
            kids.sort_by_key(|&c| work[c].age);
            stack.extend(kids.into_iter().rev().map(|c| (c, Some(idx))));
        }
        let m = nodes.len() as u32;
        let event = [removed.map(|e| 2 * e - 1), flashed.map(|f| 2 * f)].into_iter().flatten().min();
        let priority = event.unwrap_or(2 * m + 1);
        let next = SafraState { nodes, priority };
        debug_assert!(check_invariants(&next));
        next
    }
}

fn check_invariants<S: Ord + Clone>(state: &SafraState<S>) -> bool {
    let n = state.nodes.len();
    let mut union: Vec<BTreeSet<S>> = vec![BTreeSet::new(); n];
    for (i, node) in state.nodes.iter().enumerate() {
        if node.label.is_empty() {
            return false;
        }
        if let Some(p) = node.parent {
            let parent: BTreeSet<&S> = state.nodes[p].label.iter().collect();
            if p >= i || !node.label.iter().all(|q| parent.contains(q)) {
                return false;
            }
            for q in &node.label {
                if !union[p].insert(q.clone()) {
                    return false; // siblings overlap
                }
            }
        }
    }
    (0..n).all(|i| union[i].len() < state.nodes[i].label.len())
}

impl<M: WordMachine> WordMachine for SafraDet<M> {
    type State = SafraState<M::State>;
    type Letter = M::Letter;

    fn initial_state(&self) -> Self::State {
        let q = self.inner.initial_state();
        if self.inner.is_rejecting_sink(&q) {
            return SafraState {
                nodes: Vec::new(),
                priority: 1,
            };
        }
        SafraState {
            nodes: vec![Node {
                name: 1,
                parent: None,
                label: vec![q],
            }],
            priority: 3,
        }
    }

    fn successors(&self, state: &Self::State, letter: &Self::Letter) -> Vec<Self::State> {
        vec![self.successor(state, letter)]
    }

    fn rank(&self, state: &Self::State) -> u32 {
        state.priority
    }

    fn state_name(&self, state: &Self::State) -> String {
        let n = state.nodes.len();
        let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (i, node) in state.nodes.iter().enumerate() {
            if let Some(p) = node.parent {
                children[p].push(i);
            }
        }
        fn write<M: WordMachine>(
            m: &M,
            nodes: &[Node<M::State>],
            children: &[Vec<usize>],
            v: usize,
            out: &mut String,
        ) {
            let names: Vec<String> = nodes[v].label.iter().map(|q| m.state_name(q)).collect();
            out.push_str(&nodes[v].name.to_string());
            out.push('{');
            out.push_str(&names.join(","));
            out.push('}');
            if !children[v].is_empty() {
                out.push('(');
                for &c in &children[v] {
                    write(m, nodes, children, c, out);
                }
                out.push(')');
            }
        }
        let mut out = String::from("[");
        if n > 0 {
            write(&self.inner, &state.nodes, &children, 0, &mut out);
        }
        out.push_str(&format!("]p{}", state.priority));
        out
    }

    fn is_rejecting_sink(&self, state: &Self::State) -> bool {
        state.nodes.is_empty()
    }
}

impl<M: WordMachine> DetMachine for SafraDet<M> {
    fn step(&self, state: &Self::State, letter: &Self::Letter) -> Self::State {
        self.successor(state, letter)
    }
}
