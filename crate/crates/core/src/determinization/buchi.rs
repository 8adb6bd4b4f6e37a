use crate::machine::WordMachine;

/// State of the Büchi view: either still waiting, or committed to the even
/// rank `y` that is guessed to be the liminf.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BuchiState<S> {
    Wait(S),
    Commit(S, u32),
}

impl<S> BuchiState<S> {
    pub fn inner(&self) -> &S {
        match self {
            BuchiState::Wait(s) | BuchiState::Commit(s, _) => s,
        }
    }
}

/// Language-preserving Büchi (index (0,1)) view of a parity machine.
///
/// The run waits, then commits to an even rank `y` on entering a state of
/// rank `y`. After committing, ranks below `y` kill the run, rank `y` is
/// accepting (0) and anything above is neutral (1).
#[derive(Debug, Clone)]
pub struct BuchiView<M> {
    pub inner: M,
}

impl<M: WordMachine> BuchiView<M> {
    pub fn new(inner: M) -> Self {
        BuchiView { inner }
    }
}

impl<M: WordMachine> WordMachine for BuchiView<M> {
    type State = BuchiState<M::State>;
    type Letter = M::Letter;

    fn initial_state(&self) -> Self::State {
        let q = self.inner.initial_state();
        BuchiState::Wait(q)
    }

    fn successors(&self, state: &Self::State, letter: &Self::Letter) -> Vec<Self::State> {
        let mut out = Vec::new();
        match state {
            BuchiState::Wait(q) => {
                for p in self.inner.successors(q, letter) {
                    if self.inner.is_rejecting_sink(&p) {
                        continue;
                    }
                    let r = self.inner.rank(&p);
                    if r % 2 == 0 {
                        out.push(BuchiState::Commit(p.clone(), r));
                    }
                    out.push(BuchiState::Wait(p));
                }
            }
            BuchiState::Commit(q, y) => {
                for p in self.inner.successors(q, letter) {
                    if self.inner.rank(&p) >= *y && !self.inner.is_rejecting_sink(&p) {
                        out.push(BuchiState::Commit(p, *y));
                    }
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }

    fn rank(&self, state: &Self::State) -> u32 {
        match state {
            BuchiState::Commit(q, y) if self.inner.rank(q) == *y => 0,
            _ => 1,
        }
    }

    fn state_name(&self, state: &Self::State) -> String {
        match state {
            BuchiState::Wait(q) => format!("{}@w", self.inner.state_name(q)),
            BuchiState::Commit(q, y) => format!("{}@c{y}", self.inner.state_name(q)),
        }
    }

    fn is_rejecting_sink(&self, state: &Self::State) -> bool {
        self.inner.is_rejecting_sink(state.inner())
    }
}
