//! Deterministic configuration view of a recognizer.
//!
//! The structured verifier walks words symbol by symbol. A [`Stepper`] turns
//! any supported machine into a deterministic system whose configurations
//! can be hashed: a DFA state, or the set of reachable `(state, counter)`
//! pairs of a one-counter machine.

use std::hash::Hash;

use crate::sym::Sym;

pub trait Stepper: Sync {
    type Config: Clone + Eq + Hash + Send + Sync;

    fn alphabet(&self) -> &[Sym];

    /// Configuration after the empty word; `None` when nothing is accepted.
    fn start(&self) -> Option<Self::Config>;

    /// `None` when no accepted word extends the current prefix by `sym`
    /// (or, for machines that cannot detect that cheaply, when the run dies).
    fn step(&self, c: &Self::Config, sym: Sym) -> Option<Self::Config>;

    fn accepts(&self, c: &Self::Config) -> bool;

    fn run(&self, w: &[Sym]) -> Option<Self::Config> {
        let mut c = self.start()?;
        for &a in w {
            c = self.step(&c, a)?;
        }
        Some(c)
    }

    fn member(&self, w: &[Sym]) -> bool {
        self.run(w).is_some_and(|c| self.accepts(&c))
    }
}

impl Stepper for super::nfa::Dfa {
    type Config = usize;

    fn alphabet(&self) -> &[Sym] {
        super::nfa::Dfa::alphabet(self)
    }

    fn start(&self) -> Option<usize> {
        super::nfa::Dfa::start(self)
    }

    fn step(&self, c: &usize, sym: Sym) -> Option<usize> {
        self.next(*c, sym)
    }

    fn accepts(&self, c: &usize) -> bool {
        self.is_accepting(*c)
    }
}
