//! One-counter machines: finite control plus a counter that can be tested for
//! zero and moved by at most one per step.

use std::collections::{BTreeSet, VecDeque};

use super::nfa::Nfa;
use super::stepper::Stepper;
use super::LangError;
use crate::sym::{Sym, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Guard {
    Zero,
    Positive,
    Any,
}

impl Guard {
    pub fn admits(self, counter: u32) -> bool {
        match self {
            Guard::Zero => counter == 0,
            Guard::Positive => counter > 0,
            Guard::Any => true,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Guard::Zero => "zero",
            Guard::Positive => "positive",
            Guard::Any => "any",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OcmTransition {
    pub symbol: Sym,
    pub guard: Guard,
    pub delta: i8,
    pub to: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneCounterMachine {
    alphabet: Vec<Sym>,
    state_names: Vec<String>,
    initial: usize,
    accepting: Vec<bool>,
    zero_acceptance: bool,
    transitions: Vec<Vec<OcmTransition>>,
    live: Vec<bool>,
}

/// A configuration set: sorted, deduplicated `(state, counter)` pairs.
pub type OcmConfig = Vec<(usize, u32)>;

impl OneCounterMachine {
    pub fn new(alphabet: impl IntoIterator<Item = Sym>, initial: &str, zero_acceptance: bool) -> Self {
        let mut alphabet: Vec<Sym> = alphabet.into_iter().collect();
        alphabet.sort();
        alphabet.dedup();
        let mut m = OneCounterMachine {
            alphabet,
            state_names: vec![initial.to_owned()],
            initial: 0,
            accepting: vec![false],
            zero_acceptance,
            transitions: vec![Vec::new()],
            live: Vec::new(),
        };
        m.refresh();
        m
    }

    pub fn add_state(&mut self, name: impl Into<String>) -> usize {
        self.state_names.push(name.into());
        self.accepting.push(false);
        self.transitions.push(Vec::new());
        self.refresh();
        self.state_names.len() - 1
    }

    /// Adds a transition. `delta` must be −1, 0 or +1.
    pub fn add_transition(
        &mut self,
        from: usize,
        symbol: Sym,
        guard: Guard,
        delta: i8,
        to: usize,
    ) -> Result<(), LangError> {
        if !(-1..=1).contains(&delta) {
            return Err(LangError::Invalid(format!("counter delta {delta} out of range")));
        }
        if let Err(pos) = self.alphabet.binary_search(&symbol) {
            self.alphabet.insert(pos, symbol);
        }
        let t = OcmTransition {
            symbol,
            guard,
            delta,
            to,
        };
        if !self.transitions[from].contains(&t) {
            self.transitions[from].push(t);
        }
        self.refresh();
        Ok(())
    }

    pub fn set_accepting(&mut self, state: usize, accepting: bool) {
        self.accepting[state] = accepting;
        self.refresh();
    }

    /// Recomputes the states from which some accepting state is reachable in
    /// the finite control.
    fn refresh(&mut self) {
        let n = self.state_names.len();
        let mut live = self.accepting.clone();
        let mut changed = true;
        while changed {
            changed = false;
            for s in 0..n {
                if !live[s] && self.transitions[s].iter().any(|t| live[t.to]) {
                    live[s] = true;
                    changed = true;
                }
            }
        }
        self.live = live;
    }

    pub fn alphabet(&self) -> &[Sym] {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.state_names.len()
    }

    pub fn state_name(&self, s: usize) -> &str {
        &self.state_names[s]
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_accepting(&self, s: usize) -> bool {
        self.accepting[s]
    }

    pub fn zero_acceptance(&self) -> bool {
        self.zero_acceptance
    }

    pub fn transitions_from(&self, s: usize) -> &[OcmTransition] {
        &self.transitions[s]
    }

    fn initial_config(&self) -> OcmConfig {
        if self.live[self.initial] {
            vec![(self.initial, 0)]
        } else {
            Vec::new()
        }
    }

    fn step_config(&self, c: &[(usize, u32)], a: Sym) -> OcmConfig {
        let mut next = BTreeSet::new();
        for &(s, k) in c {
            for t in &self.transitions[s] {
                if t.symbol != a || !t.guard.admits(k) || !self.live[t.to] {
                    continue;
                }
                let k2 = k as i64 + t.delta as i64;
                if k2 < 0 {
                    continue;
                }
                next.insert((t.to, k2 as u32));
            }
        }
        next.into_iter().collect()
    }

    fn accepting_config(&self, c: &[(usize, u32)]) -> bool {
        c.iter()
            .any(|&(s, k)| self.accepting[s] && (!self.zero_acceptance || k == 0))
    }

    /// Membership by search over `(state, counter)` configurations. Unknown
    /// symbols are an error.
    pub fn accepts(&self, w: &[Sym]) -> Result<bool, LangError> {
        for s in w {
            if self.alphabet.binary_search(s).is_err() {
                return Err(LangError::UnknownSymbol(s.name().to_owned()));
            }
        }
        Ok(self.contains(w))
    }

    pub fn contains(&self, w: &[Sym]) -> bool {
        let mut c = self.initial_config();
        for &a in w {
            if c.is_empty() {
                return false;
            }
            c = self.step_config(&c, a);
        }
        self.accepting_config(&c)
    }

    /// Accepted words of length at most `max_len`.
    pub fn enumerate(&self, max_len: usize) -> BTreeSet<Word> {
        let mut out = BTreeSet::new();
        let mut stack: VecDeque<(Word, OcmConfig)> = VecDeque::new();
        let start = self.initial_config();
        if !start.is_empty() {
            stack.push_back((Vec::new(), start));
        }
        while let Some((w, c)) = stack.pop_back() {
            if self.accepting_config(&c) {
                out.insert(w.clone());
            }
            if w.len() == max_len {
                continue;
            }
            for &a in &self.alphabet {
                let c2 = self.step_config(&c, a);
                if !c2.is_empty() {
                    let mut w2 = w.clone();
                    w2.push(a);
                    stack.push_back((w2, c2));
                }
            }
        }
        out
    }

    /// Adds the words of a regular language; the automaton's states run with
    /// the counter untouched.
    pub fn union_nfa(&self, nfa: &Nfa) -> OneCounterMachine {
        let mut m = OneCounterMachine::new(
            self.alphabet.iter().chain(nfa.alphabet()).copied(),
            "u0",
            self.zero_acceptance,
        );
        let off_m = m.num_states();
        for s in 0..self.num_states() {
            let id = m.add_state(format!("m.{}", self.state_names[s]));
            m.accepting[id] = self.accepting[s];
        }
        let off_n = m.num_states();
        for s in 0..nfa.num_states() {
            let id = m.add_state(format!("r.{}", nfa.state_name(s)));
            m.accepting[id] = nfa.is_accepting(s);
        }
        for s in 0..self.num_states() {
            for t in &self.transitions[s] {
                m.transitions[off_m + s].push(OcmTransition {
                    to: off_m + t.to,
                    ..t.clone()
                });
            }
        }
        for s in 0..nfa.num_states() {
            for &(a, t) in nfa.transitions_from(s) {
                m.transitions[off_n + s].push(OcmTransition {
                    symbol: a,
                    guard: Guard::Any,
                    delta: 0,
                    to: off_n + t,
                });
            }
        }
        let mut init_edges = self.transitions[self.initial]
            .iter()
            .map(|t| OcmTransition {
                to: off_m + t.to,
                ..t.clone()
            })
            .collect::<Vec<_>>();
        m.accepting[0] = self.accepting[self.initial];
        for &q in nfa.initial() {
            m.accepting[0] |= nfa.is_accepting(q);
            for &(a, t) in nfa.transitions_from(q) {
                init_edges.push(OcmTransition {
                    symbol: a,
                    guard: Guard::Any,
                    delta: 0,
                    to: off_n + t,
                });
            }
        }
        m.transitions[0] = init_edges;
        m.refresh();
        m
    }
}

pub fn ocm_accepts(m: &OneCounterMachine, w: &[Sym]) -> Result<bool, LangError> {
    m.accepts(w)
}

impl Stepper for OneCounterMachine {
    type Config = OcmConfig;

    fn alphabet(&self) -> &[Sym] {
        &self.alphabet
    }

    fn start(&self) -> Option<OcmConfig> {
        let c = self.initial_config();
        (!c.is_empty()).then_some(c)
    }

    fn step(&self, c: &OcmConfig, sym: Sym) -> Option<OcmConfig> {
        let c2 = self.step_config(c, sym);
        (!c2.is_empty()).then_some(c2)
    }

    fn accepts(&self, c: &OcmConfig) -> bool {
        self.accepting_config(c)
    }
}
