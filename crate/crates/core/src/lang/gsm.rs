//! Generalized sequential machines: one input symbol per step, a finite
//! output word per transition, acceptance by final state.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use super::nfa::{EpsNfa, Nfa};
use super::LangError;
use crate::sym::{Sym, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GsmTransition {
    pub input: Sym,
    pub output: Word,
    pub to: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gsm {
    input_alphabet: Vec<Sym>,
    output_alphabet: Vec<Sym>,
    state_names: Vec<String>,
    initial: usize,
    accepting: Vec<bool>,
    transitions: Vec<Vec<GsmTransition>>,
}

impl Gsm {
    /// A machine with a single initial state named `initial`.
    pub fn new(
        input_alphabet: impl IntoIterator<Item = Sym>,
        output_alphabet: impl IntoIterator<Item = Sym>,
        initial: &str,
    ) -> Gsm {
        let sorted = |it: &mut dyn Iterator<Item = Sym>| {
            let mut v: Vec<Sym> = it.collect();
            v.sort();
            v.dedup();
            v
        };
        Gsm {
            input_alphabet: sorted(&mut input_alphabet.into_iter()),
            output_alphabet: sorted(&mut output_alphabet.into_iter()),
            state_names: vec![initial.to_owned()],
            initial: 0,
            accepting: vec![false],
            transitions: vec![Vec::new()],
        }
    }

    pub fn add_state(&mut self, name: impl Into<String>) -> usize {
        self.state_names.push(name.into());
        self.accepting.push(false);
        self.transitions.push(Vec::new());
        self.state_names.len() - 1
    }

    pub fn add_transition(&mut self, from: usize, input: Sym, output: &[Sym], to: usize) {
        let t = GsmTransition {
            input,
            output: output.to_vec(),
            to,
        };
        if !self.transitions[from].contains(&t) {
            self.transitions[from].push(t);
        }
    }

    pub fn set_accepting(&mut self, state: usize, accepting: bool) {
        self.accepting[state] = accepting;
    }

    pub fn input_alphabet(&self) -> &[Sym] {
        &self.input_alphabet
    }

    pub fn output_alphabet(&self) -> &[Sym] {
        &self.output_alphabet
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn num_states(&self) -> usize {
        self.state_names.len()
    }

    pub fn state_name(&self, s: usize) -> &str {
        &self.state_names[s]
    }

    pub fn is_accepting(&self, s: usize) -> bool {
        self.accepting[s]
    }

    pub fn transitions_from(&self, s: usize) -> &[GsmTransition] {
        &self.transitions[s]
    }

    /// Checks that every transition uses declared symbols.
    pub fn validate(&self) -> Result<(), LangError> {
        for row in &self.transitions {
            for t in row {
                if self.input_alphabet.binary_search(&t.input).is_err() {
                    return Err(LangError::UnknownSymbol(t.input.name().to_owned()));
                }
                for o in &t.output {
                    if self.output_alphabet.binary_search(o).is_err() {
                        return Err(LangError::UnknownSymbol(o.name().to_owned()));
                    }
                }
            }
        }
        Ok(())
    }

    /// The identity transducer over `alphabet`.
    pub fn identity(alphabet: &[Sym]) -> Gsm {
        let mut g = Gsm::new(alphabet.iter().copied(), alphabet.iter().copied(), "id");
        g.set_accepting(0, true);
        for &a in alphabet {
            g.add_transition(0, a, &[a], 0);
        }
        g
    }

    /// All outputs along accepting runs on `w`.
    pub fn apply(&self, w: &[Sym]) -> BTreeSet<Word> {
        let mut layer: HashSet<(usize, Word)> = HashSet::from([(self.initial, Vec::new())]);
        for &a in w {
            let mut next = HashSet::new();
            for (s, out) in &layer {
                for t in &self.transitions[*s] {
                    if t.input == a {
                        let mut o = out.clone();
                        o.extend_from_slice(&t.output);
                        next.insert((t.to, o));
                    }
                }
            }
            if next.is_empty() {
                return BTreeSet::new();
            }
            layer = next;
        }
        layer
            .into_iter()
            .filter(|(s, _)| self.accepting[*s])
            .map(|(_, o)| o)
            .collect()
    }

    /// A shortest word of `domain` whose image under the machine contains
    /// `target`, searching inputs of length at most `max_input_len`.
    pub fn preimage(&self, domain: &Nfa, target: &[Sym], max_input_len: usize) -> Option<Word> {
        type Node = (usize, usize, usize);
        let mut parent: HashMap<Node, (Node, Sym)> = HashMap::new();
        let mut depth: HashMap<Node, usize> = HashMap::new();
        let mut queue = VecDeque::new();
        for &q in domain.initial() {
            let n = (self.initial, q, 0);
            depth.insert(n, 0);
            queue.push_back(n);
        }
        while let Some(node) = queue.pop_front() {
            let (s, q, pos) = node;
            if self.accepting[s] && domain.is_accepting(q) && pos == target.len() {
                let mut w = Vec::new();
                let mut cur = node;
                while let Some(&(p, a)) = parent.get(&cur) {
                    w.push(a);
                    cur = p;
                }
                w.reverse();
                return Some(w);
            }
            let d = depth[&node];
            if d == max_input_len {
                continue;
            }
            for t in &self.transitions[s] {
                if !target[pos..].starts_with(&t.output) {
                    continue;
                }
                for &(a, q2) in domain.transitions_from(q) {
                    if a != t.input {
                        continue;
                    }
                    let n2 = (t.to, q2, pos + t.output.len());
                    if let std::collections::hash_map::Entry::Vacant(e) = depth.entry(n2) {
                        e.insert(d + 1);
                        parent.insert(n2, (node, a));
                        queue.push_back(n2);
                    }
                }
            }
        }
        None
    }
}

pub fn gsm_apply_word(g: &Gsm, w: &[Sym]) -> BTreeSet<Word> {
    g.apply(w)
}

/// Image of a regular language: the product of the transducer with the
/// automaton, with outputs spelled along ε-paths.
pub fn gsm_image(g: &Gsm, nfa: &Nfa) -> Nfa {
    let mut e = EpsNfa::new(g.output_alphabet.iter().copied());
    let mut index: HashMap<(usize, usize), usize> = HashMap::new();
    let mut queue = VecDeque::new();
    for &q in nfa.initial() {
        let id = e.add_state();
        index.insert((g.initial, q), id);
        e.initial.push(id);
        queue.push_back((g.initial, q));
    }
    while let Some((s, q)) = queue.pop_front() {
        let id = index[&(s, q)];
        if g.accepting[s] && nfa.is_accepting(q) {
            e.accepting.push(id);
        }
        for t in &g.transitions[s] {
            for &(a, q2) in nfa.transitions_from(q) {
                if a != t.input {
                    continue;
                }
                let tid = match index.get(&(t.to, q2)) {
                    Some(&x) => x,
                    None => {
                        let x = e.add_state();
                        index.insert((t.to, q2), x);
                        queue.push_back((t.to, q2));
                        x
                    }
                };
                e.add_path(id, &t.output, tid);
            }
        }
    }
    if e.initial.is_empty() {
        return Nfa::empty(g.output_alphabet.iter().copied());
    }
    e.into_nfa()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::nfa::Block;
    use crate::sym::{syms, word};

    fn swap_ab() -> Gsm {
        let ab = syms(&["a", "b"]);
        let mut g = Gsm::new(ab.clone(), ab, "s");
        g.set_accepting(0, true);
        g.add_transition(0, Sym::new("a"), &word("b b"), 0);
        g.add_transition(0, Sym::new("b"), &[], 0);
        g
    }

    #[test]
    fn identity_maps_word_to_itself() {
        let g = Gsm::identity(&syms(&["a", "b"]));
        assert_eq!(g.apply(&word("a b a")), BTreeSet::from([word("a b a")]));
    }

    #[test]
    fn image_matches_wordwise_application() {
        let g = swap_ab();
        let n = Nfa::from_blocks(syms(&["a", "b"]), &[Block::Star(syms(&["a", "b"]))]);
        let img = gsm_image(&g, &n);
        for w in n.enumerate(5) {
            for o in g.apply(&w) {
                assert!(img.contains(&o));
            }
        }
        assert!(!img.contains(&word("b")));
        assert!(img.contains(&word("b b b b")));
    }

    #[test]
    fn image_of_empty_is_empty() {
        let img = gsm_image(&swap_ab(), &Nfa::empty(syms(&["a"])));
        assert!(img.is_empty());
    }

    #[test]
    fn preimage_search() {
        let g = swap_ab();
        let n = Nfa::from_blocks(syms(&["a", "b"]), &[Block::Star(syms(&["a", "b"]))]);
        let w = g.preimage(&n, &word("b b b b"), 6).unwrap();
        assert_eq!(w, word("a a"));
        assert!(g.preimage(&n, &word("b"), 6).is_none());
    }
}
