//! ε-free nondeterministic finite automata and the regular-language
//! operations used by the verifier.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use super::LangError;
use crate::sym::{Sym, Word};

/// A nondeterministic finite automaton without ε-transitions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nfa {
    alphabet: Vec<Sym>,
    state_names: Vec<String>,
    transitions: Vec<Vec<(Sym, usize)>>,
    initial: BTreeSet<usize>,
    accepting: Vec<bool>,
}

/// One block of a block-sequence description: a single symbol or the star of
/// a symbol set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Block {
    One(Sym),
    Star(Vec<Sym>),
}

fn merge_alphabets(a: &[Sym], b: &[Sym]) -> Vec<Sym> {
    let mut v: Vec<Sym> = a.iter().chain(b.iter()).copied().collect();
    v.sort();
    v.dedup();
    v
}

impl Nfa {
    pub fn new(alphabet: impl IntoIterator<Item = Sym>) -> Nfa {
        let mut alphabet: Vec<Sym> = alphabet.into_iter().collect();
        alphabet.sort();
        alphabet.dedup();
        Nfa {
            alphabet,
            state_names: Vec::new(),
            transitions: Vec::new(),
            initial: BTreeSet::new(),
            accepting: Vec::new(),
        }
    }

    pub fn add_state(&mut self, name: impl Into<String>) -> usize {
        self.state_names.push(name.into());
        self.transitions.push(Vec::new());
        self.accepting.push(false);
        self.state_names.len() - 1
    }

    /// Adds `from --symbol--> to`. The symbol joins the alphabet if absent.
    pub fn add_transition(&mut self, from: usize, symbol: Sym, to: usize) {
        if let Err(pos) = self.alphabet.binary_search(&symbol) {
            self.alphabet.insert(pos, symbol);
        }
        let row = &mut self.transitions[from];
        if !row.contains(&(symbol, to)) {
            row.push((symbol, to));
        }
    }

    pub fn set_initial(&mut self, state: usize) {
        self.initial.insert(state);
    }

    pub fn set_accepting(&mut self, state: usize, accepting: bool) {
        self.accepting[state] = accepting;
    }

    pub fn extend_alphabet(&mut self, symbols: impl IntoIterator<Item = Sym>) {
        self.alphabet = merge_alphabets(&self.alphabet, &symbols.into_iter().collect::<Vec<_>>());
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

    pub fn initial(&self) -> &BTreeSet<usize> {
        &self.initial
    }

    pub fn is_accepting(&self, s: usize) -> bool {
        self.accepting[s]
    }

    pub fn transitions_from(&self, s: usize) -> &[(Sym, usize)] {
        &self.transitions[s]
    }

    pub fn num_transitions(&self) -> usize {
        self.transitions.iter().map(Vec::len).sum()
    }

    /// The automaton accepting nothing.
    pub fn empty(alphabet: impl IntoIterator<Item = Sym>) -> Nfa {
        let mut n = Nfa::new(alphabet);
        let s = n.add_state("empty");
        n.set_initial(s);
        n
    }

    /// The automaton accepting every word over `alphabet`.
    pub fn universal(alphabet: impl IntoIterator<Item = Sym>) -> Nfa {
        let mut n = Nfa::new(alphabet);
        let s = n.add_state("all");
        n.set_initial(s);
        n.set_accepting(s, true);
        for a in n.alphabet.clone() {
            n.add_transition(s, a, s);
        }
        n
    }

    /// Accepts exactly the given words.
    pub fn from_words<'a>(
        alphabet: impl IntoIterator<Item = Sym>,
        words: impl IntoIterator<Item = &'a [Sym]>,
    ) -> Nfa {
        let mut n = Nfa::new(alphabet);
        let root = n.add_state("t0");
        n.set_initial(root);
        let mut children: HashMap<(usize, Sym), usize> = HashMap::new();
        for w in words {
            let mut cur = root;
            for &a in w {
                cur = match children.get(&(cur, a)) {
                    Some(&next) => next,
                    None => {
                        let next = n.add_state(format!("t{}", n.num_states()));
                        n.add_transition(cur, a, next);
                        children.insert((cur, a), next);
                        next
                    }
                };
            }
            n.set_accepting(cur, true);
        }
        n
    }

    /// Accepts the concatenation of the blocks, e.g. `p00 x* {y,y'}*`.
    pub fn from_blocks(alphabet: impl IntoIterator<Item = Sym>, blocks: &[Block]) -> Nfa {
        let mut e = EpsNfa::new(alphabet);
        let mut cur = e.add_state();
        e.initial.push(cur);
        for b in blocks {
            let next = e.add_state();
            match b {
                Block::One(s) => e.add(cur, Some(*s), next),
                Block::Star(set) => {
                    e.add(cur, None, next);
                    for &s in set {
                        e.add(next, Some(s), next);
                    }
                }
            }
            cur = next;
        }
        e.accepting.push(cur);
        e.into_nfa()
    }

    /// Standard acceptance. Symbols outside the alphabet are an error.
    pub fn accepts(&self, w: &[Sym]) -> Result<bool, LangError> {
        for s in w {
            if self.alphabet.binary_search(s).is_err() {
                return Err(LangError::UnknownSymbol(s.name().to_owned()));
            }
        }
        Ok(self.contains(w))
    }

    /// Acceptance, treating unknown symbols as rejection.
    pub fn contains(&self, w: &[Sym]) -> bool {
        let mut current: BTreeSet<usize> = self.initial.clone();
        for &a in w {
            let mut next = BTreeSet::new();
            for &s in &current {
                for &(b, t) in &self.transitions[s] {
                    if b == a {
                        next.insert(t);
                    }
                }
            }
            if next.is_empty() {
                return false;
            }
            current = next;
        }
        current.iter().any(|&s| self.accepting[s])
    }

    fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.num_states()];
        let mut queue: VecDeque<usize> = self.initial.iter().copied().collect();
        for &s in &self.initial {
            seen[s] = true;
        }
        while let Some(s) = queue.pop_front() {
            for &(_, t) in &self.transitions[s] {
                if !seen[t] {
                    seen[t] = true;
                    queue.push_back(t);
                }
            }
        }
        seen
    }

    /// Shortest distance from each state to an accepting state, if any.
    pub fn distance_to_accept(&self) -> Vec<Option<usize>> {
        let n = self.num_states();
        let mut reverse: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (s, row) in self.transitions.iter().enumerate() {
            for &(_, t) in row {
                reverse[t].push(s);
            }
        }
        let mut dist = vec![None; n];
        let mut queue = VecDeque::new();
        for s in 0..n {
            if self.accepting[s] {
                dist[s] = Some(0);
                queue.push_back(s);
            }
        }
        while let Some(t) = queue.pop_front() {
            let d = dist[t].unwrap() + 1;
            for &s in &reverse[t] {
                if dist[s].is_none() {
                    dist[s] = Some(d);
                    queue.push_back(s);
                }
            }
        }
        dist
    }

    /// Keeps only states that are both reachable and co-reachable.
    pub fn trim(&self) -> Nfa {
        let reach = self.reachable();
        let co = self.distance_to_accept();
        let keep: Vec<bool> = (0..self.num_states())
            .map(|s| reach[s] && co[s].is_some())
            .collect();
        let mut map = vec![usize::MAX; self.num_states()];
        let mut out = Nfa::new(self.alphabet.clone());
        for s in 0..self.num_states() {
            if keep[s] {
                map[s] = out.add_state(self.state_names[s].clone());
                out.set_accepting(map[s], self.accepting[s]);
            }
        }
        for s in 0..self.num_states() {
            if !keep[s] {
                continue;
            }
            for &(a, t) in &self.transitions[s] {
                if keep[t] {
                    out.add_transition(map[s], a, map[t]);
                }
            }
            if self.initial.contains(&s) {
                out.set_initial(map[s]);
            }
        }
        if out.num_states() == 0 {
            return Nfa::empty(self.alphabet.clone());
        }
        out
    }

    pub fn is_empty(&self) -> bool {
        let reach = self.reachable();
        (0..self.num_states()).all(|s| !(reach[s] && self.accepting[s]))
    }

    pub fn is_deterministic(&self) -> bool {
        self.initial.len() <= 1
            && self.transitions.iter().all(|row| {
                let mut syms: Vec<Sym> = row.iter().map(|&(a, _)| a).collect();
                let n = syms.len();
                syms.sort();
                syms.dedup();
                syms.len() == n
            })
    }

    /// Subset construction restricted to non-empty subsets of trimmed states.
    pub fn to_dfa(&self) -> Dfa {
        let trimmed = self.trim();
        let mut dfa = Dfa {
            alphabet: trimmed.alphabet.clone(),
            trans: Vec::new(),
            accepting: Vec::new(),
            start: None,
        };
        if trimmed.initial.is_empty() || trimmed.is_empty() {
            return dfa;
        }
        let mut index: HashMap<BTreeSet<usize>, usize> = HashMap::new();
        let mut queue = VecDeque::new();
        let start = trimmed.initial.clone();
        index.insert(start.clone(), 0);
        dfa.trans.push(HashMap::new());
        dfa.accepting
            .push(start.iter().any(|&s| trimmed.accepting[s]));
        dfa.start = Some(0);
        queue.push_back(start);
        while let Some(set) = queue.pop_front() {
            let id = index[&set];
            let mut by_symbol: BTreeMap<Sym, BTreeSet<usize>> = BTreeMap::new();
            for &s in &set {
                for &(a, t) in &trimmed.transitions[s] {
                    by_symbol.entry(a).or_default().insert(t);
                }
            }
            for (a, target) in by_symbol {
                let tid = match index.get(&target) {
                    Some(&t) => t,
                    None => {
                        let t = dfa.trans.len();
                        dfa.trans.push(HashMap::new());
                        dfa.accepting
                            .push(target.iter().any(|&s| trimmed.accepting[s]));
                        index.insert(target.clone(), t);
                        queue.push_back(target);
                        t
                    }
                };
                dfa.trans[id].insert(a, tid);
            }
        }
        dfa
    }

    /// Calls `f` on every accepted word of length at most `max_len`, in
    /// lexicographic order of symbol names.
    pub fn for_each_word(&self, max_len: usize, mut f: impl FnMut(&[Sym])) {
        let dfa = self.to_dfa();
        let Some(start) = dfa.start else { return };
        let dist = dfa.distance_to_accept();
        let sorted: Vec<Vec<(Sym, usize)>> = dfa
            .trans
            .iter()
            .map(|m| {
                let mut v: Vec<(Sym, usize)> = m.iter().map(|(&a, &t)| (a, t)).collect();
                v.sort();
                v
            })
            .collect();
        let mut word = Vec::new();
        fn go(
            s: usize,
            word: &mut Vec<Sym>,
            max_len: usize,
            dfa: &Dfa,
            sorted: &[Vec<(Sym, usize)>],
            dist: &[Option<usize>],
            f: &mut dyn FnMut(&[Sym]),
        ) {
            if dfa.accepting[s] {
                f(word);
            }
            if word.len() == max_len {
                return;
            }
            for &(a, t) in &sorted[s] {
                match dist[t] {
                    Some(d) if word.len() + 1 + d <= max_len => {}
                    _ => continue,
                }
                word.push(a);
                go(t, word, max_len, dfa, sorted, dist, f);
                word.pop();
            }
        }
        match dist[start] {
            Some(d) if d <= max_len => go(start, &mut word, max_len, &dfa, &sorted, &dist, &mut f),
            _ => {}
        }
    }

    /// Every accepted word of length at most `max_len`.
    pub fn enumerate(&self, max_len: usize) -> BTreeSet<Word> {
        let mut out = BTreeSet::new();
        self.for_each_word(max_len, |w| {
            out.insert(w.to_vec());
        });
        out
    }

    /// A shortest accepted word, if the language is non-empty.
    pub fn shortest_word(&self) -> Option<Word> {
        let mut parent: HashMap<usize, (usize, Sym)> = HashMap::new();
        let mut queue: VecDeque<usize> = self.initial.iter().copied().collect();
        let mut seen: Vec<bool> = vec![false; self.num_states()];
        for &s in &self.initial {
            seen[s] = true;
        }
        while let Some(s) = queue.pop_front() {
            if self.accepting[s] {
                let mut w = Vec::new();
                let mut cur = s;
                while let Some(&(p, a)) = parent.get(&cur) {
                    w.push(a);
                    cur = p;
                }
                w.reverse();
                return Some(w);
            }
            let mut row = self.transitions[s].clone();
            row.sort();
            for (a, t) in row {
                if !seen[t] {
                    seen[t] = true;
                    parent.insert(t, (s, a));
                    queue.push_back(t);
                }
            }
        }
        None
    }
}

/// Deterministic (possibly partial) automaton produced by subset construction.
#[derive(Clone, Debug)]
pub struct Dfa {
    alphabet: Vec<Sym>,
    trans: Vec<HashMap<Sym, usize>>,
    accepting: Vec<bool>,
    start: Option<usize>,
}

impl Dfa {
    pub fn alphabet(&self) -> &[Sym] {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.trans.len()
    }

    pub fn start(&self) -> Option<usize> {
        self.start
    }

    pub fn next(&self, s: usize, a: Sym) -> Option<usize> {
        self.trans[s].get(&a).copied()
    }

    pub fn is_accepting(&self, s: usize) -> bool {
        self.accepting[s]
    }

    /// State reached after reading `w`, if defined.
    pub fn run(&self, w: &[Sym]) -> Option<usize> {
        let mut s = self.start?;
        for &a in w {
            s = self.next(s, a)?;
        }
        Some(s)
    }

    pub fn contains(&self, w: &[Sym]) -> bool {
        self.run(w).is_some_and(|s| self.accepting[s])
    }

    pub fn distance_to_accept(&self) -> Vec<Option<usize>> {
        self.to_nfa().distance_to_accept()
    }

    /// Merges equivalent states by partition refinement. Missing transitions
    /// lead to an implicit dead state, which no live state is equivalent to.
    pub fn minimize(&self) -> Dfa {
        let n = self.trans.len();
        let Some(start) = self.start else {
            return self.clone();
        };
        let mut class: Vec<usize> = self.accepting.iter().map(|&a| a as usize).collect();
        loop {
            let mut index: HashMap<(usize, Vec<Option<usize>>), usize> = HashMap::new();
            let mut next = vec![0; n];
            for s in 0..n {
                let sig: Vec<Option<usize>> = self
                    .alphabet
                    .iter()
                    .map(|a| self.trans[s].get(a).map(|&t| class[t]))
                    .collect();
                let k = index.len();
                next[s] = *index.entry((class[s], sig)).or_insert(k);
            }
            let stable = index.len() == class.iter().collect::<BTreeSet<_>>().len();
            class = next;
            if stable {
                break;
            }
        }
        let count = class.iter().max().map_or(0, |m| m + 1);
        let mut trans = vec![HashMap::new(); count];
        let mut accepting = vec![false; count];
        for s in 0..n {
            accepting[class[s]] = self.accepting[s];
            for (&a, &t) in &self.trans[s] {
                trans[class[s]].insert(a, class[t]);
            }
        }
        Dfa {
            alphabet: self.alphabet.clone(),
            trans,
            accepting,
            start: Some(class[start]),
        }
    }

    /// Adds a sink so that every state has a transition on every symbol of
    /// `alphabet`.
    pub fn complete(&self, alphabet: &[Sym]) -> Dfa {
        let alphabet = merge_alphabets(&self.alphabet, alphabet);
        let mut out = self.clone();
        out.alphabet = alphabet.clone();
        let sink = out.trans.len();
        out.trans.push(HashMap::new());
        out.accepting.push(false);
        if out.start.is_none() {
            out.start = Some(sink);
        }
        for s in 0..out.trans.len() {
            for &a in &alphabet {
                out.trans[s].entry(a).or_insert(sink);
            }
        }
        out
    }

    pub fn to_nfa(&self) -> Nfa {
        let mut n = Nfa::new(self.alphabet.clone());
        for s in 0..self.trans.len() {
            n.add_state(format!("d{s}"));
            n.set_accepting(s, self.accepting[s]);
        }
        for (s, row) in self.trans.iter().enumerate() {
            let mut v: Vec<(Sym, usize)> = row.iter().map(|(&a, &t)| (a, t)).collect();
            v.sort();
            for (a, t) in v {
                n.add_transition(s, a, t);
            }
        }
        match self.start {
            Some(s) => n.set_initial(s),
            None => {
                let s = n.add_state("empty");
                n.set_initial(s);
            }
        }
        n
    }
}

/// Automaton with ε-transitions, used as an intermediate by constructions.
#[derive(Clone, Debug, Default)]
pub(crate) struct EpsNfa {
    pub alphabet: Vec<Sym>,
    pub edges: Vec<Vec<(Option<Sym>, usize)>>,
    pub initial: Vec<usize>,
    pub accepting: Vec<usize>,
}

impl EpsNfa {
    pub fn new(alphabet: impl IntoIterator<Item = Sym>) -> EpsNfa {
        let mut alphabet: Vec<Sym> = alphabet.into_iter().collect();
        alphabet.sort();
        alphabet.dedup();
        EpsNfa {
            alphabet,
            ..Default::default()
        }
    }

    pub fn add_state(&mut self) -> usize {
        self.edges.push(Vec::new());
        self.edges.len() - 1
    }

    pub fn add(&mut self, from: usize, symbol: Option<Sym>, to: usize) {
        self.edges[from].push((symbol, to));
    }

    /// Adds a path spelling `word` from `from` to `to`.
    pub fn add_path(&mut self, from: usize, word: &[Sym], to: usize) {
        if word.is_empty() {
            self.add(from, None, to);
            return;
        }
        let mut cur = from;
        for (i, &a) in word.iter().enumerate() {
            let next = if i + 1 == word.len() { to } else { self.add_state() };
            self.add(cur, Some(a), next);
            cur = next;
        }
    }

    /// Copies `nfa` in, returning the offset of its states.
    pub fn embed(&mut self, nfa: &Nfa) -> usize {
        let offset = self.edges.len();
        for _ in 0..nfa.num_states() {
            self.add_state();
        }
        for s in 0..nfa.num_states() {
            for &(a, t) in nfa.transitions_from(s) {
                self.add(offset + s, Some(a), offset + t);
            }
        }
        offset
    }

    fn closure(&self, s: usize) -> Vec<usize> {
        let mut seen = vec![s];
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &(a, t) in &self.edges[u] {
                if a.is_none() && !seen.contains(&t) {
                    seen.push(t);
                    stack.push(t);
                }
            }
        }
        seen
    }

    pub fn into_nfa(self) -> Nfa {
        let n = self.edges.len();
        let mut out = Nfa::new(self.alphabet.clone());
        for s in 0..n {
            out.add_state(format!("e{s}"));
        }
        let accepting: BTreeSet<usize> = self.accepting.iter().copied().collect();
        for s in 0..n {
            let cl = self.closure(s);
            if cl.iter().any(|u| accepting.contains(u)) {
                out.set_accepting(s, true);
            }
            for u in cl {
                for &(a, t) in &self.edges[u] {
                    if let Some(a) = a {
                        out.add_transition(s, a, t);
                    }
                }
            }
        }
        for &s in &self.initial {
            out.set_initial(s);
        }
        out.trim()
    }
}

pub fn nfa_accepts(nfa: &Nfa, w: &[Sym]) -> Result<bool, LangError> {
    nfa.accepts(w)
}

pub fn nfa_enumerate(nfa: &Nfa, max_len: usize) -> BTreeSet<Word> {
    nfa.enumerate(max_len)
}

pub fn determinize(nfa: &Nfa) -> Nfa {
    nfa.to_dfa().to_nfa()
}

/// Complement relative to the words over `nfa`'s alphabet.
pub fn complement(nfa: &Nfa) -> Nfa {
    complement_over(nfa, &nfa.alphabet.clone())
}

/// Complement relative to the words over `alphabet` (merged with `nfa`'s).
pub fn complement_over(nfa: &Nfa, alphabet: &[Sym]) -> Nfa {
    let mut dfa = nfa.to_dfa().complete(alphabet);
    for acc in dfa.accepting.iter_mut() {
        *acc = !*acc;
    }
    dfa.to_nfa().trim()
}

pub fn intersect(a: &Nfa, b: &Nfa) -> Nfa {
    let mut out = Nfa::new(merge_alphabets(&a.alphabet, &b.alphabet));
    let mut index: HashMap<(usize, usize), usize> = HashMap::new();
    let mut queue = VecDeque::new();
    for &p in &a.initial {
        for &q in &b.initial {
            let id = out.add_state(format!("({},{})", a.state_names[p], b.state_names[q]));
            out.set_initial(id);
            out.set_accepting(id, a.accepting[p] && b.accepting[q]);
            index.insert((p, q), id);
            queue.push_back((p, q));
        }
    }
    while let Some((p, q)) = queue.pop_front() {
        let id = index[&(p, q)];
        for &(x, p2) in &a.transitions[p] {
            for &(y, q2) in &b.transitions[q] {
                if x != y {
                    continue;
                }
                let tid = match index.get(&(p2, q2)) {
                    Some(&t) => t,
                    None => {
                        let t = out.add_state(format!(
                            "({},{})",
                            a.state_names[p2], b.state_names[q2]
                        ));
                        out.set_accepting(t, a.accepting[p2] && b.accepting[q2]);
                        index.insert((p2, q2), t);
                        queue.push_back((p2, q2));
                        t
                    }
                };
                out.add_transition(id, x, tid);
            }
        }
    }
    if out.num_states() == 0 {
        return Nfa::empty(out.alphabet.clone());
    }
    out.trim()
}

pub fn union(a: &Nfa, b: &Nfa) -> Nfa {
    let mut out = Nfa::new(merge_alphabets(&a.alphabet, &b.alphabet));
    for (tag, m) in [("l", a), ("r", b)] {
        let offset = out.num_states();
        for s in 0..m.num_states() {
            let id = out.add_state(format!("{tag}{}", m.state_names[s]));
            out.set_accepting(id, m.accepting[s]);
        }
        for s in 0..m.num_states() {
            for &(x, t) in &m.transitions[s] {
                out.add_transition(offset + s, x, offset + t);
            }
        }
        for &s in &m.initial {
            out.set_initial(offset + s);
        }
    }
    out
}

pub fn concat(a: &Nfa, b: &Nfa) -> Nfa {
    let mut e = EpsNfa::new(merge_alphabets(&a.alphabet, &b.alphabet));
    let oa = e.embed(a);
    let ob = e.embed(b);
    e.initial = a.initial.iter().map(|s| oa + s).collect();
    e.accepting = (0..b.num_states())
        .filter(|&s| b.accepting[s])
        .map(|s| ob + s)
        .collect();
    for s in 0..a.num_states() {
        if a.accepting[s] {
            for &t in &b.initial {
                e.add(oa + s, None, ob + t);
            }
        }
    }
    e.into_nfa()
}

/// Kleene star.
pub fn star(a: &Nfa) -> Nfa {
    let mut e = EpsNfa::new(a.alphabet.clone());
    let hub = e.add_state();
    let oa = e.embed(a);
    e.initial = vec![hub];
    e.accepting = vec![hub];
    for &s in &a.initial {
        e.add(hub, None, oa + s);
    }
    for s in 0..a.num_states() {
        if a.accepting[s] {
            e.add(oa + s, None, hub);
        }
    }
    e.into_nfa()
}

/// True iff every prefix of every accepted word is accepted: after
/// determinizing and trimming, every remaining state must be accepting.
pub fn prefix_closed(nfa: &Nfa) -> bool {
    let dfa = nfa.to_dfa();
    dfa.accepting.iter().all(|&a| a)
}

/// Image of the language under the homomorphism `hom`.
pub fn hom_image(nfa: &Nfa, hom: &BTreeMap<Sym, Word>) -> Result<Nfa, LangError> {
    let mut target: Vec<Sym> = hom.values().flatten().copied().collect();
    target.sort();
    target.dedup();
    let mut e = EpsNfa::new(target);
    for _ in 0..nfa.num_states() {
        e.add_state();
    }
    for s in 0..nfa.num_states() {
        for &(a, t) in nfa.transitions_from(s) {
            let image = hom
                .get(&a)
                .ok_or_else(|| LangError::HomUndefined(a.name().to_owned()))?;
            e.add_path(s, image, t);
        }
    }
    e.initial = nfa.initial.iter().copied().collect();
    e.accepting = (0..nfa.num_states()).filter(|&s| nfa.accepting[s]).collect();
    Ok(e.into_nfa())
}

/// `{ w over dom(hom) : hom(w) ∈ L(nfa) }`.
pub fn inverse_hom(nfa: &Nfa, hom: &BTreeMap<Sym, Word>) -> Nfa {
    let mut out = Nfa::new(hom.keys().copied());
    for s in 0..nfa.num_states() {
        out.add_state(nfa.state_names[s].clone());
        out.set_accepting(s, nfa.accepting[s]);
    }
    for &s in &nfa.initial {
        out.set_initial(s);
    }
    for s in 0..nfa.num_states() {
        for (&b, image) in hom {
            let mut current: BTreeSet<usize> = BTreeSet::from([s]);
            for &a in image {
                current = current
                    .iter()
                    .flat_map(|&u| {
                        nfa.transitions[u]
                            .iter()
                            .filter(move |&&(x, _)| x == a)
                            .map(|&(_, t)| t)
                    })
                    .collect();
            }
            for t in current {
                out.add_transition(s, b, t);
            }
        }
    }
    out
}

/// Replaces each symbol `a` by the regular language `sub[a]`.
pub fn regular_substitution(nfa: &Nfa, sub: &BTreeMap<Sym, Nfa>) -> Result<Nfa, LangError> {
    let mut target: Vec<Sym> = sub.values().flat_map(|m| m.alphabet.clone()).collect();
    target.sort();
    target.dedup();
    let mut e = EpsNfa::new(target);
    for _ in 0..nfa.num_states() {
        e.add_state();
    }
    for s in 0..nfa.num_states() {
        for &(a, t) in nfa.transitions_from(s) {
            let m = sub
                .get(&a)
                .ok_or_else(|| LangError::HomUndefined(a.name().to_owned()))?;
            let off = e.embed(m);
            for &i in &m.initial {
                e.add(s, None, off + i);
            }
            for f in 0..m.num_states() {
                if m.accepting[f] {
                    e.add(off + f, None, t);
                }
            }
        }
    }
    e.initial = nfa.initial.iter().copied().collect();
    e.accepting = (0..nfa.num_states()).filter(|&s| nfa.accepting[s]).collect();
    Ok(e.into_nfa())
}
