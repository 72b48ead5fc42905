//! Exact bounded verification by search over machine configurations.
//!
//! A word either contains a point generator or it does not.
//!
//! * If it does, its value is determined by the last point generator, the
//!   free letters after it, and the total shift. The search runs over nodes
//!   `(configuration, phase)` where the phase forgets everything else, and
//!   keeps the two shortest words reaching each node. Two accepted words with
//!   the same pointed value either end in different nodes (each keeps a word
//!   no longer than the originals) or in the same node (which then keeps two
//!   words no longer than the originals), so every collision within the bound
//!   is found.
//! * Free words evaluate into `F × ℤ`, which is cancellative. Two colliding
//!   free words share a longest common prefix `u` and then either diverge at
//!   distinct generators or one ends. Only the configuration after `u`
//!   matters, so `u` can be taken shortest, and the remainders are searched
//!   as a synchronized pair whose unmatched output is kept in a buffer.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::hash::Hash;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::eval::{Elem, EvalMap};
use super::report::{shortlex, Collision, Missing, Stats, VerificationReport};
use super::{VerifyConfig, VerifyError};
use crate::lang::Stepper;
use crate::monoid::{Action, MtElement, ShiftedElement};
use crate::par;
use crate::sym::{Sym, Word};

#[derive(Clone, Debug)]
enum GenValue<L, P> {
    Free(Vec<L>, i64),
    Point(P, i64),
}

struct Gens<A: Action> {
    all: Vec<(Sym, GenValue<A::Letter, A::Point>)>,
    /// Indices into `all` of the free generators.
    free: Vec<usize>,
    max_out: usize,
    max_shift: i64,
}

fn shift_i64(b: &BigInt) -> Result<i64, VerifyError> {
    b.to_i64()
        .ok_or_else(|| VerifyError::Invalid("generator shift out of range".into()))
}

impl<A: Action> Gens<A> {
    fn new(eval: &EvalMap<A>, alphabet: &[Sym]) -> Result<Self, VerifyError> {
        let mut all = Vec::new();
        let mut syms: Vec<Sym> = alphabet.to_vec();
        syms.sort();
        syms.dedup();
        for s in syms {
            let v = eval
                .value(s)
                .ok_or_else(|| VerifyError::UnknownSymbol(s.name().to_owned()))?;
            let k = shift_i64(&v.shift)?;
            all.push((
                s,
                match &v.mt {
                    MtElement::Free(m) => GenValue::Free(m.clone(), k),
                    MtElement::Point(p) => GenValue::Point(p.clone(), k),
                },
            ));
        }
        let free: Vec<usize> = (0..all.len())
            .filter(|&i| matches!(all[i].1, GenValue::Free(..)))
            .collect();
        let max_out = free
            .iter()
            .map(|&i| match &all[i].1 {
                GenValue::Free(m, _) => m.len(),
                _ => 0,
            })
            .max()
            .unwrap_or(0);
        let max_shift = all
            .iter()
            .map(|(_, v)| match v {
                GenValue::Free(_, k) | GenValue::Point(_, k) => k.abs(),
            })
            .max()
            .unwrap_or(0);
        Ok(Gens {
            all,
            free,
            max_out,
            max_shift,
        })
    }

    fn free_parts(&self, i: usize) -> (Sym, &[A::Letter], i64) {
        match &self.all[i].1 {
            GenValue::Free(m, k) => (self.all[i].0, m, *k),
            GenValue::Point(..) => unreachable!("not a free generator"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Phase<P> {
    Free(i64),
    Pt(P, i64),
}

type PointKey<P> = (P, i64);

/// Layered search over `(configuration, phase)` up to `horizon` symbols,
/// keeping two words per node. Returns the accepted words per pointed value.
fn pointed_search<A: Action, S: Stepper>(
    stepper: &S,
    eval: &EvalMap<A>,
    gens: &Gens<A>,
    horizon: usize,
    cfg: &VerifyConfig,
) -> (HashMap<PointKey<A::Point>, Vec<Word>>, u64) {
    let mut results: HashMap<PointKey<A::Point>, Vec<Word>> = HashMap::new();
    let Some(start) = stepper.start() else {
        return (results, 0);
    };
    let mut seen: HashMap<(S::Config, Phase<A::Point>), u8> = HashMap::new();
    seen.insert((start.clone(), Phase::Free(0)), 1);
    let mut frontier: Vec<(S::Config, Phase<A::Point>, Word)> =
        vec![(start, Phase::Free(0), Vec::new())];
    let mut explored = 1u64;
    for len in 0..=horizon {
        for (c, ph, w) in &frontier {
            if let Phase::Pt(p, s) = ph {
                if stepper.accepts(c) {
                    results.entry((p.clone(), *s)).or_default().push(w.clone());
                }
            }
        }
        if len == horizon {
            break;
        }
        let successors = par::flat_map(cfg.exec, &frontier, |(c, ph, w)| {
            let mut out = Vec::new();
            for (sym, gv) in &gens.all {
                let Some(c2) = stepper.step(c, *sym) else { continue };
                let ph2 = match (ph, gv) {
                    (Phase::Free(s), GenValue::Free(_, k)) => Phase::Free(s + k),
                    (Phase::Pt(p, s), GenValue::Free(m, k)) => {
                        Phase::Pt(eval.monoid().action().act_word(p, m), s + k)
                    }
                    (Phase::Free(s) | Phase::Pt(_, s), GenValue::Point(q, k)) => {
                        Phase::Pt(q.clone(), s + k)
                    }
                };
                let mut w2 = w.clone();
                w2.push(*sym);
                out.push((c2, ph2, w2));
            }
            out
        });
        let mut next = Vec::new();
        for (c2, ph2, w2) in successors {
            explored += 1;
            let count = seen.entry((c2.clone(), ph2.clone())).or_insert(0);
            if *count < 2 {
                *count += 1;
                next.push((c2, ph2, w2));
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    (results, explored)
}

/// Configurations reachable by free generator words of length at most
/// `max_len`, each with a shortest such word.
fn free_reach<A: Action, S: Stepper>(
    stepper: &S,
    gens: &Gens<A>,
    max_len: usize,
) -> Vec<(S::Config, Word)> {
    let Some(start) = stepper.start() else {
        return Vec::new();
    };
    let mut seen: HashSet<S::Config> = HashSet::from([start.clone()]);
    let mut order = vec![(start.clone(), Vec::new())];
    let mut queue = VecDeque::from([(start, Vec::new())]);
    while let Some((c, w)) = queue.pop_front() {
        if w.len() == max_len {
            continue;
        }
        for &i in &gens.free {
            let sym = gens.all[i].0;
            if let Some(c2) = stepper.step(&c, sym) {
                if seen.insert(c2.clone()) {
                    let mut w2: Word = w.clone();
                    w2.push(sym);
                    order.push((c2.clone(), w2.clone()));
                    queue.push_back((c2, w2));
                }
            }
        }
    }
    order
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct PairKey<C, L> {
    c1: C,
    c2: C,
    n1: usize,
    n2: usize,
    /// 0: outputs equal; 1 or 2: that side's output is longer by `buf`.
    lead: u8,
    buf: Vec<L>,
    ds: i64,
}

struct PairSearch<'a, A: Action, S: Stepper> {
    stepper: &'a S,
    gens: &'a Gens<A>,
    budget: usize,
}

impl<A: Action, S: Stepper> PairSearch<'_, A, S> {
    /// Appends generator `g` on `side`; `None` if outputs become incompatible
    /// or the remaining budget cannot close the gap.
    fn extend(
        &self,
        k: &PairKey<S::Config, A::Letter>,
        side: u8,
        g: usize,
    ) -> Option<PairKey<S::Config, A::Letter>> {
        let (sym, m, sh) = self.gens.free_parts(g);
        let mut n = k.clone();
        if side == 1 {
            if n.n1 == self.budget {
                return None;
            }
            n.c1 = self.stepper.step(&k.c1, sym)?;
            n.n1 += 1;
            n.ds += sh;
        } else {
            if n.n2 == self.budget {
                return None;
            }
            n.c2 = self.stepper.step(&k.c2, sym)?;
            n.n2 += 1;
            n.ds -= sh;
        }
        if k.lead == 0 || k.lead == side {
            n.buf.extend_from_slice(m);
            if !n.buf.is_empty() {
                n.lead = side;
            }
        } else if n.buf.starts_with(m) {
            n.buf.drain(..m.len());
            if n.buf.is_empty() {
                n.lead = 0;
            }
        } else if m.starts_with(&n.buf) {
            n.buf = m[n.buf.len()..].to_vec();
            n.lead = if n.buf.is_empty() { 0 } else { side };
        } else {
            return None;
        }
        let rest1 = self.budget - n.n1;
        let rest2 = self.budget - n.n2;
        let lag_rest = match n.lead {
            1 => rest2,
            2 => rest1,
            _ => usize::MAX,
        };
        if n.lead != 0 && n.buf.len() > self.gens.max_out.saturating_mul(lag_rest) {
            return None;
        }
        if n.ds.unsigned_abs() > (self.gens.max_shift as u64) * (rest1 + rest2) as u64 {
            return None;
        }
        Some(n)
    }

    /// Two continuations from `c`, starting with generators `a` and `b`,
    /// with equal value and both accepted.
    fn run(&self, c: &S::Config, a: usize, b: usize) -> (Option<(Word, Word)>, u64) {
        let root = PairKey {
            c1: c.clone(),
            c2: c.clone(),
            n1: 0,
            n2: 0,
            lead: 0,
            buf: Vec::new(),
            ds: 0,
        };
        let Some(k1) = self.extend(&root, 1, a) else {
            return (None, 0);
        };
        let Some(k2) = self.extend(&k1, 2, b) else {
            return (None, 0);
        };
        let mut arena: Vec<(PairKey<S::Config, A::Letter>, usize, u8, Sym)> = Vec::new();
        let mut seen: HashSet<PairKey<S::Config, A::Letter>> = HashSet::new();
        seen.insert(k2.clone());
        arena.push((k2, usize::MAX, 0, self.gens.all[a].0));
        let mut stack = vec![0usize];
        let mut explored = 0u64;
        while let Some(idx) = stack.pop() {
            explored += 1;
            let key = arena[idx].0.clone();
            if key.lead == 0
                && key.ds == 0
                && self.stepper.accepts(&key.c1)
                && self.stepper.accepts(&key.c2)
            {
                return (Some(self.rebuild(&arena, idx, a, b)), explored);
            }
            let sides: &[u8] = match key.lead {
                0 => &[1, 2],
                1 => &[2],
                _ => &[1],
            };
            for &side in sides {
                for &g in &self.gens.free {
                    if let Some(n) = self.extend(&key, side, g) {
                        if seen.insert(n.clone()) {
                            arena.push((n, idx, side, self.gens.all[g].0));
                            stack.push(arena.len() - 1);
                        }
                    }
                }
            }
        }
        (None, explored)
    }

    fn rebuild(
        &self,
        arena: &[(PairKey<S::Config, A::Letter>, usize, u8, Sym)],
        mut idx: usize,
        a: usize,
        b: usize,
    ) -> (Word, Word) {
        let mut v1 = Vec::new();
        let mut v2 = Vec::new();
        while arena[idx].1 != usize::MAX {
            let (_, parent, side, sym) = &arena[idx];
            if *side == 1 {
                v1.push(*sym);
            } else {
                v2.push(*sym);
            }
            idx = *parent;
        }
        v1.push(self.gens.all[a].0);
        v2.push(self.gens.all[b].0);
        v1.reverse();
        v2.reverse();
        (v1, v2)
    }
}

/// A non-empty continuation from the accepting configuration `c` built from
/// generators with empty output and total shift zero, ending accepted.
fn silent_extension<A: Action, S: Stepper>(
    stepper: &S,
    gens: &Gens<A>,
    c: &S::Config,
    budget: usize,
) -> Option<Word> {
    let silent: Vec<usize> = gens
        .free
        .iter()
        .copied()
        .filter(|&i| gens.free_parts(i).1.is_empty())
        .collect();
    if silent.is_empty() || budget == 0 {
        return None;
    }
    let mut seen: HashSet<(S::Config, i64, bool)> = HashSet::new();
    let mut queue = VecDeque::from([(c.clone(), 0i64, Vec::<Sym>::new())]);
    seen.insert((c.clone(), 0, false));
    while let Some((c, s, w)) = queue.pop_front() {
        if !w.is_empty() && s == 0 && stepper.accepts(&c) {
            return Some(w);
        }
        if w.len() == budget {
            continue;
        }
        for &i in &silent {
            let (sym, _, k) = gens.free_parts(i);
            if let Some(c2) = stepper.step(&c, sym) {
                let s2 = s + k;
                let rest = (budget - w.len() - 1) as i64;
                if s2.abs() > gens.max_shift * rest {
                    continue;
                }
                if seen.insert((c2.clone(), s2, true)) {
                    let mut w2 = w.clone();
                    w2.push(sym);
                    queue.push_back((c2, s2, w2));
                }
            }
        }
    }
    None
}

type FreeKey<L> = (Vec<L>, i64);

/// Shortest accepted free words reaching the given free values within
/// `horizon` symbols.
fn free_targets_search<A: Action, S: Stepper>(
    stepper: &S,
    gens: &Gens<A>,
    targets: &HashSet<FreeKey<A::Letter>>,
    horizon: usize,
) -> (HashMap<FreeKey<A::Letter>, Word>, u64) {
    let mut found = HashMap::new();
    let Some(start) = stepper.start() else {
        return (found, 0);
    };
    if targets.is_empty() {
        return (found, 0);
    }
    let mut prefixes: HashSet<Vec<A::Letter>> = HashSet::new();
    for (m, _) in targets {
        for i in 0..=m.len() {
            prefixes.insert(m[..i].to_vec());
        }
    }
    let smax = targets.iter().map(|(_, s)| s.abs()).max().unwrap_or(0);
    type Node<C, L> = (C, Vec<L>, i64);
    let mut seen: HashSet<Node<S::Config, A::Letter>> = HashSet::new();
    let root = (start, Vec::new(), 0i64);
    seen.insert(root.clone());
    let mut frontier: Vec<(Node<S::Config, A::Letter>, Word)> = vec![(root, Vec::new())];
    let mut explored = 0u64;
    for len in 0..=horizon {
        for ((c, m, s), w) in &frontier {
            explored += 1;
            if stepper.accepts(c) {
                let key = (m.clone(), *s);
                if targets.contains(&key) && !found.contains_key(&key) {
                    found.insert(key, w.clone());
                }
            }
        }
        if len == horizon || found.len() == targets.len() {
            break;
        }
        let rest = (horizon - len - 1) as i64;
        let mut next = Vec::new();
        for ((c, m, s), w) in &frontier {
            for &i in &gens.free {
                let (sym, out, k) = gens.free_parts(i);
                let s2 = s + k;
                if s2.abs() > smax + gens.max_shift * rest {
                    continue;
                }
                let mut m2 = m.clone();
                m2.extend_from_slice(out);
                if !prefixes.contains(&m2) {
                    continue;
                }
                let Some(c2) = stepper.step(c, sym) else { continue };
                let node = (c2, m2, s2);
                if seen.insert(node.clone()) {
                    let mut w2 = w.clone();
                    w2.push(sym);
                    next.push((node, w2));
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    (found, explored)
}

fn point_elem<A: Action>(p: &A::Point, s: i64) -> Elem<A> {
    ShiftedElement::new(MtElement::Point(p.clone()), s)
}

fn free_key<A: Action>(e: &Elem<A>) -> Option<FreeKey<A::Letter>> {
    match &e.mt {
        MtElement::Free(m) => Some((m.clone(), e.shift.to_i64()?)),
        MtElement::Point(_) => None,
    }
}

fn point_key<A: Action>(e: &Elem<A>) -> Option<PointKey<A::Point>> {
    match &e.mt {
        MtElement::Point(p) => Some((p.clone(), e.shift.to_i64()?)),
        MtElement::Free(_) => None,
    }
}

/// Verifies the language `L(stepper) ∪ extra`.
///
/// `extra` lists further words of the language (for example the enumerated
/// part of a union); they are checked against the machine part and against
/// each other.
pub fn structured_report<A: Action, S: Stepper>(
    stepper: &S,
    extra: &BTreeSet<Word>,
    eval: &EvalMap<A>,
    cfg: &VerifyConfig,
    label: &str,
) -> Result<VerificationReport, VerifyError> {
    let gens = Gens::new(eval, stepper.alphabet())?;
    let horizon = cfg.max_len.max(cfg.search_len);
    let mut explored = 0u64;
    let mut collisions: Vec<Collision> = Vec::new();
    let mut notes = Vec::new();

    let (pointed, n) = pointed_search(stepper, eval, &gens, horizon, cfg);
    explored += n;

    // Words of `extra` outside the machine's language, with their values.
    let mut extra_vals: Vec<(Word, Elem<A>)> = Vec::new();
    for w in extra {
        if w.len() > horizon || stepper.member(w) {
            continue;
        }
        extra_vals.push((w.clone(), eval.eval(w)?));
    }
    if !extra.is_empty() {
        notes.push(format!("{} enumerated words checked against the machine part", extra_vals.len()));
    }

    if cfg.check_injectivity {
        for ((p, s), words) in &pointed {
            let mut short: Vec<&Word> = words.iter().filter(|w| w.len() <= cfg.max_len).collect();
            if short.len() >= 2 {
                short.sort_by(|a, b| shortlex(a, b));
                collisions.push(Collision::new(
                    short[0].clone(),
                    short[1].clone(),
                    eval.render(&point_elem::<A>(p, *s)),
                ));
            }
        }

        let reach = free_reach(stepper, &gens, cfg.max_len);
        let mut tasks = Vec::new();
        for (ci, (c, u)) in reach.iter().enumerate() {
            let budget = cfg.max_len - u.len();
            if budget == 0 {
                continue;
            }
            for (x, &a) in gens.free.iter().enumerate() {
                for &b in &gens.free[x + 1..] {
                    let sa = gens.all[a].0;
                    let sb = gens.all[b].0;
                    if stepper.step(c, sa).is_some() && stepper.step(c, sb).is_some() {
                        tasks.push((ci, a, b));
                    }
                }
            }
        }
        let found = par::map(cfg.exec, &tasks, |&(ci, a, b)| {
            let (c, u) = &reach[ci];
            let search = PairSearch {
                stepper,
                gens: &gens,
                budget: cfg.max_len - u.len(),
            };
            let (hit, n) = search.run(c, a, b);
            let hit = hit.map(|(v1, v2)| {
                let w1: Word = u.iter().chain(v1.iter()).copied().collect();
                let w2: Word = u.iter().chain(v2.iter()).copied().collect();
                (w1, w2)
            });
            (hit, n)
        });
        let silent = par::map(cfg.exec, &reach, |(c, u)| {
            if !stepper.accepts(c) {
                return None;
            }
            silent_extension(stepper, &gens, c, cfg.max_len - u.len()).map(|v| {
                let w: Word = u.iter().chain(v.iter()).copied().collect();
                (u.clone(), w)
            })
        });
        let mut free_seen: HashSet<String> = HashSet::new();
        for (hit, n) in found {
            explored += n;
            if let Some((w1, w2)) = hit {
                let e = eval.render(&eval.eval(&w1)?);
                if free_seen.insert(e.clone()) {
                    collisions.push(Collision::new(w1, w2, e));
                }
            }
        }
        for (w1, w2) in silent.into_iter().flatten() {
            let e = eval.render(&eval.eval(&w1)?);
            if free_seen.insert(e.clone()) {
                collisions.push(Collision::new(w1, w2, e));
            }
        }

        // Extra words against each other and against the machine part.
        let mut by_elem: HashMap<&Elem<A>, Vec<&Word>> = HashMap::new();
        let mut free_targets: HashSet<FreeKey<A::Letter>> = HashSet::new();
        for (w, e) in &extra_vals {
            if w.len() > cfg.max_len {
                continue;
            }
            by_elem.entry(e).or_default().push(w);
            if let Some(k) = point_key::<A>(e) {
                if let Some(ws) = pointed.get(&k) {
                    if let Some(m) = ws.iter().filter(|m| m.len() <= cfg.max_len).min_by(|a, b| shortlex(a, b)) {
                        collisions.push(Collision::new(w.clone(), m.clone(), eval.render(e)));
                    }
                }
            } else if let Some(k) = free_key::<A>(e) {
                free_targets.insert(k);
            }
        }
        for (e, mut ws) in by_elem {
            if ws.len() >= 2 {
                ws.sort_by(|a, b| shortlex(a, b));
                collisions.push(Collision::new(ws[0].clone(), ws[1].clone(), eval.render(e)));
            }
        }
        if !free_targets.is_empty() {
            let (hits, n) = free_targets_search(stepper, &gens, &free_targets, cfg.max_len);
            explored += n;
            for (w, e) in &extra_vals {
                if let Some(k) = free_key::<A>(e) {
                    if let Some(m) = hits.get(&k) {
                        collisions.push(Collision::new(w.clone(), m.clone(), eval.render(e)));
                    }
                }
            }
        }
    }

    let mut missing = Vec::new();
    let mut ball_size = 0;
    let mut covered = 0;
    if cfg.check_coverage {
        let ball = eval.ball(cfg.radius);
        ball_size = ball.len();
        let reached_extra: HashSet<&Elem<A>> = extra_vals
            .iter()
            .filter(|(w, _)| w.len() <= cfg.search_len)
            .map(|(_, e)| e)
            .collect();
        let mut free_targets: HashSet<FreeKey<A::Letter>> = HashSet::new();
        for e in ball.keys() {
            if let Some(k) = free_key::<A>(e) {
                if !reached_extra.contains(e) {
                    free_targets.insert(k);
                }
            }
        }
        let (free_hits, n) = free_targets_search(stepper, &gens, &free_targets, cfg.search_len);
        explored += n;
        for (e, witness) in ball {
            let ok = reached_extra.contains(&e)
                || match (point_key::<A>(&e), free_key::<A>(&e)) {
                    (Some(k), _) => pointed
                        .get(&k)
                        .is_some_and(|ws| ws.iter().any(|w| w.len() <= cfg.search_len)),
                    (_, Some(k)) => free_hits.contains_key(&k),
                    _ => false,
                };
            if ok {
                covered += 1;
            } else {
                missing.push(Missing {
                    element: eval.render(&e),
                    witness,
                });
            }
        }
    }

    let stats = Stats {
        method: if extra.is_empty() {
            "structured".into()
        } else {
            "structured+enumeration".into()
        },
        language: label.to_owned(),
        radius: cfg.radius,
        search_len: cfg.search_len,
        max_len: cfg.max_len,
        ball_size,
        explored,
        elements_covered: covered,
        notes,
        ..Default::default()
    };
    Ok(super::finish(collisions, missing, stats, cfg))
}

/// An accepted word of the machine, other than `avoid`, with the same value
/// as `avoid`, within `max_len` symbols.
pub fn find_other_representative<A: Action, S: Stepper>(
    stepper: &S,
    eval: &EvalMap<A>,
    avoid: &[Sym],
    max_len: usize,
    cfg: &VerifyConfig,
) -> Result<Option<Word>, VerifyError> {
    let gens = Gens::new(eval, stepper.alphabet())?;
    let e = eval.eval(avoid)?;
    if let Some(k) = point_key::<A>(&e) {
        let (pointed, _) = pointed_search(stepper, eval, &gens, max_len, cfg);
        return Ok(pointed
            .get(&k)
            .and_then(|ws| ws.iter().find(|w| w.as_slice() != avoid).cloned()));
    }
    let Some(k) = free_key::<A>(&e) else {
        return Ok(None);
    };
    // Exact search for a second free representative: the shortest one may be
    // `avoid` itself, so fall back to the pair search from every prefix.
    let (hits, _) = free_targets_search(stepper, &gens, &HashSet::from([k]), max_len);
    if let Some(w) = hits.values().next() {
        if w.as_slice() != avoid {
            return Ok(Some(w.clone()));
        }
    }
    let mut sub = cfg.clone();
    sub.check_coverage = false;
    sub.max_len = max_len;
    let r = structured_report(stepper, &BTreeSet::new(), eval, &sub, "")?;
    let label = eval.render(&e);
    Ok(r
        .collisions
        .into_iter()
        .find(|c| c.element == label)
        .map(|c| if c.w1.as_slice() == avoid { c.w2 } else { c.w1 }))
}
