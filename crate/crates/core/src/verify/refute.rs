//! Budgeted search for certificates that a regular language over the seven
//! generators is not a cross-section of `F[T]`.
//!
//! The search is one-sided: it may find a certificate, and otherwise reports
//! which strategies ran. It never claims that a candidate is a cross-section.

use std::collections::{BTreeSet, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::builtins::build_proof_gsms;
use super::eval::{Elem, EvalMap};
use super::pipeline::normalize_pipeline;
use super::report::shortlex;
use super::structured::{find_other_representative, structured_report};
use super::{VerifyConfig, VerifyError};
use crate::lang::{pump_segment, Block, Dfa, Nfa, Stepper};
use crate::monoid::{FtAction, GeneratorA7, MtElement, TPoint};
use crate::sym::{show_word, Sym, Word};

/// Limits for the refutation search.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Budget {
    /// Cap on word evaluations and search nodes over all strategies.
    pub evaluations: u64,
    /// Longest candidate word examined by the collision search.
    pub max_len: usize,
    /// Ball radius for the coverage strategy.
    pub radius: usize,
    /// Largest `2^s` the pumping strategy will target.
    pub pump_cap: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            evaluations: 200_000,
            max_len: 12,
            radius: 4,
            pump_cap: 64,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RefutationKind {
    Collision,
    Missing,
    OmegaDuplicate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Refutation {
    pub kind: RefutationKind,
    /// For collisions both words are accepted and evaluate equal; for a
    /// missing element `w1` is a generator word evaluating to it.
    pub w1: Word,
    pub w2: Option<Word>,
    pub element: String,
    /// A missing element is only conclusive when the candidate has no words
    /// longer than the search bound.
    pub conclusive: bool,
    pub trace: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum RefuteOutcome {
    Refuted(Refutation),
    NotFound { strategies: Vec<String>, evaluations: u64 },
}

impl Refutation {
    /// Re-evaluates the certificate against the candidate.
    pub fn recheck(&self, candidate: &Nfa) -> Result<(), VerifyError> {
        let eval = EvalMap::ft();
        let e1 = eval.eval(&self.w1)?;
        if eval.render(&e1) != self.element {
            return Err(VerifyError::Unsound(format!(
                "[{}] does not evaluate to {}",
                show_word(&self.w1),
                self.element
            )));
        }
        match (&self.kind, &self.w2) {
            (RefutationKind::Missing, None) => Ok(()),
            (_, Some(w2)) => {
                if w2 == &self.w1 || eval.eval(w2)? != e1 {
                    return Err(VerifyError::Unsound("collision words differ in value or coincide".into()));
                }
                if !candidate.contains(&self.w1) || !candidate.contains(w2) {
                    return Err(VerifyError::Unsound("collision word not accepted".into()));
                }
                Ok(())
            }
            _ => Err(VerifyError::Unsound("malformed certificate".into())),
        }
    }
}

struct Counter {
    used: u64,
    cap: u64,
}

impl Counter {
    fn spend(&mut self, n: u64) -> bool {
        self.used += n;
        self.used <= self.cap
    }
}

fn collision_refutation(w1: Word, w2: Word, element: String, trace: Vec<String>) -> Refutation {
    let (w1, w2) = if shortlex(&w1, &w2).is_gt() { (w2, w1) } else { (w1, w2) };
    Refutation {
        kind: if element == "OMEGA" {
            RefutationKind::OmegaDuplicate
        } else {
            RefutationKind::Collision
        },
        w1,
        w2: Some(w2),
        element,
        conclusive: true,
        trace,
    }
}

/// Strategy (i): exact collision search with iterative deepening.
fn collision_search(
    dfa: &Dfa,
    eval: &EvalMap<FtAction>,
    budget: &Budget,
    counter: &mut Counter,
) -> Result<Option<Refutation>, VerifyError> {
    let mut len = 2;
    loop {
        let len_now = len.min(budget.max_len);
        let mut cfg = VerifyConfig::new(0, 0, len_now);
        cfg.check_coverage = false;
        let r = structured_report(dfa, &BTreeSet::new(), eval, &cfg, "candidate")?;
        let within = counter.spend(r.stats.explored);
        if let Some(c) = r.collisions.into_iter().next() {
            return Ok(Some(collision_refutation(
                c.w1,
                c.w2,
                c.element,
                vec![format!("bounded collision search at length {len_now}")],
            )));
        }
        if !within || len_now == budget.max_len {
            return Ok(None);
        }
        len += 2;
    }
}

/// Shortest accepted word of `dfa` with value `target`, by search over
/// `(state, value)` pairs.
fn word_with_value(
    dfa: &Dfa,
    eval: &EvalMap<FtAction>,
    target: &Elem<FtAction>,
    max_len: usize,
    counter: &mut Counter,
) -> Option<Word> {
    let start = dfa.start()?;
    let id = eval.identity();
    let mut seen: HashSet<(usize, Elem<FtAction>)> = HashSet::from([(start, id.clone())]);
    let mut queue = VecDeque::from([(start, id, Vec::new())]);
    while let Some((s, v, w)) = queue.pop_front() {
        if !counter.spend(1) {
            return None;
        }
        if dfa.is_accepting(s) && &v == target {
            return Some(w);
        }
        if w.len() == max_len {
            continue;
        }
        for &a in Stepper::alphabet(dfa) {
            if let Some(t) = dfa.next(s, a) {
                let v2 = eval.multiply(&v, eval.value(a)?);
                if seen.insert((t, v2.clone())) {
                    let mut w2 = w.clone();
                    w2.push(a);
                    queue.push_back((t, v2, w2));
                }
            }
        }
    }
    None
}

/// Pulls a word of the last pipeline stage back to a candidate word through
/// the transducer preimages.
fn lift(stages: &[Nfa; 4], candidate: &Nfa, w: &[Sym], slack: usize) -> Option<Word> {
    let gsms = build_proof_gsms();
    let domains = [candidate, &stages[0], &stages[1], &stages[2]];
    let mut cur = w.to_vec();
    for k in (0..4).rev() {
        cur = gsms[k].preimage(domains[k], &cur, cur.len() + slack)?;
    }
    Some(cur)
}

/// Strategy (ii): pump the representative of `p_{2^s, s}` in the last
/// pipeline stage, find a second representative of a pumped value there, and
/// lift both words back to the candidate.
fn pumping_search(
    candidate: &Nfa,
    eval: &EvalMap<FtAction>,
    budget: &Budget,
    counter: &mut Counter,
    trace: &mut Vec<String>,
) -> Result<Option<Refutation>, VerifyError> {
    let stages = normalize_pipeline(candidate);
    let l4 = stages[3].to_dfa().minimize();
    let s = l4.num_states();
    trace.push(format!("pipeline: last stage has {s} states"));
    let alpha = match 1usize.checked_shl(s as u32) {
        Some(a) if a <= budget.pump_cap => a,
        _ => {
            trace.push(format!("pumping skipped: 2^{s} exceeds the cap {}", budget.pump_cap));
            return Ok(None);
        }
    };
    let sym = Sym::new;
    let mut blocks = vec![Block::One(sym("p00"))];
    blocks.extend(std::iter::repeat_n(Block::One(sym("x")), alpha));
    blocks.push(Block::Star(vec![sym("y"), sym("y'")]));
    blocks.push(Block::Star(vec![sym("z"), sym("z'")]));
    let a7: Vec<Sym> = GeneratorA7::ALL.iter().map(|g| g.sym()).collect();
    let slice = crate::lang::intersect(&stages[3], &Nfa::from_blocks(a7, &blocks)).to_dfa();
    let target = Elem::<FtAction>::new(MtElement::Point(TPoint::p(alpha as u32, s as i64)), 0);
    let horizon = 1 + alpha + 4 * s + 4;
    let Some(w0) = word_with_value(&slice, eval, &target, horizon, counter) else {
        trace.push(format!("no representative of P:{alpha},{s} in the last stage"));
        return Ok(None);
    };
    trace.push(format!("P:{alpha},{s} represented by [{}]", show_word(&w0)));
    let x_end = 1 + alpha;
    let z_start = w0
        .iter()
        .position(|a| a.name() == "z" || a.name() == "z'")
        .unwrap_or(w0.len());
    let cfg = VerifyConfig::new(0, 0, 0);
    for (label, lo, hi) in [("x", 1, x_end), ("z", z_start, w0.len())] {
        let Some((i, j)) = pump_segment(&l4, &w0, lo, hi) else { continue };
        for k in [0usize, 2] {
            let mut pumped: Word = w0[..i].to_vec();
            for _ in 0..k {
                pumped.extend_from_slice(&w0[i..j]);
            }
            pumped.extend_from_slice(&w0[j..]);
            if !l4.contains(&pumped) {
                continue;
            }
            let e = eval.eval(&pumped)?;
            if !counter.spend(pumped.len() as u64 * 64) {
                return Ok(None);
            }
            let Some(other) = find_other_representative(&l4, eval, &pumped, pumped.len() + 2, &cfg)? else {
                continue;
            };
            trace.push(format!(
                "pumped the {label} block ({} copies of [{}]): [{}] and [{}] both give {}",
                k,
                show_word(&w0[i..j]),
                show_word(&pumped),
                show_word(&other),
                eval.render(&e)
            ));
            let slack = budget.max_len.max(4);
            let (Some(c1), Some(c2)) = (
                lift(&stages, candidate, &pumped, slack),
                lift(&stages, candidate, &other, slack),
            ) else {
                trace.push("could not lift the pair back to the candidate".into());
                continue;
            };
            let (v1, v2) = (eval.eval(&c1)?, eval.eval(&c2)?);
            if c1 != c2 && v1 == v2 {
                trace.push(format!("lifted to [{}] and [{}]", show_word(&c1), show_word(&c2)));
                return Ok(Some(collision_refutation(c1, c2, eval.render(&v1), trace.clone())));
            }
        }
    }
    trace.push("pumping found no lifted collision".into());
    Ok(None)
}

/// Longest accepted word, or `None` when the language is infinite.
fn longest_word(dfa: &Dfa) -> Option<usize> {
    let n = dfa.num_states();
    let Some(start) = dfa.start() else {
        return Some(0);
    };
    // Every state of a trimmed DFA is live, so any cycle makes the language
    // infinite.
    let mut memo: Vec<Option<usize>> = vec![None; n];
    let mut on_stack = vec![false; n];
    fn go(s: usize, d: &Dfa, memo: &mut Vec<Option<usize>>, on_stack: &mut Vec<bool>) -> Option<usize> {
        if let Some(v) = memo[s] {
            return Some(v);
        }
        if on_stack[s] {
            return None;
        }
        on_stack[s] = true;
        let mut best = 0;
        for &a in Stepper::alphabet(d) {
            if let Some(t) = d.next(s, a) {
                best = best.max(go(t, d, memo, on_stack)? + 1);
            }
        }
        on_stack[s] = false;
        memo[s] = Some(best);
        Some(best)
    }
    go(start, dfa, &mut memo, &mut on_stack)
}

/// Searches for a certificate that `candidate` is not a cross-section of
/// `F[T]` over `{x, y, y', z, z', p00, Omega}`.
pub fn refute_regular_cross_section(
    candidate: &Nfa,
    budget: &Budget,
) -> Result<RefuteOutcome, VerifyError> {
    let eval = EvalMap::ft();
    let dfa = candidate.to_dfa();
    let mut counter = Counter {
        used: 0,
        cap: budget.evaluations,
    };
    let mut strategies = Vec::new();

    if let Some(r) = collision_search(&dfa, &eval, budget, &mut counter)? {
        r.recheck(candidate)?;
        return Ok(RefuteOutcome::Refuted(r));
    }
    strategies.push(format!("collision search up to length {}", budget.max_len));

    let mut trace = Vec::new();
    if counter.used < counter.cap {
        if let Some(r) = pumping_search(candidate, &eval, budget, &mut counter, &mut trace)? {
            r.recheck(candidate)?;
            return Ok(RefuteOutcome::Refuted(r));
        }
    }
    strategies.push(format!("pumping: {}", trace.join("; ")));

    if counter.used < counter.cap {
        let mut cfg = VerifyConfig::new(budget.radius, budget.max_len.max(budget.radius), 0);
        cfg.check_injectivity = false;
        let r = structured_report(&dfa, &BTreeSet::new(), &eval, &cfg, "candidate")?;
        counter.spend(r.stats.explored);
        if let Some(m) = r.missing.into_iter().next() {
            let conclusive = longest_word(&dfa).is_some_and(|n| n <= cfg.search_len);
            let r = Refutation {
                kind: RefutationKind::Missing,
                w1: m.witness,
                w2: None,
                element: m.element,
                conclusive,
                trace: vec![format!(
                    "no representative up to length {} for a radius-{} element",
                    cfg.search_len, budget.radius
                )],
            };
            r.recheck(candidate)?;
            return Ok(RefuteOutcome::Refuted(r));
        }
        strategies.push(format!("coverage at radius {}", budget.radius));
    }

    Ok(RefuteOutcome::NotFound {
        strategies,
        evaluations: counter.used,
    })
}

/// Regular languages that are not cross-sections, each with short
/// collisions: the free words and `Omega` together with
///
/// 1. `p00 x* (y* ∪ y'*) (z* ∪ z'*)`,
/// 2. `p00 x* y* z*`,
/// 3. `p00 y* x*` (its collisions are all duplicates of `Ω`).
pub fn bad_candidates() -> Vec<(&'static str, Nfa)> {
    let s = Sym::new;
    let a7: Vec<Sym> = GeneratorA7::ALL.iter().map(|g| g.sym()).collect();
    let free: Vec<Sym> = a7.iter().copied().filter(|x| !matches!(x.name(), "p00" | "Omega")).collect();
    let base = crate::lang::union(
        &Nfa::from_blocks(a7.clone(), &[Block::Star(free)]),
        &Nfa::from_words(a7.clone(), [[s("Omega")].as_slice()]),
    );
    let fam = |blocks: &[Block]| crate::lang::union(&base, &Nfa::from_blocks(a7.clone(), blocks));
    let p = Block::One(s("p00"));
    let st = |n: &[&str]| Block::Star(n.iter().map(|x| s(x)).collect());
    let mut first = Nfa::empty(a7.clone());
    for y in ["y", "y'"] {
        for z in ["z", "z'"] {
            first = crate::lang::union(
                &first,
                &Nfa::from_blocks(a7.clone(), &[p.clone(), st(&["x"]), st(&[y]), st(&[z])]),
            );
        }
    }
    vec![
        ("split-blocks", crate::lang::union(&base, &first)),
        ("superset", fam(&[p.clone(), st(&["x"]), st(&["y"]), st(&["z"])])),
        ("omega-duplicates", fam(&[p, st(&["y"]), st(&["x"])])),
    ]
}
