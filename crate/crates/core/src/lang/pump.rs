//! Pumping decompositions read off a DFA run.

use super::nfa::Dfa;
use super::LangError;
use crate::sym::{Sym, Word};

/// Splits an accepted `w` as `p q r` with `|p q| ≤ #states` and `|q| ≥ 1`,
/// such that `p qⁱ r` stays accepted. The split is the first repeated state
/// on the run; `i ∈ {0, 1, 2}` is re-checked before returning.
pub fn pump_decompose(dfa: &Dfa, w: &[Sym]) -> Result<(Word, Word, Word), LangError> {
    let n = dfa.num_states();
    if w.len() < n {
        return Err(LangError::Pump(format!(
            "word of length {} is shorter than the {n} states",
            w.len()
        )));
    }
    if !dfa.contains(w) {
        return Err(LangError::Pump("word is not accepted".into()));
    }
    let (i, j) = pump_segment(dfa, w, 0, w.len())
        .ok_or_else(|| LangError::Pump("no repeated state on the run".into()))?;
    let (p, q, r) = (w[..i].to_vec(), w[i..j].to_vec(), w[j..].to_vec());
    for k in [0usize, 1, 2] {
        let mut v = p.clone();
        for _ in 0..k {
            v.extend_from_slice(&q);
        }
        v.extend_from_slice(&r);
        if !dfa.contains(&v) {
            return Err(LangError::Pump(format!("pumped word with exponent {k} rejected")));
        }
    }
    Ok((p, q, r))
}

/// Positions `start ≤ i < j ≤ end` such that the run of `w` visits the same
/// state after `w[..i]` and after `w[..j]`, with `j` as small as possible.
pub fn pump_segment(dfa: &Dfa, w: &[Sym], start: usize, end: usize) -> Option<(usize, usize)> {
    let mut s = dfa.start()?;
    let mut states = Vec::with_capacity(w.len() + 1);
    states.push(s);
    for &a in w {
        s = dfa.next(s, a)?;
        states.push(s);
    }
    let end = end.min(w.len());
    for j in start + 1..=end {
        if let Some(i) = (start..j).find(|&i| states[i] == states[j]) {
            return Some((i, j));
        }
    }
    None
}
