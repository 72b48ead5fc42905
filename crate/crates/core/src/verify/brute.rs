//! Verification by explicit enumeration: evaluate every word, group by value.
//!
//! Exponential in the length bound, so only usable for small bounds or sparse
//! languages; it is also the independent reference for the structured engine.

use std::collections::{HashMap, HashSet};

use super::eval::{Elem, EvalMap};
use super::report::{shortlex, Collision, Missing, Stats, VerificationReport};
use super::{VerifyConfig, VerifyError};
use crate::monoid::Action;
use crate::par;
use crate::sym::Word;

/// Checks the words of a language, given as the complete list of its words of
/// length at most `max(search_len, max_len)`.
pub fn brute_report<A: Action>(
    words: &[Word],
    eval: &EvalMap<A>,
    cfg: &VerifyConfig,
    label: &str,
) -> Result<VerificationReport, VerifyError> {
    let values: Vec<Result<Elem<A>, VerifyError>> = par::map(cfg.exec, words, |w| eval.eval(w));
    let mut groups: HashMap<Elem<A>, Vec<usize>> = HashMap::new();
    let mut reached: HashSet<Elem<A>> = HashSet::new();
    for (i, v) in values.into_iter().enumerate() {
        let v = v?;
        let len = words[i].len();
        if len <= cfg.search_len {
            reached.insert(v.clone());
        }
        if len <= cfg.max_len {
            groups.entry(v).or_default().push(i);
        }
    }

    let mut collisions = Vec::new();
    if cfg.check_injectivity {
        for (e, mut idx) in groups {
            if idx.len() < 2 {
                continue;
            }
            idx.sort_by(|&a, &b| shortlex(&words[a], &words[b]));
            collisions.push(Collision::new(
                words[idx[0]].clone(),
                words[idx[1]].clone(),
                eval.render(&e),
            ));
        }
    }

    let mut missing = Vec::new();
    let mut ball_size = 0;
    let mut covered = 0;
    if cfg.check_coverage {
        let ball = eval.ball(cfg.radius);
        ball_size = ball.len();
        for (e, witness) in ball {
            if reached.contains(&e) {
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
        method: "enumeration".into(),
        language: label.to_owned(),
        radius: cfg.radius,
        search_len: cfg.search_len,
        max_len: cfg.max_len,
        ball_size,
        explored: words.len() as u64,
        elements_covered: covered,
        ..Default::default()
    };
    Ok(super::finish(collisions, missing, stats, cfg))
}
