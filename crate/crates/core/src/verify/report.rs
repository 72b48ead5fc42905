//! Verification reports and certificate re-checking.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::eval::EvalMap;
use super::VerifyError;
use crate::monoid::Action;
use crate::sym::{show_word, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Collision,
    Missing,
    Both,
}

/// Two distinct accepted words with the same value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Collision {
    pub w1: Word,
    pub w2: Word,
    pub element: String,
}

/// A ball element without an accepted representative within the search
/// bound, with a generator word evaluating to it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Missing {
    pub element: String,
    pub witness: Word,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stats {
    pub method: String,
    pub language: String,
    pub radius: usize,
    pub search_len: usize,
    pub max_len: usize,
    pub ball_size: usize,
    /// Words enumerated, or search nodes visited by the structured engine.
    pub explored: u64,
    pub elements_covered: usize,
    /// True when the collision list was truncated.
    pub collisions_capped: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub status: Status,
    pub collisions: Vec<Collision>,
    pub missing: Vec<Missing>,
    pub stats: Stats,
}

/// Shorter words first, then lexicographic by symbol name.
pub fn shortlex(a: &Word, b: &Word) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

impl Collision {
    /// Orders the pair so that `w1` precedes `w2`.
    pub fn new(a: Word, b: Word, element: String) -> Collision {
        let (w1, w2) = if shortlex(&a, &b) == Ordering::Greater {
            (b, a)
        } else {
            (a, b)
        };
        Collision { w1, w2, element }
    }
}

impl VerificationReport {
    pub fn new(mut collisions: Vec<Collision>, mut missing: Vec<Missing>, stats: Stats) -> Self {
        collisions.sort_by(|a, b| shortlex(&a.w1, &b.w1).then_with(|| shortlex(&a.w2, &b.w2)));
        collisions.dedup();
        missing.sort_by(|a, b| shortlex(&a.witness, &b.witness).then_with(|| a.element.cmp(&b.element)));
        missing.dedup();
        let status = match (collisions.is_empty(), missing.is_empty()) {
            (true, true) => Status::Pass,
            (false, true) => Status::Collision,
            (true, false) => Status::Missing,
            (false, false) => Status::Both,
        };
        VerificationReport {
            status,
            collisions,
            missing,
            stats,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, VerifyError> {
        serde_json::from_str(text).map_err(|e| VerifyError::Json(e.to_string()))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let s = &self.stats;
        out.push_str(&format!("status: {:?}\n", self.status).to_lowercase());
        out.push_str(&format!(
            "language: {}  method: {}  radius: {}  search_len: {}  max_len: {}\n",
            s.language, s.method, s.radius, s.search_len, s.max_len
        ));
        out.push_str(&format!(
            "ball: {} elements, {} covered, {} explored\n",
            s.ball_size, s.elements_covered, s.explored
        ));
        for c in &self.collisions {
            out.push_str(&format!(
                "collision {}: [{}] = [{}]\n",
                c.element,
                show_word(&c.w1),
                show_word(&c.w2)
            ));
        }
        if s.collisions_capped {
            out.push_str("(collision list truncated)\n");
        }
        for m in &self.missing {
            out.push_str(&format!("missing {} (witness [{}])\n", m.element, show_word(&m.witness)));
        }
        for n in &s.notes {
            out.push_str(&format!("note: {n}\n"));
        }
        out
    }

    /// Re-evaluates every certificate. Membership of collision words is
    /// checked when `member` is supplied.
    pub fn recheck<A: Action>(
        &self,
        eval: &EvalMap<A>,
        member: Option<&dyn Fn(&[crate::sym::Sym]) -> bool>,
    ) -> Result<(), VerifyError> {
        for c in &self.collisions {
            let bad = |why: &str| {
                VerifyError::Unsound(format!(
                    "collision [{}] / [{}]: {why}",
                    show_word(&c.w1),
                    show_word(&c.w2)
                ))
            };
            if c.w1 == c.w2 {
                return Err(bad("words are equal"));
            }
            let e1 = eval.eval(&c.w1)?;
            let e2 = eval.eval(&c.w2)?;
            if e1 != e2 {
                return Err(bad("values differ"));
            }
            if eval.render(&e1) != c.element {
                return Err(bad("element label does not match"));
            }
            if let Some(m) = member {
                if !m(&c.w1) || !m(&c.w2) {
                    return Err(bad("word not in the language"));
                }
            }
        }
        for m in &self.missing {
            let e = eval.eval(&m.witness)?;
            if eval.render(&e) != m.element {
                return Err(VerifyError::Unsound(format!(
                    "missing {}: witness [{}] evaluates to {}",
                    m.element,
                    show_word(&m.witness),
                    eval.render(&e)
                )));
            }
        }
        Ok(())
    }
}
