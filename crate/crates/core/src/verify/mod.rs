//! Bounded verification of cross-section claims, the built-in instances,
//! the GSM normalization pipeline and the refutation search.

pub mod brute;
pub mod builtins;
pub mod eval;
pub mod pipeline;
pub mod refute;
pub mod report;
pub mod structured;

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::lang::{hom_image, Guard, LangError, LanguageRep, OneCounterMachine, OracleLang};
use crate::monoid::Action;
use crate::par::Exec;
use crate::sym::{Sym, Word};

pub use eval::{Elem, EvalMap};
pub use report::{Collision, Missing, Stats, Status, VerificationReport};

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("symbol `{0}` is not a generator")]
    UnknownSymbol(String),
    #[error("{0}")]
    Invalid(String),
    #[error("report JSON: {0}")]
    Json(String),
    #[error("unsound certificate: {0}")]
    Unsound(String),
    #[error(transparent)]
    Lang(#[from] LangError),
}

/// Bounds and execution mode for a verification run.
#[derive(Clone, Debug)]
pub struct VerifyConfig {
    /// Ball radius for coverage.
    pub radius: usize,
    /// Representatives are searched up to this length.
    pub search_len: usize,
    /// Collisions are searched among words up to this length.
    pub max_len: usize,
    /// At most this many collisions are reported.
    pub collision_cap: usize,
    pub exec: Exec,
    pub check_injectivity: bool,
    pub check_coverage: bool,
}

impl VerifyConfig {
    pub fn new(radius: usize, search_len: usize, max_len: usize) -> Self {
        VerifyConfig {
            radius,
            search_len,
            max_len,
            collision_cap: 1000,
            exec: Exec::default(),
            check_injectivity: true,
            check_coverage: true,
        }
    }

    pub fn with_exec(mut self, exec: Exec) -> Self {
        self.exec = exec;
        self
    }
}

pub(crate) fn finish(
    collisions: Vec<Collision>,
    missing: Vec<Missing>,
    mut stats: Stats,
    cfg: &VerifyConfig,
) -> VerificationReport {
    let mut r = VerificationReport::new(collisions, missing, Stats::default());
    if r.collisions.len() > cfg.collision_cap {
        r.collisions.truncate(cfg.collision_cap);
        stats.collisions_capped = true;
    }
    r.stats = stats;
    r
}

/// Verifies `lang` against `eval` under `cfg`, choosing the structured
/// engine for automata and one-counter machines and enumeration otherwise.
/// Every certificate is re-checked before the report is returned.
pub fn verify_with<A: Action>(
    lang: &LanguageRep,
    eval: &EvalMap<A>,
    cfg: &VerifyConfig,
) -> Result<VerificationReport, VerifyError> {
    if cfg.search_len < cfg.radius && cfg.check_coverage {
        return Err(VerifyError::Invalid(format!(
            "search_len {} is below the radius {}",
            cfg.search_len, cfg.radius
        )));
    }
    let none = BTreeSet::new();
    let report = match lang {
        LanguageRep::Regular(n) => {
            structured::structured_report(&n.to_dfa(), &none, eval, cfg, "regular")?
        }
        LanguageRep::OneCounter(m) => structured::structured_report(m, &none, eval, cfg, "one-counter")?,
        other => {
            let horizon = cfg.max_len.max(cfg.search_len);
            let words: Vec<Word> = other.enumerate(horizon).into_iter().collect();
            brute::brute_report(&words, eval, cfg, other.kind())?
        }
    };
    report.recheck(eval, Some(&|w: &[Sym]| lang.contains(w)))?;
    Ok(report)
}

/// Pairs of distinct words of length at most `max_len` with equal values.
pub fn verify_injectivity<A: Action>(
    lang: &LanguageRep,
    eval: &EvalMap<A>,
    max_len: usize,
) -> Result<Vec<Collision>, VerifyError> {
    let mut cfg = VerifyConfig::new(0, 0, max_len);
    cfg.check_coverage = false;
    Ok(verify_with(lang, eval, &cfg)?.collisions)
}

/// Ball elements without a representative of length at most `search_len`.
pub fn verify_coverage<A: Action>(
    lang: &LanguageRep,
    eval: &EvalMap<A>,
    radius: usize,
    search_len: usize,
) -> Result<Vec<Missing>, VerifyError> {
    let mut cfg = VerifyConfig::new(radius, search_len, 0);
    cfg.check_injectivity = false;
    Ok(verify_with(lang, eval, &cfg)?.missing)
}

pub fn verify_cross_section<A: Action>(
    lang: &LanguageRep,
    eval: &EvalMap<A>,
    radius: usize,
    search_len: usize,
    max_len: usize,
) -> Result<VerificationReport, VerifyError> {
    verify_with(lang, eval, &VerifyConfig::new(radius, search_len, max_len))
}

/// Image of a language over `B` under a homomorphism into words over `A`.
///
/// Regular languages stay regular and one-counter machines stay one-counter
/// when no generator is erased; other inputs become oracles whose membership
/// searches preimages by enumeration.
pub fn retarget(lang: &LanguageRep, hom: &BTreeMap<Sym, Word>) -> Result<LanguageRep, VerifyError> {
    for s in lang.alphabet() {
        if !hom.contains_key(&s) {
            return Err(VerifyError::Lang(LangError::HomUndefined(s.name().to_owned())));
        }
    }
    match lang {
        LanguageRep::Regular(n) => Ok(LanguageRep::Regular(hom_image(n, hom)?)),
        LanguageRep::OneCounter(m) if hom.values().all(|w| !w.is_empty()) => {
            Ok(LanguageRep::OneCounter(ocm_hom_image(m, hom)))
        }
        other => {
            let inner = other.clone();
            let inner2 = other.clone();
            let h = hom.clone();
            let h2 = hom.clone();
            let erasing = hom.values().any(|w| w.is_empty());
            let image = move |l: &LanguageRep, n: usize, h: &BTreeMap<Sym, Word>| -> BTreeSet<Word> {
                l.enumerate(n)
                    .into_iter()
                    .map(|u| u.iter().flat_map(|s| h[s].iter().copied()).collect::<Word>())
                    .filter(|w: &Word| w.len() <= n)
                    .collect()
            };
            let target: Vec<Sym> = hom.values().flatten().copied().collect();
            let mut oracle = OracleLang::new("retargeted", target, move |w: &[Sym]| {
                image(&inner, w.len(), &h).contains(w)
            });
            if !erasing {
                oracle = oracle.with_enumerator(move |n| image(&inner2, n, &h2));
            }
            Ok(LanguageRep::Oracle(oracle))
        }
    }
}

fn ocm_hom_image(m: &OneCounterMachine, hom: &BTreeMap<Sym, Word>) -> OneCounterMachine {
    let target: Vec<Sym> = hom.values().flatten().copied().collect();
    let mut out = OneCounterMachine::new(target, m.state_name(m.initial()), m.zero_acceptance());
    let mut ids = vec![0usize; m.num_states()];
    for s in 0..m.num_states() {
        if s != m.initial() {
            ids[s] = out.add_state(m.state_name(s).to_owned());
        }
    }
    for s in 0..m.num_states() {
        out.set_accepting(ids[s], m.is_accepting(s));
    }
    for s in 0..m.num_states() {
        for t in m.transitions_from(s) {
            let w = &hom[&t.symbol];
            let mut cur = ids[s];
            for (i, &a) in w.iter().enumerate() {
                let last = i + 1 == w.len();
                let next = if last {
                    ids[t.to]
                } else {
                    out.add_state(format!("{}~{}~{i}", m.state_name(s), t.symbol))
                };
                let (guard, delta) = if i == 0 { (t.guard, t.delta) } else { (Guard::Any, 0) };
                out.add_transition(cur, a, guard, delta, next)
                    .expect("delta copied from a valid machine");
                cur = next;
            }
        }
    }
    out
}
