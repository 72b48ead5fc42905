//! From a language `K` over `B`, the monoid `F[T]_K` over the generators
//! `B ∪ {z, p_eps, Omega}` and its cross-section
//!
//! ```text
//! L_K = (B ∪ {z})* ∪ p_eps B* ∪ p_eps K z ∪ {Omega}
//! ```
//!
//! The free monoid on `B ∪ {z}` acts on `T = {p_u} ∪ {q_u : u ∈ K} ∪ {Ω}` by
//! `p_u·b = p_ub`, `p_u·z = q_u` when `u ∈ K` (else `Ω`), and sends `q_u` and
//! `Ω` to `Ω` under every letter. The words `p_eps u z` of `L_K` are exactly
//! the representatives of the points `q_u`, so [`extract_k`] reads `K` back
//! off any cross-section of this shape.

pub mod builtin;
pub mod descriptor;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::lang::{concat, intersect, union, Block, LangError, LanguageRep, Nfa, OracleLang};
use crate::monoid::{generic_mt, ActionSpec, MtElement, ShiftedElement};
use crate::par::{self, Exec};
use crate::sym::{Sym, Word};
use crate::verify::structured::structured_report;
use crate::verify::{EvalMap, VerificationReport, VerifyConfig, VerifyError};

pub use builtin::{anbncn_oracle, builtin_k, copy_reverse, dyck, BUILTIN_NAMES};
pub use descriptor::{InstanceDescriptor, KSource};

/// Names of the three extra generators.
pub const Z: &str = "z";
pub const P_EPS: &str = "p_eps";
pub const OMEGA: &str = "Omega";

/// Non-emptiness of `K` is probed up to this length.
pub const K_PROBE_LEN: usize = 12;

#[derive(Debug, Error)]
pub enum SepError {
    #[error("generator `{0}` is reserved and cannot be a letter of B")]
    AlphabetClash(String),
    #[error("letter `{0}` of K is not in B")]
    NotInB(String),
    #[error("unknown built-in language `{0}` (expected one of copy-reverse, www, anbncn, dyck)")]
    UnknownBuiltin(String),
    #[error("instance descriptor: {0}")]
    Descriptor(String),
    #[error(transparent)]
    Lang(#[from] LangError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
}

/// A point of `T`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SepPoint {
    Pu(Word),
    /// Only built for `u ∈ K`.
    Qu(Word),
    OmegaS,
}

fn render_u(u: &[Sym]) -> String {
    if u.is_empty() {
        return "ε".to_owned();
    }
    u.iter().map(|s| s.name()).collect::<Vec<_>>().join(".")
}

impl fmt::Display for SepPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SepPoint::Pu(u) => write!(f, "P:{}", render_u(u)),
            SepPoint::Qu(u) => write!(f, "Q:{}", render_u(u)),
            SepPoint::OmegaS => f.write_str("OMEGA"),
        }
    }
}

pub type SepAction = ActionSpec<SepPoint, Sym>;

/// The monoid, its cross-section and the language `K` it was built from.
#[derive(Clone)]
pub struct SepInstance {
    pub b: Vec<Sym>,
    pub k: Arc<LanguageRep>,
    pub eval: EvalMap<SepAction>,
    /// `L_K`.
    pub l_k: LanguageRep,
    /// `(B ∪ {z})* ∪ p_eps B* ∪ {Omega}`: the part of `L_K` not depending
    /// on `K`.
    pub regular_part: Nfa,
    /// Non-fatal remarks, such as `K` looking empty.
    pub warnings: Vec<String>,
}

impl fmt::Debug for SepInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SepInstance")
            .field("b", &self.b)
            .field("k", &self.k)
            .finish_non_exhaustive()
    }
}

/// `B ∪ {z, p_eps, Omega}`.
pub fn generator_alphabet(b: &[Sym]) -> Vec<Sym> {
    let mut a = b.to_vec();
    a.extend([Sym::new(Z), Sym::new(P_EPS), Sym::new(OMEGA)]);
    a
}

fn sep_eval(b: &[Sym], k: Arc<LanguageRep>) -> EvalMap<SepAction> {
    let z = Sym::new(Z);
    let act = move |p: &SepPoint, l: Sym| match p {
        SepPoint::Pu(u) if l == z => {
            if k.contains(u) {
                SepPoint::Qu(u.clone())
            } else {
                SepPoint::OmegaS
            }
        }
        SepPoint::Pu(u) => {
            let mut v = u.clone();
            v.push(l);
            SepPoint::Pu(v)
        }
        _ => SepPoint::OmegaS,
    };
    let mut letters = b.to_vec();
    letters.push(z);
    let spec = ActionSpec {
        letters: letters.clone(),
        act: Arc::new(act),
        absorbing: SepPoint::OmegaS,
        point_generators: vec![SepPoint::Pu(Vec::new()), SepPoint::OmegaS],
        free_separator: ".",
    };
    let monoid = generic_mt(spec).expect("Ω is absorbing by construction");
    let mut gens: Vec<(Sym, ShiftedElement<Sym, SepPoint>)> = letters
        .iter()
        .map(|&l| (l, ShiftedElement::new(MtElement::Free(vec![l]), 0)))
        .collect();
    gens.push((Sym::new(P_EPS), ShiftedElement::new(MtElement::Point(SepPoint::Pu(Vec::new())), 0)));
    gens.push((Sym::new(OMEGA), ShiftedElement::new(MtElement::Point(SepPoint::OmegaS), 0)));
    EvalMap::new(monoid, gens, false).expect("distinct generators")
}

fn single(alphabet: &[Sym], s: &str) -> Nfa {
    Nfa::from_blocks(alphabet.to_vec(), &[Block::One(Sym::new(s))])
}

/// `p_eps B* z` over the generator alphabet.
fn peps_b_z(b: &[Sym]) -> Nfa {
    let a = generator_alphabet(b);
    Nfa::from_blocks(
        a,
        &[Block::One(Sym::new(P_EPS)), Block::Star(b.to_vec()), Block::One(Sym::new(Z))],
    )
}

/// Builds the instance for `K ⊆ B*`.
pub fn build_sep_instance(b: Vec<Sym>, k: LanguageRep) -> Result<SepInstance, SepError> {
    let mut b = b;
    b.sort();
    b.dedup();
    for s in &b {
        if [Z, P_EPS, OMEGA].contains(&s.name()) {
            return Err(SepError::AlphabetClash(s.name().to_owned()));
        }
    }
    for s in k.alphabet() {
        if !b.contains(&s) {
            return Err(SepError::NotInB(s.name().to_owned()));
        }
    }
    let mut warnings = Vec::new();
    if k.enumerate(K_PROBE_LEN).is_empty() {
        warnings.push(format!("K has no words up to length {K_PROBE_LEN}"));
    }
    let a = generator_alphabet(&b);
    let mut free = b.clone();
    free.push(Sym::new(Z));
    let regular_part = union(
        &union(
            &Nfa::from_blocks(a.clone(), &[Block::Star(free)]),
            &Nfa::from_blocks(a.clone(), &[Block::One(Sym::new(P_EPS)), Block::Star(b.clone())]),
        ),
        &single(&a, OMEGA),
    );
    let k = Arc::new(k);
    let l_k = match k.as_ref() {
        LanguageRep::Regular(kn) => {
            let mut kn = kn.clone();
            kn.extend_alphabet(a.iter().copied());
            let fam = concat(&concat(&single(&a, P_EPS), &kn), &single(&a, Z));
            LanguageRep::Regular(union(&regular_part, &fam))
        }
        _ => {
            let (reg, reg2, k1, k2) = (regular_part.clone(), regular_part.clone(), k.clone(), k.clone());
            let (peps, z) = (Sym::new(P_EPS), Sym::new(Z));
            let member = move |w: &[Sym]| {
                reg.contains(w)
                    || (w.len() >= 2 && w[0] == peps && w[w.len() - 1] == z && k1.contains(&w[1..w.len() - 1]))
            };
            let enumerate = move |n: usize| {
                let mut out = reg2.enumerate(n);
                if n >= 2 {
                    for u in k2.enumerate(n - 2) {
                        let mut w = vec![peps];
                        w.extend(u);
                        w.push(z);
                        out.insert(w);
                    }
                }
                out
            };
            LanguageRep::Oracle(OracleLang::new("L_K", a.clone(), member).with_enumerator(enumerate))
        }
    };
    Ok(SepInstance {
        eval: sep_eval(&b, k.clone()),
        b,
        k,
        l_k,
        regular_part,
        warnings,
    })
}

/// Words `p_eps u z` for `u ∈ K`, `|u| ≤ max_len - 2`.
fn k_family(inst: &SepInstance, max_len: usize) -> BTreeSet<Word> {
    if max_len < 2 {
        return BTreeSet::new();
    }
    inst.k
        .enumerate(max_len - 2)
        .into_iter()
        .map(|u| {
            let mut w = vec![Sym::new(P_EPS)];
            w.extend(u);
            w.push(Sym::new(Z));
            w
        })
        .collect()
}

/// Bounded check that `L_K` is a cross-section of `F[T]_K`. The automaton
/// part goes through the structured verifier; the words `p_eps u z` are
/// enumerated from `K`.
pub fn verify_sep_cross_section(
    inst: &SepInstance,
    cfg: &VerifyConfig,
) -> Result<VerificationReport, SepError> {
    let horizon = cfg.max_len.max(cfg.search_len);
    let extra = k_family(inst, horizon);
    let mut report = structured_report(&inst.regular_part.to_dfa(), &extra, &inst.eval, cfg, "L_K")?;
    report.recheck(&inst.eval, Some(&|w: &[Sym]| inst.l_k.contains(w)))?;
    report
        .stats
        .notes
        .push("K is used through membership and enumeration only; its language class is not checked".into());
    report.stats.notes.extend(inst.warnings.iter().cloned());
    Ok(report)
}

/// `{u ∈ B* : |u| ≤ max_len, p_eps u z ∈ lang}`, where `B` is the alphabet
/// of `lang` without `z`, `p_eps` and `Omega`.
pub fn extract_k(lang: &LanguageRep, max_len: usize) -> BTreeSet<Word> {
    extract_k_with(lang, max_len, Exec::default())
}

pub fn extract_k_with(lang: &LanguageRep, max_len: usize, exec: Exec) -> BTreeSet<Word> {
    let b: Vec<Sym> = lang
        .alphabet()
        .into_iter()
        .filter(|s| ![Z, P_EPS, OMEGA].contains(&s.name()))
        .collect();
    let strip = |w: Word| w[1..w.len() - 1].to_vec();
    if let LanguageRep::Regular(n) = lang {
        return intersect(n, &peps_b_z(&b))
            .enumerate(max_len + 2)
            .into_iter()
            .map(strip)
            .collect();
    }
    let (peps, z) = (Sym::new(P_EPS), Sym::new(Z));
    let mut out = BTreeSet::new();
    let mut layer: Vec<Word> = vec![Vec::new()];
    for len in 0..=max_len {
        let hits = par::map(exec, &layer, |u| {
            let mut w = Vec::with_capacity(u.len() + 2);
            w.push(peps);
            w.extend_from_slice(u);
            w.push(z);
            lang.contains(&w)
        });
        out.extend(layer.iter().zip(hits).filter(|(_, h)| *h).map(|(u, _)| u.clone()));
        if len < max_len {
            layer = layer
                .iter()
                .flat_map(|u| {
                    b.iter().map(move |&a| {
                        let mut v = u.clone();
                        v.push(a);
                        v
                    })
                })
                .collect();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sym::word;

    fn abc() -> SepInstance {
        let (b, k) = builtin_k("anbncn").unwrap();
        build_sep_instance(b, k).unwrap()
    }

    #[test]
    fn action_examples() {
        let inst = abc();
        let r = |w: &str| inst.eval.render(&inst.eval.eval(&word(w)).unwrap());
        assert_eq!(r("p_eps a b c z"), "Q:a.b.c");
        assert_eq!(r("p_eps a b z"), "OMEGA");
        assert_eq!(r("p_eps a b c z a"), "OMEGA");
        assert_eq!(r("a z p_eps a"), "P:a");
        assert_eq!(r("a z"), "F:a.z");
    }

    #[test]
    fn reserved_letters_are_rejected() {
        let k = LanguageRep::Regular(Nfa::empty(vec![Sym::new("z")]));
        assert!(matches!(
            build_sep_instance(vec![Sym::new("z")], k),
            Err(SepError::AlphabetClash(_))
        ));
    }

    #[test]
    fn empty_k_warns() {
        let b = vec![Sym::new("a")];
        let inst = build_sep_instance(b.clone(), LanguageRep::Regular(Nfa::empty(b))).unwrap();
        assert_eq!(inst.warnings.len(), 1);
    }

    #[test]
    fn regular_k_gives_regular_l_k() {
        let b = vec![Sym::new("a")];
        let k = Nfa::from_words(b.clone(), [word("a a").as_slice()]);
        let inst = build_sep_instance(b, LanguageRep::Regular(k)).unwrap();
        assert_eq!(inst.l_k.kind(), "regular");
        assert!(inst.l_k.contains(&word("p_eps a a z")));
        assert!(!inst.l_k.contains(&word("p_eps a z")));
        assert_eq!(extract_k(&inst.l_k, 5), BTreeSet::from([word("a a")]));
    }

    #[test]
    fn extraction_of_anbncn() {
        let inst = abc();
        let got = extract_k(&inst.l_k, 9);
        let want: BTreeSet<Word> = ["", "a b c", "a a b b c c", "a a a b b b c c c"]
            .iter()
            .map(|w| word(w))
            .collect();
        assert_eq!(got, want);
    }
}
