//! A uniform handle over the supported language representations.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::{Arc, Mutex};

use super::et0l::Et0lSystem;
use super::nfa::{self, Nfa};
use super::ocm::OneCounterMachine;
use crate::sym::{Sym, Word};

type MemberFn = Arc<dyn Fn(&[Sym]) -> bool + Send + Sync>;
type EnumFn = Arc<dyn Fn(usize) -> BTreeSet<Word> + Send + Sync>;

/// A language given by a membership predicate over a finite alphabet.
///
/// Enumeration uses the supplied enumerator when present and otherwise
/// filters all words over the alphabet.
#[derive(Clone)]
pub struct OracleLang {
    pub name: String,
    alphabet: Vec<Sym>,
    member: MemberFn,
    enumerator: Option<EnumFn>,
}

impl OracleLang {
    pub fn new(
        name: impl Into<String>,
        alphabet: impl IntoIterator<Item = Sym>,
        member: impl Fn(&[Sym]) -> bool + Send + Sync + 'static,
    ) -> OracleLang {
        let mut alphabet: Vec<Sym> = alphabet.into_iter().collect();
        alphabet.sort();
        alphabet.dedup();
        OracleLang {
            name: name.into(),
            alphabet,
            member: Arc::new(member),
            enumerator: None,
        }
    }

    /// Attaches a faster exact enumerator.
    pub fn with_enumerator(
        mut self,
        f: impl Fn(usize) -> BTreeSet<Word> + Send + Sync + 'static,
    ) -> OracleLang {
        self.enumerator = Some(Arc::new(f));
        self
    }

    pub fn alphabet(&self) -> &[Sym] {
        &self.alphabet
    }

    pub fn contains(&self, w: &[Sym]) -> bool {
        (self.member)(w)
    }

    pub fn enumerate(&self, max_len: usize) -> BTreeSet<Word> {
        if let Some(f) = &self.enumerator {
            return f(max_len);
        }
        let mut out = BTreeSet::new();
        let mut layer: Vec<Word> = vec![Vec::new()];
        for len in 0..=max_len {
            for w in &layer {
                if self.contains(w) {
                    out.insert(w.clone());
                }
            }
            if len == max_len {
                break;
            }
            layer = layer
                .iter()
                .flat_map(|w| {
                    self.alphabet.iter().map(move |&a| {
                        let mut v = w.clone();
                        v.push(a);
                        v
                    })
                })
                .collect();
        }
        out
    }
}

impl fmt::Debug for OracleLang {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Oracle({})", self.name)
    }
}

/// An ET0L system with membership by bounded generation. Generated sets are
/// cached by length bound.
pub struct Et0lLang {
    pub system: Et0lSystem,
    /// Extra length allowed for intermediate sentential forms.
    pub slack: usize,
    cache: Mutex<Option<(usize, Arc<BTreeSet<Word>>)>>,
}

impl Et0lLang {
    pub fn new(system: Et0lSystem) -> Et0lLang {
        Et0lLang {
            system,
            slack: 3,
            cache: Mutex::new(None),
        }
    }

    fn generated(&self, max_len: usize) -> Arc<BTreeSet<Word>> {
        let mut cache = self.cache.lock().unwrap_or_else(|e| e.into_inner());
        if let Some((n, set)) = cache.as_ref() {
            if *n >= max_len {
                return Arc::clone(set);
            }
        }
        let set = Arc::new(
            self.system
                .generate(max_len, max_len + self.slack)
                .expect("prune bound exceeds max_len"),
        );
        *cache = Some((max_len, Arc::clone(&set)));
        set
    }

    pub fn contains(&self, w: &[Sym]) -> bool {
        self.generated(w.len()).contains(w)
    }

    pub fn enumerate(&self, max_len: usize) -> BTreeSet<Word> {
        self.generated(max_len)
            .iter()
            .filter(|w| w.len() <= max_len)
            .cloned()
            .collect()
    }
}

impl Clone for Et0lLang {
    fn clone(&self) -> Self {
        Et0lLang {
            system: self.system.clone(),
            slack: self.slack,
            cache: Mutex::new(None),
        }
    }
}

impl fmt::Debug for Et0lLang {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Et0l({:?})", self.system.axiom())
    }
}

#[derive(Clone, Debug)]
pub enum LanguageRep {
    Regular(Nfa),
    OneCounter(OneCounterMachine),
    Et0l(Et0lLang),
    Oracle(OracleLang),
}

impl LanguageRep {
    pub fn et0l(system: Et0lSystem) -> LanguageRep {
        LanguageRep::Et0l(Et0lLang::new(system))
    }

    pub fn alphabet(&self) -> Vec<Sym> {
        match self {
            LanguageRep::Regular(n) => n.alphabet().to_vec(),
            LanguageRep::OneCounter(m) => m.alphabet().to_vec(),
            LanguageRep::Et0l(e) => e.system.terminals().to_vec(),
            LanguageRep::Oracle(o) => o.alphabet().to_vec(),
        }
    }

    pub fn contains(&self, w: &[Sym]) -> bool {
        match self {
            LanguageRep::Regular(n) => n.contains(w),
            LanguageRep::OneCounter(m) => m.contains(w),
            LanguageRep::Et0l(e) => e.contains(w),
            LanguageRep::Oracle(o) => o.contains(w),
        }
    }

    pub fn enumerate(&self, max_len: usize) -> BTreeSet<Word> {
        match self {
            LanguageRep::Regular(n) => n.enumerate(max_len),
            LanguageRep::OneCounter(m) => m.enumerate(max_len),
            LanguageRep::Et0l(e) => e.enumerate(max_len),
            LanguageRep::Oracle(o) => o.enumerate(max_len),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            LanguageRep::Regular(_) => "regular",
            LanguageRep::OneCounter(_) => "one-counter",
            LanguageRep::Et0l(_) => "et0l",
            LanguageRep::Oracle(_) => "oracle",
        }
    }
}

/// `lang ∪ L(r)`. Regular and one-counter inputs keep their class.
pub fn union_with_regular(lang: &LanguageRep, r: &Nfa) -> LanguageRep {
    match lang {
        LanguageRep::Regular(n) => LanguageRep::Regular(nfa::union(n, r)),
        LanguageRep::OneCounter(m) => LanguageRep::OneCounter(m.union_nfa(r)),
        other => {
            let inner = other.clone();
            let reg = r.clone();
            let alphabet: Vec<Sym> = inner.alphabet().into_iter().chain(r.alphabet().iter().copied()).collect();
            let (inner2, reg2) = (inner.clone(), reg.clone());
            LanguageRep::Oracle(
                OracleLang::new(
                    format!("{} ∪ regular", inner.kind()),
                    alphabet,
                    move |w| inner.contains(w) || reg.contains(w),
                )
                .with_enumerator(move |n| {
                    let mut s = inner2.enumerate(n);
                    s.extend(reg2.enumerate(n));
                    s
                }),
            )
        }
    }
}
