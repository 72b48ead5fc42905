//! Built-in choices of `K`.

use std::collections::BTreeSet;

use super::SepError;
use crate::lang::{Et0lSystem, LanguageRep, OracleLang};
use crate::sym::{syms, Sym, Word};

pub const BUILTIN_NAMES: [&str; 4] = ["copy-reverse", "www", "anbncn", "dyck"];

/// `(B, K)` for a built-in name. `copy-reverse` uses the even-length
/// palindromes over `{a, b}` as its base language.
pub fn builtin_k(name: &str) -> Result<(Vec<Sym>, LanguageRep), SepError> {
    match name {
        "copy-reverse" => Ok(copy_reverse(LanguageRep::Oracle(even_palindromes()))),
        "www" => Ok((syms(&["a", "b"]), LanguageRep::et0l(Et0lSystem::l2()))),
        "anbncn" => Ok((syms(&["a", "b", "c"]), LanguageRep::et0l(Et0lSystem::l3()))),
        "dyck" => Ok((syms(&["(", ")"]), LanguageRep::Oracle(dyck()))),
        other => Err(SepError::UnknownBuiltin(other.to_owned())),
    }
}

fn prime(s: Sym) -> Sym {
    Sym::new(&format!("{}'", s.name()))
}

/// `{w φ(w)^rev : w ∈ base}` over `{a, b, a', b'}`, where `φ` primes each
/// letter. `base` must be a language over `{a, b}`.
pub fn copy_reverse(base: LanguageRep) -> (Vec<Sym>, LanguageRep) {
    let x = syms(&["a", "b"]);
    let b: Vec<Sym> = x.iter().copied().chain(x.iter().map(|&s| prime(s))).collect();
    let (base1, x1) = (base.clone(), x.clone());
    let member = move |w: &[Sym]| {
        if w.len() % 2 != 0 {
            return false;
        }
        let (u, v) = w.split_at(w.len() / 2);
        u.iter().all(|s| x1.contains(s))
            && u.iter().rev().map(|&s| prime(s)).eq(v.iter().copied())
            && base1.contains(u)
    };
    let enumerate = move |n: usize| -> BTreeSet<Word> {
        base.enumerate(n / 2)
            .into_iter()
            .map(|u| {
                let mut w = u.clone();
                w.extend(u.iter().rev().map(|&s| prime(s)));
                w
            })
            .collect()
    };
    let k = OracleLang::new("copy-reverse", b.clone(), member).with_enumerator(enumerate);
    (b, LanguageRep::Oracle(k))
}

/// Even-length palindromes over `{a, b}`.
pub fn even_palindromes() -> OracleLang {
    OracleLang::new("even-palindromes", syms(&["a", "b"]), |w| {
        w.len() % 2 == 0 && w.iter().eq(w.iter().rev()) && w.iter().all(|s| matches!(s.name(), "a" | "b"))
    })
    .with_enumerator(|n| {
        let mut out = BTreeSet::new();
        let mut halves: Vec<Word> = vec![Vec::new()];
        for len in 0..=n / 2 {
            for h in &halves {
                let mut w = h.clone();
                w.extend(h.iter().rev());
                out.insert(w);
            }
            if len < n / 2 {
                halves = halves
                    .iter()
                    .flat_map(|h| syms(&["a", "b"]).into_iter().map(move |s| [h.clone(), vec![s]].concat()))
                    .collect();
            }
        }
        out
    })
}

/// `{aⁿbⁿcⁿ : n ≥ 0}` by direct inspection.
pub fn anbncn_oracle() -> OracleLang {
    OracleLang::new("anbncn", syms(&["a", "b", "c"]), |w| {
        let n = w.len() / 3;
        w.len() % 3 == 0
            && w[..n].iter().all(|s| s.name() == "a")
            && w[n..2 * n].iter().all(|s| s.name() == "b")
            && w[2 * n..].iter().all(|s| s.name() == "c")
    })
    .with_enumerator(|len| {
        (0..=len / 3)
            .map(|n| {
                ["a", "b", "c"]
                    .iter()
                    .flat_map(|l| std::iter::repeat_n(Sym::new(l), n))
                    .collect()
            })
            .collect()
    })
}

/// Balanced words over `(` and `)`.
pub fn dyck() -> OracleLang {
    OracleLang::new("dyck", syms(&["(", ")"]), |w| {
        let mut depth = 0i64;
        for s in w {
            depth += match s.name() {
                "(" => 1,
                ")" => -1,
                _ => return false,
            };
            if depth < 0 {
                return false;
            }
        }
        depth == 0
    })
}
