//! Independent reference evaluators and helpers shared by the integration
//! tests. They work on symbol names with machine integers and share no code
//! with the library's evaluators.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use crosssec::lang::{complement_over, intersect, Nfa};
use crosssec::{Sym, Word};
use rand::Rng;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Val {
    Free(Vec<String>),
    P(i64, i64),
    Omega,
}

fn pow2(a: i64) -> bool {
    a > 0 && a & (a - 1) == 0
}

/// One free letter on a point, from the defining table.
pub fn act(v: &Val, l: &str) -> Val {
    let (a, b) = match v {
        Val::P(a, b) => (*a, *b),
        other => return other.clone(),
    };
    match l {
        "x" if b == 0 => Val::P(a + 1, 0),
        "x" => Val::Omega,
        "y" | "y'" if !pow2(a) => Val::P(a, if l == "y" { b + 1 } else { b - 1 }),
        "y" | "y'" if b == 0 => Val::P(a, 0),
        "y" | "y'" => Val::Omega,
        "z" | "z'" if pow2(a) => Val::P(a, if l == "z" { b + 1 } else { b - 1 }),
        "z" | "z'" => Val::P(a, b),
        _ => panic!("not a free letter: {l}"),
    }
}

/// Value in `F[T]` of a word over `x y y' z z' p00 Omega`: free letters
/// concatenate, a point generator replaces everything before it, later
/// letters act on the point.
pub fn ft(w: &[Sym]) -> Val {
    let mut v = Val::Free(Vec::new());
    for s in w {
        v = match (s.name(), v) {
            ("p00", _) => Val::P(0, 0),
            ("Omega", _) => Val::Omega,
            (l, Val::Free(mut m)) => {
                m.push(l.to_owned());
                Val::Free(m)
            }
            (l, p) => act(&p, l),
        };
    }
    v
}

pub fn render(v: &Val) -> String {
    match v {
        Val::Free(m) if m.is_empty() => "F:ε".into(),
        Val::Free(m) => format!("F:{}", m.iter().map(|l| l.replace('\'', "′")).collect::<String>()),
        Val::P(a, b) => format!("P:{a},{b}"),
        Val::Omega => "OMEGA".into(),
    }
}

pub fn ft_str(w: &[Sym]) -> String {
    render(&ft(w))
}

/// Value in `F[T] × ℤ` of a word over the thirteen generators, rendered.
pub fn product_str(w: &[Sym]) -> String {
    let mut shift = 0i64;
    let mut image = Vec::new();
    for s in w {
        let (letter, d): (&str, i64) = match s.name() {
            "a" => ("x", 0),
            "b0" => ("y", 0),
            "b1" => ("y", 1),
            "b'0" => ("y'", 0),
            "b'-1" => ("y'", -1),
            "c0" => ("z", 0),
            "c1" => ("z", 1),
            "c'0" => ("z'", 0),
            "c'-1" => ("z'", -1),
            "d1" => ("", 1),
            "d-1" => ("", -1),
            "e" => ("p00", 0),
            "f" => ("Omega", 0),
            other => panic!("unknown generator {other}"),
        };
        shift += d;
        if !letter.is_empty() {
            image.push(Sym::new(letter));
        }
    }
    format!("({} | {shift})", ft_str(&image))
}

/// Value of a generator word of the separation monoid, rendered.
pub fn sep_str(w: &[Sym], in_k: &dyn Fn(&[Sym]) -> bool) -> String {
    enum V {
        Free(Vec<String>),
        P(Word),
        Q(Word),
        Omega,
    }
    let mut v = V::Free(Vec::new());
    for &s in w {
        v = match (s.name(), v) {
            ("p_eps", _) => V::P(Vec::new()),
            ("Omega", _) => V::Omega,
            (l, V::Free(mut m)) => {
                m.push(l.to_owned());
                V::Free(m)
            }
            ("z", V::P(u)) => {
                if in_k(&u) {
                    V::Q(u)
                } else {
                    V::Omega
                }
            }
            (_, V::P(mut u)) => {
                u.push(s);
                V::P(u)
            }
            _ => V::Omega,
        };
    }
    let dots = |u: &[String]| if u.is_empty() { "ε".to_owned() } else { u.join(".") };
    let names = |u: &Word| u.iter().map(|s| s.name().to_owned()).collect::<Vec<_>>();
    match v {
        V::Free(m) => format!("F:{}", dots(&m)),
        V::P(u) => format!("P:{}", dots(&names(&u))),
        V::Q(u) => format!("Q:{}", dots(&names(&u))),
        V::Omega => "OMEGA".into(),
    }
}

/// All words over `alphabet` of length at most `n`.
pub fn all_words(alphabet: &[Sym], n: usize) -> Vec<Word> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..n {
        layer = layer
            .iter()
            .flat_map(|w: &Word| {
                alphabet.iter().map(move |&a| {
                    let mut v = w.clone();
                    v.push(a);
                    v
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

pub fn a7() -> Vec<Sym> {
    crosssec::syms(&["x", "y", "y'", "z", "z'", "p00", "Omega"])
}

pub fn a13() -> Vec<Sym> {
    crosssec::syms(&["a", "b0", "b1", "b'0", "b'-1", "c0", "c1", "c'0", "c'-1", "d1", "d-1", "e", "f"])
}

/// Exact language equality over the union of both alphabets.
pub fn equivalent(a: &Nfa, b: &Nfa) -> bool {
    let sigma: Vec<Sym> = a
        .alphabet()
        .iter()
        .chain(b.alphabet())
        .copied()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    intersect(a, &complement_over(b, &sigma)).is_empty() && intersect(b, &complement_over(a, &sigma)).is_empty()
}

/// A random NFA with `states` states over `alphabet`.
pub fn random_nfa(rng: &mut impl Rng, alphabet: &[Sym], states: usize, density: f64) -> Nfa {
    let mut n = Nfa::new(alphabet.to_vec());
    for i in 0..states {
        n.add_state(format!("q{i}"));
    }
    n.set_initial(0);
    for s in 0..states {
        n.set_accepting(s, rng.gen_bool(0.4));
        for &a in alphabet {
            for t in 0..states {
                if rng.gen_bool(density) {
                    n.add_transition(s, a, t);
                }
            }
        }
    }
    n
}

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}
