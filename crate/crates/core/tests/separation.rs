//! Separation instances against the reference evaluator and enumeration.

mod common;

use std::collections::BTreeSet;

use common::{all_words, sep_str};
use crosssec::lang::{LanguageRep, Nfa};
use crosssec::par::Exec;
use crosssec::separation::{
    build_sep_instance, builtin_k, extract_k, extract_k_with, generator_alphabet, verify_sep_cross_section,
    SepError, BUILTIN_NAMES,
};
use crosssec::verify::brute::brute_report;
use crosssec::verify::VerifyConfig;
use crosssec::{syms, word, Sym, Word};

fn instance(name: &str) -> crosssec::separation::SepInstance {
    let (b, k) = builtin_k(name).unwrap();
    build_sep_instance(b, k).unwrap()
}

#[test]
fn action_matches_reference() {
    for name in BUILTIN_NAMES {
        let inst = instance(name);
        let gens = generator_alphabet(&inst.b);
        let depth = if gens.len() > 6 { 5 } else { 6 };
        let k = inst.k.clone();
        let in_k = move |u: &[Sym]| k.contains(u);
        for w in all_words(&gens, depth) {
            let got = inst.eval.render(&inst.eval.eval(&w).unwrap());
            assert_eq!(got, sep_str(&w, &in_k), "{name}: {w:?}");
        }
    }
}

#[test]
fn family_values_are_distinct() {
    for name in BUILTIN_NAMES {
        let inst = instance(name);
        let mut seen = BTreeSet::new();
        for u in inst.k.enumerate(9) {
            let mut w = word("p_eps");
            w.extend(u.iter().copied());
            w.push(Sym::new("z"));
            let v = inst.eval.render(&inst.eval.eval(&w).unwrap());
            assert!(v.starts_with("Q:"), "{name}: {v}");
            assert!(seen.insert(v), "{name}: repeated value");
        }
        // Nothing in the automaton part reaches a Q value.
        for w in inst.regular_part.enumerate(5) {
            assert!(!inst.eval.render(&inst.eval.eval(&w).unwrap()).starts_with("Q:"));
        }
    }
}

#[test]
fn structured_agrees_with_enumeration() {
    for name in BUILTIN_NAMES {
        let inst = instance(name);
        let cfg = VerifyConfig::new(3, 6, 6);
        let fast = verify_sep_cross_section(&inst, &cfg).unwrap();
        let words: Vec<Word> = inst.l_k.enumerate(6).into_iter().collect();
        let brute = brute_report(&words, &inst.eval, &cfg, "L_K").unwrap();
        assert!(fast.passed(), "{name}: {}", fast.to_text());
        assert!(brute.passed(), "{name}: {}", brute.to_text());
        assert_eq!(fast.stats.ball_size, brute.stats.ball_size);
    }
}

#[test]
fn recovery_of_k() {
    for name in BUILTIN_NAMES {
        let inst = instance(name);
        let want = inst.k.enumerate(9);
        assert_eq!(extract_k(&inst.l_k, 9), want, "{name}");
        assert_eq!(extract_k_with(&inst.l_k, 9, Exec::Sequential), want, "{name}");
    }
    let dyck = instance("dyck");
    let got = extract_k(&dyck.l_k, 4);
    let want: BTreeSet<Word> = ["", "( )", "( ( ) )", "( ) ( )"].iter().map(|s| word(s)).collect();
    assert_eq!(got, want);
}

#[test]
fn dropping_a_family_word_leaves_its_value_missing() {
    let inst = instance("anbncn");
    let drop = word("p_eps a b c z");
    let words: Vec<Word> = inst.l_k.enumerate(6).into_iter().filter(|w| *w != drop).collect();
    let r = brute_report(&words, &inst.eval, &VerifyConfig::new(5, 6, 6), "L_K minus one").unwrap();
    assert!(r.collisions.is_empty());
    let missing: Vec<&str> = r.missing.iter().map(|m| m.element.as_str()).collect();
    assert!(missing.contains(&"Q:a.b.c"), "{missing:?}");
}

#[test]
fn regular_k_gives_regular_l_k() {
    let sigma = syms(&["a", "b"]);
    let k = Nfa::from_words(sigma.clone(), [word("a").as_slice(), word("a b b").as_slice()]);
    let inst = build_sep_instance(sigma, LanguageRep::Regular(k)).unwrap();
    assert!(matches!(inst.l_k, LanguageRep::Regular(_)));
    assert!(inst.l_k.contains(&word("p_eps a b b z")));
    assert!(!inst.l_k.contains(&word("p_eps a b z")));
    assert_eq!(extract_k(&inst.l_k, 5), BTreeSet::from([word("a"), word("a b b")]));
    assert!(verify_sep_cross_section(&inst, &VerifyConfig::new(3, 6, 6)).unwrap().passed());
}

#[test]
fn reserved_letters_are_rejected() {
    let k = Nfa::from_words(syms(&["z"]), [word("z").as_slice()]);
    let e = build_sep_instance(syms(&["z"]), LanguageRep::Regular(k)).unwrap_err();
    assert!(matches!(e, SepError::AlphabetClash(_)));
    let k = Nfa::from_words(syms(&["a", "c"]), [word("c").as_slice()]);
    let e = build_sep_instance(syms(&["a"]), LanguageRep::Regular(k)).unwrap_err();
    assert!(matches!(e, SepError::NotInB(_)));
}
