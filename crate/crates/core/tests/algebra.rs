//! The monoid implementations against the reference evaluator.

mod common;

use common::{a7, act, ft, product_str, Val};
use crosssec::monoid::{
    closed_form_eval, closed_form_word, eval_word_ft, eval_word_product, mt_multiply, FtAction, GeneratorA13,
    GeneratorA7, MTElement, MtElement, Sign, TPoint,
};
use crosssec::{Sym, Word};
use num_traits::ToPrimitive;
use proptest::prelude::*;

fn to_val(e: &MTElement) -> Val {
    match e {
        MtElement::Free(m) => Val::Free(m.iter().map(|l| l.sym().name().to_owned()).collect()),
        MtElement::Point(TPoint::P { alpha, beta }) => Val::P(alpha.to_i64().unwrap(), beta.to_i64().unwrap()),
        MtElement::Point(TPoint::Omega) => Val::Omega,
    }
}

fn step_ref(v: &Val, g: GeneratorA7) -> Val {
    match (g, v) {
        (GeneratorA7::P00, _) => Val::P(0, 0),
        (GeneratorA7::Omega, _) => Val::Omega,
        (g, Val::Free(m)) => Val::Free(m.iter().cloned().chain([g.name().to_owned()]).collect()),
        (g, p) => act(p, g.name()),
    }
}

/// Every word up to length 8 along a depth-first walk, so each word costs
/// one multiplication per implementation.
#[test]
fn all_words_up_to_eight() {
    let m = FtAction::monoid();
    let gens: Vec<(GeneratorA7, MTElement)> = GeneratorA7::ALL.iter().map(|&g| (g, g.value())).collect();
    let mut stack: Vec<(usize, MTElement, MTElement, Val)> =
        vec![(0, MtElement::identity(), MtElement::identity(), Val::Free(Vec::new()))];
    let mut count = 0u64;
    while let Some((len, generic, direct, reference)) = stack.pop() {
        count += 1;
        assert_eq!(generic, direct);
        assert_eq!(to_val(&direct), reference);
        if len == 8 {
            continue;
        }
        for (g, gv) in &gens {
            stack.push((len + 1, m.multiply(&generic, gv), mt_multiply(&direct, gv), step_ref(&reference, *g)));
        }
    }
    assert_eq!(count, (0..=8).map(|k| 7u64.pow(k)).sum::<u64>());
}

#[test]
fn closed_form_matches_word_evaluation() {
    let m = FtAction::monoid();
    for alpha in 0..=17usize {
        for beta in 0..=6usize {
            for gamma in 0..=6usize {
                for bs in Sign::BOTH {
                    for cs in Sign::BOTH {
                        let w = closed_form_word(alpha, beta, gamma, bs, cs);
                        let want = closed_form_eval(&alpha.into(), &beta.into(), &gamma.into(), bs, cs);
                        assert_eq!(eval_word_product(&w), want);
                        let syms: Word = w.iter().map(|g| g.sym()).collect();
                        let shown = format!("({} | {})", m.render(&want.mt), want.shift);
                        assert_eq!(product_str(&syms), shown);
                    }
                }
            }
        }
    }
}

fn gen7() -> impl Strategy<Value = Vec<GeneratorA7>> {
    prop::collection::vec(prop::sample::select(GeneratorA7::ALL.to_vec()), 0..14)
}

fn gen13() -> impl Strategy<Value = Vec<GeneratorA13>> {
    prop::collection::vec(prop::sample::select(GeneratorA13::ALL.to_vec()), 0..14)
}

proptest! {
    #[test]
    fn evaluation_is_a_homomorphism(u in gen7(), v in gen7()) {
        let uv: Vec<GeneratorA7> = u.iter().chain(&v).copied().collect();
        prop_assert_eq!(eval_word_ft(&uv), mt_multiply(&eval_word_ft(&u), &eval_word_ft(&v)));
        let syms: Vec<Sym> = uv.iter().map(|g| g.sym()).collect();
        prop_assert_eq!(to_val(&eval_word_ft(&uv)), ft(&syms));
    }

    #[test]
    fn product_evaluation_is_a_homomorphism(u in gen13(), v in gen13()) {
        let m = FtAction::monoid();
        let uv: Vec<GeneratorA13> = u.iter().chain(&v).copied().collect();
        let (eu, ev, euv) = (eval_word_product(&u), eval_word_product(&v), eval_word_product(&uv));
        prop_assert_eq!(&euv, &m.multiply_shifted(&eu, &ev));
        let syms: Word = uv.iter().map(|g| g.sym()).collect();
        prop_assert_eq!(product_str(&syms), format!("({} | {})", m.render(&euv.mt), euv.shift));
    }

    #[test]
    fn generator_symbols_round_trip(i in 0..7usize) {
        let s = a7()[i];
        prop_assert_eq!(GeneratorA7::from_sym(s).map(|g| g.sym()), Some(s));
    }
}
