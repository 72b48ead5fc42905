//! The normalization pipeline: four transducer images that bring a regular
//! language over the seven generators into `p00 x* {y,y'}* {z,z'}*`.

use std::collections::HashMap;

use super::builtins::build_proof_gsms;
use crate::lang::{complement_over, gsm_image, intersect, union, Block, Nfa};
use crate::monoid::{act_letter, FreeLetter, GeneratorA7, TPoint};
use crate::sym::Sym;

fn a7_all() -> Vec<Sym> {
    GeneratorA7::ALL.iter().map(|g| g.sym()).collect()
}

/// `p00 x* {y, y'}* {z, z'}*`.
pub fn shape_automaton() -> Nfa {
    let s = Sym::new;
    Nfa::from_blocks(
        a7_all(),
        &[
            Block::One(s("p00")),
            Block::Star(vec![s("x")]),
            Block::Star(vec![s("y"), s("y'")]),
            Block::Star(vec![s("z"), s("z'")]),
        ],
    )
}

/// Successive images of `candidate` under the four transducers.
pub fn normalize_pipeline(candidate: &Nfa) -> [Nfa; 4] {
    let [g1, g2, g3, g4] = build_proof_gsms();
    let l1 = gsm_image(&g1, candidate);
    let l2 = gsm_image(&g2, &l1);
    let l3 = gsm_image(&g3, &l2);
    let l4 = gsm_image(&g4, &l3);
    [l1, l2, l3, l4]
}

/// Exact check that `l` lies inside [`shape_automaton`].
pub fn shape_contained(l: &Nfa) -> bool {
    intersect(l, &complement_over(&shape_automaton(), &a7_all())).is_empty()
}

/// Automaton of the words whose value is `Ω`, exact for every word whose
/// evaluation keeps `α ≤ bound` and `|β| ≤ bound` (in particular for all
/// words of length at most `bound`). Words leaving that window are treated
/// as not evaluating to `Ω`.
pub fn omega_words(bound: usize) -> Nfa {
    #[derive(Clone, PartialEq, Eq, Hash)]
    enum V {
        Free,
        Pt(u32, i32),
        Omega,
        Far,
    }
    let b = bound as i32;
    let mut n = Nfa::new(a7_all());
    let mut ids: HashMap<V, usize> = HashMap::new();
    let mut queue = vec![V::Free];
    ids.insert(V::Free, n.add_state("free"));
    n.set_initial(0);
    while let Some(v) = queue.pop() {
        let from = ids[&v];
        for g in GeneratorA7::ALL {
            let next = match (&v, g) {
                (_, GeneratorA7::P00) => V::Pt(0, 0),
                (_, GeneratorA7::Omega) => V::Omega,
                (V::Free, _) => V::Free,
                (V::Omega, _) => V::Omega,
                (V::Far, _) => V::Far,
                (V::Pt(a, c), g) => {
                    let l = match g {
                        GeneratorA7::X => FreeLetter::X,
                        GeneratorA7::Y => FreeLetter::Y,
                        GeneratorA7::YPrime => FreeLetter::YPrime,
                        GeneratorA7::Z => FreeLetter::Z,
                        _ => FreeLetter::ZPrime,
                    };
                    match act_letter(&TPoint::p(*a, *c), l) {
                        TPoint::Omega => V::Omega,
                        TPoint::P { alpha, beta } => {
                            let a2 = u32::try_from(&alpha).unwrap_or(u32::MAX);
                            let c2 = i32::try_from(&beta).unwrap_or(i32::MAX);
                            if a2 as i64 > b as i64 || c2.abs() > b {
                                V::Far
                            } else {
                                V::Pt(a2, c2)
                            }
                        }
                    }
                }
            };
            let to = match ids.get(&next) {
                Some(&t) => t,
                None => {
                    let t = n.add_state(format!("v{}", ids.len()));
                    if next == V::Omega {
                        n.set_accepting(t, true);
                    }
                    ids.insert(next.clone(), t);
                    queue.push(next);
                    t
                }
            };
            n.add_transition(from, g.sym(), to);
        }
    }
    n.trim()
}

/// Replaces the representatives of `Ω` found by [`omega_words`] with the
/// single word `Omega`: an intersection with a regular language followed by a
/// union with a one-word language.
pub fn replace_omega_words(l: &Nfa, bound: usize) -> Nfa {
    let keep = complement_over(&omega_words(bound), &a7_all());
    let omega = Nfa::from_words(a7_all(), [[GeneratorA7::Omega.sym()].as_slice()]);
    union(&intersect(l, &keep), &omega).trim()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::{eval_word_ft, MtElement};
    use crate::sym::word;

    fn a7(w: &[Sym]) -> Vec<GeneratorA7> {
        w.iter().map(|s| GeneratorA7::from_sym(*s).unwrap()).collect()
    }

    #[test]
    fn pipeline_examples() {
        let n = Nfa::from_words(a7_all(), [word("Omega").as_slice(), word("p00 x y z").as_slice()]);
        let [_, _, _, l4] = normalize_pipeline(&n);
        assert!(l4.contains(&word("p00 x y z")));
        let n = Nfa::from_words(a7_all(), [word("p00 z x").as_slice()]);
        let [_, _, _, l4] = normalize_pipeline(&n);
        assert!(l4.contains(&word("p00 x")));
        for l in normalize_pipeline(&Nfa::empty(a7_all())) {
            assert!(l.is_empty());
        }
    }

    #[test]
    fn omega_automaton_agrees_with_evaluation() {
        let o = omega_words(5);
        let all = Nfa::universal(a7_all());
        for w in all.enumerate(4) {
            let is_omega = eval_word_ft(&a7(&w)) == MtElement::Point(TPoint::Omega);
            assert_eq!(o.contains(&w), is_omega, "{w:?}");
        }
    }

    #[test]
    fn replacing_omega_words() {
        let n = Nfa::from_words(
            a7_all(),
            [word("p00 y x").as_slice(), word("p00 x").as_slice()],
        );
        let r = replace_omega_words(&n, 6);
        assert!(r.contains(&word("Omega")));
        assert!(r.contains(&word("p00 x")));
        assert!(!r.contains(&word("p00 y x")));
    }
}
