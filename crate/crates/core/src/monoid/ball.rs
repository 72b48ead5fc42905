//! Balls in the Cayley graph: all elements that are products of at most `r`
//! generators.

use std::hash::Hash;

use indexmap::{IndexMap, IndexSet};

use crate::sym::{Sym, Word};

/// Distinct values of all generator words of length at most `radius`.
pub fn enumerate_ball<E, M>(identity: E, generators: &[E], multiply: M, radius: usize) -> IndexSet<E>
where
    E: Clone + Eq + Hash,
    M: Fn(&E, &E) -> E,
{
    let named: Vec<(Sym, E)> = generators
        .iter()
        .enumerate()
        .map(|(i, g)| (Sym::new(&format!("#{i}")), g.clone()))
        .collect();
    ball_with_witnesses(identity, &named, multiply, radius)
        .into_keys()
        .collect()
}

/// Like [`enumerate_ball`], keeping one shortest witness word per element.
///
/// Generators are tried in the given order, so the witness of each element is
/// the first shortest word in that order.
pub fn ball_with_witnesses<E, M>(
    identity: E,
    generators: &[(Sym, E)],
    multiply: M,
    radius: usize,
) -> IndexMap<E, Word>
where
    E: Clone + Eq + Hash,
    M: Fn(&E, &E) -> E,
{
    let mut ball: IndexMap<E, Word> = IndexMap::new();
    ball.insert(identity.clone(), Vec::new());
    let mut frontier = vec![identity];
    for _ in 0..radius {
        let mut next = Vec::new();
        for e in &frontier {
            let base = ball[e].clone();
            for (sym, g) in generators {
                let product = multiply(e, g);
                if !ball.contains_key(&product) {
                    let mut w = base.clone();
                    w.push(*sym);
                    ball.insert(product.clone(), w);
                    next.push(product);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    ball
}
