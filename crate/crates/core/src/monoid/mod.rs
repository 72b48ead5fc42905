//! Monoids built from a right action of a free monoid on a set.
//!
//! Given a free monoid `F` acting on the right of a set `T`, the monoid
//! `F[T]` is the disjoint union `F ∪ T` with the multiplication
//!
//! ```text
//! t·m = t acted on by m      m·t = t      t·u = u
//! ```
//!
//! for points `t, u` and free words `m`. [`MtMonoid`] implements that rule for
//! any [`Action`]; [`ft`] holds the concrete action on the points `p_{α,β}`
//! and `Ω`, and [`product`] its direct product with the integers.

pub mod ball;
pub mod ft;
pub mod product;

use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

use num_bigint::BigInt;
use thiserror::Error;

pub use ball::{ball_with_witnesses, enumerate_ball};
pub use ft::{
    act_letter, act_word, eval_word_ft, in_bset, mt_multiply, FreeLetter, FtAction, GeneratorA7,
    MTElement, TPoint,
};
pub use product::{
    closed_form_eval, closed_form_word, eval_word_product, GeneratorA13, ProductElement, Sign,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MonoidError {
    #[error("absorbing point {point} is moved by letter {letter}")]
    AbsorbingMoved { point: String, letter: String },
}

/// A right action of the free monoid on `Letter` over a set of points, with a
/// distinguished absorbing point.
pub trait Action: Send + Sync {
    type Letter: Copy + Eq + Hash + Ord + fmt::Debug + fmt::Display + Send + Sync;
    type Point: Clone + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync;

    fn letters(&self) -> Vec<Self::Letter>;

    fn act(&self, point: &Self::Point, letter: Self::Letter) -> Self::Point;

    fn absorbing(&self) -> Self::Point;

    fn act_word(&self, point: &Self::Point, word: &[Self::Letter]) -> Self::Point {
        word.iter()
            .fold(point.clone(), |p, &letter| self.act(&p, letter))
    }

    /// Canonical text of a free-monoid element (without the `F:` tag).
    fn render_free(&self, word: &[Self::Letter]) -> String {
        if word.is_empty() {
            return "ε".to_owned();
        }
        word.iter().map(|l| l.to_string()).collect()
    }
}

/// An element of `M[T]`: either a free word or a point.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MtElement<L, P> {
    Free(Vec<L>),
    Point(P),
}

impl<L, P> MtElement<L, P> {
    pub fn identity() -> Self {
        MtElement::Free(Vec::new())
    }

    pub fn is_point(&self) -> bool {
        matches!(self, MtElement::Point(_))
    }
}

/// An element of `M[T] × ℤ`. Monoids without an integer factor keep the
/// shift at zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ShiftedElement<L, P> {
    pub mt: MtElement<L, P>,
    pub shift: BigInt,
}

impl<L, P> ShiftedElement<L, P> {
    pub fn new(mt: MtElement<L, P>, shift: impl Into<BigInt>) -> Self {
        ShiftedElement {
            mt,
            shift: shift.into(),
        }
    }

    pub fn identity() -> Self {
        ShiftedElement::new(MtElement::identity(), 0)
    }
}

/// Handle on `M[T]` for a given action: identity, generators and
/// multiplication.
#[derive(Clone)]
pub struct MtMonoid<A: Action> {
    action: A,
    point_generators: Vec<A::Point>,
}

impl<A: Action> MtMonoid<A> {
    /// Builds the handle, rejecting an action whose absorbing point is moved by
    /// some letter.
    pub fn new(action: A, point_generators: Vec<A::Point>) -> Result<Self, MonoidError> {
        let omega = action.absorbing();
        for letter in action.letters() {
            let image = action.act(&omega, letter);
            if image != omega {
                return Err(MonoidError::AbsorbingMoved {
                    point: omega.to_string(),
                    letter: letter.to_string(),
                });
            }
        }
        Ok(MtMonoid {
            action,
            point_generators,
        })
    }

    pub fn action(&self) -> &A {
        &self.action
    }

    pub fn identity(&self) -> MtElement<A::Letter, A::Point> {
        MtElement::identity()
    }

    /// Free letters followed by the point generators.
    pub fn generators(&self) -> Vec<MtElement<A::Letter, A::Point>> {
        self.action
            .letters()
            .into_iter()
            .map(|l| MtElement::Free(vec![l]))
            .chain(self.point_generators.iter().cloned().map(MtElement::Point))
            .collect()
    }

    pub fn multiply(
        &self,
        u: &MtElement<A::Letter, A::Point>,
        v: &MtElement<A::Letter, A::Point>,
    ) -> MtElement<A::Letter, A::Point> {
        match (u, v) {
            (MtElement::Free(a), MtElement::Free(b)) => {
                let mut w = Vec::with_capacity(a.len() + b.len());
                w.extend_from_slice(a);
                w.extend_from_slice(b);
                MtElement::Free(w)
            }
            (MtElement::Point(t), MtElement::Free(m)) => {
                MtElement::Point(self.action.act_word(t, m))
            }
            (_, MtElement::Point(t)) => MtElement::Point(t.clone()),
        }
    }

    pub fn multiply_shifted(
        &self,
        u: &ShiftedElement<A::Letter, A::Point>,
        v: &ShiftedElement<A::Letter, A::Point>,
    ) -> ShiftedElement<A::Letter, A::Point> {
        ShiftedElement {
            mt: self.multiply(&u.mt, &v.mt),
            shift: &u.shift + &v.shift,
        }
    }

    pub fn render(&self, e: &MtElement<A::Letter, A::Point>) -> String {
        match e {
            MtElement::Free(w) => format!("F:{}", self.action.render_free(w)),
            MtElement::Point(p) => p.to_string(),
        }
    }
}

type ActFn<P, L> = Arc<dyn Fn(&P, L) -> P + Send + Sync>;

/// An action given by a closure over a caller-supplied point universe.
#[derive(Clone)]
pub struct ActionSpec<P, L> {
    pub letters: Vec<L>,
    pub act: ActFn<P, L>,
    pub absorbing: P,
    /// Points adjoined as generators of `M[T]`.
    pub point_generators: Vec<P>,
    /// Separator used when rendering free words; letters with multi-character
    /// names need one.
    pub free_separator: &'static str,
}

impl<P, L> Action for ActionSpec<P, L>
where
    L: Copy + Eq + Hash + Ord + fmt::Debug + fmt::Display + Send + Sync,
    P: Clone + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync,
{
    type Letter = L;
    type Point = P;

    fn letters(&self) -> Vec<L> {
        self.letters.clone()
    }

    fn act(&self, point: &P, letter: L) -> P {
        (self.act)(point, letter)
    }

    fn absorbing(&self) -> P {
        self.absorbing.clone()
    }

    fn render_free(&self, word: &[L]) -> String {
        if word.is_empty() {
            return "ε".to_owned();
        }
        word.iter()
            .map(|l| l.to_string())
            .collect::<Vec<_>>()
            .join(self.free_separator)
    }
}

/// Builds `M[T]` from a closure-defined action.
pub fn generic_mt<P, L>(spec: ActionSpec<P, L>) -> Result<MtMonoid<ActionSpec<P, L>>, MonoidError>
where
    L: Copy + Eq + Hash + Ord + fmt::Debug + fmt::Display + Send + Sync,
    P: Clone + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync,
{
    let gens = spec.point_generators.clone();
    MtMonoid::new(spec, gens)
}
