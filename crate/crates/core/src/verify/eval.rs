//! Evaluation of generator words in a monoid `M[T]` (optionally `× ℤ`).

use std::collections::HashMap;

use indexmap::IndexMap;
use num_bigint::BigInt;

use super::VerifyError;
use crate::monoid::{
    ball_with_witnesses, Action, FtAction, GeneratorA13, GeneratorA7, MtElement, MtMonoid,
    ShiftedElement,
};
use crate::sym::{Sym, Word};

/// Element type of an [`EvalMap`].
pub type Elem<A> = ShiftedElement<<A as Action>::Letter, <A as Action>::Point>;

/// A finite generating alphabet together with the value of each generator.
#[derive(Clone)]
pub struct EvalMap<A: Action> {
    monoid: MtMonoid<A>,
    generators: Vec<(Sym, Elem<A>)>,
    table: HashMap<Sym, Elem<A>>,
    with_shift: bool,
}

impl<A: Action> EvalMap<A> {
    /// `with_shift` selects the `M[T] × ℤ` rendering; without it every
    /// generator must have shift zero.
    pub fn new(
        monoid: MtMonoid<A>,
        generators: Vec<(Sym, Elem<A>)>,
        with_shift: bool,
    ) -> Result<Self, VerifyError> {
        let mut table = HashMap::new();
        for (s, v) in &generators {
            if table.insert(*s, v.clone()).is_some() {
                return Err(VerifyError::Invalid(format!("generator `{s}` listed twice")));
            }
            if !with_shift && v.shift != BigInt::from(0) {
                return Err(VerifyError::Invalid(format!(
                    "generator `{s}` has a shift but the monoid has no integer factor"
                )));
            }
        }
        Ok(EvalMap {
            monoid,
            generators,
            table,
            with_shift,
        })
    }

    pub fn monoid(&self) -> &MtMonoid<A> {
        &self.monoid
    }

    /// Generators in their declared order.
    pub fn generators(&self) -> &[(Sym, Elem<A>)] {
        &self.generators
    }

    pub fn alphabet(&self) -> Vec<Sym> {
        let mut v: Vec<Sym> = self.generators.iter().map(|(s, _)| *s).collect();
        v.sort();
        v
    }

    pub fn with_shift(&self) -> bool {
        self.with_shift
    }

    pub fn value(&self, s: Sym) -> Option<&Elem<A>> {
        self.table.get(&s)
    }

    pub fn identity(&self) -> Elem<A> {
        ShiftedElement::identity()
    }

    pub fn multiply(&self, u: &Elem<A>, v: &Elem<A>) -> Elem<A> {
        self.monoid.multiply_shifted(u, v)
    }

    pub fn eval(&self, w: &[Sym]) -> Result<Elem<A>, VerifyError> {
        let mut acc = self.identity();
        for s in w {
            let v = self
                .table
                .get(s)
                .ok_or_else(|| VerifyError::UnknownSymbol(s.name().to_owned()))?;
            acc = self.multiply(&acc, v);
        }
        Ok(acc)
    }

    /// Canonical text: `F:xyz′`, `P:3,-2`, `OMEGA`, or `(… | s)` with a shift.
    pub fn render(&self, e: &Elem<A>) -> String {
        let inner = self.monoid.render(&e.mt);
        if self.with_shift {
            format!("({inner} | {})", e.shift)
        } else {
            inner
        }
    }

    /// Elements of the ball of the given radius, each with a shortest
    /// generator word.
    pub fn ball(&self, radius: usize) -> IndexMap<Elem<A>, Word> {
        ball_with_witnesses(self.identity(), &self.generators, |u, v| self.multiply(u, v), radius)
    }
}

impl EvalMap<FtAction> {
    /// `F[T]` over `{x, y, y′, z, z′, p00, Omega}`.
    pub fn ft() -> Self {
        let gens = GeneratorA7::ALL
            .iter()
            .map(|g| (g.sym(), ShiftedElement::new(g.value(), 0)))
            .collect();
        EvalMap::new(FtAction::monoid(), gens, false).expect("distinct generators")
    }

    /// `F[T] × ℤ` over the thirteen generators `a, b0, …, f`.
    pub fn product() -> Self {
        let gens = GeneratorA13::ALL.iter().map(|g| (g.sym(), g.value())).collect();
        EvalMap::new(FtAction::monoid(), gens, true).expect("distinct generators")
    }
}

/// True if `e` is a point (rather than a free word).
pub fn is_point<A: Action>(e: &Elem<A>) -> bool {
    matches!(e.mt, MtElement::Point(_))
}
