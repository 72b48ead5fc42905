//! The free monoid on `{x, y, y′, z, z′}` acting on `T = {p_{α,β}} ∪ {Ω}`.
//!
//! `x` walks along the row `β = 0`; `y, y′` move within a column when `α` is
//! not a power of two and `z, z′` move within a column when it is. Any move
//! that leaves the permitted region lands on the absorbing point `Ω`.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use super::{Action, MtElement, MtMonoid};
use crate::sym::Sym;

/// A point of `T`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TPoint {
    P { alpha: BigUint, beta: BigInt },
    Omega,
}

impl TPoint {
    pub fn p(alpha: impl Into<BigUint>, beta: impl Into<BigInt>) -> TPoint {
        TPoint::P {
            alpha: alpha.into(),
            beta: beta.into(),
        }
    }

    /// `p_{0,0}`.
    pub fn origin() -> TPoint {
        TPoint::p(0u32, 0)
    }
}

impl fmt::Display for TPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TPoint::P { alpha, beta } => write!(f, "P:{alpha},{beta}"),
            TPoint::Omega => f.write_str("OMEGA"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FreeLetter {
    X,
    Y,
    YPrime,
    Z,
    ZPrime,
}

impl FreeLetter {
    pub const ALL: [FreeLetter; 5] = [
        FreeLetter::X,
        FreeLetter::Y,
        FreeLetter::YPrime,
        FreeLetter::Z,
        FreeLetter::ZPrime,
    ];

    /// ASCII symbol name (`y'` for `y′`).
    pub fn sym(self) -> Sym {
        Sym::new(match self {
            FreeLetter::X => "x",
            FreeLetter::Y => "y",
            FreeLetter::YPrime => "y'",
            FreeLetter::Z => "z",
            FreeLetter::ZPrime => "z'",
        })
    }
}

impl fmt::Display for FreeLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FreeLetter::X => "x",
            FreeLetter::Y => "y",
            FreeLetter::YPrime => "y′",
            FreeLetter::Z => "z",
            FreeLetter::ZPrime => "z′",
        })
    }
}

pub type MTElement = MtElement<FreeLetter, TPoint>;

/// Membership in `{1, 2, 4, 8, ...}`. Zero is not a power of two.
pub fn in_bset(alpha: &BigUint) -> bool {
    !alpha.is_zero() && alpha.count_ones() == 1
}

pub fn act_letter(t: &TPoint, g: FreeLetter) -> TPoint {
    let (alpha, beta) = match t {
        TPoint::Omega => return TPoint::Omega,
        TPoint::P { alpha, beta } => (alpha, beta),
    };
    let powered = in_bset(alpha);
    let moved = |delta: i8| TPoint::P {
        alpha: alpha.clone(),
        beta: beta + BigInt::from(delta),
    };
    match g {
        FreeLetter::X => {
            if beta.is_zero() {
                TPoint::P {
                    alpha: alpha + BigUint::one(),
                    beta: BigInt::zero(),
                }
            } else {
                TPoint::Omega
            }
        }
        FreeLetter::Y | FreeLetter::YPrime => {
            if !powered {
                moved(if g == FreeLetter::Y { 1 } else { -1 })
            } else if beta.is_zero() {
                t.clone()
            } else {
                TPoint::Omega
            }
        }
        FreeLetter::Z | FreeLetter::ZPrime => {
            if powered {
                moved(if g == FreeLetter::Z { 1 } else { -1 })
            } else {
                t.clone()
            }
        }
    }
}

pub fn act_word(t: &TPoint, w: &[FreeLetter]) -> TPoint {
    w.iter().fold(t.clone(), |p, &g| act_letter(&p, g))
}

/// The action above as an [`Action`].
#[derive(Clone, Copy, Debug, Default)]
pub struct FtAction;

impl Action for FtAction {
    type Letter = FreeLetter;
    type Point = TPoint;

    fn letters(&self) -> Vec<FreeLetter> {
        FreeLetter::ALL.to_vec()
    }

    fn act(&self, point: &TPoint, letter: FreeLetter) -> TPoint {
        act_letter(point, letter)
    }

    fn absorbing(&self) -> TPoint {
        TPoint::Omega
    }
}

impl FtAction {
    /// `F[T]` with the point generators `p_{0,0}` and `Ω`.
    pub fn monoid() -> MtMonoid<FtAction> {
        MtMonoid::new(FtAction, vec![TPoint::origin(), TPoint::Omega])
            .expect("Ω is fixed by every letter")
    }
}

pub fn mt_multiply(u: &MTElement, v: &MTElement) -> MTElement {
    match (u, v) {
        (MtElement::Free(a), MtElement::Free(b)) => {
            MtElement::Free(a.iter().chain(b.iter()).copied().collect())
        }
        (MtElement::Point(t), MtElement::Free(m)) => MtElement::Point(act_word(t, m)),
        (_, MtElement::Point(y)) => MtElement::Point(y.clone()),
    }
}

/// The generating set `{x, y, y′, z, z′, p_{0,0}, Ω}` of `F[T]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GeneratorA7 {
    X,
    Y,
    YPrime,
    Z,
    ZPrime,
    P00,
    Omega,
}

impl GeneratorA7 {
    pub const ALL: [GeneratorA7; 7] = [
        GeneratorA7::X,
        GeneratorA7::Y,
        GeneratorA7::YPrime,
        GeneratorA7::Z,
        GeneratorA7::ZPrime,
        GeneratorA7::P00,
        GeneratorA7::Omega,
    ];

    pub fn value(self) -> MTElement {
        match self {
            GeneratorA7::X => MtElement::Free(vec![FreeLetter::X]),
            GeneratorA7::Y => MtElement::Free(vec![FreeLetter::Y]),
            GeneratorA7::YPrime => MtElement::Free(vec![FreeLetter::YPrime]),
            GeneratorA7::Z => MtElement::Free(vec![FreeLetter::Z]),
            GeneratorA7::ZPrime => MtElement::Free(vec![FreeLetter::ZPrime]),
            GeneratorA7::P00 => MtElement::Point(TPoint::origin()),
            GeneratorA7::Omega => MtElement::Point(TPoint::Omega),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GeneratorA7::X => "x",
            GeneratorA7::Y => "y",
            GeneratorA7::YPrime => "y'",
            GeneratorA7::Z => "z",
            GeneratorA7::ZPrime => "z'",
            GeneratorA7::P00 => "p00",
            GeneratorA7::Omega => "Omega",
        }
    }

    pub fn sym(self) -> Sym {
        Sym::new(self.name())
    }

    pub fn from_sym(s: Sym) -> Option<GeneratorA7> {
        GeneratorA7::ALL.into_iter().find(|g| g.name() == s.name())
    }

    pub fn is_free(self) -> bool {
        !matches!(self, GeneratorA7::P00 | GeneratorA7::Omega)
    }
}

pub fn eval_word_ft(w: &[GeneratorA7]) -> MTElement {
    w.iter()
        .fold(MtElement::identity(), |acc, g| mt_multiply(&acc, &g.value()))
}
