//! `F[T] × ℤ` over the thirteen-letter generating set `{a, b₀, b₁, …, e, f}`
//! and the closed-form values of the words `e aᵅ Bᵝ Cᵞ`.

use num_bigint::{BigInt, BigUint};

use super::ft::{in_bset, FreeLetter, TPoint};
use super::{MtElement, ShiftedElement};
use crate::sym::Sym;

pub type ProductElement = ShiftedElement<FreeLetter, TPoint>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GeneratorA13 {
    A,
    B0,
    B1,
    BPrime0,
    BPrimeMinus1,
    C0,
    C1,
    CPrime0,
    CPrimeMinus1,
    D1,
    DMinus1,
    E,
    F,
}

impl GeneratorA13 {
    pub const ALL: [GeneratorA13; 13] = [
        GeneratorA13::A,
        GeneratorA13::B0,
        GeneratorA13::B1,
        GeneratorA13::BPrime0,
        GeneratorA13::BPrimeMinus1,
        GeneratorA13::C0,
        GeneratorA13::C1,
        GeneratorA13::CPrime0,
        GeneratorA13::CPrimeMinus1,
        GeneratorA13::D1,
        GeneratorA13::DMinus1,
        GeneratorA13::E,
        GeneratorA13::F,
    ];

    pub fn name(self) -> &'static str {
        use GeneratorA13::*;
        match self {
            A => "a",
            B0 => "b0",
            B1 => "b1",
            BPrime0 => "b'0",
            BPrimeMinus1 => "b'-1",
            C0 => "c0",
            C1 => "c1",
            CPrime0 => "c'0",
            CPrimeMinus1 => "c'-1",
            D1 => "d1",
            DMinus1 => "d-1",
            E => "e",
            F => "f",
        }
    }

    pub fn sym(self) -> Sym {
        Sym::new(self.name())
    }

    pub fn from_sym(s: Sym) -> Option<GeneratorA13> {
        GeneratorA13::ALL.into_iter().find(|g| g.name() == s.name())
    }

    /// The fixed value `(m, ζ)` of the generator.
    pub fn value(self) -> ProductElement {
        use FreeLetter::*;
        use GeneratorA13::*;
        let free = |l: Option<FreeLetter>, s: i32| {
            ShiftedElement::new(MtElement::Free(l.into_iter().collect()), s)
        };
        match self {
            A => free(Some(X), 0),
            B0 => free(Some(Y), 0),
            B1 => free(Some(Y), 1),
            BPrime0 => free(Some(YPrime), 0),
            BPrimeMinus1 => free(Some(YPrime), -1),
            C0 => free(Some(Z), 0),
            C1 => free(Some(Z), 1),
            CPrime0 => free(Some(ZPrime), 0),
            CPrimeMinus1 => free(Some(ZPrime), -1),
            D1 => free(None, 1),
            DMinus1 => free(None, -1),
            E => ShiftedElement::new(MtElement::Point(TPoint::origin()), 0),
            F => ShiftedElement::new(MtElement::Point(TPoint::Omega), 0),
        }
    }
}

fn product_multiply(u: &ProductElement, v: &ProductElement) -> ProductElement {
    ShiftedElement {
        mt: super::ft::mt_multiply(&u.mt, &v.mt),
        shift: &u.shift + &v.shift,
    }
}

pub fn eval_word_product(w: &[GeneratorA13]) -> ProductElement {
    w.iter()
        .fold(ProductElement::identity(), |acc, g| product_multiply(&acc, &g.value()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];

    fn apply(self, n: &BigUint) -> BigInt {
        match self {
            Sign::Plus => BigInt::from(n.clone()),
            Sign::Minus => -BigInt::from(n.clone()),
        }
    }
}

/// Value of `e aᵅ Bᵝ Cᵞ`, where `B` is `b₁` or `b′₋₁` and `C` is `c₁` or
/// `c′₋₁` according to the signs.
///
/// When `α` is a power of two the `B` block leaves `p_{α,0}` in place and only
/// moves the integer coordinate, while the `C` block moves the point; otherwise
/// the roles swap.
pub fn closed_form_eval(
    alpha: &BigUint,
    beta: &BigUint,
    gamma: &BigUint,
    bsign: Sign,
    csign: Sign,
) -> ProductElement {
    let b = bsign.apply(beta);
    let c = csign.apply(gamma);
    let shift = &b + &c;
    let column = if in_bset(alpha) { c } else { b };
    ShiftedElement::new(
        MtElement::Point(TPoint::P {
            alpha: alpha.clone(),
            beta: column,
        }),
        shift,
    )
}

/// The word `e aᵅ Bᵝ Cᵞ` itself.
pub fn closed_form_word(
    alpha: usize,
    beta: usize,
    gamma: usize,
    bsign: Sign,
    csign: Sign,
) -> Vec<GeneratorA13> {
    let b = match bsign {
        Sign::Plus => GeneratorA13::B1,
        Sign::Minus => GeneratorA13::BPrimeMinus1,
    };
    let c = match csign {
        Sign::Plus => GeneratorA13::C1,
        Sign::Minus => GeneratorA13::CPrimeMinus1,
    };
    let mut w = vec![GeneratorA13::E];
    w.extend(std::iter::repeat_n(GeneratorA13::A, alpha));
    w.extend(std::iter::repeat_n(b, beta));
    w.extend(std::iter::repeat_n(c, gamma));
    w
}
