//! Monoids defined by actions of free monoids, their cross-section
//! languages, and bounded machinery for checking cross-section claims.

pub mod lang;
pub mod monoid;
pub mod par;
pub mod separation;
pub mod sym;
pub mod verify;

pub use sym::{show_word, syms, word, Sym, Word};
