//! Language engines: finite automata, GSM transducers, one-counter machines,
//! ET0L systems and a uniform handle over them.

pub mod et0l;
pub mod gsm;
pub mod json;
pub mod nfa;
pub mod ocm;
pub mod pump;
pub mod rep;
pub mod stepper;

use thiserror::Error;

pub use et0l::{et0l_generate, Et0lSystem};
pub use gsm::{gsm_apply_word, gsm_image, Gsm, GsmTransition};
pub use json::{load_machine, Machine};
pub use nfa::{
    complement, complement_over, concat, determinize, hom_image, intersect, inverse_hom,
    nfa_accepts, nfa_enumerate, prefix_closed, regular_substitution, star, union, Block, Dfa, Nfa,
};
pub use ocm::{ocm_accepts, Guard, OcmTransition, OneCounterMachine};
pub use pump::{pump_decompose, pump_segment};
pub use rep::{union_with_regular, Et0lLang, LanguageRep, OracleLang};
pub use stepper::Stepper;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum LangError {
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid machine: {0}")]
    Invalid(String),
    #[error("mapping undefined on symbol `{0}`")]
    HomUndefined(String),
    #[error("pumping: {0}")]
    Pump(String),
}
