//! JSON encodings of the machine types.
//!
//! Every document carries a `"type"` tag (`nfa`, `gsm`, `et0l`, `ocm`).
//! Symbols are strings and words are arrays of symbols. State identifiers may
//! be strings or integers.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::et0l::Et0lSystem;
use super::gsm::Gsm;
use super::nfa::{EpsNfa, Nfa};
use super::ocm::{Guard, OneCounterMachine};
use super::LangError;
use crate::sym::{Sym, Word};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
enum StateId {
    Name(String),
    Num(i64),
}

impl StateId {
    fn key(&self) -> String {
        match self {
            StateId::Name(s) => s.clone(),
            StateId::Num(n) => n.to_string(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct NfaTransitionJson {
    from: StateId,
    symbol: Option<Sym>,
    to: StateId,
}

#[derive(Serialize, Deserialize)]
struct NfaJson {
    alphabet: Vec<Sym>,
    states: Vec<StateId>,
    initial: Vec<StateId>,
    accepting: Vec<StateId>,
    transitions: Vec<NfaTransitionJson>,
}

#[derive(Serialize, Deserialize)]
struct GsmTransitionJson {
    from: StateId,
    input: Sym,
    output: Vec<Sym>,
    to: StateId,
}

#[derive(Serialize, Deserialize)]
struct GsmJson {
    input_alphabet: Vec<Sym>,
    output_alphabet: Vec<Sym>,
    states: Vec<StateId>,
    initial: StateId,
    accepting: Vec<StateId>,
    transitions: Vec<GsmTransitionJson>,
}

#[derive(Serialize, Deserialize)]
struct ProductionJson {
    lhs: Sym,
    rhs: Vec<Sym>,
}

#[derive(Serialize, Deserialize)]
struct Et0lJson {
    alphabet: Vec<Sym>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    terminals: Option<Vec<Sym>>,
    axiom: Vec<Sym>,
    tables: Vec<Vec<ProductionJson>>,
}

#[derive(Clone, Copy, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum GuardJson {
    Zero,
    Positive,
    Any,
}

#[derive(Serialize, Deserialize)]
struct OcmTransitionJson {
    from: StateId,
    symbol: Sym,
    guard: GuardJson,
    delta: i8,
    to: StateId,
}

#[derive(Serialize, Deserialize)]
struct OcmJson {
    alphabet: Vec<Sym>,
    states: Vec<StateId>,
    initial: StateId,
    accepting: Vec<StateId>,
    #[serde(default)]
    zero_acceptance: bool,
    transitions: Vec<OcmTransitionJson>,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
enum MachineJson {
    Nfa(NfaJson),
    Gsm(GsmJson),
    Et0l(Et0lJson),
    Ocm(OcmJson),
}

/// A machine of any supported type.
#[derive(Clone, Debug)]
pub enum Machine {
    Nfa(Nfa),
    Gsm(Gsm),
    Et0l(Et0lSystem),
    Ocm(OneCounterMachine),
}

impl Machine {
    pub fn kind(&self) -> &'static str {
        match self {
            Machine::Nfa(_) => "nfa",
            Machine::Gsm(_) => "gsm",
            Machine::Et0l(_) => "et0l",
            Machine::Ocm(_) => "ocm",
        }
    }
}

pub(crate) fn json_error(e: serde_json::Error) -> LangError {
    LangError::Json {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

struct StateTable(HashMap<String, usize>);

impl StateTable {
    fn get(&self, id: &StateId) -> Result<usize, LangError> {
        self.0
            .get(&id.key())
            .copied()
            .ok_or_else(|| LangError::UnknownState(id.key()))
    }
}

fn check_symbol(alphabet: &[Sym], s: &Sym) -> Result<(), LangError> {
    if alphabet.contains(s) {
        Ok(())
    } else {
        Err(LangError::UnknownSymbol(s.name().to_owned()))
    }
}

fn nfa_from(j: NfaJson) -> Result<Nfa, LangError> {
    let mut e = EpsNfa::new(j.alphabet.iter().copied());
    let mut table = HashMap::new();
    for s in &j.states {
        if table.insert(s.key(), e.add_state()).is_some() {
            return Err(LangError::Invalid(format!("duplicate state `{}`", s.key())));
        }
    }
    let table = StateTable(table);
    for s in &j.initial {
        e.initial.push(table.get(s)?);
    }
    for s in &j.accepting {
        e.accepting.push(table.get(s)?);
    }
    for t in &j.transitions {
        if let Some(a) = &t.symbol {
            check_symbol(&j.alphabet, a)?;
        }
        e.add(table.get(&t.from)?, t.symbol, table.get(&t.to)?);
    }
    let has_eps = j.transitions.iter().any(|t| t.symbol.is_none());
    if has_eps {
        return Ok(e.into_nfa());
    }
    let mut n = Nfa::new(j.alphabet.iter().copied());
    for s in &j.states {
        n.add_state(s.key());
    }
    for &s in &e.initial {
        n.set_initial(s);
    }
    for &s in &e.accepting {
        n.set_accepting(s, true);
    }
    for t in &j.transitions {
        n.add_transition(table.get(&t.from)?, t.symbol.unwrap(), table.get(&t.to)?);
    }
    Ok(n)
}

fn nfa_to(n: &Nfa) -> NfaJson {
    let id = |s: usize| StateId::Name(n.state_name(s).to_owned());
    let unique = (0..n.num_states())
        .map(|s| n.state_name(s))
        .collect::<std::collections::HashSet<_>>()
        .len()
        == n.num_states();
    let id = |s: usize| if unique { id(s) } else { StateId::Num(s as i64) };
    NfaJson {
        alphabet: n.alphabet().to_vec(),
        states: (0..n.num_states()).map(id).collect(),
        initial: n.initial().iter().map(|&s| id(s)).collect(),
        accepting: (0..n.num_states()).filter(|&s| n.is_accepting(s)).map(id).collect(),
        transitions: (0..n.num_states())
            .flat_map(|s| {
                n.transitions_from(s).iter().map(move |&(a, t)| NfaTransitionJson {
                    from: id(s),
                    symbol: Some(a),
                    to: id(t),
                })
            })
            .collect(),
    }
}

fn gsm_from(j: GsmJson) -> Result<Gsm, LangError> {
    let mut names: HashMap<String, usize> = HashMap::new();
    let init_key = j.initial.key();
    let mut g = Gsm::new(j.input_alphabet.iter().copied(), j.output_alphabet.iter().copied(), &init_key);
    names.insert(init_key.clone(), 0);
    let mut declared_init = false;
    for s in &j.states {
        if s.key() == init_key {
            declared_init = true;
            continue;
        }
        if names.insert(s.key(), g.num_states()).is_some() {
            return Err(LangError::Invalid(format!("duplicate state `{}`", s.key())));
        }
        g.add_state(s.key());
    }
    if !declared_init {
        return Err(LangError::UnknownState(init_key));
    }
    let table = StateTable(names);
    for s in &j.accepting {
        g.set_accepting(table.get(s)?, true);
    }
    for t in &j.transitions {
        check_symbol(&j.input_alphabet, &t.input)?;
        for o in &t.output {
            check_symbol(&j.output_alphabet, o)?;
        }
        g.add_transition(table.get(&t.from)?, t.input, &t.output, table.get(&t.to)?);
    }
    Ok(g)
}

fn gsm_to(g: &Gsm) -> GsmJson {
    let id = |s: usize| StateId::Name(g.state_name(s).to_owned());
    GsmJson {
        input_alphabet: g.input_alphabet().to_vec(),
        output_alphabet: g.output_alphabet().to_vec(),
        states: (0..g.num_states()).map(id).collect(),
        initial: id(g.initial()),
        accepting: (0..g.num_states()).filter(|&s| g.is_accepting(s)).map(id).collect(),
        transitions: (0..g.num_states())
            .flat_map(|s| {
                g.transitions_from(s).iter().map(move |t| GsmTransitionJson {
                    from: id(s),
                    input: t.input,
                    output: t.output.clone(),
                    to: id(t.to),
                })
            })
            .collect(),
    }
}

fn et0l_from(j: Et0lJson) -> Result<Et0lSystem, LangError> {
    Et0lSystem::new(
        j.alphabet,
        j.terminals,
        j.axiom,
        j.tables
            .into_iter()
            .map(|t| t.into_iter().map(|p| (p.lhs, p.rhs)).collect())
            .collect(),
    )
}

fn et0l_to(e: &Et0lSystem) -> Et0lJson {
    Et0lJson {
        alphabet: e.alphabet().to_vec(),
        terminals: Some(e.terminals().to_vec()),
        axiom: e.axiom().to_vec(),
        tables: e
            .tables()
            .iter()
            .map(|t| {
                t.iter()
                    .flat_map(|(&lhs, rhss)| {
                        rhss.iter().map(move |r| ProductionJson {
                            lhs,
                            rhs: r.clone(),
                        })
                    })
                    .collect()
            })
            .collect(),
    }
}

fn ocm_from(j: OcmJson) -> Result<OneCounterMachine, LangError> {
    let init_key = j.initial.key();
    let mut m = OneCounterMachine::new(j.alphabet.iter().copied(), &init_key, j.zero_acceptance);
    let mut names: HashMap<String, usize> = HashMap::from([(init_key.clone(), 0)]);
    let mut declared_init = false;
    for s in &j.states {
        if s.key() == init_key {
            declared_init = true;
            continue;
        }
        if names.insert(s.key(), m.num_states()).is_some() {
            return Err(LangError::Invalid(format!("duplicate state `{}`", s.key())));
        }
        m.add_state(s.key());
    }
    if !declared_init {
        return Err(LangError::UnknownState(init_key));
    }
    let table = StateTable(names);
    for s in &j.accepting {
        m.set_accepting(table.get(s)?, true);
    }
    for t in &j.transitions {
        check_symbol(&j.alphabet, &t.symbol)?;
        let guard = match t.guard {
            GuardJson::Zero => Guard::Zero,
            GuardJson::Positive => Guard::Positive,
            GuardJson::Any => Guard::Any,
        };
        m.add_transition(table.get(&t.from)?, t.symbol, guard, t.delta, table.get(&t.to)?)?;
    }
    Ok(m)
}

fn ocm_to(m: &OneCounterMachine) -> OcmJson {
    let id = |s: usize| StateId::Name(m.state_name(s).to_owned());
    OcmJson {
        alphabet: m.alphabet().to_vec(),
        states: (0..m.num_states()).map(id).collect(),
        initial: id(m.initial()),
        accepting: (0..m.num_states()).filter(|&s| m.is_accepting(s)).map(id).collect(),
        zero_acceptance: m.zero_acceptance(),
        transitions: (0..m.num_states())
            .flat_map(|s| {
                m.transitions_from(s).iter().map(move |t| OcmTransitionJson {
                    from: id(s),
                    symbol: t.symbol,
                    guard: match t.guard {
                        Guard::Zero => GuardJson::Zero,
                        Guard::Positive => GuardJson::Positive,
                        Guard::Any => GuardJson::Any,
                    },
                    delta: t.delta,
                    to: id(t.to),
                })
            })
            .collect(),
    }
}

/// Parses any machine document.
pub fn load_machine(text: &str) -> Result<Machine, LangError> {
    let j: MachineJson = serde_json::from_str(text).map_err(json_error)?;
    Ok(match j {
        MachineJson::Nfa(n) => Machine::Nfa(nfa_from(n)?),
        MachineJson::Gsm(g) => Machine::Gsm(gsm_from(g)?),
        MachineJson::Et0l(e) => Machine::Et0l(et0l_from(e)?),
        MachineJson::Ocm(o) => Machine::Ocm(ocm_from(o)?),
    })
}

pub fn machine_to_json(m: &Machine) -> String {
    let j = match m {
        Machine::Nfa(n) => MachineJson::Nfa(nfa_to(n)),
        Machine::Gsm(g) => MachineJson::Gsm(gsm_to(g)),
        Machine::Et0l(e) => MachineJson::Et0l(et0l_to(e)),
        Machine::Ocm(o) => MachineJson::Ocm(ocm_to(o)),
    };
    serde_json::to_string_pretty(&j).expect("machine serializes")
}

fn wrong_kind(expected: &str, got: &Machine) -> LangError {
    LangError::Invalid(format!("expected a {expected} document, found {}", got.kind()))
}

impl Nfa {
    pub fn from_json(text: &str) -> Result<Nfa, LangError> {
        match load_machine(text)? {
            Machine::Nfa(n) => Ok(n),
            other => Err(wrong_kind("nfa", &other)),
        }
    }

    pub fn to_json(&self) -> String {
        machine_to_json(&Machine::Nfa(self.clone()))
    }
}

impl Gsm {
    pub fn from_json(text: &str) -> Result<Gsm, LangError> {
        match load_machine(text)? {
            Machine::Gsm(g) => Ok(g),
            other => Err(wrong_kind("gsm", &other)),
        }
    }

    pub fn to_json(&self) -> String {
        machine_to_json(&Machine::Gsm(self.clone()))
    }
}

impl Et0lSystem {
    pub fn from_json(text: &str) -> Result<Et0lSystem, LangError> {
        match load_machine(text)? {
            Machine::Et0l(e) => Ok(e),
            other => Err(wrong_kind("et0l", &other)),
        }
    }

    pub fn to_json(&self) -> String {
        machine_to_json(&Machine::Et0l(self.clone()))
    }
}

impl OneCounterMachine {
    pub fn from_json(text: &str) -> Result<OneCounterMachine, LangError> {
        match load_machine(text)? {
            Machine::Ocm(o) => Ok(o),
            other => Err(wrong_kind("ocm", &other)),
        }
    }

    pub fn to_json(&self) -> String {
        machine_to_json(&Machine::Ocm(self.clone()))
    }
}

/// Parses a whitespace-free JSON word (array of symbols).
pub fn parse_word(text: &str) -> Result<Word, LangError> {
    serde_json::from_str(text).map_err(json_error)
}
