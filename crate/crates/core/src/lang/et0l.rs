//! ET0L systems: tabled parallel rewriting.
//!
//! In one derivation step a single table rewrites every symbol of the
//! sentential form simultaneously. A symbol without a production in the
//! chosen table rewrites to itself.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use super::LangError;
use crate::sym::{Sym, Word};

pub type Table = BTreeMap<Sym, Vec<Word>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Et0lSystem {
    alphabet: Vec<Sym>,
    terminals: Vec<Sym>,
    axiom: Word,
    tables: Vec<Table>,
}

impl Et0lSystem {
    /// Builds a system from `(lhs, rhs)` productions per table. When
    /// `terminals` is `None`, the terminals are the symbols that no table
    /// rewrites to anything other than themselves.
    pub fn new(
        alphabet: impl IntoIterator<Item = Sym>,
        terminals: Option<Vec<Sym>>,
        axiom: Word,
        tables: Vec<Vec<(Sym, Word)>>,
    ) -> Result<Et0lSystem, LangError> {
        let mut alphabet: Vec<Sym> = alphabet.into_iter().collect();
        alphabet.sort();
        alphabet.dedup();
        let known = |s: &Sym| -> Result<(), LangError> {
            if alphabet.binary_search(s).is_ok() {
                Ok(())
            } else {
                Err(LangError::UnknownSymbol(s.name().to_owned()))
            }
        };
        if tables.is_empty() {
            return Err(LangError::Invalid("an ET0L system needs at least one table".into()));
        }
        axiom.iter().try_for_each(known)?;
        let mut built = Vec::with_capacity(tables.len());
        for (i, table) in tables.into_iter().enumerate() {
            if table.is_empty() {
                return Err(LangError::Invalid(format!("table {i} is empty")));
            }
            let mut t: Table = BTreeMap::new();
            for (lhs, rhs) in table {
                known(&lhs)?;
                rhs.iter().try_for_each(known)?;
                let options = t.entry(lhs).or_default();
                if !options.contains(&rhs) {
                    options.push(rhs);
                }
            }
            built.push(t);
        }
        let terminals = match terminals {
            Some(mut ts) => {
                ts.iter().try_for_each(known)?;
                ts.sort();
                ts.dedup();
                ts
            }
            None => alphabet
                .iter()
                .copied()
                .filter(|s| {
                    built.iter().all(|t| {
                        t.get(s)
                            .is_none_or(|opts| opts.iter().all(|r| r.as_slice() == [*s]))
                    })
                })
                .collect(),
        };
        Ok(Et0lSystem {
            alphabet,
            terminals,
            axiom,
            tables: built,
        })
    }

    pub fn alphabet(&self) -> &[Sym] {
        &self.alphabet
    }

    pub fn terminals(&self) -> &[Sym] {
        &self.terminals
    }

    pub fn axiom(&self) -> &[Sym] {
        &self.axiom
    }

    pub fn tables(&self) -> &[Table] {
        &self.tables
    }

    fn is_terminal_word(&self, w: &[Sym]) -> bool {
        w.iter().all(|s| self.terminals.binary_search(s).is_ok())
    }

    /// All forms obtained from `form` by one application of `table`, dropping
    /// those longer than `bound`.
    fn rewrite(&self, form: &[Sym], table: &Table, bound: usize) -> HashSet<Word> {
        let mut partial: HashSet<Word> = HashSet::from([Vec::new()]);
        for (i, s) in form.iter().enumerate() {
            let identity = [vec![*s]];
            let options: &[Word] = table.get(s).map(|v| v.as_slice()).unwrap_or(&identity);
            // Every later symbol yields at least its shortest option.
            let rest_min: usize = form[i + 1..]
                .iter()
                .map(|r| {
                    table
                        .get(r)
                        .map(|v| v.iter().map(Vec::len).min().unwrap_or(0))
                        .unwrap_or(1)
                })
                .sum();
            let mut next = HashSet::new();
            for p in &partial {
                for o in options {
                    if p.len() + o.len() + rest_min > bound {
                        continue;
                    }
                    let mut w = p.clone();
                    w.extend_from_slice(o);
                    next.insert(w);
                }
            }
            partial = next;
            if partial.is_empty() {
                break;
            }
        }
        partial
    }

    /// Terminal words of length at most `max_len`, by breadth-first search
    /// over sentential forms of length at most `prune_bound`.
    pub fn generate(&self, max_len: usize, prune_bound: usize) -> Result<BTreeSet<Word>, LangError> {
        if prune_bound < max_len {
            return Err(LangError::Invalid(format!(
                "prune bound {prune_bound} is below max_len {max_len}"
            )));
        }
        let mut out = BTreeSet::new();
        if self.axiom.len() > prune_bound {
            return Ok(out);
        }
        let mut seen: HashSet<Word> = HashSet::from([self.axiom.clone()]);
        let mut queue: VecDeque<Word> = VecDeque::from([self.axiom.clone()]);
        while let Some(form) = queue.pop_front() {
            if form.len() <= max_len && self.is_terminal_word(&form) {
                out.insert(form.clone());
            }
            for table in &self.tables {
                for next in self.rewrite(&form, table, prune_bound) {
                    if seen.insert(next.clone()) {
                        queue.push_back(next);
                    }
                }
            }
        }
        Ok(out)
    }

    /// `{S→TTT}, {T→aT}, {T→bT}, {T→ε}`: generates `{www : w ∈ {a,b}*}`.
    pub fn l2() -> Et0lSystem {
        let s = |n: &str| Sym::new(n);
        let w = crate::sym::word;
        Et0lSystem::new(
            crate::sym::syms(&["S", "T", "a", "b"]),
            None,
            w("S"),
            vec![
                vec![(s("S"), w("T T T"))],
                vec![(s("T"), w("a T"))],
                vec![(s("T"), w("b T"))],
                vec![(s("T"), Vec::new())],
            ],
        )
        .expect("well-formed system")
    }

    /// `{S→ABC}, {A→aA, B→bB, C→cC}, {A→ε, B→ε, C→ε}`: generates
    /// `{aⁿbⁿcⁿ : n ≥ 0}`.
    pub fn l3() -> Et0lSystem {
        let s = |n: &str| Sym::new(n);
        let w = crate::sym::word;
        Et0lSystem::new(
            crate::sym::syms(&["S", "A", "B", "C", "a", "b", "c"]),
            None,
            w("S"),
            vec![
                vec![(s("S"), w("A B C"))],
                vec![
                    (s("A"), w("a A")),
                    (s("B"), w("b B")),
                    (s("C"), w("c C")),
                ],
                vec![
                    (s("A"), Vec::new()),
                    (s("B"), Vec::new()),
                    (s("C"), Vec::new()),
                ],
            ],
        )
        .expect("well-formed system")
    }
}

pub fn et0l_generate(
    sys: &Et0lSystem,
    max_len: usize,
    prune_bound: usize,
) -> Result<BTreeSet<Word>, LangError> {
    sys.generate(max_len, prune_bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sym::{syms, word};

    fn www(max_len: usize) -> BTreeSet<Word> {
        let mut out = BTreeSet::new();
        for n in 0..=max_len / 3 {
            for bits in 0..(1u32 << n) {
                let w: Word = (0..n)
                    .map(|i| Sym::new(if bits >> i & 1 == 0 { "a" } else { "b" }))
                    .collect();
                out.insert([w.clone(), w.clone(), w].concat());
            }
        }
        out
    }

    #[test]
    fn l2_small() {
        assert_eq!(Et0lSystem::l2().generate(6, 9).unwrap(), www(6));
    }

    #[test]
    fn l3_contains_empty_and_abc() {
        let words = Et0lSystem::l3().generate(6, 9).unwrap();
        assert_eq!(words, BTreeSet::from([vec![], word("a b c"), word("a a b b c c")]));
    }

    #[test]
    fn terminal_axiom() {
        let sys = Et0lSystem::new(
            syms(&["a", "S"]),
            None,
            word("a"),
            vec![vec![(Sym::new("S"), word("a"))]],
        )
        .unwrap();
        assert_eq!(sys.generate(5, 5).unwrap(), BTreeSet::from([word("a")]));
    }

    #[test]
    fn validation() {
        assert!(Et0lSystem::new(syms(&["a"]), None, word("a"), vec![]).is_err());
        assert!(Et0lSystem::new(
            syms(&["a"]),
            None,
            word("a"),
            vec![vec![(Sym::new("a"), word("q"))]]
        )
        .is_err());
        assert!(Et0lSystem::l2().generate(5, 4).is_err());
    }
}
