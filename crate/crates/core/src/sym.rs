//! Interned generator and alphabet symbols.
//!
//! Symbols such as `p00`, `b'-1` or `Omega` are atomic: a word is a sequence
//! of [`Sym`] values and is never split into characters. Interning makes a
//! symbol a thin `Copy` handle that compares by identity and orders by name.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{LazyLock, Mutex};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

static INTERNER: LazyLock<Mutex<HashMap<&'static str, &'static &'static str>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

/// An interned symbol.
#[derive(Clone, Copy)]
pub struct Sym(&'static &'static str);

/// A word over interned symbols.
pub type Word = Vec<Sym>;

impl Sym {
    pub fn new(name: &str) -> Sym {
        let mut set = INTERNER.lock().unwrap_or_else(|e| e.into_inner());
        if let Some(&found) = set.get(name) {
            return Sym(found);
        }
        let leaked: &'static str = Box::leak(name.to_owned().into_boxed_str());
        let handle: &'static &'static str = Box::leak(Box::new(leaked));
        set.insert(leaked, handle);
        Sym(handle)
    }

    pub fn name(self) -> &'static str {
        self.0
    }
}

impl PartialEq for Sym {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.0, other.0)
    }
}

impl Eq for Sym {}

impl Hash for Sym {
    fn hash<H: Hasher>(&self, state: &mut H) {
        (self.0 as *const &'static str as usize).hash(state)
    }
}

impl PartialOrd for Sym {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Sym {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        if self == other {
            std::cmp::Ordering::Equal
        } else {
            self.name().cmp(other.name())
        }
    }
}

impl fmt::Debug for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl From<&str> for Sym {
    fn from(s: &str) -> Self {
        Sym::new(s)
    }
}

impl Serialize for Sym {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for Sym {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Ok(Sym::new(&s))
    }
}

/// Parses a whitespace-separated word, e.g. `"x p00 x y"`.
pub fn word(text: &str) -> Word {
    text.split_whitespace().map(Sym::new).collect()
}

/// Renders a word with single spaces; the empty word renders as `ε`.
pub fn show_word(w: &[Sym]) -> String {
    if w.is_empty() {
        return "ε".to_owned();
    }
    w.iter().map(|s| s.name()).collect::<Vec<_>>().join(" ")
}

/// Interns each name.
pub fn syms(names: &[&str]) -> Vec<Sym> {
    names.iter().map(|n| Sym::new(n)).collect()
}
