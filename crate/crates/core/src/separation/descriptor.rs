//! JSON descriptors of separation instances:
//! `{"B": [...], "K": {"kind": "builtin|nfa|et0l|ocm", "name_or_file": ...}}`.
//! Machine files are resolved relative to the descriptor's directory.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{build_sep_instance, builtin_k, SepError, SepInstance};
use crate::lang::{load_machine, Machine};
use crate::lang::LanguageRep;
use crate::sym::Sym;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KKind {
    Builtin,
    Nfa,
    Et0l,
    Ocm,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KSource {
    pub kind: KKind,
    pub name_or_file: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceDescriptor {
    #[serde(rename = "B")]
    pub b: Vec<Sym>,
    #[serde(rename = "K")]
    pub k: KSource,
}

impl InstanceDescriptor {
    pub fn from_json(text: &str) -> Result<Self, SepError> {
        serde_json::from_str(text).map_err(|e| SepError::Lang(crate::lang::json::json_error(e)))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("descriptor serializes")
    }

    /// Loads `K` (reading machine files under `base_dir`) and builds the
    /// instance. A built-in `K` must use its own alphabet as `B`.
    pub fn instantiate(&self, base_dir: &Path) -> Result<SepInstance, SepError> {
        let k = self.load_k(base_dir)?;
        build_sep_instance(self.b.clone(), k)
    }

    pub fn load_k(&self, base_dir: &Path) -> Result<LanguageRep, SepError> {
        if self.k.kind == KKind::Builtin {
            let (_, k) = builtin_k(&self.k.name_or_file)?;
            return Ok(k);
        }
        let path = base_dir.join(&self.k.name_or_file);
        let text = std::fs::read_to_string(&path)
            .map_err(|e| SepError::Descriptor(format!("{}: {e}", path.display())))?;
        let m = load_machine(&text)?;
        match (self.k.kind, m) {
            (KKind::Nfa, Machine::Nfa(n)) => Ok(LanguageRep::Regular(n)),
            (KKind::Et0l, Machine::Et0l(e)) => Ok(LanguageRep::et0l(e)),
            (KKind::Ocm, Machine::Ocm(o)) => Ok(LanguageRep::OneCounter(o)),
            (kind, m) => Err(SepError::Descriptor(format!(
                "{} holds a {} machine, expected {kind:?}",
                path.display(),
                m.kind()
            ))),
        }
    }
}
