use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::FinitePoset;
use crate::error::Result;

/// Wire form of a finite poset. `le` may hold any generating pairs; the
/// writer emits Hasse covers only.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetJson {
    pub elements: Vec<String>,
    #[serde(default)]
    pub le: Vec<[String; 2]>,
}

impl PosetJson {
    pub fn into_poset(self) -> Result<FinitePoset> {
        let pairs: Vec<(String, String)> = self.le.into_iter().map(|[a, b]| (a, b)).collect();
        FinitePoset::new(&self.elements, &pairs)
    }
}

impl From<&FinitePoset> for PosetJson {
    fn from(p: &FinitePoset) -> Self {
        PosetJson {
            elements: p.labels().to_vec(),
            le: p
                .covers()
                .iter()
                .map(|&(a, b)| [p.label(a).to_string(), p.label(b).to_string()])
                .collect(),
        }
    }
}

impl FinitePoset {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str::<PosetJson>(text)?.into_poset()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&PosetJson::from(self)).expect("poset serializes")
    }

    /// Hasse diagram in DOT, edges drawn from lower to upper element.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph poset {\n  rankdir=BT;\n  node [shape=circle];\n");
        for l in self.labels() {
            let _ = writeln!(out, "  \"{}\";", escape(l));
        }
        for &(a, b) in self.covers() {
            let _ = writeln!(
                out,
                "  \"{}\" -> \"{}\";",
                escape(self.label(a)),
                escape(self.label(b))
            );
        }
        out.push_str("}\n");
        out
    }
}

pub(crate) fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}
