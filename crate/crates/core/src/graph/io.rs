use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::{Mult, MultiGraph};
use crate::error::{Error, Result};
use crate::poset::io_escape as escape;

/// Wire form of a multiplicity: a positive integer or `"inf"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MultJson {
    Count(u64),
    Word(String),
}

impl MultJson {
    pub fn to_mult(&self) -> Result<Mult> {
        match self {
            MultJson::Count(0) => Err(Error::BadMultiplicity),
            MultJson::Count(n) => Ok(Mult::Finite(*n)),
            MultJson::Word(w) if w == "inf" => Ok(Mult::Inf),
            MultJson::Word(_) => Err(Error::BadMultiplicity),
        }
    }

    fn from_mult(m: Mult) -> MultJson {
        match m {
            Mult::Inf => MultJson::Word("inf".into()),
            Mult::Finite(n) => MultJson::Count(n),
            Mult::Zero => MultJson::Count(0),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub src: String,
    pub dst: String,
    pub mult: MultJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub edges: Vec<EdgeJson>,
}

impl GraphJson {
    pub fn into_graph(self) -> Result<MultiGraph> {
        let mut edges = Vec::with_capacity(self.edges.len());
        for e in self.edges {
            edges.push((e.src, e.dst, e.mult.to_mult()?));
        }
        MultiGraph::new(&self.vertices, &edges)
    }
}

impl From<&MultiGraph> for GraphJson {
    fn from(g: &MultiGraph) -> Self {
        GraphJson {
            vertices: g.labels().to_vec(),
            edges: g
                .edges()
                .map(|(s, d, m)| EdgeJson {
                    src: g.label(s).to_string(),
                    dst: g.label(d).to_string(),
                    mult: MultJson::from_mult(m),
                })
                .collect(),
        }
    }
}

impl MultiGraph {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str::<GraphJson>(text)?.into_graph()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&GraphJson::from(self)).expect("graph serializes")
    }

    /// DOT export; multiplicities above one are edge labels, `∞` for infinite.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph E {\n  node [shape=circle];\n");
        for l in self.labels() {
            let _ = writeln!(out, "  \"{}\";", escape(l));
        }
        for (s, d, m) in self.edges() {
            let (a, b) = (escape(self.label(s)), escape(self.label(d)));
            let _ = match m {
                Mult::Inf => writeln!(out, "  \"{a}\" -> \"{b}\" [label=\"∞\"];"),
                Mult::Finite(n) if n > 1 => writeln!(out, "  \"{a}\" -> \"{b}\" [label=\"{n}\"];"),
                _ => writeln!(out, "  \"{a}\" -> \"{b}\";"),
            };
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn json_round_trip() {
        for g in [chain2(), single(), loops(3), breaking()] {
            assert_eq!(MultiGraph::from_json(&g.to_json()).unwrap(), g);
        }
    }

    #[test]
    fn inf_is_a_string() {
        let text = breaking().to_json();
        assert!(text.contains("\"mult\": \"inf\""));
        assert!(text.contains("\"mult\": 1"));
    }

    #[test]
    fn bad_multiplicities_rejected() {
        let zero = r#"{"vertices":["a","b"],"edges":[{"src":"a","dst":"b","mult":0}]}"#;
        assert!(matches!(
            MultiGraph::from_json(zero),
            Err(Error::BadMultiplicity)
        ));
        let word = r#"{"vertices":["a","b"],"edges":[{"src":"a","dst":"b","mult":"many"}]}"#;
        assert!(matches!(
            MultiGraph::from_json(word),
            Err(Error::BadMultiplicity)
        ));
        let unknown = r#"{"vertices":["a"],"edges":[{"src":"a","dst":"b","mult":1}]}"#;
        assert!(matches!(
            MultiGraph::from_json(unknown),
            Err(Error::UnknownVertex(_))
        ));
    }

    #[test]
    fn dot_labels() {
        let d = breaking().to_dot();
        assert!(d.contains("\"w\" -> \"a\" [label=\"∞\"];"));
        assert!(d.contains("\"w\" -> \"b\";"));
        assert!(loops(2).to_dot().contains("[label=\"2\"]"));
    }
}
