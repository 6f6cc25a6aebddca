use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::{NodeKind, RayPoset, RelationKind};
use crate::error::Result;
use crate::poset::io_escape as escape;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeJson {
    pub id: String,
    pub kind: NodeKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationJson {
    pub lo: String,
    pub hi: String,
    pub kind: RelationKind,
}

/// Wire form of a ray poset. Any generating relations are accepted; the
/// writer emits relations not implied through an intermediate node.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RayPosetJson {
    pub nodes: Vec<NodeJson>,
    #[serde(default)]
    pub relations: Vec<RelationJson>,
}

impl RayPosetJson {
    pub fn into_ray_poset(self) -> Result<RayPoset> {
        let nodes: Vec<(String, NodeKind)> =
            self.nodes.into_iter().map(|n| (n.id, n.kind)).collect();
        let rels: Vec<(String, String, RelationKind)> = self
            .relations
            .into_iter()
            .map(|r| (r.lo, r.hi, r.kind))
            .collect();
        RayPoset::new_owned(nodes, rels)
    }
}

impl From<&RayPoset> for RayPosetJson {
    fn from(p: &RayPoset) -> Self {
        RayPosetJson {
            nodes: p
                .nodes()
                .iter()
                .map(|n| NodeJson {
                    id: n.label.clone(),
                    kind: n.kind,
                })
                .collect(),
            relations: p
                .reduced_relations()
                .into_iter()
                .map(|(a, b, kind)| RelationJson {
                    lo: p.label(a).to_string(),
                    hi: p.label(b).to_string(),
                    kind,
                })
                .collect(),
        }
    }
}

/// Elements drawn per ray before the ellipsis.
const DRAWN_LEVELS: usize = 3;

impl RayPoset {
    fn new_owned(
        nodes: Vec<(String, NodeKind)>,
        rels: Vec<(String, String, RelationKind)>,
    ) -> Result<Self> {
        let nodes: Vec<(&str, NodeKind)> = nodes.iter().map(|(l, k)| (l.as_str(), *k)).collect();
        let rels: Vec<(&str, &str, RelationKind)> = rels
            .iter()
            .map(|(a, b, k)| (a.as_str(), b.as_str(), *k))
            .collect();
        RayPoset::new(&nodes, &rels)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str::<RayPosetJson>(text)?.into_ray_poset()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&RayPosetJson::from(self)).expect("ray poset serializes")
    }

    /// DOT drawing: each ray is a boxed chain of its top elements ending in
    /// an ellipsis; relations attach to the top or the ellipsis as fits.
    pub fn to_dot(&self) -> String {
        let mut out = String::from(
            "digraph rayposet {\n  rankdir=BT;\n  compound=true;\n  node [shape=circle];\n",
        );
        let level_id = |i: usize, l: usize| format!("{}[{}]", self.label(i), l);
        let tail_id = |i: usize| format!("{}[…]", self.label(i));
        for i in 0..self.len() {
            match self.kind(i) {
                NodeKind::Point => {
                    let _ = writeln!(out, "  \"{}\";", escape(self.label(i)));
                }
                NodeKind::Ray => {
                    let _ = writeln!(out, "  subgraph \"cluster_{}\" {{", escape(self.label(i)));
                    let _ = writeln!(out, "    label=\"{}\";", escape(self.label(i)));
                    for l in 0..DRAWN_LEVELS {
                        let _ = writeln!(out, "    \"{}\" [shape=point];", escape(&level_id(i, l)));
                    }
                    let _ = writeln!(
                        out,
                        "    \"{}\" [shape=plaintext, label=\"⋮\"];",
                        escape(&tail_id(i))
                    );
                    let _ = writeln!(
                        out,
                        "    \"{}\" -> \"{}\" [style=dotted];",
                        escape(&tail_id(i)),
                        escape(&level_id(i, DRAWN_LEVELS - 1))
                    );
                    for l in (1..DRAWN_LEVELS).rev() {
                        let _ = writeln!(
                            out,
                            "    \"{}\" -> \"{}\";",
                            escape(&level_id(i, l)),
                            escape(&level_id(i, l - 1))
                        );
                    }
                    out.push_str("  }\n");
                }
            }
        }
        for (a, b, kind) in self.reduced_relations() {
            let (la, lb) = (self.label(a), self.label(b));
            match kind {
                RelationKind::Lt => {
                    let _ = writeln!(out, "  \"{}\" -> \"{}\";", escape(la), escape(lb));
                }
                RelationKind::PointBelowRay => {
                    let _ = writeln!(out, "  \"{}\" -> \"{}\";", escape(la), escape(&tail_id(b)));
                }
                RelationKind::RayBelowPoint => {
                    let _ = writeln!(
                        out,
                        "  \"{}\" -> \"{}\";",
                        escape(&level_id(a, 0)),
                        escape(lb)
                    );
                }
                RelationKind::Sync => {
                    for l in 0..DRAWN_LEVELS {
                        let _ = writeln!(
                            out,
                            "  \"{}\" -> \"{}\" [style=dashed];",
                            escape(&level_id(a, l)),
                            escape(&level_id(b, l))
                        );
                    }
                }
                RelationKind::All => {
                    let _ = writeln!(
                        out,
                        "  \"{}\" -> \"{}\" [label=\"all\"];",
                        escape(&level_id(a, 0)),
                        escape(&tail_id(b))
                    );
                }
            }
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
        for p in [zero_and_ray(), ray_alone(), two_ray(), dc_vs_strong_dc()] {
            assert_eq!(RayPoset::from_json(&p.to_json()).unwrap(), p);
        }
    }

    #[test]
    fn json_kinds_are_snake_case() {
        let text = zero_and_ray().to_json();
        assert!(text.contains("\"point_below_ray\""));
        assert!(text.contains("\"ray\""));
    }

    #[test]
    fn parse_reports_bad_kind() {
        let text = r#"{"nodes":[{"id":"a","kind":"point"},{"id":"b","kind":"point"}],
                       "relations":[{"lo":"a","hi":"b","kind":"sync"}]}"#;
        assert!(RayPoset::from_json(text).is_err());
    }

    #[test]
    fn dot_draws_rays_as_clusters() {
        let d = zero_and_ray().to_dot();
        assert!(d.contains("subgraph \"cluster_S\""));
        assert!(d.contains("\"0\" -> \"S[…]\";"));
        assert!(d.ends_with("}\n"));
    }
}
