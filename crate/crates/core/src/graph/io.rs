//! JSON and DOT exports of [`Complex2`].

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Complex2, GraphError};

#[derive(Serialize, Deserialize)]
struct VertexDoc {
    id: usize,
    label: String,
}

#[derive(Serialize, Deserialize)]
struct ComplexDoc {
    vertices: Vec<VertexDoc>,
    edges: Vec<[usize; 2]>,
    triangles: Vec<[usize; 3]>,
    #[serde(default)]
    metadata: BTreeMap<String, String>,
}

impl Serialize for Complex2 {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let doc = ComplexDoc {
            vertices: self
                .labels
                .iter()
                .enumerate()
                .map(|(id, label)| VertexDoc { id, label: label.clone() })
                .collect(),
            edges: self.edges.clone(),
            triangles: self.triangles.clone(),
            metadata: self.metadata.clone(),
        };
        doc.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Complex2 {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let doc = ComplexDoc::deserialize(deserializer)?;
        let n = doc.vertices.len();
        let mut labels: Vec<Option<String>> = vec![None; n];
        for v in doc.vertices {
            let slot = labels
                .get_mut(v.id)
                .ok_or_else(|| serde::de::Error::custom(format!("vertex id {} out of range", v.id)))?;
            if slot.replace(v.label).is_some() {
                return Err(serde::de::Error::custom(format!("duplicate vertex id {}", v.id)));
            }
        }
        let labels = labels.into_iter().map(Option::unwrap).collect();
        let mut c = Complex2::new(labels, doc.edges, doc.triangles).map_err(serde::de::Error::custom)?;
        c.metadata = doc.metadata;
        Ok(c)
    }
}

impl Complex2 {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("complex serializes")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("complex serializes")
    }

    pub fn from_json(s: &str) -> Result<Complex2, GraphError> {
        serde_json::from_str(s).map_err(|e| GraphError::Json(e.to_string()))
    }

    /// Graphviz export. Lossy: only vertices and edges are written; the
    /// triangle count goes into a comment.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        writeln!(out, "// lossy export: edges only").unwrap();
        writeln!(out, "// triangles: {}", self.triangle_count()).unwrap();
        writeln!(out, "graph complex {{").unwrap();
        for (i, l) in self.labels.iter().enumerate() {
            writeln!(out, "  {i} [label=\"{}\"];", l.replace('"', "\\\"")).unwrap();
        }
        for e in &self.edges {
            writeln!(out, "  {} -- {};", e[0], e[1]).unwrap();
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_layout() {
        let c = Complex2::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![[0, 1], [1, 2], [2, 0]],
            vec![[0, 1, 2]],
        )
        .unwrap()
        .with_meta("k", "v");
        let v: serde_json::Value = serde_json::from_str(&c.to_json()).unwrap();
        assert_eq!(v["vertices"][1]["id"], 1);
        assert_eq!(v["vertices"][1]["label"], "b");
        assert_eq!(v["edges"][2], serde_json::json!([2, 0]));
        assert_eq!(v["triangles"][0], serde_json::json!([0, 1, 2]));
        assert_eq!(v["metadata"]["k"], "v");
        assert_eq!(Complex2::from_json(&c.to_json()).unwrap(), c);
    }

    #[test]
    fn json_rejects_invalid() {
        let bad = r#"{"vertices":[{"id":0,"label":"a"}],"edges":[[0,1]],"triangles":[]}"#;
        assert!(Complex2::from_json(bad).is_err());
        let dup = r#"{"vertices":[{"id":0,"label":"a"},{"id":0,"label":"b"}],"edges":[],"triangles":[]}"#;
        assert!(Complex2::from_json(dup).is_err());
    }

    #[test]
    fn dot_has_edges_and_triangle_comment() {
        let c = Complex2::complete_graph(3);
        let dot = c.to_dot();
        assert!(dot.contains("// triangles: 0"));
        assert!(dot.contains("0 -- 1;"));
        assert_eq!(dot.matches("--").count(), 3);
    }
}
