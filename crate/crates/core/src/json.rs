//! Wire formats: graph JSON, polynomial JSON, multiaffine JSON.
//!
//! Graph JSON (UTF-8):
//! `{"directed": bool, "vertices": [string], "edges": [...], "bipartition": {"V1":[...],"V2":[...]}?}`
//! where a directed edge is `{"id","tail","head"}` and a non-oriented edge is
//! `{"id","ends":[a,b]}`. Unknown keys are rejected. Parsing preserves vertex
//! and edge order, and `parse ∘ serialize` is the identity on valid graphs.

use serde::{Deserialize, Serialize};

use crate::graph::{Bipartition, GraphError, OrientedGraph, UndirectedGraph};

/// Either kind of validated graph, as read from graph JSON.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParsedGraph {
    Oriented(OrientedGraph),
    Undirected(UndirectedGraph),
}

impl ParsedGraph {
    pub fn as_oriented(&self) -> Option<&OrientedGraph> {
        match self {
            ParsedGraph::Oriented(g) => Some(g),
            ParsedGraph::Undirected(_) => None,
        }
    }

    pub fn as_undirected(&self) -> Option<&UndirectedGraph> {
        match self {
            ParsedGraph::Undirected(g) => Some(g),
            ParsedGraph::Oriented(_) => None,
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphJson {
    directed: bool,
    vertices: Vec<String>,
    edges: Vec<EdgeJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    bipartition: Option<BipartitionJson>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeJson {
    id: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    tail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    head: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ends: Option<[String; 2]>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BipartitionJson {
    #[serde(rename = "V1")]
    v1: Vec<String>,
    #[serde(rename = "V2")]
    v2: Vec<String>,
}

/// Parses and structurally validates a graph JSON document.
pub fn parse_graph(text: &str) -> Result<ParsedGraph, GraphError> {
    let doc: GraphJson =
        serde_json::from_str(text).map_err(|e| GraphError::Json(e.to_string()))?;
    let bipartition = doc.bipartition.map(|b| Bipartition { v1: b.v1, v2: b.v2 });
    if doc.directed {
        let arcs = doc
            .edges
            .into_iter()
            .map(|e| {
                if e.ends.is_some() {
                    return Err(GraphError::Json(format!(
                        "directed edge {:?} must use tail/head, not ends",
                        e.id
                    )));
                }
                let tail = e.tail.ok_or_else(|| {
                    GraphError::Json(format!("directed edge {:?} missing tail", e.id))
                })?;
                let head = e.head.ok_or_else(|| {
                    GraphError::Json(format!("directed edge {:?} missing head", e.id))
                })?;
                Ok((e.id, tail, head))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ParsedGraph::Oriented(OrientedGraph::new(
            doc.vertices,
            arcs,
            bipartition,
        )?))
    } else {
        let edges = doc
            .edges
            .into_iter()
            .map(|e| {
                if e.tail.is_some() || e.head.is_some() {
                    return Err(GraphError::Json(format!(
                        "non-oriented edge {:?} must use ends, not tail/head",
                        e.id
                    )));
                }
                let [a, b] = e.ends.ok_or_else(|| {
                    GraphError::Json(format!("non-oriented edge {:?} missing ends", e.id))
                })?;
                Ok((e.id, a, b))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ParsedGraph::Undirected(UndirectedGraph::new(
            doc.vertices,
            edges,
            bipartition,
        )?))
    }
}

/// Serializes a graph back to its canonical JSON document.
pub fn serialize_graph(g: &ParsedGraph) -> String {
    let doc = match g {
        ParsedGraph::Oriented(g) => GraphJson {
            directed: true,
            vertices: g.vertices().to_vec(),
            edges: g
                .arcs()
                .iter()
                .map(|a| EdgeJson {
                    id: a.id().to_string(),
                    tail: Some(g.vertex_id(a.tail()).to_string()),
                    head: Some(g.vertex_id(a.head()).to_string()),
                    ends: None,
                })
                .collect(),
            bipartition: g.bipartition().map(|b| BipartitionJson {
                v1: b.v1.clone(),
                v2: b.v2.clone(),
            }),
        },
        ParsedGraph::Undirected(g) => GraphJson {
            directed: false,
            vertices: g.vertices().to_vec(),
            edges: g
                .edges()
                .iter()
                .map(|e| EdgeJson {
                    id: e.id().to_string(),
                    tail: None,
                    head: None,
                    ends: Some([
                        g.vertex_id(e.ends().0).to_string(),
                        g.vertex_id(e.ends().1).to_string(),
                    ]),
                })
                .collect(),
            bipartition: g.bipartition().map(|b| BipartitionJson {
                v1: b.v1.clone(),
                v2: b.v2.clone(),
            }),
        },
    };
    serde_json::to_string(&doc).expect("graph JSON serialization cannot fail")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_oriented_example() {
        let g = parse_graph(
            r#"{"directed":true,"vertices":["1","2"],"edges":[{"id":"a","tail":"1","head":"2"}]}"#,
        )
        .unwrap();
        let g = g.as_oriented().unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.arc_count(), 1);
    }

    #[test]
    fn rejects_self_loop_in_json() {
        let err = parse_graph(
            r#"{"directed":true,"vertices":["1"],"edges":[{"id":"a","tail":"1","head":"1"}]}"#,
        )
        .unwrap_err();
        assert!(matches!(err, GraphError::SelfLoop(_)));
    }

    #[test]
    fn parses_undirected_p3() {
        let g = parse_graph(
            r#"{"directed":false,"vertices":["1","2","3"],"edges":[{"id":"a","ends":["1","2"]},{"id":"b","ends":["2","3"]}]}"#,
        )
        .unwrap();
        let g = g.as_undirected().unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 2);
        assert!(g.is_simple());
    }

    #[test]
    fn rejects_unknown_keys() {
        assert!(parse_graph(
            r#"{"directed":true,"vertices":["1"],"edges":[],"color":"red"}"#
        )
        .is_err());
        assert!(parse_graph(
            r#"{"directed":true,"vertices":["1","2"],"edges":[{"id":"a","tail":"1","head":"2","w":3}]}"#
        )
        .is_err());
    }

    #[test]
    fn rejects_mixed_edge_fields() {
        assert!(parse_graph(
            r#"{"directed":true,"vertices":["1","2"],"edges":[{"id":"a","ends":["1","2"]}]}"#
        )
        .is_err());
        assert!(parse_graph(
            r#"{"directed":false,"vertices":["1","2"],"edges":[{"id":"a","tail":"1","head":"2"}]}"#
        )
        .is_err());
    }

    #[test]
    fn round_trip_preserves_ids_and_order() {
        let src = r#"{"directed":true,"vertices":["b","a","c"],"edges":[{"id":"e2","tail":"b","head":"a"},{"id":"e1","tail":"c","head":"b"}],"bipartition":{"V1":["b"],"V2":["a","c"]}}"#;
        let g = parse_graph(src).unwrap();
        let out = serialize_graph(&g);
        let g2 = parse_graph(&out).unwrap();
        assert_eq!(g, g2);
        assert_eq!(out, serialize_graph(&g2));
    }
}
