//! Graph ingestion: a line-oriented text format and a JSON alternative.
//!
//! Text format, one declaration per line, `#` starts a comment:
//!
//! ```text
//! vertices: v1 v2 v3          # one or more such lines
//! edge e1: v1 -> v2           # named edge
//! edge v2 -> v3               # id auto-assigned (first free e<n>)
//! edge f: v3 -> v3 * 2        # two parallel loops f_1, f_2
//! ```
//!
//! JSON alternative:
//!
//! ```json
//! {"vertices": ["v1"], "edges": [{"id": "e", "src": "v1", "dst": "v1", "mult": 2}]}
//! ```
//!
//! `mult` defaults to 1; giving `mult` (or `* k` in text) expands the
//! declaration into `k` parallel edges named `<id>_1 .. <id>_k`. Edges may
//! reference vertices declared on a later line. Vertex declaration order is
//! preserved and becomes the canonical vertex order of the graph.

use serde::Deserialize;

use crate::graph::Graph;
use crate::{Error, Result};

/// Parses either input format, sniffing JSON by a leading `{`.
pub fn parse_graph(text: &str) -> Result<Graph> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_dsl(text)
    }
}

#[derive(Debug)]
struct EdgeDecl {
    id: Option<String>,
    src: String,
    dst: String,
    mult: Option<u32>,
    line: usize,
    col: usize,
}

fn err(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        col,
        msg: msg.into(),
    }
}

/// Splits a line into `(1-based column, token)` pairs.
fn tokenize(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (col, ch) in line.chars().chain(std::iter::once(' ')).enumerate() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                let byte_start = line
                    .char_indices()
                    .nth(s)
                    .map(|(b, _)| b)
                    .unwrap_or(line.len());
                let byte_end = line
                    .char_indices()
                    .nth(col)
                    .map(|(b, _)| b)
                    .unwrap_or(line.len());
                out.push((s + 1, &line[byte_start..byte_end]));
            }
        } else if start.is_none() {
            start = Some(col);
        }
    }
    out
}

pub fn parse_dsl(text: &str) -> Result<Graph> {
    let mut vertices: Vec<String> = Vec::new();
    let mut decls: Vec<EdgeDecl> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let line = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        };
        let toks = tokenize(line);
        if toks.is_empty() {
            continue;
        }
        match toks[0].1 {
            "vertices:" => {
                if toks.len() == 1 {
                    return Err(err(
                        lineno,
                        toks[0].0,
                        "expected vertex ids after `vertices:`",
                    ));
                }
                for &(col, id) in &toks[1..] {
                    if vertices.iter().any(|v| v == id) {
                        return Err(err(lineno, col, format!("duplicate vertex id `{id}`")));
                    }
                    vertices.push(id.to_string());
                }
            }
            "edge" => {
                let mut rest = &toks[1..];
                if rest.is_empty() {
                    return Err(err(lineno, toks[0].0, "expected an edge description"));
                }
                let id = if rest[0].1.ends_with(':') {
                    let id = rest[0].1.trim_end_matches(':').to_string();
                    if id.is_empty() {
                        return Err(err(lineno, rest[0].0, "empty edge id"));
                    }
                    rest = &rest[1..];
                    Some(id)
                } else {
                    None
                };
                let (src_col, src) = match rest.first() {
                    Some(&t) => t,
                    None => return Err(err(lineno, toks[0].0, "expected a source vertex")),
                };
                match rest.get(1) {
                    Some(&(_, "->")) => {}
                    Some(&(col, t)) => {
                        return Err(err(lineno, col, format!("expected `->`, found `{t}`")))
                    }
                    None => {
                        return Err(err(lineno, src_col, "expected `-> <dst>` after the source"))
                    }
                }
                let (dst_col, dst) = match rest.get(2) {
                    Some(&t) => t,
                    None => return Err(err(lineno, src_col, "expected a range vertex after `->`")),
                };
                let mult = match rest.get(3) {
                    None => None,
                    Some(&(_, "*")) => match rest.get(4) {
                        Some(&(col, k)) => {
                            let k: u32 = k.parse().map_err(|_| {
                                err(
                                    lineno,
                                    col,
                                    format!("expected a positive multiplicity, found `{k}`"),
                                )
                            })?;
                            if k == 0 {
                                return Err(err(lineno, col, "multiplicity must be at least 1"));
                            }
                            if rest.len() > 5 {
                                let (col, t) = rest[5];
                                return Err(err(lineno, col, format!("unexpected token `{t}`")));
                            }
                            Some(k)
                        }
                        None => return Err(err(lineno, dst_col, "expected a count after `*`")),
                    },
                    Some(&(col, t)) => {
                        return Err(err(lineno, col, format!("unexpected token `{t}`")))
                    }
                };
                decls.push(EdgeDecl {
                    id,
                    src: src.to_string(),
                    dst: dst.to_string(),
                    mult,
                    line: lineno,
                    col: src_col,
                });
            }
            other => {
                return Err(err(
                    lineno,
                    toks[0].0,
                    format!("expected `vertices:` or `edge`, found `{other}`"),
                ))
            }
        }
    }
    assemble(vertices, decls)
}

fn parse_json(text: &str) -> Result<Graph> {
    #[derive(Deserialize)]
    struct RawEdge {
        #[serde(default)]
        id: Option<String>,
        src: String,
        dst: String,
        #[serde(default)]
        mult: Option<u32>,
    }
    #[derive(Deserialize)]
    struct RawGraph {
        vertices: Vec<String>,
        #[serde(default)]
        edges: Vec<RawEdge>,
    }
    let raw: RawGraph =
        serde_json::from_str(text).map_err(|e| err(e.line(), e.column(), e.to_string()))?;
    let decls = raw
        .edges
        .into_iter()
        .map(|e| {
            if e.mult == Some(0) {
                return Err(err(1, 1, "multiplicity must be at least 1"));
            }
            Ok(EdgeDecl {
                id: e.id,
                src: e.src,
                dst: e.dst,
                mult: e.mult,
                line: 1,
                col: 1,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    assemble(raw.vertices, decls)
}

/// Expands multiplicities, assigns auto ids and builds the graph; graph-level
/// validation failures are rewritten to carry the offending position.
fn assemble(vertices: Vec<String>, decls: Vec<EdgeDecl>) -> Result<Graph> {
    let mut taken: std::collections::HashSet<String> = std::collections::HashSet::new();
    for d in &decls {
        if let Some(id) = &d.id {
            let expanded: Vec<String> = match d.mult {
                None => vec![id.clone()],
                Some(k) => (1..=k).map(|i| format!("{id}_{i}")).collect(),
            };
            for e in expanded {
                if !taken.insert(e.clone()) {
                    return Err(err(d.line, d.col, format!("duplicate edge id `{e}`")));
                }
            }
        }
    }
    let mut next_auto = 1usize;
    let mut fresh = move |taken: &mut std::collections::HashSet<String>| -> String {
        loop {
            let cand = format!("e{next_auto}");
            next_auto += 1;
            if taken.insert(cand.clone()) {
                return cand;
            }
        }
    };
    let mut edges = Vec::new();
    for d in &decls {
        let count = d.mult.unwrap_or(1);
        for i in 1..=count {
            let id = match (&d.id, d.mult) {
                (Some(id), None) => id.clone(),
                (Some(id), Some(_)) => format!("{id}_{i}"),
                (None, _) => fresh(&mut taken),
            };
            edges.push((id, d.src.clone(), d.dst.clone(), d.line, d.col));
        }
    }
    let g = Graph::new(
        vertices,
        edges
            .iter()
            .map(|(id, s, t, _, _)| (id.clone(), s.clone(), t.clone())),
    );
    match g {
        Ok(g) => Ok(g),
        Err(Error::UnknownVertex(v)) => {
            let pos = edges
                .iter()
                .find(|(_, s, t, _, _)| *s == v || *t == v)
                .map(|&(_, _, _, line, col)| (line, col))
                .unwrap_or((1, 1));
            Err(err(pos.0, pos.1, format!("unknown vertex `{v}`")))
        }
        Err(Error::InvalidId { kind, id, why }) => {
            Err(err(1, 1, format!("invalid {kind} id `{id}`: {why}")))
        }
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{generate, FamilySpec};

    #[test]
    fn smallest_cyclic_graph() {
        let g = parse_graph("vertices: v\nedge e: v -> v").unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.edge(0).src, 0);
        assert_eq!(g.edge(0).dst, 0);
    }

    #[test]
    fn line_dsl_matches_family() {
        let text = "\
vertices: v1 v2 v3 v4 v5
edge e1: v1 -> v2
edge e2: v2 -> v3
edge e3: v3 -> v4
edge e4: v4 -> v5
";
        let g = parse_graph(text).unwrap();
        assert_eq!(g.vertex_count(), 5);
        assert_eq!(g.edge_count(), 4);
        assert_eq!(g, generate(&FamilySpec::Line(5)).unwrap());
    }

    #[test]
    fn undeclared_vertex_is_an_error() {
        let e = parse_graph("vertices: a\nedge e: a -> b").unwrap_err();
        match e {
            Error::Parse { line, msg, .. } => {
                assert_eq!(line, 2);
                assert!(msg.contains("unknown vertex `b`"), "{msg}");
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn multiplicity_expansion_names() {
        let g = parse_graph("vertices: v\nedge f: v -> v * 3").unwrap();
        let ids: Vec<&str> = g.edges().iter().map(|e| e.id.as_str()).collect();
        assert_eq!(ids, ["f_1", "f_2", "f_3"]);
    }

    #[test]
    fn auto_ids_skip_taken_ones() {
        let g = parse_graph("vertices: v\nedge e1: v -> v\nedge v -> v\nedge v -> v").unwrap();
        let ids: Vec<&str> = g.edges().iter().map(|e| e.id.as_str()).collect();
        assert_eq!(ids, ["e1", "e2", "e3"]);
    }

    #[test]
    fn comments_and_blank_lines_are_skipped() {
        let g = parse_graph("# heading\n\nvertices: a b # trailing\nedge a -> b\n").unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn forward_references_are_allowed() {
        let g = parse_graph("vertices: a\nedge e: a -> b\nvertices: b").unwrap();
        assert_eq!(g.vertex_ids(), ["a", "b"]);
    }

    #[test]
    fn json_input_with_mult() {
        let g = parse_graph(
            r#"{"vertices": ["u", "w"], "edges": [{"id": "a", "src": "u", "dst": "w", "mult": 2}, {"src": "w", "dst": "u"}]}"#,
        )
        .unwrap();
        let ids: Vec<&str> = g.edges().iter().map(|e| e.id.as_str()).collect();
        assert_eq!(ids, ["a_1", "a_2", "e1"]);
    }

    #[test]
    fn json_errors_carry_positions() {
        let e = parse_graph("{\"vertices\": [1]}").unwrap_err();
        assert!(matches!(e, Error::Parse { .. }));
    }

    #[test]
    fn syntax_error_position() {
        let e = parse_graph("vertices: a\nedge e: a => a").unwrap_err();
        match e {
            Error::Parse { line, col, msg } => {
                assert_eq!((line, col), (2, 11));
                assert!(msg.contains("expected `->`"));
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn duplicate_vertex_position() {
        let e = parse_graph("vertices: a a").unwrap_err();
        assert!(
            matches!(
                e,
                Error::Parse {
                    line: 1,
                    col: 13,
                    ..
                }
            ),
            "{e:?}"
        );
    }

    #[test]
    fn zero_multiplicity_is_rejected() {
        assert!(parse_graph("vertices: v\nedge e: v -> v * 0").is_err());
        assert!(
            parse_graph(r#"{"vertices":["v"],"edges":[{"src":"v","dst":"v","mult":0}]}"#).is_err()
        );
    }

    #[test]
    fn unicode_ids_and_columns() {
        let g = parse_graph("vertices: α β\nedge π: α -> β").unwrap();
        assert_eq!(g.vertex_ids(), ["α", "β"]);
        assert_eq!(g.edge(0).id, "π");
        // error columns are in characters, not bytes
        let e = parse_graph("vertices: α α").unwrap_err();
        assert!(
            matches!(
                e,
                Error::Parse {
                    line: 1,
                    col: 13,
                    ..
                }
            ),
            "{e:?}"
        );
    }

    #[test]
    fn dsl_round_trip_is_identity() {
        let g = generate(&FamilySpec::Mult2).unwrap();
        assert_eq!(parse_graph(&g.to_dsl()).unwrap(), g);
        let j = g.to_json().to_string();
        assert_eq!(parse_graph(&j).unwrap(), g);
    }
}
