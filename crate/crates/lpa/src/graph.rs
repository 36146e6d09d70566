//! Finite directed multigraphs with named vertices and edges.
//!
//! Vertices keep their declaration order; that order fixes the rows and
//! columns of the adjacency matrix and makes every downstream report
//! reproducible. Parallel edges are real: each carries its own id.

use std::collections::HashMap;
use std::fmt;

use crate::{Error, Result};

/// An edge of a [`Graph`], stored with vertex indices into the owning graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub src: usize,
    pub dst: usize,
}

/// A finite directed multigraph `E = (E^0, E^1, r, s)`.
#[derive(Debug, Clone)]
pub struct Graph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    vertex_lookup: HashMap<String, usize>,
    edge_lookup: HashMap<String, usize>,
    out_edges: Vec<Vec<usize>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.edges == other.edges
    }
}

impl Eq for Graph {}

/// Ids must survive a round trip through the text format, so they cannot
/// contain whitespace or `#`, cannot end with `:`, and cannot collide with
/// the `->` and `*` tokens.
fn check_id(kind: &'static str, id: &str) -> Result<()> {
    let why = if id.is_empty() {
        Some("empty")
    } else if id.chars().any(|c| c.is_whitespace()) {
        Some("contains whitespace")
    } else if id.contains('#') {
        Some("contains `#`")
    } else if id.ends_with(':') {
        Some("ends with `:`")
    } else if id == "->" || id == "*" {
        Some("reserved token")
    } else {
        None
    };
    match why {
        Some(why) => Err(Error::InvalidId {
            kind,
            id: id.to_string(),
            why,
        }),
        None => Ok(()),
    }
}

impl Graph {
    /// Builds a graph from vertex ids and `(edge id, source id, range id)`
    /// triples, validating id uniqueness and edge endpoints.
    pub fn new<V, E>(vertices: V, edges: E) -> Result<Graph>
    where
        V: IntoIterator<Item = String>,
        E: IntoIterator<Item = (String, String, String)>,
    {
        let vertices: Vec<String> = vertices.into_iter().collect();
        let mut vertex_lookup = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            check_id("vertex", v)?;
            if vertex_lookup.insert(v.clone(), i).is_some() {
                return Err(Error::DuplicateId {
                    kind: "vertex",
                    id: v.clone(),
                });
            }
        }
        let mut edge_lookup = HashMap::new();
        let mut out_edges = vec![Vec::new(); vertices.len()];
        let mut built = Vec::new();
        for (id, src, dst) in edges {
            check_id("edge", &id)?;
            let src = *vertex_lookup
                .get(&src)
                .ok_or_else(|| Error::UnknownVertex(src.clone()))?;
            let dst = *vertex_lookup
                .get(&dst)
                .ok_or_else(|| Error::UnknownVertex(dst.clone()))?;
            if edge_lookup.insert(id.clone(), built.len()).is_some() {
                return Err(Error::DuplicateId { kind: "edge", id });
            }
            out_edges[src].push(built.len());
            built.push(Edge { id, src, dst });
        }
        Ok(Graph {
            vertices,
            edges: built,
            vertex_lookup,
            edge_lookup,
            out_edges,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex_ids(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_id(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_index(&self, id: &str) -> Result<usize> {
        self.vertex_lookup
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(id.to_string()))
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    pub fn edge_index(&self, id: &str) -> Result<usize> {
        self.edge_lookup
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownEdge(id.to_string()))
    }

    /// Indices of the edges emitted by `v`, in declaration order.
    pub fn out_edges(&self, v: usize) -> &[usize] {
        &self.out_edges[v]
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out_edges[v].len()
    }

    /// The vertices that emit no edges.
    pub fn sinks(&self) -> VertexSet {
        VertexSet {
            members: (0..self.vertex_count())
                .filter(|&v| self.out_degree(v) == 0)
                .collect(),
        }
    }

    /// `v >= w`: true iff `v == w` or a directed path from `v` to `w` exists.
    pub fn reaches(&self, v: usize, w: usize) -> bool {
        self.reachable_from(v)[w]
    }

    /// Same as [`Graph::reaches`] with vertices given by id.
    pub fn reaches_ids(&self, v: &str, w: &str) -> Result<bool> {
        Ok(self.reaches(self.vertex_index(v)?, self.vertex_index(w)?))
    }

    /// Reflexive-transitive forward reachability from a single vertex.
    pub fn reachable_from(&self, v: usize) -> Vec<bool> {
        let mut seen = vec![false; self.vertex_count()];
        seen[v] = true;
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            for &e in self.out_edges(u) {
                let w = self.edges[e].dst;
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    }

    /// Full reachability closure; `m[v][w]` iff `v >= w`.
    pub fn reachability(&self) -> Vec<Vec<bool>> {
        (0..self.vertex_count())
            .map(|v| self.reachable_from(v))
            .collect()
    }

    /// Edge multiplicity matrix in declaration vertex order.
    pub fn adjacency_matrix(&self) -> AdjacencyMatrix {
        let n = self.vertex_count();
        let mut entries = vec![0i64; n * n];
        for e in &self.edges {
            entries[e.src * n + e.dst] += 1;
        }
        AdjacencyMatrix { n, entries }
    }

    /// True iff the graph has no directed cycle (loops count as cycles).
    pub fn is_acyclic(&self) -> bool {
        // Kahn: repeatedly strip vertices of in-degree 0.
        let n = self.vertex_count();
        let mut indeg = vec![0usize; n];
        for e in &self.edges {
            indeg[e.dst] += 1;
        }
        let mut queue: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut removed = 0;
        while let Some(v) = queue.pop() {
            removed += 1;
            for &e in self.out_edges(v) {
                let w = self.edges[e].dst;
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    queue.push(w);
                }
            }
        }
        removed == n
    }

    /// Strongly connected components, each sorted, listed by smallest member.
    pub fn sccs(&self) -> Vec<Vec<usize>> {
        let mut comps = tarjan(self);
        for c in comps.iter_mut() {
            c.sort_unstable();
        }
        comps.sort_unstable();
        comps
    }

    /// Component id per vertex plus a per-component "contains a cycle" flag
    /// (size at least two, or a single vertex with a loop).
    pub fn scc_info(&self) -> SccInfo {
        let comps = self.sccs();
        let mut comp_of = vec![0usize; self.vertex_count()];
        for (i, c) in comps.iter().enumerate() {
            for &v in c {
                comp_of[v] = i;
            }
        }
        let cyclic = comps
            .iter()
            .map(|c| {
                c.len() >= 2
                    || c.iter()
                        .any(|&v| self.out_edges(v).iter().any(|&e| self.edges[e].dst == v))
            })
            .collect();
        SccInfo {
            components: comps,
            comp_of,
            cyclic,
        }
    }

    /// The subgraph induced on `keep`: those vertices plus every edge with
    /// both endpoints inside. Ids and relative order are preserved.
    pub fn induced_subgraph(&self, keep: &VertexSet) -> Graph {
        let vertices = keep.iter().map(|v| self.vertices[v].clone());
        let edges = self
            .edges
            .iter()
            .filter(|&e| keep.contains(e.src) && keep.contains(e.dst))
            .map(|e| {
                (
                    e.id.clone(),
                    self.vertices[e.src].clone(),
                    self.vertices[e.dst].clone(),
                )
            });
        Graph::new(vertices, edges).expect("induced subgraph of a valid graph is valid")
    }

    /// Renders the graph in the text input format.
    pub fn to_dsl(&self) -> String {
        let mut s = String::new();
        s.push_str("vertices:");
        for v in &self.vertices {
            s.push(' ');
            s.push_str(v);
        }
        s.push('\n');
        for e in &self.edges {
            s.push_str(&format!(
                "edge {}: {} -> {}\n",
                e.id, self.vertices[e.src], self.vertices[e.dst]
            ));
        }
        s
    }

    /// Renders the graph in the JSON input format.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "schema": 1,
            "vertices": self.vertices,
            "edges": self.edges.iter().map(|e| serde_json::json!({
                "id": e.id,
                "src": self.vertices[e.src],
                "dst": self.vertices[e.dst],
            })).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_dsl())
    }
}

/// Output of [`Graph::scc_info`].
#[derive(Debug, Clone)]
pub struct SccInfo {
    pub components: Vec<Vec<usize>>,
    pub comp_of: Vec<usize>,
    pub cyclic: Vec<bool>,
}

impl SccInfo {
    pub fn is_on_cycle(&self, v: usize) -> bool {
        self.cyclic[self.comp_of[v]]
    }
}

fn tarjan(g: &Graph) -> Vec<Vec<usize>> {
    // Iterative Tarjan so CLI-sized inputs cannot overflow the stack.
    const UNSET: usize = usize::MAX;
    let n = g.vertex_count();
    let mut index = vec![UNSET; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut next = 0usize;
    let mut comps = Vec::new();
    // (vertex, next out-edge position to explore)
    let mut work: Vec<(usize, usize)> = Vec::new();
    for start in 0..n {
        if index[start] != UNSET {
            continue;
        }
        work.push((start, 0));
        index[start] = next;
        low[start] = next;
        next += 1;
        stack.push(start);
        on_stack[start] = true;
        while let Some(&mut (v, ref mut pos)) = work.last_mut() {
            if *pos < g.out_degree(v) {
                let e = g.out_edges(v)[*pos];
                *pos += 1;
                let w = g.edge(e).dst;
                if index[w] == UNSET {
                    index[w] = next;
                    low[w] = next;
                    next += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    work.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                work.pop();
                if let Some(&(parent, _)) = work.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack underflow");
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comps.push(comp);
                }
            }
        }
    }
    comps
}

/// A subset of a graph's vertices, kept sorted by vertex index so that the
/// canonical order of the host graph is inherited.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexSet {
    members: Vec<usize>,
}

impl VertexSet {
    pub fn empty() -> VertexSet {
        VertexSet::default()
    }

    /// All vertices of `g`.
    pub fn full(g: &Graph) -> VertexSet {
        VertexSet {
            members: (0..g.vertex_count()).collect(),
        }
    }

    /// A set from vertex indices of `g`; duplicates collapse.
    pub fn from_indices<I>(g: &Graph, indices: I) -> Result<VertexSet>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut members: Vec<usize> = indices.into_iter().collect();
        if let Some(&bad) = members.iter().find(|&&v| v >= g.vertex_count()) {
            return Err(Error::UnknownVertex(format!("#{bad}")));
        }
        members.sort_unstable();
        members.dedup();
        Ok(VertexSet { members })
    }

    /// A set from vertex ids of `g`.
    pub fn from_ids<'a, I>(g: &Graph, ids: I) -> Result<VertexSet>
    where
        I: IntoIterator<Item = &'a str>,
    {
        let mut members = Vec::new();
        for id in ids {
            members.push(g.vertex_index(id)?);
        }
        members.sort_unstable();
        members.dedup();
        Ok(VertexSet { members })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.members
    }

    /// Ids of the members in canonical order.
    pub fn ids<'g>(&self, g: &'g Graph) -> Vec<&'g str> {
        self.members.iter().map(|&v| g.vertex_id(v)).collect()
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut members = self.members.clone();
        members.extend_from_slice(&other.members);
        members.sort_unstable();
        members.dedup();
        VertexSet { members }
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        VertexSet {
            members: self
                .members
                .iter()
                .copied()
                .filter(|&v| other.contains(v))
                .collect(),
        }
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        VertexSet {
            members: self
                .members
                .iter()
                .copied()
                .filter(|&v| !other.contains(v))
                .collect(),
        }
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.members.iter().all(|&v| other.contains(v))
    }

    /// Checks that every member is a vertex of `g`.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        match self.members.last() {
            Some(&v) if v >= g.vertex_count() => Err(Error::UnknownVertex(format!("#{v}"))),
            _ => Ok(()),
        }
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        let mut members: Vec<usize> = iter.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        VertexSet { members }
    }
}

/// Square matrix counting parallel edges between ordered vertex pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjacencyMatrix {
    n: usize,
    entries: Vec<i64>,
}

impl AdjacencyMatrix {
    pub fn dim(&self) -> usize {
        self.n
    }

    /// Number of edges `u -> v`.
    pub fn get(&self, u: usize, v: usize) -> i64 {
        self.entries[u * self.n + v]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        (0..self.n)
            .map(|u| self.entries[u * self.n..(u + 1) * self.n].to_vec())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{generate, FamilySpec};

    fn line(n: u32) -> Graph {
        generate(&FamilySpec::Line(n)).unwrap()
    }

    fn rose(n: u32) -> Graph {
        generate(&FamilySpec::Rose(n)).unwrap()
    }

    #[test]
    fn sinks_of_line_and_rose() {
        let g = line(5);
        assert_eq!(g.sinks().ids(&g), ["v5"]);
        let r = rose(3);
        assert!(r.sinks().is_empty());
    }

    #[test]
    fn sinks_of_edgeless_graph() {
        let g = Graph::new(["a".into(), "b".into()], []).unwrap();
        assert_eq!(g.sinks().ids(&g), ["a", "b"]);
    }

    #[test]
    fn reaches_along_a_line() {
        let g = line(3);
        assert!(g.reaches_ids("v1", "v3").unwrap());
        assert!(!g.reaches_ids("v3", "v1").unwrap());
        assert!(g.reaches_ids("v2", "v2").unwrap());
        assert!(matches!(
            g.reaches_ids("v1", "nope"),
            Err(Error::UnknownVertex(_))
        ));
    }

    #[test]
    fn reaches_is_reflexive_on_a_loop() {
        let g = generate(&FamilySpec::Loop).unwrap();
        assert!(g.reaches(0, 0));
    }

    #[test]
    fn adjacency_of_rose_counts_parallels() {
        let g = rose(4);
        let m = g.adjacency_matrix();
        assert_eq!(m.dim(), 1);
        assert_eq!(m.get(0, 0), 4);
    }

    #[test]
    fn adjacency_of_mult2_matches_parallel_counts() {
        let g = generate(&FamilySpec::Mult2).unwrap();
        assert_eq!(g.adjacency_matrix().rows(), [[5, 2], [4, 3]]);
    }

    #[test]
    fn adjacency_of_edgeless_is_zero() {
        let g = Graph::new(["a".into(), "b".into()], []).unwrap();
        assert_eq!(g.adjacency_matrix().rows(), [[0, 0], [0, 0]]);
    }

    #[test]
    fn acyclicity() {
        assert!(line(5).is_acyclic());
        assert!(!generate(&FamilySpec::Loop).unwrap().is_acyclic());
        assert!(!rose(2).is_acyclic());
    }

    #[test]
    fn duplicate_ids_rejected() {
        assert!(matches!(
            Graph::new(["a".into(), "a".into()], []),
            Err(Error::DuplicateId { kind: "vertex", .. })
        ));
        let edges = [
            ("e".into(), "a".into(), "a".into()),
            ("e".into(), "a".into(), "a".into()),
        ];
        assert!(matches!(
            Graph::new(["a".into()], edges),
            Err(Error::DuplicateId { kind: "edge", .. })
        ));
    }

    #[test]
    fn unknown_endpoint_rejected() {
        let edges = [("e".into(), "a".into(), "b".into())];
        assert!(matches!(
            Graph::new(["a".into()], edges),
            Err(Error::UnknownVertex(_))
        ));
    }

    #[test]
    fn sccs_of_two_cycles_with_bridge() {
        // a <-> b -> c <-> d
        let g = Graph::new(
            ["a".into(), "b".into(), "c".into(), "d".into()],
            [
                ("e1".into(), "a".into(), "b".into()),
                ("e2".into(), "b".into(), "a".into()),
                ("e3".into(), "b".into(), "c".into()),
                ("e4".into(), "c".into(), "d".into()),
                ("e5".into(), "d".into(), "c".into()),
            ],
        )
        .unwrap();
        assert_eq!(g.sccs(), vec![vec![0, 1], vec![2, 3]]);
        let info = g.scc_info();
        assert!(info.is_on_cycle(0) && info.is_on_cycle(3));
    }

    #[test]
    fn scc_of_sink_is_acyclic_component() {
        let g = line(2);
        let info = g.scc_info();
        assert!(!info.is_on_cycle(0) && !info.is_on_cycle(1));
    }

    #[test]
    fn values_are_shareable_across_threads() {
        fn ok<T: Send + Sync>() {}
        ok::<Graph>();
        ok::<VertexSet>();
        ok::<AdjacencyMatrix>();
        ok::<crate::HsSet>();
        ok::<crate::RankVerdict>();
        ok::<crate::K0Presentation>();
        ok::<crate::LaurentPoly>();
        ok::<crate::Report>();
    }

    #[test]
    fn vertex_set_operations() {
        let g = line(4);
        let a = VertexSet::from_ids(&g, ["v1", "v3"]).unwrap();
        let b = VertexSet::from_ids(&g, ["v3", "v4"]).unwrap();
        assert_eq!(a.union(&b).ids(&g), ["v1", "v3", "v4"]);
        assert_eq!(a.intersection(&b).ids(&g), ["v3"]);
        assert_eq!(a.difference(&b).ids(&g), ["v1"]);
        assert!(a.intersection(&b).is_subset(&a));
    }
}
