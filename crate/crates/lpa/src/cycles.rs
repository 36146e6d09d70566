//! Closed simple paths, cycles, exits, conditions (L) and (K), isolated
//! cycles, and the set of vertices with two returning edges.
//!
//! A closed simple path based at `v` returns to `v` without passing through
//! `v` in between; its intermediate vertices may repeat, so a vertex can
//! base infinitely many of them (leave, run around a side cycle, return).
//! The enumeration in [`csp_based_at`] therefore lists the finitely many
//! representatives that revisit no intermediate vertex; [`condition_k`]
//! decides the full "at least two closed simple paths" condition exactly by
//! combining that enumeration with a side-cycle reachability test.

use crate::graph::{Graph, VertexSet};
use crate::{Error, Result};

/// Hard cap for [`csp_based_at`]; dense multigraphs can have astronomically
/// many return paths and the enumeration refuses to go past this.
pub const CSP_CAP: usize = 1_000_000;

/// A closed path `(e_1, …, e_n)` with `s(e_1) = r(e_n) = base` that does not
/// pass through `base` in between.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedSimplePath {
    base: usize,
    edges: Vec<usize>,
}

impl ClosedSimplePath {
    pub fn new(g: &Graph, base: usize, edges: Vec<usize>) -> Result<ClosedSimplePath> {
        validate_path(g, base, &edges)?;
        Ok(ClosedSimplePath { base, edges })
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        false // a closed simple path has at least one edge
    }

    /// The source vertices `s(e_1), …, s(e_n)`.
    pub fn sources<'a>(&'a self, g: &'a Graph) -> impl Iterator<Item = usize> + 'a {
        self.edges.iter().map(|&e| g.edge(e).src)
    }

    pub fn edge_ids<'g>(&self, g: &'g Graph) -> Vec<&'g str> {
        self.edges.iter().map(|&e| g.edge(e).id.as_str()).collect()
    }
}

fn validate_path(g: &Graph, base: usize, edges: &[usize]) -> Result<()> {
    if base >= g.vertex_count() {
        return Err(Error::InvalidPath(format!("no vertex #{base}")));
    }
    if edges.is_empty() {
        return Err(Error::InvalidPath(
            "a closed path has at least one edge".into(),
        ));
    }
    if edges.iter().any(|&e| e >= g.edge_count()) {
        return Err(Error::InvalidPath("edge index out of range".into()));
    }
    let mut at = base;
    for (i, &e) in edges.iter().enumerate() {
        let edge = g.edge(e);
        if edge.src != at {
            return Err(Error::InvalidPath(format!(
                "edge `{}` does not start where the previous one ends",
                edge.id
            )));
        }
        if i > 0 && edge.src == base {
            return Err(Error::InvalidPath(
                "the path passes through its base vertex".into(),
            ));
        }
        at = edge.dst;
    }
    if at != base {
        return Err(Error::InvalidPath(
            "the path does not return to its base".into(),
        ));
    }
    Ok(())
}

/// A closed simple path whose sources are pairwise distinct.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cycle {
    path: ClosedSimplePath,
}

impl Cycle {
    pub fn new(g: &Graph, base: usize, edges: Vec<usize>) -> Result<Cycle> {
        let path = ClosedSimplePath::new(g, base, edges)?;
        let mut seen = VertexSet::empty();
        for v in path.sources(g) {
            if seen.contains(v) {
                return Err(Error::InvalidPath(format!(
                    "vertex `{}` is visited twice",
                    g.vertex_id(v)
                )));
            }
            seen = seen.union(&VertexSet::from_iter([v]));
        }
        Ok(Cycle { path })
    }

    pub fn as_path(&self) -> &ClosedSimplePath {
        &self.path
    }

    pub fn base(&self) -> usize {
        self.path.base
    }

    pub fn edges(&self) -> &[usize] {
        &self.path.edges
    }

    pub fn edge_ids<'g>(&self, g: &'g Graph) -> Vec<&'g str> {
        self.path.edge_ids(g)
    }
}

/// Depth-first enumeration of return paths at `base` whose intermediate
/// vertices are pairwise distinct and satisfy `allow`.
fn return_paths(
    g: &Graph,
    base: usize,
    allow: impl Fn(usize) -> bool,
    cap: Option<usize>,
    out: &mut Vec<Vec<usize>>,
) -> Result<()> {
    let mut frames: Vec<(usize, usize)> = vec![(base, 0)];
    let mut path: Vec<usize> = Vec::new();
    let mut visited = vec![false; g.vertex_count()];
    while let Some(&mut (u, ref mut pos)) = frames.last_mut() {
        if *pos < g.out_degree(u) {
            let e = g.out_edges(u)[*pos];
            *pos += 1;
            let w = g.edge(e).dst;
            if w == base {
                path.push(e);
                out.push(path.clone());
                path.pop();
                if let Some(cap) = cap {
                    if out.len() > cap {
                        return Err(Error::CspOverflow {
                            vertex: g.vertex_id(base).to_string(),
                            cap,
                        });
                    }
                }
            } else if !visited[w] && allow(w) {
                visited[w] = true;
                path.push(e);
                frames.push((w, 0));
            }
        } else {
            frames.pop();
            if u != base {
                visited[u] = false;
                path.pop();
            }
        }
    }
    Ok(())
}

/// Counts return paths at `base`, stopping as soon as `limit` are found.
fn count_return_paths_capped(g: &Graph, base: usize, limit: usize) -> usize {
    let mut frames: Vec<(usize, usize)> = vec![(base, 0)];
    let mut visited = vec![false; g.vertex_count()];
    let mut count = 0;
    while let Some(&mut (u, ref mut pos)) = frames.last_mut() {
        if *pos < g.out_degree(u) {
            let e = g.out_edges(u)[*pos];
            *pos += 1;
            let w = g.edge(e).dst;
            if w == base {
                count += 1;
                if count >= limit {
                    return count;
                }
            } else if !visited[w] {
                visited[w] = true;
                frames.push((w, 0));
            }
        } else {
            frames.pop();
            if u != base {
                visited[u] = false;
            }
        }
    }
    count
}

/// Every cycle of `g`, once per rotation class. The representative is based
/// at the lexicographically least vertex id on the cycle; the list is sorted
/// by that id, then by length, then by edge ids.
pub fn simple_cycles(g: &Graph) -> Vec<Cycle> {
    let n = g.vertex_count();
    // rank[v] = position of v's id in sorted id order
    let mut by_id: Vec<usize> = (0..n).collect();
    by_id.sort_by_key(|&v| g.vertex_id(v));
    let mut rank = vec![0usize; n];
    for (r, &v) in by_id.iter().enumerate() {
        rank[v] = r;
    }
    let mut cycles = Vec::new();
    for &base in &by_id {
        let mut found = Vec::new();
        return_paths(g, base, |w| rank[w] > rank[base], None, &mut found)
            .expect("uncapped enumeration cannot overflow");
        for edges in found {
            cycles.push(Cycle::new(g, base, edges).expect("enumerated return path is a cycle"));
        }
    }
    cycles.sort_by(|a, b| {
        let ka = (rank[a.base()], a.edges().len(), a.edge_ids(g));
        let kb = (rank[b.base()], b.edges().len(), b.edge_ids(g));
        ka.cmp(&kb)
    });
    cycles
}

/// The closed simple paths based at `v` that revisit no intermediate vertex,
/// in a deterministic depth-first order.
pub fn csp_based_at(g: &Graph, v: usize) -> Result<Vec<ClosedSimplePath>> {
    let mut found = Vec::new();
    return_paths(g, v, |_| true, Some(CSP_CAP), &mut found)?;
    Ok(found
        .into_iter()
        .map(|edges| ClosedSimplePath { base: v, edges })
        .collect())
}

/// Same as [`csp_based_at`] with the vertex given by id.
pub fn csp_based_at_id(g: &Graph, id: &str) -> Result<Vec<ClosedSimplePath>> {
    csp_based_at(g, g.vertex_index(id)?)
}

/// True iff some vertex on the path emits an edge other than the path's own
/// edge there.
pub fn has_exit(g: &Graph, path: &ClosedSimplePath) -> Result<bool> {
    validate_path(g, path.base(), path.edges())?;
    Ok(path.sources(g).any(|v| g.out_degree(v) >= 2))
}

/// Condition (L): every closed simple path has an exit. A return path with
/// no exit is forced through out-degree-one vertices and is therefore a
/// cycle, so checking the cycles suffices.
pub fn condition_l(g: &Graph) -> bool {
    simple_cycles(g)
        .iter()
        .all(|c| c.as_path().sources(g).any(|v| g.out_degree(v) >= 2))
}

/// Condition (K): every vertex on a closed simple path bases at least two
/// distinct closed simple paths.
///
/// A vertex with a single vertex-simple return path still bases infinitely
/// many closed simple paths when some intermediate vertex sits on a cycle
/// avoiding the base, so that case is decided by a reachability test on the
/// graph with the base removed.
pub fn condition_k(g: &Graph) -> bool {
    let info = g.scc_info();
    (0..g.vertex_count()).all(|v| !info.is_on_cycle(v) || csps_at_least_two(g, v))
}

fn csps_at_least_two(g: &Graph, v: usize) -> bool {
    if count_return_paths_capped(g, v, 2) >= 2 {
        return true;
    }
    // Exactly one vertex-simple return path. Look for a vertex that lies on
    // some return path of v and on a cycle avoiding v: pumping that cycle
    // yields a second closed simple path.
    let keep = VertexSet::from_iter((0..g.vertex_count()).filter(|&w| w != v));
    let sub = g.induced_subgraph(&keep);
    let to_sub: std::collections::HashMap<usize, usize> =
        keep.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let nsub = sub.vertex_count();
    // forward: reachable from v without passing v again
    let mut fwd = vec![false; nsub];
    let mut stack = Vec::new();
    for &e in g.out_edges(v) {
        let w = g.edge(e).dst;
        if w != v {
            let ws = to_sub[&w];
            if !fwd[ws] {
                fwd[ws] = true;
                stack.push(ws);
            }
        }
    }
    while let Some(u) = stack.pop() {
        for &e in sub.out_edges(u) {
            let w = sub.edge(e).dst;
            if !fwd[w] {
                fwd[w] = true;
                stack.push(w);
            }
        }
    }
    // backward: reaches v without passing v in between
    let mut rev_in: Vec<Vec<usize>> = vec![Vec::new(); nsub];
    for e in sub.edges() {
        rev_in[e.dst].push(e.src);
    }
    let mut bwd = vec![false; nsub];
    for e in g.edges() {
        if e.dst == v && e.src != v {
            let ws = to_sub[&e.src];
            if !bwd[ws] {
                bwd[ws] = true;
                stack.push(ws);
            }
        }
    }
    while let Some(u) = stack.pop() {
        for &p in &rev_in[u] {
            if !bwd[p] {
                bwd[p] = true;
                stack.push(p);
            }
        }
    }
    let sub_info = sub.scc_info();
    (0..nsub).any(|w| fwd[w] && bwd[w] && sub_info.is_on_cycle(w))
}

/// True iff two closed simple paths never depart a shared vertex along
/// different edges; equivalently, every strongly connected component that
/// contains a cycle is a bare simple cycle (each of its vertices has exactly
/// one outgoing edge landing inside the component).
pub fn has_isolated_cycles(g: &Graph) -> bool {
    let info = g.scc_info();
    for (c, comp) in info.components.iter().enumerate() {
        if !info.cyclic[c] {
            continue;
        }
        for &v in comp {
            let internal = g
                .out_edges(v)
                .iter()
                .filter(|&&e| info.comp_of[g.edge(e).dst] == c)
                .count();
            if internal != 1 {
                return false;
            }
        }
    }
    true
}

/// The vertices that emit two distinct edges whose ranges both reach back to
/// the vertex.
pub fn x0_set(g: &Graph) -> VertexSet {
    let reach = g.reachability();
    (0..g.vertex_count())
        .filter(|&v| {
            g.out_edges(v)
                .iter()
                .filter(|&&e| reach[g.edge(e).dst][v])
                .count()
                >= 2
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{generate, FamilySpec};
    use crate::graph::Graph;

    fn rose(n: u32) -> Graph {
        generate(&FamilySpec::Rose(n)).unwrap()
    }

    fn the_loop() -> Graph {
        generate(&FamilySpec::Loop).unwrap()
    }

    fn chain3() -> Graph {
        generate(&FamilySpec::Chain3).unwrap()
    }

    #[test]
    fn cycles_of_rose_and_line() {
        assert_eq!(simple_cycles(&rose(3)).len(), 3);
        assert!(simple_cycles(&generate(&FamilySpec::Line(5)).unwrap()).is_empty());
    }

    #[test]
    fn cycles_of_k3() {
        // three 2-cycles and two triangles
        let cycles = simple_cycles(&generate(&FamilySpec::K3).unwrap());
        assert_eq!(cycles.len(), 5);
        let mut lens: Vec<usize> = cycles.iter().map(|c| c.edges().len()).collect();
        lens.sort_unstable();
        assert_eq!(lens, [2, 2, 2, 3, 3]);
    }

    #[test]
    fn cycle_representative_base_is_lex_least() {
        let g = parse("vertices: b a\nedge p: b -> a\nedge q: a -> b");
        let cycles = simple_cycles(&g);
        assert_eq!(cycles.len(), 1);
        assert_eq!(g.vertex_id(cycles[0].base()), "a");
        assert_eq!(cycles[0].edge_ids(&g), ["q", "p"]);
    }

    fn parse(text: &str) -> Graph {
        crate::parse::parse_graph(text).unwrap()
    }

    #[test]
    fn csp_counts() {
        let g = the_loop();
        assert_eq!(csp_based_at(&g, 0).unwrap().len(), 1);
        assert_eq!(csp_based_at(&rose(4), 0).unwrap().len(), 4);
        let c = chain3();
        let v2 = c.vertex_index("v2").unwrap();
        assert_eq!(csp_based_at(&c, v2).unwrap().len(), 2);
    }

    #[test]
    fn csp_unknown_vertex() {
        assert!(matches!(
            csp_based_at_id(&the_loop(), "w"),
            Err(crate::Error::UnknownVertex(_))
        ));
    }

    #[test]
    fn exits() {
        let g = the_loop();
        let c = &csp_based_at(&g, 0).unwrap()[0];
        assert!(!has_exit(&g, c).unwrap());

        let r = rose(2);
        for p in csp_based_at(&r, 0).unwrap() {
            assert!(has_exit(&r, &p).unwrap());
        }

        let c3 = chain3();
        let v3 = c3.vertex_index("v3").unwrap();
        let loops = csp_based_at(&c3, v3).unwrap();
        assert_eq!(loops.len(), 1);
        assert!(has_exit(&c3, &loops[0]).unwrap());
    }

    #[test]
    fn has_exit_rejects_foreign_paths() {
        let g = the_loop();
        let path = csp_based_at(&g, 0).unwrap().remove(0);
        let other = rose(2);
        // same indices, but revalidated against a different graph is fine here;
        // an out-of-range edge is not
        let bogus = ClosedSimplePath {
            base: 0,
            edges: vec![7],
        };
        assert!(has_exit(&other, &bogus).is_err());
        assert!(!has_exit(&g, &path).unwrap());
    }

    #[test]
    fn condition_l_cases() {
        assert!(condition_l(&generate(&FamilySpec::Line(4)).unwrap()));
        assert!(!condition_l(&the_loop()));
        assert!(condition_l(&rose(2)));
    }

    #[test]
    fn condition_k_cases() {
        assert!(condition_k(&rose(2)));
        assert!(!condition_k(&the_loop()));
        assert!(condition_k(&generate(&FamilySpec::Line(3)).unwrap()));
        assert!(!condition_k(&chain3()));
    }

    #[test]
    fn condition_k_sees_pumped_paths() {
        // v <-> w with a side loop at w: v bases one vertex-simple return
        // path but infinitely many closed simple paths.
        let g = parse("vertices: v w\nedge x: v -> w\nedge l: w -> w\nedge y: w -> v");
        assert_eq!(csp_based_at(&g, 0).unwrap().len(), 1);
        assert!(condition_k(&g));
    }

    #[test]
    fn isolated_cycles_cases() {
        assert!(!has_isolated_cycles(&chain3()));
        assert!(has_isolated_cycles(&the_loop()));
        assert!(!has_isolated_cycles(&rose(2)));
        let disjoint = parse("vertices: a b\nedge p: a -> a\nedge q: b -> b");
        assert!(has_isolated_cycles(&disjoint));
    }

    #[test]
    fn x0_cases() {
        assert_eq!(x0_set(&rose(2)).ids(&rose(2)), ["v"]);
        assert!(x0_set(&the_loop()).is_empty());
        let c = chain3();
        assert_eq!(x0_set(&c).ids(&c), ["v2"]);
    }

    #[test]
    fn csp_cap_is_enforced() {
        // the cap itself is too large to hit cheaply; check the error path
        // through the internal helper instead
        let g = rose(3);
        let mut out = Vec::new();
        let err = return_paths(&g, 0, |_| true, Some(2), &mut out).unwrap_err();
        assert!(matches!(err, crate::Error::CspOverflow { cap: 2, .. }));
    }
}
