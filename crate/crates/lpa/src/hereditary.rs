//! Hereditary and saturated vertex sets, their lattice, and the quotient,
//! restriction and ideal graph constructions.
//!
//! A set is hereditary when it is closed under forward reachability and
//! saturated when it contains every vertex that emits edges and whose edges
//! all land inside the set. Sinks are never pulled in by saturation.

use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::cycles::{simple_cycles, Cycle};
use crate::graph::{Graph, VertexSet};
use crate::{Error, Result};

/// Default cap for [`enumerate_hs`]; the lattice can have `2^|E^0|` elements.
pub const DEFAULT_LATTICE_CAP: usize = 4096;

/// A vertex set validated to be hereditary and saturated in its graph.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct HsSet {
    set: VertexSet,
}

impl HsSet {
    pub fn new(g: &Graph, set: VertexSet) -> Result<HsSet> {
        set.validate(g)?;
        check_hereditary(g, &set)?;
        check_saturated(g, &set)?;
        Ok(HsSet { set })
    }

    pub fn vertices(&self) -> &VertexSet {
        &self.set
    }

    pub fn into_vertices(self) -> VertexSet {
        self.set
    }

    pub fn ids<'g>(&self, g: &'g Graph) -> Vec<&'g str> {
        self.set.ids(g)
    }

    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }
}

fn check_hereditary(g: &Graph, s: &VertexSet) -> Result<()> {
    for v in s.iter() {
        for &e in g.out_edges(v) {
            let w = g.edge(e).dst;
            if !s.contains(w) {
                return Err(Error::NotHereditary {
                    from: g.vertex_id(v).to_string(),
                    to: g.vertex_id(w).to_string(),
                });
            }
        }
    }
    Ok(())
}

fn check_saturated(g: &Graph, s: &VertexSet) -> Result<()> {
    for v in 0..g.vertex_count() {
        if s.contains(v) || g.out_degree(v) == 0 {
            continue;
        }
        if g.out_edges(v).iter().all(|&e| s.contains(g.edge(e).dst)) {
            return Err(Error::NotSaturated {
                vertex: g.vertex_id(v).to_string(),
            });
        }
    }
    Ok(())
}

/// Smallest hereditary superset of `s`: forward reachability closure.
pub fn hereditary_closure(g: &Graph, s: &VertexSet) -> VertexSet {
    let mut seen = vec![false; g.vertex_count()];
    let mut queue: VecDeque<usize> = VecDeque::new();
    for v in s.iter() {
        seen[v] = true;
        queue.push_back(v);
    }
    while let Some(v) = queue.pop_front() {
        for &e in g.out_edges(v) {
            let w = g.edge(e).dst;
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    (0..g.vertex_count()).filter(|&v| seen[v]).collect()
}

/// Smallest hereditary saturated superset of `s`: forward closure followed
/// by saturation sweeps to a fixpoint. A vertex enters by saturation only
/// when all of its out-edges already land inside, so heredity survives
/// every sweep and one forward closure is enough.
pub fn hs_closure(g: &Graph, s: &VertexSet) -> HsSet {
    let mut current = hereditary_closure(g, s);
    loop {
        let added: Vec<usize> = (0..g.vertex_count())
            .filter(|&v| {
                !current.contains(v)
                    && g.out_degree(v) > 0
                    && g.out_edges(v)
                        .iter()
                        .all(|&e| current.contains(g.edge(e).dst))
            })
            .collect();
        if added.is_empty() {
            break;
        }
        current = current.union(&added.into_iter().collect());
    }
    HsSet { set: current }
}

/// The lattice of hereditary saturated sets, sorted by size then by ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HsLattice {
    sets: Vec<HsSet>,
    pub truncated: bool,
}

impl HsLattice {
    pub fn sets(&self) -> &[HsSet] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn contains(&self, set: &VertexSet) -> bool {
        self.sets.iter().any(|h| h.vertices() == set)
    }

    pub fn to_json(&self, g: &Graph) -> serde_json::Value {
        serde_json::json!({
            "schema": 1,
            "sets": self.sets.iter().map(|h| h.ids(g)).collect::<Vec<_>>(),
            "truncated": self.truncated,
        })
    }
}

/// Enumerates the whole lattice as closures of unions of single-vertex
/// closures, stopping with `truncated` set once more than `cap` elements
/// have been found.
pub fn enumerate_hs(g: &Graph, cap: usize) -> HsLattice {
    let atoms: Vec<VertexSet> = (0..g.vertex_count())
        .map(|v| hs_closure(g, &VertexSet::from_iter([v])).into_vertices())
        .collect();
    let mut found: BTreeSet<VertexSet> = BTreeSet::new();
    found.insert(VertexSet::empty());
    let mut queue: VecDeque<VertexSet> = VecDeque::new();
    queue.push_back(VertexSet::empty());
    let mut truncated = false;
    'bfs: while let Some(x) = queue.pop_front() {
        for atom in &atoms {
            if atom.is_subset(&x) {
                continue;
            }
            let joined = hs_closure(g, &x.union(atom)).into_vertices();
            if !found.contains(&joined) {
                if found.len() >= cap {
                    truncated = true;
                    break 'bfs;
                }
                found.insert(joined.clone());
                queue.push_back(joined);
            }
        }
    }
    let mut sets: Vec<HsSet> = found.into_iter().map(|set| HsSet { set }).collect();
    sets.sort_by(|a, b| (a.len(), a.ids(g)).cmp(&(b.len(), b.ids(g))));
    HsLattice { sets, truncated }
}

/// Least hereditary saturated set containing both arguments.
pub fn hs_join(g: &Graph, a: &HsSet, b: &HsSet) -> Result<HsSet> {
    let a = HsSet::new(g, a.vertices().clone())?;
    let b = HsSet::new(g, b.vertices().clone())?;
    Ok(hs_closure(g, &a.vertices().union(b.vertices())))
}

/// True iff every vertex generates the whole graph, i.e. the lattice is
/// `{∅, E^0}`. Decided vertex by vertex, without enumerating the lattice.
pub fn is_cofinal(g: &Graph) -> Result<bool> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let n = g.vertex_count();
    Ok((0..n).all(|v| hs_closure(g, &VertexSet::from_iter([v])).len() == n))
}

/// The quotient graph `E/X`: vertices outside `X`, edges whose range stays
/// outside `X`. Edge ids are preserved.
pub fn quotient_graph(g: &Graph, x: &HsSet) -> Result<Graph> {
    let x = HsSet::new(g, x.vertices().clone())?;
    let vertices = (0..g.vertex_count())
        .filter(|&v| !x.vertices().contains(v))
        .map(|v| g.vertex_id(v).to_string());
    let edges = g
        .edges()
        .iter()
        .filter(|&e| !x.vertices().contains(e.dst))
        .map(|e| {
            (
                e.id.clone(),
                g.vertex_id(e.src).to_string(),
                g.vertex_id(e.dst).to_string(),
            )
        });
    Graph::new(vertices, edges)
}

/// The restriction graph `E_H`: vertices of the hereditary set `H`, edges
/// emitted inside it (their ranges stay in `H` by heredity).
pub fn restriction_graph(g: &Graph, h: &VertexSet) -> Result<Graph> {
    h.validate(g)?;
    check_hereditary(g, h)?;
    let vertices = h.iter().map(|v| g.vertex_id(v).to_string());
    let edges = g.edges().iter().filter(|&e| h.contains(e.src)).map(|e| {
        (
            e.id.clone(),
            g.vertex_id(e.src).to_string(),
            g.vertex_id(e.dst).to_string(),
        )
    });
    Graph::new(vertices, edges)
}

/// Witness that the ideal graph is infinite: a cycle outside `X` from which
/// `X` is reachable, so arbitrarily long entry paths exist.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InfiniteWitness {
    pub cycle: Cycle,
}

/// Result of [`ideal_graph`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdealGraphOutcome {
    Finite(Graph),
    Infinite(InfiniteWitness),
}

/// The graph whose Leavitt path algebra realizes the graded ideal of `X`:
/// vertices are `X` together with the entry paths into `X`, edges are the
/// edges emitted inside `X` plus one edge from each entry path to its range.
///
/// The entry-path set is finite exactly when the subgraph induced on the
/// vertices outside `X` that reach `X` is acyclic; otherwise the witness
/// carries a cycle of that subgraph.
pub fn ideal_graph(g: &Graph, x: &HsSet) -> Result<IdealGraphOutcome> {
    let x = HsSet::new(g, x.vertices().clone())?;
    if x.is_empty() {
        return Err(Error::EmptySet);
    }
    let xset = x.vertices();
    // W = vertices outside X that reach X
    let reach = g.reachability();
    let w: VertexSet = (0..g.vertex_count())
        .filter(|&v| !xset.contains(v) && xset.iter().any(|t| reach[v][t]))
        .collect();
    let sub = g.induced_subgraph(&w);
    if !sub.is_acyclic() {
        let cycles = simple_cycles(&sub);
        let c = &cycles[0];
        // translate back to edge/vertex indices of g
        let base = g.vertex_index(sub.vertex_id(c.base()))?;
        let edges = c
            .edges()
            .iter()
            .map(|&e| g.edge_index(&sub.edge(e).id))
            .collect::<Result<Vec<usize>>>()?;
        let cycle = Cycle::new(g, base, edges)?;
        return Ok(IdealGraphOutcome::Infinite(InfiniteWitness { cycle }));
    }
    // enumerate the entry paths by depth-first search inside the acyclic W
    let mut entry_paths: Vec<Vec<usize>> = Vec::new();
    for start in w.iter() {
        let mut stack: Vec<Vec<usize>> =
            g.out_edges(start).iter().rev().map(|&e| vec![e]).collect();
        while let Some(path) = stack.pop() {
            let last = g.edge(*path.last().expect("paths are nonempty"));
            if xset.contains(last.dst) {
                entry_paths.push(path);
            } else if w.contains(last.dst) {
                for &e in g.out_edges(last.dst).iter().rev() {
                    let mut ext = path.clone();
                    ext.push(e);
                    stack.push(ext);
                }
            }
        }
    }
    entry_paths.sort_by(|a, b| (a.len(), a.as_slice()).cmp(&(b.len(), b.as_slice())));

    let mut used: HashSet<String> = xset.iter().map(|v| g.vertex_id(v).to_string()).collect();
    let claim = |base: String, used: &mut HashSet<String>| -> String {
        let mut id = base;
        while !used.insert(id.clone()) {
            id.push('\'');
        }
        id
    };
    let mut vertices: Vec<String> = xset.iter().map(|v| g.vertex_id(v).to_string()).collect();
    let mut path_vertex_ids = Vec::new();
    for path in &entry_paths {
        let joined = path
            .iter()
            .map(|&e| g.edge(e).id.as_str())
            .collect::<Vec<_>>()
            .join(".");
        let id = claim(format!("[{joined}]"), &mut used);
        vertices.push(id.clone());
        path_vertex_ids.push(id);
    }
    let mut edges: Vec<(String, String, String)> = g
        .edges()
        .iter()
        .filter(|e| xset.contains(e.src))
        .map(|e| {
            (
                e.id.clone(),
                g.vertex_id(e.src).to_string(),
                g.vertex_id(e.dst).to_string(),
            )
        })
        .collect();
    let mut used_edges: HashSet<String> = edges.iter().map(|(id, _, _)| id.clone()).collect();
    for (path, vid) in entry_paths.iter().zip(&path_vertex_ids) {
        let range = g.edge(*path.last().expect("paths are nonempty")).dst;
        let eid = claim(format!("{vid}~"), &mut used_edges);
        edges.push((eid, vid.clone(), g.vertex_id(range).to_string()));
    }
    Ok(IdealGraphOutcome::Finite(Graph::new(vertices, edges)?))
}
