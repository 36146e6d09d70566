//! Built-in graph families used by the corpus, the CLI and the tests.

use crate::graph::Graph;
use crate::{Error, Result};

/// A named generator with its parameters.
///
/// * `Line(n)`: `v1 -> v2 -> … -> vn`.
/// * `Rose(n)`: one vertex with `n` loops `f1..fn`.
/// * `Enm { loops, tail }`: a line of `tail` vertices whose last vertex
///   carries `loops` loops; `tail = 1` degenerates to `Rose(loops)`.
/// * `Complete(k)`: the complete digraph on `k` vertices, no loops.
/// * `Loop`: a single vertex with a single loop, same as `Rose(1)`.
/// * `Chain3`: three vertices `v3 -> v2 -> v1` where `v1` and `v3` carry
///   one loop each and `v2` carries two. The middle vertex is the only one
///   with two returning edges, so the chain quotients onto a bare loop.
/// * `Tri`: a three-vertex two-way chain `v1 <-> v2 <-> v3` with loops at
///   the two ends.
/// * `K3`: alias for `Complete(3)`.
/// * `Mult2`: two mutually connected vertices with parallel multiplicities
///   5 (loops at `v1`), 2 (`v1 -> v2`), 4 (`v2 -> v1`) and 3 (loops at `v2`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySpec {
    Line(u32),
    Rose(u32),
    Enm { loops: u32, tail: u32 },
    Complete(u32),
    Loop,
    Chain3,
    Tri,
    K3,
    Mult2,
}

impl FamilySpec {
    /// Parses `name` plus integer parameters, as received from the CLI.
    pub fn from_name(name: &str, params: &[u32]) -> Result<FamilySpec> {
        let want = |n: usize| -> Result<()> {
            if params.len() == n {
                Ok(())
            } else {
                Err(Error::InvalidFamily(format!(
                    "`{name}` takes {n} parameter(s), got {}",
                    params.len()
                )))
            }
        };
        match name {
            "line" => {
                want(1)?;
                Ok(FamilySpec::Line(params[0]))
            }
            "rose" => {
                want(1)?;
                Ok(FamilySpec::Rose(params[0]))
            }
            "enm" => {
                want(2)?;
                Ok(FamilySpec::Enm {
                    loops: params[0],
                    tail: params[1],
                })
            }
            "complete" => {
                want(1)?;
                Ok(FamilySpec::Complete(params[0]))
            }
            "loop" => {
                want(0)?;
                Ok(FamilySpec::Loop)
            }
            "chain3" => {
                want(0)?;
                Ok(FamilySpec::Chain3)
            }
            "tri" => {
                want(0)?;
                Ok(FamilySpec::Tri)
            }
            "k3" => {
                want(0)?;
                Ok(FamilySpec::K3)
            }
            "mult2" => {
                want(0)?;
                Ok(FamilySpec::Mult2)
            }
            other => Err(Error::InvalidFamily(format!("unknown family `{other}`"))),
        }
    }
}

pub fn generate(spec: &FamilySpec) -> Result<Graph> {
    match *spec {
        FamilySpec::Line(n) => {
            positive("line", n)?;
            let vertices = (1..=n).map(|i| format!("v{i}"));
            let edges = (1..n).map(|i| (format!("e{i}"), format!("v{i}"), format!("v{}", i + 1)));
            Graph::new(vertices, edges)
        }
        FamilySpec::Rose(n) => {
            positive("rose", n)?;
            let edges = (1..=n).map(|i| (format!("f{i}"), "v".to_string(), "v".to_string()));
            Graph::new(["v".to_string()], edges)
        }
        FamilySpec::Enm { loops, tail } => {
            positive("enm loops", loops)?;
            positive("enm tail", tail)?;
            if tail == 1 {
                return generate(&FamilySpec::Rose(loops));
            }
            let vertices: Vec<String> = (1..=tail).map(|i| format!("v{i}")).collect();
            let mut edges: Vec<(String, String, String)> = (1..tail)
                .map(|i| (format!("e{i}"), format!("v{i}"), format!("v{}", i + 1)))
                .collect();
            let last = format!("v{tail}");
            edges.extend((1..=loops).map(|i| (format!("f{i}"), last.clone(), last.clone())));
            Graph::new(vertices, edges)
        }
        FamilySpec::Complete(k) => {
            positive("complete", k)?;
            let vertices = (1..=k).map(|i| format!("v{i}"));
            let mut edges = Vec::new();
            for i in 1..=k {
                for j in 1..=k {
                    if i != j {
                        edges.push((format!("e{i}_{j}"), format!("v{i}"), format!("v{j}")));
                    }
                }
            }
            Graph::new(vertices, edges)
        }
        FamilySpec::Loop => generate(&FamilySpec::Rose(1)),
        FamilySpec::K3 => generate(&FamilySpec::Complete(3)),
        FamilySpec::Chain3 => Graph::new(
            ["v1".to_string(), "v2".to_string(), "v3".to_string()],
            [
                ("l1".to_string(), "v1".to_string(), "v1".to_string()),
                ("l2_1".to_string(), "v2".to_string(), "v2".to_string()),
                ("l2_2".to_string(), "v2".to_string(), "v2".to_string()),
                ("d2".to_string(), "v2".to_string(), "v1".to_string()),
                ("l3".to_string(), "v3".to_string(), "v3".to_string()),
                ("d3".to_string(), "v3".to_string(), "v2".to_string()),
            ],
        ),
        FamilySpec::Tri => Graph::new(
            ["v1".to_string(), "v2".to_string(), "v3".to_string()],
            [
                ("l1".to_string(), "v1".to_string(), "v1".to_string()),
                ("a12".to_string(), "v1".to_string(), "v2".to_string()),
                ("a21".to_string(), "v2".to_string(), "v1".to_string()),
                ("a23".to_string(), "v2".to_string(), "v3".to_string()),
                ("a32".to_string(), "v3".to_string(), "v2".to_string()),
                ("l3".to_string(), "v3".to_string(), "v3".to_string()),
            ],
        ),
        FamilySpec::Mult2 => {
            let mut edges = Vec::new();
            for i in 1..=5 {
                edges.push((format!("l1_{i}"), "v1".to_string(), "v1".to_string()));
            }
            for i in 1..=2 {
                edges.push((format!("a_{i}"), "v1".to_string(), "v2".to_string()));
            }
            for i in 1..=4 {
                edges.push((format!("b_{i}"), "v2".to_string(), "v1".to_string()));
            }
            for i in 1..=3 {
                edges.push((format!("l2_{i}"), "v2".to_string(), "v2".to_string()));
            }
            Graph::new(["v1".to_string(), "v2".to_string()], edges)
        }
    }
}

fn positive(what: &str, n: u32) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidFamily(format!("{what} must be at least 1")))
    } else {
        Ok(())
    }
}
