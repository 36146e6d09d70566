//! The full invariant report for one graph, with JSON and table renderings.

use serde::{Deserialize, Serialize};

use crate::cycles::{condition_k, condition_l, has_isolated_cycles, x0_set};
use crate::graph::Graph;
use crate::hereditary::{enumerate_hs, hs_closure, is_cofinal};
use crate::ktheory::k0_presentation;
use crate::rank::{cstar_stable_rank_with_cap, stable_rank_with_cap, Certificate};
use crate::Result;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub graph: GraphSummary,
    pub conditions: Conditions,
    pub x0: X0Summary,
    pub lattice: LatticeSummary,
    pub stable_rank: RankSummary,
    pub cstar_stable_rank: String,
    pub k0: K0Summary,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSummary {
    pub vertices: usize,
    pub edges: usize,
    pub sinks: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conditions {
    pub acyclic: bool,
    pub cofinal: bool,
    pub condition_l: bool,
    pub condition_k: bool,
    pub isolated_cycles: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct X0Summary {
    pub set: Vec<String>,
    pub closure: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeSummary {
    pub size: usize,
    pub truncated: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankSummary {
    pub sr: String,
    pub certificate: CertificateSummary,
    pub explanation: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum CertificateSummary {
    Acyclic,
    WitnessH { vertices: Vec<String> },
    WitnessCycle { base: String, edges: Vec<String> },
}

/// `K_0` data; arbitrary-precision integers travel as decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct K0Summary {
    pub group: String,
    pub torsion: Vec<String>,
    pub free_rank: usize,
    pub one_torsion_order: String,
    pub one_free_gcd: String,
}

pub fn build_report(g: &Graph, cap: usize) -> Result<Report> {
    let verdict = stable_rank_with_cap(g, cap)?;
    let cstar = cstar_stable_rank_with_cap(g, cap)?;
    let k0 = k0_presentation(g)?;
    let lattice = enumerate_hs(g, cap);
    let x0 = x0_set(g);
    let x0_closure = hs_closure(g, &x0);
    let certificate = match &verdict.certificate {
        Certificate::Acyclic => CertificateSummary::Acyclic,
        Certificate::WitnessH(h) => CertificateSummary::WitnessH {
            vertices: h.ids(g).iter().map(|s| s.to_string()).collect(),
        },
        Certificate::WitnessCycle(c) => CertificateSummary::WitnessCycle {
            base: g.vertex_id(c.base()).to_string(),
            edges: c.edge_ids(g).iter().map(|s| s.to_string()).collect(),
        },
    };
    Ok(Report {
        schema: 1,
        graph: GraphSummary {
            vertices: g.vertex_count(),
            edges: g.edge_count(),
            sinks: g.sinks().ids(g).iter().map(|s| s.to_string()).collect(),
        },
        conditions: Conditions {
            acyclic: g.is_acyclic(),
            cofinal: is_cofinal(g)?,
            condition_l: condition_l(g),
            condition_k: condition_k(g),
            isolated_cycles: has_isolated_cycles(g),
        },
        x0: X0Summary {
            set: x0.ids(g).iter().map(|s| s.to_string()).collect(),
            closure: x0_closure.ids(g).iter().map(|s| s.to_string()).collect(),
        },
        lattice: LatticeSummary {
            size: lattice.len(),
            truncated: lattice.truncated,
        },
        stable_rank: RankSummary {
            sr: verdict.value.to_string(),
            explanation: verdict.explanation(g),
            certificate,
        },
        cstar_stable_rank: cstar.to_string(),
        k0: K0Summary {
            group: k0.group_description(),
            torsion: k0.invariant_factors.iter().map(|d| d.to_string()).collect(),
            free_rank: k0.free_rank,
            one_torsion_order: k0.one_torsion_order.to_string(),
            one_free_gcd: k0.one_free_gcd.to_string(),
        },
    })
}

impl Report {
    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn render_table(&self) -> String {
        let yn = |b: bool| if b { "yes" } else { "no" };
        let list = |v: &[String]| {
            if v.is_empty() {
                "(none)".to_string()
            } else {
                v.join(" ")
            }
        };
        let certificate = match &self.stable_rank.certificate {
            CertificateSummary::Acyclic => "acyclic".to_string(),
            CertificateSummary::WitnessH { vertices } => {
                format!("H = {{{}}}", vertices.join(", "))
            }
            CertificateSummary::WitnessCycle { base, edges } => {
                format!("cycle at {base}: {}", edges.join(" "))
            }
        };
        let mut out = String::new();
        let mut line = |k: &str, v: String| {
            out.push_str(&format!("{k:<22}{v}\n"));
        };
        line(
            "graph",
            format!(
                "{} vertices, {} edges",
                self.graph.vertices, self.graph.edges
            ),
        );
        line("sinks", list(&self.graph.sinks));
        line("acyclic", yn(self.conditions.acyclic).to_string());
        line("cofinal", yn(self.conditions.cofinal).to_string());
        line("condition (L)", yn(self.conditions.condition_l).to_string());
        line("condition (K)", yn(self.conditions.condition_k).to_string());
        line(
            "isolated cycles",
            yn(self.conditions.isolated_cycles).to_string(),
        );
        line("X0", list(&self.x0.set));
        line("hs-closure of X0", list(&self.x0.closure));
        line(
            "lattice",
            format!(
                "{} sets{}",
                self.lattice.size,
                if self.lattice.truncated {
                    " (truncated)"
                } else {
                    ""
                }
            ),
        );
        line("stable rank", self.stable_rank.sr.clone());
        line("certificate", certificate);
        line("why", self.stable_rank.explanation.clone());
        line("C* stable rank", self.cstar_stable_rank.clone());
        line(
            "K0",
            format!(
                "{} ([1]: torsion order {}, free gcd {})",
                self.k0.group, self.k0.one_torsion_order, self.k0.one_free_gcd
            ),
        );
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{generate, FamilySpec};
    use crate::hereditary::DEFAULT_LATTICE_CAP;

    #[test]
    fn report_on_the_loop() {
        let g = generate(&FamilySpec::Loop).unwrap();
        let r = build_report(&g, DEFAULT_LATTICE_CAP).unwrap();
        assert_eq!(r.stable_rank.sr, "2");
        assert_eq!(r.cstar_stable_rank, "1");
        assert_eq!(r.k0.free_rank, 1);
        assert!(r.conditions.cofinal);
        assert!(!r.conditions.condition_l);
        assert!(r.conditions.isolated_cycles);
    }

    #[test]
    fn chain3_report_shows_the_collapse() {
        // the middle vertex carries the entangled cycles; its closure eats
        // the bottom loop and the quotient is the bare top loop
        let g = generate(&FamilySpec::Chain3).unwrap();
        let r = build_report(&g, DEFAULT_LATTICE_CAP).unwrap();
        assert_eq!(r.x0.set, ["v2"]);
        assert_eq!(r.x0.closure, ["v1", "v2"]);
        assert_eq!(r.lattice.size, 4);
        assert_eq!(r.stable_rank.sr, "2");
        assert_eq!(r.cstar_stable_rank, "2");
        assert!(!r.conditions.isolated_cycles);
        assert!(!r.conditions.condition_k);
    }

    #[test]
    fn report_json_round_trips() {
        for spec in [FamilySpec::Chain3, FamilySpec::Rose(3), FamilySpec::Line(4)] {
            let g = generate(&spec).unwrap();
            let r = build_report(&g, DEFAULT_LATTICE_CAP).unwrap();
            let back: Report = serde_json::from_str(&r.to_json_string()).unwrap();
            assert_eq!(back, r);
        }
    }

    #[test]
    fn report_rejects_empty_graphs() {
        let g = crate::graph::Graph::new(Vec::<String>::new(), Vec::new()).unwrap();
        assert!(build_report(&g, DEFAULT_LATTICE_CAP).is_err());
    }

    #[test]
    fn table_mentions_the_headline_facts() {
        let g = generate(&FamilySpec::Rose(3)).unwrap();
        let r = build_report(&g, DEFAULT_LATTICE_CAP).unwrap();
        let table = r.render_table();
        assert!(table.contains("stable rank"));
        assert!(table.contains("inf"));
        assert!(table.contains("Z/2"));
    }
}
