//! `lpa`: invariants of Leavitt path algebras of finite directed graphs.
//!
//! Exit codes: 0 success, 1 corpus/fuzz failure, 2 input error,
//! 3 inconclusive (truncated lattice without a decisive witness).

#![forbid(unsafe_code)]

use std::fs;
use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use lpa::cycles::csp_based_at_id;
use lpa::families::{generate, FamilySpec};
use lpa::fuzz::{run_fuzz, FuzzBounds};
use lpa::hereditary::{enumerate_hs, ideal_graph, quotient_graph, restriction_graph, HsSet};
use lpa::laurent::{bezout, parse_laurent, reduction_witness, ReductionWitness};
use lpa::rank::stable_rank_with_cap;
use lpa::report::build_report;
use lpa::{
    parse_graph, Error, Graph, IdealGraphOutcome, K0Presentation, VertexSet, DEFAULT_LATTICE_CAP,
};

#[derive(Parser)]
#[command(
    name = "lpa",
    about = "Stable rank, hereditary saturated lattice and K-theory invariants\nof Leavitt path algebras of finite directed graphs",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArg {
    /// Graph file (text or JSON); `-` or omitted reads standard input
    input: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Full invariant report for one graph
    Report {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        json: bool,
        /// Cap on the hereditary saturated lattice enumeration
        #[arg(long, default_value_t = DEFAULT_LATTICE_CAP)]
        cap: usize,
    },
    /// Stable rank verdict with its certificate
    Sr {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = DEFAULT_LATTICE_CAP)]
        cap: usize,
    },
    /// K0 group and the class of the identity
    K0 {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        json: bool,
    },
    /// All hereditary saturated vertex sets
    Lattice {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = DEFAULT_LATTICE_CAP)]
        cap: usize,
    },
    /// Quotient graph by a hereditary saturated set
    Quotient {
        #[command(flatten)]
        input: InputArg,
        /// Comma-separated vertex ids (empty string for the empty set)
        #[arg(long)]
        set: String,
        #[arg(long)]
        json: bool,
    },
    /// Restriction graph to a hereditary set
    Restrict {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        set: String,
        #[arg(long)]
        json: bool,
    },
    /// Ideal graph of a nonempty hereditary saturated set
    IdealGraph {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        set: String,
        #[arg(long)]
        json: bool,
    },
    /// Closed simple paths based at a vertex
    Csp {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        vertex: String,
        #[arg(long)]
        json: bool,
    },
    /// Run the built-in corpus and compare against the published values
    Corpus {
        #[arg(long)]
        json: bool,
        /// Deliberately corrupt one expectation to exercise the failure path
        #[arg(long, hide = true)]
        corrupt_self_test: bool,
    },
    /// Random graphs through the whole cross-module invariant suite
    Fuzz {
        #[arg(long, default_value_t = 500)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 6)]
        max_vertices: usize,
        #[arg(long, default_value_t = 10)]
        max_edges: usize,
    },
    /// Comaximality and unimodular-row reduction for a Laurent pair (f, g)
    LaurentCheck {
        f: String,
        g: String,
        #[arg(long)]
        json: bool,
    },
    /// Print a built-in family graph
    Generate {
        /// line, rose, enm, complete, loop, chain3, tri, k3, mult2
        family: String,
        params: Vec<u32>,
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse().command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::Inconclusive { .. } => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn read_graph(input: &InputArg) -> lpa::Result<Graph> {
    let text = match input.input.as_deref() {
        None | Some("-") => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| Error::Parse {
                    line: 0,
                    col: 0,
                    msg: format!("cannot read standard input: {e}"),
                })?;
            buf
        }
        Some(path) => fs::read_to_string(path).map_err(|e| Error::Parse {
            line: 0,
            col: 0,
            msg: format!("cannot read `{path}`: {e}"),
        })?,
    };
    parse_graph(&text)
}

fn parse_set(g: &Graph, spec: &str) -> lpa::Result<VertexSet> {
    let ids: Vec<&str> = spec
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    VertexSet::from_ids(g, ids)
}

fn print_graph(g: &Graph, json: bool) {
    if json {
        println!("{}", g.to_json());
    } else {
        print!("{}", g.to_dsl());
    }
}

fn k0_table(k0: &K0Presentation) -> String {
    format!(
        "K0 = {}\ntorsion: {}\nfree rank: {}\n[1]: torsion order {}, free gcd {}",
        k0.group_description(),
        if k0.invariant_factors.is_empty() {
            "(none)".to_string()
        } else {
            k0.invariant_factors
                .iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        },
        k0.free_rank,
        k0.one_torsion_order,
        k0.one_free_gcd,
    )
}

fn run(command: Command) -> lpa::Result<ExitCode> {
    match command {
        Command::Report { input, json, cap } => {
            let g = read_graph(&input)?;
            let report = build_report(&g, cap)?;
            if json {
                println!("{}", report.to_json_string());
            } else {
                print!("{}", report.render_table());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Sr { input, json, cap } => {
            let g = read_graph(&input)?;
            let verdict = stable_rank_with_cap(&g, cap)?;
            if json {
                let mut value = verdict.to_json(&g);
                value["schema"] = 1.into();
                value["explanation"] = verdict.explanation(&g).into();
                println!("{value}");
            } else {
                println!("stable rank: {}", verdict.value);
                println!("{}", verdict.explanation(&g));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::K0 { input, json } => {
            let g = read_graph(&input)?;
            let k0 = lpa::ktheory::k0_presentation(&g)?;
            if json {
                let mut value = k0.to_json();
                value["schema"] = 1.into();
                println!("{value}");
            } else {
                println!("{}", k0_table(&k0));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Lattice { input, json, cap } => {
            let g = read_graph(&input)?;
            let lattice = enumerate_hs(&g, cap);
            if json {
                println!("{}", lattice.to_json(&g));
            } else {
                for h in lattice.sets() {
                    if h.is_empty() {
                        println!("{{}}");
                    } else {
                        println!("{{{}}}", h.ids(&g).join(", "));
                    }
                }
                if lattice.truncated {
                    println!("(truncated at {cap})");
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Quotient { input, set, json } => {
            let g = read_graph(&input)?;
            let x = HsSet::new(&g, parse_set(&g, &set)?)?;
            print_graph(&quotient_graph(&g, &x)?, json);
            Ok(ExitCode::SUCCESS)
        }
        Command::Restrict { input, set, json } => {
            let g = read_graph(&input)?;
            let h = parse_set(&g, &set)?;
            print_graph(&restriction_graph(&g, &h)?, json);
            Ok(ExitCode::SUCCESS)
        }
        Command::IdealGraph { input, set, json } => {
            let g = read_graph(&input)?;
            let x = HsSet::new(&g, parse_set(&g, &set)?)?;
            match ideal_graph(&g, &x)? {
                IdealGraphOutcome::Finite(h) => {
                    if json {
                        let mut value = h.to_json();
                        value["finite"] = true.into();
                        println!("{value}");
                    } else {
                        print_graph(&h, false);
                    }
                }
                IdealGraphOutcome::Infinite(w) => {
                    if json {
                        println!(
                            "{}",
                            serde_json::json!({
                                "schema": 1,
                                "finite": false,
                                "witness_cycle": {
                                    "base": g.vertex_id(w.cycle.base()),
                                    "edges": w.cycle.edge_ids(&g),
                                },
                            })
                        );
                    } else {
                        println!(
                            "infinite: the cycle at `{}` ({}) lies outside the set and reaches it",
                            g.vertex_id(w.cycle.base()),
                            w.cycle.edge_ids(&g).join(" ")
                        );
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Csp {
            input,
            vertex,
            json,
        } => {
            let g = read_graph(&input)?;
            let paths = csp_based_at_id(&g, &vertex)?;
            if json {
                println!(
                    "{}",
                    serde_json::json!({
                        "schema": 1,
                        "base": vertex,
                        "csps": paths.iter().map(|p| p.edge_ids(&g)).collect::<Vec<_>>(),
                    })
                );
            } else {
                println!("{} closed simple path(s) based at {vertex}", paths.len());
                for p in &paths {
                    println!("{}", p.edge_ids(&g).join(" "));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Corpus {
            json,
            corrupt_self_test,
        } => {
            let mut entries = lpa::corpus::builtin_corpus();
            if corrupt_self_test {
                entries[0].expected.free_rank += 1;
            }
            let (results, all_pass) = lpa::corpus::run_corpus(&entries)?;
            if json {
                println!(
                    "{}",
                    serde_json::json!({
                        "schema": 1,
                        "pass": all_pass,
                        "results": results.iter().map(|r| serde_json::json!({
                            "name": r.name,
                            "pass": r.pass,
                            "failures": r.failures,
                        })).collect::<Vec<_>>(),
                    })
                );
            } else {
                for r in &results {
                    println!("{:<10} {}", r.name, if r.pass { "ok" } else { "FAIL" });
                    for f in &r.failures {
                        println!("           {f}");
                    }
                }
                println!("{}", if all_pass { "all matched" } else { "MISMATCH" });
            }
            Ok(if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Fuzz {
            count,
            seed,
            max_vertices,
            max_edges,
        } => {
            let bounds = FuzzBounds {
                max_vertices,
                max_edges,
            };
            bounds.validate()?;
            match run_fuzz(seed, count, &bounds) {
                Ok(n) => {
                    println!("{n} graphs, every invariant held (seed {seed})");
                    Ok(ExitCode::SUCCESS)
                }
                Err(violation) => {
                    println!("counterexample found (seed {seed}):");
                    println!("{violation}");
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::LaurentCheck { f, g, json } => {
            let f = parse_laurent(&f)?;
            let g = parse_laurent(&g)?;
            let pair = bezout(&f, &g);
            let witness = reduction_witness(&f, &g)?;
            if json {
                let bezout_json = match &pair {
                    Some((a, b)) => serde_json::json!({
                        "comaximal": true,
                        "a": a.to_string(),
                        "b": b.to_string(),
                    }),
                    None => serde_json::json!({"comaximal": false}),
                };
                let reduction_json = match &witness {
                    ReductionWitness::Reducible(v) => serde_json::json!({
                        "kind": "reducible",
                        "v": v.to_string(),
                    }),
                    ReductionWitness::Irreducible(proof) => serde_json::json!({
                        "kind": "irreducible",
                        "modulus": proof.modulus.to_string(),
                        "period": proof.period,
                        "residues": proof.residues.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
                        "f_residue": proof.f_residue.to_string(),
                        "verified": proof.verify(&f, &g),
                    }),
                    ReductionWitness::Inconclusive => serde_json::json!({"kind": "inconclusive"}),
                };
                println!(
                    "{}",
                    serde_json::json!({
                        "schema": 1,
                        "f": f.to_string(),
                        "g": g.to_string(),
                        "bezout": bezout_json,
                        "reduction": reduction_json,
                    })
                );
            } else {
                match &pair {
                    Some((a, b)) => println!("comaximal: ({a})*f + ({b})*g = 1"),
                    None => println!("not comaximal: the gcd is not a unit"),
                }
                match &witness {
                    ReductionWitness::Reducible(v) => {
                        println!("reducible: f + ({v})*g is a unit");
                    }
                    ReductionWitness::Irreducible(proof) => {
                        println!(
                            "irreducible: z has order {} modulo {}, and no scalar multiple of a power of z matches f (residue {})",
                            proof.period, proof.modulus, proof.f_residue
                        );
                        println!(
                            "proof re-verified: {}",
                            if proof.verify(&f, &g) { "yes" } else { "NO" }
                        );
                    }
                    ReductionWitness::Inconclusive => {
                        println!("inconclusive: no finite order detected and the exponent window found nothing");
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Generate {
            family,
            params,
            json,
        } => {
            let spec = FamilySpec::from_name(&family, &params)?;
            print_graph(&generate(&spec)?, json);
            Ok(ExitCode::SUCCESS)
        }
    }
}
