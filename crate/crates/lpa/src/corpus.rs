//! The built-in corpus: the worked examples with their published stable
//! ranks and `(K_0, [1])` data, run as an end-to-end self-check.

use num::BigInt;

use crate::families::{generate, FamilySpec};
use crate::ktheory::k0_presentation;
use crate::rank::{cstar_stable_rank, stable_rank, StableRank};
use crate::Result;

/// What a corpus entry must evaluate to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expected {
    pub sr: StableRank,
    pub cstar: StableRank,
    pub torsion: Vec<u64>,
    pub free_rank: usize,
    pub one_torsion_order: u64,
    pub one_free_gcd: u64,
}

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub spec: FamilySpec,
    pub expected: Expected,
}

/// One row of corpus output.
#[derive(Debug, Clone)]
pub struct CorpusResult {
    pub name: String,
    pub pass: bool,
    /// `field: expected vs computed` descriptions for the mismatches.
    pub failures: Vec<String>,
}

pub fn builtin_corpus() -> Vec<CorpusEntry> {
    use StableRank::{Infinite, One, Two};
    let e = |sr, cstar, torsion: &[u64], free_rank, one_torsion_order, one_free_gcd| Expected {
        sr,
        cstar,
        torsion: torsion.to_vec(),
        free_rank,
        one_torsion_order,
        one_free_gcd,
    };
    vec![
        CorpusEntry {
            name: "line5",
            spec: FamilySpec::Line(5),
            expected: e(One, One, &[], 1, 1, 5),
        },
        CorpusEntry {
            name: "rose2",
            spec: FamilySpec::Rose(2),
            expected: e(Infinite, Infinite, &[], 0, 1, 0),
        },
        CorpusEntry {
            name: "rose3",
            spec: FamilySpec::Rose(3),
            expected: e(Infinite, Infinite, &[2], 0, 2, 0),
        },
        CorpusEntry {
            name: "rose4",
            spec: FamilySpec::Rose(4),
            expected: e(Infinite, Infinite, &[3], 0, 3, 0),
        },
        CorpusEntry {
            name: "rose5",
            spec: FamilySpec::Rose(5),
            expected: e(Infinite, Infinite, &[4], 0, 4, 0),
        },
        CorpusEntry {
            name: "loop",
            spec: FamilySpec::Loop,
            expected: e(Two, One, &[], 1, 1, 1),
        },
        CorpusEntry {
            name: "chain3",
            spec: FamilySpec::Chain3,
            expected: e(Two, Two, &[], 1, 1, 1),
        },
        CorpusEntry {
            name: "tri",
            spec: FamilySpec::Tri,
            expected: e(Infinite, Infinite, &[], 1, 1, 0),
        },
        CorpusEntry {
            name: "k3",
            spec: FamilySpec::K3,
            expected: e(Infinite, Infinite, &[2, 2], 0, 1, 0),
        },
        CorpusEntry {
            name: "mult2",
            spec: FamilySpec::Mult2,
            expected: e(Infinite, Infinite, &[2], 1, 2, 1),
        },
        CorpusEntry {
            name: "enm2_3",
            spec: FamilySpec::Enm { loops: 2, tail: 3 },
            expected: e(Infinite, Infinite, &[], 0, 1, 0),
        },
    ]
}

pub fn run_entry(entry: &CorpusEntry) -> Result<CorpusResult> {
    let g = generate(&entry.spec)?;
    let sr = stable_rank(&g)?.value;
    let cstar = cstar_stable_rank(&g)?;
    let k0 = k0_presentation(&g)?;
    fn check(failures: &mut Vec<String>, field: &str, expected: String, computed: String) {
        if expected != computed {
            failures.push(format!("{field}: expected {expected}, computed {computed}"));
        }
    }
    let mut failures = Vec::new();
    let want = &entry.expected;
    check(&mut failures, "sr", want.sr.to_string(), sr.to_string());
    check(
        &mut failures,
        "cstar",
        want.cstar.to_string(),
        cstar.to_string(),
    );
    let want_torsion: Vec<BigInt> = want.torsion.iter().map(|&d| BigInt::from(d)).collect();
    if k0.invariant_factors != want_torsion {
        failures.push(format!(
            "torsion: expected {:?}, computed {:?}",
            want.torsion,
            k0.invariant_factors
                .iter()
                .map(BigInt::to_string)
                .collect::<Vec<_>>()
        ));
    }
    check(
        &mut failures,
        "free_rank",
        want.free_rank.to_string(),
        k0.free_rank.to_string(),
    );
    check(
        &mut failures,
        "one_torsion_order",
        want.one_torsion_order.to_string(),
        k0.one_torsion_order.to_string(),
    );
    check(
        &mut failures,
        "one_free_gcd",
        want.one_free_gcd.to_string(),
        k0.one_free_gcd.to_string(),
    );
    Ok(CorpusResult {
        name: entry.name.to_string(),
        pass: failures.is_empty(),
        failures,
    })
}

/// Runs the given entries; the flag is true iff everything matched.
pub fn run_corpus(entries: &[CorpusEntry]) -> Result<(Vec<CorpusResult>, bool)> {
    let mut results = Vec::new();
    let mut all_pass = true;
    for entry in entries {
        let r = run_entry(entry)?;
        all_pass &= r.pass;
        results.push(r);
    }
    Ok((results, all_pass))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn the_full_corpus_passes() {
        let (results, all_pass) = run_corpus(&builtin_corpus()).unwrap();
        for r in &results {
            assert!(r.pass, "{}: {:?}", r.name, r.failures);
        }
        assert!(all_pass);
    }

    #[test]
    fn corrupted_expectations_are_caught() {
        let mut entries = builtin_corpus();
        entries[0].expected.free_rank = 9;
        let (results, all_pass) = run_corpus(&entries).unwrap();
        assert!(!all_pass);
        assert!(!results[0].pass);
        assert!(results[0].failures[0].contains("free_rank"));
        assert!(results[1..].iter().all(|r| r.pass));
    }
}
