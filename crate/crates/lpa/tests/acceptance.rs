//! Acceptance suite: every release criterion, one test per criterion, each
//! printing a pass line (run with `--nocapture` to see them).
//!
//! The determinant oracle used against the Smith normal form is an
//! independent fraction-free (Bareiss) elimination written here, never the
//! reduction under test.

use num::{BigInt, One, Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use lpa::corpus::{builtin_corpus, run_corpus};
use lpa::cycles::{has_isolated_cycles, simple_cycles, x0_set};
use lpa::families::{generate, FamilySpec};
use lpa::fuzz::{brute_force_isolated_cycles, seeded_graphs, FuzzBounds};
use lpa::hereditary::{enumerate_hs, hs_closure, is_cofinal, quotient_graph};
use lpa::ktheory::{k0_presentation, smith_normal_form, IntMatrix};
use lpa::laurent::{bezout, parse_laurent, reduction_witness, ReductionWitness};
use lpa::rank::{cstar_stable_rank, stable_rank, verify_pisu_quotient, Certificate, StableRank};
use lpa::{Graph, LaurentPoly, VertexSet};

fn sr(spec: FamilySpec) -> StableRank {
    stable_rank(&generate(&spec).unwrap()).unwrap().value
}

#[test]
fn criterion_1_trichotomy_corpus() {
    assert_eq!(sr(FamilySpec::Line(5)), StableRank::One);
    for n in [2, 3, 5] {
        assert_eq!(sr(FamilySpec::Rose(n)), StableRank::Infinite, "rose({n})");
    }
    assert_eq!(sr(FamilySpec::Loop), StableRank::Two);
    assert_eq!(sr(FamilySpec::Chain3), StableRank::Two);
    assert_eq!(
        sr(FamilySpec::Enm { loops: 2, tail: 3 }),
        StableRank::Infinite
    );
    // the full built-in corpus agrees with the published table
    let (results, all_pass) = run_corpus(&builtin_corpus()).unwrap();
    assert!(all_pass, "{results:?}");
    println!("criterion 1 PASS: trichotomy exact on line/rose/loop/chain3/enm and the full corpus");
}

#[test]
fn criterion_2_cstar_comparison() {
    let lp = generate(&FamilySpec::Loop).unwrap();
    assert_eq!(cstar_stable_rank(&lp).unwrap(), StableRank::One);
    assert_eq!(stable_rank(&lp).unwrap().value, StableRank::Two);

    let graphs = seeded_graphs(0, 500, &FuzzBounds::default());
    for g in &graphs {
        let l = stable_rank(g).unwrap().value;
        let c = cstar_stable_rank(g).unwrap();
        assert_eq!(
            l == StableRank::Infinite,
            c == StableRank::Infinite,
            "infinite mismatch on\n{}",
            g.to_dsl()
        );
        if l == StableRank::One {
            assert_eq!(
                c,
                StableRank::One,
                "rank-one transfer failed on\n{}",
                g.to_dsl()
            );
        }
        assert!(c <= l, "C* rank above algebraic rank on\n{}", g.to_dsl());
    }
    println!(
        "criterion 2 PASS: loop splits 2 vs 1; both comparison laws held on 500 seeded graphs"
    );
}

#[test]
fn criterion_3_k0_values() {
    for n in [2u32, 3, 4] {
        let g = generate(&FamilySpec::Rose(n)).unwrap();
        let k0 = k0_presentation(&g).unwrap();
        let order = BigInt::from(n - 1);
        if n == 2 {
            assert!(k0.invariant_factors.is_empty());
        } else {
            assert_eq!(k0.invariant_factors, std::slice::from_ref(&order));
        }
        assert_eq!(k0.free_rank, 0);
        assert_eq!(k0.one_torsion_order, order, "rose({n})");
    }
    let tri = k0_presentation(&generate(&FamilySpec::Tri).unwrap()).unwrap();
    assert!(tri.invariant_factors.is_empty());
    assert_eq!(tri.free_rank, 1);
    assert_eq!(tri.one_torsion_order, BigInt::one());
    assert_eq!(tri.one_free_gcd, BigInt::zero());

    let k3 = k0_presentation(&generate(&FamilySpec::K3).unwrap()).unwrap();
    assert_eq!(k3.invariant_factors, [BigInt::from(2), BigInt::from(2)]);
    assert_eq!(k3.free_rank, 0);
    assert_eq!(k3.one_torsion_order, BigInt::one());

    let m2 = k0_presentation(&generate(&FamilySpec::Mult2).unwrap()).unwrap();
    assert_eq!(m2.invariant_factors, [BigInt::from(2)]);
    assert_eq!(m2.free_rank, 1);
    assert_eq!(m2.one_torsion_order, BigInt::from(2));
    assert_eq!(m2.one_free_gcd, BigInt::one());
    println!("criterion 3 PASS: (K0, [1]) exact for rose(2..4), tri, k3, mult2");
}

#[test]
fn criterion_4_x0_quotient_has_isolated_cycles() {
    let graphs = seeded_graphs(0, 500, &FuzzBounds::default());
    for g in &graphs {
        let closure = hs_closure(g, &x0_set(g));
        let q = quotient_graph(g, &closure).unwrap();
        assert!(
            has_isolated_cycles(&q),
            "quotient by the closure of X0 kept entangled cycles on\n{}",
            g.to_dsl()
        );
    }
    println!("criterion 4 PASS: X0-closure quotient has isolated cycles on all 500 seeded graphs");
}

#[test]
fn criterion_5_oracle_equivalences() {
    let bounds = FuzzBounds {
        max_vertices: 5,
        max_edges: 8,
    };
    let graphs = seeded_graphs(1, 350, &bounds);
    assert!(graphs.len() >= 300);
    for g in &graphs {
        let n = g.vertex_count();
        let lattice = enumerate_hs(g, 4096);
        assert!(!lattice.truncated);
        // (a) closure equals the meet of the lattice elements above the set
        for mask in 0u32..(1 << n) {
            let s: VertexSet = (0..n).filter(|&v| mask & (1 << v) != 0).collect();
            let closure = hs_closure(g, &s);
            let mut meet = VertexSet::full(g);
            for h in lattice.sets() {
                if s.is_subset(h.vertices()) {
                    meet = meet.intersection(h.vertices());
                }
            }
            assert_eq!(
                closure.vertices(),
                &meet,
                "closure != lattice meet on\n{}",
                g.to_dsl()
            );
        }
        // (b) component criterion equals the literal pairwise path check
        assert_eq!(
            has_isolated_cycles(g),
            brute_force_isolated_cycles(g).unwrap(),
            "isolated-cycles mismatch on\n{}",
            g.to_dsl()
        );
        // (c) cofinality is exactly the two-element lattice
        assert_eq!(
            is_cofinal(g).unwrap(),
            lattice.len() == 2,
            "cofinality mismatch on\n{}",
            g.to_dsl()
        );
    }
    println!(
        "criterion 5 PASS: closure/meet, isolated-cycles and cofinality oracles agree on {} instances",
        graphs.len()
    );
}

/// Fraction-free (Bareiss) determinant, the oracle for criterion 6.
fn bareiss_det(m: &IntMatrix) -> BigInt {
    assert_eq!(m.rows(), m.cols());
    let n = m.rows();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| m.get(i, j).clone()).collect())
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = num / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

#[test]
fn criterion_6_snf_validity() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut square_nonsingular = 0;
    for _ in 0..200 {
        let rows = rng.random_range(1..=8);
        let cols = rng.random_range(1..=8);
        let mut m = IntMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, BigInt::from(rng.random_range(-9i64..=9)));
            }
        }
        let snf = smith_normal_form(&m);
        assert_eq!(snf.u.mul(&m).mul(&snf.v), snf.d, "U·M·V != D");
        assert_eq!(bareiss_det(&snf.u).abs(), BigInt::one(), "U not unimodular");
        assert_eq!(bareiss_det(&snf.v).abs(), BigInt::one(), "V not unimodular");
        let diag = snf.diagonal();
        for w in diag.windows(2) {
            if w[0].is_zero() {
                assert!(w[1].is_zero(), "trailing zeros violated: {diag:?}");
            } else {
                assert!(
                    (&w[1] % &w[0]).is_zero(),
                    "divisibility chain broken: {diag:?}"
                );
            }
        }
        for i in 0..rows {
            for j in 0..cols {
                if i != j {
                    assert!(snf.d.get(i, j).is_zero(), "D not diagonal");
                } else {
                    assert!(!snf.d.get(i, j).is_negative(), "negative invariant factor");
                }
            }
        }
        if rows == cols {
            let det = bareiss_det(&m);
            if !det.is_zero() {
                square_nonsingular += 1;
                let product: BigInt = snf.nonzero_diagonal().iter().product();
                assert_eq!(det.abs(), product, "|det| != product of invariant factors");
            }
        }
    }
    assert!(
        square_nonsingular > 0,
        "no nonsingular square samples drawn"
    );
    println!(
        "criterion 6 PASS: 200 matrices: exact U·M·V = D, unimodular transforms, divisibility; |det| check on {square_nonsingular} nonsingular squares"
    );
}

#[test]
fn criterion_7_laurent_witness() {
    let f = parse_laurent("1+z").unwrap();
    let g = parse_laurent("1+z^2").unwrap();
    let (a, b) = bezout(&f, &g).expect("the pair is comaximal");
    assert_eq!(
        &(&a * &f) + &(&b * &g),
        LaurentPoly::one(),
        "bezout identity"
    );
    match reduction_witness(&f, &g).unwrap() {
        ReductionWitness::Irreducible(proof) => {
            assert_eq!(proof.period, 4, "z has order 4 modulo 1+z^2");
            assert!(proof.verify(&f, &g), "proof re-verification");
        }
        other => panic!("expected irreducible, got {other:?}"),
    }
    println!("criterion 7 PASS: bezout re-multiplies to 1; (1+z, 1+z^2) irreducible by the period-4 residue proof");
}

#[test]
fn criterion_8_certificate_soundness() {
    let mut graphs: Vec<Graph> = [
        FamilySpec::Line(5),
        FamilySpec::Rose(2),
        FamilySpec::Rose(3),
        FamilySpec::Rose(5),
        FamilySpec::Loop,
        FamilySpec::Chain3,
        FamilySpec::Tri,
        FamilySpec::K3,
        FamilySpec::Mult2,
        FamilySpec::Enm { loops: 2, tail: 3 },
    ]
    .iter()
    .map(|s| generate(s).unwrap())
    .collect();
    graphs.extend(seeded_graphs(0, 500, &FuzzBounds::default()));
    let mut infinite = 0;
    let mut two = 0;
    for g in &graphs {
        let verdict = stable_rank(g).unwrap();
        match &verdict.certificate {
            Certificate::Acyclic => assert!(g.is_acyclic()),
            Certificate::WitnessH(h) => {
                infinite += 1;
                assert_eq!(verdict.value, StableRank::Infinite);
                assert!(
                    verify_pisu_quotient(g, h).unwrap(),
                    "infinite witness failed re-verification on\n{}",
                    g.to_dsl()
                );
            }
            Certificate::WitnessCycle(c) => {
                two += 1;
                assert_eq!(verdict.value, StableRank::Two);
                assert!(
                    simple_cycles(g).contains(c),
                    "witness cycle not enumerated on\n{}",
                    g.to_dsl()
                );
                let lattice = enumerate_hs(g, 4096);
                assert!(!lattice.truncated);
                for h in lattice.sets() {
                    assert!(
                        !verify_pisu_quotient(g, h).unwrap(),
                        "rank-two graph has a purely infinite simple quotient on\n{}",
                        g.to_dsl()
                    );
                }
            }
        }
    }
    assert!(
        infinite > 0 && two > 0,
        "corpus exercised both certificate kinds"
    );
    println!(
        "criterion 8 PASS: {infinite} infinite and {two} rank-two certificates re-verified over {} graphs",
        graphs.len()
    );
}
