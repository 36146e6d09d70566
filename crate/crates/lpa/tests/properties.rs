//! Property tests: ring laws for the Laurent arithmetic, ingestion round
//! trips, and the closure-operator laws, all on randomly generated values
//! with shrinking.

use num::{BigInt, Signed, Zero};
use proptest::prelude::*;

use lpa::cycles::simple_cycles;
use lpa::fuzz::brute_force_reachability;
use lpa::hereditary::hs_closure;
use lpa::ktheory::{smith_normal_form, IntMatrix};
use lpa::laurent::{bezout, parse_laurent};
use lpa::{parse_graph, Graph, LaurentPoly, VertexSet};

fn arb_laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-5i64..=5, -9i64..=9, 1i64..=9), 0..6).prop_map(|terms| {
        terms
            .into_iter()
            .fold(LaurentPoly::zero(), |acc, (exp, num, den)| {
                &acc + &LaurentPoly::term(num, den, exp)
            })
    })
}

fn arb_graph() -> impl Strategy<Value = Graph> {
    (1usize..=6).prop_flat_map(|nv| {
        prop::collection::vec((0..nv, 0..nv), 0..=10).prop_map(move |pairs| {
            Graph::new(
                (1..=nv).map(|i| format!("v{i}")),
                pairs.iter().enumerate().map(|(i, &(s, d))| {
                    (
                        format!("e{}", i + 1),
                        format!("v{}", s + 1),
                        format!("v{}", d + 1),
                    )
                }),
            )
            .expect("generated graph is valid")
        })
    })
}

proptest! {
    #[test]
    fn laurent_ring_laws(a in arb_laurent(), b in arb_laurent(), c in arb_laurent()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &(-&a), LaurentPoly::zero());
        prop_assert_eq!(&a * &LaurentPoly::one(), a.clone());
    }

    #[test]
    fn laurent_units_compose(ca in -9i64..=9, ea in -5i64..=5, cb in -9i64..=9, eb in -5i64..=5) {
        let a = LaurentPoly::term(ca, 1, ea);
        let b = LaurentPoly::term(cb, 1, eb);
        if a.is_unit() && b.is_unit() {
            let product = &a * &b;
            prop_assert!(product.is_unit());
            prop_assert_eq!(&product * &product.unit_inverse().unwrap(), LaurentPoly::one());
        }
    }

    #[test]
    fn bezout_outputs_remultiply(a in arb_laurent(), b in arb_laurent()) {
        if let Some((x, y)) = bezout(&a, &b) {
            prop_assert_eq!(&(&x * &a) + &(&y * &b), LaurentPoly::one());
        }
    }

    #[test]
    fn graph_round_trips(g in arb_graph()) {
        prop_assert_eq!(&parse_graph(&g.to_dsl()).unwrap(), &g);
        prop_assert_eq!(&parse_graph(&g.to_json().to_string()).unwrap(), &g);
    }

    #[test]
    fn reaches_matches_path_enumeration(g in arb_graph()) {
        prop_assert_eq!(g.reachability(), brute_force_reachability(&g));
    }

    #[test]
    fn acyclic_iff_no_cycles(g in arb_graph()) {
        prop_assert_eq!(g.is_acyclic(), simple_cycles(&g).is_empty());
    }

    #[test]
    fn laurent_display_round_trips(a in arb_laurent()) {
        prop_assert_eq!(parse_laurent(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn snf_decomposition_is_valid(
        rows in 1usize..=6,
        cols in 1usize..=6,
        entries in prop::collection::vec(-20i64..=20, 36),
    ) {
        let mut m = IntMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, BigInt::from(entries[i * cols + j]));
            }
        }
        let snf = smith_normal_form(&m);
        prop_assert_eq!(snf.u.mul(&m).mul(&snf.v), snf.d.clone());
        let diag = snf.diagonal();
        for w in diag.windows(2) {
            if w[0].is_zero() {
                prop_assert!(w[1].is_zero());
            } else {
                prop_assert!((&w[1] % &w[0]).is_zero());
            }
        }
        for i in 0..rows {
            for j in 0..cols {
                if i == j {
                    prop_assert!(!snf.d.get(i, j).is_negative());
                } else {
                    prop_assert!(snf.d.get(i, j).is_zero());
                }
            }
        }
    }

    #[test]
    fn hs_closure_is_a_closure_operator(g in arb_graph(), mask_s in 0u32..64, mask_t in 0u32..64) {
        let n = g.vertex_count();
        let s: VertexSet = (0..n).filter(|&v| mask_s & (1 << v) != 0).collect();
        let t: VertexSet = (0..n).filter(|&v| (mask_s | mask_t) & (1 << v) != 0).collect();
        let cs = hs_closure(&g, &s);
        // extensive
        prop_assert!(s.is_subset(cs.vertices()));
        // idempotent
        prop_assert_eq!(&hs_closure(&g, cs.vertices()), &cs);
        // monotone (s is a subset of t by construction)
        prop_assert!(cs.vertices().is_subset(hs_closure(&g, &t).vertices()));
    }
}
