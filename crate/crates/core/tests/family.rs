use knot_core::curve_search::{explicit_certificate, find_genus1_certificate, perfect_sqrt, verify_certificate};
use knot_core::lattice::{min_embedding_dim, verify_embedding};
use knot_core::pipeline::{full_report, genus_bounds, obstruction_dim, Budgets, Embeddable};
use knot_core::seifert::{alexander, knot_determinant, seifert_signature, signature};
use knot_core::two_bridge::{knot_fraction, qmn_gram, qmn_witness, seifert_matrix};
use knot_core::{KnotParams, SliceReport};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

fn k(m: u64, n: u64) -> KnotParams {
    KnotParams::new(m, n)
}

fn ceil_sqrt(x: u64) -> i64 {
    (1..).find(|r: &i64| (r * r) as u64 >= x).unwrap()
}

#[test]
fn square_cases_have_small_certificates() {
    for m in 0..=23u64 {
        for n in 0..=23u64 {
            let Some((_, c)) = explicit_certificate(k(m, n)) else {
                assert!(perfect_sqrt(m + 2).is_none() && perfect_sqrt(n + 3).is_none());
                continue;
            };
            let sm = seifert_matrix(k(m, n));
            assert!(verify_certificate(&sm, &c), "K({m},{n}): {c}");
            let bound = if perfect_sqrt(m + 2).is_some() { ceil_sqrt(m + 2) } else { ceil_sqrt(n + 3) };
            assert!(c.max_coord() <= bound.max(2));
            let found = find_genus1_certificate(&sm, bound.max(2)).unwrap().expect("search finds one");
            assert!(verify_certificate(&sm, &found));
        }
    }
}

#[test]
fn invariants_agree_with_each_other() {
    for m in 0..=6u64 {
        for n in 0..=6u64 {
            let sm = seifert_matrix(k(m, n));
            let q = qmn_gram(k(m, n));
            let det = knot_determinant(&sm).unwrap();
            let p = knot_fraction(k(m, n)).numer().clone();
            assert_eq!(det, p);
            assert_eq!(q.gram().determinant().unwrap(), p);
            let delta = alexander(&sm).unwrap();
            assert!(delta.is_symmetric());
            assert!(delta.eval(&BigRational::one()).abs().is_one());
            assert_eq!(delta.eval(&BigRational::from_integer(BigInt::from(-1))).abs(), BigRational::from_integer(det));
            assert_eq!(signature(q.gram()).unwrap(), q.rank() as i64);
            assert_eq!(seifert_signature(&sm).unwrap(), -2);
            assert_eq!(obstruction_dim(q.rank() as i64, -2).unwrap(), q.rank() as i64 + 2);
        }
    }
}

#[test]
fn pattern_embeddings_realize_the_lattice() {
    for m in 0..=6 {
        for n in 0..=6 {
            let q = qmn_gram(k(m, n));
            let e = qmn_witness(k(m, n));
            assert_eq!(e.ambient_dim, q.rank() + if m == 0 { 3 } else { 4 });
            assert!(verify_embedding(&q, &e).unwrap(), "K({m},{n})");
        }
    }
}

#[test]
fn minimal_embedding_dimensions() {
    let expected = [((0, 0), 11), ((0, 1), 13), ((1, 0), 14), ((0, 2), 15), ((1, 1), 16), ((2, 0), 16)];
    for ((m, n), d) in expected {
        let q = qmn_gram(k(m, n));
        assert_eq!(min_embedding_dim(&q, q.rank() + 6).unwrap(), Some(d), "Q({m},{n})");
    }
}

#[test]
fn full_reports_settle_both_genera() {
    let budgets = Budgets::default();
    for m in 0..=2 {
        for n in 0..=2 {
            let r = full_report(k(m, n), &budgets).unwrap();
            assert_eq!((r.gtop_display().as_str(), r.gsm_display().as_str()), ("1", "2"), "K({m},{n})");
            assert!(r.bounds_consistent());
            assert_eq!(r.embedding_verdict.as_ref().unwrap().embeddable, Embeddable::No);
            assert!(verify_certificate(&seifert_matrix(k(m, n)), r.curve_certificate.as_ref().unwrap()));
        }
    }
}

#[test]
fn reports_round_trip_through_json() {
    for r in [genus_bounds(k(0, 0)).unwrap(), full_report(k(1, 1), &Budgets::default()).unwrap()] {
        let text = r.to_json();
        let back = SliceReport::from_json(&text).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.to_json(), text);
    }
}
