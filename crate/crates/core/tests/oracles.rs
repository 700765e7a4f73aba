//! Searches checked against the unpruned reference implementations.

#![allow(clippy::needless_range_loop)]

use knot_core::curve_search::{find_genus1_certificate, verify_certificate, CurveCertificate};
use knot_core::lattice::{find_embedding, GramLattice};
use knot_core::{naive, IntMatrix};
use proptest::prelude::*;

fn small_gram() -> impl Strategy<Value = IntMatrix> {
    (1usize..=3)
        .prop_flat_map(|r| {
            (Just(r), prop::collection::vec(1i64..=3, r), prop::collection::vec(-2i64..=2, r * (r - 1) / 2))
        })
        .prop_map(|(r, diag, off)| {
            let mut rows = vec![vec![0i64; r]; r];
            let mut it = off.into_iter();
            for i in 0..r {
                rows[i][i] = diag[i];
                for j in i + 1..r {
                    let x = it.next().unwrap();
                    rows[i][j] = x;
                    rows[j][i] = x;
                }
            }
            IntMatrix::from_rows(&rows).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn embedding_search_matches_enumeration(g in small_gram(), dim in 1usize..=4) {
        let lattice = GramLattice::new(g.clone()).unwrap();
        prop_assume!(lattice.is_positive_definite());
        let fast = find_embedding(&lattice, dim).unwrap();
        prop_assert_eq!(fast.is_some(), naive::embeds(&g, dim));
        if let Some(e) = fast {
            prop_assert!(knot_core::lattice::verify_embedding(&lattice, &e).unwrap());
        }
    }
}

/// Unimodular `P` with its inverse, built from elementary column operations.
fn unimodular(ops: &[(usize, usize, i64)], k: usize) -> (IntMatrix, IntMatrix) {
    let mut p = IntMatrix::identity(k);
    let mut inv = IntMatrix::identity(k);
    for &(i, j, c) in ops {
        if i == j {
            continue;
        }
        let mut e = IntMatrix::identity(k).to_rows();
        e[i][j] = c;
        let mut e_inv = e.clone();
        e_inv[i][j] = -c;
        p = p.mul(&IntMatrix::from_rows(&e).unwrap());
        inv = IntMatrix::from_rows(&e_inv).unwrap().mul(&inv);
    }
    (p, inv)
}

/// `N + S` with `N - N^T` the standard symplectic form, optionally conjugated.
fn seifert_like() -> impl Strategy<Value = IntMatrix> {
    (prop::collection::vec(-2i64..=2, 10), prop::collection::vec((0usize..4, 0usize..4, -1i64..=1), 0..3)).prop_map(
        |(sym, ops)| {
            let mut rows = vec![vec![0i64; 4]; 4];
            let mut it = sym.into_iter();
            for i in 0..4 {
                for j in i..4 {
                    let x = it.next().unwrap();
                    rows[i][j] += x;
                    if i != j {
                        rows[j][i] += x;
                    }
                }
            }
            rows[0][1] += 1;
            rows[2][3] += 1;
            let m = IntMatrix::from_rows(&rows).unwrap();
            let (p, _) = unimodular(&ops, 4);
            p.transpose().mul(&m).mul(&p)
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn curve_search_matches_double_loop(m in seifert_like()) {
        let fast = find_genus1_certificate(&m, 2).unwrap();
        let slow = naive::certificate(&m, 2);
        prop_assert_eq!(fast.as_ref().map(|c| (c.a.clone(), c.b.clone())), slow);
        if let Some(c) = fast {
            prop_assert!(verify_certificate(&m, &c));
        }
    }

    #[test]
    fn certificates_transport_under_change_of_basis(
        m in seifert_like(),
        ops in prop::collection::vec((0usize..4, 0usize..4, -2i64..=2), 0..5),
    ) {
        let Some(c) = find_genus1_certificate(&m, 2).unwrap() else { return Ok(()) };
        // x^T M y = (P^-1 x)^T (P^T M P) (P^-1 y)
        let (p, inv) = unimodular(&ops, 4);
        let conj = p.transpose().mul(&m).mul(&p);
        let moved = CurveCertificate::new(&conj, inv.apply(&c.a), inv.apply(&c.b));
        prop_assert_eq!(moved.restricted_form, c.restricted_form);
        prop_assert!(verify_certificate(&conj, &moved));
    }
}
