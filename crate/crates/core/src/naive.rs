//! Slow reference implementations of the two searches.
//!
//! Exponential and unpruned; they exist to cross-check the real searches on
//! tiny inputs.

use crate::arith::LaurentPolynomial;
use crate::matrix::IntMatrix;
use crate::seifert::alexander;

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Every vector of `[-bound, bound]^k`, lexicographically.
pub fn box_vectors(k: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        out = out.into_iter().flat_map(|v| (-bound..=bound).map(move |x| [v.clone(), vec![x]].concat())).collect();
    }
    out
}

/// Every vector of `Z^dim` with squared norm `norm`.
pub fn shell(norm: i64, dim: usize) -> Vec<Vec<i64>> {
    if norm < 0 {
        return Vec::new();
    }
    let r = (0..).find(|r| r * r > norm).unwrap();
    box_vectors(dim, r).into_iter().filter(|v| dot(v, v) == norm).collect()
}

/// Whether the Gram matrix `g` is realized by vectors in `Z^dim`, trying every
/// combination of shell vectors with no symmetry reduction.
pub fn embeds(g: &IntMatrix, dim: usize) -> bool {
    let shells: Vec<_> = (0..g.rows()).map(|i| shell(g[(i, i)], dim)).collect();
    fn go(g: &IntMatrix, shells: &[Vec<Vec<i64>>], chosen: &mut Vec<Vec<i64>>) -> bool {
        let i = chosen.len();
        if i == shells.len() {
            return true;
        }
        for v in &shells[i] {
            if chosen.iter().enumerate().all(|(j, w)| dot(v, w) == g[(i, j)]) {
                chosen.push(v.clone());
                if go(g, shells, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    go(g, &shells, &mut Vec::new())
}

/// Lexicographically first `(a, b)` in the box, `a` with positive first
/// nonzero entry, meeting once and with Alexander-trivial restricted form.
/// The Alexander polynomial is recomputed from the full determinant.
pub fn certificate(m: &IntMatrix, bound: i64) -> Option<(Vec<i64>, Vec<i64>)> {
    let vs = box_vectors(m.rows(), bound);
    let anti = m.antisymmetrize();
    for a in &vs {
        if a.iter().find(|&&x| x != 0).is_none_or(|&x| x < 0) {
            continue;
        }
        for b in &vs {
            if anti.bilinear(a, b).abs() != 1 {
                continue;
            }
            let form =
                IntMatrix::from_rows(&[[m.bilinear(a, a), m.bilinear(a, b)], [m.bilinear(b, a), m.bilinear(b, b)]])
                    .expect("2x2");
            if alexander(&form).is_ok_and(|d| d == LaurentPolynomial::one()) {
                return Some((a.clone(), b.clone()));
            }
        }
    }
    None
}
