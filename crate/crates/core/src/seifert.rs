//! Signature, determinant and Alexander polynomial from Seifert matrices.
//!
//! Seifert pairings are row-against-column: `x^T M y = lk(x, y^+)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::LaurentPolynomial;
use crate::error::{Error, Result};
use crate::matrix::{bareiss_determinant, IntMatrix};

/// Signature of a symmetric integer matrix, by congruence diagonalization
/// over the rationals.
// row and column operations read clearest with explicit indices
#[allow(clippy::needless_range_loop)]
pub fn signature(s: &IntMatrix) -> Result<i64> {
    let n = s.ensure_square()?;
    if let Some((row, col)) = s.asymmetry() {
        return Err(Error::NotSymmetric { row, col });
    }
    let mut a: Vec<Vec<BigRational>> =
        (0..n).map(|i| (0..n).map(|j| BigRational::from_integer(BigInt::from(s[(i, j)]))).collect()).collect();
    let mut sig = 0i64;
    for k in 0..n {
        if a[k][k].is_zero() {
            if let Some(i) = (k + 1..n).find(|&i| !a[i][i].is_zero()) {
                a.swap(i, k);
                for row in a.iter_mut() {
                    row.swap(i, k);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                // e_k -> e_k + e_j; new pivot is 2 a_kj since a_jj = 0
                for c in 0..n {
                    let v = a[j][c].clone();
                    a[k][c] += v;
                }
                for r in 0..n {
                    let v = a[r][j].clone();
                    a[r][k] += v;
                }
            } else {
                continue;
            }
        }
        let pivot = a[k][k].clone();
        sig += if pivot.is_positive() { 1 } else { -1 };
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &pivot;
            for c in k..n {
                let v = &f * &a[k][c];
                a[i][c] -= v;
            }
            for r in k..n {
                let v = &f * &a[r][k];
                a[r][i] -= v;
            }
        }
    }
    Ok(sig)
}

/// Signature of `M + M^T`.
pub fn seifert_signature(m: &IntMatrix) -> Result<i64> {
    m.ensure_square()?;
    signature(&m.symmetrize())
}

/// `|det(M + M^T)|`
pub fn knot_determinant(m: &IntMatrix) -> Result<BigInt> {
    m.ensure_square()?;
    Ok(m.symmetrize().determinant()?.abs())
}

/// `det(M - t M^T)` as an ordinary polynomial in `t`, unnormalized.
///
/// The determinant has degree at most `k`, so it is sampled at
/// `t = 0, ..., k` and recovered by Lagrange interpolation.
pub fn alexander_raw(m: &IntMatrix) -> Result<LaurentPolynomial> {
    let k = m.ensure_square()?;
    let mt = m.transpose();
    let xs: Vec<i64> = (0..=k as i64).collect();
    let ys: Vec<BigInt> = xs
        .iter()
        .map(|&t| {
            let a = (0..k)
                .map(|i| (0..k).map(|j| BigInt::from(m[(i, j)]) - BigInt::from(t) * mt[(i, j)]).collect())
                .collect();
            bareiss_determinant(a)
        })
        .collect();
    let coeffs = interpolate(&xs, &ys);
    Ok(LaurentPolynomial::from_coeffs(coeffs.into_iter().map(|c| {
        assert!(c.is_integer(), "integer matrix gives integer determinant polynomial");
        c.to_integer()
    })))
}

/// Normalized Alexander polynomial `det(M - t M^T)`.
///
/// Returns the zero polynomial when the determinant vanishes identically.
pub fn alexander(m: &IntMatrix) -> Result<LaurentPolynomial> {
    let raw = alexander_raw(m)?;
    if raw.is_zero() {
        return Ok(raw);
    }
    raw.normalize()
}

// Coefficients (lowest degree first) of the interpolating polynomial.
fn interpolate(xs: &[i64], ys: &[BigInt]) -> Vec<BigRational> {
    let n = xs.len();
    let mut out = vec![BigRational::zero(); n];
    for i in 0..n {
        // basis polynomial prod_{j != i} (t - x_j) / (x_i - x_j)
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for j in (0..n).filter(|&j| j != i) {
            let xj = BigRational::from_integer(BigInt::from(xs[j]));
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (d, c) in basis.iter().enumerate() {
                next[d + 1] += c;
                next[d] -= c * &xj;
            }
            basis = next;
            denom *= BigRational::from_integer(BigInt::from(xs[i] - xs[j]));
        }
        let scale = BigRational::from_integer(ys[i].clone()) / denom;
        for (d, c) in basis.into_iter().enumerate() {
            out[d] += c * &scale;
        }
    }
    out
}

/// Whether a genus-one knot Seifert form `S` (with `|s12 - s21| = 1`) has
/// trivial Alexander polynomial.
///
/// `det(S - t S^T) = D t^2 + (1 - 2D) t + D` with `D = det S`, so this is
/// exactly `s11 s22 = s12 s21`.
pub fn alexander_trivial_2x2(form: &[[i64; 2]; 2]) -> Result<bool> {
    let [[s11, s12], [s21, s22]] = *form;
    if (s12 - s21).abs() != 1 {
        return Err(Error::NotGenusOneForm);
    }
    Ok(s11 * s22 == s12 * s21)
}
