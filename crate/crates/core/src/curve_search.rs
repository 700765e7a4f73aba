//! Genus-one Alexander-trivial subforms of a Seifert form.
//!
//! A pair of classes `a, b` on the Seifert surface with algebraic
//! intersection `±1` and Alexander-trivial restricted form cuts off a
//! genus-one piece whose boundary has Alexander polynomial 1. Such a pair
//! lowers the topological slice genus bound by one. Only the algebraic
//! witness is produced here; realizing it by embedded curves is left alone.

use std::fmt;

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::seifert::alexander_trivial_2x2;
use crate::two_bridge::{seifert_matrix, KnotParams};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CurveCertificate {
    pub a: Vec<i64>,
    pub b: Vec<i64>,
    pub restricted_form: [[i64; 2]; 2],
}

impl CurveCertificate {
    /// Builds the certificate for `(a, b)` without checking it.
    pub fn new(m: &IntMatrix, a: Vec<i64>, b: Vec<i64>) -> Self {
        let restricted_form = restricted_form(m, &a, &b);
        Self { a, b, restricted_form }
    }

    /// Largest absolute coordinate of `a` and `b`.
    pub fn max_coord(&self) -> i64 {
        self.a.iter().chain(&self.b).map(|x| x.abs()).max().unwrap_or(0)
    }
}

fn tuple(v: &[i64]) -> String {
    format!("({})", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "))
}

/// `a = (..) ; b = (..) ; form = [[..],[..]]`
impl fmt::Display for CurveCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [[p, q], [r, s]] = self.restricted_form;
        write!(f, "a = {} ; b = {} ; form = [[{p}, {q}], [{r}, {s}]]", tuple(&self.a), tuple(&self.b))
    }
}

/// `[[a^T M a, a^T M b], [b^T M a, b^T M b]]`
pub fn restricted_form(m: &IntMatrix, a: &[i64], b: &[i64]) -> [[i64; 2]; 2] {
    [[m.bilinear(a, a), m.bilinear(a, b)], [m.bilinear(b, a), m.bilinear(b, b)]]
}

fn proportional(a: &[i64], b: &[i64]) -> bool {
    (0..a.len()).all(|i| (i + 1..a.len()).all(|j| a[i] * b[j] == a[j] * b[i]))
}

/// Checks every certificate condition against `m`.
pub fn verify_certificate(m: &IntMatrix, c: &CurveCertificate) -> bool {
    let k = m.rows();
    if !m.is_square() || c.a.len() != k || c.b.len() != k {
        return false;
    }
    if c.restricted_form != restricted_form(m, &c.a, &c.b) {
        return false;
    }
    let intersection = m.antisymmetrize().bilinear(&c.a, &c.b);
    intersection.abs() == 1 && !proportional(&c.a, &c.b) && alexander_trivial_2x2(&c.restricted_form).unwrap_or(false)
}

/// Lexicographically smallest certificate (by `a`, then `b`) with every
/// coordinate in `[-bound, bound]`.
///
/// Only `a` with positive first nonzero entry and coprime entries are
/// considered: `(-a, -b)` is a certificate whenever `(a, b)` is, and an
/// intersection number of `±1` forces `a` to be primitive.
pub fn find_genus1_certificate(m: &IntMatrix, bound: i64) -> Result<Option<CurveCertificate>> {
    let k = m.ensure_square()?;
    if bound < 1 {
        return Err(Error::ZeroBound);
    }
    let anti_t = m.antisymmetrize().transpose();
    let a_list: Vec<Vec<i64>> = BoxIter::new(k, bound).filter(|a| admissible_a(a)).collect();
    let found = a_list.par_iter().find_map_first(|a| {
        let b = smallest_partner(m, &anti_t, a, bound)?;
        Some(CurveCertificate::new(m, a.clone(), b))
    });
    Ok(found)
}

fn admissible_a(a: &[i64]) -> bool {
    match a.iter().find(|&&x| x != 0) {
        Some(&first) if first > 0 => a.iter().fold(0i64, |g, &x| g.gcd(&x)) == 1,
        _ => false,
    }
}

/// Smallest `b` in the box completing `a` to a certificate.
///
/// The intersection condition `c . b = ±1` (with `c = (M - M^T)^T a`) is
/// solved for the last coordinate with nonzero `c`, so only the remaining
/// coordinates are enumerated.
fn smallest_partner(m: &IntMatrix, anti_t: &IntMatrix, a: &[i64], bound: i64) -> Option<Vec<i64>> {
    let k = a.len();
    let c = anti_t.apply(a);
    let pivot = (0..k).rev().find(|&i| c[i] != 0)?;
    let s = m.bilinear(a, a);
    let u = m.transpose().apply(a); // u . b = a^T M b
    let w = m.apply(a); // w . b = b^T M a
    let free: Vec<usize> = (0..k).filter(|&i| i != pivot).collect();
    let mut best: Option<Vec<i64>> = None;
    let mut b = vec![0i64; k];
    for vals in BoxIter::new(k - 1, bound) {
        for (&i, &x) in free.iter().zip(&vals) {
            b[i] = x;
        }
        let partial: i64 = free.iter().map(|&i| c[i] * b[i]).sum();
        let mut sols = [None, None];
        for (slot, target) in sols.iter_mut().zip([-1i64, 1]) {
            let rhs = target - partial;
            if rhs % c[pivot] == 0 && (rhs / c[pivot]).abs() <= bound {
                *slot = Some(rhs / c[pivot]);
            }
        }
        let mut sols: Vec<i64> = sols.into_iter().flatten().collect();
        sols.sort_unstable();
        for x in sols {
            b[pivot] = x;
            let ab: i64 = u.iter().zip(&b).map(|(p, q)| p * q).sum();
            let ba: i64 = w.iter().zip(&b).map(|(p, q)| p * q).sum();
            if s * m.bilinear(&b, &b) == ab * ba && best.as_ref().is_none_or(|cur| b < *cur) {
                best = Some(b.clone());
            }
        }
        // with the pivot last, enumeration order is already lexicographic
        if pivot == k - 1 && best.is_some() {
            break;
        }
    }
    best
}

/// All vectors in `[-bound, bound]^k`, lexicographically.
struct BoxIter {
    cur: Option<Vec<i64>>,
    bound: i64,
}

impl BoxIter {
    fn new(k: usize, bound: i64) -> Self {
        Self { cur: Some(vec![-bound; k]), bound }
    }
}

impl Iterator for BoxIter {
    type Item = Vec<i64>;

    fn next(&mut self) -> Option<Vec<i64>> {
        let out = self.cur.clone()?;
        let cur = self.cur.as_mut().unwrap();
        let mut i = cur.len();
        loop {
            if i == 0 {
                self.cur = None;
                break;
            }
            i -= 1;
            if cur[i] < self.bound {
                cur[i] += 1;
                break;
            }
            cur[i] = -self.bound;
        }
        Some(out)
    }
}

/// `max(3, ceil(sqrt(m+2)), ceil(sqrt(n+3))) + 1`, which contains every
/// explicit certificate from [`explicit_certificate`].
pub fn default_bound(k: KnotParams) -> i64 {
    let ceil_sqrt = |x: u64| {
        let r = exact_sqrt_floor(x);
        if r * r == x {
            r
        } else {
            r + 1
        }
    };
    3.max(ceil_sqrt(k.m + 2)).max(ceil_sqrt(k.n + 3)) as i64 + 1
}

fn exact_sqrt_floor(x: u64) -> u64 {
    let mut r = (x as f64).sqrt() as u64;
    while r * r > x {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= x {
        r += 1;
    }
    r
}

/// Integer square root when `x` is a perfect square.
pub fn perfect_sqrt(x: u64) -> Option<u64> {
    let r = exact_sqrt_floor(x);
    (r * r == x).then_some(r)
}

/// Which closed-form family produced a certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CertificateCase {
    /// `m = n = 0`
    Trivial,
    /// `m + 2` is a perfect square
    MPlusTwoSquare,
    /// `n + 3` is a perfect square
    NPlusThreeSquare,
}

impl fmt::Display for CertificateCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Trivial => "m=n=0",
            Self::MPlusTwoSquare => "m+2 square",
            Self::NPlusThreeSquare => "n+3 square",
        })
    }
}

/// Closed-form certificate for `K(m,n)` when one of the three cases applies.
///
/// * `m = n = 0`: `a = d1 + d4`, `b = d1 + d2 + 2 d4`
/// * `m + 2 = s^2`: `a = d1 + s d4`, `b = d2`
/// * `n + 3 = s^2`: `a = d1`, `b = d2 + s d4`
pub fn explicit_certificate(k: KnotParams) -> Option<(CertificateCase, CurveCertificate)> {
    let (case, a, b) = if k.m == 0 && k.n == 0 {
        (CertificateCase::Trivial, vec![1, 0, 0, 1], vec![1, 1, 0, 2])
    } else if let Some(s) = perfect_sqrt(k.m + 2) {
        (CertificateCase::MPlusTwoSquare, vec![1, 0, 0, s as i64], vec![0, 1, 0, 0])
    } else {
        let s = perfect_sqrt(k.n + 3)?;
        (CertificateCase::NPlusThreeSquare, vec![1, 0, 0, 0], vec![0, 1, 0, s as i64])
    };
    Some((case, CurveCertificate::new(&seifert_matrix(k), a, b)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::two_bridge::seifert_matrix;

    fn sm(m: u64, n: u64) -> IntMatrix {
        seifert_matrix(KnotParams::new(m, n)).matrix().clone()
    }

    #[test]
    fn restricted_form_examples() {
        for n in 0..5 {
            assert_eq!(restricted_form(&sm(2, n), &[1, 0, 0, 2], &[0, 1, 0, 0]), [[0, 1], [0, -(n as i64) - 3]]);
        }
        assert_eq!(restricted_form(&sm(0, 0), &[1, 0, 0, 1], &[1, 1, 0, 2]), [[-1, 1], [0, 0]]);
        for m in 0..5 {
            assert_eq!(restricted_form(&sm(m, 6), &[1, 0, 0, 0], &[0, 1, 0, 3]), [[-(m as i64) - 2, 1], [0, 0]]);
        }
    }

    #[test]
    fn verify_examples() {
        let m = sm(0, 0);
        assert!(verify_certificate(&m, &CurveCertificate::new(&m, vec![1, 0, 0, 1], vec![1, 1, 0, 2])));
        let c = CurveCertificate::new(&m, vec![1, 0, 0, 0], vec![0, 1, 0, 0]);
        assert_eq!(c.restricted_form, [[-2, 1], [0, -3]]);
        assert!(!verify_certificate(&m, &c));
        let same = CurveCertificate::new(&m, vec![1, 0, 0, 1], vec![1, 0, 0, 1]);
        assert!(!verify_certificate(&m, &same));
        let mut tampered = CurveCertificate::new(&m, vec![1, 0, 0, 1], vec![1, 1, 0, 2]);
        tampered.restricted_form[1][1] = 5;
        assert!(!verify_certificate(&m, &tampered));
    }

    #[test]
    fn search_examples() {
        // Frozen from an independent brute-force enumeration of the box.
        let c = find_genus1_certificate(&sm(0, 0), 3).unwrap().unwrap();
        assert_eq!((c.a.clone(), c.b.clone()), (vec![0, 0, 1, 0], vec![-1, -1, -3, -2]));
        assert_eq!(c.restricted_form, [[-1, 3], [4, -12]]);
        let c = find_genus1_certificate(&sm(2, 0), 3).unwrap();
        assert!(c.is_some_and(|c| verify_certificate(&sm(2, 0), &c)));
        let c = find_genus1_certificate(&sm(1, 1), 1).unwrap().unwrap();
        assert_eq!((c.a.clone(), c.b.clone()), (vec![0, 0, 1, 1], vec![-1, -1, 1, -1]));
        assert_eq!(c.restricted_form, [[-1, -3], [-2, -6]]);
        assert!(find_genus1_certificate(&sm(0, 0), 0).is_err());
    }

    #[test]
    fn box_iteration_is_lexicographic() {
        let all: Vec<Vec<i64>> = BoxIter::new(2, 1).collect();
        assert_eq!(all.len(), 9);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(all[0], vec![-1, -1]);
    }

    #[test]
    fn explicit_cases() {
        for m in 0..=23 {
            for n in 0..=23 {
                let k = KnotParams::new(m, n);
                if let Some((_, c)) = explicit_certificate(k) {
                    assert!(verify_certificate(&sm(m, n), &c), "{k}");
                    assert!(c.max_coord() < default_bound(k));
                }
            }
        }
        assert_eq!(explicit_certificate(KnotParams::new(0, 0)).unwrap().0, CertificateCase::Trivial);
        assert_eq!(explicit_certificate(KnotParams::new(7, 0)).unwrap().0, CertificateCase::MPlusTwoSquare);
        assert_eq!(explicit_certificate(KnotParams::new(1, 1)).unwrap().0, CertificateCase::NPlusThreeSquare);
        assert!(explicit_certificate(KnotParams::new(1, 0)).is_none());
    }

    #[test]
    fn display_format() {
        let m = sm(0, 0);
        let c = CurveCertificate::new(&m, vec![1, 0, 0, 1], vec![1, 1, 0, 2]);
        assert_eq!(c.to_string(), "a = (1, 0, 0, 1) ; b = (1, 1, 0, 2) ; form = [[-1, 1], [0, 0]]");
    }
}
