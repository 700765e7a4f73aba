//! The family `K(m,n)`: the 2-bridge knot whose double branched cover is the
//! lens space `L(p,q)` with `p/q = [2m+3, 1, 2n+4, 1, 1, 2]`.
//!
//! The Goeritz form is taken from the alternating diagram coloured so every
//! crossing has incidence number -1. It is built here directly from its
//! closed form rather than from a diagram.

use std::fmt;
use std::ops::Deref;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::Fraction;
use crate::error::{Error, Result};
use crate::lattice::{Embedding, GramLattice};
use crate::matrix::IntMatrix;

/// All-positive continued fraction `a_0 + 1/(a_1 + 1/(... + 1/a_n))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ContinuedFraction(Vec<BigInt>);

impl ContinuedFraction {
    pub fn new<C: Into<BigInt>>(coeffs: impl IntoIterator<Item = C>) -> Result<Self> {
        let coeffs: Vec<BigInt> = coeffs.into_iter().map(Into::into).collect();
        if coeffs.is_empty() {
            return Err(Error::EmptyContinuedFraction);
        }
        if let Some(bad) = coeffs.iter().find(|c| !c.is_positive()) {
            return Err(Error::NonPositiveCoefficient(bad.to_string()));
        }
        Ok(Self(coeffs))
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn to_fraction(&self) -> Fraction {
        let (last, rest) = self.0.split_last().expect("nonempty by construction");
        rest.iter().rev().fold(Fraction::from_integer(last.clone()), |acc, a| {
            Fraction::from_integer(a.clone()) + acc.recip().expect("partial quotients are positive")
        })
    }

    /// Euclidean expansion of `p/q`, `p > q >= 1`, with final coefficient
    /// at least 2 unless the expansion has length one.
    pub fn from_fraction(f: &Fraction) -> Result<Self> {
        let (mut p, mut q) = (f.numer().clone(), f.denom().clone());
        if q < BigInt::one() || p <= q {
            return Err(Error::FractionOutOfRange(f.to_string()));
        }
        let mut coeffs = Vec::new();
        while !q.is_zero() {
            let (a, r) = p.div_rem(&q);
            coeffs.push(a);
            p = q;
            q = r;
        }
        // [.., a, 1] == [.., a + 1]
        if coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_one()) {
            coeffs.pop();
            *coeffs.last_mut().unwrap() += 1;
        }
        Self::new(coeffs)
    }
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

pub fn cf_to_fraction(cf: &ContinuedFraction) -> Fraction {
    cf.to_fraction()
}

pub fn fraction_to_cf(f: &Fraction) -> Result<ContinuedFraction> {
    ContinuedFraction::from_fraction(f)
}

/// Parameters `m, n >= 0` of `K(m,n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct KnotParams {
    pub m: u64,
    pub n: u64,
}

impl KnotParams {
    pub fn new(m: u64, n: u64) -> Self {
        Self { m, n }
    }

    pub fn continued_fraction(&self) -> ContinuedFraction {
        let (m, n) = (self.m, self.n);
        ContinuedFraction::new([2 * m + 3, 1, 2 * n + 4, 1, 1, 2]).expect("positive coefficients")
    }

    /// Knot-table name, where one is known.
    pub fn table_name(&self) -> Option<&'static str> {
        (self.m == 0 && self.n == 0).then_some("12a255")
    }
}

impl fmt::Display for KnotParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K({},{})", self.m, self.n)
    }
}

/// `(20mn + 56m + 40n + 107) / (10n + 28)`
pub fn knot_fraction(k: KnotParams) -> Fraction {
    let m = BigInt::from(k.m);
    let n = BigInt::from(k.n);
    let p = BigInt::from(20) * &m * &n + BigInt::from(56) * &m + BigInt::from(40) * &n + 107;
    let q = BigInt::from(10) * &n + 28;
    Fraction::new(p, q).expect("positive denominator")
}

/// Square integer matrix whose antisymmetrization has determinant 1,
/// i.e. a Seifert matrix of a knot. Entry `(i,j)` is `lk(d_i, d_j^+)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SeifertMatrix(IntMatrix);

impl SeifertMatrix {
    pub fn new(m: IntMatrix) -> Result<Self> {
        m.ensure_square()?;
        let d = m.antisymmetrize().determinant()?;
        if !d.is_one() {
            return Err(Error::NotSeifert(d.to_string()));
        }
        Ok(Self(m))
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.0
    }

    /// Half the size: the genus of the underlying Seifert surface.
    pub fn genus(&self) -> usize {
        self.0.rows() / 2
    }
}

impl Deref for SeifertMatrix {
    type Target = IntMatrix;
    fn deref(&self) -> &IntMatrix {
        &self.0
    }
}

/// Seifert matrix of the genus-two surface for `K(m,n)`.
pub fn seifert_matrix(k: KnotParams) -> SeifertMatrix {
    let m = k.m as i64;
    let n = k.n as i64;
    let rows = [[-m - 2, 1, 0, 0], [0, -n - 3, 1, 0], [0, 0, -1, 0], [0, 0, -1, 1]];
    SeifertMatrix::new(IntMatrix::from_rows(&rows).unwrap()).expect("antisymmetrization is unimodular")
}

/// Linear plumbing weights: `2m+2` twos, a three, `2n+3` twos, then three, three.
pub fn plumbing_weights(k: KnotParams) -> Vec<i64> {
    let (m, n) = (k.m as usize, k.n as usize);
    let mut w = vec![2; 2 * m + 2];
    w.push(3);
    w.extend(std::iter::repeat_n(2, 2 * n + 3));
    w.extend([3, 3]);
    w
}

/// Tridiagonal Gram matrix of a linear plumbing: weights on the diagonal,
/// `-1` between neighbours.
pub fn path_gram(weights: &[i64]) -> IntMatrix {
    let r = weights.len();
    let mut g = IntMatrix::zeros(r, r);
    for (i, &w) in weights.iter().enumerate() {
        g[(i, i)] = w;
        if i + 1 < r {
            g[(i, i + 1)] = -1;
            g[(i + 1, i)] = -1;
        }
    }
    g
}

/// The Goeritz lattice `Q(m,n)` of rank `2m+2n+8`.
pub fn qmn_gram(k: KnotParams) -> GramLattice {
    let (m, n) = (k.m as usize, k.n as usize);
    let r = 2 * m + 2 * n + 8;
    // 1-based positions carrying a 3 on the diagonal
    let threes = [2 * m + 3, 2 * m + 2 * n + 7, 2 * m + 2 * n + 8];
    let mut g = IntMatrix::zeros(r, r);
    for i in 1..=r {
        for j in 1..=r {
            g[(i - 1, j - 1)] = if i == j {
                if threes.contains(&i) {
                    3
                } else {
                    2
                }
            } else if i.abs_diff(j) == 1 {
                -1
            } else {
                0
            };
        }
    }
    GramLattice::new(g).expect("symmetric by construction")
}

/// Hand-built embedding of `Q(m,n)` into `Z^(rank+3)` (`m = 0`) or
/// `Z^(rank+4)` (`m >= 1`), one dimension above what the smooth obstruction
/// rules out for `m = 0`.
///
/// Coordinates are `e_1..` followed by `f_1..f_(2n+8)`. The `e` chain ends in
/// `e_(2m+3) + e_(2m+4) - f_1`; for `m = 0` the chain is reversed so that
/// vector can be `e_1 + e_2 - f_1` using only three `e` coordinates.
pub fn qmn_witness(k: KnotParams) -> Embedding {
    let (m, n) = (k.m as usize, k.n as usize);
    let e_len = if m == 0 { 3 } else { 2 * m + 4 };
    let dim = e_len + 2 * n + 8;
    // sparse vectors given as (1-based coordinate, coefficient)
    let vec = |terms: &[(usize, i64)]| {
        let mut v = vec![0i64; dim];
        for &(i, c) in terms {
            v[i - 1] += c;
        }
        v
    };
    let f = |i: usize| e_len + i;
    let mut vs = Vec::with_capacity(2 * m + 2 * n + 8);
    if m == 0 {
        vs.push(vec(&[(2, 1), (1, -1)]));
        vs.push(vec(&[(3, 1), (2, -1)]));
        vs.push(vec(&[(1, 1), (2, 1), (f(1), -1)]));
    } else {
        vs.extend((1..=2 * m + 2).map(|i| vec(&[(i, 1), (i + 1, -1)])));
        vs.push(vec(&[(2 * m + 3, 1), (2 * m + 4, 1), (f(1), -1)]));
    }
    vs.extend((1..=2 * n + 3).map(|i| vec(&[(f(i), 1), (f(i + 1), -1)])));
    vs.push(vec(&[(f(2 * n + 4), 1), (f(2 * n + 5), 1), (f(2 * n + 6), 1)]));
    vs.push(vec(&[(f(2 * n + 5), -1), (f(2 * n + 7), 1), (f(2 * n + 8), 1)]));
    Embedding::new(vs, dim).expect("lengths agree")
}

/// Sum of the continued-fraction coefficients: `2m+2n+12`.
pub fn crossing_count(k: KnotParams) -> u64 {
    2 * k.m + 2 * k.n + 12
}

/// Positive crossings of the standard alternating diagram.
///
/// Not read off a diagram: `sigma = rank(G) - n_+` with `sigma = -2` and
/// `rank(G) = 2m+2n+8` forces `n_+ = 2m+2n+10`.
pub fn positive_crossings(k: KnotParams) -> u64 {
    2 * k.m + 2 * k.n + 10
}
