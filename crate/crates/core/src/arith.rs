//! Exact rationals and integer Laurent polynomials.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A reduced fraction with positive denominator.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fraction(BigRational);

impl Fraction {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self(BigRational::new(num.into(), den)))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Self(BigRational::from_integer(n.into()))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn recip(&self) -> Result<Self> {
        if self.0.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self(self.0.recip()))
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }
}

impl From<BigRational> for Fraction {
    fn from(r: BigRational) -> Self {
        Self(r)
    }
}

impl Add for Fraction {
    type Output = Fraction;
    fn add(self, rhs: Fraction) -> Fraction {
        Fraction(self.0 + rhs.0)
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl FromStr for Fraction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Parse { line: 1, msg: format!("{msg}: {s:?}") };
        let (p, q) = match s.trim().split_once('/') {
            Some((p, q)) => (p.trim(), q.trim()),
            None => (s.trim(), "1"),
        };
        let p: BigInt = p.parse().map_err(|_| bad("bad numerator"))?;
        let q: BigInt = q.parse().map_err(|_| bad("bad denominator"))?;
        Fraction::new(p, q)
    }
}

/// Polynomial in `t` and `t^-1` with integer coefficients.
///
/// Stored sparsely; zero coefficients are never kept, so the zero polynomial
/// is the empty map and structural equality is polynomial equality.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * t^exp`
    pub fn monomial(c: impl Into<BigInt>, exp: i64) -> Self {
        let c = c.into();
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(exp, c);
        }
        Self { coeffs }
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, summing repeats.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    /// Ordinary polynomial `c_0 + c_1 t + ...`.
    pub fn from_coeffs<C: Into<BigInt>>(coeffs: impl IntoIterator<Item = C>) -> Self {
        Self::from_terms(coeffs.into_iter().enumerate().map(|(i, c)| (i as i64, c)))
    }

    fn add_term(&mut self, exp: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(exp).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.coeffs.get(&exp).cloned().unwrap_or_default()
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Difference between the largest and smallest exponent.
    pub fn span(&self) -> Option<i64> {
        Some(self.max_exp()? - self.min_exp()?)
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self { coeffs: self.coeffs.iter().map(|(&e, c)| (e + k, c.clone())).collect() }
    }

    /// Evaluates at an integer point. Negative exponents require `t = ±1`
    /// to stay integral, so the value is returned as a rational.
    pub fn eval(&self, t: &BigRational) -> BigRational {
        self.coeffs.iter().fold(BigRational::zero(), |acc, (&e, c)| {
            let tp =
                if e >= 0 { num_traits::pow(t.clone(), e as usize) } else { num_traits::pow(t.recip(), (-e) as usize) };
            acc + tp * BigRational::from_integer(c.clone())
        })
    }

    /// `p(t^-1) == p(t)`
    pub fn is_symmetric(&self) -> bool {
        self.coeffs.iter().all(|(&e, c)| self.coeffs.get(&-e) == Some(c))
    }

    /// Picks the canonical representative of `{±t^k p}`.
    ///
    /// If some unit multiple is symmetric under `t -> t^-1`, that one is
    /// returned with a positive leading coefficient. Otherwise the result
    /// has minimal exponent 0 and a positive constant term.
    pub fn normalize(&self) -> Result<Self> {
        let (lo, hi) = match (self.min_exp(), self.max_exp()) {
            (Some(lo), Some(hi)) => (lo, hi),
            _ => return Err(Error::NormalizeZero),
        };
        let palindromic = (lo + hi) % 2 == 0 && (0..=(hi - lo)).all(|i| self.coeff(lo + i) == self.coeff(hi - i));
        let (shifted, lead) = if palindromic {
            let p = self.shift(-(lo + hi) / 2);
            let top = p.coeff((hi - lo) / 2);
            (p, top)
        } else {
            let p = self.shift(-lo);
            let c0 = p.coeff(0);
            (p, c0)
        };
        Ok(if lead.is_negative() { -shifted } else { shifted })
    }

    /// True iff `self = ±t^k * other` for some integer `k`.
    pub fn equal_up_to_units(&self, other: &Self) -> bool {
        match (self.normalize(), other.normalize()) {
            (Ok(a), Ok(b)) => a == b,
            (Err(_), Err(_)) => true,
            _ => false,
        }
    }

    /// Space-separated `exponent:coefficient` pairs in increasing exponent
    /// order; the zero polynomial renders as `0:0`.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0:0".to_string();
        }
        self.coeffs.iter().map(|(e, c)| format!("{e}:{c}")).collect::<Vec<_>>().join(" ")
    }

    pub fn parse_text(s: &str) -> Result<Self> {
        let mut p = Self::zero();
        for tok in s.split_whitespace() {
            let bad = || Error::Parse { line: 1, msg: format!("bad polynomial term {tok:?}") };
            let (e, c) = tok.split_once(':').ok_or_else(bad)?;
            let e: i64 = e.parse().map_err(|_| bad())?;
            let c: BigInt = c.parse().map_err(|_| bad())?;
            p.add_term(e, c);
        }
        Ok(p)
    }
}

impl From<i64> for LaurentPolynomial {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl Neg for LaurentPolynomial {
    type Output = Self;
    fn neg(self) -> Self {
        Self { coeffs: self.coeffs.into_iter().map(|(e, c)| (e, -c)).collect() }
    }
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = self.clone();
        for (&e, c) in &rhs.coeffs {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = self.clone();
        for (&e, c) in &rhs.coeffs {
            out.add_term(e, -c);
        }
        out
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = LaurentPolynomial::zero();
        for (&e1, c1) in &self.coeffs {
            for (&e2, c2) in &rhs.coeffs {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

macro_rules! forward_binop {
    ($tr:ident, $f:ident) => {
        impl $tr for LaurentPolynomial {
            type Output = LaurentPolynomial;
            fn $f(self, rhs: LaurentPolynomial) -> LaurentPolynomial {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

/// Human-readable form, highest exponent first: `t - 1 + t^-1`.
impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (&e, c)) in self.coeffs.iter().rev().enumerate() {
            let abs = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            let unit = abs.is_one();
            match e {
                0 => write!(f, "{abs}")?,
                1 if unit => write!(f, "t")?,
                1 => write!(f, "{abs}t")?,
                _ if unit => write!(f, "t^{e}")?,
                _ => write!(f, "{abs}t^{e}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lp(terms: &[(i64, i64)]) -> LaurentPolynomial {
        LaurentPolynomial::from_terms(terms.iter().copied())
    }

    #[test]
    fn fraction_is_reduced_with_positive_denominator() {
        let f = Fraction::new(6, -4).unwrap();
        assert_eq!(f.numer(), &BigInt::from(-3));
        assert_eq!(f.denom(), &BigInt::from(2));
        assert_eq!(Fraction::new(1, 0), Err(Error::ZeroDenominator));
        assert_eq!("107/28".parse::<Fraction>().unwrap().to_string(), "107/28");
    }

    #[test]
    fn products() {
        assert_eq!(lp(&[(1, 1)]) * lp(&[(-1, 1)]), LaurentPolynomial::one());
        let tm1 = lp(&[(1, 1), (0, -1)]);
        assert_eq!(&tm1 * &tm1, lp(&[(2, 1), (1, -2), (0, 1)]));
        let p = lp(&[(2, 1), (1, -1), (0, 1)]);
        assert_eq!(&p * &LaurentPolynomial::one(), p);
        assert!((&tm1 * &LaurentPolynomial::zero()).is_zero());
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(lp(&[(1, 1)]).normalize().unwrap(), LaurentPolynomial::one());
        assert_eq!(lp(&[(2, -1), (1, 1), (0, -1)]).normalize().unwrap(), lp(&[(1, 1), (0, -1), (-1, 1)]));
        assert_eq!(LaurentPolynomial::one().normalize().unwrap(), LaurentPolynomial::one());
        assert_eq!(LaurentPolynomial::zero().normalize(), Err(Error::NormalizeZero));
        // no symmetric representative: shift to constant term, make it positive
        assert_eq!(lp(&[(3, 1), (2, -1)]).normalize().unwrap(), lp(&[(0, 1), (1, -1)]));
    }

    #[test]
    fn units() {
        assert!(lp(&[(1, 1)]).equal_up_to_units(&LaurentPolynomial::one()));
        assert!(lp(&[(1, 1), (0, -1)]).equal_up_to_units(&lp(&[(0, 1), (1, -1)])));
        assert!(!lp(&[(2, 1), (1, -1), (0, 1)]).equal_up_to_units(&lp(&[(2, 1), (1, 1), (0, 1)])));
    }

    #[test]
    fn text_format() {
        let p = lp(&[(1, 1), (0, -1), (-1, 1)]);
        assert_eq!(p.to_text(), "-1:1 0:-1 1:1");
        assert_eq!(LaurentPolynomial::parse_text("-1:1 0:-1 1:1").unwrap(), p);
        assert_eq!(p.to_string(), "t - 1 + t^-1");
        assert_eq!(lp(&[(2, 6), (1, -27), (0, 41)]).to_string(), "6t^2 - 27t + 41");
        assert!(LaurentPolynomial::parse_text("1:x").is_err());
    }

    // Brute-force oracle: try every sign and every shift within the span.
    fn units_oracle(p: &LaurentPolynomial, q: &LaurentPolynomial) -> bool {
        let (Some(plo), Some(qlo)) = (p.min_exp(), q.min_exp()) else {
            return p.is_zero() && q.is_zero();
        };
        let k = qlo - plo;
        [1i64, -1].iter().any(|&s| &(p.shift(k) * LaurentPolynomial::constant(s)) == q)
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPolynomial> {
        (proptest::collection::vec(-4i64..=4, 1..6), -3i64..=3)
            .prop_map(|(cs, lo)| LaurentPolynomial::from_coeffs(cs).shift(lo))
    }

    proptest! {
        #[test]
        fn normalize_is_idempotent(p in arb_poly()) {
            prop_assume!(!p.is_zero());
            let n = p.normalize().unwrap();
            prop_assert_eq!(n.normalize().unwrap(), n.clone());
            prop_assert!(p.equal_up_to_units(&n));
            prop_assert!(units_oracle(&p, &n));
        }

        #[test]
        fn units_agree_with_oracle(p in arb_poly(), q in arb_poly()) {
            prop_assert_eq!(p.equal_up_to_units(&q), units_oracle(&p, &q));
        }

        #[test]
        fn fraction_invariants(a in -1000i64..1000, b in -1000i64..1000) {
            prop_assume!(b != 0);
            let f = Fraction::new(a, b).unwrap();
            prop_assert!(f.denom() > &BigInt::zero());
            prop_assert!(num_integer::Integer::gcd(f.numer(), f.denom()).is_one());
        }

        #[test]
        fn text_round_trip(p in arb_poly()) {
            prop_assert_eq!(LaurentPolynomial::parse_text(&p.to_text()).unwrap(), p);
        }
    }
}
