//! Slice-genus verdicts for `K(m,n)`.
//!
//! Standing bounds: the signature is -2 and there is a genus-two Seifert
//! surface, so `1 <= g_top <= g_sm <= 2`. Two searches sharpen them:
//!
//! * a verified curve certificate gives `g_top <= 1`;
//! * if `g_sm = -sigma/2` the Goeritz lattice would embed in
//!   `Z^(rank - sigma)`, so an exhaustive failure to embed gives
//!   `g_sm >= 1 - sigma/2`.
//!
//! A verdict is only upgraded on a verified or exhaustive result. Searches
//! that run out of budget leave the bounds alone and are reported as
//! inconclusive.

use std::time::Duration;

use log::info;
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{Fraction, LaurentPolynomial};
use crate::curve_search::{
    default_bound, explicit_certificate, find_genus1_certificate, perfect_sqrt, verify_certificate, CurveCertificate,
};
use crate::error::{Error, Result};
use crate::lattice::{find_embedding_with, verify_embedding, Embedding, EmbeddingOutcome, SearchLimits};
use crate::seifert::{alexander, knot_determinant, seifert_signature};
use crate::two_bridge::{knot_fraction, positive_crossings, qmn_gram, seifert_matrix, KnotParams};

/// `true`, `false`, or `"inconclusive"` on the wire.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Embeddable {
    Yes,
    No,
    Inconclusive,
}

impl Serialize for Embeddable {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Self::Yes => s.serialize_bool(true),
            Self::No => s.serialize_bool(false),
            Self::Inconclusive => s.serialize_str("inconclusive"),
        }
    }
}

impl<'de> Deserialize<'de> for Embeddable {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Bool(bool),
            Text(String),
        }
        match Repr::deserialize(d)? {
            Repr::Bool(true) => Ok(Self::Yes),
            Repr::Bool(false) => Ok(Self::No),
            Repr::Text(t) if t == "inconclusive" => Ok(Self::Inconclusive),
            Repr::Text(t) => Err(serde::de::Error::custom(format!("unexpected embeddable value {t:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingVerdict {
    pub tested_dim: usize,
    pub embeddable: Embeddable,
    pub witness: Option<Embedding>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceReport {
    pub params: KnotParams,
    #[serde(with = "fraction_text")]
    pub fraction: Fraction,
    pub signature: i64,
    #[serde(with = "big_integer")]
    pub determinant: BigInt,
    #[serde(with = "poly_text")]
    pub alexander: LaurentPolynomial,
    pub gtop_lower: u32,
    pub gtop_upper: u32,
    pub gsm_lower: u32,
    pub gsm_upper: u32,
    pub curve_certificate: Option<CurveCertificate>,
    /// Absent when only the standing bounds were computed.
    pub embedding_verdict: Option<EmbeddingVerdict>,
    pub notes: Vec<String>,
}

impl SliceReport {
    /// `"1"` when determined, otherwise `"{1,2}"`-style range.
    pub fn gtop_display(&self) -> String {
        range_display(self.gtop_lower, self.gtop_upper)
    }

    pub fn gsm_display(&self) -> String {
        range_display(self.gsm_lower, self.gsm_upper)
    }

    /// False when a search ran out of budget.
    pub fn is_conclusive(&self) -> bool {
        self.embedding_verdict.as_ref().is_none_or(|v| v.embeddable != Embeddable::Inconclusive)
    }

    /// Checks the ordering constraints between the four bounds.
    pub fn bounds_consistent(&self) -> bool {
        let certificate_ok = self.curve_certificate.is_none() || self.gtop_upper <= 1;
        self.gtop_lower <= self.gtop_upper
            && self.gtop_upper <= self.gsm_upper
            && self.gsm_lower <= self.gsm_upper
            && self.gtop_lower <= self.gsm_lower
            && certificate_ok
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse { line: e.line(), msg: e.to_string() })
    }
}

fn range_display(lo: u32, hi: u32) -> String {
    if lo == hi {
        lo.to_string()
    } else {
        format!("{{{}}}", (lo..=hi).map(|g| g.to_string()).collect::<Vec<_>>().join(","))
    }
}

/// `rank - sigma`, the dimension the Goeritz lattice must embed in if the
/// smooth slice genus equals `-sigma/2`.
pub fn obstruction_dim(rank: i64, sigma: i64) -> Result<i64> {
    if sigma > 0 {
        return Err(Error::PositiveSignature(sigma));
    }
    Ok(rank - sigma)
}

/// `rank(G) - n_+`
pub fn signature_from_goeritz(rank: i64, n_plus: i64) -> i64 {
    rank - n_plus
}

/// Invariants and the standing genus bounds, with no searches.
pub fn genus_bounds(k: KnotParams) -> Result<SliceReport> {
    let seifert = seifert_matrix(k);
    let signature = seifert_signature(&seifert)?;
    let rank = qmn_gram(k).rank() as i64;
    let n_plus = positive_crossings(k) as i64;
    let genus = seifert.genus() as u32;
    let gtop_lower = signature.unsigned_abs().div_ceil(2) as u32;

    let mut notes = Vec::new();
    if let Some(name) = k.table_name() {
        notes.push(format!("{k} is {name}"));
    }
    notes.push(format!("n_+ = {n_plus} is inferred from sigma = rank(G) - n_+, not read off a diagram"));
    let goeritz_sigma = signature_from_goeritz(rank, n_plus);
    if goeritz_sigma != signature {
        notes.push(format!("Goeritz signature {goeritz_sigma} disagrees with Seifert signature {signature}"));
    }
    notes.push(format!("bounds: g_top >= |sigma|/2 = {gtop_lower}; g_sm <= Seifert genus {genus}"));

    Ok(SliceReport {
        params: k,
        fraction: knot_fraction(k),
        signature,
        determinant: knot_determinant(&seifert)?,
        alexander: alexander(&seifert)?,
        gtop_lower,
        gtop_upper: genus,
        gsm_lower: gtop_lower,
        gsm_upper: genus,
        curve_certificate: None,
        embedding_verdict: None,
        notes,
    })
}

/// Search budgets for [`full_report`]. `None` means the default.
#[derive(Debug, Clone, Copy, Default)]
pub struct Budgets {
    /// Coordinate bound for the certificate search; default [`default_bound`].
    pub curve_bound: Option<i64>,
    /// Largest ambient dimension the embedding search may use; default rank + 6.
    pub embed_cap: Option<usize>,
    pub embed_time: Option<Duration>,
    pub embed_nodes: Option<u64>,
}

pub fn full_report(k: KnotParams, budgets: &Budgets) -> Result<SliceReport> {
    let mut report = genus_bounds(k)?;
    let seifert = seifert_matrix(k);
    let bound = budgets.curve_bound.unwrap_or_else(|| default_bound(k));
    if bound < 1 {
        return Err(Error::ZeroBound);
    }

    // stated hypotheses, recorded alongside whatever the search finds
    if perfect_sqrt(k.m + 3).is_some() {
        report.notes.push("m+3 is a perfect square".into());
    }
    if perfect_sqrt(k.n + 2).is_some() {
        report.notes.push("n+2 is a perfect square".into());
    }

    let certificate = match explicit_certificate(k) {
        Some((case, c)) if c.max_coord() <= bound && verify_certificate(&seifert, &c) => {
            report.notes.push(format!("g_top certificate: case {case}"));
            Some(c)
        }
        _ => {
            let found = find_genus1_certificate(&seifert, bound)?;
            match &found {
                Some(_) => {
                    report.notes.push(format!("g_top certificate: empirical certificate only (search bound {bound})"))
                }
                None => report.notes.push(format!("no g_top certificate with coordinates in [-{bound},{bound}]")),
            }
            found
        }
    };
    if let Some(c) = certificate {
        debug_assert!(verify_certificate(&seifert, &c));
        // cutting off the Alexander-trivial piece lowers the genus by one
        report.gtop_upper = report.gtop_upper.min(seifert.genus() as u32 - 1);
        report.curve_certificate = Some(c);
    }

    let gram = qmn_gram(k);
    let tested = obstruction_dim(gram.rank() as i64, report.signature)? as usize;
    let cap = budgets.embed_cap.unwrap_or(gram.rank() + 6);
    let limits = SearchLimits { time: budgets.embed_time, max_nodes: budgets.embed_nodes };
    let verdict = if tested > cap {
        report.notes.push(format!("embedding search skipped: Z^{tested} exceeds cap {cap}"));
        EmbeddingVerdict { tested_dim: tested, embeddable: Embeddable::Inconclusive, witness: None }
    } else {
        match find_embedding_with(&gram, tested, &limits)? {
            EmbeddingOutcome::Found(e) => {
                debug_assert!(verify_embedding(&gram, &e).unwrap_or(false));
                report.notes.push(format!("Q embeds in Z^{tested}; no smooth obstruction"));
                EmbeddingVerdict { tested_dim: tested, embeddable: Embeddable::Yes, witness: Some(e) }
            }
            EmbeddingOutcome::Absent => {
                report.notes.push(format!("Q does not embed in Z^{tested} (exhaustive search)"));
                let lower = (1 - report.signature / 2) as u32;
                report.gsm_lower = report.gsm_lower.max(lower).min(report.gsm_upper);
                EmbeddingVerdict { tested_dim: tested, embeddable: Embeddable::No, witness: None }
            }
            EmbeddingOutcome::Inconclusive => {
                report.notes.push(format!("embedding search in Z^{tested} ran out of budget"));
                EmbeddingVerdict { tested_dim: tested, embeddable: Embeddable::Inconclusive, witness: None }
            }
        }
    };
    report.embedding_verdict = Some(verdict);
    info!("{k}: g_top = {}, g_sm = {}", report.gtop_display(), report.gsm_display());
    debug_assert!(report.bounds_consistent());
    Ok(report)
}

/// One report per `(m, n)` in `[0, m_max] x [0, n_max]`, in lexicographic order.
pub fn verify_theorem(m_max: u64, n_max: u64, budgets: &Budgets) -> Result<Vec<SliceReport>> {
    let mut rows = Vec::new();
    for m in 0..=m_max {
        for n in 0..=n_max {
            rows.push(full_report(KnotParams::new(m, n), budgets)?);
        }
    }
    Ok(rows)
}

mod fraction_text {
    use super::*;

    pub fn serialize<S: Serializer>(f: &Fraction, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&f.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Fraction, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

mod poly_text {
    use super::*;

    pub fn serialize<S: Serializer>(p: &LaurentPolynomial, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&p.to_text())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<LaurentPolynomial, D::Error> {
        LaurentPolynomial::parse_text(&String::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

/// JSON number when it fits in `i64`, decimal string otherwise.
mod big_integer {
    use super::*;

    pub fn serialize<S: Serializer>(n: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
        match n.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&n.to_string()),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigInt, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Int(i64),
            Text(String),
        }
        match Repr::deserialize(d)? {
            Repr::Int(v) => Ok(BigInt::from(v)),
            Repr::Text(t) => t.parse().map_err(serde::de::Error::custom),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standing_bounds() {
        let r = genus_bounds(KnotParams::new(0, 0)).unwrap();
        assert_eq!((r.gtop_lower, r.gtop_upper, r.gsm_lower, r.gsm_upper), (1, 2, 1, 2));
        assert_eq!(r.signature, -2);
        assert_eq!(r.determinant, BigInt::from(107));
        assert!(r.notes.iter().any(|n| n.contains("12a255")));
        let r = genus_bounds(KnotParams::new(3, 7)).unwrap();
        assert_eq!((r.signature, r.gtop_lower, r.gtop_upper, r.gsm_lower, r.gsm_upper), (-2, 1, 2, 1, 2));
        for m in 0..=10 {
            for n in 0..=10 {
                let r = genus_bounds(KnotParams::new(m, n)).unwrap();
                assert_eq!(r.gtop_lower, 1);
                assert!(r.bounds_consistent());
            }
        }
    }

    #[test]
    fn obstruction_dimension() {
        assert_eq!(obstruction_dim(8, -2).unwrap(), 10);
        assert_eq!(obstruction_dim(10, -2).unwrap(), 12);
        assert_eq!(obstruction_dim(5, 0).unwrap(), 5);
        assert_eq!(obstruction_dim(5, 2), Err(Error::PositiveSignature(2)));
    }

    #[test]
    fn goeritz_signature() {
        assert_eq!(signature_from_goeritz(8, 10), -2);
        assert_eq!(signature_from_goeritz(7, 7), 0);
        for m in 0..=10 {
            for n in 0..=10 {
                let k = KnotParams::new(m, n);
                assert_eq!(signature_from_goeritz(qmn_gram(k).rank() as i64, positive_crossings(k) as i64), -2);
            }
        }
    }

    #[test]
    fn embeddable_wire_format() {
        assert_eq!(serde_json::to_string(&Embeddable::Yes).unwrap(), "true");
        assert_eq!(serde_json::to_string(&Embeddable::No).unwrap(), "false");
        assert_eq!(serde_json::to_string(&Embeddable::Inconclusive).unwrap(), "\"inconclusive\"");
        assert_eq!(serde_json::from_str::<Embeddable>("\"inconclusive\"").unwrap(), Embeddable::Inconclusive);
        assert!(serde_json::from_str::<Embeddable>("\"maybe\"").is_err());
    }

    #[test]
    fn range_rendering() {
        assert_eq!(range_display(1, 1), "1");
        assert_eq!(range_display(1, 2), "{1,2}");
    }
}
