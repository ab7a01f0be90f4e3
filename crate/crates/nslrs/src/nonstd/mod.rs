//! Deciding the full group of unity-fixing linear maps for a pair.
//!
//! The group always contains the n·m maps x ↦ c x^(q^j) with c in the
//! group of order-n roots; a pair is non-standard when there are more. The
//! engine computes the group exactly, by coefficient-tuple enumeration when
//! q^(m²) is small and otherwise by a pruned backtracking search over the
//! images of the powers of ξ, recognizes the known non-standard families,
//! and builds the lift and extension constructions that transport
//! non-standardness between pairs.

pub mod classify;
pub mod enumerate;
pub mod family;
pub mod liftext;
pub mod search;

use crate::context::PairContext;
use crate::error::{Error, Result};
use crate::perm::StabChain;
use crate::qlin::QLinearMap;
use serde::{Deserialize, Serialize};

/// Enumeration dispatch bound on q^(m²).
pub const ENUM_BOUND: u128 = 1 << 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    #[serde(rename = "full_enumeration")]
    FullEnumeration,
    #[serde(rename = "pruned_search")]
    PrunedSearch,
    #[serde(rename = "certified")]
    Certified,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FamilyTag {
    #[serde(rename = "GOLAY23_2")]
    Golay23_2,
    #[serde(rename = "GOLAY11_3")]
    Golay11_3,
    #[serde(rename = "REPETITION")]
    Repetition,
    #[serde(rename = "SIMPLEX")]
    Simplex,
    #[serde(rename = "EQUALLY_SPACED")]
    EquallySpaced { k: u64, n_0: u64 },
    #[serde(rename = "LIFT_EXTEND")]
    LiftExtend { base_n: u64, base_q: u64, t: u64, f: u64 },
    #[serde(rename = "NONE_KNOWN")]
    NoneKnown,
}

impl FamilyTag {
    pub fn is_known(&self) -> bool {
        *self != FamilyTag::NoneKnown
    }
}

#[derive(Clone, Copy, Debug, Default, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub seconds: f64,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct SearchBudget {
    pub max_nodes: u64,
    pub max_seconds: f64,
    /// None means the per-pair default m + 2
    pub parity_weight_bound: Option<usize>,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_nodes: 500_000_000, max_seconds: 1800.0, parity_weight_bound: None }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PairReport {
    pub n: u64,
    pub q: u64,
    pub m: u64,
    pub d: u64,
    pub order: u64,
    pub standard_order: u64,
    pub nonstandard: bool,
    pub family: FamilyTag,
    pub method: Method,
    pub generators: Vec<serde_json::Value>,
    pub stats: SearchStats,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub prediction_mismatch: bool,
}

/// A report together with the live generator maps behind it.
pub struct Decision {
    pub report: PairReport,
    pub maps: Vec<QLinearMap>,
}

pub(crate) fn base_report(pc: &PairContext, method: Method) -> PairReport {
    PairReport {
        n: pc.n,
        q: pc.q,
        m: pc.m,
        d: pc.d,
        order: 0,
        standard_order: pc.standard_order(),
        nonstandard: false,
        family: FamilyTag::NoneKnown,
        method,
        generators: vec![],
        stats: SearchStats::default(),
        prediction_mismatch: false,
    }
}

/// Scalar pairs (m = 1): every linear map is x ↦ cx, which fixes the group
/// iff c lies in it, so the group is exactly the multiplications.
fn scalar_decision(pc: &PairContext) -> Result<Decision> {
    let mult = QLinearMap::monomial(&pc.top, pc.pp.s, pc.xi(), 0)?;
    let mut report = base_report(pc, Method::FullEnumeration);
    report.order = pc.n;
    report.stats.nodes = pc.n;
    report.generators = vec![mult.coeffs_json()];
    Ok(Decision { report, maps: vec![mult] })
}

/// Number of coefficient tuples, q^(m²), saturating instead of
/// overflowing so the dispatch comparison stays safe for any pair.
pub(crate) fn coefficient_space(pc: &PairContext) -> u128 {
    let mut space: u128 = 1;
    for _ in 0..pc.m {
        space = space.saturating_mul(pc.top.size as u128);
    }
    space
}

/// Full decision: compute the group, attach the family tag, flag a
/// mismatch when a recognized family fails to come out non-standard.
pub fn decide(n: u64, q: u64, budget: &SearchBudget) -> Result<Decision> {
    let pc = PairContext::new(n, q)?;
    let mut dec = if pc.m == 1 {
        scalar_decision(&pc)?
    } else if coefficient_space(&pc) <= ENUM_BOUND {
        enumerate::enumerate_maps_ctx(&pc)?
    } else {
        search::search_group_ctx(&pc, budget)?
    };
    let fam = family::known_family(n, q)?;
    dec.report.prediction_mismatch = fam.is_known() && !dec.report.nonstandard;
    dec.report.family = fam;
    Ok(dec)
}

/// Verification mode: given externally supplied maps, check they fix the
/// group and report the order of what they generate together with the
/// standard maps. Never claims completeness.
pub fn certify(n: u64, q: u64, maps: &[QLinearMap]) -> Result<Decision> {
    let pc = PairContext::new(n, q)?;
    for (i, map) in maps.iter().enumerate() {
        if !map.permutes(&pc.unity) {
            return Err(Error::NotFixing(i as u64));
        }
    }
    let mult = QLinearMap::monomial(&pc.top, pc.pp.s, pc.xi(), 0)?;
    let frob = QLinearMap::monomial(&pc.top, pc.pp.s, 1, 1)?;
    let mut gens = vec![mult, frob];
    gens.extend(maps.iter().cloned());
    let mut chain = StabChain::new(pc.n as usize);
    let mut kept = Vec::new();
    for g in &gens {
        let p = g.to_perm(&pc.unity)?;
        if chain.push(p)? {
            kept.push(g.clone());
        }
    }
    let order = chain.order();
    let mut report = base_report(&pc, Method::Certified);
    report.order = u64::try_from(order).map_err(|_| Error::Invalid("order overflow".into()))?;
    report.nonstandard = report.order > report.standard_order;
    report.family = family::known_family(n, q)?;
    report.generators = kept.iter().map(|m| m.coeffs_json()).collect();
    report.stats.nodes = gens.len() as u64;
    Ok(Decision { report, maps: kept })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_pairs_are_standard() {
        for (n, q) in [(1u64, 5u64), (2, 7), (4, 5), (6, 7)] {
            let dec = decide(n, q, &SearchBudget::default()).unwrap();
            assert_eq!(dec.report.m, 1);
            assert_eq!(dec.report.order, n);
            assert!(!dec.report.nonstandard);
            assert_eq!(dec.report.family, FamilyTag::NoneKnown);
        }
    }

    #[test]
    fn certify_empty_gives_standard_group() {
        let dec = certify(7, 2, &[]).unwrap();
        assert_eq!(dec.report.order, 21);
        assert_eq!(dec.report.method, Method::Certified);
        assert!(!dec.report.nonstandard);
    }

    #[test]
    fn certify_rejects_escaping_map() {
        let pc = PairContext::new(4, 3).unwrap();
        let g = pc.top.generator();
        let bad = QLinearMap::monomial(&pc.top, 1, g, 0).unwrap();
        assert!(matches!(certify(4, 3, &[bad]), Err(Error::NotFixing(0))));
    }

    #[test]
    fn report_json_round_trip() {
        let dec = certify(7, 2, &[]).unwrap();
        let line = serde_json::to_string(&dec.report).unwrap();
        let back: PairReport = serde_json::from_str(&line).unwrap();
        assert_eq!(back.n, 7);
        assert_eq!(back.method, Method::Certified);
        assert_eq!(back.family, dec.report.family);
        // a family tag with parameters survives the trip
        let tag = FamilyTag::LiftExtend { base_n: 8, base_q: 3, t: 3, f: 13 };
        let s = serde_json::to_string(&tag).unwrap();
        assert_eq!(s, r#"{"LIFT_EXTEND":{"base_n":8,"base_q":3,"t":3,"f":13}}"#);
        assert_eq!(serde_json::from_str::<FamilyTag>(&s).unwrap(), tag);
    }
}
