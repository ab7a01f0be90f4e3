//! Transporting a computed group to other pairs.
//!
//! Lifting replaces q by q^t with gcd(t, m) = 1: the group of (n, q^t)
//! is the group of (n, q) with every map re-read over the larger field,
//! inducing the identical permutation of the order-n roots. Extending
//! multiplies n by a factor f of (q-1)/e inside the same top field: the
//! order-nf roots are recovered from the order-n roots and scalars, and
//! the extended group is generated by the multiplication by an order-nf
//! root together with the original maps.

use super::{base_report, Decision, PairReport};
use crate::context::{PairContext, UnityTable};
use crate::error::{Error, Result};
use crate::field::Subfield;
use crate::num;
use crate::perm::StabChain;
use crate::qlin::QLinearMap;
use std::time::Instant;

/// Re-read a decision for (n, q) over F_{q^t}. The i-th coefficient of a
/// lifted map is the embedded coefficient at position t·i mod m, so the
/// map acts on the embedded roots exactly as before; this is checked for
/// every generator.
pub fn lift(dec: &Decision, t: u64) -> Result<Decision> {
    let start = Instant::now();
    let n = dec.report.n;
    let q = dec.report.q;
    let pc = PairContext::new(n, q)?;
    let m = pc.m;
    if num::gcd(t, m) != 1 {
        return Err(Error::BadLiftExponent { t, m });
    }
    let qt = num::pow_u128(q, t as u32);
    if qt > (1u128 << 40) {
        return Err(Error::FieldTooLarge(q, t as u32));
    }
    let pc2 = PairContext::new(n, qt as u64)?;
    assert_eq!(pc2.m, m, "lift must preserve the degree");
    let up = Subfield::new(&pc.top, &pc2.top)?;
    // the table around the embedded root, so permutations can be compared
    // coefficient-free across the two fields
    let table = UnityTable::new(&pc2.top, up.embed(pc.xi()), n)?;

    let s2 = pc2.pp.s;
    let mut maps = Vec::with_capacity(dec.maps.len());
    for (i, map) in dec.maps.iter().enumerate() {
        if map.top().id() != pc.top.id() {
            return Err(Error::ContextMismatch);
        }
        let mut coeffs = vec![0u64; m as usize];
        for (j, c) in coeffs.iter_mut().enumerate() {
            *c = up.embed(map.coeff(((t * j as u64) % m) as usize));
        }
        let lifted = QLinearMap::new(&pc2.top, s2, coeffs)?;
        if !lifted.permutes(&table) {
            return Err(Error::NotFixing(i as u64));
        }
        assert_eq!(
            lifted.to_perm(&table)?,
            map.to_perm(&pc.unity)?,
            "lift must preserve the induced permutation"
        );
        maps.push(lifted);
    }

    let mut report: PairReport = base_report(&pc2, dec.report.method);
    report.order = dec.report.order;
    report.nonstandard = report.order > report.standard_order;
    report.family = super::family::known_family(n, qt as u64)?;
    report.generators = maps.iter().map(|g| g.coeffs_json()).collect();
    report.stats.seconds = start.elapsed().as_secs_f64();
    Ok(Decision { report, maps })
}

/// Grow the root group from order n to order nf inside the same top
/// field, f dividing (q-1)/e. The returned report covers the group
/// generated by the multiplication by an order-nf root together with the
/// supplied maps; each map is certified to fix the larger root group.
pub fn extend(dec: &Decision, f: u64) -> Result<Decision> {
    let start = Instant::now();
    let n = dec.report.n;
    let q = dec.report.q;
    let pc = PairContext::new(n, q)?;
    let allowed = (q - 1) / pc.e;
    if f == 0 || allowed % f != 0 {
        return Err(Error::BadExtensionFactor { f, allowed });
    }
    let pc2 = PairContext::new(n * f, q)?;
    assert_eq!(pc2.m, pc.m, "extension must stay inside the same top field");
    assert_eq!(pc2.d, pc.d, "extension must preserve d = n/gcd(n, q-1)");
    assert_eq!(pc2.top.id(), pc.top.id());

    let theta = pc2.xi();
    let mult = QLinearMap::monomial(&pc2.top, pc2.pp.s, theta, 0)?;
    let mut chain = StabChain::new((n * f) as usize);
    chain.push(mult.to_perm(&pc2.unity)?)?;
    let mut maps = vec![mult];
    for (i, map) in dec.maps.iter().enumerate() {
        if map.top().id() != pc2.top.id() {
            return Err(Error::ContextMismatch);
        }
        if !map.permutes(&pc2.unity) {
            return Err(Error::NotFixing(i as u64));
        }
        chain.push(map.to_perm(&pc2.unity)?)?;
        maps.push(map.clone());
    }
    let order = chain.order();

    let mut report = base_report(&pc2, super::Method::Certified);
    report.order = u64::try_from(order).map_err(|_| Error::Invalid("order overflow".into()))?;
    report.nonstandard = report.order > report.standard_order;
    report.family = super::family::known_family(n * f, q)?;
    report.generators = maps.iter().map(|g| g.coeffs_json()).collect();
    report.stats.nodes = maps.len() as u64;
    report.stats.seconds = start.elapsed().as_secs_f64();
    Ok(Decision { report, maps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nonstd::enumerate::enumerate_maps;
    use crate::nonstd::FamilyTag;

    #[test]
    fn lift_8_3_to_27_keeps_order_48() {
        let base = enumerate_maps(8, 3).unwrap();
        let lifted = lift(&base, 3).unwrap();
        assert_eq!(lifted.report.n, 8);
        assert_eq!(lifted.report.q, 27);
        assert_eq!(lifted.report.order, 48);
        assert_eq!(lifted.report.standard_order, 16);
        assert!(lifted.report.nonstandard);
        assert_eq!(lifted.maps.len(), base.maps.len());
    }

    #[test]
    fn lift_agrees_with_direct_enumeration() {
        let direct = enumerate_maps(8, 27).unwrap();
        let lifted = lift(&enumerate_maps(8, 3).unwrap(), 3).unwrap();
        assert_eq!(direct.report.order, lifted.report.order);
    }

    #[test]
    fn lift_rejects_exponent_sharing_a_factor_with_m() {
        let base = enumerate_maps(8, 3).unwrap();
        assert!(matches!(lift(&base, 2), Err(Error::BadLiftExponent { t: 2, m: 2 })));
    }

    #[test]
    fn extend_8_27_by_13_reaches_624() {
        let base = enumerate_maps(8, 27).unwrap();
        let ext = extend(&base, 13).unwrap();
        assert_eq!(ext.report.n, 104);
        assert_eq!(ext.report.q, 27);
        assert_eq!(ext.report.order, 624);
        assert_eq!(ext.report.standard_order, 208);
        assert!(ext.report.nonstandard);
        assert_eq!(
            ext.report.family,
            FamilyTag::LiftExtend { base_n: 8, base_q: 3, t: 3, f: 13 }
        );
    }

    #[test]
    fn lifted_base_extends_identically() {
        let lifted = lift(&enumerate_maps(8, 3).unwrap(), 3).unwrap();
        let ext = extend(&lifted, 13).unwrap();
        assert_eq!(ext.report.order, 624);
    }

    #[test]
    fn extend_rejects_factor_outside_the_scalar_quotient() {
        let base = enumerate_maps(8, 27).unwrap();
        assert!(matches!(
            extend(&base, 7),
            Err(Error::BadExtensionFactor { f: 7, allowed: 13 })
        ));
    }

    #[test]
    fn trivial_extension_keeps_the_group() {
        let base = enumerate_maps(8, 3).unwrap();
        let ext = extend(&base, 1).unwrap();
        assert_eq!(ext.report.order, 48);
    }
}
