//! Exhaustive enumeration of the unity-fixing maps of a pair.
//!
//! A map is a coefficient tuple (L_0, ..., L_{m-1}) over F_{q^m} acting as
//! x ↦ Σ L_i x^(q^i). All q^(m²) tuples are tested against the unity
//! group directly, so the result is the complete group by construction.

use super::{base_report, Decision, Method};
use crate::context::PairContext;
use crate::error::{Error, Result};
use crate::perm::{Perm, StabChain};
use crate::qlin::QLinearMap;
use std::time::Instant;

/// Enumerate every coefficient tuple and keep the maps permuting the
/// group of order-n roots. Errors when q^(m²) exceeds the dispatch bound.
pub fn enumerate_maps(n: u64, q: u64) -> Result<Decision> {
    let pc = PairContext::new(n, q)?;
    enumerate_maps_ctx(&pc)
}

pub(crate) fn enumerate_maps_ctx(pc: &PairContext) -> Result<Decision> {
    let m = pc.m as usize;
    let n = pc.n as usize;
    let space = super::coefficient_space(pc);
    if space > super::ENUM_BOUND {
        return Err(Error::EnumerationTooLarge(space));
    }
    let start = Instant::now();
    let top = &pc.top;
    let size = top.size;

    // frob_pow[t][i] = (ξ^t)^(q^i), so a tuple evaluates on ξ^t as a dot
    // product with row t
    let s = pc.pp.s;
    let mut frob_pow = vec![vec![0u64; m]; n];
    for (t, row) in frob_pow.iter_mut().enumerate() {
        let xt = pc.unity.power(t as u64);
        for (i, slot) in row.iter_mut().enumerate() {
            *slot = top.frob(xt, s * i as u32);
        }
    }

    let mut coeffs = vec![0u64; m];
    let mut valid: Vec<(Vec<u64>, Perm)> = Vec::new();
    // seen[e] == stamp marks exponent e as an image of the current tuple
    let mut seen = vec![0u32; n];
    let mut stamp = 0u32;
    let mut images = vec![0u32; n];
    let mut stab_count = 0u64;

    for _ in 0..space {
        stamp += 1;
        let mut ok = true;
        for t in 0..n {
            let row = &frob_pow[t];
            let mut y = 0u64;
            for i in 0..m {
                y = top.add(y, top.mul(coeffs[i], row[i]));
            }
            let e = match pc.unity.index_of(y) {
                Some(e) => e as usize,
                None => {
                    ok = false;
                    break;
                }
            };
            if seen[e] == stamp {
                ok = false;
                break;
            }
            seen[e] = stamp;
            images[t] = e as u32;
        }
        if ok {
            if images[0] == 0 {
                stab_count += 1;
            }
            valid.push((coeffs.clone(), Perm::from_images(images.clone())?));
        }
        // odometer step through the tuple space
        for c in coeffs.iter_mut() {
            *c += 1;
            if *c < size {
                break;
            }
            *c = 0;
        }
    }

    let count = valid.len() as u64;
    // the multiplications act transitively on the group, so the total is
    // n times the number of maps sending 1 to 1
    assert_eq!(count, pc.n * stab_count, "orbit-stabilizer count failed");

    let mut chain = StabChain::new(n);
    let mut gens: Vec<QLinearMap> = Vec::new();
    for (coeffs, perm) in &valid {
        if chain.push(perm.clone())? {
            gens.push(QLinearMap::new(top, s, coeffs.clone())?);
        }
    }
    assert_eq!(chain.order(), count as u128, "group closure certificate failed");

    let mut report = base_report(pc, Method::FullEnumeration);
    report.order = count;
    report.nonstandard = count > report.standard_order;
    report.generators = gens.iter().map(|g| g.coeffs_json()).collect();
    report.stats.nodes = space as u64;
    report.stats.seconds = start.elapsed().as_secs_f64();
    Ok(Decision { report, maps: gens })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_8_3_has_48_maps() {
        let dec = enumerate_maps(8, 3).unwrap();
        assert_eq!(dec.report.order, 48);
        assert_eq!(dec.report.standard_order, 16);
        assert!(dec.report.nonstandard);
        assert_eq!(dec.report.stats.nodes, 81);
        assert_eq!(dec.report.method, Method::FullEnumeration);
    }

    #[test]
    fn pair_4_3_is_standard() {
        let dec = enumerate_maps(4, 3).unwrap();
        assert_eq!(dec.report.order, 8);
        assert!(!dec.report.nonstandard);
    }

    #[test]
    fn pair_12_7_has_72_maps() {
        let dec = enumerate_maps(12, 7).unwrap();
        assert_eq!(dec.report.order, 72);
        assert_eq!(dec.report.stats.nodes, 2401);
        assert!(dec.report.nonstandard);
    }

    #[test]
    fn pair_16_7_is_standard_of_order_32() {
        let dec = enumerate_maps(16, 7).unwrap();
        assert_eq!(dec.report.order, 32);
        assert!(!dec.report.nonstandard);
    }

    #[test]
    fn pair_13_3_is_standard_of_order_39() {
        let dec = enumerate_maps(13, 3).unwrap();
        assert_eq!(dec.report.order, 39);
        assert!(!dec.report.nonstandard);
    }

    #[test]
    fn generators_reproduce_the_group() {
        let dec = enumerate_maps(8, 3).unwrap();
        let pc = PairContext::new(8, 3).unwrap();
        let perms: Vec<Perm> =
            dec.maps.iter().map(|m| m.to_perm(&pc.unity).unwrap()).collect();
        let chain = StabChain::from_gens(8, &perms).unwrap();
        assert_eq!(chain.order(), 48);
    }

    #[test]
    fn oversized_space_is_rejected() {
        assert!(matches!(
            enumerate_maps(23, 2),
            Err(Error::EnumerationTooLarge(_))
        ));
    }
}
