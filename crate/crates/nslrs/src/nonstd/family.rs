//! Recognition of the known non-standard families.
//!
//! Tags are tried in a fixed precedence: the two sporadic binary/ternary
//! perfect-code pairs, repetition pairs (prime n with q generating the
//! full residue group), simplex pairs (n = q^m - 1), equally-spaced pairs
//! (minimal polynomial of the shape g_0(x^k)), and pairs reachable from a
//! recognized base pair by a field lift combined with a root-group
//! extension. Recognition is structural; whether a tagged pair really has
//! a larger group is confirmed by the decision engine.

use super::FamilyTag;
use crate::context::PairContext;
use crate::error::{Error, Result};
use crate::num;
use crate::poly;

/// Smallest tag the pair (n, q) falls under, or NONE_KNOWN.
pub fn known_family(n: u64, q: u64) -> Result<FamilyTag> {
    if (n, q) == (23, 2) {
        return Ok(FamilyTag::Golay23_2);
    }
    if (n, q) == (11, 3) {
        return Ok(FamilyTag::Golay11_3);
    }
    let m = crate::field::mult_order(n, q)?;
    if n >= 5 && num::is_prime(n) && m == n - 1 {
        return Ok(FamilyTag::Repetition);
    }
    if num::pow_u128(q, m as u32) == n as u128 + 1 && (m > 2 || (m == 2 && q > 2)) {
        return Ok(FamilyTag::Simplex);
    }
    if let Some(tag) = equally_spaced(n, q)? {
        return Ok(tag);
    }
    if let Some(tag) = lift_extend(n, q)? {
        return Ok(tag);
    }
    Ok(FamilyTag::NoneKnown)
}

/// Split n = k·n_0 with the minimal polynomial of the order-n_0 root
/// staying irreducible after x ↦ x^k; smallest k wins. For n_0 = 2 only
/// k > 2 counts, which is exactly what rules out x^2 + 1.
fn equally_spaced(n: u64, q: u64) -> Result<Option<FamilyTag>> {
    for k in num::divisors(n) {
        if k < 2 {
            continue;
        }
        let n_0 = n / k;
        // n_0 = 1 gives g_0 = x - 1, never spaced-irreducible
        if n_0 < 2 || (n_0 == 2 && k <= 2) {
            continue;
        }
        // a divisor pair beyond the representable field range cannot be
        // tested for spacing; recognition passes over it
        let pc0 = match PairContext::new(n_0, q) {
            Ok(pc0) => pc0,
            Err(Error::FieldTooLarge(..)) => continue,
            Err(e) => return Err(e),
        };
        if poly::spaced_irreducible(&pc0.g, k)? {
            return Ok(Some(FamilyTag::EquallySpaced { k, n_0 }));
        }
    }
    Ok(None)
}

/// Look for a recognized base pair (n_0, q_0) with q = q_0^t and
/// n = n_0·f such that the lift by t followed by the extension by f lands
/// on (n, q): the lift needs gcd(t, ord of q_0 mod n_0) = 1 and the
/// extension needs f | (q-1)/gcd(n_0, q-1). Factors f ascend and lift
/// exponents t descend, so the deepest lift from the smallest base field
/// is reported.
fn lift_extend(n: u64, q: u64) -> Result<Option<FamilyTag>> {
    let pp = crate::field::PrimePower::new(q)?;
    let mut ts = num::divisors(pp.s as u64);
    ts.reverse();
    for f in num::divisors(n) {
        let n_0 = n / f;
        if n_0 < 3 {
            continue;
        }
        let e_0 = num::gcd(n_0, q - 1);
        if (q - 1) / e_0 % f != 0 {
            continue;
        }
        for &t in &ts {
            if f == 1 && t == 1 {
                continue;
            }
            let q_0 = num::pow_u128(pp.p, pp.s / t as u32) as u64;
            if num::gcd(n_0, q_0) != 1 {
                continue;
            }
            let m_0 = crate::field::mult_order(n_0, q_0)?;
            if num::gcd(t, m_0) != 1 {
                continue;
            }
            if known_family(n_0, q_0)?.is_known() {
                return Ok(Some(FamilyTag::LiftExtend { base_n: n_0, base_q: q_0, t, f }));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sporadic_pairs() {
        assert_eq!(known_family(23, 2).unwrap(), FamilyTag::Golay23_2);
        assert_eq!(known_family(11, 3).unwrap(), FamilyTag::Golay11_3);
    }

    #[test]
    fn repetition_pairs() {
        assert_eq!(known_family(5, 2).unwrap(), FamilyTag::Repetition);
        assert_eq!(known_family(5, 3).unwrap(), FamilyTag::Repetition);
        assert_eq!(known_family(13, 2).unwrap(), FamilyTag::Repetition);
        assert_eq!(known_family(7, 3).unwrap(), FamilyTag::Repetition);
    }

    #[test]
    fn simplex_pairs() {
        assert_eq!(known_family(7, 2).unwrap(), FamilyTag::Simplex);
        assert_eq!(known_family(8, 3).unwrap(), FamilyTag::Simplex);
        assert_eq!(known_family(15, 2).unwrap(), FamilyTag::Simplex);
        assert_eq!(known_family(24, 5).unwrap(), FamilyTag::Simplex);
        // the two-dimensional binary simplex pair is genuinely standard
        assert_eq!(known_family(3, 2).unwrap(), FamilyTag::NoneKnown);
    }

    #[test]
    fn equally_spaced_pairs() {
        assert_eq!(
            known_family(9, 2).unwrap(),
            FamilyTag::EquallySpaced { k: 3, n_0: 3 }
        );
        assert_eq!(
            known_family(12, 7).unwrap(),
            FamilyTag::EquallySpaced { k: 2, n_0: 6 }
        );
        assert_eq!(
            known_family(8, 5).unwrap(),
            FamilyTag::EquallySpaced { k: 2, n_0: 4 }
        );
    }

    #[test]
    fn lift_extend_pairs() {
        assert_eq!(
            known_family(104, 27).unwrap(),
            FamilyTag::LiftExtend { base_n: 8, base_q: 3, t: 3, f: 13 }
        );
        assert_eq!(
            known_family(10, 3).unwrap(),
            FamilyTag::LiftExtend { base_n: 5, base_q: 3, t: 1, f: 2 }
        );
        assert_eq!(
            known_family(8, 27).unwrap(),
            FamilyTag::LiftExtend { base_n: 8, base_q: 3, t: 3, f: 1 }
        );
    }

    #[test]
    fn unrecognized_pairs() {
        assert_eq!(known_family(13, 3).unwrap(), FamilyTag::NoneKnown);
        assert_eq!(known_family(4, 3).unwrap(), FamilyTag::NoneKnown);
        assert_eq!(known_family(16, 7).unwrap(), FamilyTag::NoneKnown);
        assert_eq!(known_family(1, 2).unwrap(), FamilyTag::NoneKnown);
        assert_eq!(known_family(2, 3).unwrap(), FamilyTag::NoneKnown);
    }
}
