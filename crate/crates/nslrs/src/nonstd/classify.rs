//! Verification grid for pairs with m = 2.
//!
//! When q has order 2 mod n, the pair is classified completely: the group
//! exceeds the standard n·2 maps exactly when n = q^2 - 1 (full general
//! linear group), when n = 2e > 4 with e = gcd(n, q-1), q odd and
//! (q-1)/e odd (wreath-like group of order 2e^2), or when the pair is a
//! lift-extension of a full-linear-group pair from a base field. The
//! grid recomputes every such pair by enumeration and compares against
//! the predicted verdict and order.

use super::{Decision, PairReport, SearchBudget};
use crate::error::Result;
use crate::num;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct M2Row {
    pub n: u64,
    pub q: u64,
    pub predicted_nonstandard: bool,
    pub predicted_order: u64,
    pub agree: bool,
    pub report: PairReport,
}

/// Predicted (nonstandard, order) for a pair with m = 2.
pub fn m2_prediction(n: u64, q: u64) -> (bool, u64) {
    if n == q * q - 1 && q >= 3 {
        return (true, (q * q - 1) * (q * q - q));
    }
    let e = num::gcd(n, q - 1);
    if q % 2 == 1 && n == 2 * e && n > 4 && ((q - 1) / e) % 2 == 1 {
        return (true, 2 * e * e);
    }
    if let Some((q_0, _t, f)) = m2_lift_extension(n, q) {
        // the extension meets the lifted full linear group in the order-n_0
        // multiplications, so the order is f times the base group order
        return (true, f * (q_0 * q_0 - 1) * (q_0 * q_0 - q_0));
    }
    (false, 2 * n)
}

/// q = q_0^t with t odd and > 1, n = f·(q_0^2 - 1) with
/// f | (q_0^t - 1)/(q_0 - 1): the lift of the full-linear-group pair of
/// the base field, extended by f. Largest t (smallest base field) wins.
fn m2_lift_extension(n: u64, q: u64) -> Option<(u64, u64, u64)> {
    let (p, s) = num::as_prime_power(q)?;
    let mut ts = num::divisors(s as u64);
    ts.reverse();
    for &t in &ts {
        if t == 1 || t % 2 == 0 {
            continue;
        }
        let q_0 = num::pow_u128(p, (s as u64 / t) as u32) as u64;
        if q_0 < 3 {
            continue;
        }
        let n_0 = q_0 * q_0 - 1;
        if n % n_0 != 0 {
            continue;
        }
        let f = n / n_0;
        let quota = (num::pow_u128(q_0, t as u32) as u64 - 1) / (q_0 - 1);
        if quota % f == 0 {
            return Some((q_0, t, f));
        }
    }
    None
}

/// All n with ord_n(q) = 2, ascending: divisors of q^2 - 1 that do not
/// divide q - 1 (excluding 1 and 2, which fall inside the base field).
pub fn m2_lengths(q: u64) -> Vec<u64> {
    num::divisors(q * q - 1)
        .into_iter()
        .filter(|&n| (q - 1) % n != 0 && num::gcd(n, q) == 1)
        .collect()
}

/// Recompute every m = 2 pair with 3 <= q <= q_max and compare against
/// the classification. Returns one row per pair.
pub fn classify_m2(q_max: u64, budget: &SearchBudget) -> Result<Vec<M2Row>> {
    let mut rows = Vec::new();
    for q in 3..=q_max {
        if num::as_prime_power(q).is_none() {
            continue;
        }
        for n in m2_lengths(q) {
            let Decision { report, .. } = super::decide(n, q, budget)?;
            debug_assert_eq!(report.m, 2);
            let (pred_ns, pred_order) = m2_prediction(n, q);
            let agree = pred_ns == report.nonstandard && pred_order == report.order;
            rows.push(M2Row {
                n,
                q,
                predicted_nonstandard: pred_ns,
                predicted_order: pred_order,
                agree,
                report,
            });
        }
    }
    Ok(rows)
}
