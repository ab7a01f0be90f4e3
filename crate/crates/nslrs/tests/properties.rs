//! Cross-module invariants: randomized pairs and maps exercise the decision
//! engine against the group, sequence and code views of the same objects.

use proptest::prelude::*;

use nslrs::context::PairContext;
use nslrs::lrs;
use nslrs::nonstd::{self, enumerate, family, liftext, search, SearchBudget};
use nslrs::num;
use nslrs::perm::StabChain;
use nslrs::Error;

const SMALL_Q: [u64; 7] = [2, 3, 4, 5, 7, 8, 9];

fn pair_strategy() -> impl Strategy<Value = (u64, u64)> {
    (0usize..SMALL_Q.len(), 1u64..=36)
        .prop_filter("coprime", |&(qi, n)| num::gcd(n, SMALL_Q[qi]) == 1)
        .prop_map(|(qi, n)| (n, SMALL_Q[qi]))
}

fn tame_budget() -> SearchBudget {
    SearchBudget { max_nodes: 1_000_000, max_seconds: 10.0, parity_weight_bound: None }
}

fn decide_or_skip(n: u64, q: u64) -> Result<Option<nonstd::Decision>, TestCaseError> {
    match nonstd::decide(n, q, &tame_budget()) {
        Ok(dec) => Ok(Some(dec)),
        Err(Error::SearchBudgetExceeded { .. })
        | Err(Error::FieldTooLarge(..))
        | Err(Error::OrderTooLarge) => Ok(None),
        Err(e) => Err(TestCaseError::fail(format!("decide({n}, {q}): {e}"))),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn order_sits_above_the_standard_group((n, q) in pair_strategy()) {
        let Some(dec) = decide_or_skip(n, q)? else { return Ok(()); };
        let r = &dec.report;
        prop_assert_eq!(r.standard_order, r.n * r.m);
        prop_assert!(r.order >= r.standard_order);
        prop_assert_eq!(r.order % r.standard_order, 0);
        prop_assert_eq!(r.nonstandard, r.order > r.standard_order);
        prop_assert!(!dec.maps.is_empty());
        prop_assert_eq!(dec.report.generators.len(), dec.maps.len());
    }

    #[test]
    fn generators_regenerate_the_reported_order((n, q) in pair_strategy()) {
        let Some(dec) = decide_or_skip(n, q)? else { return Ok(()); };
        let pc = PairContext::new(n, q).unwrap();
        let mut chain = StabChain::new(n as usize);
        for map in &dec.maps {
            chain.push(map.to_perm(&pc.unity).unwrap()).unwrap();
        }
        prop_assert_eq!(chain.order(), dec.report.order as u128);
    }

    #[test]
    fn enumeration_and_search_agree((n, q) in pair_strategy()) {
        let Ok(pc) = PairContext::new(n, q) else { return Ok(()); };
        prop_assume!(pc.m >= 2 && pc.m <= 4);
        prop_assume!(num::pow_u128(q, (pc.m * pc.m) as u32) <= 1 << 16);
        let enumerated = enumerate::enumerate_maps(n, q).unwrap();
        let searched = search::search_group(n, q, &tame_budget()).unwrap();
        prop_assert_eq!(enumerated.report.order, searched.report.order);
    }

    #[test]
    fn group_maps_round_trip_through_their_sequences(
        case in (0usize..5, any::<prop::sample::Index>())
    ) {
        let (pair_idx, map_idx) = case;
        let (n, q) = [(8u64, 3u64), (7, 2), (5, 2), (12, 7), (13, 3)][pair_idx];
        let dec = nonstd::decide(n, q, &tame_budget()).unwrap();
        let pc = PairContext::new(n, q).unwrap();
        let map = &dec.maps[map_idx.index(dec.maps.len())];
        let seq = lrs::seq_from_map(map, &pc.unity, n as usize);
        let back = lrs::map_from_seq(&pc, &seq).unwrap();
        prop_assert_eq!(back.coeffs(), map.coeffs());
    }

    #[test]
    fn membership_in_the_group_is_exactly_fixing_the_roots(
        c0 in 0u64..9, c1 in 0u64..9
    ) {
        let pc = PairContext::new(8, 3).unwrap();
        let dec = nonstd::decide(8, 3, &tame_budget()).unwrap();
        let mut chain = StabChain::new(8);
        for map in &dec.maps {
            chain.push(map.to_perm(&pc.unity).unwrap()).unwrap();
        }
        let map = nslrs::qlin::QLinearMap::new(&pc.top, pc.pp.s, vec![c0, c1]).unwrap();
        let fixes = map.permutes(&pc.unity);
        let member = fixes && chain.contains(&map.to_perm(&pc.unity).unwrap());
        prop_assert_eq!(fixes, member);
    }
}

#[test]
fn recognized_families_are_nonstandard_on_the_small_grid() {
    let budget = SearchBudget { max_nodes: 2_000_000, max_seconds: 30.0, parity_weight_bound: None };
    let mut confirmed = 0;
    let mut skipped = 0;
    for q in SMALL_Q {
        for n in 1..=40u64 {
            if num::gcd(n, q) != 1 {
                continue;
            }
            let fam = family::known_family(n, q).unwrap();
            if !fam.is_known() {
                continue;
            }
            let t0 = std::time::Instant::now();
            match nonstd::decide(n, q, &budget) {
                Ok(dec) => {
                    assert!(
                        dec.report.nonstandard,
                        "({n}, {q}) tagged {fam:?} but only the standard maps were found"
                    );
                    assert!(!dec.report.prediction_mismatch);
                    println!(
                        "  ({n}, {q}) {fam:?} order {} in {:.1}s",
                        dec.report.order,
                        t0.elapsed().as_secs_f64()
                    );
                    confirmed += 1;
                }
                Err(Error::SearchBudgetExceeded { .. })
                | Err(Error::FieldTooLarge(..))
                | Err(Error::OrderTooLarge) => {
                    skipped += 1;
                }
                Err(e) => panic!("decide({n}, {q}): {e}"),
            }
        }
    }
    assert!(confirmed >= 15, "only {confirmed} family pairs confirmed ({skipped} skipped)");
}

#[test]
fn lifting_preserves_the_induced_group() {
    for (n, q, t) in [(8u64, 3u64, 3u64), (5, 2, 3), (7, 2, 2)] {
        let base = nonstd::decide(n, q, &tame_budget()).unwrap();
        let lifted = liftext::lift(&base, t).unwrap();
        assert_eq!(lifted.report.order, base.report.order, "({n}, {q}) lift by {t}");
        let qt = num::pow_u128(q, t as u32) as u64;
        let direct = nonstd::decide(n, qt, &tame_budget()).unwrap();
        assert_eq!(direct.report.order, base.report.order, "({n}, {qt}) direct");
    }
}

#[test]
fn extension_multiplies_the_order_by_the_factor() {
    for (n, q, f) in [(8u64, 27u64, 13u64), (8, 27, 1), (7, 2, 1)] {
        let base = nonstd::decide(n, q, &tame_budget()).unwrap();
        let ext = liftext::extend(&base, f).unwrap();
        assert_eq!(ext.report.n, n * f);
        assert_eq!(ext.report.order, f * base.report.order, "({n}, {q}) extend by {f}");
    }
}
