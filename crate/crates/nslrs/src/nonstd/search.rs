//! Pruned backtracking search for the unity-fixing maps of a pair.
//!
//! Any map L in the group satisfies L(1) = 1 after dividing by the
//! multiplication x ↦ L(1)x, so the group order is n times the number of
//! maps sending 1 to 1. Those are found by assigning images y_i = L(ξ^i),
//! one per exponent, subject to three kinds of constraint: every image is
//! an order-n root, images are distinct, and the image word (y_0, ...,
//! y_{n-1}) is annihilated by every parity check of the associated cyclic
//! code, because the word satisfies the same linear recurrence as the
//! powers of ξ. Low-weight checks prune and force early; a completed
//! assignment is accepted only after the full linear-extension test that
//! y_j equals the combination of y_0..y_{m-1} given by x^j mod g.
//!
//! The stabilizer of 1 is counted by orbit-stabilizer rather than listed:
//! at each free position, the images admitting some completion form the
//! orbit of that position, each established by a single witness
//! completion, and only the identity image is entered recursively, which
//! pins the point and counts its stabilizer. The stabilizer order is the
//! product of the orbit sizes down the chain, and the witnesses are coset
//! representatives, which together generate the whole stabilizer.

use super::{base_report, Decision, Method, SearchBudget};
use crate::code::CyclicCode;
use crate::context::PairContext;
use crate::error::{Error, Result};
use crate::lrs::map_from_seq;
use crate::perm::{Perm, StabChain};
use crate::qlin::QLinearMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::time::Instant;

const UNSET: u32 = u32::MAX;
/// Dual codes with at most this many words are enumerated for checks.
const DUAL_ENUM_BOUND: u128 = 1 << 20;
/// Element-to-exponent lookup stays dense up to this field size.
const DENSE_LOOKUP_BOUND: u64 = 1 << 24;
/// At most this many checks are kept, lightest first; dropping the rest
/// only weakens pruning, never correctness, since completed assignments
/// are always validated in full.
const CHECK_CAP: usize = 1024;

struct Check {
    pos: Vec<u32>,
    emb_c: Vec<u64>,
    /// -1 / emb_c[i], so a forced image is neg_inv[i] · partial
    neg_inv: Vec<u64>,
}

enum ExpLookup {
    Dense(Vec<u32>),
    Sparse(std::collections::HashMap<u64, u32>),
}

impl ExpLookup {
    fn get(&self, x: u64) -> u32 {
        match self {
            ExpLookup::Dense(v) => v[x as usize],
            ExpLookup::Sparse(m) => *m.get(&x).unwrap_or(&UNSET),
        }
    }
}

struct Tables {
    n: usize,
    m: usize,
    top: crate::field::Art,
    /// exponent -> element of the unity group
    xi_val: Vec<u64>,
    exp_of: ExpLookup,
    checks: Vec<Check>,
    /// position -> (check index, index of the position in its support)
    checks_at: Vec<Vec<(u32, u32)>>,
    /// static branching order over positions 1..n-1
    order: Vec<u32>,
    /// j -> nonzero (k, embedded coefficient) pairs of x^j mod g, j >= m
    valid_rows: Vec<Vec<(u32, u64)>>,
    start: Instant,
    nodes: AtomicU64,
    max_nodes: u64,
    max_seconds: f64,
}

#[derive(Clone)]
struct State {
    y_exp: Vec<u32>,
    y_val: Vec<u64>,
    used: Vec<bool>,
    /// unassigned support positions per check
    uc: Vec<u32>,
    /// running sum over assigned support positions per check
    partial: Vec<u64>,
    trail: Vec<u32>,
}

impl State {
    fn new(t: &Tables) -> State {
        State {
            y_exp: vec![UNSET; t.n],
            y_val: vec![0; t.n],
            used: vec![false; t.n],
            uc: t.checks.iter().map(|c| c.pos.len() as u32).collect(),
            partial: vec![0; t.checks.len()],
            trail: Vec::with_capacity(t.n),
        }
    }
}

fn harvest_checks(pc: &PairContext, w_max: usize) -> Result<Vec<Vec<u64>>> {
    let code = CyclicCode::from_pair(pc)?;
    let dual = code.dual()?;
    let mut dual_size: u128 = 1;
    for _ in 0..dual.dimension {
        dual_size = dual_size.saturating_mul(pc.q as u128);
        if dual_size > DUAL_ENUM_BOUND {
            break;
        }
    }
    let mut words = if dual_size <= DUAL_ENUM_BOUND {
        dual.low_weight_words(w_max)?
    } else {
        // fall back to the n cyclic shifts of the dual generator, each of
        // weight at most m + 1
        let n = pc.n as usize;
        let g = &dual.generator;
        let mut out = Vec::new();
        for shift in 0..n {
            let mut word = vec![0u64; n];
            for j in 0..=g.deg() {
                word[(j + shift) % n] = g.coeff(j);
            }
            if word.iter().filter(|&&c| c != 0).count() <= w_max {
                out.push(word);
            }
        }
        out.sort();
        out.dedup();
        out
    };
    words.sort_by_key(|w| (w.iter().filter(|&&c| c != 0).count(), w.clone()));
    words.truncate(CHECK_CAP);
    Ok(words)
}

fn build_checks(pc: &PairContext, words: &[Vec<u64>]) -> Result<Vec<Check>> {
    let mut checks = Vec::with_capacity(words.len());
    for w in words {
        let mut pos = Vec::new();
        let mut emb_c = Vec::new();
        let mut neg_inv = Vec::new();
        for (i, &c) in w.iter().enumerate() {
            if c != 0 {
                let e = pc.emb.embed(c);
                pos.push(i as u32);
                emb_c.push(e);
                neg_inv.push(pc.top.neg(pc.top.inv(e)?));
            }
        }
        if !pos.is_empty() {
            checks.push(Check { pos, emb_c, neg_inv });
        }
    }
    Ok(checks)
}

/// Greedy static order: repeatedly pick the position whose pending checks
/// are closest to completion, comparing the number of checks that would
/// need one more position, then two more, and so on; ties go to the
/// lowest position. This walks check supports one after another, so
/// forcing starts as early as the lightest check allows.
fn static_order(n: usize, checks: &[Check], depth: usize) -> Vec<u32> {
    let mut assigned = vec![false; n];
    assigned[0] = true;
    let mut uc: Vec<usize> = checks.iter().map(|c| c.pos.len()).collect();
    for (ci, c) in checks.iter().enumerate() {
        if c.pos.contains(&0) {
            uc[ci] -= 1;
        }
    }
    let mut order = Vec::with_capacity(n - 1);
    let mut score = vec![vec![0u32; depth]; n];
    for _ in 1..n {
        for row in score.iter_mut() {
            row.fill(0);
        }
        for (ci, c) in checks.iter().enumerate() {
            if uc[ci] >= 1 && uc[ci] <= depth {
                for &p in &c.pos {
                    if !assigned[p as usize] {
                        score[p as usize][uc[ci] - 1] += 1;
                    }
                }
            }
        }
        let mut best = usize::MAX;
        for p in 1..n {
            if !assigned[p] && (best == usize::MAX || score[p] > score[best]) {
                best = p;
            }
        }
        assigned[best] = true;
        order.push(best as u32);
        for (ci, c) in checks.iter().enumerate() {
            if c.pos.contains(&(best as u32)) {
                uc[ci] -= 1;
            }
        }
    }
    order
}

/// Assign position p to the unity element with the given exponent and run
/// constraint propagation. Returns Ok(false) on contradiction, in which
/// case the caller unwinds the trail to its saved mark. Check updates are
/// always applied in full for a position before reporting a
/// contradiction, keeping the trail-based undo exact.
fn propagate_assign(t: &Tables, st: &mut State, p: usize, exp: u32) -> Result<bool> {
    let mut queue: Vec<(usize, u32)> = vec![(p, exp)];
    while let Some((p, exp)) = queue.pop() {
        if st.y_exp[p] != UNSET {
            if st.y_exp[p] != exp {
                return Ok(false);
            }
            continue;
        }
        if st.used[exp as usize] {
            return Ok(false);
        }
        let nodes = t.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if nodes > t.max_nodes || (nodes & 0x1fff) == 0 {
            let secs = t.start.elapsed().as_secs_f64();
            if nodes > t.max_nodes || secs > t.max_seconds {
                return Err(Error::SearchBudgetExceeded { nodes, seconds: secs });
            }
        }
        let val = t.xi_val[exp as usize];
        st.y_exp[p] = exp;
        st.y_val[p] = val;
        st.used[exp as usize] = true;
        st.trail.push(p as u32);
        let mut dead = false;
        for &(ci, k) in &t.checks_at[p] {
            let ci = ci as usize;
            let c = &t.checks[ci];
            st.partial[ci] = t.top.add(st.partial[ci], t.top.mul(c.emb_c[k as usize], val));
            st.uc[ci] -= 1;
            match st.uc[ci] {
                0 => {
                    if st.partial[ci] != 0 {
                        dead = true;
                    }
                }
                1 => {
                    if !dead {
                        let (ri, r) = c
                            .pos
                            .iter()
                            .enumerate()
                            .find(|&(_, &x)| st.y_exp[x as usize] == UNSET)
                            .map(|(i, &x)| (i, x as usize))
                            .unwrap();
                        let forced = t.top.mul(c.neg_inv[ri], st.partial[ci]);
                        let fe = t.exp_of.get(forced);
                        if fe == UNSET {
                            dead = true;
                        } else {
                            queue.push((r, fe));
                        }
                    }
                }
                _ => {}
            }
        }
        if dead {
            return Ok(false);
        }
    }
    Ok(true)
}

fn undo_to(t: &Tables, st: &mut State, mark: usize) {
    while st.trail.len() > mark {
        let p = st.trail.pop().unwrap() as usize;
        let val = st.y_val[p];
        st.used[st.y_exp[p] as usize] = false;
        st.y_exp[p] = UNSET;
        for &(ci, k) in &t.checks_at[p] {
            let ci = ci as usize;
            let c = &t.checks[ci];
            st.partial[ci] = t.top.sub(st.partial[ci], t.top.mul(c.emb_c[k as usize], val));
            st.uc[ci] += 1;
        }
    }
}

/// Full test that the assignment extends to a linear map: each y_j beyond
/// the first m must equal the combination of y_0..y_{m-1} with the
/// coefficients of x^j mod g.
fn validates(t: &Tables, st: &State) -> bool {
    for j in t.m..t.n {
        let mut acc = 0u64;
        for &(k, c) in &t.valid_rows[j] {
            acc = t.top.add(acc, t.top.mul(c, st.y_val[k as usize]));
        }
        if acc != st.y_val[j] {
            return false;
        }
    }
    true
}

/// Depth-first hunt for a single completion of the current assignment.
/// Returns the image word of the first one found, or None when the
/// subtree is exhausted.
fn dive(t: &Tables, st: &mut State, mut oi: usize) -> Result<Option<Vec<u32>>> {
    while oi < t.order.len() && st.y_exp[t.order[oi] as usize] != UNSET {
        oi += 1;
    }
    if oi == t.order.len() {
        if validates(t, st) {
            return Ok(Some(st.y_exp.clone()));
        }
        return Ok(None);
    }
    let p = t.order[oi] as usize;
    for exp in 1..t.n as u32 {
        if st.used[exp as usize] {
            continue;
        }
        let mark = st.trail.len();
        if propagate_assign(t, st, p, exp)? {
            if let Some(sol) = dive(t, st, oi + 1)? {
                undo_to(t, st, mark);
                return Ok(Some(sol));
            }
        }
        undo_to(t, st, mark);
    }
    Ok(None)
}

/// Orbit-stabilizer count of the maps extending the current identity
/// prefix. The identity image is always completable, so it is entered
/// recursively to count the point stabilizer; every other image
/// contributes to the orbit exactly when one witness completion exists,
/// and that witness is kept as a coset representative.
fn count_stabilizer(t: &Tables, st: &mut State, mut oi: usize) -> Result<(u128, Vec<Vec<u32>>)> {
    while oi < t.order.len() && st.y_exp[t.order[oi] as usize] != UNSET {
        oi += 1;
    }
    if oi == t.order.len() {
        if !validates(t, st) {
            return Err(Error::Invalid("identity assignment rejected".into()));
        }
        return Ok((1, Vec::new()));
    }
    let p = t.order[oi] as usize;
    let mark = st.trail.len();
    if !propagate_assign(t, st, p, p as u32)? {
        undo_to(t, st, mark);
        return Err(Error::Invalid("identity assignment rejected".into()));
    }
    let (stab, mut reps) = count_stabilizer(t, st, oi + 1)?;
    undo_to(t, st, mark);
    let mut orbit: u128 = 1;
    for exp in 1..t.n as u32 {
        if exp == p as u32 || st.used[exp as usize] {
            continue;
        }
        let mark = st.trail.len();
        if propagate_assign(t, st, p, exp)? {
            if let Some(sol) = dive(t, st, oi + 1)? {
                orbit += 1;
                reps.push(sol);
            }
        }
        undo_to(t, st, mark);
    }
    let total = orbit.checked_mul(stab).ok_or(Error::OrderTooLarge)?;
    Ok((total, reps))
}

pub fn search_group(n: u64, q: u64, budget: &SearchBudget) -> Result<Decision> {
    let pc = PairContext::new(n, q)?;
    search_group_ctx(&pc, budget)
}

pub(crate) fn search_group_ctx(pc: &PairContext, budget: &SearchBudget) -> Result<Decision> {
    let n = pc.n as usize;
    let m = pc.m as usize;
    let start = Instant::now();

    let w_max = budget.parity_weight_bound.unwrap_or(m + 2);
    let words = harvest_checks(pc, w_max)?;
    let checks = build_checks(pc, &words)?;
    let mut checks_at = vec![Vec::new(); n];
    for (ci, c) in checks.iter().enumerate() {
        for (k, &p) in c.pos.iter().enumerate() {
            checks_at[p as usize].push((ci as u32, k as u32));
        }
    }
    let order = static_order(n, &checks, w_max);

    let xi_val: Vec<u64> = (0..n).map(|e| pc.unity.power(e as u64)).collect();
    let exp_of = if pc.top.size <= DENSE_LOOKUP_BOUND {
        let mut v = vec![UNSET; pc.top.size as usize];
        for (e, &x) in xi_val.iter().enumerate() {
            v[x as usize] = e as u32;
        }
        ExpLookup::Dense(v)
    } else {
        ExpLookup::Sparse(xi_val.iter().enumerate().map(|(e, &x)| (x, e as u32)).collect())
    };

    // rows of x^j mod g over the base field, embedded upward
    let gb: Vec<u64> = (0..m).map(|k| pc.g.coeff(k)).collect();
    let mut row = vec![0u64; m];
    row[0] = 1;
    let mut valid_rows: Vec<Vec<(u32, u64)>> = vec![Vec::new(); n];
    for (j, slot) in valid_rows.iter_mut().enumerate() {
        if j >= m {
            *slot = row
                .iter()
                .enumerate()
                .filter(|&(_, &c)| c != 0)
                .map(|(k, &c)| (k as u32, pc.emb.embed(c)))
                .collect();
        }
        let carry = row[m - 1];
        for k in (1..m).rev() {
            row[k] = pc.base.sub(row[k - 1], pc.base.mul(carry, gb[k]));
        }
        row[0] = pc.base.neg(pc.base.mul(carry, gb[0]));
    }

    let tables = Tables {
        n,
        m,
        top: pc.top.clone(),
        xi_val,
        exp_of,
        checks,
        checks_at,
        order,
        valid_rows,
        start,
        nodes: AtomicU64::new(0),
        max_nodes: budget.max_nodes,
        max_seconds: budget.max_seconds,
    };

    let mut root = State::new(&tables);
    if !propagate_assign(&tables, &mut root, 0, 0)? {
        return Err(Error::Invalid("identity assignment rejected".into()));
    }

    let (stab_count, reps) = count_stabilizer(&tables, &mut root, 0)?;
    let order = (pc.n as u128).checked_mul(stab_count).ok_or(Error::OrderTooLarge)?;
    let order_u64 = u64::try_from(order).map_err(|_| Error::OrderTooLarge)?;

    // closure certificate: the coset representatives generate the whole
    // stabilizer of 1, so a chain over them must reach exactly the counted
    // order, and adding the rotation multiplies it by n
    let mut stab_chain = StabChain::new(n);
    let mut gen_maps: Vec<QLinearMap> = Vec::new();
    let mult = QLinearMap::monomial(&pc.top, pc.pp.s, pc.xi(), 0)?;
    let mut full_chain = StabChain::new(n);
    full_chain.push(mult.to_perm(&pc.unity)?)?;
    for sol in &reps {
        let perm = Perm::from_images(sol.clone())?;
        if stab_chain.push(perm.clone())? {
            full_chain.push(perm)?;
            let vals: Vec<u64> = sol.iter().map(|&e| tables.xi_val[e as usize]).collect();
            gen_maps.push(map_from_seq(pc, &vals)?);
        }
    }
    assert_eq!(stab_chain.order(), stab_count, "stabilizer closure failed");
    assert_eq!(full_chain.order(), order, "group closure certificate failed");

    let mut maps = vec![mult];
    maps.extend(gen_maps);
    let mut report = base_report(pc, Method::PrunedSearch);
    report.order = order_u64;
    report.nonstandard = report.order > report.standard_order;
    report.generators = maps.iter().map(|g| g.coeffs_json()).collect();
    report.stats.nodes = tables.nodes.load(Ordering::Relaxed);
    report.stats.seconds = start.elapsed().as_secs_f64();
    Ok(Decision { report, maps })
}
