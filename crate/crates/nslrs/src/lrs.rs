//! Linear recurring sequences driven by a monic characteristic polynomial.
//!
//! The polynomial lives over a base field and the sequence values in an
//! extension of it (possibly the base itself), so the same machinery serves
//! both plain base-field sequences and the window sequences t ↦ L(ξ^t) of
//! maps on the extension.

use crate::context::{PairContext, UnityTable};
use crate::error::{Error, Result};
use crate::field::{Art, Subfield};
use crate::linalg;
use crate::poly::Poly;
use crate::qlin::QLinearMap;

pub struct Recurrence {
    /// value field
    pub ctx: Art,
    /// characteristic polynomial over the base field, monic, nonzero
    /// constant term
    pub charpoly: Poly,
    /// embedded negated trailing coefficients: s_{t+m} = Σ step[i] s_{t+i}
    step: Vec<u64>,
}

impl Recurrence {
    pub fn new(emb: &Subfield, charpoly: &Poly) -> Result<Recurrence> {
        if charpoly.ctx.id() != emb.sub.id() {
            return Err(Error::ContextMismatch);
        }
        if charpoly.degree().map_or(true, |d| d == 0) {
            return Err(Error::ZeroPolynomial);
        }
        if !charpoly.is_monic() {
            return Err(Error::Invalid("characteristic polynomial must be monic".into()));
        }
        if charpoly.constant_term() == 0 {
            return Err(Error::ZeroConstantTerm);
        }
        let ctx = emb.sup.clone();
        let step = charpoly.coeffs[..charpoly.deg()]
            .iter()
            .map(|&c| ctx.neg(emb.embed(c)))
            .collect();
        Ok(Recurrence { ctx, charpoly: charpoly.clone(), step })
    }

    pub fn order(&self) -> usize {
        self.step.len()
    }

    fn advance(&self, state: &mut Vec<u64>) {
        let mut next = 0u64;
        for (i, &c) in self.step.iter().enumerate() {
            if c != 0 {
                next = self.ctx.add(next, self.ctx.mul(c, state[i]));
            }
        }
        state.remove(0);
        state.push(next);
    }

    pub fn generate(&self, init: &[u64], len: usize) -> Result<Vec<u64>> {
        let m = self.order();
        if init.len() != m {
            return Err(Error::LengthMismatch(init.len(), m));
        }
        let mut out = Vec::with_capacity(len);
        let mut state = init.to_vec();
        for i in 0..len {
            if i < m {
                out.push(init[i]);
            } else {
                self.advance(&mut state);
                out.push(*state.last().unwrap());
            }
        }
        Ok(out)
    }

    /// Least r > 0 with s_{t+r} = s_t for all t, found by walking the state
    /// cycle. The nonzero constant term makes every sequence purely
    /// periodic, so the walk returns to the initial state; `cap` bounds the
    /// number of steps tried.
    pub fn min_period(&self, init: &[u64], cap: u64) -> Result<u64> {
        let m = self.order();
        if init.len() != m {
            return Err(Error::LengthMismatch(init.len(), m));
        }
        let mut state = init.to_vec();
        for r in 1..=cap {
            self.advance(&mut state);
            if state == init {
                return Ok(r);
            }
        }
        Err(Error::PeriodSearchExceeded(cap))
    }

    /// Does the sequence started from `init` stay inside the group of the
    /// table for a full length-n window?
    pub fn stays_in_group(&self, table: &UnityTable, init: &[u64]) -> Result<bool> {
        let m = self.order();
        if init.len() != m {
            return Err(Error::LengthMismatch(init.len(), m));
        }
        if init.iter().any(|&x| !table.contains(x)) {
            return Ok(false);
        }
        let mut state = init.to_vec();
        for _ in m..table.n as usize {
            self.advance(&mut state);
            if !table.contains(*state.last().unwrap()) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Nonzero geometric sequences: a constant ratio between consecutive terms.
pub fn is_geometric(ctx: &Art, seq: &[u64]) -> bool {
    if seq.len() < 2 || seq.iter().any(|&x| x == 0) {
        return false;
    }
    let ratio = ctx.div(seq[1], seq[0]).expect("nonzero checked");
    seq.windows(2)
        .all(|w| ctx.mul(w[0], ratio) == w[1])
}

/// The window sequence of a map: L(ξ^t) for t < len.
pub fn seq_from_map(map: &QLinearMap, table: &UnityTable, len: usize) -> Vec<u64> {
    (0..len)
        .map(|t| map.eval(table.power(t as u64)))
        .collect()
}

/// Recover the map whose window sequence matches the given one, from its
/// first m entries; the rest of the window is verified against the
/// reconstruction.
pub fn map_from_seq(pc: &PairContext, window: &[u64]) -> Result<QLinearMap> {
    let m = pc.m as usize;
    if window.len() < m {
        return Err(Error::LengthMismatch(window.len(), m));
    }
    let top = &pc.top;
    let s = pc.pp.s;
    // rows t: Σ_i c_i (ξ^t)^(q^i) = window[t]
    let mut mat = vec![vec![0u64; m]; m];
    for (t, row) in mat.iter_mut().enumerate() {
        let xt = pc.unity.power(t as u64);
        for (i, slot) in row.iter_mut().enumerate() {
            *slot = top.frob(xt, s * i as u32);
        }
    }
    let sol =
        linalg::solve_square_in(top, &mat, &window[..m]).ok_or(Error::SingularSystem)?;
    let map = QLinearMap::new(top, s, sol)?;
    for (t, &w) in window.iter().enumerate() {
        if map.eval(pc.unity.power(t as u64)) != w {
            return Err(Error::NotAGSequence);
        }
    }
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{base_field, Subfield};

    fn identity_emb(q: u64) -> Subfield {
        let ctx = base_field(q).unwrap();
        Subfield::new(&ctx, &ctx).unwrap()
    }

    #[test]
    fn generate_fibonacci_like() {
        let emb = identity_emb(3);
        let g = Poly::new(&emb.sub, vec![2, 2, 1]); // x^2 + 2x + 2
        let rec = Recurrence::new(&emb, &g).unwrap();
        let seq = rec.generate(&[0, 1], 8).unwrap();
        // s_{t+2} = -2 s_{t+1} - 2 s_t = s_{t+1} + s_t
        assert_eq!(seq, vec![0, 1, 1, 2, 0, 2, 2, 1]);
    }

    #[test]
    fn min_periods_of_maximal_sequence() {
        let emb = identity_emb(2);
        let g = Poly::new(&emb.sub, vec![1, 1, 0, 1]); // order 7
        let rec = Recurrence::new(&emb, &g).unwrap();
        for bits in 1u64..8 {
            let init = vec![bits & 1, (bits >> 1) & 1, (bits >> 2) & 1];
            assert_eq!(rec.min_period(&init, 100).unwrap(), 7);
        }
        assert_eq!(rec.min_period(&[0, 0, 0], 100).unwrap(), 1);
        assert!(matches!(
            rec.min_period(&[1, 0, 0], 3),
            Err(Error::PeriodSearchExceeded(_))
        ));
    }

    #[test]
    fn period_divides_poly_order_even_when_reducible() {
        let emb = identity_emb(3);
        let f = Poly::new(&emb.sub, vec![1, 0, 0, 0, 1]); // x^4 + 1, order 8
        let rec = Recurrence::new(&emb, &f).unwrap();
        let ord = f.poly_order().unwrap();
        for code in 1u64..81 {
            let init: Vec<u64> = (0..4).map(|i| code / 3u64.pow(i) % 3).collect();
            let r = rec.min_period(&init, 200).unwrap();
            assert_eq!(ord % r, 0);
        }
    }

    #[test]
    fn window_counts_for_pair_8_3() {
        let pc = PairContext::new(8, 3).unwrap();
        let rec = Recurrence::new(&pc.emb, &pc.g).unwrap();
        let mut stay = 0;
        let mut geometric = 0;
        for a in 0..9u64 {
            for b in 0..9u64 {
                if rec.stays_in_group(&pc.unity, &[a, b]).unwrap() {
                    stay += 1;
                    let seq = rec.generate(&[a, b], 8).unwrap();
                    if is_geometric(&pc.top, &seq) {
                        geometric += 1;
                    }
                }
            }
        }
        assert_eq!(stay, 48);
        assert_eq!(geometric, 16);
    }

    #[test]
    fn map_recovery_roundtrip() {
        let pc = PairContext::new(8, 3).unwrap();
        let l = QLinearMap::monomial(&pc.top, 1, pc.unity.power(2), 1).unwrap();
        let seq = seq_from_map(&l, &pc.unity, 8);
        let back = map_from_seq(&pc, &seq).unwrap();
        assert_eq!(back, l);
        let mut bad = seq.clone();
        bad[5] = pc.top.add(bad[5], 1);
        assert!(matches!(map_from_seq(&pc, &bad), Err(Error::NotAGSequence)));
    }

    #[test]
    fn geometric_detection() {
        let ctx = base_field(7).unwrap();
        assert!(is_geometric(&ctx, &[1, 3, 2, 6]));
        assert!(!is_geometric(&ctx, &[1, 3, 2, 5]));
        assert!(!is_geometric(&ctx, &[1, 0, 0, 0]));
    }
}
