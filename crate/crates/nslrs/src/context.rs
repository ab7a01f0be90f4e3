//! Shared working context for one coprime pair (n, q).
//!
//! Everything downstream of a pair, the fields, the subfield embedding, the
//! chosen root of unity with its power and index tables, and its minimal
//! polynomial, is built once here and then borrowed.

use crate::error::{Error, Result};
use crate::field::{self, Art, PrimePower, Subfield};
use crate::num;
use crate::poly::{self, Poly};
use std::collections::HashMap;

/// The cyclic group ⟨ξ⟩ of order n inside a field, with both directions of
/// the exponent correspondence precomputed.
pub struct UnityTable {
    pub n: u64,
    pub xi: u64,
    /// ξ^0, …, ξ^(n-1)
    pub powers: Vec<u64>,
    index: HashMap<u64, u64>,
}

impl UnityTable {
    pub fn new(top: &Art, xi: u64, n: u64) -> Result<UnityTable> {
        let mut powers = Vec::with_capacity(n as usize);
        let mut index = HashMap::with_capacity(n as usize);
        let mut cur = 1u64;
        for i in 0..n {
            powers.push(cur);
            if index.insert(cur, i).is_some() {
                return Err(Error::WrongOrder { want: n, got: i });
            }
            cur = top.mul(cur, xi);
        }
        if cur != 1 {
            return Err(Error::WrongOrder { want: n, got: 0 });
        }
        Ok(UnityTable { n, xi, powers, index })
    }

    pub fn power(&self, k: u64) -> u64 {
        self.powers[(k % self.n) as usize]
    }

    /// Exponent of x in base ξ, if x lies in the group.
    pub fn index_of(&self, x: u64) -> Option<u64> {
        self.index.get(&x).copied()
    }

    pub fn contains(&self, x: u64) -> bool {
        self.index.contains_key(&x)
    }
}

/// All per-pair data: F_q, F_{q^m}, the embedding between them, the
/// canonical ξ of order n with its tables, and its minimal polynomial g
/// over F_q (monic of degree m).
pub struct PairContext {
    pub n: u64,
    pub q: u64,
    pub pp: PrimePower,
    /// multiplicative order of q mod n
    pub m: u64,
    /// n / gcd(n, q-1)
    pub d: u64,
    /// gcd(n, q-1)
    pub e: u64,
    pub base: Art,
    pub top: Art,
    pub emb: Subfield,
    pub unity: UnityTable,
    pub g: Poly,
}

impl PairContext {
    pub fn new(n: u64, q: u64) -> Result<PairContext> {
        if n == 0 || num::gcd(n, q) != 1 {
            return Err(Error::NotCoprime { n, q });
        }
        let pp = PrimePower::new(q)?;
        let m = field::mult_order(n, q)?;
        let (d, e) = field::q_order(n, q)?;
        let base = field::build_field(pp.p, 1, pp.s, None)?;
        let top = field::build_field(pp.p, pp.s, m as u32, None)?;
        let emb = Subfield::new(&base, &top)?;
        let xi = top.element_of_order(n)?;
        let unity = UnityTable::new(&top, xi, n)?;
        let g = poly::minimal_poly(&emb, xi)?;
        debug_assert_eq!(g.deg() as u64, m);
        Ok(PairContext { n, q, pp, m, d, e, base, top, emb, unity, g })
    }

    pub fn xi(&self) -> u64 {
        self.unity.xi
    }

    /// Number of maps of the shape x ↦ c x^(q^j) with c in the group: n·m.
    pub fn standard_order(&self) -> u64 {
        self.n * self.m
    }
}
