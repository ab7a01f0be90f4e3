//! Cyclic codes over F_q of length n with gcd(n, q) = 1.
//!
//! A code is held by its monic generator polynomial dividing x^n - 1,
//! together with the complementary parity-check polynomial. The code
//! attached to a pair (n, q) is the trace code: words (Tr(a ξ^0), …,
//! Tr(a ξ^{n-1})) for a ranging over the extension, which is cyclic of
//! dimension m with the reciprocal of ξ's minimal polynomial as its check
//! polynomial. Membership is tested by remainder against the generator.

use crate::context::PairContext;
use crate::error::{Error, Result};
use crate::field::Art;
use crate::perm::{Perm, StabChain};
use crate::poly::{self, Poly};
use rayon::prelude::*;

#[derive(Clone)]
pub struct CyclicCode {
    pub ctx: Art,
    pub n: u64,
    pub generator: Poly,
    pub parity_check: Poly,
    pub dimension: usize,
}

impl PartialEq for CyclicCode {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.id() == other.ctx.id() && self.n == other.n && self.generator == other.generator
    }
}
impl Eq for CyclicCode {}

impl std::fmt::Debug for CyclicCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "CyclicCode(n={}, q={}, k={}, generator={:?})",
            self.n, self.ctx.size, self.dimension, self.generator
        )
    }
}

impl CyclicCode {
    pub fn from_generator(ctx: &Art, n: u64, generator: Poly) -> Result<CyclicCode> {
        if generator.ctx.id() != ctx.id() {
            return Err(Error::ContextMismatch);
        }
        let gen = generator.into_monic();
        if gen.is_zero() || gen.deg() as u64 > n {
            return Err(Error::NotAGenerator);
        }
        let xn1 = Poly::x_pow_minus_one(ctx, n);
        let (check, rem) = xn1.div_rem(&gen)?;
        if !rem.is_zero() {
            return Err(Error::NotAGenerator);
        }
        let dimension = n as usize - gen.deg();
        Ok(CyclicCode { ctx: ctx.clone(), n, generator: gen, parity_check: check, dimension })
    }

    pub fn q(&self) -> u64 {
        self.ctx.size
    }

    /// The trace code of a pair: check polynomial is the reciprocal of the
    /// minimal polynomial of ξ, dimension m.
    pub fn from_pair(pc: &PairContext) -> Result<CyclicCode> {
        let check = pc.g.reciprocal()?;
        let xn1 = Poly::x_pow_minus_one(&pc.base, pc.n);
        let (gen, rem) = xn1.div_rem(&check)?;
        debug_assert!(rem.is_zero());
        let _ = rem;
        CyclicCode::from_generator(&pc.base, pc.n, gen)
    }

    /// Same construction from an explicitly chosen root of order n in the
    /// pair's top field (the root need not be the canonical ξ).
    pub fn from_root(pc: &PairContext, root: u64) -> Result<CyclicCode> {
        let ord = pc.top.order_of(root)?;
        if ord != pc.n {
            return Err(Error::WrongOrder { want: pc.n, got: ord });
        }
        let g = poly::minimal_poly(&pc.emb, root)?;
        let check = g.reciprocal()?;
        let xn1 = Poly::x_pow_minus_one(&pc.base, pc.n);
        let (gen, _) = xn1.div_rem(&check)?;
        CyclicCode::from_generator(&pc.base, pc.n, gen)
    }

    /// μ(a): the length-n trace word of a top-field element.
    pub fn trace_word(pc: &PairContext, a: u64) -> Result<Vec<u64>> {
        let s = pc.pp.s;
        let mut out = Vec::with_capacity(pc.n as usize);
        for i in 0..pc.n {
            let t = pc.top.trace(pc.top.mul(a, pc.unity.power(i)), s);
            out.push(pc.emb.retract(t)?);
        }
        Ok(out)
    }

    pub fn dual(&self) -> Result<CyclicCode> {
        CyclicCode::from_generator(&self.ctx, self.n, self.parity_check.reciprocal()?)
    }

    pub fn word_to_poly(&self, word: &[u64]) -> Result<Poly> {
        if word.len() != self.n as usize {
            return Err(Error::WordLengthMismatch(word.len(), self.n as usize));
        }
        Ok(Poly::new(&self.ctx, word.to_vec()))
    }

    pub fn contains(&self, word: &[u64]) -> Result<bool> {
        let c = self.word_to_poly(word)?;
        Ok(c.rem(&self.generator)?.is_zero())
    }

    /// Codeword for a message index in 0..q^dimension: the base-q digits
    /// form the message polynomial, multiplied by the generator.
    pub fn word_at(&self, index: u64) -> Vec<u64> {
        let q = self.q();
        let mut out = vec![0u64; self.n as usize];
        let mut idx = index;
        for i in 0..self.dimension {
            let digit = idx % q;
            idx /= q;
            if digit != 0 {
                for (j, &gc) in self.generator.coeffs.iter().enumerate() {
                    out[i + j] = self.ctx.add(out[i + j], self.ctx.mul(digit, gc));
                }
            }
        }
        out
    }

    pub fn word_count(&self) -> u128 {
        crate::num::pow_u128(self.q(), self.dimension as u32)
    }

    /// Exact weight enumerator A_0..A_n by full message enumeration,
    /// partitioned across workers.
    pub fn weight_distribution(&self) -> Result<Vec<u64>> {
        let total = self.word_count();
        if total > 1 << 20 {
            return Err(Error::TooLarge(total.min(u64::MAX as u128) as u64));
        }
        let total = total as u64;
        let chunk = 1u64 << 12;
        let starts: Vec<u64> = (0..total).step_by(chunk as usize).collect();
        let partials: Vec<Vec<u64>> = starts
            .par_iter()
            .map(|&start| {
                let mut counts = vec![0u64; self.n as usize + 1];
                for idx in start..(start + chunk).min(total) {
                    let w = self.word_at(idx).iter().filter(|&&c| c != 0).count();
                    counts[w] += 1;
                }
                counts
            })
            .collect();
        let mut counts = vec![0u64; self.n as usize + 1];
        for p in partials {
            for (slot, v) in counts.iter_mut().zip(p) {
                *slot += v;
            }
        }
        Ok(counts)
    }

    pub fn min_weight(&self) -> Result<usize> {
        let dist = self.weight_distribution()?;
        dist.iter()
            .enumerate()
            .skip(1)
            .find(|(_, &c)| c > 0)
            .map(|(w, _)| w)
            .ok_or_else(|| Error::Invalid("zero code has no nonzero words".into()))
    }

    /// All codewords of weight in 1..=w_max, up to scalar multiples: each
    /// word is normalized so its first nonzero entry is 1, deduplicated,
    /// and the list sorted. Full enumeration, so the same size cap as the
    /// weight distribution applies.
    pub fn low_weight_words(&self, w_max: usize) -> Result<Vec<Vec<u64>>> {
        let total = self.word_count();
        if total > 1 << 20 {
            return Err(Error::TooLarge(total.min(u64::MAX as u128) as u64));
        }
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::new();
        for idx in 0..total as u64 {
            let word = self.word_at(idx);
            let w = word.iter().filter(|&&c| c != 0).count();
            if w == 0 || w > w_max {
                continue;
            }
            let lead = *word.iter().find(|&&c| c != 0).unwrap();
            let inv = self.ctx.inv(lead)?;
            let norm: Vec<u64> = word.iter().map(|&c| self.ctx.mul(c, inv)).collect();
            if seen.insert(norm.clone()) {
                out.push(norm);
            }
        }
        out.sort();
        Ok(out)
    }

    /// Membership of every permuted basis word: π ∈ PAut(C).
    pub fn is_paut(&self, perm: &Perm) -> Result<bool> {
        if perm.degree() != self.n as usize {
            return Err(Error::DegreeMismatch(perm.degree(), self.n as usize));
        }
        for i in 0..self.dimension {
            let mut basis = vec![0u64; self.n as usize];
            for (j, &gc) in self.generator.coeffs.iter().enumerate() {
                basis[i + j] = gc;
            }
            if !self.contains(&perm.act_on_vector(&basis))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Filters all n! permutations; only for n ≤ 8.
    pub fn paut_bruteforce(&self) -> Result<StabChain> {
        if self.n > 8 {
            return Err(Error::TooLarge(self.n));
        }
        let n = self.n as usize;
        let mut chain = StabChain::new(n);
        let mut count: u128 = 0;
        let total: u64 = (1..=n as u64).product();
        for idx in 0..total {
            let p = perm_from_lehmer(idx, n);
            if self.is_paut(&p)? {
                count += 1;
                if !chain.contains(&p) {
                    chain.push(p)?;
                }
            }
        }
        debug_assert_eq!(chain.order(), count);
        Ok(chain)
    }

    /// Length-nk code with generator g(x^k).
    pub fn spaced_product(&self, k: u64) -> Result<CyclicCode> {
        let nk = self.n * k;
        if crate::num::gcd(nk, self.q()) != 1 {
            return Err(Error::NotCoprime { n: nk, q: self.q() });
        }
        CyclicCode::from_generator(&self.ctx, nk, self.generator.compose_spaced(k))
    }

    /// Twisted repetition: word c goes to c̃ with c̃_t = ν^t c_{t mod n},
    /// t < nf. The resulting set is the cyclic code of length nf whose
    /// check polynomial is the monic normalization of h(νx), h the check
    /// polynomial here.
    pub fn twist_extension(&self, nu: u64, f: u64) -> Result<CyclicCode> {
        if f == 0 || nu == 0 || self.ctx.pow(nu, self.n * f) != 1 {
            return Err(Error::BadTwist);
        }
        let check = self.parity_check.scale_argument(nu).into_monic();
        let nf = self.n * f;
        let xn1 = Poly::x_pow_minus_one(&self.ctx, nf);
        let (gen, rem) = xn1.div_rem(&check)?;
        if !rem.is_zero() {
            return Err(Error::BadTwist);
        }
        CyclicCode::from_generator(&self.ctx, nf, gen)
    }

    /// The twisted-repeated image of one word.
    pub fn twist_word(&self, word: &[u64], nu: u64, f: u64) -> Result<Vec<u64>> {
        if word.len() != self.n as usize {
            return Err(Error::WordLengthMismatch(word.len(), self.n as usize));
        }
        let nf = (self.n * f) as usize;
        let mut out = Vec::with_capacity(nf);
        let mut pw = 1u64;
        for t in 0..nf {
            out.push(self.ctx.mul(pw, word[t % self.n as usize]));
            pw = self.ctx.mul(pw, nu);
        }
        Ok(out)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "n": self.n,
            "q": self.q(),
            "generator": self.generator.to_json(),
            "parity_check": self.parity_check.to_json(),
        })
    }
}

/// Deterministic indexing of S_n by Lehmer code.
pub fn perm_from_lehmer(mut idx: u64, n: usize) -> Perm {
    let mut digits = vec![0usize; n];
    for i in 2..=n {
        digits[n - i] = (idx % i as u64) as usize;
        idx /= i as u64;
    }
    let mut pool: Vec<u32> = (0..n as u32).collect();
    let mut images = Vec::with_capacity(n);
    for d in digits {
        images.push(pool.remove(d));
    }
    Perm::from_images(images).expect("lehmer digits are in range")
}
