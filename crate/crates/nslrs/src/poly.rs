//! Polynomials over a finite field context.
//!
//! Coefficients are element indices of a [`FieldCtx`], stored ascending, and
//! always trimmed (no trailing zeros). The field of coefficients is whatever
//! the context represents, so "F_q" below means a context of size q, which
//! may itself be an extension of its prime field.
//!
//! Beyond the ring operations this module carries the machinery the rest of
//! the crate leans on: Rabin irreducibility, a deterministic complete
//! factorization (distinct-degree plus Cantor–Zassenhaus splitting with a
//! seeded generator, provided as a slow oracle for tests and for orders of
//! reducible inputs), polynomial orders, minimal polynomials of extension
//! elements, and the equally-spaced composition g(x) → g(x^k) together with
//! its irreducibility criterion.

use crate::error::{Error, Result};
use crate::field::{Art, FieldCtx, Subfield};
use crate::num;

#[derive(Clone)]
pub struct Poly {
    pub ctx: Art,
    /// ascending, trimmed; empty = zero polynomial
    pub coeffs: Vec<u64>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.id() == other.ctx.id() && self.coeffs == other.coeffs
    }
}
impl Eq for Poly {}

impl std::fmt::Debug for Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Poly{}", self.text())
    }
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

impl Poly {
    pub fn new(ctx: &Art, mut coeffs: Vec<u64>) -> Poly {
        trim(&mut coeffs);
        Poly { ctx: ctx.clone(), coeffs }
    }

    pub fn zero(ctx: &Art) -> Poly {
        Poly { ctx: ctx.clone(), coeffs: vec![] }
    }

    pub fn one(ctx: &Art) -> Poly {
        Poly { ctx: ctx.clone(), coeffs: vec![1] }
    }

    pub fn x(ctx: &Art) -> Poly {
        Poly { ctx: ctx.clone(), coeffs: vec![0, 1] }
    }

    /// x^n - 1 over the context.
    pub fn x_pow_minus_one(ctx: &Art, n: u64) -> Poly {
        let mut c = vec![0u64; n as usize + 1];
        c[0] = ctx.neg(1);
        c[n as usize] = 1;
        Poly::new(ctx, c)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports None.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn deg(&self) -> usize {
        self.degree().expect("degree of zero polynomial")
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn constant_term(&self) -> u64 {
        self.coeff(0)
    }

    fn check_ctx(&self, other: &Poly) -> Result<()> {
        if self.ctx.id() != other.ctx.id() {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.check_ctx(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.ctx.add(self.coeff(i), other.coeff(i)));
        }
        Ok(Poly::new(&self.ctx, out))
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.check_ctx(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.ctx.sub(self.coeff(i), other.coeff(i)));
        }
        Ok(Poly::new(&self.ctx, out))
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.check_ctx(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(&self.ctx));
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = self.ctx.add(out[i + j], self.ctx.mul(a, b));
            }
        }
        Ok(Poly::new(&self.ctx, out))
    }

    pub fn scale(&self, c: u64) -> Poly {
        Poly::new(
            &self.ctx,
            self.coeffs.iter().map(|&a| self.ctx.mul(a, c)).collect(),
        )
    }

    /// Quotient and remainder; errors on a zero divisor.
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.check_ctx(divisor)?;
        if divisor.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let d = divisor.deg();
        let lead_inv = self.ctx.inv(*divisor.coeffs.last().unwrap())?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; self.coeffs.len().saturating_sub(d)];
        while rem.len() > d || (rem.len() == d + 1 && d == 0 && !rem.is_empty()) {
            if rem.len() < d + 1 {
                break;
            }
            let k = rem.len() - 1 - d;
            let f = self.ctx.mul(*rem.last().unwrap(), lead_inv);
            if f != 0 {
                quot[k] = f;
                for j in 0..=d {
                    let sub = self.ctx.mul(f, divisor.coeffs[j]);
                    rem[k + j] = self.ctx.sub(rem[k + j], sub);
                }
            } else {
                rem.pop();
                trim(&mut rem);
                continue;
            }
            rem.pop();
            trim(&mut rem);
        }
        trim(&mut rem);
        Ok((Poly::new(&self.ctx, quot), Poly::new(&self.ctx, rem)))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        Ok(self.div_rem(divisor)?.1)
    }

    pub fn divides(&self, other: &Poly) -> Result<bool> {
        Ok(other.rem(self)?.is_zero())
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.check_ctx(other)?;
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.into_monic())
    }

    pub fn into_monic(self) -> Poly {
        match self.coeffs.last() {
            None | Some(&1) => self,
            Some(&l) => {
                let inv = self.ctx.inv(l).expect("nonzero leading coefficient");
                self.scale(inv)
            }
        }
    }

    pub fn eval(&self, x: u64) -> u64 {
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = self.ctx.add(self.ctx.mul(acc, x), c);
        }
        acc
    }

    /// Evaluate inside a larger context, embedding the coefficients.
    pub fn eval_embedded(&self, emb: &Subfield, x: u64) -> u64 {
        let sup = &emb.sup;
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = sup.add(sup.mul(acc, x), emb.embed(c));
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero(&self.ctx);
        }
        let out: Vec<u64> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| {
                let i_scalar = self.ctx.scalar(i as u64 % self.ctx.p);
                self.ctx.mul(c, i_scalar)
            })
            .collect();
        Poly::new(&self.ctx, out)
    }

    /// g(x^k).
    pub fn compose_spaced(&self, k: u64) -> Poly {
        if self.is_zero() {
            return Poly::zero(&self.ctx);
        }
        let mut out = vec![0u64; self.deg() * k as usize + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[i * k as usize] = c;
        }
        Poly::new(&self.ctx, out)
    }

    /// f(νx), same degree.
    pub fn scale_argument(&self, nu: u64) -> Poly {
        let mut pw = 1u64;
        let out: Vec<u64> = self
            .coeffs
            .iter()
            .map(|&c| {
                let v = self.ctx.mul(c, pw);
                pw = self.ctx.mul(pw, nu);
                v
            })
            .collect();
        Poly::new(&self.ctx, out)
    }

    /// Monic reciprocal x^deg · f(1/x); requires a nonzero constant term.
    pub fn reciprocal(&self) -> Result<Poly> {
        if self.constant_term() == 0 {
            return Err(Error::ZeroConstantTerm);
        }
        let mut rev = self.coeffs.clone();
        rev.reverse();
        Ok(Poly::new(&self.ctx, rev).into_monic())
    }

    /// Text form: ascending coefficient list. Prime-field coefficients print
    /// as integers, extension coefficients as coordinate lists.
    pub fn text(&self) -> String {
        if self.ctx.deg == 1 {
            let items: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
            format!("[{}]", items.join(","))
        } else {
            let items: Vec<String> = self
                .coeffs
                .iter()
                .map(|&c| {
                    let co: Vec<String> =
                        self.ctx.coords(c).iter().map(|d| d.to_string()).collect();
                    format!("[{}]", co.join(","))
                })
                .collect();
            format!("[{}]", items.join(","))
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        if self.ctx.deg == 1 {
            serde_json::Value::Array(
                self.coeffs.iter().map(|&c| serde_json::Value::from(c)).collect(),
            )
        } else {
            serde_json::Value::Array(
                self.coeffs
                    .iter()
                    .map(|&c| element_to_json(&self.ctx, c))
                    .collect(),
            )
        }
    }

    pub fn parse(ctx: &Art, s: &str) -> Result<Poly> {
        let v: serde_json::Value = serde_json::from_str(s)?;
        let arr = v
            .as_array()
            .ok_or_else(|| Error::Invalid("expected a coefficient list".into()))?;
        let mut coeffs = Vec::with_capacity(arr.len());
        for item in arr {
            coeffs.push(element_from_json(ctx, item)?);
        }
        Ok(Poly::new(ctx, coeffs))
    }
}

/// Parses a field element from either an integer (prime-field residue or raw
/// index of a prime context) or a coordinate list.
pub fn element_from_json(ctx: &Art, v: &serde_json::Value) -> Result<u64> {
    match v {
        serde_json::Value::Number(n) => {
            let x = n
                .as_u64()
                .ok_or_else(|| Error::Invalid("negative coefficient".into()))?;
            if ctx.deg == 1 {
                Ok(x % ctx.p)
            } else {
                Err(Error::Invalid(
                    "extension-field element must be a coordinate list".into(),
                ))
            }
        }
        serde_json::Value::Array(a) => {
            if a.len() > ctx.deg as usize {
                return Err(Error::Invalid("too many coordinates".into()));
            }
            let mut coords = Vec::with_capacity(a.len());
            for item in a {
                let d = item
                    .as_u64()
                    .ok_or_else(|| Error::Invalid("coordinate must be an integer".into()))?;
                if d >= ctx.p {
                    return Err(Error::Invalid("coordinate out of range".into()));
                }
                coords.push(d);
            }
            Ok(ctx.from_coords(&coords))
        }
        _ => Err(Error::Invalid("bad element encoding".into())),
    }
}

pub fn element_to_json(ctx: &FieldCtx, x: u64) -> serde_json::Value {
    serde_json::Value::Array(
        ctx.coords(x)
            .into_iter()
            .map(|d| serde_json::Value::from(d))
            .collect(),
    )
}

// ---------------------------------------------------------------------------
// irreducibility / factorization / orders
// ---------------------------------------------------------------------------

/// x^(q^i) mod f for i = 0..=count, where q is the coefficient field size.
/// Uses the additive Frobenius: u^q mod f = Σ u_i (x^(iq) mod f), with the
/// x^(iq) table built by repeated multiplication with x^q.
struct FrobHelper {
    /// x^(iq) mod f for i < deg f
    rows: Vec<Vec<u64>>,
    ctx: Art,
    f: Vec<u64>,
}

impl FrobHelper {
    fn new(f: &Poly) -> FrobHelper {
        let ctx = f.ctx.clone();
        let d = f.deg();
        let q = ctx.size;
        // x^q mod f
        let xq = powmod_x(&ctx, q, &f.coeffs);
        let mut rows = Vec::with_capacity(d);
        let mut cur = vec![1u64];
        for _ in 0..d {
            rows.push(cur.clone());
            cur = mulmod(&ctx, &cur, &xq, &f.coeffs);
        }
        FrobHelper { rows, ctx, f: f.coeffs.clone() }
    }

    /// u ↦ u^q mod f.
    fn step(&self, u: &[u64]) -> Vec<u64> {
        let d = self.f.len() - 1;
        let mut acc = vec![0u64; d];
        for (i, &c) in u.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (j, &r) in self.rows[i].iter().enumerate() {
                acc[j] = self.ctx.add(acc[j], self.ctx.mul(c, r));
            }
        }
        trim(&mut acc);
        acc
    }
}

fn mulmod(ctx: &Art, a: &[u64], b: &[u64], f: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut acc = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            acc[i + j] = ctx.add(acc[i + j], ctx.mul(ai, bj));
        }
    }
    remmod(ctx, &mut acc, f);
    acc
}

/// Reduce modulo monic f, in place.
fn remmod(ctx: &Art, a: &mut Vec<u64>, f: &[u64]) {
    let d = f.len() - 1;
    while a.len() > d {
        let lead = *a.last().unwrap();
        if lead != 0 {
            let k = a.len() - 1 - d;
            for j in 0..d {
                let sub = ctx.mul(lead, f[j]);
                a[k + j] = ctx.sub(a[k + j], sub);
            }
        }
        a.pop();
        trim(a);
    }
    trim(a);
}

fn powmod_x(ctx: &Art, e: u64, f: &[u64]) -> Vec<u64> {
    let mut result = vec![1u64];
    let mut sq = vec![0, 1];
    remmod(ctx, &mut sq, f);
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            result = mulmod(ctx, &result, &sq, f);
        }
        sq = mulmod(ctx, &sq, &sq, f);
        e >>= 1;
    }
    result
}

fn powmod(ctx: &Art, base: &[u64], e: u64, f: &[u64]) -> Vec<u64> {
    let mut result = vec![1u64];
    let mut sq = base.to_vec();
    remmod(ctx, &mut sq, f);
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            result = mulmod(ctx, &result, &sq, f);
        }
        sq = mulmod(ctx, &sq, &sq, f);
        e >>= 1;
    }
    result
}

impl Poly {
    /// Rabin test: f of degree d is irreducible iff x^(q^d) = x mod f and
    /// gcd(x^(q^(d/r)) - x, f) = 1 for every prime r | d.
    pub fn is_irreducible(&self) -> bool {
        let Some(d) = self.degree() else { return false };
        if d == 0 {
            return false;
        }
        if d == 1 {
            return true;
        }
        if self.constant_term() == 0 {
            return false;
        }
        let monic = self.clone().into_monic();
        let helper = FrobHelper::new(&monic);
        let x_poly = {
            let mut v = vec![0u64, 1];
            remmod(&self.ctx, &mut v, &monic.coeffs);
            v
        };
        let mut powers = vec![x_poly.clone()];
        for _ in 0..d {
            let next = helper.step(powers.last().unwrap());
            powers.push(next);
        }
        if powers[d] != x_poly {
            return false;
        }
        for r in num::prime_divisors(d as u64) {
            let i = d / r as usize;
            let diff = Poly::new(&self.ctx, powers[i].clone())
                .sub(&Poly::new(&self.ctx, x_poly.clone()))
                .unwrap();
            let g = diff.gcd(&monic).unwrap();
            if g.degree() != Some(0) {
                return false;
            }
        }
        true
    }

    /// Complete factorization into monic irreducibles with multiplicities,
    /// sorted by (degree, coefficients) for determinism. Distinct-degree
    /// splitting plus Cantor–Zassenhaus with a generator seeded from the
    /// input, so repeated runs agree.
    pub fn factor(&self) -> Result<Vec<(Poly, u32)>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut out: Vec<(Poly, u32)> = Vec::new();
        let mut f = self.clone().into_monic();
        // strip powers of x
        let mut xmult = 0u32;
        while !f.is_zero() && f.constant_term() == 0 && f.deg() > 0 {
            f = f.div_rem(&Poly::x(&self.ctx))?.0;
            xmult += 1;
        }
        if xmult > 0 {
            out.push((Poly::x(&self.ctx), xmult));
        }
        factor_inner(&f, &mut out)?;
        out.sort_by(|a, b| {
            (a.0.coeffs.len(), &a.0.coeffs).cmp(&(b.0.coeffs.len(), &b.0.coeffs))
        });
        Ok(out)
    }

    /// Least N with f | x^N - 1. Requires a monic f of positive degree with
    /// nonzero constant term. Computed from the factorization: the lcm of
    /// the root orders of the distinct irreducible factors, times the
    /// character p rounded up over the largest multiplicity.
    pub fn poly_order(&self) -> Result<u64> {
        if self.degree().map_or(true, |d| d == 0) {
            return Err(Error::ZeroPolynomial);
        }
        if self.constant_term() == 0 {
            return Err(Error::ZeroConstantTerm);
        }
        let factors = self.factor()?;
        let mut n = 1u64;
        let mut max_mult = 1u32;
        for (g, e) in &factors {
            n = num::lcm(n, irreducible_root_order(g)?);
            max_mult = max_mult.max(*e);
        }
        let p = self.ctx.p;
        let mut cap = 1u64;
        while cap < max_mult as u64 {
            cap *= p;
        }
        if cap > 1 {
            n = n
                .checked_mul(cap)
                .ok_or_else(|| Error::Invalid("order overflow".into()))?;
        }
        Ok(n)
    }
}

/// Order of a root of an irreducible g: the order of x in F_q[x]/(g),
/// computed by stripping primes from q^deg - 1.
fn irreducible_root_order(g: &Poly) -> Result<u64> {
    let q = g.ctx.size;
    let d = g.deg() as u32;
    let total = num::pow_u128(q, d);
    if total > (1u128 << 40) {
        return Err(Error::FieldTooLarge(q, d));
    }
    let group = total as u64 - 1;
    let mut order = group;
    for (r, _) in num::factorize(group) {
        loop {
            if order % r != 0 {
                break;
            }
            let probe = powmod_x(&g.ctx, order / r, &g.coeffs);
            if probe == vec![1] {
                order /= r;
            } else {
                break;
            }
        }
    }
    Ok(order)
}

fn factor_inner(f: &Poly, out: &mut Vec<(Poly, u32)>) -> Result<()> {
    if f.degree().map_or(true, |d| d == 0) {
        return Ok(());
    }
    let ctx = &f.ctx;
    let deriv = f.derivative();
    if deriv.is_zero() {
        // f = r(x)^p where r takes the p-th roots of every p-spaced coefficient
        let p = ctx.p as usize;
        let e = ctx.deg;
        let root_exp = num::pow_u128(ctx.p, e - 1) as u64; // a^(p^(e-1)) = a^(1/p)
        let mut rc = Vec::new();
        let mut i = 0;
        while i < f.coeffs.len() {
            rc.push(ctx.pow(f.coeffs[i], root_exp));
            i += p;
        }
        let r = Poly::new(ctx, rc);
        let mut sub = Vec::new();
        factor_inner(&r, &mut sub)?;
        for (g, m) in sub {
            merge_factor(out, g, m * ctx.p as u32);
        }
        return Ok(());
    }
    // multiplicities: peel the squarefree part, recurse on the rest
    let w = f.gcd(&deriv)?;
    let squarefree = f.div_rem(&w)?.0;
    // distinct-degree on the squarefree part
    let mut sf = squarefree.clone();
    let helper = FrobHelper::new(&sf.clone().into_monic());
    let mut frob_pow = {
        let mut v = vec![0u64, 1];
        remmod(ctx, &mut v, &sf.coeffs);
        v
    };
    let mut d = 0usize;
    let mut found: Vec<Poly> = Vec::new();
    while sf.degree().map_or(false, |dd| dd > 0) {
        d += 1;
        if 2 * d > sf.deg() {
            found.push(sf.clone().into_monic());
            break;
        }
        frob_pow = helper.step(&frob_pow);
        let diff = Poly::new(ctx, frob_pow.clone()).sub(&Poly::x(ctx))?;
        let g = diff.gcd(&sf)?;
        if g.degree().map_or(false, |dd| dd > 0) {
            for piece in equal_degree_split(&g, d)? {
                found.push(piece);
            }
            sf = sf.div_rem(&g)?.0;
        }
    }
    // count multiplicities against the original f
    for g in found {
        let mut m = 0u32;
        let mut rest = f.clone();
        loop {
            let (q, r) = rest.div_rem(&g)?;
            if !r.is_zero() {
                break;
            }
            m += 1;
            rest = q;
        }
        merge_factor(out, g, m);
    }
    Ok(())
}

fn merge_factor(out: &mut Vec<(Poly, u32)>, g: Poly, m: u32) {
    if let Some(slot) = out.iter_mut().find(|(h, _)| *h == g) {
        slot.1 += m;
    } else {
        out.push((g, m));
    }
}

/// Splits a squarefree product of irreducibles of equal degree d.
fn equal_degree_split(h: &Poly, d: usize) -> Result<Vec<Poly>> {
    if h.deg() == d {
        return Ok(vec![h.clone().into_monic()]);
    }
    let ctx = &h.ctx;
    // deterministic generator seeded from the polynomial itself
    let mut seed = 0x9e3779b97f4a7c15u64 ^ (h.deg() as u64);
    for &c in &h.coeffs {
        seed = seed.wrapping_mul(0xbf58476d1ce4e5b9).wrapping_add(c);
    }
    let mut next = move || {
        seed ^= seed << 13;
        seed ^= seed >> 7;
        seed ^= seed << 17;
        seed
    };
    let q = ctx.size;
    loop {
        // random polynomial of degree < deg h
        let rc: Vec<u64> = (0..h.deg()).map(|_| next() % q).collect();
        let r = Poly::new(ctx, rc);
        if r.is_zero() {
            continue;
        }
        let g0 = r.gcd(h)?;
        let split = if g0.degree().map_or(false, |dd| dd > 0 && dd < h.deg()) {
            g0
        } else if ctx.p == 2 {
            // char 2: trace map T(r) = r + r^2 + ... over F_{2^(deg·d)}
            let steps = ctx.deg as usize * d;
            let mut t = r.coeffs.clone();
            remmod(ctx, &mut t, &h.coeffs);
            let mut acc = t.clone();
            let mut cur = t;
            for _ in 1..steps {
                cur = mulmod(ctx, &cur, &cur, &h.coeffs);
                let a = Poly::new(ctx, acc).add(&Poly::new(ctx, cur.clone()))?;
                acc = a.coeffs;
            }
            Poly::new(ctx, acc).gcd(h)?
        } else {
            // odd q: r^((q^d-1)/2) - 1
            let total = num::pow_u128(q, d as u32);
            if total > (1u128 << 40) {
                return Err(Error::FieldTooLarge(q, d as u32));
            }
            let e = (total as u64 - 1) / 2;
            let s = powmod(ctx, &r.coeffs, e, &h.coeffs);
            Poly::new(ctx, s).sub(&Poly::one(ctx))?.gcd(h)?
        };
        if split.degree().map_or(false, |dd| dd > 0 && dd < h.deg()) {
            let rest = h.div_rem(&split)?.0;
            let mut out = equal_degree_split(&split, d)?;
            out.extend(equal_degree_split(&rest, d)?);
            return Ok(out);
        }
    }
}

// ---------------------------------------------------------------------------
// minimal polynomials and the equally-spaced criterion
// ---------------------------------------------------------------------------

/// Minimal polynomial of xi ∈ F_{q^m} over F_q, as a polynomial over the
/// subfield context. Computed from the Frobenius orbit product; every
/// coefficient retracts into the subfield by construction.
pub fn minimal_poly(emb: &Subfield, xi: u64) -> Result<Poly> {
    let sup = &emb.sup;
    let s = emb.sub.deg;
    // Frobenius orbit of xi under x -> x^q
    let mut orbit = vec![xi];
    let mut cur = sup.frob(xi, s);
    while cur != xi {
        orbit.push(cur);
        cur = sup.frob(cur, s);
    }
    // product of (x - root) with coefficients in the big field
    let mut coeffs = vec![1u64]; // monic, ascending later; build as poly over sup
    for &root in &orbit {
        // multiply (current) by (x - root)
        let mut next = vec![0u64; coeffs.len() + 1];
        for (i, &c) in coeffs.iter().enumerate() {
            next[i + 1] = sup.add(next[i + 1], c);
            next[i] = sup.sub(next[i], sup.mul(c, root));
        }
        coeffs = next;
    }
    let mut down = Vec::with_capacity(coeffs.len());
    for &c in &coeffs {
        down.push(emb.retract(c)?);
    }
    Ok(Poly::new(&emb.sub, down))
}

/// Membership check for the prime-condition set attached to (n, q): a prime
/// r qualifies iff r | n and gcd(r, (q^m - 1)/n) = 1 where m is the order
/// of q mod n; k is a member iff all its prime divisors qualify.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpacingCheck {
    pub member: bool,
    /// the least prime divisor of k that fails, when not a member
    pub failing_prime: Option<u64>,
}

pub fn p_set_member(k: u64, n: u64, q: u64) -> Result<SpacingCheck> {
    if k == 0 {
        return Err(Error::Invalid("k must be positive".into()));
    }
    let m = crate::field::mult_order(n, q)?;
    let total = num::pow_u128(q, m as u32);
    if total > (1u128 << 40) {
        return Err(Error::FieldTooLarge(q, m as u32));
    }
    let cofactor = (total as u64 - 1) / n;
    for r in num::prime_divisors(k) {
        if n % r != 0 || num::gcd(r, cofactor) != 1 {
            return Ok(SpacingCheck { member: false, failing_prime: Some(r) });
        }
    }
    Ok(SpacingCheck { member: true, failing_prime: None })
}

/// Does g(x^k) stay irreducible? g must be monic irreducible with nonzero
/// constant term and gcd(nk, q) = 1 for n the order of g. The criterion:
/// k lies in the prime-condition set of (n, q), except that k must not be
/// divisible by 4 when 2 qualifies and n ≡ 2 mod 4.
pub fn spaced_irreducible(g: &Poly, k: u64) -> Result<bool> {
    if g.constant_term() == 0 {
        return Err(Error::ZeroConstantTerm);
    }
    if !g.is_irreducible() {
        return Err(Error::ReducibleInput);
    }
    let n = g.poly_order()?;
    let q = g.ctx.size;
    if num::gcd(n * k, q) != 1 {
        return Err(Error::NotCoprime { n: n * k, q });
    }
    let check = p_set_member(k, n, q)?;
    if !check.member {
        return Ok(false);
    }
    // membership of k with 4 | k forces 2 to qualify, and then n ≡ 2 mod 4
    // obstructs: x^2 + 1 never stays irreducible past the first doubling
    if n % 4 == 2 && k % 4 == 0 {
        return Ok(false);
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::build_field;

    fn f2() -> Art {
        build_field(2, 1, 1, None).unwrap()
    }
    fn f3() -> Art {
        build_field(3, 1, 1, None).unwrap()
    }

    #[test]
    fn divrem_roundtrip() {
        let ctx = f3();
        let a = Poly::new(&ctx, vec![1, 0, 2, 1, 1]);
        let b = Poly::new(&ctx, vec![2, 1, 1]);
        let (q, r) = a.div_rem(&b).unwrap();
        let back = q.mul(&b).unwrap().add(&r).unwrap();
        assert_eq!(back, a);
        assert!(r.degree().map_or(true, |d| d < b.deg()));
    }

    #[test]
    fn gcd_example() {
        // gcd(x^2 - 1, x - 1) over F_3, returned monic as x + 2
        let ctx = f3();
        let a = Poly::new(&ctx, vec![2, 0, 1]);
        let b = Poly::new(&ctx, vec![2, 1]);
        assert_eq!(a.gcd(&b).unwrap(), Poly::new(&ctx, vec![2, 1]));
    }

    #[test]
    fn irreducibility_examples() {
        let c2 = f2();
        assert!(Poly::new(&c2, vec![1, 1, 0, 1]).is_irreducible());
        assert!(!Poly::new(&c2, vec![1, 0, 1]).is_irreducible()); // (x+1)^2
        assert!(Poly::new(&c2, vec![1, 0, 0, 1, 0, 0, 1]).is_irreducible()); // x^6+x^3+1
        let c3 = f3();
        assert!(Poly::new(&c3, vec![1, 0, 1]).is_irreducible()); // x^2+1 over F_3
        assert!(!Poly::new(&c3, vec![1, 0, 0, 0, 1]).is_irreducible()); // x^4+1
    }

    #[test]
    fn factor_x4_plus_1_over_f3() {
        let ctx = f3();
        let f = Poly::new(&ctx, vec![1, 0, 0, 0, 1]);
        let fac = f.factor().unwrap();
        assert_eq!(fac.len(), 2);
        assert_eq!(fac[0].0, Poly::new(&ctx, vec![2, 1, 1]));
        assert_eq!(fac[1].0, Poly::new(&ctx, vec![2, 2, 1]));
        assert!(fac.iter().all(|(_, m)| *m == 1));
    }

    #[test]
    fn factor_with_multiplicities() {
        let ctx = f2();
        // (x+1)^3 (x^2+x+1)
        let xp1 = Poly::new(&ctx, vec![1, 1]);
        let quad = Poly::new(&ctx, vec![1, 1, 1]);
        let f = xp1
            .mul(&xp1)
            .unwrap()
            .mul(&xp1)
            .unwrap()
            .mul(&quad)
            .unwrap();
        let fac = f.factor().unwrap();
        assert_eq!(fac, vec![(xp1, 3), (quad, 1)]);
    }

    #[test]
    fn poly_orders() {
        let c2 = f2();
        assert_eq!(Poly::new(&c2, vec![1, 1, 0, 1]).poly_order().unwrap(), 7);
        // x^21 + x^7 + 1 = g(x^7) for g = x^3+x+1: order multiplies to 49
        let mut coeffs = vec![0u64; 22];
        coeffs[0] = 1;
        coeffs[7] = 1;
        coeffs[21] = 1;
        assert_eq!(Poly::new(&c2, coeffs).poly_order().unwrap(), 49);
        let c3 = f3();
        assert_eq!(Poly::new(&c3, vec![1, 1]).poly_order().unwrap(), 2);
        assert_eq!(Poly::new(&c3, vec![1, 0, 0, 0, 1]).poly_order().unwrap(), 8);
        // repeated factor: (x+1)^2 over F_2 has order 2
        assert_eq!(Poly::new(&c2, vec![1, 0, 1]).poly_order().unwrap(), 2);
        assert!(Poly::new(&c2, vec![0, 1]).poly_order().is_err());
    }

    #[test]
    fn order_multiplies_under_spacing() {
        let c3 = f3();
        let g = Poly::new(&c3, vec![1, 1]); // order 2
        let f = g.compose_spaced(4); // x^4 + 1, reducible, order 8
        assert_eq!(f.poly_order().unwrap(), 4 * g.poly_order().unwrap());
    }

    #[test]
    fn minimal_polys_in_f8() {
        let c2 = f2();
        let f8 = build_field(2, 1, 3, None).unwrap();
        let emb = Subfield::new(&c2, &f8).unwrap();
        let xi = f8.generator();
        assert_eq!(minimal_poly(&emb, xi).unwrap(), Poly::new(&c2, vec![1, 1, 0, 1]));
        let xi3 = f8.pow(xi, 3);
        assert_eq!(
            minimal_poly(&emb, xi3).unwrap(),
            Poly::new(&c2, vec![1, 0, 1, 1])
        );
        assert_eq!(minimal_poly(&emb, 1).unwrap(), Poly::new(&c2, vec![1, 1]));
    }

    #[test]
    fn spacing_set_examples() {
        assert!(p_set_member(3, 3, 2).unwrap().member);
        let miss = p_set_member(2, 3, 2).unwrap();
        assert!(!miss.member);
        assert_eq!(miss.failing_prime, Some(2));
    }

    #[test]
    fn spaced_irreducibility() {
        let c2 = f2();
        let g = Poly::new(&c2, vec![1, 1, 1]); // order 3
        assert!(spaced_irreducible(&g, 3).unwrap());
        assert!(g.compose_spaced(3).is_irreducible());
        // over F_3: x + 1 has order 2; k = 2 works, k = 4 hits the mod-4 rule
        let c3 = f3();
        let h = Poly::new(&c3, vec![1, 1]);
        assert!(spaced_irreducible(&h, 2).unwrap());
        assert!(h.compose_spaced(2).is_irreducible());
        assert!(!spaced_irreducible(&h, 4).unwrap());
        assert!(!h.compose_spaced(4).is_irreducible());
    }

    #[test]
    fn reciprocal_and_scaled_argument() {
        let c2 = f2();
        let g = Poly::new(&c2, vec![1, 1, 0, 1]);
        assert_eq!(g.reciprocal().unwrap(), Poly::new(&c2, vec![1, 0, 1, 1]));
        let f9 = build_field(3, 1, 2, None).unwrap();
        let gam = f9.generator();
        let f = Poly::new(&f9, vec![1, 0, 1]); // x^2 + 1 over F_9
        let scaled = f.scale_argument(gam);
        assert_eq!(scaled.coeff(2), f9.mul(gam, gam));
        assert_eq!(scaled.coeff(0), 1);
    }

    #[test]
    fn text_roundtrip() {
        let c2 = f2();
        let g = Poly::new(&c2, vec![1, 1, 0, 1]);
        assert_eq!(g.text(), "[1,1,0,1]");
        assert_eq!(Poly::parse(&c2, &g.text()).unwrap(), g);
        let f9 = build_field(3, 1, 2, None).unwrap();
        let h = Poly::new(&f9, vec![4, 0, 1]);
        let s = h.text();
        assert_eq!(Poly::parse(&f9, &s).unwrap(), h);
    }
}
