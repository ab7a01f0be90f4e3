//! F_q-linear maps on F_{q^m} written as q-polynomials.
//!
//! A map is stored by its coefficients (L_0, …, L_{m-1}) in F_{q^m}, acting
//! as L(x) = Σ L_i x^(q^i). Composition convolves coefficients with a
//! Frobenius twist, inversion goes through the F_p matrix of the map, and
//! the exponent-coordinate permutation on a roots-of-unity group is
//! extracted against an explicit group table so that callers control which
//! ξ indexes the group.

use crate::context::UnityTable;
use crate::error::{Error, Result};
use crate::field::Art;
use crate::linalg;
use crate::perm::Perm;
use crate::poly;

#[derive(Clone)]
pub struct QLinearMap {
    top: Art,
    /// prime-field degree of F_q inside the top context
    s: u32,
    /// q-polynomial coefficients, length m
    pub coeffs: Vec<u64>,
}

impl PartialEq for QLinearMap {
    fn eq(&self, other: &Self) -> bool {
        self.top.id() == other.top.id() && self.s == other.s && self.coeffs == other.coeffs
    }
}
impl Eq for QLinearMap {}

impl std::fmt::Debug for QLinearMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "QLinearMap{:?}", self.coeffs)
    }
}

impl QLinearMap {
    pub fn new(top: &Art, s: u32, mut coeffs: Vec<u64>) -> Result<QLinearMap> {
        if s == 0 || top.deg % s != 0 {
            return Err(Error::ContextMismatch);
        }
        let m = (top.deg / s) as usize;
        if coeffs.len() > m {
            return Err(Error::DegreeMismatch(coeffs.len(), m));
        }
        coeffs.resize(m, 0);
        if coeffs.iter().any(|&c| c >= top.size) {
            return Err(Error::Invalid("coefficient out of range".into()));
        }
        Ok(QLinearMap { top: top.clone(), s, coeffs })
    }

    /// x ↦ c x^(q^j)
    pub fn monomial(top: &Art, s: u32, c: u64, j: u32) -> Result<QLinearMap> {
        if s == 0 || top.deg % s != 0 {
            return Err(Error::ContextMismatch);
        }
        let m = top.deg / s;
        let mut coeffs = vec![0u64; m as usize];
        coeffs[(j % m) as usize] = c;
        QLinearMap::new(top, s, coeffs)
    }

    pub fn identity(top: &Art, s: u32) -> Result<QLinearMap> {
        QLinearMap::monomial(top, s, 1, 0)
    }

    pub fn m(&self) -> usize {
        self.coeffs.len()
    }

    pub fn top(&self) -> &Art {
        &self.top
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn subfield_degree(&self) -> u32 {
        self.s
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Exactly one nonzero coefficient: the always-available kind of map.
    pub fn is_monomial(&self) -> bool {
        self.coeffs.iter().filter(|&&c| c != 0).count() == 1
    }

    pub fn eval(&self, x: u64) -> u64 {
        let mut acc = 0u64;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let xq = self.top.frob(x, self.s * i as u32);
            acc = self.top.add(acc, self.top.mul(c, xq));
        }
        acc
    }

    /// self ∘ other: x ↦ self(other(x)).
    pub fn compose(&self, other: &QLinearMap) -> Result<QLinearMap> {
        if self.top.id() != other.top.id() || self.s != other.s {
            return Err(Error::ContextMismatch);
        }
        let m = self.m();
        let mut out = vec![0u64; m];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let k = (i + j) % m;
                let tw = self.top.frob(b, self.s * i as u32);
                out[k] = self.top.add(out[k], self.top.mul(a, tw));
            }
        }
        QLinearMap::new(&self.top, self.s, out)
    }

    pub fn add(&self, other: &QLinearMap) -> Result<QLinearMap> {
        if self.top.id() != other.top.id() || self.s != other.s {
            return Err(Error::ContextMismatch);
        }
        let out = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| self.top.add(a, b))
            .collect();
        QLinearMap::new(&self.top, self.s, out)
    }

    pub fn scale(&self, c: u64) -> Result<QLinearMap> {
        let out = self.coeffs.iter().map(|&a| self.top.mul(a, c)).collect();
        QLinearMap::new(&self.top, self.s, out)
    }

    /// The matrix of the map over the prime field, columns indexed by the
    /// power basis of the top context.
    pub fn prime_matrix(&self) -> Vec<Vec<u64>> {
        let n = self.top.deg as usize;
        let mut cols = Vec::with_capacity(n);
        let mut basis = 1u64;
        let gamma = self.top.generator();
        for _ in 0..n {
            cols.push(self.top.coords(self.eval(basis)));
            basis = self.top.mul(basis, gamma);
        }
        // transpose columns into rows
        let mut rows = vec![vec![0u64; n]; n];
        for (j, col) in cols.iter().enumerate() {
            for (i, &v) in col.iter().enumerate() {
                rows[i][j] = v;
            }
        }
        rows
    }

    pub fn is_bijective(&self) -> bool {
        linalg::invert(&self.prime_matrix(), self.top.p).is_some()
    }

    /// Recover the unique map with the given images on the F_q-basis
    /// (1, γ, …, γ^(m-1)) of the top context, γ its multiplicative
    /// generator.
    pub fn from_basis_images(top: &Art, s: u32, images: &[u64]) -> Result<QLinearMap> {
        if s == 0 || top.deg % s != 0 {
            return Err(Error::ContextMismatch);
        }
        let m = (top.deg / s) as usize;
        if images.len() != m {
            return Err(Error::DegreeMismatch(images.len(), m));
        }
        let gamma = top.generator();
        // rows: Σ_i c_i (γ^j)^(q^i) = images[j]
        let mut mat = vec![vec![0u64; m]; m];
        let mut gj = 1u64;
        for j in 0..m {
            for i in 0..m {
                mat[j][i] = top.frob(gj, s * i as u32);
            }
            gj = top.mul(gj, gamma);
        }
        let sol = linalg::solve_square_in(top, &mat, images).ok_or(Error::SingularSystem)?;
        QLinearMap::new(top, s, sol)
    }

    /// Inverse map, when bijective.
    pub fn invert(&self) -> Result<QLinearMap> {
        let mat = self.prime_matrix();
        let inv = linalg::invert(&mat, self.top.p).ok_or(Error::SingularMap)?;
        let m = self.m();
        let gamma = self.top.generator();
        let mut images = Vec::with_capacity(m);
        let mut gj = 1u64;
        for _ in 0..m {
            let coords = self.top.coords(gj);
            let img = linalg::mat_vec(&inv, &coords, self.top.p);
            images.push(self.top.from_coords(&img));
            gj = self.top.mul(gj, gamma);
        }
        QLinearMap::from_basis_images(&self.top, self.s, &images)
    }

    /// Does the map carry the group of the table onto itself?
    pub fn permutes(&self, table: &UnityTable) -> bool {
        let mut seen = vec![false; table.n as usize];
        for &u in &table.powers {
            match table.index_of(self.eval(u)) {
                Some(i) => {
                    if seen[i as usize] {
                        return false;
                    }
                    seen[i as usize] = true;
                }
                None => return false,
            }
        }
        true
    }

    /// Exponent-coordinate permutation: position i holds the index of
    /// L(ξ^i) in base ξ. Errors with the first escaping element if the map
    /// does not keep the group inside itself.
    pub fn to_perm(&self, table: &UnityTable) -> Result<Perm> {
        let mut images = Vec::with_capacity(table.n as usize);
        for &u in &table.powers {
            let y = self.eval(u);
            match table.index_of(y) {
                Some(i) => images.push(i as u32),
                None => return Err(Error::NotFixing(y)),
            }
        }
        Perm::from_images(images)
    }

    pub fn coeffs_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.coeffs
                .iter()
                .map(|&c| poly::element_to_json(&self.top, c))
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::PairContext;
    use crate::field::build_field;

    #[test]
    fn monomial_eval() {
        let f9 = build_field(3, 1, 2, None).unwrap();
        let g = f9.generator();
        let l = QLinearMap::monomial(&f9, 1, g, 1).unwrap();
        for x in 0..9u64 {
            assert_eq!(l.eval(x), f9.mul(g, f9.frob(x, 1)));
        }
    }

    #[test]
    fn compose_matches_pointwise() {
        let f8 = build_field(2, 1, 3, None).unwrap();
        let a = QLinearMap::new(&f8, 1, vec![3, 1, 0]).unwrap();
        let b = QLinearMap::new(&f8, 1, vec![5, 0, 2]).unwrap();
        let ab = a.compose(&b).unwrap();
        for x in 0..8u64 {
            assert_eq!(ab.eval(x), a.eval(b.eval(x)));
        }
    }

    #[test]
    fn compose_respects_subfield_twist() {
        // over F_9 with q = 3: the twist exponent is the subfield degree
        let pc = PairContext::new(8, 3).unwrap();
        let top = &pc.top;
        let a = QLinearMap::new(top, 1, vec![pc.xi(), 4]).unwrap();
        let b = QLinearMap::new(top, 1, vec![7, 2]).unwrap();
        let ab = a.compose(&b).unwrap();
        for x in 0..9u64 {
            assert_eq!(ab.eval(x), a.eval(b.eval(x)));
        }
    }

    #[test]
    fn invert_roundtrip() {
        let f9 = build_field(3, 1, 2, None).unwrap();
        let g = f9.generator();
        let l = QLinearMap::new(&f9, 1, vec![g, 2]).unwrap();
        assert!(l.is_bijective());
        let li = l.invert().unwrap();
        for x in 0..9u64 {
            assert_eq!(li.eval(l.eval(x)), x);
            assert_eq!(l.eval(li.eval(x)), x);
        }
    }

    #[test]
    fn singular_map_rejected() {
        // x + x^2 on F_4 kills the prime subfield
        let f4 = build_field(2, 1, 2, None).unwrap();
        let l = QLinearMap::new(&f4, 1, vec![1, 1]).unwrap();
        assert!(!l.is_bijective());
        assert!(matches!(l.invert(), Err(Error::SingularMap)));
    }

    #[test]
    fn basis_images_roundtrip() {
        let f8 = build_field(2, 1, 3, None).unwrap();
        let l = QLinearMap::new(&f8, 1, vec![6, 2, 3]).unwrap();
        let g = f8.generator();
        let images = vec![l.eval(1), l.eval(g), l.eval(f8.mul(g, g))];
        let back = QLinearMap::from_basis_images(&f8, 1, &images).unwrap();
        assert_eq!(back, l);
    }

    #[test]
    fn unity_permutation() {
        let pc = PairContext::new(8, 3).unwrap();
        // multiplication by ξ rotates exponents
        let rot = QLinearMap::monomial(&pc.top, 1, pc.xi(), 0).unwrap();
        let p = rot.to_perm(&pc.unity).unwrap();
        for i in 0..8usize {
            assert_eq!(p.apply(i), (i + 1) % 8);
        }
        // Frobenius multiplies exponents by q
        let fr = QLinearMap::monomial(&pc.top, 1, 1, 1).unwrap();
        let pf = fr.to_perm(&pc.unity).unwrap();
        for i in 0..8usize {
            assert_eq!(pf.apply(i), (3 * i) % 8);
        }
        assert!(rot.permutes(&pc.unity));
    }

    #[test]
    fn escaping_map_detected() {
        let pc = PairContext::new(4, 3).unwrap();
        // U_4 inside F_9 is not stable under multiplication by γ
        let g = pc.top.generator();
        let l = QLinearMap::monomial(&pc.top, 1, g, 0).unwrap();
        assert!(!l.permutes(&pc.unity));
        assert!(matches!(l.to_perm(&pc.unity), Err(Error::NotFixing(_))));
    }
}
