//! Permutations of {0, …, n-1} and stabilizer chains.
//!
//! The chain is a deterministic incremental Schreier–Sims structure: base
//! points are chosen as the smallest moved points, orbits are explored in
//! breadth-first discovery order with generators applied in insertion order,
//! and transversals store coset representatives directly. Determinism
//! matters because group orders and membership answers feed reproducible
//! reports.

use crate::error::{Error, Result};
use crate::num;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Perm {
    images: Vec<u32>,
}

impl std::fmt::Debug for Perm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Perm{:?}", self.images)
    }
}

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm { images: (0..n as u32).collect() }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &j in &images {
            if j as usize >= n || seen[j as usize] {
                return Err(Error::Invalid("not a permutation".into()));
            }
            seen[j as usize] = true;
        }
        Ok(Perm { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    /// self ∘ other: apply `other` first, then `self`.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: other.images.iter().map(|&j| self.images[j as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Perm { images: inv }
    }

    /// Order as a permutation: lcm of cycle lengths.
    pub fn order(&self) -> u64 {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut ord = 1u64;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                cur = self.apply(cur);
                len += 1;
            }
            ord = num::lcm(ord, len);
        }
        ord
    }

    /// Position action on coordinate vectors: output[π(i)] = input[i].
    pub fn act_on_vector<T: Clone>(&self, v: &[T]) -> Vec<T> {
        debug_assert_eq!(self.degree(), v.len());
        let mut out = v.to_vec();
        for (i, x) in v.iter().enumerate() {
            out[self.apply(i)] = x.clone();
        }
        out
    }

    /// Smallest point i with π(i) ≠ i, if any.
    pub fn first_moved(&self) -> Option<usize> {
        self.images
            .iter()
            .enumerate()
            .find(|(i, &j)| *i as u32 != j)
            .map(|(i, _)| i)
    }
}

struct Level {
    base: usize,
    gens: Vec<Perm>,
    /// coset representative u with u(base) = point, per reachable point
    transversal: Vec<Option<Perm>>,
    orbit: Vec<usize>,
}

impl Level {
    fn new(n: usize, base: usize) -> Level {
        let mut transversal = vec![None; n];
        transversal[base] = Some(Perm::identity(n));
        Level { base, gens: Vec::new(), transversal, orbit: vec![base] }
    }

    fn recompute_orbit(&mut self, n: usize) {
        self.transversal = vec![None; n];
        self.transversal[self.base] = Some(Perm::identity(n));
        self.orbit = vec![self.base];
        let mut i = 0;
        while i < self.orbit.len() {
            let pt = self.orbit[i];
            i += 1;
            let rep = self.transversal[pt].clone().unwrap();
            for g in &self.gens {
                let img = g.apply(pt);
                if self.transversal[img].is_none() {
                    self.transversal[img] = Some(g.compose(&rep));
                    self.orbit.push(img);
                }
            }
        }
    }
}

/// Stabilizer chain for the group generated by the permutations pushed so
/// far. Supports membership tests, exact order, and full enumeration for
/// small groups.
pub struct StabChain {
    n: usize,
    levels: Vec<Level>,
    gens: Vec<Perm>,
}

impl StabChain {
    pub fn new(n: usize) -> StabChain {
        StabChain { n, levels: Vec::new(), gens: Vec::new() }
    }

    pub fn from_gens(n: usize, gens: &[Perm]) -> Result<StabChain> {
        let mut chain = StabChain::new(n);
        for g in gens {
            chain.push(g.clone())?;
        }
        Ok(chain)
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    /// The generators pushed so far (not the strong generating set).
    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    /// Sift g through the chain starting at `from`; returns the level where
    /// reduction stuck and the residue.
    fn strip(&self, g: &Perm, from: usize) -> (usize, Perm) {
        let mut h = g.clone();
        for (idx, level) in self.levels.iter().enumerate().skip(from) {
            let img = h.apply(level.base);
            match &level.transversal[img] {
                Some(u) => h = u.inverse().compose(&h),
                None => return (idx, h),
            }
        }
        (self.levels.len(), h)
    }

    pub fn contains(&self, g: &Perm) -> bool {
        if g.degree() != self.n {
            return false;
        }
        let (lvl, residue) = self.strip(g, 0);
        lvl == self.levels.len() && residue.is_identity()
    }

    /// Add a generator; returns true if the group grew.
    pub fn push(&mut self, g: Perm) -> Result<bool> {
        if g.degree() != self.n {
            return Err(Error::Invalid("degree mismatch".into()));
        }
        if self.contains(&g) {
            return Ok(false);
        }
        self.gens.push(g.clone());
        self.insert(g, 0);
        Ok(true)
    }

    fn insert(&mut self, g: Perm, start: usize) {
        let (lvl, residue) = self.strip(&g, start);
        if lvl == self.levels.len() {
            if residue.is_identity() {
                return;
            }
            let base = residue.first_moved().unwrap();
            self.levels.push(Level::new(self.n, base));
        }
        // the residue fixes the bases of every level before lvl, so it is a
        // legitimate generator at each level from start through lvl, and the
        // shallow levels need it for their orbits to reach full size
        for i in start..=lvl {
            self.levels[i].gens.push(residue.clone());
            self.levels[i].recompute_orbit(self.n);
        }
        for i in start..=lvl {
            self.close_level(i);
        }
    }

    /// Every Schreier generator of the level must sift to identity in the
    /// chain below; push the ones that do not.
    fn close_level(&mut self, lvl: usize) {
        let mut pending = Vec::new();
        {
            let level = &self.levels[lvl];
            for &pt in &level.orbit {
                let u = level.transversal[pt].as_ref().unwrap();
                for s in &level.gens {
                    let rep_img = level.transversal[s.apply(pt)].as_ref().unwrap();
                    let schreier = rep_img.inverse().compose(&s.compose(u));
                    if !schreier.is_identity() {
                        pending.push(schreier);
                    }
                }
            }
        }
        for h in pending {
            let (l2, r2) = self.strip(&h, lvl + 1);
            if l2 < self.levels.len() || !r2.is_identity() {
                self.insert(h, lvl + 1);
            }
        }
    }

    pub fn order(&self) -> u128 {
        self.levels
            .iter()
            .map(|l| l.orbit.len() as u128)
            .product()
    }

    /// All group elements, enumerated deterministically. Errors when the
    /// order exceeds the cap (4 million) to keep memory bounded.
    pub fn elements(&self) -> Result<Vec<Perm>> {
        const CAP: u128 = 1 << 22;
        let order = self.order();
        if order > CAP {
            return Err(Error::TooLarge(order.min(u64::MAX as u128) as u64));
        }
        let mut out = vec![Perm::identity(self.n)];
        for level in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * level.orbit.len());
            for &pt in &level.orbit {
                let u = level.transversal[pt].as_ref().unwrap();
                for h in &out {
                    next.push(u.compose(h));
                }
            }
            out = next;
        }
        Ok(out)
    }
}

/// The permutation image of the maps x ↦ c x^(q^j) on the cyclic group of
/// order n written in exponent coordinates: generated by i ↦ i+1 and
/// i ↦ q·i mod n.
pub fn standard_group(n: u64, q: u64) -> Result<StabChain> {
    if num::gcd(n, q) != 1 {
        return Err(Error::NotCoprime { n, q });
    }
    let nn = n as usize;
    let rot = Perm::from_images((0..nn).map(|i| ((i + 1) % nn) as u32).collect())?;
    let mult = Perm::from_images((0..nn).map(|i| (i as u64 * q % n) as u32).collect())?;
    StabChain::from_gens(nn, &[rot, mult])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_applies_right_factor_first() {
        let p = Perm::from_images(vec![1, 0, 2]).unwrap();
        let r = Perm::from_images(vec![0, 2, 1]).unwrap();
        let pr = p.compose(&r);
        assert_eq!(pr.images(), &[1, 2, 0]);
    }

    #[test]
    fn inverse_and_order() {
        let c = Perm::from_images(vec![1, 2, 3, 4, 0]).unwrap();
        assert_eq!(c.order(), 5);
        assert!(c.compose(&c.inverse()).is_identity());
        let two_cycles = Perm::from_images(vec![1, 0, 3, 4, 2]).unwrap();
        assert_eq!(two_cycles.order(), 6);
    }

    #[test]
    fn vector_action_rotates() {
        let rot = Perm::from_images(vec![1, 2, 0]).unwrap();
        let v = vec!['a', 'b', 'c'];
        assert_eq!(rot.act_on_vector(&v), vec!['c', 'a', 'b']);
    }

    #[test]
    fn symmetric_group_orders() {
        let s5 = StabChain::from_gens(
            5,
            &[
                Perm::from_images(vec![1, 0, 2, 3, 4]).unwrap(),
                Perm::from_images(vec![1, 2, 3, 4, 0]).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(s5.order(), 120);
        let s7 = StabChain::from_gens(
            7,
            &[
                Perm::from_images(vec![1, 0, 2, 3, 4, 5, 6]).unwrap(),
                Perm::from_images(vec![1, 2, 3, 4, 5, 6, 0]).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(s7.order(), 5040);
    }

    #[test]
    fn dihedral_and_membership() {
        let n = 7;
        let rot = Perm::from_images((0..n).map(|i| ((i + 1) % n) as u32).collect()).unwrap();
        let refl = Perm::from_images((0..n).map(|i| ((n - i) % n) as u32).collect()).unwrap();
        let d7 = StabChain::from_gens(n, &[rot.clone(), refl.clone()]).unwrap();
        assert_eq!(d7.order(), 14);
        assert!(d7.contains(&rot.compose(&refl)));
        let three_cycle = Perm::from_images(vec![1, 2, 0, 3, 4, 5, 6]).unwrap();
        assert!(!d7.contains(&three_cycle));
    }

    #[test]
    fn enumeration_matches_order() {
        let c6 = StabChain::from_gens(
            6,
            &[Perm::from_images(vec![1, 2, 3, 4, 5, 0]).unwrap()],
        )
        .unwrap();
        let els = c6.elements().unwrap();
        assert_eq!(els.len(), 6);
        let mut unique = els.clone();
        unique.sort_by(|a, b| a.images().cmp(b.images()));
        unique.dedup();
        assert_eq!(unique.len(), 6);
    }

    #[test]
    fn multiplier_rotation_group_orders() {
        assert_eq!(standard_group(23, 2).unwrap().order(), 253);
        assert_eq!(standard_group(8, 3).unwrap().order(), 16);
        assert_eq!(standard_group(7, 2).unwrap().order(), 21);
        assert_eq!(standard_group(12, 7).unwrap().order(), 24);
    }

    #[test]
    fn push_reports_growth() {
        let mut chain = StabChain::new(4);
        let swap = Perm::from_images(vec![1, 0, 2, 3]).unwrap();
        assert!(chain.push(swap.clone()).unwrap());
        assert!(!chain.push(swap).unwrap());
        assert_eq!(chain.order(), 2);
    }
}
