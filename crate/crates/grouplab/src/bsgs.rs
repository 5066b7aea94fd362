//! Deterministic Schreier-Sims stabilizer chains.
//!
//! The chain is generic over [`ChainElement`] so the same machinery runs on
//! plain permutations and on action/source pairs (used for homomorphism
//! kernels). Determinism guarantees, relied on by everything downstream:
//! base points are always the smallest point moved by the level's generators,
//! orbits are extended in BFS order with generators in list order, and
//! existing transversal entries are never overwritten. Identical generator
//! lists therefore produce identical chains.

use crate::error::{Error, Result};
use crate::perm::Perm;
use num_bigint::BigUint;
use num_traits::One;
use std::collections::HashSet;

/// Group element living on a finite point set, enough to drive a chain.
pub trait ChainElement: Clone + Eq + std::hash::Hash {
    fn degree(&self) -> usize;
    fn image(&self, point: usize) -> usize;
    /// self then other.
    fn compose(&self, other: &Self) -> Self;
    fn inverse(&self) -> Self;
    fn is_identity(&self) -> bool;
    fn smallest_moved_point(&self) -> Option<usize>;
}

impl ChainElement for Perm {
    fn degree(&self) -> usize {
        Perm::degree(self)
    }
    fn image(&self, point: usize) -> usize {
        self.apply(point)
    }
    fn compose(&self, other: &Self) -> Self {
        Perm::compose(self, other)
    }
    fn inverse(&self) -> Self {
        Perm::inverse(self)
    }
    fn is_identity(&self) -> bool {
        Perm::is_identity(self)
    }
    fn smallest_moved_point(&self) -> Option<usize> {
        Perm::smallest_moved_point(self)
    }
}

#[derive(Clone)]
pub(crate) struct Level<E> {
    pub(crate) point: usize,
    pub(crate) gens: Vec<E>,
    /// Orbit of `point` under `gens`, in discovery order.
    pub(crate) orbit: Vec<usize>,
    /// `transversal[p]` maps `point` to p; `None` outside the orbit.
    pub(crate) transversal: Vec<Option<E>>,
    /// (orbit index, gen index) pairs whose Schreier generator already
    /// sifted to the identity. Stays valid because orbit prefixes and
    /// transversal entries are never rewritten.
    checked: HashSet<(u32, u32)>,
}

impl<E: ChainElement> Level<E> {
    fn new(point: usize, degree: usize, identity: &E) -> Level<E> {
        let mut transversal: Vec<Option<E>> = vec![None; degree];
        transversal[point] = Some(identity.clone());
        Level {
            point,
            gens: Vec::new(),
            orbit: vec![point],
            transversal,
            checked: HashSet::new(),
        }
    }

    /// Continues the orbit BFS with the current generator list. Existing
    /// entries are kept, so transversal representatives are stable.
    fn extend_orbit(&mut self) {
        let mut qi = 0;
        while qi < self.orbit.len() {
            let p = self.orbit[qi];
            qi += 1;
            let rep = self.transversal[p].clone().expect("orbit point has rep");
            for s in &self.gens {
                let q = s.image(p);
                if self.transversal[q].is_none() {
                    self.transversal[q] = Some(rep.compose(s));
                    self.orbit.push(q);
                }
            }
        }
    }
}

#[derive(Clone)]
pub struct Chain<E> {
    identity: E,
    degree: usize,
    pub(crate) levels: Vec<Level<E>>,
}

impl<E: ChainElement> Chain<E> {
    pub fn new(identity: E, gens: &[E]) -> Chain<E> {
        let degree = identity.degree();
        let mut chain = Chain {
            identity,
            degree,
            levels: Vec::new(),
        };
        for g in gens {
            chain.add_generator(g.clone());
        }
        chain
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn identity(&self) -> &E {
        &self.identity
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.point).collect()
    }

    pub fn order(&self) -> BigUint {
        let mut ord = BigUint::one();
        for level in &self.levels {
            ord *= BigUint::from(level.orbit.len());
        }
        ord
    }

    /// Sifts g through levels `from..`, returning the level where it stuck
    /// (== levels.len() if it passed everything) and the residue.
    fn sift_from(&self, from: usize, g: E) -> (usize, E) {
        let mut cur = g;
        for l in from..self.levels.len() {
            if cur.is_identity() {
                return (l, cur);
            }
            let level = &self.levels[l];
            let p = cur.image(level.point);
            match &level.transversal[p] {
                None => return (l, cur),
                Some(t) => cur = cur.compose(&t.inverse()),
            }
        }
        (self.levels.len(), cur)
    }

    pub fn contains(&self, g: &E) -> bool {
        let (_, residue) = self.sift_from(0, g.clone());
        residue.is_identity()
    }

    /// Adds a generator, extending and re-closing the chain as needed.
    pub fn add_generator(&mut self, g: E) {
        debug_assert_eq!(g.degree(), self.degree);
        let (lev, residue) = self.sift_from(0, g);
        if residue.is_identity() {
            return;
        }
        if lev == self.levels.len() {
            let point = residue
                .smallest_moved_point()
                .expect("non-identity residue moves a point");
            self.levels.push(Level::new(point, self.degree, &self.identity));
        }
        let lev = lev.min(self.levels.len() - 1);
        for k in 0..=lev {
            self.levels[k].gens.push(residue.clone());
        }
        for k in (0..=lev).rev() {
            self.close_level(k);
        }
    }

    /// Verifies every unprocessed Schreier generator of level l, pushing
    /// non-trivial residues further down and re-closing beneath. On return,
    /// levels l.. form a genuine stabilizer chain for the group generated by
    /// level l's generators.
    fn close_level(&mut self, l: usize) {
        self.levels[l].extend_orbit();
        let mut oi = 0;
        while oi < self.levels[l].orbit.len() {
            let mut gi = 0;
            while gi < self.levels[l].gens.len() {
                let key = (oi as u32, gi as u32);
                if self.levels[l].checked.contains(&key) {
                    gi += 1;
                    continue;
                }
                let level = &self.levels[l];
                let p = level.orbit[oi];
                let t_p = level.transversal[p].clone().expect("orbit rep");
                let s = level.gens[gi].clone();
                let q = s.image(p);
                let t_q = level.transversal[q].clone().expect("orbit closed");
                let schreier = t_p.compose(&s).compose(&t_q.inverse());
                if !schreier.is_identity() {
                    let (lev, residue) = self.sift_from(l + 1, schreier);
                    if !residue.is_identity() {
                        if lev == self.levels.len() {
                            let point = residue
                                .smallest_moved_point()
                                .expect("non-identity residue moves a point");
                            self.levels
                                .push(Level::new(point, self.degree, &self.identity));
                        }
                        let lev = lev.min(self.levels.len() - 1);
                        for k in (l + 1)..=lev {
                            self.levels[k].gens.push(residue.clone());
                        }
                        for k in ((l + 1)..=lev).rev() {
                            self.close_level(k);
                        }
                    }
                }
                self.levels[l].checked.insert(key);
                gi += 1;
            }
            oi += 1;
        }
    }

    pub fn num_levels(&self) -> usize {
        self.levels.len()
    }

    /// All elements in a fixed deterministic order (transversal products,
    /// orbits scanned sorted). Errors when the order exceeds `cap`.
    pub fn elements_capped(&self, cap: u64) -> Result<Vec<E>> {
        let order = self.order();
        if order > BigUint::from(cap) {
            return Err(Error::OrderExceedsCap { order, cap });
        }
        let mut out = vec![self.identity.clone()];
        for level in self.levels.iter().rev() {
            let mut points: Vec<usize> = level.orbit.clone();
            points.sort_unstable();
            let mut next = Vec::with_capacity(out.len() * points.len());
            for p in points {
                let t = level.transversal[p].clone().expect("orbit rep");
                for deep in &out {
                    next.push(deep.compose(&t));
                }
            }
            out = next;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain_of(degree: usize, gens: &[&str]) -> Chain<Perm> {
        let gens: Vec<Perm> = gens
            .iter()
            .map(|s| Perm::parse_cycles(degree, s).unwrap())
            .collect();
        Chain::new(Perm::identity(degree), &gens)
    }

    #[test]
    fn symmetric_and_alternating_orders() {
        assert_eq!(chain_of(4, &["(1,2)", "(1,2,3,4)"]).order(), 24u32.into());
        assert_eq!(chain_of(4, &["(1,2,3)", "(2,3,4)"]).order(), 12u32.into());
        assert_eq!(
            chain_of(5, &["(1,2)", "(1,2,3,4,5)"]).order(),
            120u32.into()
        );
        assert_eq!(chain_of(6, &["(1,2,3)"]).order(), 3u32.into());
        assert_eq!(chain_of(3, &[]).order(), 1u32.into());
    }

    #[test]
    fn membership_by_sifting() {
        let chain = chain_of(4, &["(1,2,3)", "(2,3,4)"]); // A4
        assert!(chain.contains(&Perm::parse_cycles(4, "(1,2)(3,4)").unwrap()));
        assert!(chain.contains(&Perm::identity(4)));
        assert!(!chain.contains(&Perm::parse_cycles(4, "(1,2)").unwrap()));
        assert!(!chain.contains(&Perm::parse_cycles(4, "(1,2,3,4)").unwrap()));
    }

    #[test]
    fn base_starts_at_smallest_moved_point() {
        let chain = chain_of(6, &["(2,3)", "(2,3,4,5,6)"]);
        assert_eq!(chain.base()[0], 1); // point 2 in 1-based input
    }

    #[test]
    fn elements_match_order_and_are_distinct() {
        let chain = chain_of(4, &["(1,2)", "(1,2,3,4)"]);
        let elems = chain.elements_capped(1000).unwrap();
        assert_eq!(elems.len(), 24);
        let set: std::collections::HashSet<_> = elems.iter().cloned().collect();
        assert_eq!(set.len(), 24);
        for e in &elems {
            assert!(chain.contains(e));
        }
    }

    #[test]
    fn elements_capped_rejects_large_orders() {
        let chain = chain_of(5, &["(1,2)", "(1,2,3,4,5)"]);
        assert!(matches!(
            chain.elements_capped(100),
            Err(Error::OrderExceedsCap { .. })
        ));
    }

    #[test]
    fn incremental_generators_equal_batch() {
        let gens: Vec<Perm> = ["(1,2)", "(1,3)", "(1,4)"]
            .iter()
            .map(|s| Perm::parse_cycles(4, s).unwrap())
            .collect();
        let batch = Chain::new(Perm::identity(4), &gens);
        let mut inc = Chain::new(Perm::identity(4), &[]);
        for g in &gens {
            inc.add_generator(g.clone());
        }
        assert_eq!(batch.order(), inc.order());
        assert_eq!(batch.order(), 24u32.into());
    }
}
