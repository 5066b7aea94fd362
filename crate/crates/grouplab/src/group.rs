//! Permutation groups and coset-action homomorphisms.
//!
//! `PermGroup` couples a generator list with its stabilizer chain; all
//! derived data (order, membership, element enumeration) comes from the
//! chain. `coset_action` builds the action of G on the right cosets of a
//! subgroup H; cosets are identified by a canonical representative (the
//! element of Hx minimizing the image tuple along H's base), so coset
//! discovery never compares element sets. Kernels come from an
//! action-priority Schreier-Sims over (action, source) pairs: levels are
//! keyed on action points only, and residues that act trivially drop into a
//! plain chain on the source side, which on completion is exactly the
//! kernel.

use crate::bsgs::Chain;
use crate::error::{Error, Result};
use crate::perm::Perm;
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use std::collections::{HashMap, HashSet};
use std::sync::Arc;

pub struct PermGroup {
    degree: usize,
    gens: Vec<Perm>,
    chain: Chain<Perm>,
    order: BigUint,
}

impl PermGroup {
    /// Builds a group from generators; exact duplicates and identities are
    /// dropped from the stored list (a trivial group keeps an empty list).
    pub fn from_generators(degree: usize, gens: Vec<Perm>) -> Result<PermGroup> {
        let mut kept: Vec<Perm> = Vec::new();
        for g in gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch(degree, g.degree()));
            }
            if !g.is_identity() && !kept.contains(&g) {
                kept.push(g);
            }
        }
        let chain = Chain::new(Perm::identity(degree), &kept);
        let order = chain.order();
        Ok(PermGroup {
            degree,
            gens: kept,
            chain,
            order,
        })
    }

    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup::from_generators(degree, Vec::new()).expect("trivial group")
    }

    /// Convenience constructor from 1-based cycle strings.
    pub fn from_cycle_strs(degree: usize, gens: &[&str]) -> Result<PermGroup> {
        let gens = gens
            .iter()
            .map(|s| Perm::parse_cycles(degree, s))
            .collect::<Result<Vec<_>>>()?;
        PermGroup::from_generators(degree, gens)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    pub fn order_u64(&self) -> Option<u64> {
        self.order.to_u64()
    }

    pub fn order_u128(&self) -> Option<u128> {
        self.order.to_u128()
    }

    pub fn is_trivial(&self) -> bool {
        self.order == BigUint::from(1u32)
    }

    pub fn contains(&self, g: &Perm) -> bool {
        g.degree() == self.degree && self.chain.contains(g)
    }

    pub fn contains_all(&self, gens: &[Perm]) -> bool {
        gens.iter().all(|g| self.contains(g))
    }

    /// True when every generator pair commutes.
    pub fn is_abelian(&self) -> bool {
        for (i, a) in self.gens.iter().enumerate() {
            for b in &self.gens[i + 1..] {
                if a.compose(b) != b.compose(a) {
                    return false;
                }
            }
        }
        true
    }

    pub fn base(&self) -> Vec<usize> {
        self.chain.base()
    }

    /// All elements, deterministic order. Errors if the order exceeds `cap`.
    pub fn elements(&self, cap: u64) -> Result<Vec<Perm>> {
        self.chain.elements_capped(cap)
    }

    pub(crate) fn chain(&self) -> &Chain<Perm> {
        &self.chain
    }
}

impl std::fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "PermGroup(degree={}, order={}, gens={})",
            self.degree,
            self.order,
            self.gens.len()
        )
    }
}

pub type Group = Arc<PermGroup>;

/// Orbit of `start` under the generators, in BFS discovery order.
pub fn orbit_of(start: usize, gens: &[Perm]) -> Vec<usize> {
    let degree = gens.first().map_or(start + 1, |g| g.degree());
    let mut seen = vec![false; degree.max(start + 1)];
    let mut orbit = vec![start];
    seen[start] = true;
    let mut qi = 0;
    while qi < orbit.len() {
        let p = orbit[qi];
        qi += 1;
        for g in gens {
            let q = g.apply(p);
            if !seen[q] {
                seen[q] = true;
                orbit.push(q);
            }
        }
    }
    orbit
}

/// True when conjugating every generator of `inner` by every generator of
/// `outer` stays inside `inner` (which for finite groups gives normality of
/// ⟨inner⟩ under ⟨outer⟩).
pub fn normalizes(outer_gens: &[Perm], inner: &PermGroup) -> bool {
    outer_gens
        .iter()
        .all(|g| inner.generators().iter().all(|h| inner.contains(&h.conjugate_by(g))))
}

/// The canonical representative of the right coset H·x: the element of the
/// coset whose image tuple along H's base is lexicographically minimal.
/// Equal cosets, and only equal cosets, share their representative.
pub(crate) fn canonical_coset_rep(h: &PermGroup, x: &Perm) -> Perm {
    let mut y = x.clone();
    for level in &h.chain.levels {
        let v_star = level
            .orbit
            .iter()
            .copied()
            .min_by_key(|&v| y.apply(v))
            .expect("orbit non-empty");
        if v_star != level.point {
            let t = level.transversal[v_star].as_ref().expect("orbit rep");
            y = t.compose(&y);
        }
    }
    y
}

/// (action, source) pair carried through the action-priority sift.
#[derive(Clone)]
struct PairPerm {
    act: Perm,
    src: Perm,
}

impl PairPerm {
    fn compose(&self, other: &Self) -> Self {
        PairPerm {
            act: self.act.compose(&other.act),
            src: self.src.compose(&other.src),
        }
    }
    fn inverse(&self) -> Self {
        PairPerm {
            act: self.act.inverse(),
            src: self.src.inverse(),
        }
    }
}

struct PairLevel {
    /// An action point.
    point: usize,
    gens: Vec<PairPerm>,
    /// Orbit of `point` in the action domain, in discovery order.
    orbit: Vec<usize>,
    /// `transversal[p]` maps `point` to p in the action part.
    transversal: Vec<Option<PairPerm>>,
    /// (orbit index, gen index) pairs already verified; stays valid because
    /// orbit prefixes and transversal entries are never rewritten and the
    /// kernel chain only grows.
    checked: HashSet<(u32, u32)>,
}

impl PairLevel {
    fn new(point: usize, act_degree: usize, identity: &PairPerm) -> PairLevel {
        let mut transversal: Vec<Option<PairPerm>> = vec![None; act_degree];
        transversal[point] = Some(identity.clone());
        PairLevel {
            point,
            gens: Vec::new(),
            orbit: vec![point],
            transversal,
            checked: HashSet::new(),
        }
    }

    fn extend_orbit(&mut self) {
        let mut qi = 0;
        while qi < self.orbit.len() {
            let p = self.orbit[qi];
            qi += 1;
            let rep = self.transversal[p].clone().expect("orbit point has rep");
            for s in &self.gens {
                let q = s.act.apply(p);
                if self.transversal[q].is_none() {
                    self.transversal[q] = Some(rep.compose(s));
                    self.orbit.push(q);
                }
            }
        }
    }
}

/// Schreier-Sims over (action, source) pairs where levels are keyed on
/// action points only. Residues whose action part is trivial fall through to
/// a plain stabilizer chain on the source degree; once every Schreier
/// generator has been checked, the levels form a base and strong generating
/// set for the image, and the bottom chain is exactly the kernel of the
/// action.
struct PairSims {
    identity: PairPerm,
    levels: Vec<PairLevel>,
    kernel_chain: Chain<Perm>,
    kernel_gens: Vec<Perm>,
    /// Kernel generators as pairs. Every level keeps these among its gens so
    /// that their transversal conjugates are Schreier-checked back into the
    /// kernel; new levels are seeded with them.
    kernel_pairs: Vec<PairPerm>,
}

impl PairSims {
    fn new(act_degree: usize, src_degree: usize) -> PairSims {
        PairSims {
            identity: PairPerm {
                act: Perm::identity(act_degree),
                src: Perm::identity(src_degree),
            },
            levels: Vec::new(),
            kernel_chain: Chain::new(Perm::identity(src_degree), &[]),
            kernel_gens: Vec::new(),
            kernel_pairs: Vec::new(),
        }
    }

    /// Sifts the action part through levels `from..`, returning the level
    /// where it stuck (== levels.len() if it passed everything) and the
    /// residue. A residue with trivial action part always passes.
    fn sift_from(&self, from: usize, g: PairPerm) -> (usize, PairPerm) {
        let mut cur = g;
        for l in from..self.levels.len() {
            if cur.act.is_identity() {
                break;
            }
            let level = &self.levels[l];
            let p = cur.act.apply(level.point);
            match &level.transversal[p] {
                None => return (l, cur),
                Some(t) => cur = cur.compose(&t.inverse()),
            }
        }
        (self.levels.len(), cur)
    }

    fn add_generator(&mut self, g: PairPerm) {
        let (lev, residue) = self.sift_from(0, g);
        self.place(0, lev, residue);
    }

    /// Handles a residue produced by `sift_from(from, ..)` that stuck at
    /// `lev`: trivial-action residues feed the kernel chain, the rest extend
    /// the levels, which are then re-closed deepest-first.
    fn place(&mut self, from: usize, lev: usize, residue: PairPerm) {
        if residue.act.is_identity() {
            if residue.src.is_identity() || self.kernel_chain.contains(&residue.src) {
                return;
            }
            self.kernel_chain.add_generator(residue.src.clone());
            self.kernel_gens.push(residue.src.clone());
            self.kernel_pairs.push(residue.clone());
            // Every level must Schreier-check the new kernel generator, so
            // it joins all of them and everything is re-closed.
            for k in 0..self.levels.len() {
                self.levels[k].gens.push(residue.clone());
            }
            for k in (0..self.levels.len()).rev() {
                self.close_level(k);
            }
            return;
        }
        if lev == self.levels.len() {
            let point = residue
                .act
                .smallest_moved_point()
                .expect("non-identity action moves a point");
            let mut level = PairLevel::new(point, self.identity.act.degree(), &self.identity);
            level.gens = self.kernel_pairs.clone();
            self.levels.push(level);
        }
        let lev = lev.min(self.levels.len() - 1);
        for k in from..=lev {
            self.levels[k].gens.push(residue.clone());
        }
        for k in (from..=lev).rev() {
            self.close_level(k);
        }
    }

    /// Verifies every unprocessed Schreier generator of level l, pushing
    /// residues further down (possibly into the kernel) and re-closing
    /// beneath.
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
                let q = s.act.apply(p);
                let t_q = level.transversal[q].clone().expect("orbit closed");
                let schreier = t_p.compose(&s).compose(&t_q.inverse());
                let (lev, residue) = self.sift_from(l + 1, schreier);
                self.place(l + 1, lev, residue);
                self.levels[l].checked.insert(key);
                gi += 1;
            }
            oi += 1;
        }
    }
}

/// A homomorphism G -> Sym(m) arising from an action of G, stored with its
/// image group, kernel, and enough structure to map elements both ways.
pub struct GroupHom {
    source: Group,
    target: Group,
    gen_images: Vec<Perm>,
    kernel: Group,
    /// Action-priority sift over (action, source) pairs.
    sift: PairSims,
    /// Right-coset structure; every hom here arises from a coset action.
    cosets: CosetStructure,
}

pub struct CosetStructure {
    pub subgroup: Group,
    /// Canonical representative per coset index; index 0 is H itself.
    pub reps: Vec<Perm>,
    index_of: HashMap<Perm, usize>,
}

impl CosetStructure {
    pub fn index_of(&self, g: &Perm) -> Option<usize> {
        self.index_of
            .get(&canonical_coset_rep(&self.subgroup, g))
            .copied()
    }
}

impl GroupHom {
    fn from_gen_images(
        source: Group,
        target_degree: usize,
        gen_images: Vec<Perm>,
        cosets: CosetStructure,
    ) -> Result<GroupHom> {
        debug_assert_eq!(source.generators().len(), gen_images.len());
        let mut sift = PairSims::new(target_degree, source.degree());
        for (g, img) in source.generators().iter().zip(&gen_images) {
            sift.add_generator(PairPerm {
                act: img.clone(),
                src: g.clone(),
            });
        }

        let target = Arc::new(PermGroup::from_generators(target_degree, gen_images.clone())?);
        let kernel = Arc::new(PermGroup::from_generators(
            source.degree(),
            sift.kernel_gens.clone(),
        )?);
        let expected = kernel.order() * target.order();
        if &expected != source.order() {
            return Err(Error::InvariantViolated(format!(
                "kernel order {} times image order {} is not the group order {}",
                kernel.order(),
                target.order(),
                source.order()
            )));
        }
        Ok(GroupHom {
            source,
            target,
            gen_images,
            kernel,
            sift,
            cosets,
        })
    }

    pub fn source(&self) -> &Group {
        &self.source
    }

    pub fn target(&self) -> &Group {
        &self.target
    }

    pub fn kernel(&self) -> &Group {
        &self.kernel
    }

    pub fn gen_images(&self) -> &[Perm] {
        &self.gen_images
    }

    pub fn cosets(&self) -> &CosetStructure {
        &self.cosets
    }

    /// Image of an arbitrary element of the source group.
    pub fn apply(&self, g: &Perm) -> Result<Perm> {
        if !self.source.contains(g) {
            return Err(Error::NotAMember);
        }
        let cs = &self.cosets;
        let mut images = Vec::with_capacity(cs.reps.len());
        for rep in &cs.reps {
            let moved = rep.compose(g);
            let idx = cs
                .index_of(&moved)
                .ok_or_else(|| Error::InvariantViolated("coset map not closed".into()))?;
            images.push(idx);
        }
        Perm::from_images(images)
    }

    /// Some source element mapping to `v`, when `v` lies in the image.
    pub fn preimage_rep(&self, v: &Perm) -> Result<Perm> {
        let (_, residue) = self.sift.sift_from(
            0,
            PairPerm {
                act: v.clone(),
                src: Perm::identity(self.source.degree()),
            },
        );
        if residue.act.is_identity() {
            Ok(residue.src.inverse())
        } else {
            Err(Error::NotAMember)
        }
    }

    /// Image of the subgroup generated by `gens` (as a group in the target).
    pub fn map_subgroup_gens(&self, gens: &[Perm]) -> Result<Vec<Perm>> {
        gens.iter().map(|g| self.apply(g)).collect()
    }

    /// Full preimage of a subgroup of the target, as a group in the source.
    pub fn preimage_group(&self, sub: &PermGroup) -> Result<PermGroup> {
        let mut gens: Vec<Perm> = self.kernel.generators().to_vec();
        for v in sub.generators() {
            gens.push(self.preimage_rep(v)?);
        }
        PermGroup::from_generators(self.source.degree(), gens)
    }
}

/// The action of G on the right cosets of H by right multiplication.
/// Coset 0 is H itself; further cosets appear in BFS order over the
/// generators, so the numbering is deterministic.
pub fn coset_action(g: &Group, h: &PermGroup, index_cap: u64) -> Result<GroupHom> {
    if h.degree() != g.degree() {
        return Err(Error::DegreeMismatch(g.degree(), h.degree()));
    }
    if !g.contains_all(h.generators()) {
        return Err(Error::NotASubgroup);
    }
    let (index, rem) = g.order().div_rem(h.order());
    if !rem.is_zero() {
        return Err(Error::InvariantViolated(
            "subgroup order does not divide group order".into(),
        ));
    }
    if index > BigUint::from(index_cap) {
        return Err(Error::IndexExceedsCap {
            index,
            cap: index_cap,
        });
    }
    let index = index.to_usize().ok_or_else(|| Error::ResourceExceeded(
        "coset index does not fit in usize".into(),
    ))?;

    let h_arc = Arc::new(PermGroup::from_generators(
        h.degree(),
        h.generators().to_vec(),
    )?);
    let mut reps: Vec<Perm> = Vec::with_capacity(index);
    let mut index_of: HashMap<Perm, usize> = HashMap::with_capacity(index * 2);
    let first = canonical_coset_rep(&h_arc, &Perm::identity(g.degree()));
    index_of.insert(first.clone(), 0);
    reps.push(first);
    let mut qi = 0;
    while qi < reps.len() {
        let rep = reps[qi].clone();
        qi += 1;
        for s in g.generators() {
            let canon = canonical_coset_rep(&h_arc, &rep.compose(s));
            if !index_of.contains_key(&canon) {
                index_of.insert(canon.clone(), reps.len());
                reps.push(canon);
            }
        }
    }
    if reps.len() != index {
        return Err(Error::InvariantViolated(format!(
            "coset enumeration found {} cosets, expected {}",
            reps.len(),
            index
        )));
    }

    let mut gen_images = Vec::with_capacity(g.generators().len());
    for s in g.generators() {
        let mut images = Vec::with_capacity(index);
        for rep in &reps {
            let canon = canonical_coset_rep(&h_arc, &rep.compose(s));
            images.push(*index_of.get(&canon).expect("coset space closed"));
        }
        gen_images.push(Perm::from_images(images)?);
    }

    let cosets = CosetStructure {
        subgroup: h_arc,
        reps,
        index_of,
    };
    GroupHom::from_gen_images(g.clone(), index, gen_images, cosets)
}

/// Quotient G/N with its projection, for N normal in G. The quotient acts
/// on the cosets of N, which is faithful exactly because N is normal.
pub fn quotient(g: &Group, n: &PermGroup, index_cap: u64) -> Result<(Group, GroupHom)> {
    if !normalizes(g.generators(), n) {
        return Err(Error::NotNormal);
    }
    let hom = coset_action(g, n, index_cap)?;
    if hom.kernel().order() != n.order() {
        return Err(Error::InvariantViolated(
            "kernel of the coset action differs from the normal subgroup".into(),
        ));
    }
    Ok((hom.target().clone(), hom))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s4() -> Group {
        Arc::new(PermGroup::from_cycle_strs(4, &["(1,2)", "(1,2,3,4)"]).unwrap())
    }

    fn a4() -> Group {
        Arc::new(PermGroup::from_cycle_strs(4, &["(1,2,3)", "(2,3,4)"]).unwrap())
    }

    #[test]
    fn orders() {
        assert_eq!(s4().order_u64(), Some(24));
        assert_eq!(a4().order_u64(), Some(12));
        assert!(PermGroup::trivial(5).is_trivial());
    }

    #[test]
    fn coset_action_on_point_stabilizer() {
        let g = s4();
        // Stabilizer of point 4 is S3 on {1,2,3}; the coset action has
        // degree 4 and is faithful.
        let h = PermGroup::from_cycle_strs(4, &["(1,2)", "(1,2,3)"]).unwrap();
        let hom = coset_action(&g, &h, 1000).unwrap();
        assert_eq!(hom.target().degree(), 4);
        assert_eq!(hom.target().order_u64(), Some(24));
        assert!(hom.kernel().is_trivial());
        // The hom respects multiplication on a sample.
        let x = Perm::parse_cycles(4, "(1,2,3,4)").unwrap();
        let y = Perm::parse_cycles(4, "(1,2)").unwrap();
        let lhs = hom.apply(&x.compose(&y)).unwrap();
        let rhs = hom.apply(&x).unwrap().compose(&hom.apply(&y).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn quotient_s4_by_klein() {
        let g = s4();
        let v4 = PermGroup::from_cycle_strs(4, &["(1,2)(3,4)", "(1,3)(2,4)"]).unwrap();
        let (q, hom) = quotient(&g, &v4, 1000).unwrap();
        assert_eq!(q.order_u64(), Some(6));
        assert_eq!(hom.kernel().order_u64(), Some(4));
        // Kernel generators really lie in V4.
        for k in hom.kernel().generators() {
            assert!(v4.contains(k));
        }
    }

    #[test]
    fn quotient_rejects_non_normal() {
        let g = s4();
        let c2 = PermGroup::from_cycle_strs(4, &["(1,2)"]).unwrap();
        assert!(matches!(quotient(&g, &c2, 1000), Err(Error::NotNormal)));
    }

    #[test]
    fn kernel_when_first_generator_acts_trivially() {
        // The first generator lies in the subgroup, so its coset image is
        // the identity and it reaches the kernel before any action level
        // exists; its conjugates must still be collected.
        let v4 = Arc::new(PermGroup::from_cycle_strs(4, &["(1,2)(3,4)", "(1,3)(2,4)"]).unwrap());
        let c2 = PermGroup::from_cycle_strs(4, &["(1,2)(3,4)"]).unwrap();
        let (q, hom) = quotient(&v4, &c2, 1000).unwrap();
        assert_eq!(q.order_u64(), Some(2));
        assert_eq!(hom.kernel().order_u64(), Some(2));

        // Same shape one level up: S4 generated with an A4 element first.
        let g = Arc::new(PermGroup::from_cycle_strs(4, &["(1,2,3)", "(1,2)", "(1,2,3,4)"]).unwrap());
        let a4 = PermGroup::from_cycle_strs(4, &["(1,2,3)", "(2,3,4)"]).unwrap();
        let (q, hom) = quotient(&g, &a4, 1000).unwrap();
        assert_eq!(q.order_u64(), Some(2));
        assert_eq!(hom.kernel().order_u64(), Some(12));
    }

    #[test]
    fn kernels_match_cores_for_non_normal_subgroups() {
        // Kernel of a coset action = the largest normal subgroup inside H,
        // checked against a direct element filter.
        let g = s4();
        let elems = g.elements(100).unwrap();
        for h_gens in [&["(1,2)"][..], &["(1,2,3,4)"][..], &["(1,2)", "(3,4)"][..]] {
            let h = PermGroup::from_cycle_strs(4, h_gens).unwrap();
            let hom = coset_action(&g, &h, 1000).unwrap();
            let core: Vec<&Perm> = elems
                .iter()
                .filter(|x| elems.iter().all(|c| h.contains(&x.conjugate_by(c))))
                .filter(|x| h.contains(x))
                .collect();
            assert_eq!(hom.kernel().order_u64(), Some(core.len() as u64));
            assert_eq!(
                hom.kernel().order() * hom.target().order(),
                *g.order()
            );
        }
    }

    #[test]
    fn index_cap_enforced() {
        let g = s4();
        let triv = PermGroup::trivial(4);
        assert!(matches!(
            coset_action(&g, &triv, 10),
            Err(Error::IndexExceedsCap { .. })
        ));
    }

    #[test]
    fn preimage_of_image_generators() {
        let g = s4();
        let v4 = PermGroup::from_cycle_strs(4, &["(1,2)(3,4)", "(1,3)(2,4)"]).unwrap();
        let (q, hom) = quotient(&g, &v4, 1000).unwrap();
        for v in q.generators() {
            let pre = hom.preimage_rep(v).unwrap();
            assert_eq!(&hom.apply(&pre).unwrap(), v);
        }
        // Preimage of the full quotient is the full group.
        let full = hom.preimage_group(&q).unwrap();
        assert_eq!(full.order(), g.order());
    }

    #[test]
    fn canonical_rep_identifies_cosets() {
        let g = s4();
        let h = PermGroup::from_cycle_strs(4, &["(1,2)"]).unwrap();
        let h = PermGroup::from_generators(4, h.generators().to_vec()).unwrap();
        let elems = g.elements(100).unwrap();
        for x in &elems {
            for hh in h.elements(10).unwrap() {
                let same = hh.compose(x);
                assert_eq!(
                    canonical_coset_rep(&h, x),
                    canonical_coset_rep(&h, &same),
                );
            }
        }
        // Distinct cosets get distinct reps: count them.
        let mut reps: Vec<Perm> = elems.iter().map(|x| canonical_coset_rep(&h, x)).collect();
        reps.sort();
        reps.dedup();
        assert_eq!(reps.len(), 12);
    }
}
