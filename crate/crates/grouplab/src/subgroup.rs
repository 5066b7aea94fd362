//! Subgroups of a fixed parent group and the operations on them that the
//! decision procedures need: normality, closures, cores, intersections,
//! joins, normalizers, and product-set arithmetic.

use std::collections::HashSet;
use std::sync::Arc;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;

use crate::bsgs::Chain;
use crate::error::{Error, Result};
use crate::group::{coset_action, normalizes, Group, PermGroup};
use crate::perm::Perm;
use crate::Bounds;

/// A subgroup H <= G, carrying its own stabilizer chain plus a handle on the
/// parent it lives in.
#[derive(Clone)]
pub struct Subgroup {
    parent: Group,
    group: Group,
}

/// Greedy generator reduction: keep only the elements that grow the chain.
pub fn reduced_generators(degree: usize, elems: &[Perm]) -> Vec<Perm> {
    let mut chain = Chain::new(Perm::identity(degree), &[]);
    let mut kept = Vec::new();
    for e in elems {
        if !e.is_identity() && !chain.contains(e) {
            chain.add_generator(e.clone());
            kept.push(e.clone());
        }
    }
    kept
}

impl Subgroup {
    pub fn new(parent: &Group, gens: Vec<Perm>) -> Result<Subgroup> {
        if !parent.contains_all(&gens) {
            return Err(Error::NotASubgroup);
        }
        let group = Arc::new(PermGroup::from_generators(parent.degree(), gens)?);
        Ok(Subgroup {
            parent: parent.clone(),
            group,
        })
    }

    /// Wrap an already-built group after verifying containment in the parent.
    pub fn from_group(parent: &Group, group: Group) -> Result<Subgroup> {
        if group.degree() != parent.degree() || !parent.contains_all(group.generators()) {
            return Err(Error::NotASubgroup);
        }
        Ok(Subgroup {
            parent: parent.clone(),
            group,
        })
    }

    pub fn from_elements(parent: &Group, elems: &[Perm]) -> Result<Subgroup> {
        Subgroup::new(parent, reduced_generators(parent.degree(), elems))
    }

    pub fn trivial(parent: &Group) -> Subgroup {
        Subgroup {
            parent: parent.clone(),
            group: Arc::new(PermGroup::trivial(parent.degree())),
        }
    }

    pub fn full(parent: &Group) -> Subgroup {
        Subgroup {
            parent: parent.clone(),
            group: parent.clone(),
        }
    }

    pub fn parent(&self) -> &Group {
        &self.parent
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn order(&self) -> &BigUint {
        self.group.order()
    }

    pub fn index(&self) -> BigUint {
        let (q, r) = self.parent.order().div_rem(self.group.order());
        debug_assert!(r.is_zero(), "subgroup order divides group order");
        q
    }

    pub fn is_trivial(&self) -> bool {
        self.group.is_trivial()
    }

    pub fn is_full(&self) -> bool {
        self.group.order() == self.parent.order()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        self.group.contains(g)
    }

    /// Equality as subgroups of the shared parent.
    pub fn same_subgroup_as(&self, other: &Subgroup) -> bool {
        self.group.order() == other.group.order()
            && other.group.contains_all(self.group.generators())
    }

    pub fn contains_subgroup(&self, other: &Subgroup) -> bool {
        self.group.contains_all(other.group.generators())
    }

    pub fn is_normal(&self) -> bool {
        normalizes(self.parent.generators(), &self.group)
    }

    pub fn conjugate(&self, x: &Perm) -> Result<Subgroup> {
        if !self.parent.contains(x) {
            return Err(Error::NotAMember);
        }
        let gens: Vec<Perm> = self
            .group
            .generators()
            .iter()
            .map(|g| g.conjugate_by(x))
            .collect();
        Subgroup::new(&self.parent, gens)
    }

    pub fn join(&self, other: &Subgroup) -> Result<Subgroup> {
        let mut gens = self.group.generators().to_vec();
        gens.extend_from_slice(other.group.generators());
        Subgroup::new(&self.parent, gens)
    }

    /// Intersection by scanning the elements of the smaller side, which must
    /// fit under `element_cap`.
    pub fn intersect(&self, other: &Subgroup, element_cap: u64) -> Result<Subgroup> {
        let (small, large) = if self.order() <= other.order() {
            (self, other)
        } else {
            (other, self)
        };
        let elems = small.group.elements(element_cap)?;
        let common: Vec<Perm> = elems
            .into_iter()
            .filter(|e| large.group.contains(e))
            .collect();
        Subgroup::from_elements(&self.parent, &common)
    }

    /// Smallest normal subgroup of the parent containing this one.
    pub fn normal_closure(&self) -> Subgroup {
        let mut chain = self.group.chain().clone();
        let mut kept: Vec<Perm> = self.group.generators().to_vec();
        let mut queue: Vec<Perm> = kept.clone();
        while let Some(h) = queue.pop() {
            for g in self.parent.generators() {
                let c = h.conjugate_by(g);
                if !chain.contains(&c) {
                    chain.add_generator(c.clone());
                    kept.push(c.clone());
                    queue.push(c);
                }
            }
        }
        Subgroup::new(&self.parent, kept).expect("conjugates stay inside the parent")
    }

    /// Core through the permutation action on cosets: the kernel of the
    /// action of the parent on the coset space, valid for index <= cap.
    pub fn core_by_action(&self, index_cap: u64) -> Result<Subgroup> {
        let hom = coset_action(&self.parent, &self.group, index_cap)?;
        Subgroup::from_group(&self.parent, hom.kernel().clone())
    }

    /// Core as the stable set of elements whose conjugates under every
    /// generator word stay inside the subgroup. Needs the subgroup's own
    /// elements to fit under `element_cap`.
    pub fn core_by_filter(&self, element_cap: u64) -> Result<Subgroup> {
        let mut live: HashSet<Perm> = self.group.elements(element_cap)?.into_iter().collect();
        loop {
            let survivors: HashSet<Perm> = live
                .iter()
                .filter(|h| {
                    self.parent
                        .generators()
                        .iter()
                        .all(|g| live.contains(&h.conjugate_by(g)))
                })
                .cloned()
                .collect();
            if survivors.len() == live.len() {
                break;
            }
            live = survivors;
        }
        let mut elems: Vec<Perm> = live.into_iter().collect();
        elems.sort();
        Subgroup::from_elements(&self.parent, &elems)
    }

    /// Largest normal subgroup of the parent inside this one. Routes through
    /// the coset action when the index is small enough, otherwise falls back
    /// to the element filter.
    pub fn core(&self, bounds: &Bounds) -> Result<Subgroup> {
        if self.index() <= BigUint::from(bounds.index_cap) {
            self.core_by_action(bounds.index_cap)
        } else {
            self.core_by_filter(bounds.element_cap)
        }
    }

    /// Normalizer by scanning the parent's elements (parent order must fit
    /// under `element_cap`).
    pub fn normalizer(&self, element_cap: u64) -> Result<Subgroup> {
        let elems = self.parent.elements(element_cap)?;
        let fixing: Vec<Perm> = elems
            .into_iter()
            .filter(|x| {
                self.group
                    .generators()
                    .iter()
                    .all(|g| self.group.contains(&g.conjugate_by(x)))
            })
            .collect();
        Subgroup::from_elements(&self.parent, &fixing)
    }

    /// Centralizer of this subgroup in the parent, by element scan.
    pub fn centralizer(&self, element_cap: u64) -> Result<Subgroup> {
        let elems = self.parent.elements(element_cap)?;
        let commuting: Vec<Perm> = elems
            .into_iter()
            .filter(|x| {
                self.group
                    .generators()
                    .iter()
                    .all(|g| g.compose(x) == x.compose(g))
            })
            .collect();
        Subgroup::from_elements(&self.parent, &commuting)
    }
}

impl std::fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Subgroup(order {} of {})",
            self.group.order(),
            self.parent.order()
        )
    }
}

/// What the product set HK looks like inside the common parent.
pub struct ProductInfo {
    /// |HK| = |H| |K| / |H n K|, whether or not HK is a subgroup.
    pub product_order: BigUint,
    /// True iff HK = <H, K>, i.e. the product set is itself a subgroup.
    pub forms_subgroup: bool,
    pub intersection: Subgroup,
    pub join: Subgroup,
}

/// Product-set arithmetic for two subgroups of the same parent. The smaller
/// of the two must fit under `element_cap` for the intersection scan.
pub fn product_info(h: &Subgroup, k: &Subgroup, element_cap: u64) -> Result<ProductInfo> {
    let intersection = h.intersect(k, element_cap)?;
    let product_order = h.order() * k.order() / intersection.order();
    let join = h.join(k)?;
    let forms_subgroup = join.order() == &product_order;
    Ok(ProductInfo {
        product_order,
        forms_subgroup,
        intersection,
        join,
    })
}
