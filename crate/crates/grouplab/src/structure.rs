//! Structural predicates: solvability, (p-)nilpotency, simplicity,
//! composition factors, identification of small simple groups, abstract
//! isomorphism testing, and section scans.
//!
//! The predicates that only need generator arithmetic (derived series,
//! Sylow normality, normal closures) work at any scale; the ones that need
//! element or subgroup enumeration take caps and fail honestly beyond them.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::group::{quotient, Group};
use crate::lattice::{enumerate_subgroups, normal_subgroups};
use crate::modp;
use crate::perm::Perm;
use crate::subgroup::{reduced_generators, Subgroup};
use crate::sylow::{p_complement, sylow};
use crate::Bounds;

/// Derived subgroup: the normal closure of the generator commutators.
pub fn commutator_subgroup(g: &Group) -> Result<Group> {
    let gens = g.generators();
    let mut comms = Vec::new();
    for (i, a) in gens.iter().enumerate() {
        for b in gens.iter().skip(i + 1) {
            comms.push(a.commutator(b));
        }
    }
    let reduced = reduced_generators(g.degree(), &comms);
    let closure = Subgroup::new(g, reduced)?.normal_closure();
    Ok(closure.group().clone())
}

/// The derived series G >= G' >= G'' >= ..., ending at the perfect core
/// (the first repeated term) or the trivial group.
pub fn derived_series(g: &Group) -> Result<Vec<Group>> {
    let mut series = vec![g.clone()];
    loop {
        let cur = series.last().unwrap();
        let next = commutator_subgroup(cur)?;
        if next.order() == cur.order() || series.len() > 64 {
            break;
        }
        let done = next.is_trivial();
        series.push(next);
        if done {
            break;
        }
    }
    Ok(series)
}

pub fn is_solvable(g: &Group) -> Result<bool> {
    Ok(derived_series(g)?.last().unwrap().is_trivial())
}

/// A finite group is nilpotent iff all of its Sylow subgroups are normal.
pub fn is_nilpotent(g: &Group, bounds: &Bounds) -> Result<bool> {
    let order = g
        .order_u64()
        .ok_or_else(|| Error::ResourceExceeded("nilpotency test needs a u64 order".into()))?;
    for (p, _) in modp::factor_u64(order) {
        if !sylow(g, p, bounds)?.is_normal() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether G has a normal p-complement (a normal Hall p'-subgroup).
///
/// When a Hall p'-subgroup W exists, every p'-subgroup of a p-nilpotent
/// group lies inside the normal complement (its image in the p-group
/// quotient is trivial), so W itself would have to be that complement:
/// checking W's normality decides the question. No Hall p'-subgroup at all
/// also means no normal complement.
pub fn is_p_nilpotent(g: &Group, p: u64, bounds: &Bounds) -> Result<bool> {
    match p_complement(g, p, bounds)? {
        Some(w) => Ok(w.is_normal()),
        None => Ok(false),
    }
}

/// Simplicity. Normal closures of the generators give a cheap negative
/// certificate at any scale; the definitive answer enumerates the normal
/// subgroups and so needs the element cap.
pub fn is_simple(g: &Group, bounds: &Bounds) -> Result<bool> {
    if g.is_trivial() {
        return Ok(false);
    }
    if let Some(n) = g.order_u64() {
        if modp::is_prime(n) {
            return Ok(true);
        }
    }
    for x in g.generators() {
        let n = Subgroup::new(g, vec![x.clone()])?.normal_closure();
        if !n.is_full() {
            // Nontrivial (x is not the identity) and proper.
            return Ok(false);
        }
    }
    Ok(normal_subgroups(g, bounds.element_cap)?.len() == 2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChiefPick {
    LargestMaximalNormal,
    SmallestMaximalNormal,
}

/// Composition factors, top factor first. Each returned group is simple: the
/// quotient of one series term by the next, always a maximal normal
/// subgroup. The two picks walk different series when several maximal
/// normals exist.
pub fn composition_factors_via(
    g: &Group,
    bounds: &Bounds,
    pick: ChiefPick,
) -> Result<Vec<Group>> {
    let mut factors = Vec::new();
    let mut cur = g.clone();
    while !cur.is_trivial() {
        let normals = normal_subgroups(&cur, bounds.element_cap)?;
        // Canonical order is ascending, first entry trivial, last the whole
        // group; the proper nontrivial ones sit strictly inside. Maximal
        // normals are those not strictly inside another proper normal.
        let proper = &normals[1..normals.len() - 1];
        let maximal: Vec<&Subgroup> = proper
            .iter()
            .filter(|n| {
                !proper
                    .iter()
                    .any(|m| m.order() > n.order() && m.contains_subgroup(n))
            })
            .collect();
        let step = match pick {
            ChiefPick::LargestMaximalNormal => maximal.last(),
            ChiefPick::SmallestMaximalNormal => maximal.first(),
        };
        match step {
            None => {
                // cur is simple.
                factors.push(cur.clone());
                break;
            }
            Some(n) => {
                let (q, _) = quotient(&cur, n.group(), bounds.index_cap)?;
                factors.push(q);
                cur = n.group().clone();
            }
        }
    }
    Ok(factors)
}

pub fn composition_factors(g: &Group, bounds: &Bounds) -> Result<Vec<Group>> {
    composition_factors_via(g, bounds, ChiefPick::LargestMaximalNormal)
}

/// Element-order histogram: order -> number of elements of that order.
pub fn spectrum(g: &Group, element_cap: u64) -> Result<BTreeMap<u64, u64>> {
    let mut out = BTreeMap::new();
    for e in g.elements(element_cap)? {
        *out.entry(e.order()).or_insert(0) += 1;
    }
    Ok(out)
}

/// A nonabelian simple group pinned by order and element-order histogram.
#[derive(Debug, PartialEq, Eq)]
pub struct KnownSimple {
    pub name: &'static str,
    pub order: u64,
    pub spectrum: &'static [(u64, u64)],
    /// Some(q) when the group is PSL(2, q) for odd q.
    pub l2_odd_q: Option<u64>,
}

/// The nonabelian simple groups of order at most 2520, which covers every
/// composition factor this crate's group families can produce at checkable
/// sizes.
pub static KNOWN_SIMPLE: &[KnownSimple] = &[
    KnownSimple {
        name: "A5 ~ PSL(2,5)",
        order: 60,
        spectrum: &[(1, 1), (2, 15), (3, 20), (5, 24)],
        l2_odd_q: Some(5),
    },
    KnownSimple {
        name: "PSL(2,7)",
        order: 168,
        spectrum: &[(1, 1), (2, 21), (3, 56), (4, 42), (7, 48)],
        l2_odd_q: Some(7),
    },
    KnownSimple {
        name: "A6 ~ PSL(2,9)",
        order: 360,
        spectrum: &[(1, 1), (2, 45), (3, 80), (4, 90), (5, 144)],
        l2_odd_q: Some(9),
    },
    KnownSimple {
        name: "PSL(2,11)",
        order: 660,
        spectrum: &[(1, 1), (2, 55), (3, 110), (5, 264), (6, 110), (11, 120)],
        l2_odd_q: Some(11),
    },
    KnownSimple {
        name: "PSL(2,13)",
        order: 1092,
        spectrum: &[(1, 1), (2, 91), (3, 182), (6, 182), (7, 468), (13, 168)],
        l2_odd_q: Some(13),
    },
    KnownSimple {
        name: "A7",
        order: 2520,
        spectrum: &[(1, 1), (2, 105), (3, 350), (4, 630), (5, 504), (6, 210), (7, 720)],
        l2_odd_q: None,
    },
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SimpleKind {
    CyclicPrime(u64),
    Known(&'static KnownSimple),
}

impl SimpleKind {
    pub fn name(&self) -> String {
        match self {
            SimpleKind::CyclicPrime(p) => format!("C{}", p),
            SimpleKind::Known(k) => k.name.to_string(),
        }
    }

    pub fn l2_odd_q(&self) -> Option<u64> {
        match self {
            SimpleKind::CyclicPrime(_) => None,
            SimpleKind::Known(k) => k.l2_odd_q,
        }
    }
}

/// Identify a group against the simple-group table by order and spectrum.
/// Returns `None` when nothing matches (in particular for non-simple
/// groups, whose invariants never coincide with a table row at these
/// orders).
pub fn identify_simple(g: &Group, element_cap: u64) -> Result<Option<SimpleKind>> {
    let Some(order) = g.order_u64() else {
        return Ok(None);
    };
    if modp::is_prime(order) {
        return Ok(Some(SimpleKind::CyclicPrime(order)));
    }
    for k in KNOWN_SIMPLE {
        if k.order == order {
            let spec = spectrum(g, element_cap)?;
            let pinned: BTreeMap<u64, u64> = k.spectrum.iter().copied().collect();
            if spec == pinned {
                return Ok(Some(SimpleKind::Known(k)));
            }
        }
    }
    Ok(None)
}

/// Exponent of an abelian group: the lcm of the generator orders.
fn abelian_exponent(g: &Group) -> u128 {
    g.generators()
        .iter()
        .map(|x| x.order() as u128)
        .fold(1u128, num_integer::lcm)
}

pub fn is_cyclic(g: &Group) -> bool {
    g.is_abelian() && BigUint::from(abelian_exponent(g)) == *g.order()
}

/// Some((p, k)) iff the group is elementary abelian of order p^k, k >= 1.
pub fn elementary_abelian_params(g: &Group) -> Option<(u64, u32)> {
    let order = g.order_u64()?;
    let (p, k) = modp::prime_power(order)?;
    (g.is_abelian() && g.generators().iter().all(|x| x.order() == p)).then_some((p, k))
}

pub fn is_klein_four(g: &Group) -> bool {
    elementary_abelian_params(g) == Some((2, 2))
}

/// Abstract isomorphism by exhaustive generator-image search. Both groups
/// must fit under the element cap; intended for orders up to a few hundred.
pub fn isomorphic(a: &Group, b: &Group, element_cap: u64) -> Result<bool> {
    if a.order() != b.order() {
        return Ok(false);
    }
    let n = a
        .order_u64()
        .ok_or_else(|| Error::ResourceExceeded("isomorphism search needs a u64 order".into()))?;
    if n == 1 {
        return Ok(true);
    }
    let gens_a = reduced_generators(a.degree(), a.generators());
    let elems_b = b.elements(element_cap)?;
    // Candidate images per generator, filtered by element order.
    let candidates: Vec<Vec<&Perm>> = gens_a
        .iter()
        .map(|ga| {
            elems_b
                .iter()
                .filter(|eb| eb.order() == ga.order())
                .collect()
        })
        .collect();
    if candidates.iter().any(|c| c.is_empty()) {
        return Ok(false);
    }
    let mut choice: Vec<usize> = vec![0; gens_a.len()];
    'outer: loop {
        let images: Vec<&Perm> = choice
            .iter()
            .zip(&candidates)
            .map(|(&c, cs)| cs[c])
            .collect();
        if extends_to_isomorphism(a, &gens_a, &images, n as usize) {
            return Ok(true);
        }
        // Advance the mixed-radix counter over candidate tuples.
        for i in (0..choice.len()).rev() {
            choice[i] += 1;
            if choice[i] < candidates[i].len() {
                continue 'outer;
            }
            choice[i] = 0;
        }
        return Ok(false);
    }
}

/// Try to extend gens -> images to a full isomorphism by closing the Cayley
/// graph: every conflict-free completion of the map that covers the whole
/// source group and hits distinct targets is one.
fn extends_to_isomorphism(a: &Group, gens: &[Perm], images: &[&Perm], n: usize) -> bool {
    let deg_a = a.degree();
    let deg_b = images.first().map_or(0, |p| p.degree());
    let mut map: HashMap<Perm, Perm> = HashMap::with_capacity(n);
    map.insert(Perm::identity(deg_a), Perm::identity(deg_b));
    let mut work = vec![Perm::identity(deg_a)];
    while let Some(x) = work.pop() {
        let mx = map[&x].clone();
        for (gi, hi) in gens.iter().zip(images) {
            let xa = x.compose(gi);
            let xb = mx.compose(hi);
            match map.get(&xa) {
                Some(existing) => {
                    if *existing != xb {
                        return false;
                    }
                }
                None => {
                    map.insert(xa.clone(), xb);
                    work.push(xa);
                }
            }
        }
    }
    if map.len() != n {
        return false;
    }
    let image_count = map.values().collect::<std::collections::HashSet<_>>().len();
    image_count == n
}

/// Does G have a section (quotient of a subgroup) with the given order and
/// element-order histogram? Needs full subgroup enumeration.
pub fn has_section_matching(
    g: &Group,
    order: u64,
    model_spectrum: &BTreeMap<u64, u64>,
    bounds: &Bounds,
) -> Result<bool> {
    let target = BigUint::from(order);
    // Quick exit: no subgroup order divisible by the target order.
    if (g.order() % &target) != BigUint::zero() {
        return Ok(false);
    }
    let subs = enumerate_subgroups(g, bounds)?;
    for h in &subs {
        if (h.order() % &target) != BigUint::zero() {
            continue;
        }
        if h.order() == &target {
            // Quotient by the trivial subgroup is the subgroup itself.
            if &spectrum(h.group(), bounds.element_cap)? == model_spectrum {
                return Ok(true);
            }
            continue;
        }
        for n in normal_subgroups(h.group(), bounds.element_cap)? {
            if n.order() * &target != *h.order() {
                continue;
            }
            let (q, _) = quotient(h.group(), n.group(), bounds.index_cap)?;
            if &spectrum(&q, bounds.element_cap)? == model_spectrum {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Section-freeness against a model group, by order and spectrum.
pub fn is_section_free_of(g: &Group, model: &Group, bounds: &Bounds) -> Result<bool> {
    let order = model
        .order_u64()
        .ok_or_else(|| Error::ResourceExceeded("model order must fit u64".into()))?;
    let model_spec = spectrum(model, bounds.element_cap)?;
    Ok(!has_section_matching(g, order, &model_spec, bounds)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::PermGroup;
    use crate::construct::{
        alternating, cyclic, dihedral, direct_product, elementary_abelian, psl2,
        semidirect_product_matrix, symmetric, wreath_product_cyclic_top,
    };
    use crate::modp::ModMatrix;

    fn dflt() -> Bounds {
        Bounds::default()
    }

    fn remark_scale_group() -> Group {
        let f21 = semidirect_product_matrix(&ModMatrix::new(7, 1, vec![2]).unwrap()).unwrap();
        wreath_product_cyclic_top(&f21.group, 7).unwrap().group
    }

    #[test]
    fn derived_series_and_solvability() {
        let orders: Vec<u64> = derived_series(&symmetric(4).unwrap())
            .unwrap()
            .iter()
            .map(|g| g.order_u64().unwrap())
            .collect();
        assert_eq!(orders, vec![24, 12, 4, 1]);
        assert!(is_solvable(&symmetric(4).unwrap()).unwrap());
        assert!(is_solvable(&dihedral(6).unwrap()).unwrap());
        assert!(!is_solvable(&alternating(5).unwrap()).unwrap());
        assert!(!is_solvable(&symmetric(5).unwrap()).unwrap());
        // Derived series of a perfect group stops at the group itself.
        let a5 = alternating(5).unwrap();
        assert_eq!(derived_series(&a5).unwrap().len(), 1);
    }

    #[test]
    fn solvability_at_scale() {
        // Order 3^7 * 7^8: iterated extension of abelian groups.
        assert!(is_solvable(&remark_scale_group()).unwrap());
    }

    #[test]
    fn nilpotency() {
        assert!(is_nilpotent(&dihedral(4).unwrap(), &dflt()).unwrap());
        assert!(is_nilpotent(&cyclic(12).unwrap(), &dflt()).unwrap());
        assert!(is_nilpotent(&elementary_abelian(3, 2).unwrap(), &dflt()).unwrap());
        assert!(!is_nilpotent(&symmetric(3).unwrap(), &dflt()).unwrap());
        assert!(!is_nilpotent(&alternating(4).unwrap(), &dflt()).unwrap());
    }

    #[test]
    fn p_nilpotency() {
        let s3 = symmetric(3).unwrap();
        assert!(is_p_nilpotent(&s3, 2, &dflt()).unwrap());
        assert!(!is_p_nilpotent(&s3, 3, &dflt()).unwrap());
        let a4 = alternating(4).unwrap();
        assert!(is_p_nilpotent(&a4, 3, &dflt()).unwrap());
        assert!(!is_p_nilpotent(&a4, 2, &dflt()).unwrap());
        // At scale, through the Hall-complement certificate: both Sylow
        // subgroups are non-normal, so neither prime admits a complement.
        let g = remark_scale_group();
        assert!(!is_p_nilpotent(&g, 3, &dflt()).unwrap());
        assert!(!is_p_nilpotent(&g, 7, &dflt()).unwrap());
    }

    #[test]
    fn simplicity() {
        assert!(is_simple(&alternating(5).unwrap(), &dflt()).unwrap());
        assert!(is_simple(&psl2(7).unwrap(), &dflt()).unwrap());
        assert!(is_simple(&cyclic(7).unwrap(), &dflt()).unwrap());
        assert!(!is_simple(&symmetric(4).unwrap(), &dflt()).unwrap());
        assert!(!is_simple(&cyclic(12).unwrap(), &dflt()).unwrap());
        assert!(!is_simple(&cyclic(1).unwrap(), &dflt()).unwrap());
        // The cheap generator-closure certificate fires at scale.
        assert!(!is_simple(&remark_scale_group(), &dflt()).unwrap());
    }

    #[test]
    fn composition_factor_multisets() {
        let factor_orders = |g: &Group, pick: ChiefPick| -> Vec<u64> {
            let mut v: Vec<u64> = composition_factors_via(g, &dflt(), pick)
                .unwrap()
                .iter()
                .map(|f| f.order_u64().unwrap())
                .collect();
            v.sort_unstable();
            v
        };
        for g in [
            symmetric(4).unwrap(),
            symmetric(5).unwrap(),
            cyclic(12).unwrap(),
            alternating(5).unwrap(),
            dihedral(6).unwrap(),
        ] {
            let a = factor_orders(&g, ChiefPick::LargestMaximalNormal);
            let b = factor_orders(&g, ChiefPick::SmallestMaximalNormal);
            // Jordan-Hoelder: the factor multiset does not depend on the
            // series chosen.
            assert_eq!(a, b, "order {}", g.order());
        }
        assert_eq!(
            factor_orders(&symmetric(4).unwrap(), ChiefPick::LargestMaximalNormal),
            vec![2, 2, 2, 3]
        );
        assert_eq!(
            factor_orders(&symmetric(5).unwrap(), ChiefPick::LargestMaximalNormal),
            vec![2, 60]
        );
        // Every factor is simple.
        for f in composition_factors(&symmetric(5).unwrap(), &dflt()).unwrap() {
            assert!(is_simple(&f, &dflt()).unwrap());
        }
    }

    #[test]
    fn simple_identification() {
        let id = |g: &Group| identify_simple(g, 100_000).unwrap();
        assert_eq!(id(&alternating(5).unwrap()), id(&psl2(5).unwrap()));
        assert_eq!(id(&psl2(5).unwrap()).unwrap().l2_odd_q(), Some(5));
        assert_eq!(id(&psl2(7).unwrap()).unwrap().l2_odd_q(), Some(7));
        assert_eq!(id(&alternating(6).unwrap()).unwrap().l2_odd_q(), Some(9));
        assert_eq!(id(&psl2(11).unwrap()).unwrap().l2_odd_q(), Some(11));
        assert_eq!(id(&psl2(13).unwrap()).unwrap().l2_odd_q(), Some(13));
        assert_eq!(id(&alternating(7).unwrap()).unwrap().l2_odd_q(), None);
        assert_eq!(id(&cyclic(13).unwrap()), Some(SimpleKind::CyclicPrime(13)));
        assert_eq!(id(&alternating(4).unwrap()), None);
        assert_eq!(id(&symmetric(4).unwrap()), None);
    }

    #[test]
    fn spectra_separate_order_twelve_groups() {
        // The four order-12 groups this crate can build, plus the dicyclic
        // group pinned by its right-regular generators, all have distinct
        // element-order histograms, so spectrum matching cannot confuse
        // them in section scans.
        let dic3 = std::sync::Arc::new(
            PermGroup::from_cycle_strs(
                12,
                &[
                    "(1,2,3,4,5,6)(7,12,11,10,9,8)",
                    "(1,7,4,10)(2,8,5,11)(3,9,6,12)",
                ],
            )
            .unwrap(),
        );
        assert_eq!(dic3.order_u64(), Some(12));
        let mut seen = Vec::new();
        for g in [
            alternating(4).unwrap(),
            cyclic(12).unwrap(),
            direct_product(&cyclic(6).unwrap(), &cyclic(2).unwrap()).unwrap().group,
            dihedral(6).unwrap(),
            dic3,
        ] {
            let s = spectrum(&g, 1000).unwrap();
            assert!(!seen.contains(&s), "duplicate spectrum {:?}", s);
            seen.push(s);
        }
    }

    #[test]
    fn cyclic_and_elementary_abelian_predicates() {
        assert!(is_cyclic(&cyclic(12).unwrap()));
        assert!(!is_cyclic(&dihedral(2).unwrap()));
        assert!(!is_cyclic(&symmetric(3).unwrap()));
        assert_eq!(
            elementary_abelian_params(&elementary_abelian(3, 2).unwrap()),
            Some((3, 2))
        );
        assert_eq!(elementary_abelian_params(&cyclic(9).unwrap()), None);
        assert_eq!(elementary_abelian_params(&cyclic(5).unwrap()), Some((5, 1)));
        assert!(is_klein_four(&dihedral(2).unwrap()));
        assert!(!is_klein_four(&cyclic(4).unwrap()));
    }

    #[test]
    fn isomorphism_search() {
        let iso = |a: &Group, b: &Group| isomorphic(a, b, 100_000).unwrap();
        assert!(iso(&psl2(5).unwrap(), &alternating(5).unwrap()));
        assert!(iso(&dihedral(3).unwrap(), &symmetric(3).unwrap()));
        assert!(iso(&elementary_abelian(2, 2).unwrap(), &dihedral(2).unwrap()));
        assert!(!iso(&cyclic(6).unwrap(), &symmetric(3).unwrap()));
        assert!(!iso(&alternating(4).unwrap(), &dihedral(6).unwrap()));
        assert!(!iso(&cyclic(12).unwrap(), &alternating(4).unwrap()));
    }

    #[test]
    fn section_scans() {
        let bounds = dflt();
        let a5 = alternating(5).unwrap();
        // A5 is its own section of order 60.
        assert!(!is_section_free_of(&a5, &psl2(5).unwrap(), &bounds).unwrap());
        // ...and has A4 sections too.
        assert!(!is_section_free_of(&a5, &alternating(4).unwrap(), &bounds).unwrap());
        // S4 contains no section of order 60.
        assert!(is_section_free_of(&symmetric(4).unwrap(), &psl2(5).unwrap(), &bounds).unwrap());
        // S3 x S3 has plenty of order-12 subgroups but no A4 section.
        let s3s3 = direct_product(&symmetric(3).unwrap(), &symmetric(3).unwrap())
            .unwrap()
            .group;
        assert!(is_section_free_of(&s3s3, &alternating(4).unwrap(), &bounds).unwrap());
        // S4/V4 ~ S3: quotient sections are found, not just subgroups.
        assert!(!is_section_free_of(&symmetric(4).unwrap(), &symmetric(3).unwrap(), &bounds)
            .unwrap());
    }
}
