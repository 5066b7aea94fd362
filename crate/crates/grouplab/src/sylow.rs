//! Sylow subgroups, Hall subgroups, and their classification.
//!
//! Sylow subgroups are found without enumerating the group: a pool of
//! p-elements is grown from short generator words and closed under
//! conjugation, then merged greedily. A candidate is accepted when it still
//! generates a p-group together with what has been collected; acceptance is
//! monotone (a rejected candidate stays rejected as the subgroup grows), so
//! one deterministic pass suffices. If the pool was too poor to reach the
//! full p-part, the same greedy pass over all p-elements of the group is
//! complete: a proper p-subgroup P sits inside some Sylow subgroup S with
//! N_S(P) > P, so the scan always finds an extending element.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::bsgs::Chain;
use crate::error::{Error, Result};
use crate::group::Group;
use crate::lattice::enumerate_subgroups;
use crate::modp;
use crate::perm::Perm;
use crate::subgroup::Subgroup;
use crate::Bounds;

/// Distinct elements collected from short generator words for pool seeding.
const WORD_BUDGET: usize = 512;
/// Upper bound on the candidate pool closed under conjugation.
const POOL_CAP: usize = 2048;

/// Largest power of p dividing n.
pub fn p_part(n: &BigUint, p: u64) -> BigUint {
    let p = BigUint::from(p);
    let mut rest = n.clone();
    let mut part = BigUint::one();
    loop {
        let (q, r) = rest.div_rem(&p);
        if !r.is_zero() {
            break;
        }
        rest = q;
        part *= &p;
    }
    part
}

/// Product of the p-parts over the primes in pi.
pub fn pi_part(n: &BigUint, pi: &[u64]) -> BigUint {
    let mut part = BigUint::one();
    let mut seen = Vec::new();
    for &p in pi {
        if seen.contains(&p) {
            continue;
        }
        seen.push(p);
        part *= p_part(n, p);
    }
    part
}

/// True iff every prime factor of n lies in pi.
pub fn is_pi_number(n: &BigUint, pi: &[u64]) -> bool {
    &pi_part(n, pi) == n
}

pub fn is_p_power(n: &BigUint, p: u64) -> bool {
    &p_part(n, p) == n
}

/// Distinct group elements reachable by short generator words, in
/// breadth-first order.
fn short_words(g: &Group, budget: usize) -> Vec<Perm> {
    let mut seen = std::collections::HashSet::new();
    let mut out = vec![Perm::identity(g.degree())];
    seen.insert(out[0].clone());
    let mut next = 0;
    while next < out.len() && out.len() < budget {
        let cur = out[next].clone();
        next += 1;
        for gen in g.generators() {
            let w = cur.compose(gen);
            if seen.insert(w.clone()) {
                out.push(w);
                if out.len() >= budget {
                    break;
                }
            }
        }
    }
    out
}

/// The p-element obtained by powering away the p'-part of the order.
fn p_element_part(x: &Perm, p: u64) -> Option<Perm> {
    let n = x.order();
    if n % p != 0 {
        return None;
    }
    let mut m = n;
    while m % p == 0 {
        m /= p;
    }
    Some(x.pow(m))
}

fn grow_by_p_elements(
    p: u64,
    target: &BigUint,
    chain: &mut Chain<Perm>,
    gens: &mut Vec<Perm>,
    candidates: impl Iterator<Item = Perm>,
) {
    for c in candidates {
        if chain.order() == *target {
            return;
        }
        if chain.contains(&c) {
            continue;
        }
        let mut trial = chain.clone();
        trial.add_generator(c.clone());
        if is_p_power(&trial.order(), p) {
            *chain = trial;
            gens.push(c);
        }
    }
}

/// A Sylow p-subgroup, deterministically chosen.
pub fn sylow(g: &Group, p: u64, bounds: &Bounds) -> Result<Subgroup> {
    if !modp::is_prime(p) {
        return Err(Error::InvalidParameter(format!("{} is not prime", p)));
    }
    let target = p_part(g.order(), p);
    if target.is_one() {
        return Ok(Subgroup::trivial(g));
    }

    // Seed pool: p-parts of short generator words.
    let mut pool: Vec<Perm> = Vec::new();
    let mut in_pool = std::collections::HashSet::new();
    for w in short_words(g, WORD_BUDGET) {
        if let Some(e) = p_element_part(&w, p) {
            if !e.is_identity() && in_pool.insert(e.clone()) {
                pool.push(e);
                if pool.len() >= POOL_CAP {
                    break;
                }
            }
        }
    }

    let mut chain = Chain::new(Perm::identity(g.degree()), &[]);
    let mut gens = Vec::new();
    grow_by_p_elements(p, &target, &mut chain, &mut gens, pool.into_iter());

    // Conjugate-merge rounds: feed in conjugates of what has been collected
    // so far. Each round either grows the subgroup by a factor of at least p
    // or reaches a fixpoint, so this terminates quickly.
    while chain.order() != target {
        let before = chain.order();
        let candidates: Vec<Perm> = gens
            .iter()
            .flat_map(|h| g.generators().iter().map(move |x| h.conjugate_by(x)))
            .collect();
        grow_by_p_elements(p, &target, &mut chain, &mut gens, candidates.into_iter());
        if chain.order() == before {
            break;
        }
    }

    if chain.order() != target {
        // Complete fallback: greedy over every p-element of the group.
        let mut elems = g.elements(bounds.element_cap).map_err(|_| {
            Error::ResourceExceeded(format!(
                "sylow {}-subgroup search stalled at order {} (target {}) and the group \
                 is too large for an element scan",
                p,
                chain.order(),
                target
            ))
        })?;
        elems.sort();
        let candidates = elems.into_iter().filter(|e| {
            !e.is_identity() && is_p_power(&BigUint::from(e.order()), p)
        });
        grow_by_p_elements(p, &target, &mut chain, &mut gens, candidates);
        assert_eq!(
            chain.order(),
            target,
            "element-scan Sylow ascent is complete"
        );
    }
    Subgroup::new(g, gens)
}

/// All Sylow p-subgroups: the conjugation orbit of one of them. The count
/// is capped by `bounds.index_cap`.
pub fn all_sylow(g: &Group, p: u64, bounds: &Bounds) -> Result<Vec<Subgroup>> {
    let first = sylow(g, p, bounds)?;
    let mut orbit = vec![first];
    let mut next = 0;
    while next < orbit.len() {
        let cur = orbit[next].clone();
        next += 1;
        for gen in g.generators() {
            let c = cur.conjugate(gen)?;
            if !orbit.iter().any(|s| s.same_subgroup_as(&c)) {
                if orbit.len() as u64 >= bounds.index_cap {
                    return Err(Error::ResourceExceeded(format!(
                        "more than {} Sylow {}-subgroups",
                        bounds.index_cap, p
                    )));
                }
                orbit.push(c);
            }
        }
    }
    Ok(orbit)
}

/// An element conjugating `a` onto `b`, found by scanning `elems`.
pub fn conjugating_element(a: &Subgroup, b: &Subgroup, elems: &[Perm]) -> Option<Perm> {
    if a.order() != b.order() {
        return None;
    }
    elems
        .iter()
        .find(|x| {
            a.group()
                .generators()
                .iter()
                .all(|g| b.contains(&g.conjugate_by(x)))
        })
        .cloned()
}

/// A Hall pi-subgroup if one exists, `None` if provably absent. Routes
/// through Sylow machinery when pi meets only one prime of the group order,
/// and otherwise needs the group to be small enough for full enumeration.
pub fn hall(g: &Group, pi: &[u64], bounds: &Bounds) -> Result<Option<Subgroup>> {
    for &p in pi {
        if !modp::is_prime(p) {
            return Err(Error::InvalidParameter(format!("{} is not prime", p)));
        }
    }
    let target = pi_part(g.order(), pi);
    if target.is_one() {
        return Ok(Some(Subgroup::trivial(g)));
    }
    if &target == g.order() {
        return Ok(Some(Subgroup::full(g)));
    }
    let relevant: Vec<u64> = pi
        .iter()
        .copied()
        .filter(|&p| (g.order() % p) == BigUint::from(0u32))
        .collect();
    if let [p] = relevant.as_slice() {
        return Ok(Some(sylow(g, *p, bounds)?));
    }
    let subs = enumerate_subgroups(g, bounds)?;
    Ok(subs.into_iter().find(|s| s.order() == &target))
}

/// A Hall p'-subgroup (a p-complement) if one exists.
pub fn p_complement(g: &Group, p: u64, bounds: &Bounds) -> Result<Option<Subgroup>> {
    let order = g.order_u64().ok_or_else(|| {
        Error::ResourceExceeded("p-complement search needs a u64 group order".into())
    })?;
    let pi: Vec<u64> = modp::factor_u64(order)
        .into_iter()
        .map(|(q, _)| q)
        .filter(|&q| q != p)
        .collect();
    hall(g, &pi, bounds)
}

/// Existence / conjugacy / dominance status of Hall pi-subgroups.
///
/// `exists`: some Hall pi-subgroup exists. `all_conjugate`: they form one
/// conjugacy class. `covers_pi_subgroups`: additionally every pi-subgroup
/// lies inside some Hall pi-subgroup. The three flags are monotone by
/// construction: covers implies conjugate implies exists.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HallClassification {
    pub exists: bool,
    pub all_conjugate: bool,
    pub covers_pi_subgroups: bool,
}

/// Classify Hall pi-subgroups given a precomputed subgroup list and element
/// list of the parent.
pub fn classify_hall_in(
    g: &Group,
    subs: &[Subgroup],
    elems: &[Perm],
    pi: &[u64],
) -> HallClassification {
    let target = pi_part(g.order(), pi);
    let halls: Vec<&Subgroup> = subs.iter().filter(|s| s.order() == &target).collect();
    let exists = !halls.is_empty();
    let all_conjugate = exists
        && halls[1..]
            .iter()
            .all(|h| conjugating_element(halls[0], h, elems).is_some());
    let covers_pi_subgroups = all_conjugate
        && subs
            .iter()
            .filter(|s| is_pi_number(s.order(), pi))
            .all(|s| halls.iter().any(|h| h.contains_subgroup(s)));
    HallClassification {
        exists,
        all_conjugate,
        covers_pi_subgroups,
    }
}

/// Classify Hall pi-subgroups by full enumeration.
pub fn classify_hall(g: &Group, pi: &[u64], bounds: &Bounds) -> Result<HallClassification> {
    let subs = enumerate_subgroups(g, bounds)?;
    let elems = g.elements(bounds.element_cap)?;
    Ok(classify_hall_in(g, &subs, &elems, pi))
}
