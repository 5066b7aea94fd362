//! Subgroup lattices and the enumeration machinery behind them.
//!
//! Exhaustive enumeration seeds with all cyclic subgroups and closes under
//! pairwise joins; every subgroup is the join of the cyclic subgroups of its
//! elements, so the fixpoint is the complete lattice. Normal subgroups are
//! enumerated independently through conjugacy-class closures, which scales
//! to much larger groups than the full lattice does.
//!
//! Everything is deterministic: entries end up in canonical order (ascending
//! order, ties broken by the sorted element list), so reports and witness
//! searches are reproducible run to run and identical between the parallel
//! and sequential execution modes.

use std::collections::{HashMap, HashSet};

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::group::{quotient, Group, PermGroup};
use crate::modp;
use crate::par;
use crate::perm::Perm;
use crate::subgroup::{reduced_generators, Subgroup};
use crate::Bounds;

/// Pair-join batch size; bounds peak memory while keeping the cores busy.
const JOIN_CHUNK: usize = 64;

/// Deduplicating pool of subgroups of one parent, bucketed by order.
struct Pool {
    parent: Group,
    subs: Vec<Subgroup>,
    by_order: HashMap<u64, Vec<usize>>,
}

impl Pool {
    fn new(parent: &Group) -> Pool {
        Pool {
            parent: parent.clone(),
            subs: Vec::new(),
            by_order: HashMap::new(),
        }
    }

    fn try_insert(&mut self, s: Subgroup) -> bool {
        let order = s
            .group()
            .order_u64()
            .expect("pooled subgroup orders fit in u64");
        let bucket = self.by_order.entry(order).or_default();
        if bucket.iter().any(|&i| self.subs[i].same_subgroup_as(&s)) {
            return false;
        }
        bucket.push(self.subs.len());
        self.subs.push(s);
        true
    }

    /// Close the pool under pairwise joins. Each round pairs the newest
    /// entries against everything before them, so no pair is joined twice.
    fn close_under_joins(&mut self) {
        let parent_order = self
            .parent
            .order_u64()
            .expect("pooled parents fit in u64");
        let mut frontier = 0;
        while frontier < self.subs.len() {
            let len = self.subs.len();
            let pairs: Vec<(usize, usize)> = (frontier..len)
                .flat_map(|b| (0..b).map(move |a| (a, b)))
                .collect();
            for chunk in pairs.chunks(JOIN_CHUNK) {
                let subs = &self.subs;
                let parent = &self.parent;
                let joined: Vec<Option<Subgroup>> = par::par_map(chunk, |&(a, b)| {
                    let (x, y) = (&subs[a], &subs[b]);
                    // Subset pre-check: the join of nested subgroups is
                    // already in the pool.
                    if x.contains_subgroup(y) || y.contains_subgroup(x) {
                        return None;
                    }
                    // Orbit certificate: the parent itself was pooled up
                    // front, so skip the chain build when the join is
                    // provably the whole parent.
                    if join_is_parent(parent, parent_order, x, y) {
                        return None;
                    }
                    Some(x.join(y).expect("join of pooled subgroups"))
                });
                for s in joined.into_iter().flatten() {
                    self.try_insert(s);
                }
            }
            frontier = len;
        }
    }
}

/// True when the join of `x` and `y` must be the parent group, decided
/// without building a stabilizer chain: every orbit size of ⟨X ∪ Y⟩ divides
/// the join's order (orbit-stabilizer), as do |X| and |Y|, and the join's
/// order divides the parent's — so once the lcm of those certificates
/// reaches the parent order, the join is the parent.
fn join_is_parent(parent: &Group, parent_order: u64, x: &Subgroup, y: &Subgroup) -> bool {
    let (Some(xo), Some(yo)) = (x.group().order_u64(), y.group().order_u64()) else {
        return false;
    };
    // Overflow-safe running lcm; any step that fails to divide the parent
    // order refuses the shortcut and leaves the work to the real join.
    let fold = |l: u64, m: u64| -> Option<u64> {
        let cand = (l / num_integer::gcd(l, m)) as u128 * m as u128;
        (cand <= parent_order as u128 && parent_order as u128 % cand == 0)
            .then_some(cand as u64)
    };
    let Some(mut l) = fold(xo, yo) else {
        return false;
    };
    if l == parent_order {
        return true;
    }
    let gens: Vec<&Perm> = x
        .group()
        .generators()
        .iter()
        .chain(y.group().generators())
        .collect();
    let degree = parent.degree();
    let mut seen = vec![false; degree];
    let mut stack = Vec::new();
    for start in 0..degree {
        if seen[start] {
            continue;
        }
        let mut size = 0u64;
        seen[start] = true;
        stack.push(start);
        while let Some(pt) = stack.pop() {
            size += 1;
            for g in &gens {
                let img = g.images()[pt];
                if !seen[img] {
                    seen[img] = true;
                    stack.push(img);
                }
            }
        }
        let Some(next) = fold(l, size) else {
            return false;
        };
        l = next;
        if l == parent_order {
            return true;
        }
    }
    false
}

/// One generator per distinct cyclic subgroup, deduplicated by power set.
fn cyclic_seed_gens(parent: &Group, element_cap: u64) -> Result<Vec<Perm>> {
    let mut elems = parent.elements(element_cap)?;
    elems.sort();
    let mut seen: HashSet<Vec<Perm>> = HashSet::new();
    let mut seeds = Vec::new();
    for e in elems {
        if e.is_identity() {
            continue;
        }
        let mut powers = vec![e.clone()];
        let mut cur = e.clone();
        while !cur.is_identity() {
            cur = cur.compose(&e);
            powers.push(cur.clone());
        }
        powers.sort();
        if seen.insert(powers) {
            seeds.push(e);
        }
    }
    Ok(seeds)
}

/// Materialize sorted element lists and put the subgroups into canonical
/// order: ascending group order, ties broken by the element list.
fn canonical_sort(
    subs: Vec<Subgroup>,
    element_cap: u64,
) -> Result<(Vec<Subgroup>, Vec<Vec<Perm>>)> {
    let listed: Vec<Result<Vec<Perm>>> = par::par_map(&subs, |s| {
        let mut es = s.group().elements(element_cap)?;
        es.sort();
        Ok(es)
    });
    let mut elements = Vec::with_capacity(subs.len());
    for l in listed {
        elements.push(l?);
    }
    let mut idx: Vec<usize> = (0..subs.len()).collect();
    idx.sort_by(|&i, &j| {
        elements[i]
            .len()
            .cmp(&elements[j].len())
            .then_with(|| elements[i].cmp(&elements[j]))
    });
    let mut subs_sorted = Vec::with_capacity(subs.len());
    let mut elems_sorted = Vec::with_capacity(subs.len());
    let mut subs_opt: Vec<Option<Subgroup>> = subs.into_iter().map(Some).collect();
    let mut elems_opt: Vec<Option<Vec<Perm>>> = elements.into_iter().map(Some).collect();
    for i in idx {
        subs_sorted.push(subs_opt[i].take().unwrap());
        elems_sorted.push(elems_opt[i].take().unwrap());
    }
    Ok((subs_sorted, elems_sorted))
}

fn enumerate_raw(parent: &Group, bounds: &Bounds) -> Result<(Vec<Subgroup>, Vec<Vec<Perm>>)> {
    let cap = bounds.exhaustive_order_bound;
    if parent.order() > &BigUint::from(cap) {
        return Err(Error::OrderExceedsCap {
            order: parent.order().clone(),
            cap,
        });
    }
    let mut pool = Pool::new(parent);
    pool.try_insert(Subgroup::trivial(parent));
    pool.try_insert(Subgroup::full(parent));
    for e in cyclic_seed_gens(parent, cap)? {
        pool.try_insert(Subgroup::new(parent, vec![e])?);
    }
    pool.close_under_joins();
    canonical_sort(pool.subs, cap)
}

/// Every subgroup of `parent`, in canonical order. The group order must not
/// exceed `bounds.exhaustive_order_bound`.
pub fn enumerate_subgroups(parent: &Group, bounds: &Bounds) -> Result<Vec<Subgroup>> {
    Ok(enumerate_raw(parent, bounds)?.0)
}

/// The complete subgroup lattice of one group: all subgroups in canonical
/// order, the containment relation, and the Hasse diagram.
pub struct SubgroupLattice {
    parent: Group,
    subs: Vec<Subgroup>,
    elements: Vec<Vec<Perm>>,
    leq: Vec<Vec<bool>>,
    upper_covers: Vec<Vec<usize>>,
    lower_covers: Vec<Vec<usize>>,
}

impl SubgroupLattice {
    pub fn build(parent: &Group, bounds: &Bounds) -> Result<SubgroupLattice> {
        let (subs, elements) = enumerate_raw(parent, bounds)?;
        let n = subs.len();
        let leq: Vec<Vec<bool>> = {
            let subs = &subs;
            par::par_map(&(0..n).collect::<Vec<_>>(), |&i| {
                (0..n)
                    .map(|j| {
                        i == j
                            || (elements[i].len() < elements[j].len()
                                && elements[j].len() % elements[i].len() == 0
                                && subs[j].contains_subgroup(&subs[i]))
                    })
                    .collect()
            })
        };
        let mut upper_covers: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut lower_covers: Vec<Vec<usize>> = vec![Vec::new(); n];
        for i in 0..n {
            for j in 0..n {
                if i == j || !leq[i][j] {
                    continue;
                }
                // j covers i iff nothing sits strictly between.
                let between = (0..n)
                    .any(|k| k != i && k != j && leq[i][k] && leq[k][j]);
                if !between {
                    upper_covers[i].push(j);
                    lower_covers[j].push(i);
                }
            }
        }
        let lattice = SubgroupLattice {
            parent: parent.clone(),
            subs,
            elements,
            leq,
            upper_covers,
            lower_covers,
        };
        debug_assert!(lattice.subs[lattice.bottom_index()].is_trivial());
        debug_assert!(lattice.subs[lattice.top_index()].is_full());
        Ok(lattice)
    }

    pub fn parent(&self) -> &Group {
        &self.parent
    }

    pub fn len(&self) -> usize {
        self.subs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn subgroup(&self, i: usize) -> &Subgroup {
        &self.subs[i]
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subs
    }

    pub fn elements(&self, i: usize) -> &[Perm] {
        &self.elements[i]
    }

    pub fn order_u64(&self, i: usize) -> u64 {
        self.elements[i].len() as u64
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    pub fn bottom_index(&self) -> usize {
        0
    }

    pub fn top_index(&self) -> usize {
        self.subs.len() - 1
    }

    pub fn upper_covers(&self, i: usize) -> &[usize] {
        &self.upper_covers[i]
    }

    pub fn lower_covers(&self, i: usize) -> &[usize] {
        &self.lower_covers[i]
    }

    /// Indices of the maximal subgroups of the whole group.
    pub fn maximal_indices(&self) -> Vec<usize> {
        self.lower_covers[self.top_index()].clone()
    }

    /// Indices of the maximal subgroups of entry `i`.
    pub fn maximal_of(&self, i: usize) -> &[usize] {
        &self.lower_covers[i]
    }

    /// Indices of subgroups maximal in some maximal subgroup, deduplicated
    /// and sorted.
    pub fn two_maximal_indices(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .maximal_indices()
            .into_iter()
            .flat_map(|m| self.lower_covers[m].iter().copied())
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Locate a subgroup in the lattice, if present.
    pub fn index_of(&self, sub: &Subgroup) -> Option<usize> {
        (0..self.len()).find(|&i| self.subs[i].same_subgroup_as(sub))
    }

    /// Indices of the entries that are normal in the parent.
    pub fn normal_indices(&self) -> Vec<usize> {
        let flags = par::par_map(&self.subs, |s| s.is_normal());
        (0..self.len()).filter(|&i| flags[i]).collect()
    }

    /// Frattini subgroup: the intersection of all maximal subgroups (the
    /// whole group when there are none).
    pub fn frattini(&self, element_cap: u64) -> Result<Subgroup> {
        let maxes = self.maximal_indices();
        let Some((&first, rest)) = maxes.split_first() else {
            return Ok(Subgroup::full(&self.parent));
        };
        let mut acc = self.subs[first].clone();
        for &m in rest {
            acc = acc.intersect(&self.subs[m], element_cap)?;
        }
        Ok(acc)
    }
}

/// Every normal subgroup of `parent`, in canonical order, computed from
/// conjugacy-class closures and join closure. Only needs the element list,
/// not the full lattice, so it works up to `element_cap`.
pub fn normal_subgroups(parent: &Group, element_cap: u64) -> Result<Vec<Subgroup>> {
    let mut elems = parent.elements(element_cap)?;
    elems.sort();
    let mut pool = Pool::new(parent);
    pool.try_insert(Subgroup::trivial(parent));
    pool.try_insert(Subgroup::full(parent));
    let mut classed: HashSet<Perm> = HashSet::new();
    for e in &elems {
        if e.is_identity() || classed.contains(e) {
            continue;
        }
        // Mark the whole conjugacy class, then close its span under
        // conjugation: that is exactly the normal closure of <e>.
        let mut queue = vec![e.clone()];
        classed.insert(e.clone());
        while let Some(x) = queue.pop() {
            for g in parent.generators() {
                let c = x.conjugate_by(g);
                if classed.insert(c.clone()) {
                    queue.push(c);
                }
            }
        }
        pool.try_insert(Subgroup::new(parent, vec![e.clone()])?.normal_closure());
    }
    // Joins of normal subgroups are normal, and every normal subgroup is the
    // join of the class closures of its elements.
    pool.close_under_joins();
    Ok(canonical_sort(pool.subs, element_cap)?.0)
}

fn largest_filtered_normal(
    normals: &[Subgroup],
    keep: impl Fn(u64) -> bool,
    what: &str,
) -> Result<Subgroup> {
    let matching: Vec<&Subgroup> = normals
        .iter()
        .filter(|n| keep(n.group().order_u64().expect("normal subgroup order fits u64")))
        .collect();
    let best = matching
        .iter()
        .max_by_key(|n| n.group().order_u64().unwrap())
        .expect("the trivial subgroup always matches")
        .to_owned();
    // The matching family is join-closed, so the largest member must
    // contain every other one.
    for n in &matching {
        if !best.contains_subgroup(n) {
            return Err(Error::InvariantViolated(format!(
                "{} is not unique: {} not inside {}",
                what,
                n.order(),
                best.order()
            )));
        }
    }
    Ok(best.clone())
}

/// Largest normal p-subgroup, picked out of an already-computed normal
/// subgroup list.
pub fn o_p_in(normals: &[Subgroup], p: u64) -> Result<Subgroup> {
    largest_filtered_normal(
        normals,
        |ord| ord == 1 || modp::prime_power(ord).map(|(q, _)| q == p).unwrap_or(false),
        "largest normal p-subgroup",
    )
}

/// Largest normal subgroup of order coprime to p.
pub fn o_p_prime_in(normals: &[Subgroup], p: u64) -> Result<Subgroup> {
    largest_filtered_normal(
        normals,
        |ord| ord % p != 0,
        "largest normal p'-subgroup",
    )
}

pub fn o_p(parent: &Group, p: u64, element_cap: u64) -> Result<Subgroup> {
    o_p_in(&normal_subgroups(parent, element_cap)?, p)
}

pub fn o_p_prime(parent: &Group, p: u64, element_cap: u64) -> Result<Subgroup> {
    o_p_prime_in(&normal_subgroups(parent, element_cap)?, p)
}

/// Fitting subgroup: the join of the largest normal p-subgroups over the
/// primes dividing the group order.
pub fn fitting(parent: &Group, element_cap: u64) -> Result<Subgroup> {
    let normals = normal_subgroups(parent, element_cap)?;
    let order = parent
        .order_u64()
        .ok_or_else(|| Error::ResourceExceeded("group order exceeds u64".into()))?;
    let mut acc = Subgroup::trivial(parent);
    for (p, _) in modp::factor_u64(order) {
        acc = acc.join(&o_p_in(&normals, p)?)?;
    }
    Ok(acc)
}

/// Minimal normal subgroups: nontrivial normals containing no smaller
/// nontrivial normal.
pub fn minimal_normal_subgroups(parent: &Group, element_cap: u64) -> Result<Vec<Subgroup>> {
    let normals = normal_subgroups(parent, element_cap)?;
    Ok(normals
        .iter()
        .filter(|n| {
            !n.is_trivial()
                && !normals
                    .iter()
                    .any(|m| !m.is_trivial() && m.order() < n.order() && n.contains_subgroup(m))
        })
        .cloned()
        .collect())
}

/// Frattini subgroup of a p-group: the normal closure of the generator
/// commutators and p-th powers.
pub fn frattini_of_p_group(p_group: &Group, p: u64) -> Result<Group> {
    let gens = p_group.generators();
    let mut fgens = Vec::new();
    for (i, a) in gens.iter().enumerate() {
        for b in gens.iter().skip(i + 1) {
            fgens.push(a.commutator(b));
        }
        fgens.push(a.pow(p));
    }
    let closure = Subgroup::new(p_group, reduced_generators(p_group.degree(), &fgens))?
        .normal_closure();
    Ok(closure.group().clone())
}

/// Coordinates on an elementary abelian group: a basis over F_p plus the
/// discrete-log table mapping every element to its coordinate vector.
pub struct EaStructure {
    pub p: u64,
    pub rank: usize,
    basis: Vec<Perm>,
    coords: HashMap<Perm, Vec<u64>>,
}

impl EaStructure {
    /// Detect elementary abelian structure. `Ok(None)` when the group is not
    /// elementary abelian (the trivial group counts as not detected).
    pub fn detect(group: &Group, element_cap: u64) -> Result<Option<EaStructure>> {
        let Some(order) = group.order_u64() else {
            return Ok(None);
        };
        let Some((p, rank)) = modp::prime_power(order) else {
            return Ok(None);
        };
        if order > element_cap {
            return Err(Error::ResourceExceeded(format!(
                "elementary abelian table of size {} exceeds cap {}",
                order, element_cap
            )));
        }
        if !group.is_abelian() || group.generators().iter().any(|g| g.order() != p) {
            return Ok(None);
        }
        let rank = rank as usize;
        let basis = reduced_generators(group.degree(), group.generators());
        if basis.len() != rank {
            return Err(Error::InvariantViolated(format!(
                "expected {} independent generators, found {}",
                rank,
                basis.len()
            )));
        }
        let mut coords = HashMap::with_capacity(order as usize);
        for idx in 0..order as u128 {
            let v = modp::index_to_vec(idx, p, rank);
            coords.insert(element_from(&basis, &v, group.degree()), v);
        }
        debug_assert_eq!(coords.len(), order as usize);
        Ok(Some(EaStructure {
            p,
            rank,
            basis,
            coords,
        }))
    }

    pub fn basis(&self) -> &[Perm] {
        &self.basis
    }

    pub fn element_for(&self, v: &[u64]) -> Perm {
        element_from(&self.basis, v, self.basis[0].degree())
    }

    pub fn coords_of(&self, g: &Perm) -> Option<&Vec<u64>> {
        self.coords.get(g)
    }

    /// Generators for the span of the given coordinate vectors.
    pub fn span_gens(&self, vecs: &[Vec<u64>]) -> Vec<Perm> {
        vecs.iter()
            .map(|v| self.element_for(v))
            .filter(|g| !g.is_identity())
            .collect()
    }

    /// One functional per hyperplane, in a fixed order.
    pub fn hyperplane_functionals(&self) -> Vec<Vec<u64>> {
        modp::projective_functionals(self.p, self.rank)
    }

    /// Generators of the hyperplane a functional cuts out.
    pub fn kernel_gens(&self, functional: &[u64]) -> Vec<Perm> {
        self.span_gens(&modp::functional_kernel_basis(functional, self.p))
    }

    /// Generators of a complement to the span of the given vectors.
    pub fn complement_gens(&self, span: &[Vec<u64>]) -> Vec<Perm> {
        self.span_gens(&modp::complete_basis(span, self.rank, self.p))
    }
}

fn element_from(basis: &[Perm], v: &[u64], degree: usize) -> Perm {
    let mut acc = Perm::identity(degree);
    for (b, &e) in basis.iter().zip(v) {
        if e > 0 {
            acc = acc.compose(&b.pow(e));
        }
    }
    acc
}

/// The maximal subgroups of a p-group, through its Frattini quotient: they
/// correspond exactly to the hyperplanes of the elementary abelian quotient.
/// Returned as subgroups of `sub`'s parent.
pub fn maximal_subgroups_p_group(sub: &Subgroup, bounds: &Bounds) -> Result<Vec<Subgroup>> {
    let p_group = sub.group();
    let order = p_group
        .order_u64()
        .ok_or_else(|| Error::ResourceExceeded("p-group order exceeds u64".into()))?;
    if order == 1 {
        return Ok(Vec::new());
    }
    let Some((p, _)) = modp::prime_power(order) else {
        return Err(Error::InvalidParameter(format!(
            "order {} is not a prime power",
            order
        )));
    };
    let phi = frattini_of_p_group(p_group, p)?;
    let mut out = Vec::new();
    if phi.is_trivial() {
        let ea = EaStructure::detect(p_group, bounds.element_cap)?.ok_or_else(|| {
            Error::InvariantViolated(
                "p-group with trivial Frattini subgroup must be elementary abelian".into(),
            )
        })?;
        for w in ea.hyperplane_functionals() {
            out.push(Subgroup::new(sub.parent(), ea.kernel_gens(&w))?);
        }
    } else {
        let (v, hom) = quotient(p_group, &phi, bounds.index_cap)?;
        let ea = EaStructure::detect(&v, bounds.element_cap)?.ok_or_else(|| {
            Error::InvariantViolated(
                "quotient by the Frattini subgroup must be elementary abelian".into(),
            )
        })?;
        for w in ea.hyperplane_functionals() {
            let plane = PermGroup::from_generators(v.degree(), ea.kernel_gens(&w))?;
            let pre = hom.preimage_group(&plane)?;
            out.push(Subgroup::new(sub.parent(), pre.generators().to_vec())?);
        }
    }
    Ok(out)
}
