//! Supplement search and certificates.
//!
//! For subgroups H of G we decide two supplementation properties:
//!
//! * **c**: some K <= G has HK = G and H n K inside the core of H in G;
//! * **nc**: some K <= G has HK a *normal subgroup* of G (the product set
//!   must itself be closed) and H n K inside the core of H.
//!
//! Every answer is a checkable certificate: a [`SupplementWitness`] records
//! the product order, closure and normality flags, the core, and the
//! intersection, so a verdict can be re-verified independently of how the
//! witness was found. Exhaustive searches scan the full subgroup lattice in
//! its canonical order and may return a definitive no; heuristic searches
//! only ever say yes or unknown.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use serde_json::json;

use crate::error::{Error, Result};
use crate::group::quotient;
use crate::lattice::{enumerate_subgroups, normal_subgroups};
use crate::modp::factor_u64;
use crate::par;
use crate::subgroup::{product_info, Subgroup};
use crate::sylow::{p_complement, sylow};
use crate::Bounds;

/// Which supplementation property a witness claims.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SupplementKind {
    /// HK = G with H n K inside the core of H.
    C,
    /// HK normal in G (product set closed) with H n K inside the core of H.
    Nc,
}

impl fmt::Display for SupplementKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SupplementKind::C => write!(f, "c"),
            SupplementKind::Nc => write!(f, "nc"),
        }
    }
}

/// A re-checkable record of one (H, K) supplementation claim.
///
/// Construction never fails just because the claim is false: every flag is
/// simply recorded, and [`SupplementWitness::is_valid`] reads them back.
#[derive(Clone)]
pub struct SupplementWitness {
    kind: SupplementKind,
    h: Subgroup,
    k: Subgroup,
    /// Core of H in G: the largest normal subgroup of G inside H.
    core: Subgroup,
    /// H n K.
    intersection: Subgroup,
    /// |HK| = |H| |K| / |H n K|, whether or not the product set is closed.
    hk_order: BigUint,
    /// True iff HK = <H, K> as sets.
    hk_is_group: bool,
    /// True iff HK is closed *and* normal in G.
    hk_normal: bool,
    /// True iff H n K lies inside the core of H.
    intersection_in_core: bool,
}

impl SupplementWitness {
    pub fn kind(&self) -> SupplementKind {
        self.kind
    }

    pub fn h(&self) -> &Subgroup {
        &self.h
    }

    pub fn k(&self) -> &Subgroup {
        &self.k
    }

    pub fn core(&self) -> &Subgroup {
        &self.core
    }

    pub fn intersection(&self) -> &Subgroup {
        &self.intersection
    }

    pub fn hk_order(&self) -> &BigUint {
        &self.hk_order
    }

    pub fn hk_is_group(&self) -> bool {
        self.hk_is_group
    }

    pub fn hk_normal(&self) -> bool {
        self.hk_normal
    }

    pub fn intersection_in_core(&self) -> bool {
        self.intersection_in_core
    }

    /// Does the recorded evidence actually establish the claimed property?
    ///
    /// For c the product must cover G (|HK| = |G| forces HK = G as a set, so
    /// no closure check is needed); for nc the product must be closed and
    /// normal. Both need H n K inside the core.
    pub fn is_valid(&self) -> bool {
        if !self.intersection_in_core {
            return false;
        }
        match self.kind {
            SupplementKind::C => &self.hk_order == self.h.parent().order(),
            SupplementKind::Nc => self.hk_is_group && self.hk_normal,
        }
    }

    /// Machine-readable form with generators in cycle notation and orders as
    /// decimal strings.
    pub fn to_json(&self) -> serde_json::Value {
        let cyc = |s: &Subgroup| -> Vec<String> {
            s.group().generators().iter().map(|p| p.to_string()).collect()
        };
        json!({
            "group": {
                "degree": self.h.parent().degree(),
                "order": self.h.parent().order().to_string(),
            },
            "kind": self.kind.to_string(),
            "h_gens": cyc(&self.h),
            "k_gens": cyc(&self.k),
            "checks": {
                "h_order": self.h.order().to_string(),
                "k_order": self.k.order().to_string(),
                "hk_order": self.hk_order.to_string(),
                "hk_is_subgroup": self.hk_is_group,
                "hk_normal": self.hk_normal,
                "core_order": self.core.order().to_string(),
                "intersection_order": self.intersection.order().to_string(),
                "intersection_in_core": self.intersection_in_core,
                "valid": self.is_valid(),
            },
        })
    }
}

impl fmt::Debug for SupplementWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "SupplementWitness({} |H|={} |K|={} |HK|={} group={} normal={} core={} in_core={})",
            self.kind,
            self.h.order(),
            self.k.order(),
            self.hk_order,
            self.hk_is_group,
            self.hk_normal,
            self.core.order(),
            self.intersection_in_core,
        )
    }
}

fn ensure_same_parent(h: &Subgroup, k: &Subgroup) -> Result<()> {
    if h.parent().degree() != k.parent().degree()
        || h.parent().order() != k.parent().order()
        || !h.parent().contains_all(k.parent().generators())
    {
        return Err(Error::InvalidParameter(
            "H and K must be subgroups of the same group".into(),
        ));
    }
    Ok(())
}

/// Check one (H, K) claim against a precomputed core of H.
///
/// Errors only on resource caps (intersection scan); a *wrong* claim comes
/// back as a witness whose flags are false.
pub fn verify_with_core(
    h: &Subgroup,
    k: &Subgroup,
    kind: SupplementKind,
    core: &Subgroup,
    bounds: &Bounds,
) -> Result<SupplementWitness> {
    let info = product_info(h, k, bounds.element_cap)?;
    let hk_normal = info.forms_subgroup && info.join.is_normal();
    let intersection_in_core = core.contains_subgroup(&info.intersection);
    Ok(SupplementWitness {
        kind,
        h: h.clone(),
        k: k.clone(),
        core: core.clone(),
        intersection: info.intersection,
        hk_order: info.product_order,
        hk_is_group: info.forms_subgroup,
        hk_normal,
        intersection_in_core,
    })
}

/// Check one (H, K) claim, computing the core of H fresh.
pub fn verify_witness(
    h: &Subgroup,
    k: &Subgroup,
    kind: SupplementKind,
    bounds: &Bounds,
) -> Result<SupplementWitness> {
    ensure_same_parent(h, k)?;
    let core = h.core(bounds)?;
    verify_with_core(h, k, kind, &core, bounds)
}

/// Outcome of a supplement search.
#[derive(Clone, Debug)]
pub enum SupplementStatus {
    /// A valid witness was found.
    Yes(SupplementWitness),
    /// Every subgroup of G was tried and none works. `searched` is the
    /// lattice size, so the no is auditable.
    No { searched: usize },
    /// The heuristic candidate list was exhausted without a hit; no claim
    /// either way.
    Unknown,
}

impl SupplementStatus {
    pub fn is_yes(&self) -> bool {
        matches!(self, SupplementStatus::Yes(_))
    }

    pub fn is_no(&self) -> bool {
        matches!(self, SupplementStatus::No { .. })
    }

    pub fn witness(&self) -> Option<&SupplementWitness> {
        match self {
            SupplementStatus::Yes(w) => Some(w),
            _ => None,
        }
    }

    /// Short provenance tag for reports: `exhaustive(n)`, `heuristic`, or
    /// `unknown`.
    pub fn tag(&self) -> String {
        match self {
            SupplementStatus::Yes(_) => "witness".into(),
            SupplementStatus::No { searched } => format!("exhaustive({searched})"),
            SupplementStatus::Unknown => "unknown".into(),
        }
    }
}

/// Search for a supplement of the given kind.
///
/// If |G| fits under `bounds.exhaustive_order_bound` the full subgroup
/// lattice is scanned in canonical order and the *first* valid K wins, so
/// repeated runs return byte-identical witnesses; a miss is a definitive
/// [`SupplementStatus::No`]. Above the bound only a fixed candidate list is
/// tried — trivial, G itself, whatever normal subgroups are computable,
/// Sylow subgroups, p-complements for the primes of |H|, and any
/// caller-supplied `extra` — and a miss is [`SupplementStatus::Unknown`].
pub fn find_supplement_with(
    h: &Subgroup,
    kind: SupplementKind,
    bounds: &Bounds,
    extra: &[Subgroup],
) -> Result<SupplementStatus> {
    let g = h.parent();
    let core = h.core(bounds)?;

    let exhaustive = g
        .order_u64()
        .is_some_and(|n| n <= bounds.exhaustive_order_bound);
    if exhaustive {
        let subs = enumerate_subgroups(g, bounds)?;
        return find_supplement_among(h, kind, &subs, bounds);
    }

    let mut candidates: Vec<Subgroup> = vec![Subgroup::trivial(g), Subgroup::full(g)];
    if let Ok(normals) = normal_subgroups(g, bounds.element_cap) {
        candidates.extend(normals);
    }
    if let Some(n) = g.order_u64() {
        for (p, _) in factor_u64(n) {
            if let Ok(s) = sylow(g, p, bounds) {
                candidates.push(s);
            }
        }
    }
    if let Some(hn) = h.group().order_u64() {
        for (p, _) in factor_u64(hn) {
            if let Ok(Some(c)) = p_complement(h.parent(), p, bounds) {
                candidates.push(c);
            }
        }
    }
    candidates.extend(extra.iter().cloned());

    for k in &candidates {
        if let Ok(w) = verify_with_core(h, k, kind, &core, bounds) {
            if w.is_valid() {
                return Ok(SupplementStatus::Yes(w));
            }
        }
    }
    Ok(SupplementStatus::Unknown)
}

/// Exhaustive scan over a caller-provided candidate list, normally the full
/// subgroup lattice of H's parent in canonical order. The first valid K in
/// list order wins (the parallel scan preserves that winner), and a miss is
/// a definitive no over `candidates.len()` subgroups. Callers holding a
/// prebuilt lattice should prefer this to [`find_supplement_with`], which
/// re-enumerates.
pub fn find_supplement_among(
    h: &Subgroup,
    kind: SupplementKind,
    candidates: &[Subgroup],
    bounds: &Bounds,
) -> Result<SupplementStatus> {
    let core = h.core(bounds)?;
    let hit = par::par_find_first(candidates, |k| {
        let w = verify_with_core(h, k, kind, &core, bounds).ok()?;
        w.is_valid().then_some(w)
    });
    Ok(match hit {
        Some(w) => SupplementStatus::Yes(w),
        None => SupplementStatus::No {
            searched: candidates.len(),
        },
    })
}

/// Search for a K with HK = G and H n K inside the core of H.
pub fn find_c_supplement(h: &Subgroup, bounds: &Bounds) -> Result<SupplementStatus> {
    find_supplement_with(h, SupplementKind::C, bounds, &[])
}

/// Search for a K with HK normal in G and H n K inside the core of H.
pub fn find_nc_supplement(h: &Subgroup, bounds: &Bounds) -> Result<SupplementStatus> {
    find_supplement_with(h, SupplementKind::Nc, bounds, &[])
}

/// Replace the supplement K of a valid witness by C = K (core of H).
///
/// The enlarged supplement is always at least as good: HC is still the same
/// normal (or full) product, and the intersection H n C is now *exactly* the
/// core of H, not merely inside it. Returns the re-verified witness; errors
/// if the input is invalid or the sharpened equalities fail to hold, since
/// that would mean the arithmetic is broken.
pub fn normalize_supplement(w: &SupplementWitness, bounds: &Bounds) -> Result<SupplementWitness> {
    if !w.is_valid() {
        return Err(Error::InvalidParameter(
            "normalize_supplement needs a valid witness".into(),
        ));
    }
    let info = product_info(w.k(), w.core(), bounds.element_cap)?;
    if !info.forms_subgroup {
        return Err(Error::InvariantViolated(
            "product of a supplement with a core (a normal subgroup) must be closed".into(),
        ));
    }
    let c = info.join;
    let out = verify_with_core(w.h(), &c, w.kind(), w.core(), bounds)?;
    if !out.is_valid() {
        return Err(Error::InvariantViolated(
            "enlarging a supplement by the core broke validity".into(),
        ));
    }
    if !out.intersection().same_subgroup_as(w.core()) {
        return Err(Error::InvariantViolated(
            "H n (K core) must equal the core of H exactly".into(),
        ));
    }
    Ok(out)
}

/// Restrict a valid nc-witness for H <= G to an intermediate M with
/// H <= M <= G: K' = K n M supplements H inside M.
pub fn restrict_to_intermediate(
    w: &SupplementWitness,
    m: &Subgroup,
    bounds: &Bounds,
) -> Result<SupplementWitness> {
    if w.kind() != SupplementKind::Nc || !w.is_valid() {
        return Err(Error::InvalidParameter(
            "restriction needs a valid nc witness".into(),
        ));
    }
    if !m.contains_subgroup(w.h()) {
        return Err(Error::InvalidParameter(
            "intermediate subgroup must contain H".into(),
        ));
    }
    let k_cap_m = w.k().intersect(m, bounds.element_cap)?;
    let inner = m.group();
    let h_in_m = Subgroup::new(inner, w.h().group().generators().to_vec())?;
    let k_in_m = Subgroup::new(inner, k_cap_m.group().generators().to_vec())?;
    let out = verify_witness(&h_in_m, &k_in_m, SupplementKind::Nc, bounds)?;
    if !out.is_valid() {
        return Err(Error::InvariantViolated(
            "K n M failed to supplement H inside M".into(),
        ));
    }
    Ok(out)
}

fn map_into_quotient(
    w: &SupplementWitness,
    n: &Subgroup,
    bounds: &Bounds,
) -> Result<SupplementWitness> {
    let g = w.h().parent();
    let (q, hom) = quotient(g, n.group(), bounds.index_cap)?;
    let h_q = Subgroup::new(&q, hom.map_subgroup_gens(w.h().group().generators())?)?;
    let k_q = Subgroup::new(&q, hom.map_subgroup_gens(w.k().group().generators())?)?;
    let out = verify_witness(&h_q, &k_q, SupplementKind::Nc, bounds)?;
    if !out.is_valid() {
        return Err(Error::InvariantViolated(
            "supplement image failed to supplement in the quotient".into(),
        ));
    }
    Ok(out)
}

/// Push a valid nc-witness through G -> G/N when N is normal and N <= H:
/// the image of H is H/N and the image of K supplements it.
pub fn push_to_quotient_contained(
    w: &SupplementWitness,
    n: &Subgroup,
    bounds: &Bounds,
) -> Result<SupplementWitness> {
    if w.kind() != SupplementKind::Nc || !w.is_valid() {
        return Err(Error::InvalidParameter(
            "quotient push needs a valid nc witness".into(),
        ));
    }
    if !n.is_normal() {
        return Err(Error::NotNormal);
    }
    if !w.h().contains_subgroup(n) {
        return Err(Error::InvalidParameter(
            "contained push needs N inside H".into(),
        ));
    }
    map_into_quotient(w, n, bounds)
}

/// Push a valid nc-witness through G -> G/N when N is normal and
/// gcd(|N|, |H|) = 1: the image of H is HN/N and the image of K supplements
/// it.
pub fn push_to_quotient_coprime(
    w: &SupplementWitness,
    n: &Subgroup,
    bounds: &Bounds,
) -> Result<SupplementWitness> {
    if w.kind() != SupplementKind::Nc || !w.is_valid() {
        return Err(Error::InvalidParameter(
            "quotient push needs a valid nc witness".into(),
        ));
    }
    if !n.is_normal() {
        return Err(Error::NotNormal);
    }
    if !n.order().gcd(w.h().order()).is_one() {
        return Err(Error::InvalidParameter(
            "coprime push needs gcd(|N|, |H|) = 1".into(),
        ));
    }
    map_into_quotient(w, n, bounds)
}
