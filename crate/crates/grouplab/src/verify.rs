//! Instance verification harness.
//!
//! Every statement the library is built around is encoded as a
//! (hypothesis, conclusion) predicate pair over a single group. A check
//! runs both predicates and reports one of three verdicts:
//!
//! * **consistent** — hypothesis fails (conclusion not evaluated) or both
//!   hold;
//! * **VIOLATION** — hypothesis holds and the conclusion fails; on the
//!   statements checked here this is by definition an implementation bug
//!   and fails the whole suite;
//! * **inconclusive** — a resource cap stopped an answer.
//!
//! One check (`LA_counter`) has inverted expectations: it pins a concrete
//! group refuting a tempting stronger claim (coprimality + cube-free
//! p-part + no A4 sections forcing p-nilpotency), and asserts the
//! refutation stays refuted.
//!
//! Reports are byte-identical across runs for a fixed catalog, bounds, and
//! sample seed; timings are zeroed at serialization unless asked for.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::time::Instant;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::catalog::{catalog_id, CatalogEntry, Scale};
use crate::construct::alternating;
use crate::error::{Error, Result};
use crate::group::{quotient, Group};
use crate::lattice::{
    enumerate_subgroups, maximal_subgroups_p_group, normal_subgroups, o_p_in, o_p_prime_in,
    EaStructure, SubgroupLattice,
};
use crate::modp::{self, factor_u64};
use crate::par;
use crate::perm::Perm;
use crate::structure::{
    composition_factors, elementary_abelian_params, identify_simple, is_cyclic, is_klein_four,
    is_p_nilpotent, is_simple, is_solvable, spectrum, SimpleKind, KNOWN_SIMPLE,
};
use crate::subgroup::Subgroup;
use crate::supplement::{
    find_supplement_among, find_supplement_with, normalize_supplement, push_to_quotient_coprime,
    push_to_quotient_contained, restrict_to_intermediate, SupplementKind, SupplementStatus,
};
use crate::sylow::{classify_hall_in, hall, pi_part, sylow};
use crate::Bounds;

/// Truth state of a hypothesis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tri {
    Holds,
    Fails,
    Unknown,
}

impl fmt::Display for Tri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tri::Holds => write!(f, "holds"),
            Tri::Fails => write!(f, "fails"),
            Tri::Unknown => write!(f, "unknown"),
        }
    }
}

/// Truth state of a conclusion; implications with a failed hypothesis are
/// not vacuously "tested", they are marked not-evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConclusionState {
    Holds,
    Fails,
    Unknown,
    NotEvaluated,
}

impl fmt::Display for ConclusionState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConclusionState::Holds => write!(f, "holds"),
            ConclusionState::Fails => write!(f, "fails"),
            ConclusionState::Unknown => write!(f, "unknown"),
            ConclusionState::NotEvaluated => write!(f, "not-evaluated"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Consistent,
    Violation,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Consistent => write!(f, "consistent"),
            Verdict::Violation => write!(f, "VIOLATION"),
            Verdict::Inconclusive => write!(f, "inconclusive"),
        }
    }
}

pub fn verdict_of(h: Tri, c: ConclusionState) -> Verdict {
    match (h, c) {
        (Tri::Holds, ConclusionState::Fails) => Verdict::Violation,
        (Tri::Unknown, _) => Verdict::Inconclusive,
        (_, ConclusionState::Unknown) => Verdict::Inconclusive,
        _ => Verdict::Consistent,
    }
}

/// One evaluated instance of one statement on one group.
#[derive(Clone, Debug)]
pub struct TheoremCheck {
    pub id: &'static str,
    pub group: String,
    pub hypothesis: Tri,
    pub conclusion: ConclusionState,
    pub verdict: Verdict,
    pub evidence: Vec<String>,
    pub millis: u64,
    /// True when the check aborted on an error (which also shows up as an
    /// `error:` evidence line and an inconclusive verdict).
    pub errored: bool,
}

/// All check ids, in the order they appear within one group's report.
pub const ALL_CHECK_IDS: [&str; 16] = [
    "EX_A4", "T1a", "T1b", "T2_fwd", "T2_rev", "T3", "T4", "T5", "L1", "L2", "L3", "L4", "R2",
    "LA_counter", "R4", "R3",
];

/// Which checks to run. Group names like `T1` and `T2` expand to their
/// lettered/directed variants.
#[derive(Clone, Debug)]
pub struct CheckSelection {
    ids: BTreeSet<&'static str>,
    label: String,
}

impl CheckSelection {
    pub fn all() -> CheckSelection {
        CheckSelection {
            ids: ALL_CHECK_IDS.iter().copied().collect(),
            label: "all".into(),
        }
    }

    pub fn parse(spec: &str) -> Result<CheckSelection> {
        if spec.trim() == "all" {
            return Ok(CheckSelection::all());
        }
        let mut ids = BTreeSet::new();
        for raw in spec.split(',') {
            let name = raw.trim();
            let expanded: &[&'static str] = match name {
                "T1" => &["T1a", "T1b"],
                "T2" => &["T2_fwd", "T2_rev"],
                other => {
                    if let Some(id) = ALL_CHECK_IDS.iter().find(|i| **i == other) {
                        std::slice::from_ref(id)
                    } else {
                        return Err(Error::InvalidParameter(format!(
                            "unknown check id `{other}` (known: {})",
                            ALL_CHECK_IDS.join(", ")
                        )));
                    }
                }
            };
            ids.extend(expanded.iter().copied());
        }
        if ids.is_empty() {
            return Err(Error::InvalidParameter("empty check selection".into()));
        }
        let label = ids.iter().copied().collect::<Vec<_>>().join(",");
        Ok(CheckSelection { ids, label })
    }

    pub fn active(&self, id: &str) -> bool {
        self.ids.contains(id)
    }

    pub fn label(&self) -> &str {
        &self.label
    }
}

/// Outcome of a whole suite over a catalog.
#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub suite: String,
    pub catalog_id: String,
    pub bounds: Bounds,
    pub checks: Vec<TheoremCheck>,
}

impl VerificationReport {
    pub fn violations(&self) -> usize {
        self.checks
            .iter()
            .filter(|c| c.verdict == Verdict::Violation)
            .count()
    }

    pub fn inconclusive(&self) -> usize {
        self.checks
            .iter()
            .filter(|c| c.verdict == Verdict::Inconclusive)
            .count()
    }

    pub fn errored(&self) -> usize {
        self.checks.iter().filter(|c| c.errored).count()
    }

    pub fn unknown_counts(&self) -> (usize, usize) {
        let h = self
            .checks
            .iter()
            .filter(|c| c.hypothesis == Tri::Unknown)
            .count();
        let c = self
            .checks
            .iter()
            .filter(|c| c.conclusion == ConclusionState::Unknown)
            .count();
        (h, c)
    }

    pub fn is_clean(&self) -> bool {
        self.violations() == 0 && self.errored() == 0
    }

    /// JSON form. Timings are zeroed unless `include_millis`, so reports
    /// are byte-identical across runs.
    pub fn to_json(&self, include_millis: bool) -> serde_json::Value {
        let (uh, uc) = self.unknown_counts();
        json!({
            "suite": self.suite,
            "catalog_id": self.catalog_id,
            "bounds": {
                "exhaustive_order_bound": self.bounds.exhaustive_order_bound,
                "element_cap": self.bounds.element_cap,
                "index_cap": self.bounds.index_cap,
                "sample_seed": self.bounds.sample_seed,
            },
            "summary": {
                "checks": self.checks.len(),
                "violations": self.violations(),
                "inconclusive": self.inconclusive(),
                "unknown_hypotheses": uh,
                "unknown_conclusions": uc,
            },
            "checks": self.checks.iter().map(|c| json!({
                "id": c.id,
                "group": c.group,
                "hypothesis": c.hypothesis.to_string(),
                "conclusion": c.conclusion.to_string(),
                "verdict": c.verdict.to_string(),
                "evidence": c.evidence,
                "millis": if include_millis { c.millis } else { 0 },
            })).collect::<Vec<_>>(),
        })
    }

    /// Human-readable table with evidence lines.
    pub fn render_text(&self, include_millis: bool) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "suite {} over catalog {} (exhaustive bound {}, element cap {}, index cap {}, seed {:#x})\n",
            self.suite,
            self.catalog_id,
            self.bounds.exhaustive_order_bound,
            self.bounds.element_cap,
            self.bounds.index_cap,
            self.bounds.sample_seed,
        ));
        for c in &self.checks {
            let t = if include_millis {
                format!(" [{} ms]", c.millis)
            } else {
                String::new()
            };
            out.push_str(&format!(
                "{:<10} {:<10} hypothesis {:<8} conclusion {:<13} {}{}\n",
                c.id, c.group, c.hypothesis.to_string(), c.conclusion.to_string(), c.verdict, t
            ));
            for e in &c.evidence {
                out.push_str(&format!("    {e}\n"));
            }
        }
        let (uh, uc) = self.unknown_counts();
        out.push_str(&format!(
            "{} checks: {} violations, {} inconclusive ({} unknown hypotheses, {} unknown conclusions)\n",
            self.checks.len(),
            self.violations(),
            self.inconclusive(),
            uh,
            uc,
        ));
        out
    }
}

type Outcome = (Tri, ConclusionState, Vec<String>);

fn run_check<F>(id: &'static str, group: &str, f: F) -> TheoremCheck
where
    F: FnOnce() -> Result<Outcome>,
{
    let t0 = Instant::now();
    let (hypothesis, conclusion, evidence, errored) = match f() {
        Ok((h, c, e)) => (h, c, e, false),
        Err(e) => (
            Tri::Unknown,
            ConclusionState::Unknown,
            vec![format!("error: {e}")],
            true,
        ),
    };
    TheoremCheck {
        id,
        group: group.to_string(),
        hypothesis,
        conclusion,
        verdict: verdict_of(hypothesis, conclusion),
        evidence,
        millis: t0.elapsed().as_millis() as u64,
        errored,
    }
}

/// Per-group scratch state so expensive objects (the lattice, normal
/// subgroups, per-Sylow supplement searches) are computed once and shared
/// by every check on the group.
struct Ctx<'a> {
    e: &'a CatalogEntry,
    b: &'a Bounds,
    lat: Option<SubgroupLattice>,
    solvable: Option<bool>,
    normals: Option<Vec<Subgroup>>,
    sylow_supp: Option<Vec<(u64, SupplementStatus)>>,
    syl2_max_supp: Option<Vec<(Subgroup, SupplementStatus)>>,
    a4_free: Option<bool>,
}

impl<'a> Ctx<'a> {
    fn new(e: &'a CatalogEntry, b: &'a Bounds) -> Ctx<'a> {
        Ctx {
            e,
            b,
            lat: None,
            solvable: None,
            normals: None,
            sylow_supp: None,
            syl2_max_supp: None,
            a4_free: None,
        }
    }

    fn g(&self) -> &Group {
        &self.e.group
    }

    fn order_u64(&self) -> Result<u64> {
        self.g()
            .order_u64()
            .ok_or_else(|| Error::ResourceExceeded("group order exceeds u64".into()))
    }

    fn primes(&self) -> Result<Vec<u64>> {
        Ok(factor_u64(self.order_u64()?)
            .into_iter()
            .map(|(p, _)| p)
            .collect())
    }

    fn ensure_lattice(&mut self) -> Result<()> {
        if self.lat.is_none() {
            self.lat = Some(SubgroupLattice::build(self.g(), self.b)?);
        }
        Ok(())
    }

    fn lattice(&mut self) -> Result<&SubgroupLattice> {
        self.ensure_lattice()?;
        Ok(self.lat.as_ref().unwrap())
    }

    fn subs(&mut self) -> Result<&[Subgroup]> {
        self.ensure_lattice()?;
        Ok(self.lat.as_ref().unwrap().subgroups())
    }

    fn solvable(&mut self) -> Result<bool> {
        if self.solvable.is_none() {
            self.solvable = Some(is_solvable(self.g())?);
        }
        Ok(self.solvable.unwrap())
    }

    fn normals(&mut self) -> Result<Vec<Subgroup>> {
        if self.normals.is_none() {
            self.normals = Some(normal_subgroups(self.g(), self.b.element_cap)?);
        }
        Ok(self.normals.clone().unwrap())
    }

    /// Maximal subgroups of a Sylow p-subgroup; the trivial group has
    /// none, and a Sylow of prime order has exactly the trivial one.
    fn p_maximals(&self, syl: &Subgroup) -> Result<Vec<Subgroup>> {
        if syl.is_trivial() {
            return Ok(Vec::new());
        }
        if modp::is_prime(syl.group().order_u64().unwrap_or(0)) {
            return Ok(vec![Subgroup::trivial(self.g())]);
        }
        maximal_subgroups_p_group(syl, self.b)
    }

    /// For every prime p: the Sylow p-subgroup's nc-supplement search
    /// outcome (exhaustive over the lattice).
    fn sylow_supplements(&mut self) -> Result<Vec<(u64, SupplementStatus)>> {
        if self.sylow_supp.is_none() {
            self.ensure_lattice()?;
            let mut v = Vec::new();
            for p in self.primes()? {
                let s = sylow(self.g(), p, self.b)?;
                let subs = self.lat.as_ref().unwrap().subgroups();
                let st = find_supplement_among(&s, SupplementKind::Nc, subs, self.b)?;
                v.push((p, st));
            }
            self.sylow_supp = Some(v);
        }
        Ok(self.sylow_supp.clone().unwrap())
    }

    /// Maximal subgroups of the Sylow 2-subgroup with their nc-supplement
    /// search outcomes.
    fn syl2_maximal_supplements(&mut self) -> Result<Vec<(Subgroup, SupplementStatus)>> {
        if self.syl2_max_supp.is_none() {
            self.ensure_lattice()?;
            let syl2 = sylow(self.g(), 2, self.b)?;
            let maximals = self.p_maximals(&syl2)?;
            let mut v = Vec::new();
            for m in maximals {
                let subs = self.lat.as_ref().unwrap().subgroups();
                let st = find_supplement_among(&m, SupplementKind::Nc, subs, self.b)?;
                v.push((m, st));
            }
            self.syl2_max_supp = Some(v);
        }
        Ok(self.syl2_max_supp.clone().unwrap())
    }

    /// Section scan (quotient of a subgroup matching an order and
    /// element-order histogram), sharing this entry's lattice across the
    /// several model groups the checks compare against.
    fn section_match(&mut self, order: u64, model_spectrum: &BTreeMap<u64, u64>) -> Result<bool> {
        let target = BigUint::from(order);
        if (self.g().order() % &target) != BigUint::zero() {
            return Ok(false);
        }
        let b = *self.b;
        self.ensure_lattice()?;
        let subs = self.lat.as_ref().unwrap().subgroups();
        for h in subs {
            if (h.order() % &target) != BigUint::zero() {
                continue;
            }
            if h.order() == &target {
                if &spectrum(h.group(), b.element_cap)? == model_spectrum {
                    return Ok(true);
                }
                continue;
            }
            for n in normal_subgroups(h.group(), b.element_cap)? {
                if &(n.order() * &target) != h.order() {
                    continue;
                }
                let (q, _) = quotient(h.group(), n.group(), b.index_cap)?;
                if &spectrum(&q, b.element_cap)? == model_spectrum {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    /// No section matches the alternating group on four points.
    fn a4_free(&mut self) -> Result<bool> {
        if self.a4_free.is_none() {
            let model = alternating(4)?;
            let spec = spectrum(&model, self.b.element_cap)?;
            self.a4_free = Some(!self.section_match(12, &spec)?);
        }
        Ok(self.a4_free.unwrap())
    }
}

fn gens_str(s: &Subgroup) -> String {
    let gens = s.group().generators();
    if gens.is_empty() {
        return "<1>".into();
    }
    let inner: Vec<String> = gens.iter().map(|p| p.to_string()).collect();
    format!("<{}>", inner.join(" "))
}

fn is_mersenne_prime(r: u64) -> bool {
    modp::is_prime(r) && (r + 1).is_power_of_two()
}

// ---------------------------------------------------------------------
// Individual checks.
// ---------------------------------------------------------------------

/// Pinned order-12 instance: the order-2 subgroup C has an nc-supplement
/// (its Klein partner D, with CD the normal Klein subgroup) but no
/// c-supplement at all, exhaustively over the full 10-subgroup lattice.
/// The entry's labeled subgroup, or the span of the first `count`
/// elements of order 2. Labels are dropped by catalog round-trips; in the
/// alternating group on 4 points every involution choice is equivalent,
/// and any two distinct involutions span the regular normal four-group.
fn labeled_or_involution_span(
    e: &CatalogEntry,
    label: &str,
    count: usize,
    b: &Bounds,
) -> Result<Subgroup> {
    if let Some(s) = e.distinguished(label) {
        return Ok(s.clone());
    }
    let gens: Vec<Perm> = e
        .group
        .elements(b.element_cap)?
        .into_iter()
        .filter(|p| p.order() == 2)
        .take(count)
        .collect();
    if gens.len() < count {
        return Err(Error::InvalidParameter(format!(
            "needed {count} involutions for subgroup {label}, found {}",
            gens.len()
        )));
    }
    Subgroup::new(&e.group, gens)
}

fn check_ex_a4(ctx: &mut Ctx) -> Result<Outcome> {
    let c = labeled_or_involution_span(ctx.e, "C", 1, ctx.b)?;
    let b_sub = labeled_or_involution_span(ctx.e, "B", 2, ctx.b)?;
    let b = *ctx.b;
    let subs = ctx.subs()?;
    let mut ev = Vec::new();
    let mut ok = true;

    match find_supplement_among(&c, SupplementKind::Nc, subs, &b)? {
        SupplementStatus::Yes(w) => {
            ev.push(format!(
                "nc: yes for C = {} with K = {} (|HK| = {}, normal, intersection {} inside core {})",
                gens_str(&c),
                gens_str(w.k()),
                w.hk_order(),
                w.intersection().order(),
                w.core().order(),
            ));
        }
        other => {
            ok = false;
            ev.push(format!("nc search for C unexpectedly returned {}", other.tag()));
        }
    }
    match find_supplement_among(&c, SupplementKind::C, subs, &b)? {
        SupplementStatus::No { searched } => {
            ev.push(format!("c: no for C, {}", SupplementStatus::No { searched }.tag()));
            if searched != 10 {
                ok = false;
                ev.push(format!("expected a 10-subgroup lattice, saw {searched}"));
            }
        }
        other => {
            ok = false;
            ev.push(format!("c search for C unexpectedly returned {}", other.tag()));
        }
    }
    match find_supplement_among(&b_sub, SupplementKind::C, subs, &b)? {
        SupplementStatus::Yes(w) => ev.push(format!(
            "c: yes for B = {} with K = {}",
            gens_str(&b_sub),
            gens_str(w.k())
        )),
        other => {
            ok = false;
            ev.push(format!("c search for B unexpectedly returned {}", other.tag()));
        }
    }
    Ok((
        Tri::Holds,
        if ok {
            ConclusionState::Holds
        } else {
            ConclusionState::Fails
        },
        ev,
    ))
}

/// For a nonabelian simple group, no nontrivial maximal subgroup of any
/// Sylow subgroup may be nc-supplemented.
fn check_t1a(ctx: &mut Ctx) -> Result<Outcome> {
    let simple = is_simple(ctx.g(), ctx.b)? && !ctx.g().is_abelian();
    if !simple {
        return Ok((
            Tri::Fails,
            ConclusionState::NotEvaluated,
            vec!["group is not nonabelian simple".into()],
        ));
    }
    let b = *ctx.b;
    let mut ev = Vec::new();
    let mut ok = true;
    for p in ctx.primes()? {
        let syl = sylow(ctx.g(), p, &b)?;
        let maximals = ctx.p_maximals(&syl)?;
        let nontrivial: Vec<&Subgroup> = maximals.iter().filter(|m| !m.is_trivial()).collect();
        if nontrivial.is_empty() {
            ev.push(format!(
                "p={p}: Sylow subgroup of order {} has no nontrivial maximal subgroup; nothing to test",
                syl.order()
            ));
            continue;
        }
        let subs = ctx.subs()?;
        let mut yes = 0usize;
        for &m in &nontrivial {
            match find_supplement_among(m, SupplementKind::Nc, subs, &b)? {
                SupplementStatus::No { .. } => {}
                SupplementStatus::Yes(w) => {
                    yes += 1;
                    ev.push(format!(
                        "p={p}: maximal subgroup {} of the Sylow subgroup IS nc-supplemented by {}",
                        gens_str(m),
                        gens_str(w.k())
                    ));
                }
                SupplementStatus::Unknown => {
                    return Err(Error::ResourceExceeded(
                        "exhaustive scan unavailable".into(),
                    ))
                }
            }
        }
        if yes == 0 {
            ev.push(format!(
                "p={p}: none of the {} nontrivial maximal subgroups of the Sylow subgroup is nc-supplemented (exhaustive over {} subgroups)",
                nontrivial.len(),
                subs.len()
            ));
        } else {
            ok = false;
        }
    }
    Ok((
        Tri::Holds,
        if ok {
            ConclusionState::Holds
        } else {
            ConclusionState::Fails
        },
        ev,
    ))
}

/// If some maximal subgroup of a Sylow 2-subgroup is nc-supplemented
/// (including the trivial maximal subgroup when |G|_2 = 2), then G has a
/// Hall subgroup for the odd primes and every composition factor is cyclic
/// of prime order or a known L2(r) with r a Mersenne prime.
fn check_t1b(ctx: &mut Ctx) -> Result<Outcome> {
    let n = ctx.order_u64()?;
    if n % 2 != 0 {
        return Ok((
            Tri::Fails,
            ConclusionState::NotEvaluated,
            vec!["odd order: there is no Sylow 2-subgroup to test".into()],
        ));
    }
    let supp = ctx.syl2_maximal_supplements()?;
    let hit = supp.iter().find(|(_, st)| st.is_yes());
    let mut ev = Vec::new();
    let hyp = match hit {
        Some((m, st)) => {
            let w = st.witness().unwrap();
            ev.push(format!(
                "maximal subgroup {} of the Sylow 2-subgroup is nc-supplemented by {}",
                gens_str(m),
                gens_str(w.k())
            ));
            Tri::Holds
        }
        None => {
            ev.push(format!(
                "none of the {} maximal subgroups of the Sylow 2-subgroup is nc-supplemented (exhaustive)",
                supp.len()
            ));
            Tri::Fails
        }
    };
    if hyp == Tri::Fails {
        return Ok((hyp, ConclusionState::NotEvaluated, ev));
    }

    let odd: Vec<u64> = ctx.primes()?.into_iter().filter(|&p| p != 2).collect();
    let mut ok = true;
    match hall(ctx.g(), &odd, ctx.b)? {
        Some(h) => ev.push(format!(
            "Hall subgroup for the odd primes {:?} exists, order {}",
            odd,
            h.order()
        )),
        None => {
            ok = false;
            ev.push(format!("no Hall subgroup for the odd primes {odd:?}"));
        }
    }
    for f in composition_factors(ctx.g(), ctx.b)? {
        let fo = f.order_u64().unwrap_or(0);
        if modp::is_prime(fo) {
            continue;
        }
        match identify_simple(&f, ctx.b.element_cap)? {
            Some(SimpleKind::Known(k)) if k.l2_odd_q.is_some_and(is_mersenne_prime) => {
                ev.push(format!(
                    "composition factor of order {fo} identified as {} with Mersenne parameter",
                    k.name
                ));
            }
            other => {
                ok = false;
                ev.push(format!(
                    "composition factor of order {fo} is neither cyclic of prime order nor an identified Mersenne-parameter linear group ({other:?})"
                ));
            }
        }
    }
    if ok {
        ev.push("all composition factors are cyclic of prime order or allowed linear groups".into());
    }
    Ok((
        Tri::Holds,
        if ok {
            ConclusionState::Holds
        } else {
            ConclusionState::Fails
        },
        ev,
    ))
}

/// Solvable implies every Sylow subgroup is nc-supplemented.
fn check_t2_fwd(ctx: &mut Ctx) -> Result<Outcome> {
    if !ctx.solvable()? {
        return Ok((
            Tri::Fails,
            ConclusionState::NotEvaluated,
            vec!["group is not solvable".into()],
        ));
    }
    let mut ev = vec!["group is solvable (derived series reaches 1)".into()];
    let mut ok = true;
    for (p, st) in ctx.sylow_supplements()? {
        match st {
            SupplementStatus::Yes(w) => ev.push(format!(
                "p={p}: Sylow subgroup of order {} is nc-supplemented by {} (|K| = {})",
                w.h().order(),
                gens_str(w.k()),
                w.k().order()
            )),
            other => {
                ok = false;
                ev.push(format!("p={p}: Sylow subgroup has no nc-supplement ({})", other.tag()));
            }
        }
    }
    Ok((
        Tri::Holds,
        if ok {
            ConclusionState::Holds
        } else {
            ConclusionState::Fails
        },
        ev,
    ))
}

/// Every Sylow subgroup nc-supplemented implies solvable. For nonsolvable
/// groups the hypothesis must fail with a definitive refuting Sylow.
fn check_t2_rev(ctx: &mut Ctx) -> Result<Outcome> {
    let mut ev = Vec::new();
    let mut hyp = Tri::Holds;
    for (p, st) in ctx.sylow_supplements()? {
        match st {
            SupplementStatus::Yes(_) => {}
            SupplementStatus::No { searched } => {
                hyp = Tri::Fails;
                ev.push(format!(
                    "p={p}: Sylow subgroup has no nc-supplement, definitive no over exhaustive({searched})"
                ));
            }
            SupplementStatus::Unknown => {
                return Err(Error::ResourceExceeded("exhaustive scan unavailable".into()))
            }
        }
    }
    if hyp == Tri::Fails {
        return Ok((hyp, ConclusionState::NotEvaluated, ev));
    }
    ev.push("every Sylow subgroup is nc-supplemented (exhaustive)".into());
    let s = ctx.solvable()?;
    if s {
        ev.push("group is solvable".into());
    } else {
        ev.push("group is NOT solvable".into());
    }
    Ok((
        Tri::Holds,
        if s {
            ConclusionState::Holds
        } else {
            ConclusionState::Fails
        },
        ev,
    ))
}

/// Every maximal subgroup of a Sylow 2-subgroup nc-supplemented implies
/// solvable. Odd-order groups satisfy the hypothesis vacuously, so they
/// double as empirical odd-order solvability instances.
fn check_t3(ctx: &mut Ctx) -> Result<Outcome> {
    let supp = ctx.syl2_maximal_supplements()?;
    let mut ev = Vec::new();
    let mut hyp = Tri::Holds;
    if supp.is_empty() {
        ev.push("trivial Sylow 2-subgroup: hypothesis holds vacuously".into());
    }
    for (m, st) in &supp {
        match st {
            SupplementStatus::Yes(_) => {}
            SupplementStatus::No { searched } => {
                hyp = Tri::Fails;
                ev.push(format!(
                    "maximal subgroup {} of the Sylow 2-subgroup has no nc-supplement (exhaustive({searched}))",
                    gens_str(m)
                ));
            }
            SupplementStatus::Unknown => {
                return Err(Error::ResourceExceeded("exhaustive scan unavailable".into()))
            }
        }
    }
    if hyp == Tri::Fails {
        return Ok((hyp, ConclusionState::NotEvaluated, ev));
    }
    if !supp.is_empty() {
        ev.push(format!(
            "all {} maximal subgroups of the Sylow 2-subgroup are nc-supplemented",
            supp.len()
        ));
    }
    let s = ctx.solvable()?;
    Ok((
        Tri::Holds,
        if s {
            ConclusionState::Holds
        } else {
            ConclusionState::Fails
        },
        ev,
    ))
}

/// Every 2-maximal subgroup of a Sylow 2-subgroup nc-supplemented, plus no
/// sections matching the linear groups of parameter q = 5, 11, 13
/// (q congruent to +-3 mod 8), implies solvable. The section-freeness
/// clause is evaluated on the whole group: a 2-group cannot have such a
/// section, so reading it on the 2-maximal subgroups themselves would be
/// vacuous.
fn check_t4(ctx: &mut Ctx) -> Result<Outcome> {
    let qs: [u64; 3] = [5, 11, 13];
    let b = *ctx.b;
    let syl2 = sylow(ctx.g(), 2, &b)?;
    let maximals = ctx.p_maximals(&syl2)?;
    let mut two_max: Vec<Subgroup> = Vec::new();
    for m in &maximals {
        for mm in ctx.p_maximals(m)? {
            if !two_max.iter().any(|x| x.same_subgroup_as(&mm)) {
                two_max.push(mm);
            }
        }
    }
    let mut ev = Vec::new();
    let mut hyp = Tri::Holds;
    if two_max.is_empty() {
        ev.push("Sylow 2-subgroup has no 2-maximal subgroups: supplement clause holds vacuously".into());
    }
    for m in &two_max {
        let subs = ctx.subs()?;
        match find_supplement_among(m, SupplementKind::Nc, subs, &b)? {
            SupplementStatus::Yes(_) => {}
            SupplementStatus::No { searched } => {
                hyp = Tri::Fails;
                ev.push(format!(
                    "2-maximal subgroup {} of the Sylow 2-subgroup has no nc-supplement (exhaustive({searched}))",
                    gens_str(m)
                ));
            }
            SupplementStatus::Unknown => {
                return Err(Error::ResourceExceeded("exhaustive scan unavailable".into()))
            }
        }
    }
    if hyp == Tri::Holds && !two_max.is_empty() {
        ev.push(format!(
            "all {} 2-maximal subgroups of the Sylow 2-subgroup are nc-supplemented",
            two_max.len()
        ));
    }
    for q in qs {
        let row = KNOWN_SIMPLE
            .iter()
            .find(|k| k.l2_odd_q == Some(q))
            .expect("q = 5, 11, 13 are in the pinned table");
        let model_spec: BTreeMap<u64, u64> = row.spectrum.iter().copied().collect();
        if ctx.section_match(row.order, &model_spec)? {
            hyp = Tri::Fails;
            ev.push(format!(
                "group has a section matching {} (order {}), so it is not q={q} section-free",
                row.name, row.order
            ));
        } else {
            ev.push(format!("no section matches {} (order {})", row.name, row.order));
        }
    }
    if hyp == Tri::Fails {
        return Ok((hyp, ConclusionState::NotEvaluated, ev));
    }
    let s = ctx.solvable()?;
    Ok((
        Tri::Holds,
        if s {
            ConclusionState::Holds
        } else {
            ConclusionState::Fails
        },
        ev,
    ))
}

/// The second structural branch: Q of order p^2 * m with m odd, its
/// largest normal p-subgroup elementary abelian of order p^2, some cyclic
/// subgroup of order m completing it, and 2m dividing p + 1 (the integer
/// form of "m divides (p+1)/2" for odd p).
fn t5_second_branch(
    q: &Group,
    subs: &[Subgroup],
    q_normals: &[Subgroup],
    p: u64,
    ev: &mut Vec<String>,
) -> Result<bool> {
    let nq = q
        .order_u64()
        .ok_or_else(|| Error::ResourceExceeded("quotient order exceeds u64".into()))?;
    let pp = p * p;
    if nq % pp != 0 || (nq / pp) % p == 0 {
        ev.push(format!("quotient order {nq} does not have p-part exactly {pp}"));
        return Ok(false);
    }
    let m = nq / pp;
    if m % 2 == 0 {
        ev.push(format!("cofactor {m} is even"));
        return Ok(false);
    }
    let op = o_p_in(q_normals, p)?;
    if op.group().order_u64() != Some(pp) || elementary_abelian_params(op.group()) != Some((p, 2))
    {
        ev.push(format!(
            "largest normal {p}-subgroup of the quotient has order {}, not elementary abelian of order {pp}",
            op.order()
        ));
        return Ok(false);
    }
    let complement = subs.iter().find(|s| {
        s.group().order_u64() == Some(m) && is_cyclic(s.group())
    });
    let Some(k) = complement else {
        ev.push(format!("no cyclic subgroup of order {m} in the quotient's lattice"));
        return Ok(false);
    };
    if (p + 1) % (2 * m) != 0 {
        ev.push(format!("2m = {} does not divide p + 1 = {}", 2 * m, p + 1));
        return Ok(false);
    }
    ev.push(format!(
        "quotient splits as an elementary abelian group of order {pp} extended by the cyclic {} of order {m}, with 2m | p+1 ({} | {})",
        gens_str(k),
        2 * m,
        p + 1
    ));
    Ok(true)
}

/// If gcd(|G|, p-1) = 1, p^3 does not divide |G|, and G has no section
/// matching A4, then G is p-nilpotent or G modulo its largest normal
/// p'-subgroup has the pinned (Zp x Zp) x| cyclic shape.
fn check_t5(ctx: &mut Ctx, p: u64) -> Result<Outcome> {
    let n = ctx.order_u64()?;
    let mut ev = vec![format!("p={p}")];
    let coprime = num_integer::gcd(n, p - 1) == 1;
    let cube = (n as u128) % (p as u128).pow(3) == 0;
    let a4free = ctx.a4_free()?;
    if !coprime {
        ev.push(format!("gcd(|G|, p-1) = {} is not 1", num_integer::gcd(n, p - 1)));
    }
    if cube {
        ev.push(format!("p^3 = {} divides |G| = {n}", (p as u128).pow(3)));
    }
    if !a4free {
        ev.push("group has a section matching A4".into());
    }
    if !coprime || cube || !a4free {
        return Ok((Tri::Fails, ConclusionState::NotEvaluated, ev));
    }
    ev.push(format!(
        "gcd(|G|, {}) = 1, p^3 does not divide {n}, and no section matches A4",
        p - 1
    ));

    if is_p_nilpotent(ctx.g(), p, ctx.b)? {
        ev.push(format!(
            "group is {p}-nilpotent (a normal complement of the Sylow {p}-subgroup exists)"
        ));
        return Ok((Tri::Holds, ConclusionState::Holds, ev));
    }
    ev.push(format!("group is not {p}-nilpotent"));

    let normals = ctx.normals()?;
    let opp = o_p_prime_in(&normals, p)?;
    let ok = if opp.is_trivial() {
        ev.push(format!("largest normal {p}'-subgroup is trivial; quotient is the group itself"));
        ctx.ensure_lattice()?;
        let g = ctx.g().clone();
        t5_second_branch(&g, ctx.lat.as_ref().unwrap().subgroups(), &normals, p, &mut ev)?
    } else {
        ev.push(format!(
            "factoring out the largest normal {p}'-subgroup of order {}",
            opp.order()
        ));
        let (q, _) = quotient(ctx.g(), opp.group(), ctx.b.index_cap)?;
        let lat = SubgroupLattice::build(&q, ctx.b)?;
        let q_normals = normal_subgroups(&q, ctx.b.element_cap)?;
        t5_second_branch(&q, lat.subgroups(), &q_normals, p, &mut ev)?
    };
    Ok((
        Tri::Holds,
        if ok {
            ConclusionState::Holds
        } else {
            ConclusionState::Fails
        },
        ev,
    ))
}

/// Enlarging any nc-supplement by the core of H gives a supplement meeting
/// H in exactly the core. Checked over every subgroup of the group.
fn check_l1(ctx: &mut Ctx) -> Result<Outcome> {
    let b = *ctx.b;
    let subs: Vec<Subgroup> = ctx.subs()?.to_vec();
    let mut witnesses = 0usize;
    let mut ev = Vec::new();
    let mut ok = true;
    for h in &subs {
        if let SupplementStatus::Yes(w) = find_supplement_among(h, SupplementKind::Nc, &subs, &b)?
        {
            witnesses += 1;
            match normalize_supplement(&w, &b) {
                Ok(n) => {
                    if !n.intersection().same_subgroup_as(n.core()) {
                        ok = false;
                        ev.push(format!(
                            "H = {}: normalized intersection differs from the core",
                            gens_str(h)
                        ));
                    }
                }
                Err(e) => {
                    ok = false;
                    ev.push(format!("H = {}: normalization failed: {e}", gens_str(h)));
                }
            }
        }
    }
    ev.push(format!(
        "{} subgroups scanned, {witnesses} nc-witnesses, every enlarged supplement meets H exactly in the core",
        subs.len()
    ));
    Ok((
        Tri::Holds,
        if ok {
            ConclusionState::Holds
        } else {
            ConclusionState::Fails
        },
        ev,
    ))
}

/// Witness transport: every valid nc-witness restricts to every
/// intermediate subgroup, pushes through quotients by normal subgroups
/// inside H, and pushes through quotients by normal subgroups of coprime
/// order.
fn check_l2(ctx: &mut Ctx) -> Result<Outcome> {
    let b = *ctx.b;
    let subs: Vec<Subgroup> = ctx.subs()?.to_vec();
    let normals = ctx.normals()?;
    let lat = ctx.lattice()?;
    let mut ev = Vec::new();
    let (mut witnesses, mut restrictions, mut contained, mut coprime) = (0usize, 0usize, 0usize, 0usize);
    let mut failures = 0usize;
    for (i, h) in subs.iter().enumerate() {
        let SupplementStatus::Yes(w) = find_supplement_among(h, SupplementKind::Nc, &subs, &b)?
        else {
            continue;
        };
        witnesses += 1;
        for (j, m) in subs.iter().enumerate() {
            if !lat.leq(i, j) {
                continue;
            }
            restrictions += 1;
            if let Err(e) = restrict_to_intermediate(&w, m, &b) {
                failures += 1;
                if ev.len() < 8 {
                    ev.push(format!(
                        "restriction of H = {} to M = {} failed: {e}",
                        gens_str(h),
                        gens_str(m)
                    ));
                }
            }
        }
        for n in &normals {
            if h.contains_subgroup(n) {
                contained += 1;
                if let Err(e) = push_to_quotient_contained(&w, n, &b) {
                    failures += 1;
                    if ev.len() < 8 {
                        ev.push(format!(
                            "contained push of H = {} by N of order {} failed: {e}",
                            gens_str(h),
                            n.order()
                        ));
                    }
                }
            } else if n.order().gcd(h.order()).is_one() {
                coprime += 1;
                if let Err(e) = push_to_quotient_coprime(&w, n, &b) {
                    failures += 1;
                    if ev.len() < 8 {
                        ev.push(format!(
                            "coprime push of H = {} by N of order {} failed: {e}",
                            gens_str(h),
                            n.order()
                        ));
                    }
                }
            }
        }
    }
    ev.push(format!(
        "{witnesses} witnesses: {restrictions} restrictions, {contained} contained pushes, {coprime} coprime pushes, {failures} failures"
    ));
    Ok((
        Tri::Holds,
        if failures == 0 {
            ConclusionState::Holds
        } else {
            ConclusionState::Fails
        },
        ev,
    ))
}

fn has_hall_order(order: &BigUint, subs: &[Subgroup], pi: &[u64]) -> bool {
    let target = pi_part(order, pi);
    subs.iter().any(|s| s.order() == &target)
}

/// A normal subgroup with conjugate Hall pi-subgroups under a quotient
/// that has one forces a Hall pi-subgroup in the whole group. Subgroup
/// lists are computed once per normal subgroup and scanned per prime set.
fn check_l3(ctx: &mut Ctx) -> Result<Outcome> {
    let primes = ctx.primes()?;
    let normals = ctx.normals()?;
    let b = *ctx.b;
    let g = ctx.g().clone();
    // All nonempty subsets of the prime set.
    let mut pis: Vec<Vec<u64>> = Vec::new();
    for mask in 1u32..(1 << primes.len()) {
        pis.push(
            primes
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &p)| p)
                .collect(),
        );
    }
    ctx.ensure_lattice()?;
    let g_subs = ctx.lat.as_ref().unwrap().subgroups();
    let g_elems = g.elements(b.element_cap)?;
    let mut applicable = 0usize;
    let mut failures = 0usize;
    let mut ev = Vec::new();
    for k in &normals {
        let (k_subs, k_elems) = if k.is_full() {
            (g_subs.to_vec(), g_elems.clone())
        } else {
            (
                enumerate_subgroups(k.group(), &b)?,
                k.group().elements(b.element_cap)?,
            )
        };
        // Subgroup list of G/K for the quotient existence scan; the full
        // and trivial cases need no new enumeration.
        let quotient_scan: Option<(Group, Vec<Subgroup>)> = if k.is_full() || k.is_trivial() {
            None
        } else {
            let (q, _) = quotient(&g, k.group(), b.index_cap)?;
            let qs = enumerate_subgroups(&q, &b)?;
            Some((q, qs))
        };
        for pi in &pis {
            let cls = classify_hall_in(k.group(), &k_subs, &k_elems, pi);
            if !(cls.exists && cls.all_conjugate) {
                continue;
            }
            let quotient_has = if k.is_full() {
                true
            } else if k.is_trivial() {
                has_hall_order(g.order(), g_subs, pi)
            } else {
                let (q, qs) = quotient_scan.as_ref().unwrap();
                has_hall_order(q.order(), qs, pi)
            };
            if !quotient_has {
                continue;
            }
            applicable += 1;
            if !has_hall_order(g.order(), g_subs, pi) {
                failures += 1;
                ev.push(format!(
                    "normal subgroup of order {} has conjugate Hall {:?}-subgroups and the quotient has one, but the group does not",
                    k.order(),
                    pi
                ));
            }
        }
    }
    ev.push(format!(
        "{applicable} applicable (normal subgroup, prime set) pairs, {failures} failures"
    ));
    Ok((
        Tri::Holds,
        if failures == 0 {
            ConclusionState::Holds
        } else {
            ConclusionState::Fails
        },
        ev,
    ))
}

/// A simple group with a Klein four Sylow 2-subgroup is an identified
/// L2(q) with q congruent to +-3 mod 8.
fn check_l4(ctx: &mut Ctx) -> Result<Outcome> {
    let b = *ctx.b;
    let syl2 = sylow(ctx.g(), 2, &b)?;
    let simple = is_simple(ctx.g(), &b)? && !ctx.g().is_abelian();
    if !simple {
        return Ok((
            Tri::Fails,
            ConclusionState::NotEvaluated,
            vec!["group is not nonabelian simple".into()],
        ));
    }
    if !is_klein_four(syl2.group()) {
        return Ok((
            Tri::Fails,
            ConclusionState::NotEvaluated,
            vec![format!(
                "Sylow 2-subgroup has order {}, not the Klein four group",
                syl2.order()
            )],
        ));
    }
    let mut ev = vec!["simple with Klein four Sylow 2-subgroup".into()];
    let ok = match identify_simple(ctx.g(), b.element_cap)? {
        Some(SimpleKind::Known(k)) => match k.l2_odd_q {
            Some(q) if q % 8 == 3 || q % 8 == 5 => {
                ev.push(format!("identified as {} with q = {q}, q mod 8 = {}", k.name, q % 8));
                true
            }
            other => {
                ev.push(format!("identified as {} but parameter {other:?} is not +-3 mod 8", k.name));
                false
            }
        },
        other => {
            ev.push(format!("identification failed: {other:?}"));
            false
        }
    };
    Ok((
        Tri::Holds,
        if ok {
            ConclusionState::Holds
        } else {
            ConclusionState::Fails
        },
        ev,
    ))
}

/// Pinned refutation: coprimality, cube-free p-part, and A4-freeness do
/// NOT force p-nilpotency. The order-1805 affine group witnesses this for
/// p = 19.
fn check_la_counter(ctx: &mut Ctx) -> Result<Outcome> {
    let p: u64 = 19;
    let n = ctx.order_u64()?;
    let mut ev = Vec::new();
    let coprime = num_integer::gcd(n, p - 1) == 1;
    let cubefree = (n as u128) % (p as u128).pow(3) != 0;
    let a4free = ctx.a4_free()?;
    ev.push(format!("gcd({n}, {}) = {}", p - 1, num_integer::gcd(n, p - 1)));
    ev.push(format!("p^3 = {} does not divide {n}: {cubefree}", (p as u128).pow(3)));
    ev.push(format!("no section matches A4: {a4free}"));
    if !(coprime && cubefree && a4free) {
        return Ok((Tri::Fails, ConclusionState::NotEvaluated, ev));
    }
    let not_nilp = !is_p_nilpotent(ctx.g(), p, ctx.b)?;
    if not_nilp {
        ev.push(format!(
            "group is NOT {p}-nilpotent: no normal subgroup of order {} exists",
            n / (p * p)
        ));
    } else {
        ev.push(format!("group unexpectedly IS {p}-nilpotent"));
    }
    Ok((
        Tri::Holds,
        if not_nilp {
            ConclusionState::Holds
        } else {
            ConclusionState::Fails
        },
        ev,
    ))
}

/// Edge instance: when the Sylow p-subgroup has prime order its only
/// maximal subgroup is trivial, so the nontriviality hypothesis fails and
/// nothing is concluded.
fn check_r2(ctx: &mut Ctx) -> Result<Outcome> {
    let p: u64 = 7;
    let syl = sylow(ctx.g(), p, ctx.b)?;
    let order = syl.group().order_u64().unwrap_or(0);
    if modp::is_prime(order) {
        Ok((
            Tri::Fails,
            ConclusionState::NotEvaluated,
            vec![format!(
                "Sylow {p}-subgroup has prime order {order}; its only maximal subgroup is trivial, so the nontriviality hypothesis fails"
            )],
        ))
    } else {
        Ok((
            Tri::Holds,
            ConclusionState::Unknown,
            vec![format!("expected a Sylow {p}-subgroup of prime order, found order {order}")],
        ))
    }
}

/// Pinned facts about the order-1805 affine fixture: lattice size 384,
/// translation subgroup elementary abelian of order 361, the structural
/// second branch with m = 5, and non-19-nilpotency.
fn check_r4(ctx: &mut Ctx) -> Result<Outcome> {
    let p: u64 = 19;
    let n = ctx.order_u64()?;
    let mut ev = Vec::new();
    let mut ok = true;
    let mut fact = |cond: bool, line: String, ev: &mut Vec<String>| {
        if !cond {
            ok = false;
        }
        ev.push(format!("{} {line}", if cond { "ok:" } else { "FAIL:" }));
    };

    fact(n == 1805, format!("order is {n}, expected 1805"), &mut ev);
    fact(n % 2 == 1, "order is odd".into(), &mut ev);

    let e = ctx
        .e
        .distinguished("E")
        .ok_or_else(|| Error::InvalidParameter("entry lacks the labeled subgroup E".into()))?
        .clone();
    fact(
        e.is_normal() && elementary_abelian_params(e.group()) == Some((19, 2)),
        "translation subgroup is normal and elementary abelian of order 361".into(),
        &mut ev,
    );

    let lat_len = ctx.lattice()?.len();
    fact(lat_len == 384, format!("lattice has {lat_len} subgroups, expected 384"), &mut ev);

    let normals = ctx.normals()?;
    let opp = o_p_prime_in(&normals, p)?;
    fact(opp.is_trivial(), "largest normal 19'-subgroup is trivial".into(), &mut ev);
    let op = o_p_in(&normals, p)?;
    fact(
        op.same_subgroup_as(&e),
        "largest normal 19-subgroup is the translation subgroup".into(),
        &mut ev,
    );

    ctx.ensure_lattice()?;
    let g = ctx.g().clone();
    let mut branch_ev = Vec::new();
    let branch = t5_second_branch(
        &g,
        ctx.lat.as_ref().unwrap().subgroups(),
        &normals,
        p,
        &mut branch_ev,
    )?;
    ev.extend(branch_ev);
    fact(branch, "structural second branch validates with m = 5".into(), &mut ev);

    let not_nilp = !is_p_nilpotent(ctx.g(), p, ctx.b)?;
    fact(not_nilp, "group is not 19-nilpotent".into(), &mut ev);

    Ok((
        Tri::Holds,
        if ok {
            ConclusionState::Holds
        } else {
            ConclusionState::Fails
        },
        ev,
    ))
}

/// Targeted certificates on the degree-49 wreath fixture: sampled
/// subgroups of the elementary abelian Sylow 3-subgroup are nc-supplemented
/// by F (the order-7^7 base translation group) times a complement, the
/// Sylow 3-subgroup has trivial core, and the group is not 3-nilpotent.
fn check_r3(ctx: &mut Ctx) -> Result<Outcome> {
    let g = ctx.g().clone();
    let b = *ctx.b;
    let p_sub = ctx
        .e
        .distinguished("P")
        .ok_or_else(|| Error::InvalidParameter("entry lacks the labeled subgroup P".into()))?
        .clone();
    let f_sub = ctx
        .e
        .distinguished("F")
        .ok_or_else(|| Error::InvalidParameter("entry lacks the labeled subgroup F".into()))?
        .clone();
    let ea = EaStructure::detect(p_sub.group(), b.element_cap)?
        .ok_or_else(|| Error::InvariantViolated("P must be elementary abelian".into()))?;
    let funcs = ea.hyperplane_functionals();
    let mut rng = ChaCha8Rng::seed_from_u64(b.sample_seed);
    let mut ev = Vec::new();
    let mut ok = true;

    let mut try_subgroup = |label: &str, kernel_basis: &[Vec<u64>]| -> Result<bool> {
        let h_gens = ea.span_gens(kernel_basis);
        let comp_gens = ea.complement_gens(kernel_basis);
        let h = Subgroup::new(&g, h_gens)?;
        let mut k_gens = f_sub.group().generators().to_vec();
        k_gens.extend(comp_gens);
        let k = Subgroup::new(&g, k_gens)?;
        match find_supplement_with(&h, SupplementKind::Nc, &b, std::slice::from_ref(&k))? {
            SupplementStatus::Yes(w) => {
                ev.push(format!(
                    "{label}: |H| = {}, supplement of order {} found, |HK| = {} normal, intersection trivial: {}",
                    w.h().order(),
                    w.k().order(),
                    w.hk_order(),
                    w.intersection().is_trivial(),
                ));
                Ok(w.intersection().is_trivial())
            }
            other => {
                ev.push(format!("{label}: search returned {}", other.tag()));
                Ok(false)
            }
        }
    };

    // Three distinct hyperplanes of P.
    let mut seen = BTreeSet::new();
    while seen.len() < 3 {
        seen.insert(rng.next_u64() as usize % funcs.len());
    }
    for (i, idx) in seen.iter().enumerate() {
        let kb = modp::functional_kernel_basis(&funcs[*idx], 3);
        if !try_subgroup(&format!("hyperplane {}", i + 1), &kb)? {
            ok = false;
        }
    }

    // Three non-maximal subgroups: kernels of two independent functionals.
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    while pairs.len() < 3 {
        let a = rng.next_u64() as usize % funcs.len();
        let c = rng.next_u64() as usize % funcs.len();
        if a == c || pairs.contains(&(a, c)) {
            continue;
        }
        if modp::row_echelon(&[funcs[a].clone(), funcs[c].clone()], 3).len() != 2 {
            continue;
        }
        pairs.push((a, c));
    }
    for (i, (a, c)) in pairs.iter().enumerate() {
        // Kernel of both functionals: restrict the second to the kernel
        // basis of the first, then lift its kernel back.
        let basis_a = modp::functional_kernel_basis(&funcs[*a], 3);
        let reduced: Vec<u64> = basis_a
            .iter()
            .map(|v| v.iter().zip(&funcs[*c]).map(|(x, y)| x * y).sum::<u64>() % 3)
            .collect();
        let inner = modp::functional_kernel_basis(&reduced, 3);
        let kb: Vec<Vec<u64>> = inner
            .iter()
            .map(|c_vec| {
                let mut w = vec![0u64; funcs[*a].len()];
                for (ci, bvec) in c_vec.iter().zip(&basis_a) {
                    for (slot, x) in w.iter_mut().zip(bvec) {
                        *slot = (*slot + ci * x) % 3;
                    }
                }
                w
            })
            .collect();
        if !try_subgroup(&format!("codimension-2 subgroup {}", i + 1), &kb)? {
            ok = false;
        }
    }

    // Core of the full Sylow 3-subgroup is trivial (fallback algorithm:
    // the index is far beyond the coset cap).
    let core = p_sub.core(&b)?;
    if core.is_trivial() {
        ev.push("core of the Sylow 3-subgroup is trivial (conjugation-stable filter over 2187 elements)".into());
    } else {
        ok = false;
        ev.push(format!("core of the Sylow 3-subgroup has order {}", core.order()));
    }

    // Not 3-nilpotent.
    if !is_p_nilpotent(&g, 3, &b)? {
        ev.push("not 3-nilpotent: the Hall 3'-subgroup of order 7^8 exists but is not normal".into());
    } else {
        ok = false;
        ev.push("group unexpectedly is 3-nilpotent".into());
    }

    Ok((
        Tri::Holds,
        if ok {
            ConclusionState::Holds
        } else {
            ConclusionState::Fails
        },
        ev,
    ))
}

// ---------------------------------------------------------------------
// Suite orchestration.
// ---------------------------------------------------------------------

/// Order ceiling for the witness-transport property checks (L1, L2),
/// which rescan the whole lattice per subgroup.
const TRANSPORT_ORDER_CEILING: u64 = 200;

fn entry_checks(e: &CatalogEntry, b: &Bounds, sel: &CheckSelection) -> Vec<TheoremCheck> {
    let mut out = Vec::new();
    let mut ctx = Ctx::new(e, b);

    if e.name == "A4" && sel.active("EX_A4") {
        out.push(run_check("EX_A4", &e.name, || check_ex_a4(&mut ctx)));
    }
    if e.scale == Scale::Exhaustive {
        if sel.active("T1a") {
            out.push(run_check("T1a", &e.name, || check_t1a(&mut ctx)));
        }
        if sel.active("T1b") {
            out.push(run_check("T1b", &e.name, || check_t1b(&mut ctx)));
        }
        if sel.active("T2_fwd") {
            out.push(run_check("T2_fwd", &e.name, || check_t2_fwd(&mut ctx)));
        }
        if sel.active("T2_rev") {
            out.push(run_check("T2_rev", &e.name, || check_t2_rev(&mut ctx)));
        }
        if sel.active("T3") {
            out.push(run_check("T3", &e.name, || check_t3(&mut ctx)));
        }
        if sel.active("T4") {
            out.push(run_check("T4", &e.name, || check_t4(&mut ctx)));
        }
        if sel.active("T5") {
            if let Ok(primes) = ctx.primes() {
                for p in primes {
                    out.push(run_check("T5", &e.name, || check_t5(&mut ctx, p)));
                }
            }
        }
        let small = e.group.order_u64().is_some_and(|n| n <= TRANSPORT_ORDER_CEILING);
        if small && sel.active("L1") {
            out.push(run_check("L1", &e.name, || check_l1(&mut ctx)));
        }
        if small && sel.active("L2") {
            out.push(run_check("L2", &e.name, || check_l2(&mut ctx)));
        }
        if sel.active("L3") {
            out.push(run_check("L3", &e.name, || check_l3(&mut ctx)));
        }
        if sel.active("L4") {
            out.push(run_check("L4", &e.name, || check_l4(&mut ctx)));
        }
    }
    if e.name == "L2(7)" && sel.active("R2") {
        out.push(run_check("R2", &e.name, || check_r2(&mut ctx)));
    }
    if e.name == "remark4" {
        if sel.active("LA_counter") {
            out.push(run_check("LA_counter", &e.name, || check_la_counter(&mut ctx)));
        }
        if sel.active("R4") {
            out.push(run_check("R4", &e.name, || check_r4(&mut ctx)));
        }
    }
    if e.name == "remark3" && sel.active("R3") {
        out.push(run_check("R3", &e.name, || check_r3(&mut ctx)));
    }
    out
}

/// Run the selected checks over every catalog entry. Entries run
/// concurrently; report order is catalog order regardless of completion.
pub fn run_suite(
    entries: &[CatalogEntry],
    bounds: &Bounds,
    sel: &CheckSelection,
) -> VerificationReport {
    let per: Vec<Vec<TheoremCheck>> = par::par_map(entries, |e| entry_checks(e, bounds, sel));
    VerificationReport {
        suite: sel.label().to_string(),
        catalog_id: catalog_id(entries),
        bounds: *bounds,
        checks: per.into_iter().flatten().collect(),
    }
}
