//! Property suite: permutation laws, order arithmetic, and cross-checks
//! between independent code paths, over randomly sampled inputs.

use std::collections::BTreeMap;

use proptest::prelude::*;

use grouplab::construct::{alternating, cyclic, dihedral, elementary_abelian, symmetric};
use grouplab::group::{quotient, Group};
use grouplab::lattice::normal_subgroups;
use grouplab::modp::factor_u64;
use grouplab::perm::Perm;
use grouplab::structure::{composition_factors_via, is_solvable, spectrum, ChiefPick};
use grouplab::subgroup::Subgroup;
use grouplab::sylow::sylow;
use grouplab::Bounds;

fn perm(degree: usize) -> impl Strategy<Value = Perm> {
    Just((0..degree).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|imgs| Perm::from_images(imgs).expect("shuffled identity is a permutation"))
}

/// Small groups covering cyclic, dihedral, symmetric, alternating, and
/// elementary abelian structure; index into this with a proptest strategy.
fn pool() -> Vec<Group> {
    vec![
        cyclic(1).unwrap(),
        cyclic(6).unwrap(),
        cyclic(12).unwrap(),
        dihedral(4).unwrap(),
        dihedral(6).unwrap(),
        symmetric(3).unwrap(),
        symmetric(4).unwrap(),
        alternating(4).unwrap(),
        alternating(5).unwrap(),
        elementary_abelian(2, 3).unwrap(),
        elementary_abelian(3, 2).unwrap(),
    ]
}

fn pool_member() -> impl Strategy<Value = Group> {
    (0..pool().len()).prop_map(|i| pool().swap_remove(i))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn composition_is_associative(a in perm(7), b in perm(7), c in perm(7)) {
        prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
    }

    #[test]
    fn inverse_and_power_laws(a in perm(8)) {
        prop_assert!(a.compose(&a.inverse()).is_identity());
        prop_assert_eq!(a.inverse().inverse(), a.clone());
        prop_assert!(a.pow(a.order()).is_identity());
        prop_assert_eq!(a.inverse().order(), a.order());
    }

    #[test]
    fn conjugation_preserves_order(a in perm(8), g in perm(8)) {
        prop_assert_eq!(a.conjugate_by(&g).order(), a.order());
    }

    #[test]
    fn cycle_text_round_trips(a in perm(9)) {
        let text = a.to_string();
        prop_assert_eq!(Perm::parse_cycles(9, &text).expect("own rendering parses"), a);
    }

    #[test]
    fn quotient_order_times_kernel_order_is_group_order(g in pool_member()) {
        let b = Bounds::default();
        let n = g.order_u64().expect("pool groups are small");
        for normal in normal_subgroups(&g, b.element_cap).expect("normal subgroups") {
            let (q, _) = quotient(&g, normal.group(), b.index_cap).expect("quotient");
            prop_assert_eq!(
                q.order_u64().expect("small") * normal.group().order_u64().expect("small"),
                n
            );
        }
    }

    #[test]
    fn solvability_matches_composition_factor_orders(g in pool_member()) {
        let b = Bounds::default();
        // Derived series on one side, repeated maximal-normal quotients on
        // the other; they must agree on solvability.
        let via_series = is_solvable(&g).expect("derived series");
        let factors = composition_factors_via(&g, &b, ChiefPick::LargestMaximalNormal)
            .expect("composition factors");
        let via_factors = factors.iter().all(|f| {
            let o = f.order_u64().expect("small");
            factor_u64(o).len() == 1 && factor_u64(o)[0].1 == 1
        });
        prop_assert_eq!(via_series, via_factors);
    }

    #[test]
    fn composition_factor_orders_are_series_independent(g in pool_member()) {
        let b = Bounds::default();
        let orders = |pick: ChiefPick| -> BTreeMap<u64, usize> {
            let mut m = BTreeMap::new();
            for f in composition_factors_via(&g, &b, pick).expect("factors") {
                *m.entry(f.order_u64().expect("small")).or_insert(0) += 1;
            }
            m
        };
        prop_assert_eq!(
            orders(ChiefPick::LargestMaximalNormal),
            orders(ChiefPick::SmallestMaximalNormal)
        );
    }

    #[test]
    fn sylow_subgroups_carry_the_full_prime_part(g in pool_member()) {
        let b = Bounds::default();
        let n = g.order_u64().expect("small");
        for (p, e) in factor_u64(n) {
            let s = sylow(&g, p, &b).expect("sylow");
            prop_assert_eq!(s.group().order_u64().expect("small"), p.pow(e));
        }
    }

    #[test]
    fn spectrum_counts_every_element(g in pool_member()) {
        let b = Bounds::default();
        let spec = spectrum(&g, b.element_cap).expect("spectrum");
        prop_assert_eq!(
            spec.values().sum::<u64>(),
            g.order_u64().expect("small")
        );
        prop_assert_eq!(spec.get(&1).copied(), Some(1));
        let n = g.order_u64().unwrap();
        prop_assert!(spec.keys().all(|o| n % o == 0));
    }

    #[test]
    fn generated_subgroups_obey_core_laws(g in pool_member(), seed in any::<u64>()) {
        let b = Bounds::default();
        let elems = g.elements(b.element_cap).expect("elements");
        let x = elems[(seed % elems.len() as u64) as usize].clone();
        let y = elems[((seed >> 16) % elems.len() as u64) as usize].clone();
        let h = Subgroup::new(&g, vec![x, y]).expect("subgroup");
        let by_action = h.core_by_action(b.index_cap).expect("coset-action core");
        let by_filter = h.core_by_filter(b.element_cap).expect("filter core");
        prop_assert!(by_action.same_subgroup_as(&by_filter));
        prop_assert!(h.contains_subgroup(&by_action));
        prop_assert!(by_action.is_normal());
        // The core is the largest normal subgroup inside H: H itself is
        // normal exactly when it equals its core.
        prop_assert_eq!(h.is_normal(), by_action.same_subgroup_as(&h));
    }

    #[test]
    fn join_contains_both_and_normal_closure_is_normal(g in pool_member(), seed in any::<u64>()) {
        let b = Bounds::default();
        let elems = g.elements(b.element_cap).expect("elements");
        let x = elems[(seed % elems.len() as u64) as usize].clone();
        let y = elems[((seed >> 16) % elems.len() as u64) as usize].clone();
        let hx = Subgroup::new(&g, vec![x]).expect("subgroup");
        let hy = Subgroup::new(&g, vec![y]).expect("subgroup");
        let j = hx.join(&hy).expect("join");
        prop_assert!(j.contains_subgroup(&hx));
        prop_assert!(j.contains_subgroup(&hy));
        let m = hx.intersect(&hy, b.element_cap).expect("intersection");
        prop_assert!(hx.contains_subgroup(&m));
        prop_assert!(hy.contains_subgroup(&m));
        prop_assert!(hx.normal_closure().is_normal());
    }
}
