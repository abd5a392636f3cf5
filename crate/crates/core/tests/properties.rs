use std::sync::Arc;

use proptest::prelude::*;

use pfusion::catalog::{self, CatalogSpec};
use pfusion::corpus::{build_context, shipped, PSelector};
use pfusion::essentials::representative_reports;
use pfusion::fusion::{FusionContext, Mode};
use pfusion::group::counting::count_nontrivial_cyclic_subgroups;
use pfusion::group::lattice::all_subgroups;
use pfusion::group::{ops, GroupTable, SubgroupSet};
use pfusion::theorems::{factorize, verify_chain};
use pfusion::Caps;

fn permutation() -> impl Strategy<Value = Vec<usize>> {
    (3usize..=6).prop_flat_map(|n| Just((0..n).collect::<Vec<_>>()).prop_shuffle())
}

fn pad(mut p: Vec<usize>, n: usize) -> Vec<usize> {
    p.extend(p.len()..n);
    p
}

fn perm_group() -> impl Strategy<Value = GroupTable> {
    (permutation(), permutation()).prop_map(|(a, b)| {
        let n = a.len().max(b.len());
        GroupTable::from_permutations(n, &[pad(a, n), pad(b, n)], &Caps::default()).unwrap()
    })
}

fn small_context() -> impl Strategy<Value = FusionContext> {
    let entries: Vec<_> = shipped().entries.into_iter().filter(|e| !e.name.starts_with("SL(3,3)")).collect();
    (0..entries.len()).prop_map(move |i| entries[i].context(&Caps::default()).unwrap())
}

fn table_axioms(g: &GroupTable) -> bool {
    let n = g.order();
    (0..n).all(|a| {
        let mut row = vec![false; n];
        let mut col = vec![false; n];
        for b in 0..n {
            row[g.mul(a, b)] = true;
            col[g.mul(b, a)] = true;
        }
        row.iter().all(|&x| x) && col.iter().all(|&x| x) && g.mul(a, 0) == a && g.mul(a, g.inv(a)) == 0
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn permutation_groups_are_groups(g in perm_group()) {
        prop_assert!(table_axioms(&g));
        prop_assert!(g.validate(&Caps::default()).is_ok());
        for x in 0..g.order().min(40) {
            for y in 0..g.order().min(40) {
                for z in 0..g.order().min(10) {
                    prop_assert_eq!(g.mul(g.mul(x, y), z), g.mul(x, g.mul(y, z)));
                }
            }
        }
    }

    #[test]
    fn lagrange_and_sylow(g in perm_group()) {
        prop_assume!(g.order() <= 120);
        let whole = SubgroupSet::whole(&g);
        let subs = all_subgroups(&g, &whole, &Caps::default()).unwrap();
        for h in &subs {
            prop_assert_eq!(g.order() % h.order(), 0);
            prop_assert!(h.is_subgroup_of(&g));
        }
        for p in [2usize, 3, 5] {
            let s = ops::sylow_subgroup(&g, &whole, p);
            let mut part = 1;
            let mut n = g.order();
            while n % p == 0 { part *= p; n /= p; }
            prop_assert_eq!(s.order(), part);
        }
    }

    #[test]
    fn content_hash_is_deterministic(a in permutation(), b in permutation()) {
        let n = a.len().max(b.len());
        let gens = [pad(a, n), pad(b, n)];
        let g1 = GroupTable::from_permutations(n, &gens, &Caps::default()).unwrap();
        let g2 = GroupTable::from_permutations(n, &gens, &Caps::default()).unwrap();
        prop_assert_eq!(g1.content_hash(), g2.content_hash());
    }

    #[test]
    fn cyclic_count_congruence(moduli in proptest::collection::vec(prop_oneof![Just(3u64), Just(9), Just(27)], 1..=3)) {
        prop_assume!(moduli.iter().product::<u64>() <= 729);
        let g = catalog::abelian(&moduli, &Caps::default()).unwrap();
        let n = (g.order() as f64).log(3.0).round() as usize;
        let count = count_nontrivial_cyclic_subgroups(&g).unwrap();
        prop_assert_eq!(count % 2, n % 2);
    }

    #[test]
    fn metacyclic_presentations(m in 1u32..=3, n in 1u32..=2, k in 0u64..3) {
        let pm = 3u64.pow(m);
        let t = (1 + k * 3) % pm;
        prop_assume!(t != 0);
        let spec = CatalogSpec::Metacyclic { p: 3, m, n, t };
        if let Ok(g) = catalog::build(&spec, &Caps::default()) {
            prop_assert!(catalog::validate_presentation(&g, &spec));
            let text = serde_json::to_string(&spec).unwrap();
            prop_assert_eq!(serde_json::from_str::<CatalogSpec>(&text).unwrap(), spec);
        }
    }

    #[test]
    fn hom_sets_compose_and_invert(ctx in small_context(), i in 0usize..64, j in 0usize..64) {
        let subs = ctx.subgroups().unwrap();
        let q = &subs[i % subs.len()];
        let r = &subs[j % subs.len()];
        let base = ctx.base().clone();
        for phi in ctx.hom_set(q, r).iter() {
            for psi in ctx.hom_set(r, &base).iter() {
                let c = ctx.compose(phi, psi).unwrap();
                prop_assert!(ctx.hom_set(q, &base).contains(&c));
            }
            if q.order() == r.order() {
                let inv = ctx.inverse(phi);
                prop_assert!(ctx.hom_set(r, q).contains(&inv));
            }
        }
    }

    #[test]
    fn n_phi_bounds(ctx in small_context(), i in 0usize..64) {
        let subs = ctx.subgroups().unwrap();
        let q = &subs[i % subs.len()];
        let g = ctx.g();
        let lower = ops::join_subgroups(g, q, &ctx.centralizer(q));
        let upper = ctx.normalizer(q);
        for r in ctx.f_conjugacy_class(q).iter() {
            for phi in ctx.isomorphisms(q, r).iter() {
                let n = ctx.n_phi(phi);
                prop_assert!(lower.is_subset(&n) && n.is_subset(&upper));
            }
        }
    }

    #[test]
    fn fully_normalized_representatives(ctx in small_context(), i in 0usize..64) {
        let subs = ctx.subgroups().unwrap();
        let q = &subs[i % subs.len()];
        let rep = ctx.class_representative(q);
        prop_assert!(ctx.is_fully_normalized(&rep));
        prop_assert!(ctx.with_mode(Mode::Ambient).is_fully_normalized(&rep) || ctx.mode() == Mode::Ambient);
        if rep.order() < ctx.base().order() {
            prop_assert!(ctx.is_reproductive(&rep));
        }
        // strong closure agrees between the two systems
        prop_assert_eq!(ctx.is_strongly_closed(q), ctx.with_mode(Mode::Ambient).is_strongly_closed(q));
    }

    #[test]
    fn factorization_is_sound(ctx in small_context(), i in 0usize..64, j in 0usize..16) {
        let subs = ctx.subgroups().unwrap();
        let q = &subs[i % subs.len()];
        let class = ctx.f_conjugacy_class(q);
        let r = &class[j % class.len()];
        for psi in ctx.isomorphisms(q, r).iter() {
            let chain = factorize(&ctx, psi).unwrap();
            prop_assert!(verify_chain(&ctx, psi, &chain));
        }
    }

    #[test]
    fn essential_report_invariants(ctx in small_context()) {
        for r in representative_reports(&ctx).unwrap() {
            if r.fully_normalized && r.centric_wrt_p {
                prop_assert_eq!(r.verdict_h_q, r.verdict_embedding);
            }
            if r.h_q_index == 1 {
                prop_assert!(!r.verdict_h_q);
            }
            if r.verdict_h_q {
                prop_assert!(r.centric_wrt_p);
            }
        }
    }
}

#[test]
fn sylow_selectors_resolve() {
    let g = Arc::new(GroupTable::from_permutations(4, &[vec![1, 2, 3, 0], vec![1, 0, 2, 3]], &Caps::default()).unwrap());
    let ctx = build_context(g.clone(), 2, None, &PSelector::Core, Mode::Restricted, Caps::default()).unwrap();
    assert_eq!(ctx.p_sub().order(), 4);
    assert!(build_context(g, 2, Some(&[99]), &PSelector::Sylow, Mode::Restricted, Caps::default()).is_err());
}
