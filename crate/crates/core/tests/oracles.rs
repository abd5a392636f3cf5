//! Library results against direct computations from the definitions.

use std::collections::BTreeSet;
use std::sync::Arc;

use pfusion::corpus::shipped;
use pfusion::essentials::{essential_report, h_q, main_essential_collection};
use pfusion::fusion::{FusionContext, Mode};
use pfusion::group::{ops, GroupMorphism, GroupTable, SubgroupSet};
use pfusion::theorems::normality::{all_verdicts, definition_oracle_for};
use pfusion::Caps;

fn s4() -> Arc<GroupTable> {
    Arc::new(GroupTable::from_permutations(4, &[vec![1, 2, 3, 0], vec![1, 0, 2, 3]], &Caps::default()).unwrap())
}

fn sub(g: &GroupTable, labels: &[&str]) -> SubgroupSet {
    ops::generated(g, &labels.iter().map(|l| g.find_label(l).unwrap()).collect::<Vec<_>>())
}

fn s4_ctx() -> FusionContext {
    let g = s4();
    let s = sub(&g, &["(1,2,3,4)", "(1,3)"]);
    FusionContext::new(g, 2, s, None, Mode::Restricted, Caps::default()).unwrap()
}

/// Image vectors of every conjugation map `Q -> R`.
fn conjugation_maps(g: &GroupTable, q: &SubgroupSet, r: &SubgroupSet) -> BTreeSet<Vec<usize>> {
    (0..g.order())
        .map(|x| q.members().iter().map(|&y| g.conj(y, x)).collect::<Vec<_>>())
        .filter(|img| img.iter().all(|&z| r.contains(z)))
        .collect()
}

#[test]
fn hom_sets_match_direct_scan() {
    let ctx = s4_ctx();
    let subs = ctx.subgroups().unwrap();
    for q in subs.iter() {
        for r in subs.iter() {
            let lib: BTreeSet<Vec<usize>> = ctx.hom_set(q, r).iter().map(|m| m.map().images().to_vec()).collect();
            assert_eq!(lib, conjugation_maps(ctx.g(), q, r));
        }
    }
}

/// `x` in `N_P(Q)` lies in `N_phi` iff `phi^-1 c_x phi` is `c_y` on `R` for
/// some `y` in `N_P(R)`.
#[test]
fn n_phi_matches_definition() {
    for e in shipped().entries.iter().filter(|e| e.group_table(&Caps::default()).unwrap().order() <= 48) {
        let ctx = e.context(&Caps::default()).unwrap();
        let g = ctx.g();
        let n = g.order();
        for q in ctx.subgroups().unwrap().iter() {
            for r in ctx.f_conjugacy_class(q).iter() {
                for phi in ctx.isomorphisms(q, r).iter() {
                    let inv = phi.map().inverse(n);
                    let nr = ctx.normalizer(r);
                    let oracle: Vec<usize> = ctx
                        .normalizer(q)
                        .members()
                        .iter()
                        .copied()
                        .filter(|&x| {
                            let cx = GroupMorphism::conjugation(g, q, x);
                            let m = inv.then(&cx).unwrap().then(phi.map()).unwrap();
                            nr.members().iter().any(|&y| GroupMorphism::conjugation(g, r, y) == m)
                        })
                        .collect();
                    assert_eq!(ctx.n_phi(phi).members(), oracle.as_slice(), "{}", e.name);
                }
            }
        }
    }
}

#[test]
fn h_q_of_normal_four_group() {
    let ctx = s4_ctx();
    let g = ctx.g();
    let v = sub(g, &["(1,2)(3,4)", "(1,3)(2,4)"]);
    let autos = ctx.automizers(&v).unwrap();
    assert_eq!(autos.aut.order(), 6);
    // count automorphisms with N_phi > V directly
    let big: Vec<_> = ctx.hom_set(&v, &v).iter().filter(|phi| ctx.n_phi(phi).order() > 4).cloned().collect();
    assert_eq!(big.len(), 2);
    assert_eq!(h_q(&ctx, &v, &autos).unwrap().order(), 2);
}

#[test]
fn essential_collection_of_s4_by_filtering_all_subgroups() {
    let ctx = s4_ctx();
    let subs = ctx.subgroups().unwrap();
    assert_eq!(subs.len(), 10);
    let ess: Vec<SubgroupSet> = subs
        .iter()
        .filter(|q| q.order() < 8)
        .filter(|q| essential_report(&ctx, q).unwrap().verdict_h_q)
        .cloned()
        .collect();
    assert_eq!(ess, vec![sub(ctx.g(), &["(1,2)(3,4)", "(1,3)(2,4)"])]);
    let main = main_essential_collection(&ctx).unwrap();
    assert_eq!(main.len(), 1);
    assert_eq!(main[0].subgroup, ess[0]);
}

#[test]
fn sl23_automizer_of_q8() {
    let e = shipped().entries.into_iter().find(|e| e.name == "SL(2,3) at 2").unwrap();
    let ctx = e.context(&Caps::default()).unwrap();
    let autos = ctx.automizers(ctx.p_sub()).unwrap();
    assert_eq!(autos.aut.order(), 12);
    assert!(main_essential_collection(&ctx).unwrap().is_empty());
    // Q8 is normal in G: every element normalizes it
    let q8 = ctx.p_sub();
    assert!((0..24).all(|x| ops::normalizes(ctx.g(), q8, x)));
    assert!(definition_oracle_for(&ctx, q8).unwrap().normal);
}

#[test]
fn sl33_is_not_normal_in_its_own_system() {
    let e = shipped().entries.into_iter().find(|e| e.name == "SL(3,3) at 3").unwrap();
    let ctx = e.context(&Caps::default()).unwrap();
    assert_eq!(ctx.g().order(), 5616);
    let verdicts = all_verdicts(&ctx).unwrap();
    assert!(verdicts.iter().all(|v| !v.normal));
    // the two elementary abelian subgroups of order 9 are the essentials
    let main = main_essential_collection(&ctx).unwrap();
    assert_eq!(main.len(), 2);
    for r in &main {
        assert_eq!(r.subgroup.order(), 9);
        assert!(ctx.g().is_abelian() || r.subgroup.members().iter().all(|&x| ctx.g().element_order(x) <= 3));
    }
}
