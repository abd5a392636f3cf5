//! Counting cyclic subgroups of p-groups.

use super::action::ActionGroup;
use super::arith::{euler_phi, prime_power};
use super::lattice::cyclic_subgroups;
use super::subgroup::SubgroupSet;
use super::table::GroupTable;
use crate::error::{precondition, Error, Result};

/// Number of nontrivial cyclic subgroups of a p-group: each cyclic subgroup
/// of order `k` has `phi(k)` generators.
pub fn count_nontrivial_cyclic_subgroups(p: &GroupTable) -> Result<usize> {
    if p.order() > 1 && prime_power(p.order()).is_none() {
        return Err(Error::Domain(format!("order {} is not a prime power", p.order())));
    }
    let mut by_order = std::collections::BTreeMap::new();
    for x in 1..p.order() {
        *by_order.entry(p.element_order(x)).or_insert(0usize) += 1;
    }
    Ok(by_order.into_iter().map(|(k, c)| c / euler_phi(k)).sum())
}

/// Cyclic subgroups of `p` invariant under every element of `a` and not
/// contained in `h`. The action must be on the whole of `p`.
pub fn invariant_cyclic_outside(p: &GroupTable, a: &ActionGroup, h: &SubgroupSet) -> Result<Vec<SubgroupSet>> {
    let all = SubgroupSet::whole(p);
    if a.acts_on() != &all {
        return precondition("action must be on the whole group");
    }
    let whole_a = SubgroupSet::whole(a.carrier());
    if !a.stabilizes(&whole_a, h) {
        return precondition("subgroup is not invariant under the action");
    }
    Ok(cyclic_subgroups(p, &all)
        .into_iter()
        .filter(|c| !c.is_subset(h) && a.stabilizes(&whole_a, c))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::caps::Caps;
    use crate::catalog;
    use crate::group::ops;

    #[test]
    fn counts() {
        let caps = Caps::default();
        assert_eq!(count_nontrivial_cyclic_subgroups(&catalog::cyclic(9, &caps).unwrap()).unwrap(), 2);
        assert_eq!(count_nontrivial_cyclic_subgroups(&catalog::elementary_abelian(3, 2, &caps).unwrap()).unwrap(), 4);
        assert_eq!(count_nontrivial_cyclic_subgroups(&GroupTable::trivial()).unwrap(), 0);
        assert!(count_nontrivial_cyclic_subgroups(&catalog::cyclic(6, &caps).unwrap()).is_err());
        // oracle: distinct <x>
        let d16 = catalog::dihedral(4, &caps).unwrap();
        let n = cyclic_subgroups(&d16, &SubgroupSet::whole(&d16)).len() - 1;
        assert_eq!(count_nontrivial_cyclic_subgroups(&d16).unwrap(), n);
    }

    #[test]
    fn scalar_on_c5xc5() {
        let caps = Caps::default();
        let p = catalog::elementary_abelian(5, 2, &caps).unwrap();
        let w = SubgroupSet::whole(&p);
        let two = crate::group::GroupMorphism::new(w.clone(), (0..25).map(|x| p.pow(x, 2)).collect());
        let a = ActionGroup::generated_by(25, &w, &[two], &caps).unwrap();
        assert_eq!(a.order(), 4);
        let out = invariant_cyclic_outside(&p, &a, &SubgroupSet::trivial(25)).unwrap();
        assert_eq!(out.len(), 6);
        let fixed = a.fixed_points(&SubgroupSet::whole(a.carrier()));
        assert!(out.iter().all(|c| c.intersection(&fixed).is_trivial()));
    }

    #[test]
    fn inversion_on_c3xc3() {
        let caps = Caps::default();
        let p = catalog::elementary_abelian(3, 2, &caps).unwrap();
        let w = SubgroupSet::whole(&p);
        let inv = crate::group::GroupMorphism::new(w.clone(), (0..9).map(|x| p.inv(x)).collect());
        let a = ActionGroup::generated_by(9, &w, &[inv], &caps).unwrap();
        let h = ops::generated(&p, &[p.generators()[0]]);
        let out = invariant_cyclic_outside(&p, &a, &h).unwrap();
        assert_eq!(out.len(), 3);
        assert!(out.iter().all(|c| c.order() == 3));
        let bad = ops::generated(&p, &[p.generators()[0]]);
        let swap: Vec<usize> = {
            // exchange the two coordinates
            let (g0, g1) = (p.generators()[0], p.generators()[1]);
            let mut f = vec![0; 9];
            for i in 0..3 {
                for j in 0..3 {
                    let x = p.mul(p.pow(g0, i), p.pow(g1, j));
                    f[x] = p.mul(p.pow(g1, i), p.pow(g0, j));
                }
            }
            f
        };
        let sw = ActionGroup::generated_by(9, &w, &[crate::group::GroupMorphism::new(w.clone(), swap)], &caps).unwrap();
        assert!(invariant_cyclic_outside(&p, &sw, &bad).is_err());
    }
}
