//! Power maps induced on the sections of a chain `1 < U < M < P` in a
//! nonabelian group of order `p^3`.

use serde::Serialize;

use crate::error::{precondition, Error, Result};
use crate::group::arith::prime_power;
use crate::group::{ops, GroupMorphism, GroupTable, SubgroupSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PowerCongruence {
    /// Power on `P/M`.
    pub n: usize,
    /// Power on `M/U`.
    pub m: usize,
    /// Power on `U`.
    pub k: usize,
    pub u_is_center: bool,
    /// `k = nm (mod p)` when `U = Z(P)`, else `m = nk (mod p)`.
    pub relation_holds: bool,
}

/// The exponent `e` in `0..p` with `alpha(x) = x^e` modulo `lower` for all
/// `x` in `upper`.
fn section_power(g: &GroupTable, alpha: &GroupMorphism, upper: &SubgroupSet, lower: &SubgroupSet, p: usize) -> Result<usize> {
    (0..p)
        .find(|&e| {
            upper.members().iter().all(|&x| {
                let y = g.mul(alpha.apply(x), g.inv(g.pow(x, e as i64)));
                lower.contains(y)
            })
        })
        .ok_or_else(|| Error::Precondition("automorphism is not a power map on a section".into()))
}

/// Extracts the section powers of `alpha` on `P/M`, `M/U`, `U` and checks
/// the applicable congruence.
pub fn power_congruence_check(
    g: &GroupTable,
    alpha: &GroupMorphism,
    u: &SubgroupSet,
    m: &SubgroupSet,
) -> Result<PowerCongruence> {
    let p = match prime_power(g.order()) {
        Some((p, 3)) if !g.is_abelian() => p,
        _ => return precondition("expected a nonabelian group of order p^3"),
    };
    let whole = SubgroupSet::whole(g);
    if !(u.order() == p && m.order() == p * p && u.is_subset(m)) {
        return precondition("expected a chain 1 < U < M < P");
    }
    if alpha.domain() != &whole || !alpha.is_injective_hom(g, g) {
        return precondition("expected an automorphism of P");
    }
    for h in [u, m] {
        if h.members().iter().any(|&x| !h.contains(alpha.apply(x))) {
            return precondition("automorphism does not stabilize the chain");
        }
    }
    let n_pow = section_power(g, alpha, &whole, m, p)?;
    let m_pow = section_power(g, alpha, m, u, p)?;
    let k_pow = section_power(g, alpha, u, &SubgroupSet::trivial(g.order()), p)?;
    let u_is_center = *u == ops::center(g, &whole);
    let relation_holds =
        if u_is_center { k_pow % p == (n_pow * m_pow) % p } else { m_pow % p == (n_pow * k_pow) % p };
    Ok(PowerCongruence { n: n_pow, m: m_pow, k: k_pow, u_is_center, relation_holds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::group::iso::automorphism_group;
    use crate::Caps;

    #[test]
    fn identity_gives_ones() {
        let g = catalog::extraspecial_exp_p(3, &Caps::default()).unwrap();
        let w = SubgroupSet::whole(&g);
        let z = ops::center(&g, &w);
        let m = ops::join(&g, &z, &[g.generators()[0]]);
        let r = power_congruence_check(&g, &GroupMorphism::identity(&w), &z, &m).unwrap();
        assert_eq!((r.n, r.m, r.k), (1, 1, 1));
        assert!(r.relation_holds && r.u_is_center);
    }

    #[test]
    fn every_stabilizing_automorphism_of_27() {
        let caps = Caps::default();
        let g = catalog::extraspecial_exp_p(3, &caps).unwrap();
        let w = SubgroupSet::whole(&g);
        let z = ops::center(&g, &w);
        let a = g.generators()[0];
        let m = ops::join(&g, &z, &[a]);
        // a non-central U inside M
        let u = ops::generated(&g, &[a]);
        let aut = automorphism_group(&g, &caps).unwrap();
        let mut checked = 0;
        for i in 0..aut.order() {
            let alpha = aut.morphism(i);
            for uu in [&z, &u] {
                if let Ok(r) = power_congruence_check(&g, &alpha, uu, &m) {
                    assert!(r.relation_holds, "{r:?}");
                    checked += 1;
                }
            }
        }
        assert!(checked > 3);
    }

    #[test]
    fn non_stabilizing_rejected() {
        let caps = Caps::default();
        let g = catalog::extraspecial_exp_p(3, &caps).unwrap();
        let w = SubgroupSet::whole(&g);
        let z = ops::center(&g, &w);
        let (a, b) = (g.generators()[0], g.generators()[1]);
        let m = ops::join(&g, &z, &[a]);
        // conjugation-free swap a <-> b does not fix M
        let aut = automorphism_group(&g, &caps).unwrap();
        let swap = (0..aut.order()).map(|i| aut.morphism(i)).find(|f| f.apply(a) == b).unwrap();
        assert!(power_congruence_check(&g, &swap, &z, &m).is_err());
        let c9 = catalog::cyclic(27, &caps).unwrap();
        let t = SubgroupSet::trivial(27);
        assert!(power_congruence_check(&c9, &GroupMorphism::identity(&SubgroupSet::whole(&c9)), &t, &t).is_err());
    }
}
