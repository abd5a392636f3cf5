//! Instance checks of the structural lemmas: coprime action, faithfulness
//! of `Aut(P)` on `Omega*(P)` and `P/Phi(P)`, automizer closure, the
//! characterization of essential subgroups, cyclic-subgroup counting and
//! power maps on sections.

use serde::Serialize;

use crate::caps::Caps;
use crate::catalog::{self, CatalogSpec, ExtraspecialBase};
use crate::error::{Error, Result};
use crate::essentials::{
    canonical_embedded_subgroup, essential_report, is_centric_wrt_p, is_strongly_closed_in, representative_reports,
    strongly_embedded_subgroups,
};
use crate::fusion::{FusionContext, Mode};
use crate::group::action::QuotientGroup;
use crate::group::arith::{gcd, prime_power};
use crate::group::counting::{count_nontrivial_cyclic_subgroups, invariant_cyclic_outside};
use crate::group::iso::automorphism_group;
use crate::group::lattice::{all_subgroups, maximal_subgroups, normal_subgroups, p_group_generators};
use crate::group::{ops, ActionGroup, GroupMorphism, GroupTable, SubgroupSet};
use crate::theorems::power::power_congruence_check;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub lemma: String,
    pub instance: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

fn check(lemma: &str, instance: &str, passed: bool) -> Check {
    Check { lemma: lemma.to_string(), instance: instance.to_string(), passed, detail: None }
}

/// Catalog p-groups with `|P| <= 3^4` or `|P| <= 2^6`.
pub fn small_p_groups() -> Vec<CatalogSpec> {
    use CatalogSpec::*;
    let mut v = Vec::new();
    for n in [2, 4, 8, 16, 32, 64, 3, 9, 27, 81] {
        v.push(Cyclic { n });
    }
    for rank in 2..=6 {
        v.push(ElementaryAbelian { p: 2, rank });
    }
    for rank in 2..=4 {
        v.push(ElementaryAbelian { p: 3, rank });
    }
    for moduli in [vec![2, 4], vec![4, 4], vec![2, 8], vec![2, 2, 4], vec![4, 8], vec![3, 9], vec![9, 9], vec![3, 27], vec![3, 3, 9]] {
        v.push(AbelianType { moduli });
    }
    for n in 3..=6 {
        v.push(Dihedral { n });
        v.push(GeneralizedQuaternion { n });
    }
    for n in 4..=6 {
        v.push(Semidihedral { n });
    }
    v.push(Gamma {});
    v.push(ExtraspecialP3ExpP { p: 3 });
    v.push(ExtraspecialP3ExpP2 { p: 3 });
    for (base, p, rank) in [
        (ExtraspecialBase::Dihedral, 2, 1),
        (ExtraspecialBase::Quaternion, 2, 1),
        (ExtraspecialBase::Dihedral, 2, 2),
        (ExtraspecialBase::ExponentP, 3, 1),
        (ExtraspecialBase::ExponentP2, 3, 1),
    ] {
        v.push(GeneralizedExtraspecialProduct { base, p, rank });
    }
    v.push(Metacyclic { p: 3, m: 2, n: 2, t: 4 });
    v.push(Metacyclic { p: 2, m: 3, n: 2, t: 5 });
    v.push(Metacyclic { p: 2, m: 4, n: 1, t: 9 });
    v.push(Cpr { p: 3, r: 4 });
    v
}

pub fn spec_name(spec: &CatalogSpec) -> String {
    serde_json::to_string(spec).expect("spec serializes")
}

/// `count_nontrivial_cyclic_subgroups(P) = log_p |P| (mod p - 1)`.
pub fn counting_lemma_checks(caps: &Caps) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for spec in small_p_groups() {
        let g = catalog::build(&spec, caps)?;
        let (p, n) = prime_power(g.order()).expect("p-group");
        let count = count_nontrivial_cyclic_subgroups(&g)?;
        let mut c = check("cyclic subgroup count", &spec_name(&spec), count % (p - 1) == n as usize % (p - 1));
        c.detail = Some(format!("count {count}, n {n}, p {p}"));
        out.push(c);
    }
    Ok(out)
}

/// A coprime action `A` of prime-power order `r^k`, `r | p - 1`, with an
/// invariant `H`; checked for nonemptiness when `n != c (mod r)`, and for
/// trivial fixed points when `C_P(A) <= H`.
pub fn counting_theorem_check(name: &str, p: &GroupTable, a: &ActionGroup, h: &SubgroupSet) -> Result<Check> {
    let (q, n) = prime_power(p.order()).ok_or_else(|| Error::Domain("not a p-group".into()))?;
    let (r, _) = prime_power(a.order()).ok_or_else(|| Error::Precondition("action order is not a prime power".into()))?;
    if (q - 1) % r != 0 {
        return Err(Error::Precondition("r must divide p - 1".into()));
    }
    let c = prime_power(h.order()).map_or(0, |(_, c)| c);
    let found = invariant_cyclic_outside(p, a, h)?;
    let whole_a = SubgroupSet::whole(a.carrier());
    let fixed = a.fixed_points(&whole_a);
    let mut passed = true;
    if (n as usize) % r != (c as usize) % r {
        passed &= !found.is_empty();
    }
    if fixed.is_subset(h) {
        passed &= found.iter().all(|x| x.intersection(&fixed).is_trivial());
    }
    let mut ch = check("invariant cyclic subgroup outside H", name, passed);
    ch.detail = Some(format!("n {n}, c {c}, r {r}, found {}", found.len()));
    Ok(ch)
}

/// The automorphism sending the leading designated generators to `images`.
fn automorphism_from_images(g: &GroupTable, images: &[usize]) -> Result<GroupMorphism> {
    let aut = automorphism_group(g, &Caps::default())?;
    (0..aut.order())
        .map(|i| aut.morphism(i))
        .find(|m| g.generators().iter().zip(images).all(|(&s, &t)| m.apply(s) == t))
        .ok_or_else(|| Error::Validation("images do not define an automorphism".into()))
}

pub fn counting_theorem_checks(caps: &Caps) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let whole_action = |g: &GroupTable, gens: Vec<GroupMorphism>| {
        ActionGroup::generated_by(g.order(), &SubgroupSet::whole(g), &gens, caps)
    };
    // C3 x C3 and inversion, H one factor
    let g = catalog::elementary_abelian(3, 2, caps)?;
    let inv = automorphism_from_images(&g, &g.generators().iter().map(|&x| g.inv(x)).collect::<Vec<_>>())?;
    let a = whole_action(&g, vec![inv.clone()])?;
    let h = ops::generated(&g, &[g.generators()[0]]);
    out.push(counting_theorem_check("C3^2, inversion, H = C3", &g, &a, &h)?);
    // C9 and inversion, H = C3
    let g9 = catalog::cyclic(9, caps)?;
    let inv9 = automorphism_from_images(&g9, &[g9.inv(g9.generators()[0])])?;
    let a9 = whole_action(&g9, vec![inv9])?;
    out.push(counting_theorem_check("C9, inversion, H = C3", &g9, &a9, &ops::generated(&g9, &[g9.pow(g9.generators()[0], 3)]))?);
    // C5 x C5 and the scalar 2 (order 4), H one factor
    let g25 = catalog::elementary_abelian(5, 2, caps)?;
    let sc = automorphism_from_images(&g25, &g25.generators().iter().map(|&x| g25.pow(x, 2)).collect::<Vec<_>>())?;
    let a25 = whole_action(&g25, vec![sc])?;
    out.push(counting_theorem_check("C5^2, scalar 2, H = C5", &g25, &a25, &ops::generated(&g25, &[g25.generators()[0]]))?);
    // C7 x C7 and diag(2, 4) (order 3), H = 1
    let g49 = catalog::elementary_abelian(7, 2, caps)?;
    let (x, y) = (g49.generators()[0], g49.generators()[1]);
    let d = automorphism_from_images(&g49, &[g49.pow(x, 2), g49.pow(y, 4)])?;
    let a49 = whole_action(&g49, vec![d])?;
    out.push(counting_theorem_check("C7^2, diag(2,4), H = 1", &g49, &a49, &SubgroupSet::trivial(49))?);
    // C7 and multiplication by 2, H = 1
    let g7 = catalog::cyclic(7, caps)?;
    let m2 = automorphism_from_images(&g7, &[g7.pow(g7.generators()[0], 2)])?;
    let a7 = whole_action(&g7, vec![m2])?;
    out.push(counting_theorem_check("C7, x -> x^2, H = 1", &g7, &a7, &SubgroupSet::trivial(7))?);
    // extraspecial 27 of exponent 3 and an involution inverting both generators
    let e = catalog::extraspecial_exp_p(3, caps)?;
    let ie = automorphism_from_images(&e, &e.generators()[..2].iter().map(|&x| e.inv(x)).collect::<Vec<_>>())?;
    let ae = whole_action(&e, vec![ie])?;
    out.push(counting_theorem_check("3^(1+2) exponent 3, inversion on generators, H = 1", &e, &ae, &SubgroupSet::trivial(27))?);
    Ok(out)
}

/// Groups with automorphism groups small enough to enumerate.
pub fn automorphism_instances(caps: &Caps) -> Result<Vec<(String, GroupTable)>> {
    use CatalogSpec::*;
    let specs = [
        ElementaryAbelian { p: 3, rank: 2 },
        ElementaryAbelian { p: 2, rank: 3 },
        ElementaryAbelian { p: 5, rank: 2 },
        AbelianType { moduli: vec![3, 9] },
        AbelianType { moduli: vec![4, 4] },
        Cyclic { n: 7 },
        Cyclic { n: 9 },
        GeneralizedQuaternion { n: 3 },
        Dihedral { n: 3 },
        Gamma {},
        ExtraspecialP3ExpP { p: 3 },
        ExtraspecialP3ExpP2 { p: 3 },
    ];
    specs.iter().map(|s| Ok((spec_name(s), catalog::build(s, caps)?))).collect()
}

/// `[G, A] = <x^-1 x^a>`.
fn commutator_with(g: &GroupTable, a: &ActionGroup, h: &SubgroupSet) -> SubgroupSet {
    let gens = SubgroupSet::whole(a.carrier()).generators(a.carrier()).to_vec();
    let seed: Vec<usize> = h
        .members()
        .iter()
        .flat_map(|&x| gens.iter().map(move |&s| (x, s)))
        .map(|(x, s)| g.mul(g.inv(x), a.image(s, x)))
        .collect();
    ops::generated(g, &seed)
}

/// Coprime-action identities for every Sylow subgroup of `Aut(P)` at a
/// prime other than `p`.
pub fn coprime_action_checks(instances: &[(String, GroupTable)], caps: &Caps) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for (name, g) in instances {
        let (p, _) = prime_power(g.order()).expect("p-group");
        let aut = automorphism_group(g, caps)?;
        let whole = SubgroupSet::whole(g);
        let carrier_whole = SubgroupSet::whole(aut.carrier());
        for q in crate::group::arith::prime_divisors(aut.order() as u64).into_iter().map(|q| q as usize).filter(|&q| q != p) {
            let sq = ops::sylow_subgroup(aut.carrier(), &carrier_whole, q);
            let a = aut.restrict_carrier(&sq, caps)?;
            debug_assert_eq!(gcd(a.order(), g.order()), 1);
            let inst = format!("{name}, A = Sylow {q} of Aut (order {})", a.order());
            let ga = commutator_with(g, &a, &whole);
            let cga = a.fixed_points(&SubgroupSet::whole(a.carrier()));
            out.push(check("coprime action (a): G = [G,A] C_G(A)", &inst, ops::join_subgroups(g, &ga, &cga) == whole));
            out.push(check("coprime action (b): [G,A,A] = [G,A]", &inst, commutator_with(g, &a, &ga) == ga));
            let a_whole = SubgroupSet::whole(a.carrier());
            for n in normal_subgroups(g, &whole, caps)? {
                if n.is_trivial() || n == whole || !a.stabilizes(&a_whole, &n) {
                    continue;
                }
                let quot = QuotientGroup::new(g, &n)?;
                let agens = a_whole.generators(a.carrier()).to_vec();
                let fixed: Vec<usize> = (0..quot.table().order())
                    .filter(|&c| agens.iter().all(|&s| quot.project(a.image(s, quot.lift(c))) == c))
                    .collect();
                let image = quot.project_subgroup(&cga);
                out.push(check(
                    "coprime action (c): C_{G/N}(A) is the image of C_G(A)",
                    &format!("{inst}, |N| = {}", n.order()),
                    image.members() == fixed.as_slice(),
                ));
            }
        }
        // (d) for every p'-element of Aut(P)
        let phi = ops::frattini_subgroup(g, &whole, caps)?;
        let mut bad = 0usize;
        let mut tested = 0usize;
        for s in 1..aut.order() {
            if gcd(aut.carrier().element_order(s), p) != 1 {
                continue;
            }
            tested += 1;
            let trivial_mod_phi = whole.members().iter().all(|&x| phi.contains(g.mul(g.inv(x), aut.image(s, x))));
            if trivial_mod_phi {
                bad += 1;
            }
        }
        let mut c = check("coprime action (d): centralizing G/Phi(G) forces trivial action", name, bad == 0);
        c.detail = Some(format!("{tested} p'-automorphisms"));
        out.push(c);
    }
    Ok(out)
}

/// Kernels of `Aut(P)` on `Omega*(P)` and on `P/Phi(P)` lie in `O_p`.
pub fn faithfulness_checks(instances: &[(String, GroupTable)], caps: &Caps) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for (name, g) in instances {
        let (p, _) = prime_power(g.order()).expect("p-group");
        let aut = automorphism_group(g, caps)?;
        let whole = SubgroupSet::whole(g);
        let carrier = aut.carrier();
        let op = ops::o_p(carrier, &SubgroupSet::whole(carrier), p);
        let omega = ops::omega_star(g, &whole)?;
        out.push(check("C_A(Omega*(P)) <= O_p(A)", name, aut.kernel_on(&omega).is_subset(&op)));
        let phi = ops::frattini_subgroup(g, &whole, caps)?;
        let frattini_kernel = SubgroupSet::from_members(
            aut.order(),
            (0..aut.order()).filter(|&s| whole.members().iter().all(|&x| phi.contains(g.mul(g.inv(x), aut.image(s, x))))),
        );
        out.push(check("C_A(P/Phi(P)) <= O_p(A)", name, frattini_kernel.is_subset(&op)));
    }
    Ok(out)
}

/// For 2-generated `P` with `Aut(P)` not p-closed, `Aut(P)` is transitive
/// on maximal subgroups.
pub fn transitive_maximals_checks(instances: &[(String, GroupTable)], caps: &Caps) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for (name, g) in instances {
        let (p, _) = prime_power(g.order()).expect("p-group");
        let whole = SubgroupSet::whole(g);
        if p_group_generators(g, &whole, p).len() != 2 {
            continue;
        }
        let aut = automorphism_group(g, caps)?;
        if ops::is_p_closed(aut.carrier(), &SubgroupSet::whole(aut.carrier()), p) {
            continue;
        }
        let maxes = maximal_subgroups(g, &whole, caps)?;
        let orbit: std::collections::HashSet<Vec<usize>> = (0..aut.order())
            .map(|s| {
                let mut img: Vec<usize> = maxes[0].members().iter().map(|&x| aut.image(s, x)).collect();
                img.sort_unstable();
                img
            })
            .collect();
        out.push(check("Aut(P) transitive on maximal subgroups", name, orbit.len() == maxes.len()));
    }
    Ok(out)
}

/// The power-map congruence for every automorphism and chain of the
/// nonabelian groups of order `p^3` among the instances.
pub fn power_congruence_checks(instances: &[(String, GroupTable)], caps: &Caps) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for (name, g) in instances {
        if !matches!(prime_power(g.order()), Some((_, 3))) || g.is_abelian() {
            continue;
        }
        let whole = SubgroupSet::whole(g);
        let aut = automorphism_group(g, caps)?;
        let subs = all_subgroups(g, &whole, caps)?;
        let p = prime_power(g.order()).unwrap().0;
        let mut tested = 0usize;
        let mut failed = 0usize;
        for u in subs.iter().filter(|u| u.order() == p) {
            for m in subs.iter().filter(|m| m.order() == p * p && u.is_subset(m)) {
                for s in 0..aut.order() {
                    if let Ok(r) = power_congruence_check(g, &aut.morphism(s), u, m) {
                        tested += 1;
                        failed += usize::from(!r.relation_holds);
                    }
                }
            }
        }
        let mut c = check("power maps on sections: k = nm or m = nk (mod p)", name, tested > 0 && failed == 0);
        c.detail = Some(format!("{tested} (automorphism, chain) pairs"));
        out.push(c);
    }
    Ok(out)
}

/// Lemmas about automizers and essential subgroups on one context.
pub fn fusion_checks(name: &str, ctx: &FusionContext) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let ctx = ctx.with_mode(Mode::Restricted);
    let ambient = ctx.with_mode(Mode::Ambient);
    let p = ctx.prime();
    for q in ctx.subgroups()?.iter() {
        if !ambient.is_receptive(q) {
            continue;
        }
        let autos = ctx.automizers(q)?;
        out.push(check(
            "Aut_P(Q) strongly closed in Aut_S(Q) for receptive Q",
            &format!("{name}, Q = {q:?}"),
            is_strongly_closed_in(autos.aut.carrier(), &autos.aut_s, &autos.aut_p),
        ));
    }
    for rep in representative_reports(&ctx)? {
        let q = &rep.subgroup;
        let inst = format!("{name}, Q = {q:?}");
        if rep.fully_normalized && rep.centric_wrt_p {
            out.push(check("essential by H_Q iff by strongly embedded Out-subgroup", &inst, rep.verdict_h_q == rep.verdict_embedding));
        }
        if rep.h_q_index == 1 && rep.verdict_h_q {
            out.push(check("H_Q proper for essentials", &inst, false));
        }
        if !rep.verdict_h_q {
            continue;
        }
        let autos = ctx.automizers(q)?;
        let aut = autos.aut.carrier();
        let aut_whole = SubgroupSet::whole(aut);
        out.push(check("essential subgroups are centric", &inst, is_centric_wrt_p(&ctx, q)));
        out.push(check("essential: Aut_E(Q) not p-closed", &inst, !ops::is_p_closed(aut, &aut_whole, p)));
        out.push(check("essential: Inn(Q) = core of Aut_P(Q)", &inst, ops::core_of(aut, &aut_whole, &autos.aut_p) == autos.inn));
        let out_t = autos.out.table();
        let d = autos.out_p();
        let out_whole = SubgroupSet::whole(out_t);
        let t = ops::sylow_containing(out_t, &out_whole, &d, p);
        let h = canonical_embedded_subgroup(out_t, &t, &d)?;
        out.push(check(
            "essential: canonical Out-subgroup is strongly Out_P(Q)-embedded",
            &inst,
            crate::essentials::is_strongly_d_embedded(out_t, &d, &h),
        ));
        out.push(check(
            "essential: Out_P(Q) meets O_p(Out_E(Q)) trivially",
            &inst,
            ops::o_p(out_t, &out_whole, p).intersection(&d).is_trivial(),
        ));
        let embedded = strongly_embedded_subgroups(out_t, &d, ctx.caps())?;
        let containing: Vec<_> = embedded.iter().filter(|k| d.is_subset(k)).collect();
        out.push(check(
            "canonical subgroup lies in every strongly embedded subgroup containing D",
            &inst,
            !containing.is_empty() && containing.iter().all(|k| h.is_subset(k)),
        ));
    }
    // automizer closure in a Sylow subgroup for fully normalized Q
    for q in ctx.subgroups()?.iter().filter(|q| ctx.is_fully_normalized(q)) {
        let autos = ctx.automizers(q)?;
        let aut = autos.aut.carrier();
        let t = ops::sylow_containing(aut, &SubgroupSet::whole(aut), &autos.aut_p, p);
        out.push(check(
            "Aut_P(Q) strongly closed in a Sylow subgroup of Aut_E(Q) for fully normalized Q",
            &format!("{name}, Q = {q:?}"),
            is_strongly_closed_in(aut, &t, &autos.aut_p),
        ));
    }
    Ok(out)
}

/// The essential report of `Q` as a check on the two definitions.
pub fn definition_agreement(ctx: &FusionContext, q: &SubgroupSet) -> Result<bool> {
    let r = essential_report(ctx, q)?;
    Ok(!(r.fully_normalized && r.centric_wrt_p) || r.verdict_h_q == r.verdict_embedding)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::shipped;

    #[test]
    fn small_groups_build() {
        let caps = Caps::default();
        let specs = small_p_groups();
        assert!(specs.len() >= 20);
        for s in &specs {
            let g = catalog::build(s, &caps).unwrap();
            let (p, n) = prime_power(g.order()).unwrap();
            assert!((p == 2 && n <= 6) || (p == 3 && n <= 4), "{s:?}");
        }
    }

    #[test]
    fn counting_checks_pass() {
        let caps = Caps::default();
        assert!(counting_lemma_checks(&caps).unwrap().iter().all(|c| c.passed));
        let t = counting_theorem_checks(&caps).unwrap();
        assert!(t.len() >= 5);
        assert!(t.iter().all(|c| c.passed), "{t:?}");
    }

    #[test]
    fn s4_fusion_checks() {
        let e = shipped().entries.into_iter().find(|e| e.name == "S4 at 2, Sylow D8").unwrap();
        let ctx = e.context(&Caps::default()).unwrap();
        let checks = fusion_checks(&e.name, &ctx).unwrap();
        assert!(checks.iter().all(|c| c.passed), "{checks:?}");
        assert!(checks.iter().any(|c| c.lemma.starts_with("essential: Inn")));
    }
}
