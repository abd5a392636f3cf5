//! Fusion systems realized by conjugation in a finite group.
//!
//! A [`FusionContext`] fixes `G`, a prime `p`, a Sylow p-subgroup `S` and a
//! strongly closed `P <= S`. In ambient mode the system is `F_S(G)` on `S`;
//! in restricted mode it is the restriction of that system to subgroups of
//! `P`, and normalizers, centralizers and conjugacy classes are taken in `P`.
//! Maps act on the right: `x -> x^g = g^-1 x g`.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::{Arc, OnceLock, RwLock};

use crate::caps::Caps;
use crate::error::{precondition, Error, Result};
use crate::group::arith::{is_power_of, is_prime, p_part};
use crate::group::lattice::all_subgroups;
use crate::group::{ops, ActionGroup, GroupMorphism, GroupTable, QuotientGroup, SubgroupSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// The full system on `S`.
    Ambient,
    /// The system restricted to subgroups of `P`.
    Restricted,
}

/// A morphism of the fusion system with every element of `G` inducing it.
///
/// Identity is the element map; witnesses are auxiliary.
#[derive(Clone, Debug)]
pub struct FMorphism {
    map: GroupMorphism,
    witnesses: Vec<usize>,
}

impl PartialEq for FMorphism {
    fn eq(&self, other: &Self) -> bool {
        self.map == other.map
    }
}

impl Eq for FMorphism {}

impl FMorphism {
    pub fn map(&self) -> &GroupMorphism {
        &self.map
    }

    pub fn witnesses(&self) -> &[usize] {
        &self.witnesses
    }

    pub fn domain(&self) -> &SubgroupSet {
        self.map.domain()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map.apply(x)
    }
}

impl serde::Serialize for FMorphism {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("FMorphism", 3)?;
        st.serialize_field("domain", self.domain().members())?;
        st.serialize_field("images", self.map.images())?;
        st.serialize_field("witness", &self.witnesses[0])?;
        st.end()
    }
}

type Key = (Vec<usize>, Vec<usize>);

struct Shared {
    g: Arc<GroupTable>,
    hom_cache: RwLock<HashMap<Key, Arc<Vec<FMorphism>>>>,
    centralizers: RwLock<HashMap<Vec<usize>, Arc<SubgroupSet>>>,
    /// For each element of `S` (by position), its `G`-conjugates inside `S`.
    fusion_in_s: OnceLock<Vec<Vec<usize>>>,
    strongly_closed: OnceLock<Result<Arc<Vec<SubgroupSet>>>>,
}

/// The triple `(G, p, S)` with a strongly closed `P <= S` and a mode.
pub struct FusionContext {
    shared: Arc<Shared>,
    p: usize,
    s: SubgroupSet,
    pp: SubgroupSet,
    mode: Mode,
    caps: Caps,
    classes: RwLock<HashMap<Vec<usize>, Arc<Vec<SubgroupSet>>>>,
    lattice: OnceLock<Result<Arc<Vec<SubgroupSet>>>>,
}

impl std::fmt::Debug for FusionContext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FusionContext")
            .field("order", &self.g().order())
            .field("p", &self.p)
            .field("s", &self.s.order())
            .field("p_sub", &self.pp.order())
            .field("mode", &self.mode)
            .finish()
    }
}

/// Everything about `Aut_F(Q)` needed downstream.
pub struct Automizers {
    /// `Aut_F(Q)` acting on `Q`.
    pub aut: ActionGroup,
    /// Conjugations by `N_S(Q)`, as a subgroup of the carrier.
    pub aut_s: SubgroupSet,
    /// Conjugations by `N_P(Q)`.
    pub aut_p: SubgroupSet,
    /// Conjugations by `Q`.
    pub inn: SubgroupSet,
    /// `Aut_F(Q) / Inn(Q)`.
    pub out: QuotientGroup,
}

impl Automizers {
    pub fn out_p(&self) -> SubgroupSet {
        self.out.project_subgroup(&self.aut_p)
    }

    pub fn out_s(&self) -> SubgroupSet {
        self.out.project_subgroup(&self.aut_s)
    }
}

impl FusionContext {
    /// Builds a context, checking that `S` is a Sylow p-subgroup and that
    /// `P` (default `S`) is a subgroup of `S` strongly closed with respect
    /// to `G`.
    pub fn new(
        g: Arc<GroupTable>,
        p: usize,
        s: SubgroupSet,
        p_sub: Option<SubgroupSet>,
        mode: Mode,
        caps: Caps,
    ) -> Result<FusionContext> {
        if !is_prime(p as u64) {
            return Err(Error::Validation(format!("{p} is not prime")));
        }
        if !s.is_subgroup_of(&g) {
            return Err(Error::Validation("S is not a subgroup".into()));
        }
        if s.order() != p_part(g.order(), p) || !is_power_of(s.order(), p) {
            return Err(Error::Validation(format!(
                "S has order {} but the Sylow {p}-subgroups have order {}",
                s.order(),
                p_part(g.order(), p)
            )));
        }
        let pp = p_sub.unwrap_or_else(|| s.clone());
        if !pp.is_subgroup_of(&g) || !pp.is_subset(&s) {
            return Err(Error::Validation("P is not a subgroup of S".into()));
        }
        let shared = Arc::new(Shared {
            g,
            hom_cache: RwLock::new(HashMap::new()),
            centralizers: RwLock::new(HashMap::new()),
            fusion_in_s: OnceLock::new(),
            strongly_closed: OnceLock::new(),
        });
        let ctx = FusionContext::from_shared(shared, p, s, pp, mode, caps);
        if !ctx.is_strongly_closed(&ctx.pp) {
            return Err(Error::Validation("P is not strongly closed in S with respect to G".into()));
        }
        Ok(ctx)
    }

    /// Ambient context with the greedy Sylow subgroup.
    pub fn sylow(g: Arc<GroupTable>, p: usize, caps: Caps) -> Result<FusionContext> {
        let s = ops::sylow_subgroup(&g, &SubgroupSet::whole(&g), p);
        FusionContext::new(g, p, s, None, Mode::Ambient, caps)
    }

    fn from_shared(shared: Arc<Shared>, p: usize, s: SubgroupSet, pp: SubgroupSet, mode: Mode, caps: Caps) -> FusionContext {
        FusionContext {
            shared,
            p,
            s,
            pp,
            mode,
            caps,
            classes: RwLock::new(HashMap::new()),
            lattice: OnceLock::new(),
        }
    }

    /// The same system viewed in another mode; the morphism caches are
    /// shared.
    pub fn with_mode(&self, mode: Mode) -> FusionContext {
        FusionContext::from_shared(self.shared.clone(), self.p, self.s.clone(), self.pp.clone(), mode, self.caps)
    }

    pub fn g(&self) -> &GroupTable {
        &self.shared.g
    }

    pub fn group_arc(&self) -> Arc<GroupTable> {
        self.shared.g.clone()
    }

    pub fn prime(&self) -> usize {
        self.p
    }

    pub fn s(&self) -> &SubgroupSet {
        &self.s
    }

    /// The strongly closed subgroup `P`.
    pub fn p_sub(&self) -> &SubgroupSet {
        &self.pp
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn caps(&self) -> &Caps {
        &self.caps
    }

    /// `S` in ambient mode, `P` in restricted mode.
    pub fn base(&self) -> &SubgroupSet {
        match self.mode {
            Mode::Ambient => &self.s,
            Mode::Restricted => &self.pp,
        }
    }

    fn n(&self) -> usize {
        self.g().order()
    }

    /// `C_G(Q)`, cached.
    pub fn centralizer_in_g(&self, q: &SubgroupSet) -> Arc<SubgroupSet> {
        if let Some(c) = self.shared.centralizers.read().unwrap().get(q.members()) {
            return c.clone();
        }
        let g = self.g();
        let c = Arc::new(ops::centralizer_of(g, &SubgroupSet::whole(g), q));
        self.shared.centralizers.write().unwrap().insert(q.members().to_vec(), c.clone());
        c
    }

    /// `{c g0 : c in C_G(Q)}`, the full witness set of `c_{g0}` on `Q`.
    fn witnesses_from(&self, q: &SubgroupSet, g0: usize) -> Vec<usize> {
        let c = self.centralizer_in_g(q);
        let mut w: Vec<usize> = c.members().iter().map(|&x| self.g().mul(x, g0)).collect();
        w.sort_unstable();
        w
    }

    /// The morphism `c_x` on `Q`, with all its witnesses.
    pub fn conjugation(&self, q: &SubgroupSet, x: usize) -> FMorphism {
        FMorphism { map: GroupMorphism::conjugation(self.g(), q, x), witnesses: self.witnesses_from(q, x) }
    }

    pub fn identity(&self, q: &SubgroupSet) -> FMorphism {
        self.conjugation(q, 0)
    }

    /// Every conjugation-induced injective map `Q -> R`, each with its
    /// witnesses, sorted by image vector.
    pub fn hom_set(&self, q: &SubgroupSet, r: &SubgroupSet) -> Arc<Vec<FMorphism>> {
        let key = (q.members().to_vec(), r.members().to_vec());
        if let Some(v) = self.shared.hom_cache.read().unwrap().get(&key) {
            return v.clone();
        }
        let g = self.g();
        let mut found: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        if q.order() <= r.order() {
            let gens = q.generators(g);
            for x in 0..g.order() {
                if !gens.iter().all(|&s| r.contains(g.conj(s, x))) {
                    continue;
                }
                let images: Vec<usize> = q.members().iter().map(|&s| g.conj(s, x)).collect();
                found.entry(images).or_default().push(x);
            }
        }
        let list: Vec<FMorphism> = found
            .into_iter()
            .map(|(images, witnesses)| FMorphism { map: GroupMorphism::new(q.clone(), images), witnesses })
            .collect();
        let list = Arc::new(list);
        self.shared.hom_cache.write().unwrap().insert(key, list.clone());
        list
    }

    /// Isomorphisms `Q -> R` (requires `|Q| = |R|`).
    pub fn isomorphisms(&self, q: &SubgroupSet, r: &SubgroupSet) -> Arc<Vec<FMorphism>> {
        if q.order() != r.order() {
            return Arc::new(Vec::new());
        }
        self.hom_set(q, r)
    }

    /// `phi` followed by `psi`.
    pub fn compose(&self, phi: &FMorphism, psi: &FMorphism) -> Option<FMorphism> {
        let map = phi.map.then(&psi.map)?;
        let g0 = self.g().mul(phi.witnesses[0], psi.witnesses[0]);
        Some(FMorphism { witnesses: self.witnesses_from(phi.domain(), g0), map })
    }

    pub fn inverse(&self, phi: &FMorphism) -> FMorphism {
        let map = phi.map.inverse(self.n());
        let g0 = self.g().inv(phi.witnesses[0]);
        FMorphism { witnesses: self.witnesses_from(map.domain(), g0), map }
    }

    pub fn restrict(&self, phi: &FMorphism, sub: &SubgroupSet) -> Option<FMorphism> {
        let map = phi.map.restrict(sub)?;
        Some(FMorphism { witnesses: self.witnesses_from(sub, phi.witnesses[0]), map })
    }

    /// `Q^F`: all `Q^g` lying in the base, sorted.
    pub fn f_conjugacy_class(&self, q: &SubgroupSet) -> Arc<Vec<SubgroupSet>> {
        if let Some(v) = self.classes.read().unwrap().get(q.members()) {
            return v.clone();
        }
        let g = self.g();
        let base = self.base();
        let gens = q.generators(g);
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for x in 0..g.order() {
            if !gens.iter().all(|&s| base.contains(g.conj(s, x))) {
                continue;
            }
            let c = ops::conjugate(g, q, x);
            if seen.insert(c.members().to_vec()) {
                out.push(c);
            }
        }
        out.sort();
        let out = Arc::new(out);
        self.classes.write().unwrap().insert(q.members().to_vec(), out.clone());
        out
    }

    fn fusion_in_s(&self) -> &Vec<Vec<usize>> {
        self.shared.fusion_in_s.get_or_init(|| {
            let g = self.g();
            self.s
                .members()
                .iter()
                .map(|&x| {
                    let mut v: Vec<usize> = (0..g.order()).map(|y| g.conj(x, y)).filter(|&z| self.s.contains(z)).collect();
                    v.sort_unstable();
                    v.dedup();
                    v
                })
                .collect()
        })
    }

    /// Whether `x^g` in `S` implies `x^g` in `D` for all `x` in `D`.
    pub fn is_strongly_closed(&self, d: &SubgroupSet) -> bool {
        if !d.is_subset(&self.s) {
            return false;
        }
        let fusion = self.fusion_in_s();
        d.members()
            .iter()
            .all(|&x| fusion[self.s.position(x).unwrap()].iter().all(|&z| d.contains(z)))
    }

    /// All subgroups of the base, sorted.
    pub fn subgroups(&self) -> Result<Arc<Vec<SubgroupSet>>> {
        self.lattice
            .get_or_init(|| all_subgroups(self.g(), self.base(), &self.caps).map(Arc::new))
            .clone()
    }

    /// Subgroups of `S` strongly closed with respect to `G`.
    pub fn strongly_closed_subgroups(&self) -> Result<Arc<Vec<SubgroupSet>>> {
        self.shared
            .strongly_closed
            .get_or_init(|| {
                let all = all_subgroups(self.g(), &self.s, &self.caps)?;
                Ok(Arc::new(all.into_iter().filter(|d| self.is_strongly_closed(d)).collect()))
            })
            .clone()
    }

    /// `N_B(Q)` for the base `B`.
    pub fn normalizer(&self, q: &SubgroupSet) -> SubgroupSet {
        ops::normalizer(self.g(), self.base(), q)
    }

    /// `C_B(Q)` for the base `B`.
    pub fn centralizer(&self, q: &SubgroupSet) -> SubgroupSet {
        ops::centralizer_of(self.g(), self.base(), q)
    }

    /// `N_phi(Q)`: elements `x` of `N_B(Q)` such that `phi^-1 c_x phi` is
    /// induced on `Q phi` by some element of `N_B(Q phi)`.
    pub fn n_phi(&self, phi: &FMorphism) -> SubgroupSet {
        let g = self.g();
        let q = phi.domain();
        let r = phi.map.image(self.n());
        let rg = r.generators(g).to_vec();
        let inv = phi.map.inverse(self.n());
        let induced: HashSet<Vec<usize>> = self
            .normalizer(&r)
            .members()
            .iter()
            .map(|&y| rg.iter().map(|&z| g.conj(z, y)).collect())
            .collect();
        let nq = self.normalizer(q);
        SubgroupSet::from_members(
            self.n(),
            nq.members().iter().copied().filter(|&x| {
                let key: Vec<usize> = rg.iter().map(|&z| phi.apply(g.conj(inv.apply(z), x))).collect();
                induced.contains(&key)
            }),
        )
    }

    /// An extension of `phi` to `N` (with `dom(phi) <= N <= N_phi`) mapping
    /// into the base, if one exists: the smallest witness `h` of `phi` with
    /// `N^h` in the base.
    pub fn extend_morphism(&self, phi: &FMorphism, n: &SubgroupSet) -> Result<Option<FMorphism>> {
        if !phi.domain().is_subset(n) || !n.is_subset(&self.n_phi(phi)) {
            return precondition("extension target must lie between the domain and N_phi");
        }
        if n == phi.domain() {
            return Ok(Some(phi.clone()));
        }
        let g = self.g();
        let base = self.base();
        let gens = n.generators(g);
        for &h in &phi.witnesses {
            if gens.iter().all(|&s| base.contains(g.conj(s, h))) {
                return Ok(Some(self.conjugation(n, h)));
            }
        }
        Ok(None)
    }

    /// Key for ordering class members: larger `N_S`, then larger `N_P`
    /// (restricted mode), then smaller member list.
    fn rep_key(&self, q: &SubgroupSet) -> (std::cmp::Reverse<usize>, std::cmp::Reverse<usize>, Vec<usize>) {
        let g = self.g();
        let ns = ops::normalizer(g, &self.s, q).order();
        let nb = self.normalizer(q).order();
        (std::cmp::Reverse(ns), std::cmp::Reverse(nb), q.members().to_vec())
    }

    /// The chosen member of `Q`'s class. It maximizes `|N_S|`, so it is
    /// fully normalized in both modes.
    pub fn class_representative(&self, q: &SubgroupSet) -> SubgroupSet {
        let class = self.f_conjugacy_class(q);
        class.iter().min_by_key(|r| self.rep_key(r)).expect("class contains Q").clone()
    }

    pub fn is_fully_normalized(&self, q: &SubgroupSet) -> bool {
        let n = self.normalizer(q).order();
        self.f_conjugacy_class(q).iter().all(|r| self.normalizer(r).order() <= n)
    }

    pub fn is_fully_centralized(&self, q: &SubgroupSet) -> bool {
        let c = self.centralizer(q).order();
        self.f_conjugacy_class(q).iter().all(|r| self.centralizer(r).order() <= c)
    }

    /// Every isomorphism onto `Q` extends over its `N_phi`.
    pub fn is_receptive(&self, q: &SubgroupSet) -> bool {
        self.f_conjugacy_class(q).iter().all(|r| {
            self.isomorphisms(r, q).iter().all(|phi| {
                let n = self.n_phi(phi);
                matches!(self.extend_morphism(phi, &n), Ok(Some(_)))
            })
        })
    }

    /// Receptive, proper, and every class member maps onto `Q` by some
    /// `psi` with `N_psi` strictly larger than its domain.
    pub fn is_reproductive(&self, q: &SubgroupSet) -> bool {
        if q.order() >= self.base().order() || !self.is_receptive(q) {
            return false;
        }
        self.f_conjugacy_class(q).iter().all(|r| {
            self.isomorphisms(r, q)
                .iter()
                .any(|psi| self.n_phi(psi).order() > r.order())
        })
    }

    /// `Aut_F(Q)` with its distinguished subgroups and `Out_F(Q)`.
    pub fn automizers(&self, q: &SubgroupSet) -> Result<Automizers> {
        let g = self.g();
        let maps: Vec<GroupMorphism> = self.hom_set(q, q).iter().map(|m| m.map.clone()).collect();
        let aut = ActionGroup::from_maps(self.n(), q, &maps, &self.caps)?;
        let conj_sub = |h: &SubgroupSet| {
            let mut seen = vec![false; aut.order()];
            let mut members = Vec::new();
            for &x in h.members() {
                let a = aut.find(&GroupMorphism::conjugation(g, q, x)).expect("conjugation is in Aut_F");
                if !seen[a] {
                    seen[a] = true;
                    members.push(a);
                }
            }
            SubgroupSet::from_members(aut.order(), members)
        };
        let aut_s = conj_sub(&ops::normalizer(g, &self.s, q));
        let aut_p = conj_sub(&ops::normalizer(g, &self.pp, q));
        let inn = conj_sub(q);
        let out = QuotientGroup::new(aut.carrier(), &inn)?;
        Ok(Automizers { aut, aut_s, aut_p, inn, out })
    }

    /// An automorphism of the base carrying `Q` onto `R`, both normal in the
    /// base and conjugate.
    pub fn normal_conjugate_transport(&self, q: &SubgroupSet, r: &SubgroupSet) -> Result<FMorphism> {
        let g = self.g();
        let base = self.base();
        if !ops::is_normal_in(g, q, base) || !ops::is_normal_in(g, r, base) {
            return precondition("both subgroups must be normal in the base");
        }
        if !self.f_conjugacy_class(q).contains(r) {
            return precondition("subgroups are not conjugate in the system");
        }
        self.hom_set(base, base)
            .iter()
            .find(|m| q.members().iter().all(|&x| r.contains(m.apply(x))))
            .cloned()
            .ok_or_else(|| {
                Error::TheoremViolation("no automorphism of the base carries one normal conjugate to the other".into())
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s4_ctx(pp: Option<&[&str]>) -> FusionContext {
        let caps = Caps::default();
        let g = Arc::new(GroupTable::from_permutations(4, &[vec![1, 2, 3, 0], vec![1, 0, 2, 3]], &caps).unwrap());
        let gen = |ls: &[&str]| ops::generated(&g, &ls.iter().map(|l| g.find_label(l).unwrap()).collect::<Vec<_>>());
        let s = gen(&["(1,2,3,4)", "(1,3)"]);
        let pp = pp.map(gen);
        let mode = if pp.is_some() { Mode::Restricted } else { Mode::Ambient };
        FusionContext::new(g.clone(), 2, s, pp, mode, caps).unwrap()
    }

    fn sub(ctx: &FusionContext, labels: &[&str]) -> SubgroupSet {
        let g = ctx.g();
        ops::generated(g, &labels.iter().map(|l| g.find_label(l).unwrap()).collect::<Vec<_>>())
    }

    #[test]
    fn center_fuses_to_other_involution() {
        let ctx = s4_ctx(None);
        assert_eq!(ctx.s().order(), 8);
        let q = sub(&ctx, &["(1,3)(2,4)"]);
        let r = sub(&ctx, &["(1,2)(3,4)"]);
        let homs = ctx.hom_set(&q, &r);
        assert_eq!(homs.len(), 1);
        let w = ctx.g().find_label("(2,3,4)").unwrap();
        assert!(homs[0].witnesses().contains(&w));
        let t = sub(&ctx, &["(1,3)"]);
        assert!(ctx.hom_set(&t, &r).is_empty());
        let triv = SubgroupSet::trivial(24);
        assert_eq!(ctx.hom_set(&triv, &triv).len(), 1);
    }

    #[test]
    fn classes_and_closure() {
        let ctx = s4_ctx(None);
        let v = sub(&ctx, &["(1,2)(3,4)", "(1,3)(2,4)"]);
        assert_eq!(ctx.f_conjugacy_class(&v).len(), 1);
        assert!(ctx.is_strongly_closed(&v));
        let z = sub(&ctx, &["(1,3)(2,4)"]);
        assert_eq!(ctx.f_conjugacy_class(&z).len(), 3);
        assert!(!ctx.is_strongly_closed(&z));
        assert!(ctx.is_strongly_closed(ctx.s()));
        assert_eq!(*ctx.f_conjugacy_class(ctx.s()), vec![ctx.s().clone()]);
        assert!(ctx.is_fully_normalized(&z));
        assert!(ctx.is_fully_normalized(ctx.s()));
    }

    #[test]
    fn n_phi_and_extension() {
        let ctx = s4_ctx(None);
        let q = sub(&ctx, &["(1,3)(2,4)"]);
        let r = sub(&ctx, &["(1,2)(3,4)"]);
        let phi = ctx.hom_set(&q, &r)[0].clone();
        let v = sub(&ctx, &["(1,2)(3,4)", "(1,3)(2,4)"]);
        let n = ctx.n_phi(&phi);
        assert!(v.is_subset(&n));
        let id = ctx.identity(&q);
        assert_eq!(ctx.n_phi(&id), ctx.normalizer(&q));
        // the target is not fully normalized, so N_phi = S does not extend
        assert_eq!(n, *ctx.s());
        assert!(ctx.extend_morphism(&phi, &n).unwrap().is_none());
        let ext = ctx.extend_morphism(&phi, &v).unwrap().unwrap();
        assert_eq!(ext.map().restrict(&q).unwrap(), *phi.map());
        let back = ctx.inverse(&phi);
        assert_eq!(ctx.n_phi(&back), ctx.normalizer(&r));
        assert!(ctx.extend_morphism(&back, &ctx.normalizer(&r)).unwrap().is_some());
    }

    #[test]
    fn automizers_of_normal_four_group() {
        let ctx = s4_ctx(None);
        let v = sub(&ctx, &["(1,2)(3,4)", "(1,3)(2,4)"]);
        let a = ctx.automizers(&v).unwrap();
        assert_eq!(a.aut.order(), 6);
        assert_eq!(a.aut_p.order(), 2);
        assert!(a.inn.is_trivial());
        assert_eq!(a.out.table().order(), 6);
    }

    #[test]
    fn restricted_transport() {
        let ctx = s4_ctx(Some(&["(1,2)(3,4)", "(1,3)(2,4)"]));
        assert_eq!(ctx.base().order(), 4);
        let a = sub(&ctx, &["(1,2)(3,4)"]);
        let b = sub(&ctx, &["(1,3)(2,4)"]);
        let t = ctx.normal_conjugate_transport(&a, &b).unwrap();
        assert!(a.members().iter().all(|&x| b.contains(t.apply(x))));
        let c = sub(&ctx, &["(1,3)"]);
        assert!(ctx.normal_conjugate_transport(&a, &c).is_err());
    }

    #[test]
    fn rejects_non_closed_p() {
        let caps = Caps::default();
        let g = Arc::new(GroupTable::from_permutations(4, &[vec![1, 2, 3, 0], vec![1, 0, 2, 3]], &caps).unwrap());
        let s = ops::sylow_subgroup(&g, &SubgroupSet::whole(&g), 2);
        let z = ops::center(&g, &s);
        assert!(FusionContext::new(g.clone(), 2, s.clone(), Some(z), Mode::Restricted, caps).is_err());
        assert!(FusionContext::new(g, 3, s, None, Mode::Ambient, caps).is_err());
    }
}
