//! Factorization of system isomorphisms through automorphisms of the base
//! and of essential subgroups.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::essentials::is_essential;
use crate::fusion::{FMorphism, FusionContext};
use crate::group::{ActionGroup, SubgroupSet};

#[derive(Clone, Debug, Serialize)]
pub struct ChainStep {
    /// The base or an essential class representative.
    pub subgroup: SubgroupSet,
    /// An automorphism of `subgroup` in the system.
    pub automorphism: FMorphism,
    pub from: SubgroupSet,
    pub to: SubgroupSet,
}

/// `psi = psi_1|Q_0` followed by `psi_2|Q_1` and so on, with `psi_i` an
/// automorphism of `S_i` carrying `Q_{i-1}` onto `Q_i`.
#[derive(Clone, Debug, Serialize)]
pub struct FactorizationChain {
    pub source: SubgroupSet,
    pub target: SubgroupSet,
    pub steps: Vec<ChainStep>,
}

impl FactorizationChain {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

type Steps = Vec<(SubgroupSet, FMorphism)>;

/// `Aut(R)` for a class representative `R`, with the generators of `H_R`
/// and a breadth-first tree over them.
struct RepData {
    aut: ActionGroup,
    gens: Vec<FMorphism>,
    /// `parent[a] = (previous element, generator)` on a shortest word.
    parent: Vec<Option<(usize, usize)>>,
    essential: bool,
}

struct Factorizer<'a> {
    ctx: &'a FusionContext,
    reps: HashMap<Vec<usize>, RepData>,
    generator_steps: HashMap<(Vec<usize>, usize), Steps>,
}

fn violation(msg: impl Into<String>) -> Error {
    Error::TheoremViolation(msg.into())
}

impl<'a> Factorizer<'a> {
    fn index(&self, q: &SubgroupSet) -> usize {
        self.ctx.base().order() / q.order()
    }

    fn run(&mut self, psi: &FMorphism, bound: Option<usize>) -> Result<Steps> {
        let ctx = self.ctx;
        let base = ctx.base();
        let q = psi.domain();
        if let Some(b) = bound {
            if self.index(q) >= b {
                return Err(violation("factorization recursion did not enlarge the domain"));
            }
        }
        if q == base {
            return Ok(vec![(base.clone(), psi.clone())]);
        }
        // one step through the base when psi extends to it
        let g = ctx.g();
        let bg = base.generators(g);
        if let Some(&h) = psi.witnesses().iter().find(|&&h| bg.iter().all(|&x| base.contains(g.conj(x, h)))) {
            return Ok(vec![(base.clone(), ctx.conjugation(base, h))]);
        }
        let r = psi.map().image(g.order());
        let rep = ctx.class_representative(&r);
        if rep == r {
            return self.reduce_to_representative(psi);
        }
        let f = ctx
            .isomorphisms(&r, &rep)
            .first()
            .cloned()
            .ok_or_else(|| violation("class representative is not isomorphic to its class member"))?;
        let mut steps = self.reduce_to_representative(&ctx.compose(psi, &f).expect("composable"))?;
        let back = self.reduce_to_representative(&f)?;
        steps.extend(back.into_iter().rev().map(|(s, m)| (s, ctx.inverse(&m))));
        Ok(steps)
    }

    fn rep_data(&mut self, r: &SubgroupSet) -> Result<&RepData> {
        if !self.reps.contains_key(r.members()) {
            let ctx = self.ctx;
            let autos = ctx.automizers(r)?;
            let aut = autos.aut;
            let gens: Vec<FMorphism> = ctx
                .hom_set(r, r)
                .iter()
                .filter(|b| ctx.n_phi(b).order() > r.order())
                .cloned()
                .collect();
            let gen_idx: Vec<usize> = gens.iter().map(|b| aut.find(b.map()).expect("in Aut_F")).collect();
            let mut parent = vec![None; aut.order()];
            let mut seen = vec![false; aut.order()];
            seen[0] = true;
            let mut queue = VecDeque::from([0usize]);
            while let Some(x) = queue.pop_front() {
                for (j, &b) in gen_idx.iter().enumerate() {
                    let y = aut.carrier().mul(x, b);
                    if !seen[y] {
                        seen[y] = true;
                        parent[y] = Some((x, j));
                        queue.push_back(y);
                    }
                }
            }
            let essential = is_essential(ctx, r)?;
            self.reps.insert(r.members().to_vec(), RepData { aut, gens, parent, essential });
        }
        Ok(&self.reps[r.members()])
    }

    /// Factorization of `psi` whose image is a class representative.
    fn reduce_to_representative(&mut self, psi: &FMorphism) -> Result<Steps> {
        let ctx = self.ctx;
        let q = psi.domain().clone();
        let r = psi.map().image(ctx.g().order());
        let bound = self.index(&q);
        let phi = ctx
            .hom_set(&r, &r)
            .iter()
            .find(|phi| ctx.n_phi(&ctx.compose(psi, phi).expect("composable")).order() > q.order())
            .cloned()
            .ok_or_else(|| violation("representative is not reproductive"))?;
        let varphi = ctx.compose(psi, &phi).expect("composable");
        let n = ctx.n_phi(&varphi);
        let ext = ctx
            .extend_morphism(&varphi, &n)?
            .ok_or_else(|| violation("representative is not receptive"))?;
        let mut steps = self.run(&ext, Some(bound))?;
        if !phi.map().is_identity() {
            steps.extend(self.automorphism(&r, &ctx.inverse(&phi))?);
        }
        Ok(steps)
    }

    /// Factorization of an automorphism of a class representative `R`.
    fn automorphism(&mut self, r: &SubgroupSet, alpha: &FMorphism) -> Result<Steps> {
        let data = self.rep_data(r)?;
        if data.essential {
            return Ok(vec![(r.clone(), alpha.clone())]);
        }
        let mut word = Vec::new();
        let mut at = data.aut.find(alpha.map()).expect("in Aut_F");
        while at != 0 {
            let (prev, j) = data.parent[at].ok_or_else(|| violation("H_R is proper for a non-essential representative"))?;
            word.push(j);
            at = prev;
        }
        word.reverse();
        let mut steps = Vec::new();
        for j in word {
            steps.extend(self.generator(r, j)?);
        }
        Ok(steps)
    }

    fn generator(&mut self, r: &SubgroupSet, j: usize) -> Result<Steps> {
        let key = (r.members().to_vec(), j);
        if let Some(s) = self.generator_steps.get(&key) {
            return Ok(s.clone());
        }
        let ctx = self.ctx;
        let beta = self.reps[r.members()].gens[j].clone();
        let n = ctx.n_phi(&beta);
        let ext = ctx
            .extend_morphism(&beta, &n)?
            .ok_or_else(|| violation("representative is not receptive"))?;
        let steps = self.run(&ext, Some(self.index(r)))?;
        self.generator_steps.insert(key, steps.clone());
        Ok(steps)
    }
}

/// Factors an isomorphism `psi: Q -> R` of the system between subgroups of
/// the base, following the inductive argument on `|P : Q|`.
pub fn factorize(ctx: &FusionContext, psi: &FMorphism) -> Result<FactorizationChain> {
    let g = ctx.g();
    let q = psi.domain();
    let r = psi.map().image(g.order());
    if !q.is_subset(ctx.base()) || !r.is_subset(ctx.base()) {
        return Err(Error::Validation("morphism must be between subgroups of the base".into()));
    }
    if !ctx.isomorphisms(q, &r).contains(psi) {
        return Err(Error::Validation("morphism is not in the fusion system".into()));
    }
    let mut f = Factorizer { ctx, reps: HashMap::new(), generator_steps: HashMap::new() };
    let steps = f.run(psi, None)?;
    let mut from = q.clone();
    let mut out = Vec::with_capacity(steps.len());
    for (s, m) in steps {
        let to = SubgroupSet::from_members(g.order(), from.members().iter().map(|&x| m.apply(x)));
        out.push(ChainStep { subgroup: s, automorphism: m, from, to: to.clone() });
        from = to;
    }
    Ok(FactorizationChain { source: q.clone(), target: r, steps: out })
}

/// Checks every property of a chain for `psi`.
pub fn verify_chain(ctx: &FusionContext, psi: &FMorphism, chain: &FactorizationChain) -> bool {
    let g = ctx.g();
    let base = ctx.base();
    if chain.steps.is_empty() || &chain.source != psi.domain() || chain.target != psi.map().image(g.order()) {
        return false;
    }
    let mut expected_from = chain.source.clone();
    for st in &chain.steps {
        let s = &st.subgroup;
        let allowed = s == base
            || (s.is_subset(base)
                && s.order() < base.order()
                && ctx.class_representative(s) == *s
                && matches!(is_essential(ctx, s), Ok(true)));
        if !allowed || st.from != expected_from || !st.from.is_subset(s) || !st.to.is_subset(s) {
            return false;
        }
        if st.automorphism.domain() != s || !ctx.hom_set(s, s).contains(&st.automorphism) {
            return false;
        }
        if st.from.members().iter().any(|&x| !st.to.contains(st.automorphism.apply(x))) || st.from.order() != st.to.order() {
            return false;
        }
        expected_from = st.to.clone();
    }
    if expected_from != chain.target {
        return false;
    }
    chain.source.members().iter().all(|&x| {
        let y = chain.steps.iter().fold(x, |y, st| st.automorphism.apply(y));
        y == psi.apply(x)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fusion::Mode;
    use crate::group::{ops, GroupTable};
    use crate::Caps;
    use std::sync::Arc;

    fn s4_ctx(p_labels: Option<&[&str]>) -> FusionContext {
        let g = Arc::new(GroupTable::from_permutations(4, &[vec![1, 2, 3, 0], vec![1, 0, 2, 3]], &Caps::default()).unwrap());
        let sub = |ls: &[&str]| ops::generated(&g, &ls.iter().map(|l| g.find_label(l).unwrap()).collect::<Vec<_>>());
        let s = sub(&["(1,2,3,4)", "(1,3)"]);
        let p = p_labels.map(sub);
        FusionContext::new(g.clone(), 2, s, p, Mode::Restricted, Caps::default()).unwrap()
    }

    fn every_isomorphism(ctx: &FusionContext) -> Vec<FMorphism> {
        let subs = ctx.subgroups().unwrap();
        let mut out = Vec::new();
        for q in subs.iter() {
            for r in subs.iter().filter(|r| r.order() == q.order()) {
                out.extend(ctx.isomorphisms(q, r).iter().cloned());
            }
        }
        out
    }

    #[test]
    fn identity_is_one_step() {
        let ctx = s4_ctx(None);
        let q = ops::generated(ctx.g(), &[ctx.g().find_label("(1,3)").unwrap()]);
        let id = ctx.identity(&q);
        let chain = factorize(&ctx, &id).unwrap();
        assert_eq!(chain.len(), 1);
        assert_eq!(&chain.steps[0].subgroup, ctx.base());
        assert!(verify_chain(&ctx, &id, &chain));
    }

    #[test]
    fn center_fusion_passes_through_four_group() {
        let ctx = s4_ctx(None);
        let g = ctx.g();
        let z = ops::generated(g, &[g.find_label("(1,3)(2,4)").unwrap()]);
        let t = ops::generated(g, &[g.find_label("(1,2)(3,4)").unwrap()]);
        let psi = ctx.isomorphisms(&z, &t)[0].clone();
        let chain = factorize(&ctx, &psi).unwrap();
        assert!(verify_chain(&ctx, &psi, &chain));
        assert!(chain.steps.iter().any(|s| s.subgroup.order() == 4));
        // replacing an automorphism by a map outside the system breaks it
        let mut bad = chain.clone();
        let v = bad.steps.iter().position(|s| s.subgroup.order() == 4).unwrap();
        let wrong = ctx.conjugation(&z, g.find_label("(1,2)(3,4)").unwrap());
        bad.steps[v].automorphism = wrong;
        assert!(!verify_chain(&ctx, &psi, &bad));
    }

    #[test]
    fn all_isomorphisms_factor() {
        for p in [None, Some(&["(1,2)(3,4)", "(1,3)(2,4)"][..])] {
            let ctx = s4_ctx(p);
            for psi in every_isomorphism(&ctx) {
                let chain = factorize(&ctx, &psi).unwrap();
                assert!(verify_chain(&ctx, &psi, &chain), "{psi:?}");
            }
        }
    }

    #[test]
    fn foreign_map_rejected() {
        let ctx = s4_ctx(Some(&["(1,2)(3,4)", "(1,3)(2,4)"]));
        let g = ctx.g();
        let q = ops::generated(g, &[g.find_label("(1,2)(3,4)").unwrap()]);
        // conjugation by (1,2) does not move q; a transposition outside P
        let outside = ctx.conjugation(&ops::generated(g, &[g.find_label("(1,2)").unwrap()]), 0);
        assert!(factorize(&ctx, &outside).is_err());
        assert!(factorize(&ctx, &ctx.identity(&q)).is_ok());
    }
}
