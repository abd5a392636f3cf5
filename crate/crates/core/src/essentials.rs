//! Strongly D-embedded subgroups and essential subgroups relative to a
//! strongly closed subgroup.

use serde::Serialize;

use crate::caps::Caps;
use crate::error::{precondition, Error, Result};
use crate::fusion::{Automizers, FusionContext};
use crate::group::lattice::all_subgroups;
use crate::group::{ops, GroupTable, SubgroupSet};

/// Whether `d` is strongly closed in `s` with respect to `g`.
pub fn is_strongly_closed_in(g: &GroupTable, s: &SubgroupSet, d: &SubgroupSet) -> bool {
    d.is_subset(s)
        && d.members()
            .iter()
            .all(|&x| (0..g.order()).map(|y| g.conj(x, y)).all(|z| !s.contains(z) || d.contains(z)))
}

/// Elements of `g` conjugate into `d`.
fn fused_into(g: &GroupTable, d: &SubgroupSet) -> SubgroupSet {
    let mut members = Vec::new();
    for &x in d.members() {
        for y in 0..g.order() {
            members.push(g.conj(x, y));
        }
    }
    SubgroupSet::from_members(g.order(), members)
}

/// `H = <x in G : D meet D^x > 1>`.
///
/// When proper, `H` is strongly D-embedded and lies in every strongly
/// D-embedded subgroup containing `D`.
pub fn canonical_embedded_subgroup(g: &GroupTable, s: &SubgroupSet, d: &SubgroupSet) -> Result<SubgroupSet> {
    if d.is_trivial() {
        return precondition("D must be nontrivial");
    }
    if !is_strongly_closed_in(g, s, d) {
        return precondition("D is not strongly closed in S");
    }
    let seed: Vec<usize> = (0..g.order())
        .filter(|&x| d.members().iter().any(|&y| y != 0 && d.contains(g.conj(y, x))))
        .collect();
    Ok(ops::generated(g, &seed))
}

/// Whether `h` is strongly D-embedded in `g`: proper, containing a
/// conjugate of `D`, and for `x` outside `h` no nontrivial element of
/// `h meet h^x` is conjugate into `D`.
///
/// A subgroup of `h meet h^x` conjugate to a nontrivial subgroup of `D` has
/// a nontrivial element conjugate into `D`, and such an element generates a
/// cyclic subgroup conjugate into `D`, so the element test is exact.
pub fn is_strongly_d_embedded(g: &GroupTable, d: &SubgroupSet, h: &SubgroupSet) -> bool {
    if h.order() >= g.order() {
        return false;
    }
    if !(0..g.order()).any(|x| d.members().iter().all(|&y| h.contains(g.conj(y, x)))) {
        return false;
    }
    let fused = fused_into(g, d);
    (0..g.order()).filter(|&x| !h.contains(x)).all(|x| {
        h.members()
            .iter()
            .all(|&u| u == 0 || !fused.contains(u) || !h.contains(g.conj(u, g.inv(x))))
    })
}

/// Every strongly D-embedded subgroup, by lattice search.
pub fn strongly_embedded_subgroups(g: &GroupTable, d: &SubgroupSet, caps: &Caps) -> Result<Vec<SubgroupSet>> {
    Ok(all_subgroups(g, &SubgroupSet::whole(g), caps)?
        .into_iter()
        .filter(|h| is_strongly_d_embedded(g, d, h))
        .collect())
}

/// `C_P(R) <= R` for every conjugate `R` of `Q` in the base.
pub fn is_centric_wrt_p(ctx: &FusionContext, q: &SubgroupSet) -> bool {
    ctx.f_conjugacy_class(q).iter().all(|r| ctx.centralizer(r).is_subset(r))
}

/// `H_Q = <phi in Aut_F(Q) : N_phi(Q) > Q>` as a subgroup of the carrier of
/// `autos.aut`.
pub fn h_q(ctx: &FusionContext, q: &SubgroupSet, autos: &Automizers) -> Result<SubgroupSet> {
    if q.order() >= ctx.base().order() {
        return precondition("H_Q is defined for proper subgroups only");
    }
    let seed: Vec<usize> = ctx
        .hom_set(q, q)
        .iter()
        .filter(|phi| ctx.n_phi(phi).order() > q.order())
        .map(|phi| autos.aut.find(phi.map()).expect("hom_set member is in Aut_F"))
        .collect();
    Ok(ops::generated(autos.aut.carrier(), &seed))
}

#[derive(Clone, Debug, Serialize)]
pub struct EssentialReport {
    pub subgroup: SubgroupSet,
    pub fully_normalized: bool,
    pub centric_wrt_p: bool,
    pub reproductive: bool,
    /// `|Aut_F(Q) : H_Q|`.
    pub h_q_index: usize,
    /// The canonical strongly `Out_P(Q)`-embedded subgroup of `Out_F(Q)`
    /// when it is proper.
    pub embedded_witness: Option<SubgroupSet>,
    pub verdict_h_q: bool,
    pub verdict_embedding: bool,
}

/// Out-group test: existence of a strongly `Out_P(Q)`-embedded subgroup of
/// `Out_F(Q)`, decided by properness of the canonical subgroup.
fn embedded_in_out(autos: &Automizers) -> Result<Option<SubgroupSet>> {
    let out = autos.out.table();
    let d = autos.out_p();
    if d.is_trivial() {
        return Ok(None);
    }
    let s = ops::sylow_containing(out, &SubgroupSet::whole(out), &d, prime_of_subgroup(&d));
    let h = canonical_embedded_subgroup(out, &s, &d).map_err(|e| match e {
        Error::Precondition(m) => Error::TheoremViolation(format!("Out_P(Q) is not strongly closed: {m}")),
        other => other,
    })?;
    Ok((h.order() < out.order()).then_some(h))
}

fn prime_of_subgroup(d: &SubgroupSet) -> usize {
    ops::prime_of(d).expect("nontrivial p-subgroup")
}

/// Both essentiality verdicts for a proper subgroup of the base.
pub fn essential_report(ctx: &FusionContext, q: &SubgroupSet) -> Result<EssentialReport> {
    if q.order() >= ctx.base().order() {
        return precondition("essential subgroups are proper");
    }
    let fully_normalized = ctx.is_fully_normalized(q);
    let centric = is_centric_wrt_p(ctx, q);
    let reproductive = ctx.is_reproductive(q);
    let autos = ctx.automizers(q)?;
    let hq = h_q(ctx, q, &autos)?;
    let h_q_index = autos.aut.order() / hq.order();
    let verdict_h_q = reproductive && h_q_index > 1;
    let embedded_witness = if fully_normalized && centric { embedded_in_out(&autos)? } else { None };
    let verdict_embedding = fully_normalized && centric && embedded_witness.is_some();
    Ok(EssentialReport {
        subgroup: q.clone(),
        fully_normalized,
        centric_wrt_p: centric,
        reproductive,
        h_q_index,
        embedded_witness,
        verdict_h_q,
        verdict_embedding,
    })
}

pub fn is_essential(ctx: &FusionContext, q: &SubgroupSet) -> Result<bool> {
    Ok(essential_report(ctx, q)?.verdict_h_q)
}

pub fn is_essential_by_embedding(ctx: &FusionContext, q: &SubgroupSet) -> Result<bool> {
    Ok(essential_report(ctx, q)?.verdict_embedding)
}

/// One representative per class of proper subgroups of the base, chosen by
/// the context's representative rule, in lattice order.
pub fn class_representatives(ctx: &FusionContext) -> Result<Vec<SubgroupSet>> {
    let mut seen = std::collections::HashSet::new();
    let mut reps = Vec::new();
    for q in ctx.subgroups()?.iter() {
        if q.order() >= ctx.base().order() || seen.contains(q.members()) {
            continue;
        }
        for r in ctx.f_conjugacy_class(q).iter() {
            seen.insert(r.members().to_vec());
        }
        reps.push(ctx.class_representative(q));
    }
    reps.sort();
    Ok(reps)
}

/// Reports for every class representative.
pub fn representative_reports(ctx: &FusionContext) -> Result<Vec<EssentialReport>> {
    class_representatives(ctx)?.iter().map(|q| essential_report(ctx, q)).collect()
}

/// The main essential collection: representatives that are essential.
pub fn main_essential_collection(ctx: &FusionContext) -> Result<Vec<EssentialReport>> {
    Ok(representative_reports(ctx)?.into_iter().filter(|r| r.verdict_h_q).collect())
}
