//! Criteria for a strongly closed subgroup to be normal in the system.

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{precondition, Result};
use crate::essentials::main_essential_collection;
use crate::fusion::{FMorphism, FusionContext, Mode};
use crate::group::lattice::all_subgroups;
use crate::group::{ops, SubgroupSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NormalityMethod {
    DefinitionOracle,
    NoEssentialCriterion,
    OmegaSeries,
    CentralSeries,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum NormalityWitness {
    /// A series certifying normality.
    Series(Vec<SubgroupSet>),
    /// An essential subgroup obstructing normality.
    Essential(SubgroupSet),
    /// A morphism with no extension normalizing the subgroup.
    Morphism(FMorphism),
}

#[derive(Clone, Debug, Serialize)]
pub struct NormalityVerdict {
    pub normal: bool,
    pub method: NormalityMethod,
    pub witness: Option<NormalityWitness>,
}

/// Ground truth for `D` normal in the ambient system: every morphism
/// `Q -> S` with `Q <= S` is induced by an element normalizing `D`.
///
/// Such an element conjugates `QD` into `S`, so the morphism extends to
/// `QD` mapping `D` onto itself.
pub fn definition_oracle_for(ctx: &FusionContext, d: &SubgroupSet) -> Result<NormalityVerdict> {
    let g = ctx.g();
    let nd = ops::normalizer(g, &SubgroupSet::whole(g), d);
    let subs = all_subgroups(g, ctx.s(), ctx.caps())?;
    for q in &subs {
        for phi in ctx.hom_set(q, ctx.s()).iter() {
            if !phi.witnesses().iter().any(|&h| nd.contains(h)) {
                return Ok(NormalityVerdict {
                    normal: false,
                    method: NormalityMethod::DefinitionOracle,
                    witness: Some(NormalityWitness::Morphism(phi.clone())),
                });
            }
        }
    }
    Ok(NormalityVerdict { normal: true, method: NormalityMethod::DefinitionOracle, witness: None })
}

/// [`definition_oracle_for`] applied to `P`.
pub fn is_normal_definition_oracle(ctx: &FusionContext) -> Result<NormalityVerdict> {
    definition_oracle_for(ctx, ctx.p_sub())
}

/// `P` is normal exactly when it has no essential subgroup.
pub fn is_normal_no_essential(ctx: &FusionContext) -> Result<NormalityVerdict> {
    let restricted;
    let ctx = if ctx.mode() == Mode::Restricted {
        ctx
    } else {
        restricted = ctx.with_mode(Mode::Restricted);
        &restricted
    };
    let main = main_essential_collection(ctx)?;
    Ok(NormalityVerdict {
        normal: main.is_empty(),
        method: NormalityMethod::NoEssentialCriterion,
        witness: main.first().map(|r| NormalityWitness::Essential(r.subgroup.clone())),
    })
}

/// Searches for `1 = Q_0 <= ... <= Q_n = top` of strongly closed subgroups
/// with `[Q_{i+1}, D] <= Q_i`, trying `first` before a breadth-first search
/// over the strongly closed subgroups of `top`.
fn series_search(
    ctx: &FusionContext,
    d: &SubgroupSet,
    top: &SubgroupSet,
    first: Vec<SubgroupSet>,
) -> Result<Option<Vec<SubgroupSet>>> {
    let g = ctx.g();
    let step_ok = |lo: &SubgroupSet, hi: &SubgroupSet| {
        lo.is_subset(hi) && ops::commutator_subgroup(g, hi, d).is_subset(lo)
    };
    let mut proof = vec![SubgroupSet::trivial(g.order())];
    for q in first {
        if q != *proof.last().unwrap() {
            proof.push(q);
        }
    }
    if proof.last() == Some(top)
        && proof.iter().all(|q| ctx.is_strongly_closed(q))
        && proof.windows(2).all(|w| step_ok(&w[0], &w[1]))
    {
        return Ok(Some(proof));
    }
    let cands: Vec<SubgroupSet> =
        ctx.strongly_closed_subgroups()?.iter().filter(|q| q.is_subset(top)).cloned().collect();
    let start = cands.iter().position(|q| q.is_trivial()).expect("trivial subgroup is strongly closed");
    let mut parent: Vec<Option<usize>> = vec![None; cands.len()];
    let mut seen = vec![false; cands.len()];
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(i) = queue.pop_front() {
        if cands[i] == *top {
            let mut series = vec![cands[i].clone()];
            let mut at = i;
            while let Some(j) = parent[at] {
                series.push(cands[j].clone());
                at = j;
            }
            series.reverse();
            return Ok(Some(series));
        }
        for (j, c) in cands.iter().enumerate() {
            if !seen[j] && c.order() > cands[i].order() && step_ok(&cands[i], c) {
                seen[j] = true;
                parent[j] = Some(i);
                queue.push_back(j);
            }
        }
    }
    Ok(None)
}

fn series_verdict(series: Option<Vec<SubgroupSet>>, method: NormalityMethod) -> NormalityVerdict {
    NormalityVerdict { normal: series.is_some(), method, witness: series.map(NormalityWitness::Series) }
}

fn require_strongly_closed(ctx: &FusionContext, d: &SubgroupSet) -> Result<()> {
    if !ctx.is_strongly_closed(d) {
        return precondition("subgroup is not strongly closed");
    }
    Ok(())
}

/// Normality of a strongly closed `D` through a series of `Omega*(D)`,
/// trying `Z_i(D) meet Omega*(D)` first.
pub fn omega_series_test(ctx: &FusionContext, d: &SubgroupSet) -> Result<NormalityVerdict> {
    require_strongly_closed(ctx, d)?;
    let g = ctx.g();
    let top = ops::omega_star(g, d)?;
    let first = ops::upper_central_series(g, d).iter().map(|z| z.intersection(&top)).collect();
    Ok(series_verdict(series_search(ctx, d, &top, first)?, NormalityMethod::OmegaSeries))
}

/// Normality of a strongly closed `D` through a central series of `D`,
/// trying the upper central series first.
pub fn central_series_test(ctx: &FusionContext, d: &SubgroupSet) -> Result<NormalityVerdict> {
    require_strongly_closed(ctx, d)?;
    let first = ops::upper_central_series(ctx.g(), d);
    Ok(series_verdict(series_search(ctx, d, d, first)?, NormalityMethod::CentralSeries))
}

/// All four verdicts for `P`.
pub fn all_verdicts(ctx: &FusionContext) -> Result<Vec<NormalityVerdict>> {
    let p = ctx.p_sub().clone();
    Ok(vec![
        is_normal_definition_oracle(ctx)?,
        is_normal_no_essential(ctx)?,
        omega_series_test(ctx, &p)?,
        central_series_test(ctx, &p)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupTable;
    use crate::Caps;
    use std::sync::Arc;

    fn s4_ctx(p_labels: Option<&[&str]>) -> FusionContext {
        let g = Arc::new(GroupTable::from_permutations(4, &[vec![1, 2, 3, 0], vec![1, 0, 2, 3]], &Caps::default()).unwrap());
        let sub = |ls: &[&str]| ops::generated(&g, &ls.iter().map(|l| g.find_label(l).unwrap()).collect::<Vec<_>>());
        let s = sub(&["(1,2,3,4)", "(1,3)"]);
        let p = p_labels.map(sub);
        FusionContext::new(g.clone(), 2, s, p, Mode::Restricted, Caps::default()).unwrap()
    }

    #[test]
    fn sylow_of_s4_is_not_normal() {
        let ctx = s4_ctx(None);
        for v in all_verdicts(&ctx).unwrap() {
            assert!(!v.normal, "{:?}", v.method);
        }
        let v = is_normal_no_essential(&ctx).unwrap();
        assert!(matches!(v.witness, Some(NormalityWitness::Essential(ref q)) if q.order() == 4));
    }

    #[test]
    fn four_group_is_normal() {
        let ctx = s4_ctx(Some(&["(1,2)(3,4)", "(1,3)(2,4)"]));
        for v in all_verdicts(&ctx).unwrap() {
            assert!(v.normal, "{:?}", v.method);
        }
        let v = central_series_test(&ctx, ctx.p_sub()).unwrap();
        match v.witness {
            Some(NormalityWitness::Series(s)) => assert_eq!(s.len(), 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn non_closed_subgroup_rejected() {
        let ctx = s4_ctx(None);
        let c4 = ops::generated(ctx.g(), &[ctx.g().find_label("(1,2,3,4)").unwrap()]);
        assert!(omega_series_test(&ctx, &c4).is_err());
        assert!(central_series_test(&ctx, &c4).is_err());
    }
}
