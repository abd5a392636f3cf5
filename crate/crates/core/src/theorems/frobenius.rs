//! p-nilpotency decided locally at subgroups of a strongly closed subgroup.

use serde::Serialize;

use crate::caps::Caps;
use crate::error::{precondition, Result};
use crate::essentials::is_strongly_closed_in;
use crate::group::arith::is_prime;
use crate::group::lattice::all_subgroups;
use crate::group::{ops, GroupTable, SubgroupSet};

#[derive(Clone, Debug, Serialize)]
pub struct FrobeniusReport {
    pub p_nilpotent: bool,
    /// `N_G(U)` is p-nilpotent for every `U <= D` with `C_D(U) <= U`.
    pub all_local_p_nilpotent: bool,
    /// The first `U` whose normalizer is not p-nilpotent.
    pub witness: Option<SubgroupSet>,
}

impl FrobeniusReport {
    pub fn agrees(&self) -> bool {
        self.p_nilpotent == self.all_local_p_nilpotent
    }
}

/// Both sides of the local p-nilpotency criterion for `D` strongly closed
/// in a Sylow p-subgroup containing it.
pub fn frobenius_test(g: &GroupTable, p: usize, d: &SubgroupSet, caps: &Caps) -> Result<FrobeniusReport> {
    if !is_prime(p as u64) {
        return precondition(format!("{p} is not prime"));
    }
    if ops::prime_of(d).is_some_and(|q| q != p) {
        return precondition("D is not a p-subgroup");
    }
    let whole = SubgroupSet::whole(g);
    let s = ops::sylow_containing(g, &whole, d, p);
    if !is_strongly_closed_in(g, &s, d) {
        return precondition("D is not strongly closed in a Sylow subgroup");
    }
    let p_nilpotent = ops::is_p_nilpotent(g, &whole, p);
    let witness = all_subgroups(g, d, caps)?.into_iter().find(|u| {
        ops::centralizer_of(g, d, u).is_subset(u)
            && !ops::is_p_nilpotent(g, &ops::normalizer(g, &whole, u), p)
    });
    Ok(FrobeniusReport { p_nilpotent, all_local_p_nilpotent: witness.is_none(), witness })
}
