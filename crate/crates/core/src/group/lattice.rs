//! Subgroup lattice enumeration.

use std::collections::HashSet;

use super::arith::{prime_power};
use super::ops;
use super::subgroup::SubgroupSet;
use super::table::GroupTable;
use crate::caps::Caps;
use crate::error::Result;

/// Distinct cyclic subgroups of `h`, sorted.
pub fn cyclic_subgroups(g: &GroupTable, h: &SubgroupSet) -> Vec<SubgroupSet> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for &x in h.members() {
        let c = ops::generated(g, &[x]);
        if seen.insert(c.members().to_vec()) {
            out.push(c);
        }
    }
    out.sort();
    out
}

/// Every subgroup of `h` exactly once, sorted by order and then by member
/// list.
///
/// Subgroups are grown from the trivial group by adjoining one cyclic
/// subgroup of prime-power order at a time; every subgroup is generated by
/// its prime-power elements, so each is reached.
pub fn all_subgroups(g: &GroupTable, h: &SubgroupSet, caps: &Caps) -> Result<Vec<SubgroupSet>> {
    caps.check("subgroup lattice", caps.lattice, h.order())?;
    let mut extenders: Vec<usize> = Vec::new();
    let mut seen_cyclic = HashSet::new();
    for &x in h.members() {
        if x == 0 || prime_power(g.element_order(x)).is_none() {
            continue;
        }
        let c = ops::generated(g, &[x]);
        if seen_cyclic.insert(c.members().to_vec()) {
            extenders.push(x);
        }
    }
    let trivial = SubgroupSet::trivial(g.order());
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    seen.insert(trivial.bits().to_vec());
    let mut found = vec![trivial];
    let mut head = 0;
    while head < found.len() {
        let k = found[head].clone();
        for &x in &extenders {
            if k.contains(x) {
                continue;
            }
            let next = ops::join(g, &k, &[x]);
            if seen.insert(next.bits().to_vec()) {
                found.push(next);
            }
        }
        head += 1;
    }
    found.sort();
    Ok(found)
}

/// Subgroups of `h` normal in `h`.
pub fn normal_subgroups(g: &GroupTable, h: &SubgroupSet, caps: &Caps) -> Result<Vec<SubgroupSet>> {
    Ok(all_subgroups(g, h, caps)?
        .into_iter()
        .filter(|k| ops::is_normal_in(g, k, h))
        .collect())
}

/// Maximal subgroups of `h`, sorted.
///
/// For a p-group these are the kernels of the nonzero linear functionals on
/// `h/Phi(h)`, read off from coordinates over a minimal generating set; for
/// other groups they are taken from the lattice.
pub fn maximal_subgroups(g: &GroupTable, h: &SubgroupSet, caps: &Caps) -> Result<Vec<SubgroupSet>> {
    if h.order() == 1 {
        return Ok(Vec::new());
    }
    if let Some((p, _)) = prime_power(h.order()) {
        return Ok(maximal_p_group(g, h, p));
    }
    let all = all_subgroups(g, h, caps)?;
    let proper: Vec<&SubgroupSet> = all.iter().filter(|k| k.order() < h.order()).collect();
    let mut out: Vec<SubgroupSet> = proper
        .iter()
        .filter(|k| !proper.iter().any(|m| m.order() > k.order() && k.is_subset(m)))
        .map(|k| (*k).clone())
        .collect();
    out.sort();
    Ok(out)
}

/// Minimal generating set of a p-group: elements outside `<Phi, chosen>`,
/// tried by decreasing order and then index.
pub fn p_group_generators(g: &GroupTable, h: &SubgroupSet, p: usize) -> Vec<usize> {
    let phi = ops::frattini_p_group(g, h, p);
    let mut cand: Vec<usize> = h.members().to_vec();
    cand.sort_by_key(|&x| (std::cmp::Reverse(g.element_order(x)), x));
    let mut cur = phi;
    let mut gens = Vec::new();
    for x in cand {
        if cur.order() == h.order() {
            break;
        }
        if !cur.contains(x) {
            gens.push(x);
            cur = ops::join(g, &cur, &[x]);
        }
    }
    gens
}

fn maximal_p_group(g: &GroupTable, h: &SubgroupSet, p: usize) -> Vec<SubgroupSet> {
    let phi = ops::frattini_p_group(g, h, p);
    let gens = p_group_generators(g, h, p);
    let d = gens.len();
    // coordinates of every element of h over F_p^d
    let mut coord: Vec<Option<Vec<usize>>> = vec![None; g.order()];
    let total = p.pow(d as u32);
    for code in 0..total {
        let mut c = vec![0usize; d];
        let mut rest = code;
        let mut x = 0;
        for i in 0..d {
            c[i] = rest % p;
            rest /= p;
            x = g.mul(x, g.pow(gens[i], c[i] as i64));
        }
        for &f in phi.members() {
            coord[g.mul(x, f)] = Some(c.clone());
        }
    }
    let mut out = Vec::new();
    for code in 1..total {
        let mut lam = vec![0usize; d];
        let mut rest = code;
        for v in lam.iter_mut() {
            *v = rest % p;
            rest /= p;
        }
        // one functional per line: leading coefficient 1
        if lam.iter().find(|&&v| v != 0) != Some(&1) {
            continue;
        }
        let m = SubgroupSet::from_members(
            g.order(),
            h.members().iter().copied().filter(|&x| {
                let c = coord[x].as_ref().expect("coordinate");
                c.iter().zip(&lam).map(|(a, b)| a * b).sum::<usize>() % p == 0
            }),
        );
        out.push(m);
    }
    out.sort();
    out
}
