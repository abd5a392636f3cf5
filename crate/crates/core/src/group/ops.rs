//! Subgroup constructions and the structural operators on finite groups.
//!
//! Every function takes the parent table explicitly; subgroups are
//! [`SubgroupSet`]s of that table.

use std::sync::OnceLock;

use super::arith::{is_power_of, p_part, prime_power};
use super::subgroup::SubgroupSet;
use super::table::GroupTable;
use crate::caps::Caps;
use crate::error::{Error, Result};

#[inline]
fn test_bit(bits: &[u64], x: usize) -> bool {
    bits[x / 64] >> (x % 64) & 1 == 1
}

#[inline]
fn set_bit(bits: &mut [u64], x: usize) {
    bits[x / 64] |= 1 << (x % 64);
}

/// Extends `list` (closed under a prefix of `gens`) to the closure under all
/// of `gens`, keeping `inside` in sync.
pub(crate) fn close_into(g: &GroupTable, inside: &mut [u64], list: &mut Vec<usize>, gens: &[usize]) {
    let mut head = 0;
    while head < list.len() {
        let e = list[head];
        for &s in gens {
            let y = g.mul(e, s);
            if !test_bit(inside, y) {
                set_bit(inside, y);
                list.push(y);
            }
        }
        head += 1;
    }
}

/// Smallest subgroup containing `seed`.
pub fn generated(g: &GroupTable, seed: &[usize]) -> SubgroupSet {
    let mut inside = vec![0u64; g.order().div_ceil(64)];
    set_bit(&mut inside, 0);
    let mut list = vec![0];
    let mut gens = Vec::new();
    for &x in seed {
        if !test_bit(&inside, x) {
            gens.push(x);
            close_into(g, &mut inside, &mut list, &gens);
        }
    }
    SubgroupSet::from_bits(inside).with_gens(gens)
}

/// `<a, extra>`.
pub fn join(g: &GroupTable, a: &SubgroupSet, extra: &[usize]) -> SubgroupSet {
    let mut seed = a.generators(g).to_vec();
    seed.extend_from_slice(extra);
    generated(g, &seed)
}

/// `<a, b>` for two subgroups.
pub fn join_subgroups(g: &GroupTable, a: &SubgroupSet, b: &SubgroupSet) -> SubgroupSet {
    join(g, a, b.generators(g))
}

/// `Q^x = x^-1 Q x`.
pub fn conjugate(g: &GroupTable, q: &SubgroupSet, x: usize) -> SubgroupSet {
    let gens: Vec<usize> = q.generators(g).iter().map(|&s| g.conj(s, x)).collect();
    SubgroupSet::from_members(g.order(), q.members().iter().map(|&s| g.conj(s, x))).with_gens(gens)
}

pub fn normalizes(g: &GroupTable, q: &SubgroupSet, x: usize) -> bool {
    q.generators(g).iter().all(|&s| q.contains(g.conj(s, x)))
}

/// `N_H(Q)`.
pub fn normalizer(g: &GroupTable, ambient: &SubgroupSet, q: &SubgroupSet) -> SubgroupSet {
    let gens = q.generators(g);
    SubgroupSet::from_members(
        g.order(),
        ambient
            .members()
            .iter()
            .copied()
            .filter(|&x| gens.iter().all(|&s| q.contains(g.conj(s, x)))),
    )
}

/// Elements of `ambient` commuting with every element of `xs`.
pub fn centralizer(g: &GroupTable, ambient: &SubgroupSet, xs: &[usize]) -> SubgroupSet {
    SubgroupSet::from_members(
        g.order(),
        ambient
            .members()
            .iter()
            .copied()
            .filter(|&y| xs.iter().all(|&x| g.mul(x, y) == g.mul(y, x))),
    )
}

/// `C_H(Q)`.
pub fn centralizer_of(g: &GroupTable, ambient: &SubgroupSet, q: &SubgroupSet) -> SubgroupSet {
    centralizer(g, ambient, q.generators(g))
}

/// `Z(H)`.
pub fn center(g: &GroupTable, h: &SubgroupSet) -> SubgroupSet {
    centralizer(g, h, h.generators(g))
}

/// Closure of `seed` under conjugation by `<conj_gens>`.
pub fn normal_closure(g: &GroupTable, conj_gens: &[usize], seed: &[usize]) -> SubgroupSet {
    let mut n = generated(g, seed);
    loop {
        let extra: Vec<usize> = n
            .generators(g)
            .iter()
            .flat_map(|&s| conj_gens.iter().map(move |&c| (s, c)))
            .map(|(s, c)| g.conj(s, c))
            .filter(|&y| !n.contains(y))
            .collect();
        if extra.is_empty() {
            return n;
        }
        n = join(g, &n, &extra[..1]);
    }
}

/// `[A, B]`, the normal closure in `<A, B>` of the generator commutators.
pub fn commutator_subgroup(g: &GroupTable, a: &SubgroupSet, b: &SubgroupSet) -> SubgroupSet {
    let (ga, gb) = (a.generators(g), b.generators(g));
    let seed: Vec<usize> = ga
        .iter()
        .flat_map(|&x| gb.iter().map(move |&y| (x, y)))
        .map(|(x, y)| g.commutator(x, y))
        .collect();
    let mut cg = ga.to_vec();
    cg.extend_from_slice(gb);
    normal_closure(g, &cg, &seed)
}

/// `H'`.
pub fn derived_subgroup(g: &GroupTable, h: &SubgroupSet) -> SubgroupSet {
    commutator_subgroup(g, h, h)
}

pub fn is_normal_in(g: &GroupTable, n: &SubgroupSet, ambient: &SubgroupSet) -> bool {
    ambient.generators(g).iter().all(|&x| normalizes(g, n, x))
}

/// Largest subgroup of `d` normal in `ambient`: the intersection of the
/// conjugates `d^x`, `x` in `ambient`.
pub fn core_of(g: &GroupTable, ambient: &SubgroupSet, d: &SubgroupSet) -> SubgroupSet {
    let mut bits = d.bits().to_vec();
    for &x in ambient.members() {
        let mut next = vec![0u64; bits.len()];
        for &s in d.members() {
            let y = g.conj(s, x);
            if test_bit(&bits, y) {
                set_bit(&mut next, y);
            }
        }
        bits = next;
        if bits.iter().map(|w| w.count_ones()).sum::<u32>() == 1 {
            break;
        }
    }
    SubgroupSet::from_bits(bits)
}

/// `Some(p)` if `|h| = p^k` with `k >= 1`.
pub fn prime_of(h: &SubgroupSet) -> Option<usize> {
    prime_power(h.order()).map(|(p, _)| p)
}

fn require_p_group(h: &SubgroupSet) -> Result<Option<usize>> {
    if h.order() == 1 {
        return Ok(None);
    }
    match prime_of(h) {
        Some(p) => Ok(Some(p)),
        None => Err(Error::Domain(format!("order {} is not a prime power", h.order()))),
    }
}

/// Greedy Sylow p-subgroup of `ambient` containing the p-subgroup `start`:
/// repeatedly adjoin the smallest-index element of p-power order in
/// `N(H) \ H`.
pub fn sylow_containing(g: &GroupTable, ambient: &SubgroupSet, start: &SubgroupSet, p: usize) -> SubgroupSet {
    let target = p_part(ambient.order(), p);
    let mut h = start.clone();
    while h.order() < target {
        let x = ambient
            .members()
            .iter()
            .copied()
            .find(|&x| !h.contains(x) && is_power_of(g.element_order(x), p) && normalizes(g, &h, x))
            .expect("a p-subgroup below Sylow order has a p-element in its normalizer");
        h = join(g, &h, &[x]);
    }
    h
}

pub fn sylow_subgroup(g: &GroupTable, ambient: &SubgroupSet, p: usize) -> SubgroupSet {
    sylow_containing(g, ambient, &SubgroupSet::trivial(g.order()), p)
}

/// `O_p(H)`: the core of a Sylow p-subgroup.
pub fn o_p(g: &GroupTable, h: &SubgroupSet, p: usize) -> SubgroupSet {
    core_of(g, h, &sylow_subgroup(g, h, p))
}

/// Whether `h` has a normal Sylow p-subgroup.
pub fn is_p_closed(g: &GroupTable, h: &SubgroupSet, p: usize) -> bool {
    let count = h
        .members()
        .iter()
        .filter(|&&x| is_power_of(g.element_order(x), p))
        .count();
    count == p_part(h.order(), p)
}

/// Whether `h` has a normal p-complement.
///
/// The p'-elements of `h` generate a normal subgroup `K` contained in any
/// normal p-complement, and `h/K` is a p-group, so `h` is p-nilpotent iff
/// `p` does not divide `|K|`.
pub fn is_p_nilpotent(g: &GroupTable, h: &SubgroupSet, p: usize) -> bool {
    let seed: Vec<usize> = h
        .members()
        .iter()
        .copied()
        .filter(|&x| !g.element_order(x).is_multiple_of(p))
        .collect();
    !generated(g, &seed).order().is_multiple_of(p)
}

/// `Omega_i(H)`, generated by the elements of order dividing `p^i`.
pub fn omega(g: &GroupTable, h: &SubgroupSet, i: u32) -> Result<SubgroupSet> {
    let Some(p) = require_p_group(h)? else {
        return Ok(h.clone());
    };
    let bound = p.pow(i);
    let seed: Vec<usize> = h
        .members()
        .iter()
        .copied()
        .filter(|&x| bound % g.element_order(x) == 0)
        .collect();
    Ok(generated(g, &seed))
}

fn reference_tables() -> &'static [GroupTable; 2] {
    static REFS: OnceLock<[GroupTable; 2]> = OnceLock::new();
    REFS.get_or_init(|| {
        let caps = Caps::default();
        [
            crate::catalog::quaternion(3, &caps).expect("Q8"),
            crate::catalog::gamma(&caps).expect("Z4 by Z4"),
        ]
    })
}

/// True iff `h` has no subgroup isomorphic to `Q8` or to the nonabelian
/// split extension of `Z4` by `Z4` (the action is inversion, the only
/// nontrivial automorphism of `Z4`). Always true for odd primes.
pub fn is_odd_type(g: &GroupTable, h: &SubgroupSet) -> bool {
    if h.order() % 2 == 1 {
        return true;
    }
    if !h.order().is_multiple_of(8) {
        return true;
    }
    // both forbidden groups are generated by two elements of order 4
    let fours: Vec<usize> = h.members().iter().copied().filter(|&x| g.element_order(x) == 4).collect();
    let refs = reference_tables();
    let mut seen = std::collections::HashSet::new();
    for (i, &x) in fours.iter().enumerate() {
        for &y in &fours[i + 1..] {
            if g.mul(x, y) == g.mul(y, x) {
                continue;
            }
            let k = generated(g, &[x, y]);
            if k.order() != 8 && k.order() != 16 {
                continue;
            }
            if !seen.insert(k.members().to_vec()) {
                continue;
            }
            let t = induced_table(g, &k);
            let r = if k.order() == 8 { &refs[0] } else { &refs[1] };
            if super::iso::are_isomorphic(&t, r) {
                return false;
            }
        }
    }
    true
}

/// `Omega*(H)`: `Omega_1` if `h` is of odd type, `Omega_2` otherwise.
pub fn omega_star(g: &GroupTable, h: &SubgroupSet) -> Result<SubgroupSet> {
    require_p_group(h)?;
    if is_odd_type(g, h) {
        omega(g, h, 1)
    } else {
        omega(g, h, 2)
    }
}

/// Upper central series `1 = Z_0 < Z_1 < ...` up to its terminal member.
pub fn upper_central_series(g: &GroupTable, h: &SubgroupSet) -> Vec<SubgroupSet> {
    let gens = h.generators(g).to_vec();
    let mut series = vec![SubgroupSet::trivial(g.order())];
    loop {
        let z = series.last().unwrap();
        let next = SubgroupSet::from_members(
            g.order(),
            h.members()
                .iter()
                .copied()
                .filter(|&x| gens.iter().all(|&s| z.contains(g.commutator(x, s)))),
        );
        if next.order() == z.order() {
            return series;
        }
        series.push(next);
    }
}

/// Lower central series `H = G_1 > G_2 > ...` down to its terminal member.
pub fn lower_central_series(g: &GroupTable, h: &SubgroupSet) -> Vec<SubgroupSet> {
    let mut series = vec![h.clone()];
    loop {
        let last = series.last().unwrap();
        let next = commutator_subgroup(g, last, h);
        if next.order() == last.order() {
            return series;
        }
        series.push(next);
    }
}

/// `Phi(H)`. For p-groups this is `H' H^p`; otherwise the intersection of
/// the maximal subgroups found by lattice search.
pub fn frattini_subgroup(g: &GroupTable, h: &SubgroupSet, caps: &Caps) -> Result<SubgroupSet> {
    if h.order() == 1 {
        return Ok(h.clone());
    }
    if let Some(p) = prime_of(h) {
        return Ok(frattini_p_group(g, h, p));
    }
    let maxes = super::lattice::maximal_subgroups(g, h, caps)?;
    let mut it = maxes.into_iter();
    let first = it.next().expect("nontrivial group has a maximal subgroup");
    Ok(it.fold(first, |acc, m| acc.intersection(&m)))
}

pub(crate) fn frattini_p_group(g: &GroupTable, h: &SubgroupSet, p: usize) -> SubgroupSet {
    let d = derived_subgroup(g, h);
    let powers: Vec<usize> = h.members().iter().map(|&x| g.pow(x, p as i64)).collect();
    join(g, &d, &powers)
}

/// Multiplication table of `h` on its own, elements numbered by position in
/// the sorted member list (so the identity stays at 0).
pub fn induced_table(g: &GroupTable, h: &SubgroupSet) -> GroupTable {
    let m = h.members();
    let n = m.len();
    let mut mult = Vec::with_capacity(n * n);
    for &a in m {
        for &b in m {
            mult.push(h.position(g.mul(a, b)).expect("closed subgroup") as u16);
        }
    }
    let gens = h.generators(g).iter().map(|&x| h.position(x).unwrap()).collect();
    let t = GroupTable::assemble(n, mult, gens).expect("subgroup table");
    match g.label(0) {
        Some(_) => t.with_labels(m.iter().map(|&x| g.label_or_index(x)).collect()),
        None => t,
    }
}
