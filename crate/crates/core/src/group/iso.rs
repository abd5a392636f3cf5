//! Isomorphism and automorphism search by backtracking on generator images.

use super::action::ActionGroup;
use super::arith::prime_power;
use super::lattice::p_group_generators;
use super::morphism::GroupMorphism;
use super::ops;
use super::subgroup::SubgroupSet;
use super::table::GroupTable;
use crate::caps::Caps;
use crate::error::{Error, Result};

#[derive(PartialEq, Eq)]
struct Invariants {
    order_histogram: Vec<(usize, usize)>,
    center: usize,
    derived: usize,
    class_sizes: Vec<usize>,
}

fn invariants(t: &GroupTable) -> Invariants {
    let w = SubgroupSet::whole(t);
    let mut hist = std::collections::BTreeMap::new();
    for x in 0..t.order() {
        *hist.entry(t.element_order(x)).or_insert(0) += 1;
    }
    let mut seen = vec![false; t.order()];
    let mut class_sizes = Vec::new();
    for x in 0..t.order() {
        if seen[x] {
            continue;
        }
        let mut size = 0;
        for g in 0..t.order() {
            let y = t.conj(x, g);
            if !seen[y] {
                seen[y] = true;
                size += 1;
            }
        }
        class_sizes.push(size);
    }
    class_sizes.sort_unstable();
    Invariants {
        order_histogram: hist.into_iter().collect(),
        center: ops::center(t, &w).order(),
        derived: ops::derived_subgroup(t, &w).order(),
        class_sizes,
    }
}

/// Generating sequence used for the search: a minimal generating set for
/// p-groups, otherwise greedy by decreasing element order.
fn search_generators(t: &GroupTable) -> Vec<usize> {
    let w = SubgroupSet::whole(t);
    if let Some((p, _)) = prime_power(t.order()) {
        return p_group_generators(t, &w, p);
    }
    let mut cand: Vec<usize> = (1..t.order()).collect();
    cand.sort_by_key(|&x| (std::cmp::Reverse(t.element_order(x)), x));
    let mut cur = SubgroupSet::trivial(t.order());
    let mut gens = Vec::new();
    for x in cand {
        if cur.order() == t.order() {
            break;
        }
        if !cur.contains(x) {
            gens.push(x);
            cur = ops::join(t, &cur, &[x]);
        }
    }
    gens
}

fn centralizer_size(t: &GroupTable, x: usize) -> usize {
    (0..t.order()).filter(|&y| t.mul(x, y) == t.mul(y, x)).count()
}

struct Search<'a> {
    a: &'a GroupTable,
    b: &'a GroupTable,
    gens: Vec<usize>,
    candidates: Vec<Vec<usize>>,
    limit: usize,
    found: Vec<Vec<usize>>,
    find_all: bool,
}

impl Search<'_> {
    /// Extends the assignment `gens[..k] -> imgs` to `<gens[..k]>` along a
    /// BFS tree and checks every generator edge. Returns the partial map
    /// (`usize::MAX` outside the subgroup) when consistent and injective.
    fn extend(&self, imgs: &[usize]) -> Option<Vec<usize>> {
        let n = self.a.order();
        let mut f = vec![usize::MAX; n];
        f[0] = 0;
        let mut used = vec![false; self.b.order()];
        used[0] = true;
        let mut queue = vec![0usize];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            for (j, &s) in self.gens[..imgs.len()].iter().enumerate() {
                let y = self.a.mul(x, s);
                let fy = self.b.mul(f[x], imgs[j]);
                if f[y] == usize::MAX {
                    if used[fy] {
                        return None;
                    }
                    used[fy] = true;
                    f[y] = fy;
                    queue.push(y);
                } else if f[y] != fy {
                    return None;
                }
            }
            head += 1;
        }
        Some(f)
    }

    fn run(&mut self, imgs: &mut Vec<usize>) -> Result<bool> {
        let k = imgs.len();
        if k == self.gens.len() {
            let f = self.extend(imgs).expect("checked at previous level");
            self.found.push(f);
            if self.found.len() > self.limit {
                return Err(Error::SizeLimit {
                    what: "isomorphism count",
                    limit: self.limit,
                    actual: self.found.len(),
                });
            }
            return Ok(!self.find_all);
        }
        for ci in 0..self.candidates[k].len() {
            let c = self.candidates[k][ci];
            imgs.push(c);
            if self.extend(imgs).is_some() && self.run(imgs)? {
                return Ok(true);
            }
            imgs.pop();
        }
        Ok(false)
    }
}

fn search(a: &GroupTable, b: &GroupTable, find_all: bool, limit: usize) -> Result<Vec<Vec<usize>>> {
    if a.order() != b.order() {
        return Ok(Vec::new());
    }
    if a.order() == 1 {
        return Ok(vec![vec![0]]);
    }
    if invariants(a) != invariants(b) {
        return Ok(Vec::new());
    }
    let gens = search_generators(a);
    let cb: Vec<usize> = (0..b.order()).map(|y| centralizer_size(b, y)).collect();
    let candidates = gens
        .iter()
        .map(|&x| {
            let (o, c) = (a.element_order(x), centralizer_size(a, x));
            (0..b.order()).filter(|&y| b.element_order(y) == o && cb[y] == c).collect()
        })
        .collect();
    let mut s = Search { a, b, gens, candidates, limit, found: Vec::new(), find_all };
    s.run(&mut Vec::new())?;
    Ok(s.found)
}

fn to_morphisms(a: &GroupTable, maps: Vec<Vec<usize>>) -> Vec<GroupMorphism> {
    let w = SubgroupSet::whole(a);
    maps.into_iter().map(|m| GroupMorphism::new(w.clone(), m)).collect()
}

/// Isomorphisms `a -> b`: none if not isomorphic, otherwise one (or all when
/// `find_all`). The domain of each map is the whole of `a`.
pub fn isomorphism_search(a: &GroupTable, b: &GroupTable, find_all: bool) -> Vec<GroupMorphism> {
    let maps = search(a, b, find_all, usize::MAX).expect("unbounded search");
    to_morphisms(a, maps)
}

pub fn are_isomorphic(a: &GroupTable, b: &GroupTable) -> bool {
    !search(a, b, false, usize::MAX).expect("unbounded search").is_empty()
}

/// Isomorphism search between subgroups of two tables.
pub fn subgroup_isomorphisms(
    ga: &GroupTable,
    a: &SubgroupSet,
    gb: &GroupTable,
    b: &SubgroupSet,
    find_all: bool,
) -> Vec<GroupMorphism> {
    let (ta, tb) = (ops::induced_table(ga, a), ops::induced_table(gb, b));
    search(&ta, &tb, find_all, usize::MAX)
        .expect("unbounded search")
        .into_iter()
        .map(|m| GroupMorphism::new(a.clone(), m.into_iter().map(|i| b.members()[i]).collect()))
        .collect()
}

/// `Aut(P)` acting on the elements of `P`.
pub fn automorphism_group(p: &GroupTable, caps: &Caps) -> Result<ActionGroup> {
    caps.check("automorphism group input", caps.automorphism, p.order())?;
    let maps = search(p, p, true, caps.table)?;
    let w = SubgroupSet::whole(p);
    ActionGroup::from_maps(p.order(), &w, &to_morphisms(p, maps), caps)
}
